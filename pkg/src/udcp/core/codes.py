"""Binary codes, code pairs and ternary words.

Words are stored as Python ints. Bit ``i`` of the int is coordinate ``i``
(0-based), which is also character ``i`` of the textual form, so the string
``"01"`` is the int ``0b10``. The 1-based coordinate numbering used in files,
JSON and the CLI is translated at those boundaries only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from ..errors import ValidationError

#: Word lengths up to this use the uint64 numpy fast paths.
FAST_WIDTH = 64


def word_from_str(text: str) -> int:
    if not text or any(ch not in "01" for ch in text):
        raise ValidationError(f"not a binary word: {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def word_to_str(word: int, n: int) -> str:
    return "".join("1" if word >> i & 1 else "0" for i in range(n))


def mask_of(coords: Iterable[int]) -> int:
    m = 0
    for c in coords:
        m |= 1 << c
    return m


def coords_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def check_coords(coords: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a 0-based coordinate subset of ``range(n)``; returns it sorted."""
    out = tuple(sorted(set(int(c) for c in coords)))
    if out and (out[0] < 0 or out[-1] >= n):
        raise ValidationError(f"coordinate set {out} not inside range({n})")
    return out


@dataclass(frozen=True)
class BinaryCode:
    """A nonempty set of distinct binary words of one common length.

    Words are kept sorted, so two codes compare equal exactly when they hold
    the same words.
    """

    n: int
    words: tuple[int, ...]

    def __init__(self, n: int, words: Iterable[int]):
        n = int(n)
        ws = [int(w) for w in words]
        if n < 0:
            raise ValidationError(f"word length must be non-negative, got {n}")
        if not ws:
            raise ValidationError("empty codes are not allowed")
        if len(set(ws)) != len(ws):
            raise ValidationError("duplicate words in code")
        limit = 1 << n
        for w in ws:
            if w < 0 or w >= limit:
                raise ValidationError(f"word {w} does not fit in {n} bits")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", tuple(sorted(ws)))

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "BinaryCode":
        strings = list(strings)
        if not strings:
            raise ValidationError("empty codes are not allowed")
        n = len(strings[0])
        if any(len(s) != n for s in strings):
            raise ValidationError("words of unequal length")
        return cls(n, (word_from_str(s) for s in strings))

    @classmethod
    def full_cube(cls, n: int) -> "BinaryCode":
        return cls(n, range(1 << n))

    @classmethod
    def singleton(cls, n: int, word: int = 0) -> "BinaryCode":
        return cls(n, [word])

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[int]:
        return iter(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        try:
            return self.__dict__["_set"]
        except KeyError:
            s = frozenset(self.words)
            object.__setattr__(self, "_set", s)
            return s

    @property
    def array(self) -> np.ndarray:
        """Words as a sorted uint64 array (only for ``n <= 64``)."""
        if self.n > FAST_WIDTH:
            raise ValidationError(f"n={self.n} exceeds the uint64 fast path")
        try:
            return self.__dict__["_array"]
        except KeyError:
            arr = np.array(self.words, dtype=np.uint64)
            arr.setflags(write=False)
            object.__setattr__(self, "_array", arr)
            return arr

    @property
    def rate(self) -> float:
        return math.log2(len(self)) / self.n if self.n else 0.0

    def to_strings(self) -> list[str]:
        return [word_to_str(w, self.n) for w in self.words]

    def __repr__(self) -> str:
        shown = self.to_strings()
        if len(shown) > 8:
            shown = shown[:8] + ["..."]
        return f"BinaryCode(n={self.n}, |C|={len(self)}, [{', '.join(shown)}])"


@dataclass(eq=False)
class CodePair:
    """Two codes of equal word length, with a write-once UDCP status cache.

    ``udcp`` is ``None`` until checked, then ``True`` or ``False``.
    """

    a: BinaryCode
    b: BinaryCode
    udcp: bool | None = field(default=None)

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise ValidationError(
                f"word-length mismatch: |a|={self.a.n}, |b|={self.b.n}"
            )

    @property
    def n(self) -> int:
        return self.a.n

    @property
    def alpha(self) -> float:
        return self.a.rate

    @property
    def beta(self) -> float:
        return self.b.rate

    @property
    def epsilon(self) -> float:
        return 1.0 - self.alpha

    @property
    def product(self) -> int:
        return len(self.a) * len(self.b)

    def _record(self, verdict: bool) -> None:
        if self.udcp is not None and self.udcp != verdict:
            raise RuntimeError("UDCP cache contradicts a fresh verification")
        self.udcp = verdict

    def __repr__(self) -> str:
        return (
            f"CodePair(n={self.n}, |A|={len(self.a)}, |B|={len(self.b)}, "
            f"udcp={self.udcp})"
        )


@dataclass(frozen=True)
class TernaryWord:
    """A word over {0,1,2} (``kind="sum"``) or {-1,0,1} (``kind="diff"``).

    Stored as two bitplanes: ``low`` marks coordinates with digit 1 and
    ``high`` marks digit 2 for sums or digit -1 for differences.
    """

    kind: str
    n: int
    low: int
    high: int

    def __post_init__(self):
        if self.kind not in ("sum", "diff"):
            raise ValidationError(f"unknown ternary kind {self.kind!r}")
        if self.low & self.high:
            raise ValidationError("bitplanes overlap")

    @classmethod
    def of_sum(cls, a: int, b: int, n: int) -> "TernaryWord":
        return cls("sum", n, a ^ b, a & b)

    @classmethod
    def of_diff(cls, x: int, y: int, n: int) -> "TernaryWord":
        """The difference ``x - y``."""
        return cls("diff", n, x & ~y, y & ~x)

    @property
    def digits(self) -> tuple[int, ...]:
        top = 2 if self.kind == "sum" else -1
        return tuple(
            1 if self.low >> i & 1 else top if self.high >> i & 1 else 0
            for i in range(self.n)
        )

    def preimage(self, digit: int) -> tuple[int, ...]:
        """0-based coordinates where the word takes the value ``digit``."""
        return tuple(i for i, d in enumerate(self.digits) if d == digit)

    def __str__(self) -> str:
        if self.kind == "sum":
            return "".join(str(d) for d in self.digits)
        return "".join("+" if d == 1 else "-" if d == -1 else "0" for d in self.digits)


def parse_code_text(text: str) -> BinaryCode:
    """Parse the one-word-per-line code format (``#`` lines are comments)."""
    words = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if any(ch not in "01" for ch in line):
            raise ValidationError(f"line {lineno}: not a binary word: {line!r}")
        words.append(line)
    if not words:
        raise ValidationError("code file holds no words")
    return BinaryCode.from_strings(words)


def read_code(path: str | Path) -> BinaryCode:
    return parse_code_text(Path(path).read_text())


def format_code(code: BinaryCode, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.extend(code.to_strings())
    return "\n".join(lines) + "\n"


def write_code(code: BinaryCode, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(code, comment))


def kasami_lin() -> CodePair:
    """The two-word-length pair A={00,01,11}, B={10,01}."""
    return CodePair(
        BinaryCode.from_strings(["00", "01", "11"]),
        BinaryCode.from_strings(["10", "01"]),
    )


