"""Command-line entry point: ``udcp <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 a verification or proved inequality
failed, 3 a search budget ran out. Results go to stdout (JSON with
``--json``, otherwise a plain rendering of the same object); a run manifest
goes to stderr or to ``--manifest``.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import BOUND_METHODS, verify_ineq3
from .bounds.ineq3 import DEFAULT_MIN_EPSILON
from .core import (
    CodePair,
    distance_census,
    extract_dense_subcode,
    find_collision,
    is_udcp,
    read_code,
    van_tilborg_check,
    word_from_str,
    word_to_str,
    write_code,
)
from .errors import BudgetExhausted, LemmaViolation, NotVerifiedError, UDCPError, ValidationError
from .jsonio import document, dumps
from .noise import (
    CorrelationSpec,
    RssBoundInputs,
    exact_joint_probability,
    find_split,
    probability_report,
    rsse_lower_bound,
    stream_rng,
)
from .noise.correlated import SEED_ENV, correlated_copies, default_seed
from .search import SearchSpec, run_search

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class _Failure(Exception):
    """Carries a finished result whose verdict maps to a non-zero exit code."""

    def __init__(self, code: int, payload: dict):
        super().__init__(code)
        self.code = code
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for failed checks here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _coords(text: str | None) -> tuple[int, ...] | None:
    """Parse a 1-based coordinate list such as ``1,3,4`` into 0-based indices."""
    if text is None:
        return None
    if text.strip() == "":
        return ()
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad coordinate list {text!r}") from exc
    if any(v < 1 for v in vals):
        raise ValidationError("coordinates are numbered from 1")
    return tuple(v - 1 for v in vals)


def _pair(args) -> CodePair:
    return CodePair(read_code(args.a), read_code(args.b))


def _rate_block(pair: CodePair) -> dict:
    return {
        "n": pair.n,
        "a_size": len(pair.a),
        "b_size": len(pair.b),
        "alpha": pair.alpha,
        "beta": pair.beta,
        "alpha_plus_beta": pair.alpha + pair.beta,
        "epsilon": pair.epsilon,
    }


# -- subcommands -------------------------------------------------------------


def cmd_verify(args) -> dict:
    pair = _pair(args)
    ok = is_udcp(pair)
    out = {"udcp": ok, **_rate_block(pair)}
    if not ok:
        (a1, b1), (a2, b2) = find_collision(pair)
        n = pair.n
        out["collision"] = {
            "first": {"a": word_to_str(a1, n), "b": word_to_str(b1, n)},
            "second": {"a": word_to_str(a2, n), "b": word_to_str(b2, n)},
        }
        raise _Failure(EXIT_VERIFY, out)
    return out


def cmd_census(args) -> dict:
    pair = _pair(args)
    census = distance_census(pair, _coords(args.restrict), args.method)
    out = census.to_json()
    if args.van_tilborg:
        if args.restrict is not None:
            raise ValidationError("--van-tilborg applies to the unrestricted census")
        out["van_tilborg"] = van_tilborg_check(pair).to_json()
    return out


def cmd_prob(args) -> dict:
    pair = _pair(args)
    spec = CorrelationSpec(pair.n, args.rho, _coords(args.l))
    report = probability_report(
        pair, spec, args.epsilon, args.samples, args.seed, args.workers
    )
    return report.to_json()


def cmd_rsse_check(args) -> dict:
    f_set, g_set = read_code(args.f), read_code(args.g)
    if not 0.0 <= args.rho < 1.0:
        raise ValidationError("rho must lie in [0, 1)")
    pair = CodePair(f_set, g_set)
    exact = exact_joint_probability(pair, CorrelationSpec(pair.n, args.rho))
    inputs = RssBoundInputs.from_sets(f_set, g_set, args.rho)
    bound = rsse_lower_bound(inputs)
    out = {
        "u_size": inputs.u_size,
        "f": inputs.f,
        "g": inputs.g,
        "rho": args.rho,
        "exact_log2": exact.exact_log2,
        "bound_log2": bound,
        "margin_log2": exact.exact_log2 - bound,
        "holds": exact.exact_log2 >= bound - 1e-12,
    }
    if not out["holds"]:
        raise _Failure(EXIT_VERIFY, out)
    return out


def cmd_split(args) -> dict:
    pair = _pair(args)
    return find_split(pair, args.mode, args.epsilon, args.samples, args.seed).to_json()


def cmd_dense(args) -> dict:
    code = read_code(args.a)
    l_set = _coords(args.l)
    if l_set is None:
        l_set = tuple(range(code.n // 2))
    return extract_dense_subcode(code, l_set, args.epsilon).to_json()


def cmd_bound(args) -> dict:
    fn = BOUND_METHODS[args.method]
    if args.method == "classic":
        if args.rho is not None or args.lam is not None:
            raise ValidationError("classic takes neither --rho nor --lambda")
        return fn(args.epsilon).to_json()
    if args.method == "main":
        return fn(args.epsilon, args.rho, args.lam).to_json()
    if args.lam is not None:
        raise ValidationError("--lambda applies to the main method only")
    if args.method == "warmup":
        return fn(args.epsilon, args.rho).to_json()
    if args.rho is not None:
        raise ValidationError("best optimises rho itself")
    return fn(args.epsilon).to_json()


def cmd_verify_ineq3(args) -> dict:
    cert = verify_ineq3(
        grid_step=args.grid_step,
        mode=args.mode,
        min_epsilon=args.min_epsilon,
        max_epsilon=args.max_epsilon,
        sign=args.radicand_sign,
    )
    if args.out:
        with open(args.out, "w") as fh:
            cert.write_jsonl(fh)
    summary = dict(cert.header())
    if args.mode == "interval":
        summary["covers_domain"] = cert.covers_domain
    summary["certificate_file"] = args.out
    # JSON-lines on stdout when no file was given.
    summary["_lines"] = [
        {"lo": lo, "hi": hi, "upper_bound": ub} for lo, hi, ub in cert.pieces
    ] if not args.out else None
    if not cert.all_negative:
        raise _Failure(EXIT_VERIFY, summary)
    return summary


def cmd_search(args) -> dict:
    spec = SearchSpec(
        args.n,
        args.objective,
        args.a_floor,
        not args.no_symmetry,
        args.budget,
        args.threads,
    )
    points = run_search(spec)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for p in points:
            tag = f"n{p.n}" + (f"_floor{p.a_floor}" if p.a_floor is not None else "_max")
            write_code(p.witness.a, out_dir / f"{tag}_A.codes", f"|A|={p.a_size}")
            write_code(p.witness.b, out_dir / f"{tag}_B.codes", f"|B|={p.b_size}")
        table = document({"spec": _spec_json(spec), "frontier": [p.to_json() for p in points]})
        (out_dir / "frontier.json").write_text(dumps(table, indent=2) + "\n")
    out = {"spec": _spec_json(spec), "points": [p.to_json() for p in points]}
    if any(not p.optimal for p in points):
        raise _Failure(EXIT_BUDGET, out)
    return out


def _spec_json(spec: SearchSpec) -> dict:
    return {
        "n": spec.n,
        "objective": spec.objective,
        "a_floor": spec.a_floor,
        "symmetry_reduction": spec.symmetry_reduction,
        "node_budget": spec.node_budget,
        "threads": spec.threads,
    }


def cmd_sample(args) -> dict:
    x = word_from_str(args.word)
    n = len(args.word)
    spec = CorrelationSpec(n, args.rho, _coords(args.l))
    if args.count < 1:
        raise ValidationError("count must be positive")
    rng = stream_rng(args.seed, args.stream)
    ys = correlated_copies(np.full(args.count, x, dtype=np.uint64), spec, rng)
    words = [word_to_str(int(y), n) for y in ys]
    agree = [n - bin(x ^ int(y)).count("1") for y in ys]
    return {
        "word": args.word,
        "rho": args.rho,
        "l_set": None if spec.l_set is None else [c + 1 for c in spec.l_set],
        "seed": args.seed,
        "stream": args.stream,
        "samples": words,
        "mean_agreement": sum(agree) / (n * args.count) if n else 1.0,
    }


# -- parser ------------------------------------------------------------------


def _unit_interval(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("value must be finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"random seed (default: ${SEED_ENV} or 0)",
    )
    common.add_argument("--manifest", help="write the run manifest here instead of stderr")

    p = _Parser(prog="udcp", description="Uniquely decodable code pairs for the binary adder channel.")
    p.add_argument("--version", action="version", version=f"udcp {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_args(sp):
        sp.add_argument("--a", required=True, help="code file for A")
        sp.add_argument("--b", required=True, help="code file for B")

    sp = sub.add_parser("verify", parents=[common], help="check unique decodability")
    pair_args(sp)
    sp.set_defaults(func=cmd_verify, inputs=("a", "b"))

    sp = sub.add_parser("census", parents=[common], help="Hamming-distance census")
    pair_args(sp)
    sp.add_argument("--restrict", help="1-based coordinates L, e.g. 1,3")
    sp.add_argument("--method", default="auto", choices=["auto", "direct", "wht", "python"])
    sp.add_argument("--van-tilborg", action="store_true", help="add the per-distance cap report")
    sp.set_defaults(func=cmd_census, inputs=("a", "b"))

    sp = sub.add_parser("prob", parents=[common], help="exact correlated-pair probability")
    pair_args(sp)
    sp.add_argument("--rho", type=_unit_interval, required=True)
    sp.add_argument("--l", help="1-based coordinates carrying the correlation")
    sp.add_argument("--epsilon", type=_unit_interval, help="attach the refined bounds")
    sp.add_argument("--samples", type=int, default=0, help="Monte-Carlo samples")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_prob, inputs=("a", "b"))

    sp = sub.add_parser("rsse-check", parents=[common], help="compare with the isoperimetric bound")
    sp.add_argument("--f", required=True, help="code file for F")
    sp.add_argument("--g", required=True, help="code file for G")
    sp.add_argument("--rho", type=_unit_interval, required=True)
    sp.set_defaults(func=cmd_rsse_check, inputs=("f", "g"))

    sp = sub.add_parser("split", parents=[common], help="find a near-half coordinate split")
    pair_args(sp)
    sp.add_argument("--mode", default="exhaustive", choices=["exhaustive", "greedy", "sampled"])
    sp.add_argument("--epsilon", type=_unit_interval)
    sp.add_argument("--samples", type=int, default=256)
    sp.set_defaults(func=cmd_split, inputs=("a", "b"))

    sp = sub.add_parser("dense", parents=[common], help="extract an epsilon-dense subcode")
    sp.add_argument("--a", required=True, help="code file for A")
    sp.add_argument("--l", help="1-based coordinates L (default: first n/2)")
    sp.add_argument("--epsilon", type=_unit_interval, required=True)
    sp.set_defaults(func=cmd_dense, inputs=("a",))

    sp = sub.add_parser("bound", parents=[common], help="upper bound on the rate of B")
    sp.add_argument("--method", default="best", choices=sorted(BOUND_METHODS))
    sp.add_argument("--epsilon", type=_unit_interval, required=True)
    sp.add_argument("--rho", type=_unit_interval)
    sp.add_argument("--lambda", dest="lam", type=_unit_interval)
    sp.set_defaults(func=cmd_bound, inputs=())

    sp = sub.add_parser("verify-ineq3", parents=[common], help="certify the closing inequality")
    sp.add_argument("--mode", default="interval", choices=["float", "interval"])
    sp.add_argument("--grid-step", type=_unit_interval, default=1e-5)
    sp.add_argument("--min-epsilon", type=_unit_interval, default=DEFAULT_MIN_EPSILON)
    sp.add_argument("--max-epsilon", type=_unit_interval, default=0.01)
    sp.add_argument("--radicand-sign", type=int, default=-1, choices=[-1, 1])
    sp.add_argument("--out", help="write the JSON-lines certificate here")
    sp.set_defaults(func=cmd_verify_ineq3, inputs=())

    sp = sub.add_parser("search", parents=[common], help="search for extremal pairs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument(
        "--objective", default="max-product", choices=["max-product", "max-b-given-a-floor"]
    )
    sp.add_argument("--a-floor", type=int)
    sp.add_argument("--budget", type=int, help="node budget")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--no-symmetry", action="store_true")
    sp.add_argument("--out", help="directory for witness files and frontier.json")
    sp.set_defaults(func=cmd_search, inputs=())

    sp = sub.add_parser("sample", parents=[common], help="draw correlated copies of a word")
    sp.add_argument("--word", required=True)
    sp.add_argument("--rho", type=_unit_interval, required=True)
    sp.add_argument("--l", help="1-based coordinates carrying the correlation")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--stream", type=int, default=0)
    sp.set_defaults(func=cmd_sample, inputs=())
    return p


# -- output ------------------------------------------------------------------


def render_text(obj, indent: int = 0) -> str:
    """Plain rendering of a JSON-ready object: one ``key: value`` per line."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {dumps(v)}")
    else:
        lines.append(pad + dumps(obj))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _emit(payload: dict, args, out) -> None:
    lines = payload.pop("_lines", None)
    doc = document({"command": args.command, **payload})
    if args.json:
        out.write(dumps(doc) + "\n")
        for row in lines or ():
            out.write(dumps(row) + "\n")
    else:
        out.write(render_text(doc) + "\n")
        for row in lines or ():
            out.write(dumps(row) + "\n")


def _digest(path: str) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return "unreadable"


def _manifest(args, argv, seconds: float, code: int) -> dict:
    files = {name: getattr(args, name) for name in getattr(args, "inputs", ())}
    return document(
        {
            "manifest": {
                "subcommand": args.command,
                "argv": list(argv),
                "seed": args.seed,
                "version": __version__,
                "inputs": {k: {"path": v, "sha256": _digest(v)} for k, v in files.items()},
                "wall_clock_seconds": seconds,
                "exit_code": code,
            }
        }
    )


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is None:
        try:
            args.seed = default_seed()
        except ValueError:
            stderr.write(f"udcp: error: {SEED_ENV} must be an integer\n")
            return EXIT_INPUT
    start = time.perf_counter()
    code = EXIT_OK
    payload = None
    try:
        payload = args.func(args)
    except _Failure as fail:
        code, payload = fail.code, fail.payload
    except (NotVerifiedError, LemmaViolation) as exc:
        code = EXIT_VERIFY
        stderr.write(f"udcp: verification failed: {exc}\n")
    except BudgetExhausted as exc:
        code = EXIT_BUDGET
        stderr.write(f"udcp: budget exhausted: {exc}\n")
    except (ValidationError, OSError) as exc:
        code = EXIT_INPUT
        stderr.write(f"udcp: error: {exc}\n")
    except UDCPError as exc:
        code = EXIT_INPUT
        stderr.write(f"udcp: error: {exc}\n")
    if payload is not None:
        # Rendered in full before writing, so a failure never leaves partial JSON.
        from io import StringIO

        buf = StringIO()
        _emit(payload, args, buf)
        stdout.write(buf.getvalue())
    manifest = dumps(_manifest(args, argv, time.perf_counter() - start, code))
    if args.manifest:
        Path(args.manifest).write_text(manifest + "\n")
    else:
        stderr.write(manifest + "\n")
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
