import pytest
from hypothesis import given
from hypothesis import strategies as st

from udcp.core import (
    BinaryCode,
    CodePair,
    TernaryWord,
    format_code,
    parse_code_text,
    read_code,
    word_from_str,
    word_to_str,
    write_code,
)
from udcp.errors import ValidationError


def test_string_round_trip_is_left_to_right():
    assert word_from_str("01") == 0b10
    assert word_to_str(0b10, 2) == "01"


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_word_round_trip(nw):
    n, w = nw
    assert word_from_str(word_to_str(w, n)) == w


def test_code_rejects_duplicates_and_empty():
    with pytest.raises(ValidationError):
        BinaryCode.from_strings(["01", "01"])
    with pytest.raises(ValidationError):
        BinaryCode(2, [])
    with pytest.raises(ValidationError):
        BinaryCode.from_strings(["01", "1"])
    with pytest.raises(ValidationError):
        BinaryCode(2, [4])


def test_codes_compare_as_sets():
    assert BinaryCode.from_strings(["11", "00"]) == BinaryCode.from_strings(["00", "11"])


def test_pair_rates(kl):
    assert kl.n == 2
    assert kl.beta == 0.5
    assert kl.epsilon == pytest.approx(1 - kl.alpha)
    assert kl.product == 6


def test_pair_rejects_length_mismatch():
    with pytest.raises(ValidationError):
        CodePair(BinaryCode(2, [0]), BinaryCode(3, [0]))


def test_ternary_rendering():
    assert str(TernaryWord.of_sum(0b01, 0b11, 2)) == "21"
    d = TernaryWord.of_diff(0b01, 0b10, 2)
    assert str(d) == "+-"
    assert d.digits == (1, -1)
    assert d.preimage(-1) == (1,)
    with pytest.raises(ValidationError):
        TernaryWord("sum", 2, 1, 1)


def test_file_format(tmp_path):
    text = "# comment\n00\n01\n\n11\n"
    code = parse_code_text(text)
    assert code.to_strings() == ["00", "01", "11"]
    path = tmp_path / "a.codes"
    write_code(code, path, "three words")
    assert read_code(path) == code
    assert format_code(code).splitlines() == ["00", "01", "11"]
    with pytest.raises(ValidationError):
        parse_code_text("0a\n")
    with pytest.raises(ValidationError):
        parse_code_text("# only a comment\n")
