from fractions import Fraction

import pytest

from quasimetric.scalar import close, format_scalar, le, parse_scalar, to_json


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3", Fraction(3)),
        ("-2", Fraction(-2)),
        ("2/5", Fraction(2, 5)),
        ("4/10", Fraction(2, 5)),
        ("0.25", 0.25),
        ("1e-05", 1e-05),
        (" 7 ", Fraction(7)),
    ],
)
def test_parse(text, expected):
    got = parse_scalar(text)
    assert got == expected
    assert type(got) is type(expected)


@pytest.mark.parametrize("text", ["", "a", "1/0", "1/-2", "1//2", "0x10"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_format_round_trip():
    for x in [Fraction(2, 5), Fraction(3), 0.1, 1 / 3, 1e-12]:
        assert parse_scalar(format_scalar(x)) == x


def test_json_forms():
    assert to_json(Fraction(1)) == "1"
    assert to_json(Fraction(16, 25)) == "16/25"
    assert to_json(0.5) == 0.5


def test_tolerant_comparisons():
    assert close(1.0, 1.0 + 1e-12)
    assert not close(Fraction(1), Fraction(1) + Fraction(1, 10**12))
    assert le(1.0 + 1e-12, 1.0)
    assert not le(Fraction(1) + Fraction(1, 10**12), Fraction(1))
