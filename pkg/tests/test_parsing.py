from pathlib import Path

import pytest

from dvfields.coeffield import KElem
from dvfields.errors import ParseError
from dvfields.hahn import monomial, one
from dvfields.ordgroup import QQ1, ZZW
from dvfields.parsing import (
    format_group_elem,
    format_kelem,
    format_series,
    parse_group_elem,
    parse_kelem,
    parse_series,
)

G = ZZW
CORPUS = (Path(__file__).parent / "golden" / "corpus.txt").read_text().splitlines()


@pytest.mark.parametrize("text", [line for line in CORPUS if line.strip()])
def test_roundtrip_corpus(text):
    x = parse_series(text, G)
    printed = format_series(x)
    again = parse_series(printed, G)
    assert format_series(again) == printed
    assert (x - again).is_visibly_zero()
    assert x.precision == again.precision or (
        x.precision is again.precision
    )


class TestSeriesGrammar:
    def test_bare_mono(self):
        x = parse_series("t^[1;0]", G)
        assert x.definitely_equal(monomial(G, G.elem([1, 0])))

    def test_precision_cap(self):
        x = parse_series("1 + O(t^[0;4])", G)
        assert x.precision == G.elem([0, 4])

    def test_rank1_bare_exponent(self):
        x = parse_series("t^-3 + t^1/2", QQ1)
        assert x.val().coords == (-3,)

    def test_leading_minus(self):
        x = parse_series("-t^[0;1] + 1", G)
        assert x.coeff_at(G.elem([0, 1])) == KElem.from_rational(-1)

    def test_coefficient_division(self):
        x = parse_series("1/2*t^[0;1]", G)
        assert x.coeff_at(G.elem([0, 1])) == KElem.from_rational(1) / 2

    def test_parenthesized_coefficient(self):
        x = parse_series("(1 + th1)*t^[0;2]", G)
        assert x.coeff_at(G.elem([0, 2])) == KElem.from_rational(1) + KElem.theta(1)

    def test_trailing_junk_rejected(self):
        with pytest.raises(ParseError):
            parse_series("1 + t^[0;1] )", G)

    def test_rank_mismatch_rejected(self):
        with pytest.raises(ParseError):
            parse_series("t^[1;0;0]", G)

    def test_byte_offset_reported(self):
        with pytest.raises(ParseError) as err:
            parse_series("1 + $", G)
        assert "byte 4" in str(err.value)


class TestGroupElems:
    def test_bracket_form(self):
        assert parse_group_elem("[3;-7]", G).coords == (3, -7)

    def test_rank1_bare(self):
        assert parse_group_elem("5/2", QQ1).coords[0] == 2.5

    def test_roundtrip(self):
        for coords in ([0, 0], [1, -2], [-3, 7]):
            g = G.elem(coords)
            assert parse_group_elem(format_group_elem(g), G) == g


class TestKElem:
    def test_symbols_and_powers(self):
        k = parse_kelem("th1^2*th2 - 3/4")
        assert k == KElem.theta(1) ** 2 * KElem.theta(2) - KElem.from_rational(3) / 4

    def test_division(self):
        k = parse_kelem("(th1 + 1)/th2")
        assert k * KElem.theta(2) == KElem.theta(1) + KElem.from_rational(1)

    def test_print_parse_fixpoint(self):
        for text in ("th1", "1/2", "(th1 + 1)/th2", "2*th1^3 - th2"):
            k = parse_kelem(text)
            assert parse_kelem(format_kelem(k)) == k
