from fractions import Fraction

import pytest

from dvfields.coeffield import KElem
from dvfields.deriv import DerivationSpec, check_diffs_identity
from dvfields.errors import (
    DomainError,
    HypothesisError,
    PrecisionError,
    UndeclaredGeneratorError,
)
from dvfields.hahn import constant, monomial, one, zero
from dvfields.ordgroup import INFINITY, QQ1, ZZW

G = ZZW


def M(j, i, c=1):
    return monomial(G, G.elem([j, i]), c)


def base_spec(**kw):
    char = (M(-1, 0), zero(G))
    return DerivationSpec(G, char, kw.get("table", {}), kw.get("u"))


def ddt_spec():
    # rank-1 analog of d/dt: dlog(t) = 1/t
    g = QQ1
    return DerivationSpec(g, (monomial(g, g.elem([-1])),), {}), g


class TestApplyDelta:
    def test_monomial_formula(self):
        spec = base_spec()
        assert spec.delta(M(3, 2)).definitely_equal(M(2, 2, 3))

    def test_minor_terms_killed(self):
        spec = base_spec()
        assert spec.delta(M(0, 5)).is_exactly_zero()
        assert spec.delta(M(1, 0)).definitely_equal(one(G))

    def test_coefficient_table(self):
        spec = base_spec(table={1: M(0, -3)})
        x = M(0, 1, KElem.theta(1))
        assert spec.delta(x).definitely_equal(M(0, -2))

    def test_undeclared_generator(self):
        spec = base_spec()
        with pytest.raises(UndeclaredGeneratorError):
            spec.delta(M(0, 1, KElem.theta(7)))

    def test_leibniz_on_samples(self):
        spec = base_spec(table={1: M(0, -3)})
        x = one(G) + M(0, 1, KElem.theta(1))
        y = M(1, 0) + M(0, 2)
        lhs = spec.delta(x * y)
        rhs = x * spec.delta(y) + y * spec.delta(x)
        assert (lhs - rhs).is_exactly_zero()


class TestPartial:
    def test_major_unit(self):
        spec = base_spec()
        cls = spec.partial(M(1, 0))
        assert cls.rep.definitely_equal(one(G))
        assert cls.dval().coords == (0, 0)

    def test_constants_killed(self):
        spec = base_spec()
        assert spec.partial(constant(G, Fraction(7, 3))).is_zero()

    def test_symbol_carrier(self):
        spec = base_spec(table={1: M(0, -3)})
        cls = spec.partial(M(0, 1, KElem.theta(1)))
        assert cls.rep.definitely_equal(M(0, -2))
        assert cls.dval().coords == (0, -2)

    def test_negative_valuation_rejected(self):
        spec = base_spec()
        with pytest.raises(DomainError):
            spec.partial(M(0, -1))


class TestDlog:
    def test_major_monomial(self):
        spec = base_spec()
        assert spec.dlog(M(1, 0)).rep.definitely_equal(M(-1, 0))

    def test_rational_constants(self):
        spec = base_spec()
        assert spec.dlog(constant(G, Fraction(5, 2))).is_zero()

    def test_ddt_unit(self):
        spec, g = ddt_spec()
        t = monomial(g, g.elem([1]))
        cls = spec.dlog(one(g) - t)
        assert cls.rep.definitely_equal(constant(g, -1))

    def test_group_homomorphism(self):
        spec = base_spec(table={1: M(0, -3)})
        x = M(1, 0) + M(0, 2)
        y = one(G) + M(0, 1, KElem.theta(1))
        assert spec.dlog(x * y) == spec.dlog(x) + spec.dlog(y)

    def test_zero_rejected(self):
        spec = base_spec()
        with pytest.raises(DomainError):
            spec.dlog(zero(G))


class TestDiffsIdentity:
    def test_rank1_ddt(self):
        spec, g = ddt_spec()
        t = monomial(g, g.elem([1]))
        equal, lhs, rhs = check_diffs_identity(spec, one(g), t)
        assert equal
        assert lhs.rep.definitely_equal(constant(g, -1))

    def test_degenerate_difference_rejected(self):
        spec = base_spec()
        x = one(G) + M(0, 1)
        with pytest.raises(HypothesisError):
            check_diffs_identity(spec, x, x)

    def test_major_vs_one(self):
        spec = base_spec()
        equal, lhs, rhs = check_diffs_identity(spec, M(1, 0), one(G))
        assert equal

    def test_hypothesis_violation_distinct_from_failure(self):
        # val(x - y) > max val: residues agree, the lemma does not apply
        spec = base_spec()
        x = one(G) + M(0, 2)
        y = one(G) + M(0, 3)
        with pytest.raises(HypothesisError):
            check_diffs_identity(spec, x, y)


class TestMultiplier:
    def test_twisted_derivation(self):
        u = one(G) + M(0, 1)
        spec = base_spec(u=u)
        assert spec.delta_u(M(1, 0)).definitely_equal(u)
        # u*delta is still a derivation
        x, y = M(1, 0), one(G) + M(0, 1)
        lhs = spec.delta_u(x * y)
        rhs = x * spec.delta_u(y) + y * spec.delta_u(x)
        assert (lhs - rhs).is_exactly_zero()

    def test_non_unit_multiplier_rejected(self):
        with pytest.raises(DomainError):
            base_spec(u=M(0, 1))

    def test_precision_weight(self):
        spec = base_spec(table={1: M(0, -3)})
        x = (one(G) + M(0, 1, KElem.theta(1))).truncate(G.elem([0, 4]))
        d = spec.delta_u(x)
        assert d.precision == G.elem([-1, 4])
