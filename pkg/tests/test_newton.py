from fractions import Fraction

import pytest

from dvfields.coeffield import KElem
from dvfields.errors import DomainError, HypothesisError, UnsupportedGroupError
from dvfields.hahn import constant, monomial, one, zero
from dvfields.newton import (
    ValuedPoly,
    count_roots_in_ring,
    polygon,
    rolle_check,
    split_radical,
)
from dvfields.ordgroup import QQ1, ZZW

G = ZZW
Q = QQ1


def M(j, i, c=1):
    return monomial(G, G.elem([j, i]), c)


def qm(v, c=1):
    return monomial(Q, Q.elem([Fraction(v)]), c)


T = M(0, 1)


class TestPolygon:
    def test_mixed_slopes(self):
        # t x^2 - (1+t) x + 1: roots 1 and 1/t by construction
        p = ValuedPoly((one(G), -(one(G) + T), T))
        np = polygon(p)
        assert [(i, tuple(v)) for i, v in np.vertices] == [
            (0, (0, 0)),
            (1, (0, 0)),
            (2, (0, 1)),
        ]
        assert [(tuple(s), n) for s, n in np.segments] == [
            ((0, 0), 1),
            ((0, 1), 1),
        ]

    def test_half_slope(self):
        p = ValuedPoly((qm(1, -1), zero(Q), one(Q)))  # x^2 - t over the line
        np = polygon(p)
        assert [(tuple(s), n) for s, n in np.segments] == [((Fraction(-1, 2),), 2)]

    def test_unit_root(self):
        p = ValuedPoly((constant(G, -5), one(G)))
        np = polygon(p)
        assert [(tuple(s), n) for s, n in np.segments] == [((0, 0), 1)]


class TestCountRoots:
    def test_one_integral_root(self):
        p = ValuedPoly((one(G), -(one(G) + T), T))
        assert count_roots_in_ring(p) == 1

    def test_both_roots_integral(self):
        # x^2 - t over the divisible line: both roots at valuation 1/2
        p = ValuedPoly((qm(1, -1), zero(Q), one(Q)))
        assert count_roots_in_ring(p) == 2

    def test_no_integral_roots(self):
        p = ValuedPoly((qm(-1, -1), zero(Q), one(Q)))  # x^2 - 1/t
        assert count_roots_in_ring(p) == 0

    def test_constructed_counts(self):
        # oracle: build from prescribed roots and count the integral ones
        roots = [M(0, 1), M(0, -1, 2), constant(G, 3), M(1, 0)]
        coeffs = [one(G)]
        for r in roots:
            new = [zero(G) for _ in range(len(coeffs) + 1)]
            for i, c in enumerate(coeffs):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] - c * r
            coeffs = new
        p = ValuedPoly(tuple(coeffs))
        assert count_roots_in_ring(p) == 3


class TestRolle:
    def test_two_roots_near_zero(self):
        # (x - t)(x - 2t): derivative 2x - 3t has the root 3t/2 in the ball
        p = ValuedPoly((M(0, 2, 2), M(0, 1, -3), one(G)))
        cert = rolle_check(p, zero(G), G.elem([0, 1]))
        assert cert.roots_in_ball == 2
        assert cert.derivative_roots_in_ball >= 1

    def test_whole_ring_ball(self):
        p = ValuedPoly((M(0, 1, -1), zero(G), one(G)))  # x^2 - t
        cert = rolle_check(p, zero(G), G.zero())
        assert cert.roots_in_ball == 2

    def test_single_root_rejected(self):
        p = ValuedPoly((M(0, 1, -1), one(G)))  # x - t, one root
        with pytest.raises(HypothesisError):
            rolle_check(p, zero(G), G.elem([0, 1]))

    def test_shifted_ball(self):
        # two roots around center 1
        c0 = one(G)
        r1, r2 = c0 + M(0, 2), c0 + M(0, 3)
        p = ValuedPoly(
            (
                r1 * r2,
                -(r1 + r2),
                one(G),
            )
        )
        cert = rolle_check(p, c0, G.elem([0, 1]))
        assert cert.roots_in_ball == 2 and cert.derivative_roots_in_ball >= 1


class TestSplitRadical:
    def test_unit_exponent(self):
        a = qm(1)
        b, c, e = split_radical(a, 2)
        assert e.definitely_equal(qm(Fraction(3, 4)))
        assert b.definitely_equal(qm(Fraction(1, 2)))
        assert c.definitely_equal(qm(Fraction(1, 4)))

    def test_fourth_power(self):
        a = qm(4)
        b, c, e = split_radical(a, 2)
        assert e.definitely_equal(qm(3))
        assert b.definitely_equal(qm(2))
        assert c.definitely_equal(qm(1))
        assert (b * c * c - a).is_exactly_zero()
        assert (b * c - e).is_exactly_zero()

    def test_exponent_one_rejected(self):
        with pytest.raises(DomainError):
            split_radical(qm(1), 1)

    def test_integer_group_rejected(self):
        with pytest.raises(UnsupportedGroupError):
            split_radical(M(0, 1), 2)

    def test_nonpositive_valuation_rejected(self):
        with pytest.raises(DomainError):
            split_radical(qm(-1), 2)

    def test_identities_with_coefficients(self):
        a = qm(Fraction(7, 3), Fraction(5, 2))
        for n in (2, 3, 4):
            b, c, e = split_radical(a, n)
            assert (b * c**n - a).is_exactly_zero()
            assert (b * c ** (n - 1) - e).is_exactly_zero()
            assert b.val() > Q.zero() and c.val() > Q.zero()
