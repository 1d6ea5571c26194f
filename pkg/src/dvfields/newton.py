"""Newton polygons over the truncated series field.

The polygon of a polynomial is the lower convex hull of (i, val(a_i)); its
slopes live in the divisible hull of the value group and are kept as bare
rational vectors.  Root counting in the valuation ring reduces to reading
off the largest index of minimal coefficient valuation, and the valuative
Rolle certificate follows by differentiating (residue characteristic 0, so
val(i * a_i) = val(a_i)) and re-counting inside the shifted, scaled ball.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError, HypothesisError, PrecisionError, UnsupportedGroupError
from .hahn import HahnSeries, monomial, one, zero
from .ordgroup import (
    INFINITY,
    GroupElem,
    ValueGroupDesc,
    is_z_less,
    strict_between,
)

HullVec = tuple[Fraction, ...]  # point in the divisible hull, lex-compared


@dataclass(frozen=True)
class ValuedPoly:
    """Polynomial a_0 + a_1 x + ... + a_n x^n with series coefficients."""

    coeffs: tuple[HahnSeries, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise DomainError("polynomial must have degree at least 1")
        if self.coeffs[-1].is_exactly_zero():
            raise DomainError("leading coefficient vanishes")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def group(self) -> ValueGroupDesc:
        return self.coeffs[0].group

    def derivative(self) -> "ValuedPoly":
        return ValuedPoly(tuple(c.scaled(i) for i, c in enumerate(self.coeffs) if i >= 1))

    def compose_affine(self, scale: HahnSeries, shift: HahnSeries) -> "ValuedPoly":
        """P(scale*x + shift), expanded exactly by binomials."""
        n = self.degree
        out = [zero(self.group) for _ in range(n + 1)]
        shift_pows = [one(self.group)]
        for _ in range(n):
            shift_pows.append(shift_pows[-1] * shift)
        scale_pows = [one(self.group)]
        for _ in range(n):
            scale_pows.append(scale_pows[-1] * scale)
        for i, a in enumerate(self.coeffs):
            if a.is_exactly_zero():
                continue
            for j in range(i + 1):
                term = a.scaled(comb(i, j)) * scale_pows[j] * shift_pows[i - j]
                out[j] = out[j] + term
        while len(out) > 1 and out[-1].is_exactly_zero():
            out.pop()
        return ValuedPoly(tuple(out))


def _coeff_vals(p: ValuedPoly) -> list[HullVec | None]:
    """Hull-vector valuations; None marks exact zeros, undecidable raises."""
    out: list[HullVec | None] = []
    for i, c in enumerate(p.coeffs):
        if c.is_exactly_zero():
            out.append(None)
            continue
        if c.is_visibly_zero():
            raise PrecisionError(f"coefficient {i} valuation undecidable")
        out.append(tuple(c.val().coords))
    return out


def _vec_sub(a: HullVec, b: HullVec) -> HullVec:
    return tuple(x - y for x, y in zip(a, b))


def _vec_scale(a: HullVec, r: Fraction) -> HullVec:
    return tuple(r * x for x in a)


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower hull vertices and the (slope, length) run-length encoding."""

    vertices: tuple[tuple[int, HullVec], ...]
    segments: tuple[tuple[HullVec, int], ...]


def polygon(p: ValuedPoly) -> NewtonPolygon:
    pts = [(i, v) for i, v in enumerate(_coeff_vals(p)) if v is not None]
    hull: list[tuple[int, HullVec]] = []
    for pt in pts:
        while len(hull) >= 2 and not _right_turn(hull[-2], hull[-1], pt):
            hull.pop()
        hull.append(pt)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = _vec_scale(_vec_sub(y2, y1), Fraction(1, x2 - x1))
        segments.append((slope, x2 - x1))
    return NewtonPolygon(tuple(hull), tuple(segments))


def _right_turn(a, b, c) -> bool:
    """Strictly convex-down turn at b, with ordinates compared lex."""
    (x1, y1), (x2, y2), (x3, y3) = a, b, c
    lhs = _vec_scale(_vec_sub(y3, y1), Fraction(x2 - x1))
    rhs = _vec_scale(_vec_sub(y2, y1), Fraction(x3 - x1))
    return lhs > rhs


def count_roots_in_ring(p: ValuedPoly) -> int:
    """Roots of valuation >= 0, with multiplicity.

    After scaling the minimum coefficient valuation to zero this is the
    largest index whose coefficient achieves the minimum.
    """
    vals = _coeff_vals(p)
    finite = [v for v in vals if v is not None]
    if not finite:
        raise DomainError("all coefficients vanish")
    low = min(finite)
    return max(i for i, v in enumerate(vals) if v == low)


@dataclass(frozen=True)
class RolleCertificate:
    roots_in_ball: int
    derivative_roots_in_ball: int


def rolle_check(p: ValuedPoly, center: HahnSeries, radius: GroupElem) -> RolleCertificate:
    """Certify a derivative root in the closed ball val(x - center) >= radius.

    Requires at least two roots of p in the ball, certified through the
    affine change of variables onto the valuation ring.
    """
    scale = monomial(p.group, radius)
    moved = p.compose_affine(scale, center)
    inside = count_roots_in_ring(moved)
    if inside < 2:
        raise HypothesisError(f"only {inside} root(s) certified in the ball")
    dmoved = moved.derivative()
    dcount = count_roots_in_ring(dmoved)
    if dcount < 1:
        raise HypothesisError("derivative root certificate failed")  # unreachable
    return RolleCertificate(inside, dcount)


def split_radical(a: HahnSeries, n: int):
    """(b, c, e) with b*c^n = a, b*c^(n-1) = e, val(b) > 0 < val(c).

    Needs a divisible value group: the splitting exponent is any group
    element strictly between (n-1)/n * val(a) and val(a).  Exact for
    monomial a; a general series gets the identities at the precision the
    inverse powers carry.
    """
    if n < 2:
        raise DomainError("splitting exponent must be at least 2")
    group = a.group
    if not is_z_less(group):
        raise UnsupportedGroupError("radical splitting needs a divisible value group")
    v = a.val_or_none()
    if v is None:
        raise PrecisionError("input valuation undecidable")
    if not a.terms or not v > group.zero():
        raise DomainError("radical splitting needs val(a) > 0")
    gamma = strict_between(v, Fraction(n - 1, n), Fraction(1))
    e = monomial(group, gamma)
    c = a * monomial(group, -gamma)
    if a.is_monomial():
        a_inv = monomial(group, -v, a.leading_coeff().inverse())
        b = (e**n) * (a_inv ** (n - 1))
    else:
        target = a.precision
        if target is INFINITY:
            target = group.unit(0).scale(6) + v.scale(n)
        b = (e**n) * (a.invert(target) ** (n - 1))
    return b, c, e
