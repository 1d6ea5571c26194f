"""Truncated Hahn series over a lex value group.

A series is a finite ascending list of (exponent, coefficient) terms plus a
precision cap: every exponent strictly below the cap is represented exactly,
and nothing is known at or above it.  Exact series carry an infinite cap.
Equality is therefore only meaningful up to a precision window;
`definitely_equal` additionally demands both caps be infinite.

The quotient K -> K/m is realized concretely: a residue class is the
non-positive-exponent truncation of any representative, which is fully
determined whenever the precision cap is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffield import K_ZERO, KElem, as_kelem
from .errors import (
    DomainError,
    NonUnitError,
    PrecisionError,
    StructuralError,
)
from .ordgroup import (
    INFINITY,
    GroupElem,
    ValOrInf,
    ValueGroupDesc,
    bump,
    coarsen,
    val_add,
    val_min,
)


INVERT_STEP_CAP = 64
"""Geometric expansion steps before an inverse settles for what it reached."""


def _coerce_coeff(c):
    if isinstance(c, KElem):
        return c
    return as_kelem(c)


@dataclass(frozen=True)
class HahnSeries:
    group: ValueGroupDesc
    terms: tuple[tuple[GroupElem, KElem], ...]  # ascending, nonzero, all < precision
    precision: ValOrInf

    # -- construction ------------------------------------------------------

    @staticmethod
    def make(group, items, precision=INFINITY) -> "HahnSeries":
        """Canonicalize arbitrary (exponent, coefficient) pairs."""
        merged: dict[tuple, tuple[GroupElem, KElem]] = {}
        for g, c in items:
            if g.group != group:
                raise StructuralError("term exponent from a different group")
            c = _coerce_coeff(c)
            if g.coords in merged:
                merged[g.coords] = (g, merged[g.coords][1] + c)
            else:
                merged[g.coords] = (g, c)
        kept = [
            (g, c)
            for g, c in merged.values()
            if not c.is_zero() and (precision is INFINITY or g < precision)
        ]
        kept.sort(key=lambda t: t[0].coords)
        return HahnSeries(group, tuple(kept), precision)

    # -- inspection --------------------------------------------------------

    def is_visibly_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.precision is INFINITY

    def is_exactly_zero(self) -> bool:
        return not self.terms and self.precision is INFINITY

    def val(self) -> ValOrInf:
        """Least exponent; +inf for the exact zero series."""
        if self.terms:
            return self.terms[0][0]
        if self.precision is INFINITY:
            return INFINITY
        raise PrecisionError("series is zero to its precision; valuation unknown")

    def val_or_none(self):
        try:
            return self.val()
        except PrecisionError:
            return None

    def leading_coeff(self) -> KElem:
        if not self.terms:
            raise PrecisionError("no leading term visible")
        return self.terms[0][1]

    def coeff_at(self, g: GroupElem) -> KElem:
        """Exact coefficient at an exponent below the precision cap."""
        if not (self.precision is INFINITY or g < self.precision):
            raise PrecisionError("exponent at or above the precision cap")
        for h, c in self.terms:
            if h.coords == g.coords:
                return c
        return K_ZERO

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "HahnSeries"):
        if self.group != other.group:
            raise StructuralError("series over different value groups")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        prec = val_min(self.precision, other.precision)
        return HahnSeries.make(self.group, list(self.terms) + list(other.terms), prec)

    __radd__ = __add__

    def __neg__(self):
        return HahnSeries(self.group, tuple((g, -c) for g, c in self.terms), self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        # error terms: visible(x)*tail(y), visible(y)*tail(x), tail*tail
        prec = INFINITY
        if other.precision is not INFINITY:
            prec = val_min(prec, val_add(self._visible_val(), other.precision))
        if self.precision is not INFINITY:
            prec = val_min(prec, val_add(other._visible_val(), self.precision))
        prec = val_min(prec, val_add(self.precision, other.precision))
        items = []
        for g1, c1 in self.terms:
            for g2, c2 in other.terms:
                items.append((g1 + g2, c1 * c2))
        return HahnSeries.make(self.group, items, prec)

    __rmul__ = __mul__

    def _visible_val(self) -> ValOrInf:
        return self.terms[0][0] if self.terms else INFINITY

    def _coerce(self, x) -> "HahnSeries":
        if isinstance(x, HahnSeries):
            return x
        if isinstance(x, (int, Fraction, KElem)):
            return constant(self.group, x)
        raise DomainError(f"cannot coerce {type(x).__name__} into the series field")

    def scaled(self, c) -> "HahnSeries":
        c = _coerce_coeff(c)
        if c.is_zero():
            return HahnSeries(self.group, (), self.precision)
        return HahnSeries(self.group, tuple((g, c * k) for g, k in self.terms), self.precision)

    def shifted(self, g: GroupElem) -> "HahnSeries":
        """Multiplication by the monomial t^g."""
        prec = self.precision if self.precision is INFINITY else self.precision + g
        return HahnSeries(self.group, tuple((h + g, c) for h, c in self.terms), prec)

    def __pow__(self, n: int) -> "HahnSeries":
        if n < 0:
            raise DomainError("negative power; use invert")
        out = one(self.group)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, prec: ValOrInf) -> "HahnSeries":
        prec = val_min(self.precision, prec)
        return HahnSeries.make(self.group, self.terms, prec)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.precision is INFINITY

    # -- inversion ---------------------------------------------------------

    def invert(self, target: ValOrInf) -> "HahnSeries":
        """Geometric-series inverse, correct to min(target, input-limited) cap.

        The result r satisfies self*r = 1 on the common window.  A series
        with no visible term cannot be inverted: it is indistinguishable
        from zero at its precision.

        In a lex group a window with a raised major coordinate is unreachable
        by a tail advancing in a minor coordinate, so expansion stops after
        a step cap and the precision actually achieved is recorded instead.
        """
        if not self.terms:
            if self.precision is INFINITY:
                raise NonUnitError("inverse of the zero series")
            raise PrecisionError("series indistinguishable from 0 at its precision")
        v, c = self.terms[0]
        lead_inv = monomial(self.group, -v, c.inverse())
        r = self * lead_inv - one(self.group)  # val(r) > 0 on the visible part
        if r.is_exactly_zero():
            out = lead_inv
            return out if target is INFINITY else out.truncate(target)
        window = INFINITY if target is INFINITY else target + v
        window = val_min(window, r.precision)
        if window is INFINITY:
            raise DomainError("inverse has infinite support; pass a finite target precision")
        acc = one(self.group).truncate(window)
        power = one(self.group)
        settled = False
        for _ in range(INVERT_STEP_CAP):
            power = (power * (-r)).truncate(window)
            if power.is_visibly_zero():
                settled = True
                break
            acc = acc + power
            if len(power.terms) > 60 or any(
                len(c.num.terms) + len(c.den.terms) > 60 for _, c in power.terms
            ):
                break
        if not settled:
            # dropped tail starts at val(power) + val(r)
            acc = acc.truncate(val_min(window, power.val() + r.val()))
        out = acc * lead_inv
        return out.truncate(target)

    # -- residues ----------------------------------------------------------

    def res(self) -> KElem:
        """Residue of an integral series: the coefficient at exponent 0."""
        zero_e = self.group.zero()
        if self.terms and self.terms[0][0] < zero_e:
            raise DomainError("negative valuation: element not in the valuation ring")
        if not (self.precision is INFINITY or zero_e < self.precision):
            raise PrecisionError("precision cap does not reach exponent 0")
        return self.coeff_at(zero_e)

    def dclass(self) -> "ResidueClass":
        """Image in K/m: the non-positive-exponent truncation, exact."""
        zero_e = self.group.zero()
        if not (self.precision is INFINITY or zero_e < self.precision):
            raise PrecisionError("precision cap must exceed 0 to determine the class")
        rep = HahnSeries.make(
            self.group, [(g, c) for g, c in self.terms if not g > zero_e], INFINITY
        )
        return ResidueClass(self.group, rep)

    # -- comparisons -------------------------------------------------------

    def eq_at(self, other, bound: ValOrInf = INFINITY) -> bool:
        """Agreement of all coefficients below min(precisions, bound)."""
        other = self._coerce(other)
        self._check(other)
        window = val_min(val_min(self.precision, other.precision), bound)
        diff = self - other
        return all(not g < window for g, _ in diff.terms)

    def definitely_equal(self, other) -> bool:
        other = self._coerce(other)
        return (
            self.precision is INFINITY
            and other.precision is INFINITY
            and (self - other).is_exactly_zero()
        )

    def __repr__(self):
        from .parsing import format_series

        return format_series(self)


# -- constructors ------------------------------------------------------------


def zero(group: ValueGroupDesc) -> HahnSeries:
    return HahnSeries(group, (), INFINITY)


def one(group: ValueGroupDesc) -> HahnSeries:
    return constant(group, 1)


def constant(group: ValueGroupDesc, c) -> HahnSeries:
    c = _coerce_coeff(c)
    if c.is_zero():
        return zero(group)
    return HahnSeries(group, ((group.zero(), c),), INFINITY)


def monomial(group: ValueGroupDesc, exponent: GroupElem, c=1) -> HahnSeries:
    c = _coerce_coeff(c)
    if c.is_zero():
        return zero(group)
    return HahnSeries(group, ((exponent, c),), INFINITY)


def bounded_quotient(
    num: HahnSeries, den: HahnSeries, upto: GroupElem, step_cap: int = 256
) -> HahnSeries:
    """The terms of num/den at exponents <= upto, as an exact series.

    Bottom-up long division: each step cancels the current lowest term, so
    the working exponent strictly climbs and either exits the window or the
    remainder dies.  A truncated numerator is fine as long as its cap reaches
    past upto + val(den); otherwise, or if the quotient's low-end support
    exceeds the step cap (a genuinely infinite class), this raises.
    """
    if den.is_visibly_zero():
        if den.precision is INFINITY:
            raise NonUnitError("division by the zero series")
        raise PrecisionError("divisor indistinguishable from 0")
    vd = den.val()
    if num.terms and den.precision is not INFINITY:
        # divisor tail enters at val(num) - vd + (prec(den) - vd); must clear the window
        if not num.val() - vd + den.precision - vd > upto:
            raise PrecisionError("divisor precision too low for the requested window")
    lead_inv = den.leading_coeff().inverse()
    items: list[tuple[GroupElem, KElem]] = []
    rem = num
    for _ in range(step_cap):
        if rem.is_visibly_zero():
            if rem.precision is INFINITY or rem.precision - vd > upto:
                return HahnSeries.make(num.group, items, INFINITY)
            raise PrecisionError("numerator precision too low for the requested window")
        e = rem.val() - vd
        if e > upto:
            return HahnSeries.make(num.group, items, INFINITY)
        if len(rem.terms) > 80 or any(
            len(c.num.terms) + len(c.den.terms) > 160 for _, c in rem.terms
        ):
            raise PrecisionError("quotient coefficients exceed the desk-scale budget")
        q = rem.leading_coeff() * lead_inv
        items.append((e, q))
        rem = rem - den * monomial(num.group, e, q)
    raise PrecisionError("quotient window support exceeds the step cap")


def class_of_quotient(num: HahnSeries, den: HahnSeries) -> "ResidueClass":
    """The class of num/den in K/m, computed exactly by bounded division."""
    rep = bounded_quotient(num, den, num.group.zero())
    return ResidueClass(num.group, rep)


def exact_div(num: HahnSeries, den: HahnSeries, step_cap: int = 40) -> HahnSeries | None:
    """Exact quotient of finite series, or None.

    Division from the top exponent terminates whenever a finite-support
    quotient exists; the step cap and coefficient-size guard cut off
    genuinely infinite expansions before they grind.
    """
    if not (num.is_exact() and den.is_exact()):
        return None
    if den.is_visibly_zero():
        raise NonUnitError("division by the zero series")
    if num.is_exactly_zero():
        return zero(num.group)
    top_g, top_c = den.terms[-1]
    top_c_inv = top_c.inverse()
    quotient_items: list[tuple[GroupElem, KElem]] = []
    rem = num
    for _ in range(step_cap):
        if rem.is_exactly_zero():
            return HahnSeries.make(num.group, quotient_items, INFINITY)
        if len(rem.terms) > 60 or any(
            len(c.num.terms) + len(c.den.terms) > 80 for _, c in rem.terms
        ):
            return None
        g, c = rem.terms[-1]
        qg, qc = g - top_g, c * top_c_inv
        quotient_items.append((qg, qc))
        rem = rem - den * monomial(num.group, qg, qc)
    return None


# -- the quotient module K/m -------------------------------------------------


@dataclass(frozen=True)
class ResidueClass:
    """Element of D = K/m as its canonical representative (exponents <= 0)."""

    group: ValueGroupDesc
    rep: HahnSeries

    def __post_init__(self):
        zero_e = self.group.zero()
        if any(g > zero_e for g, _ in self.rep.terms):
            raise StructuralError("representative has a positive-exponent term")
        if self.rep.precision is not INFINITY:
            raise StructuralError("representative must be exact")

    def dval(self) -> ValOrInf:
        """Valuation in D: <= 0, or +inf exactly for the zero class."""
        return self.rep.val()

    def is_zero(self) -> bool:
        return self.rep.is_exactly_zero()

    def __add__(self, other: "ResidueClass") -> "ResidueClass":
        return ResidueClass(self.group, (self.rep + other.rep))

    def __sub__(self, other: "ResidueClass") -> "ResidueClass":
        return ResidueClass(self.group, (self.rep - other.rep))

    def __neg__(self) -> "ResidueClass":
        return ResidueClass(self.group, -self.rep)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ResidueClass)
            and self.group == other.group
            and (self.rep - other.rep).is_exactly_zero()
        )

    def scale(self, a: HahnSeries) -> "ResidueClass":
        """The module action of a in the valuation ring on this class.

        val(a*d) = val(a) + val(d) when that stays <= 0, else the class dies;
        needs prec(a) + dval > 0 so the product's class is determined.
        """
        if a.terms and a.terms[0][0] < a.group.zero():
            raise DomainError("scaling by an element of negative valuation")
        if a.precision is not INFINITY and not val_add(a.precision, self.dval()) > a.group.zero():
            raise PrecisionError("scalar precision too low to determine the class")
        prod = a * self.rep
        # the product is exact below prec(a)+dval which exceeds 0; cap is safe to lift
        kept = [(g, c) for g, c in prod.terms if not g > a.group.zero()]
        return ResidueClass(self.group, HahnSeries.make(self.group, kept, INFINITY))

    def res2(self) -> KElem:
        """Isomorphism D_0 -> k on classes of valuation >= 0."""
        if self.is_zero():
            return K_ZERO
        if self.dval() < self.group.zero():
            raise DomainError("class has negative valuation; not in D_0")
        return self.rep.coeff_at(self.group.zero())

    def __repr__(self):
        return f"[{self.rep!r} mod m]"


def class_zero(group: ValueGroupDesc) -> ResidueClass:
    return ResidueClass(group, zero(group))


def divide_class(a: HahnSeries, d: ResidueClass) -> ResidueClass:
    """An x in D with a*x = d, for nonzero integral a (D is divisible)."""
    if a.is_visibly_zero():
        raise NonUnitError("division of a class by (visible) zero")
    if d.is_zero():
        return class_zero(a.group)
    target = bump(a.group.zero()) - d.dval()
    inv = a.invert(target)
    prod = inv * d.rep
    zero_e = a.group.zero()
    if prod.precision is not INFINITY and not prod.precision > zero_e:
        raise PrecisionError("inverse precision too low to determine the class")
    kept = [(g, c) for g, c in prod.terms if not g > zero_e]
    return ResidueClass(a.group, HahnSeries.make(a.group, kept, INFINITY))


# -- multi-valuation separation ----------------------------------------------


def separating_rational(b: HahnSeries, coarsenings) -> Fraction:
    """A nonzero rational q with 1/(b-q) integral for every listed coarsening.

    Scans q = 1, 1/2!, 1/3!, ...; each coarsened valuation excludes at most
    one rational in residue characteristic 0, so the scan ends quickly.
    """
    deltas = list(coarsenings)
    q = Fraction(1)
    fact = 1
    for n in range(1, len(deltas) + 32):
        cand = Fraction(1, fact)
        if _separates(b, cand, deltas):
            return cand
        fact *= n + 1
    raise PrecisionError("no separating rational found; precision too coarse")


def _separates(b: HahnSeries, q: Fraction, deltas) -> bool:
    d = b - constant(b.group, q)
    for delta in deltas:
        if delta.cut_index == 0:
            continue  # trivial coarsening: everything is integral
        qzero = delta.quotient_group().zero()
        if d.terms:
            if coarsen(d.val(), delta) > qzero:
                return False
        else:
            if d.precision is INFINITY:
                return False  # b == q exactly
            if coarsen(d.precision, delta) > qzero:
                return False
            raise PrecisionError("cannot decide coarsened sign of b - q")
    return True
