"""Derivations on truncated Hahn series.

A derivation is presented by three pieces of data:

* a character: per group coordinate, the series value of dlog(t^e_i),
  extended additively over exponents;
* a coefficient table: the series value d(th_m) for every adjoined symbol;
* a unit multiplier u, giving the lifted derivation x -> u * (base delta x).

Leibniz then holds by construction rather than by runtime obligation.  The
truncated derivation into K/m and the truncated log derivation are the two
quotient views; only the K/m codomain is provided (general module-valued
log derivations are out of scope).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffield import KElem
from .errors import DomainError, HypothesisError, PrecisionError, UndeclaredGeneratorError
from .hahn import (
    HahnSeries,
    ResidueClass,
    class_of_quotient,
    class_zero,
    constant,
    monomial,
    one,
    zero,
)
from .ordgroup import (
    INFINITY,
    GroupElem,
    ValOrInf,
    ValueGroupDesc,
    bump,
    val_add,
    val_min,
)


@dataclass(frozen=True)
class DerivationSpec:
    """Immutable (character, coefficient table, multiplier) triple."""

    group: ValueGroupDesc
    character: tuple[HahnSeries, ...]  # one series per coordinate; zero allowed
    coeff_table: dict[int, HahnSeries] = field(default_factory=dict)
    u: HahnSeries = None  # type: ignore[assignment]

    def __post_init__(self):
        if len(self.character) != self.group.rank:
            raise DomainError("character must list one series per coordinate")
        if self.u is None:
            object.__setattr__(self, "u", one(self.group))
        uval = self.u.val_or_none()
        if uval is None:
            raise PrecisionError("multiplier valuation undecidable")
        if not (uval == self.group.zero()):
            raise DomainError("multiplier must be a unit (valuation 0)")

    def with_theta(self, index: int, d_value: HahnSeries) -> "DerivationSpec":
        """A copy whose table additionally sends th<index> to d_value."""
        if index in self.coeff_table:
            raise DomainError(f"th{index} already declared")
        table = dict(self.coeff_table)
        table[index] = d_value
        return DerivationSpec(self.group, self.character, table, self.u)

    # -- character ----------------------------------------------------------

    def char_value(self, g: GroupElem) -> HahnSeries:
        """dlog(t^g) = sum of g_i * character_i."""
        out = zero(self.group)
        for gi, ell in zip(g.coords, self.character):
            if gi == 0 or ell.is_exactly_zero():
                continue
            out = out + ell.scaled(gi)
        return out

    def weight(self) -> ValOrInf:
        """Lower bound for val(delta(t^g)) - g over monomials and symbols."""
        w = INFINITY
        for ell in self.character:
            if ell.terms:
                w = val_min(w, ell.val())
        for d in self.coeff_table.values():
            if d.terms:
                w = val_min(w, d.val())
        return w

    # -- application --------------------------------------------------------

    def coeff_delta(self, c: KElem) -> HahnSeries:
        """delta of a coefficient-field element, via the table."""
        out = zero(self.group)
        for m in sorted(c.variables()):
            if m not in self.coeff_table:
                raise UndeclaredGeneratorError(f"th{m} has no derivation entry")
            dm = self.coeff_table[m]
            if dm.is_exactly_zero():
                continue
            out = out + dm.scaled(c.diff(m))
        return out

    def delta(self, x: HahnSeries) -> HahnSeries:
        """Base derivation, term by term; precision grows by the weight."""
        out = zero(self.group)
        for g, c in x.terms:
            tg = monomial(self.group, g)
            dc = self.coeff_delta(c)
            term = tg.scaled(c) * self.char_value(g)
            if not dc.is_exactly_zero():
                term = term + dc * tg
            out = out + term
        prec = val_add(x.precision, self.weight())
        return out.truncate(prec)

    def delta_u(self, x: HahnSeries) -> HahnSeries:
        """The lifted derivation u * delta(x)."""
        d = self.delta(x)
        if (self.u - one(self.group)).is_exactly_zero():
            return d
        return self.u * d

    def partial(self, x: HahnSeries) -> ResidueClass:
        """The truncated derivation O -> K/m."""
        _require_integral(x)
        return self._class_of(self.delta_u(x))

    def dlog(self, x: HahnSeries) -> ResidueClass:
        """Truncated log derivation: class of delta_u(x)/x, by exact division."""
        v = x.val_or_none()
        if v is None:
            raise PrecisionError("valuation of the log-derivation argument unknown")
        if v is INFINITY:
            raise DomainError("log derivation of the zero series")
        d = self.delta_u(x)
        if d.is_exactly_zero():
            return class_zero(self.group)
        return class_of_quotient(d, x)

    def _class_of(self, d: HahnSeries) -> ResidueClass:
        try:
            return d.dclass()
        except PrecisionError:
            raise PrecisionError("derivative class undetermined at this precision") from None


def _require_integral(x: HahnSeries) -> None:
    zero_e = x.group.zero()
    if x.terms and x.terms[0][0] < zero_e:
        raise DomainError("argument has negative valuation")
    if x.precision is not INFINITY and not x.precision >= zero_e:
        raise PrecisionError("cannot certify nonnegative valuation at this precision")


def o_scale(a: HahnSeries, c: ResidueClass) -> ResidueClass:
    """Action of an integral series on a class (module structure of K/m)."""
    return c.scale(a)


def check_diffs_identity(spec: DerivationSpec, x: HahnSeries, y: HahnSeries):
    """Evaluate both sides of the difference rule for log derivations.

    Requires val(x-y) <= max(val x, val y); under it, x/(x-y) and y/(x-y)
    are integral and

        dlog(x-y) = (x/(x-y)) dlog(x) - (y/(x-y)) dlog(y).

    Returns (equal, lhs, rhs).  Hypothesis violations raise, so an identity
    failure is never conflated with an inapplicable lemma.
    """
    d = x - y
    dv = d.val_or_none()
    vx, vy = x.val_or_none(), y.val_or_none()
    if dv is None or vx is None or vy is None or dv is INFINITY:
        raise HypothesisError("difference or arguments have undecidable valuation")
    if vx is INFINITY or vy is INFINITY:
        raise HypothesisError("identity needs nonzero arguments")
    hi = vx if vx >= vy else vy
    if not dv <= hi:
        raise HypothesisError("val(x-y) exceeds max(val x, val y)")
    lhs = spec.dlog(d)
    a = spec.dlog(x)
    b = spec.dlog(y)
    # (x/(x-y))*A in D is the class of (x*rep(A))/(x-y)
    rhs = class_of_quotient(x * a.rep, d) - class_of_quotient(y * b.rep, d)
    return lhs == rhs, lhs, rhs


def partial_of_inverse(spec: DerivationSpec, x: HahnSeries, target) -> HahnSeries:
    """delta_u(x^{-1}) computed directly; equals -x^{-2} delta_u(x)."""
    inv = x.invert(target)
    return spec.delta_u(inv)
