"""The unliftability game over the rank-2 value group.

The board: exponents j*(major) + i*(minor) with major beyond every integer
multiple of minor; the derivation kills minor-only monomials and steps the
major coordinate down by one, then gets twisted by a unit multiplier u.
The coarsened valuation reads off the major coordinate alone.

Opening move a = t^major.  Whatever a' the adversary proposes for "the lift
of the derivative of a", as long as a' - u stays outside the coarsening
ideal there is an integer n with val(a' - u) < n; replying b = t^n,
c = t^(major - n) traps the adversary: the three lift identities force
val(u - a') > n.  A play with a' = u modulo the ideal is reported as such
(the published u is a stand-in; the genuinely generic unit is not
computable) rather than refuted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .deriv import DerivationSpec
from .errors import DomainError, PrecisionError, SoundnessError
from .hahn import HahnSeries, ResidueClass, monomial, one, zero
from .ordgroup import (
    INFINITY,
    ConvexSubgroup,
    GroupElem,
    ZZW,
    coarsen,
    drop_minor,
)


@dataclass(frozen=True)
class GameModel:
    """Fixed board: the rank-2 group, the twisted derivation, the coarsening."""

    spec: DerivationSpec
    coarsening: ConvexSubgroup

    @property
    def group(self):
        return self.spec.group

    @property
    def u(self) -> HahnSeries:
        return self.spec.u


def make_game_model(u: HahnSeries | None = None) -> GameModel:
    group = ZZW
    if u is None:
        u = one(group) + monomial(group, group.elem([0, 1]))  # 1 + t
    uval = u.val_or_none()
    if uval is None or not uval == group.zero():
        raise DomainError("multiplier must be a unit of valuation 0")
    if any(g.coords[0] != 0 for g, _ in u.terms):
        raise DomainError("multiplier must live on the minor coordinate line")
    char = (monomial(group, group.elem([-1, 0])), zero(group))
    return GameModel(DerivationSpec(group, char, {}, u), drop_minor(group))


def val_prime(m: GameModel, x: HahnSeries):
    """Coarsened valuation: the major coordinate of val."""
    if x.terms:
        return coarsen(x.val(), m.coarsening)
    if x.precision is INFINITY:
        return INFINITY
    raise PrecisionError("coarsened valuation undecidable")


def in_p(m: GameModel, x: HahnSeries) -> bool:
    """Membership in the coarsening ideal: val'(x) > 0."""
    qzero = m.coarsening.quotient_group().zero()
    if x.terms:
        return coarsen(x.val(), m.coarsening) > qzero
    if x.precision is INFINITY:
        return True
    if coarsen(x.precision, m.coarsening) > qzero:
        return True
    raise PrecisionError("cannot resolve the major coordinate of val(x)")


def slice_integral(m: GameModel, x: HahnSeries):
    """Split x with val'(x) >= 0 as (head, tail): head supported on
    non-positive minor-only exponents, val(tail) > 0, head + tail = x."""
    qzero = m.coarsening.quotient_group().zero()
    zero_e = m.group.zero()
    if x.terms and coarsen(x.val(), m.coarsening) < qzero:
        raise DomainError("slice needs val'(x) >= 0")
    if x.precision is not INFINITY and not x.precision > zero_e:
        raise PrecisionError("positive precision needed to split off the head")
    head_terms = [(g, c) for g, c in x.terms if g.coords[0] == 0 and not g > zero_e]
    head = HahnSeries.make(m.group, head_terms, INFINITY)
    tail = x - head
    return head, tail


@dataclass(frozen=True)
class MatchedU:
    """Adversary matched the multiplier modulo the ideal; no refutation here."""

    reason: str


@dataclass(frozen=True)
class GameTranscript:
    a: HahnSeries
    a_prime: HahnSeries
    n: int
    val_diff: GroupElem
    b: HahnSeries
    c: HahnSeries

    def __post_init__(self):
        if not (self.b * self.c - self.a).is_exactly_zero():
            raise SoundnessError("reply violates the legality condition a = b*c")


def sigma_refute(m: GameModel, a_prime: HahnSeries):
    """Certificate against a': the integer n and the reply (t^n, t^(major-n)).

    Returns MatchedU when a' is congruent to the published multiplier modulo
    the coarsening ideal, which the desk-scale unit cannot rule out.
    """
    diff = a_prime - m.u
    if diff.is_exactly_zero():
        return MatchedU("adversary played the multiplier exactly")
    if diff.is_visibly_zero():
        raise PrecisionError("cannot locate val(a' - u)")
    v = diff.val()
    if v.coords[0] > 0:
        return MatchedU("a' matches the multiplier modulo the coarsening ideal")
    n = max(1, math.floor(v.coords[1]) + 1)
    group = m.group
    a = monomial(group, group.elem([1, 0]))
    b = monomial(group, group.elem([0, n]))
    c = monomial(group, group.elem([1, -n]))
    return GameTranscript(a, a_prime, n, v, b, c)


def sigma_check_triple(
    m: GameModel, transcript: GameTranscript, b_prime: HahnSeries, c_prime: HahnSeries
) -> int:
    """Index (1, 2 or 3) of a lift identity the adversary's pair violates.

    1: b' = (derivative of b) mod m;  2: likewise for c;
    3: a' = b c' + c b'.  The certificate guarantees one fails; if none
    does, soundness is broken and we loudly say so.
    """
    db = m.spec.partial(transcript.b)
    if _class_of(b_prime) != db:
        return 1
    dc = m.spec.partial(transcript.c)
    if _class_of(c_prime) != dc:
        return 2
    rhs = transcript.b * c_prime + transcript.c * b_prime
    if not (transcript.a_prime - rhs).is_exactly_zero():
        return 3
    raise SoundnessError("all three lift identities hold; certificate contradicted")


def _class_of(x: HahnSeries) -> ResidueClass:
    return x.dclass()
