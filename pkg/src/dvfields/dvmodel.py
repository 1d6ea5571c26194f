"""A dense diffeovalued field as a growable working model.

The model bundles a value group, a derivation spec, and an append-only log of
adjoined coefficient symbols.  Ring membership is read off the pair
(val(x), val of the truncated derivative): writing d for the class of the
lifted derivative in K/m,

    O = {val >= 0},  R = O and dval(d) >= 0,  Q = O and d = 0,  I = Q and val > 0.

Density is realized constructively: a query (a, b, gamma) adjoins one fresh
symbol th with d(th) solved so that x = a + th*t^g hits the target derivative
exactly, and never disturbs previously computed derivatives.  Every witness
the model fabricates is recorded in `witness_log`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .coeffield import KElem
from .deriv import DerivationSpec
from .errors import (
    DomainError,
    HypothesisError,
    NoNeutralizerError,
    PrecisionError,
    UnsupportedModelError,
)
from .hahn import (
    HahnSeries,
    ResidueClass,
    bounded_quotient,
    class_of_quotient,
    class_zero,
    constant,
    exact_div,
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
    bump_major,
    val_add,
    val_min,
)


CLASSIFY_COMPLEXITY_BUDGET = 400
"""Total coefficient polynomial terms beyond which classification declines."""


def _complexity(x: HahnSeries) -> int:
    return sum(len(c.num.terms) + len(c.den.terms) for _, c in x.terms)


class RingTag(enum.Enum):
    IN_I = "InI"
    IN_Q_NOT_I = "InQnotI"
    IN_R_NOT_Q = "InRnotQ"
    IN_O_NOT_R = "InOnotR"
    NOT_IN_O = "NotInO"
    UNDECIDABLE = "Undecidable"


@dataclass(frozen=True)
class RingClass:
    """classify_ring verdict; cumulative predicates included for convenience."""

    tag: RingTag
    undecided_at: ValOrInf | None = None

    def in_O(self) -> bool:
        return self.tag in (RingTag.IN_I, RingTag.IN_Q_NOT_I, RingTag.IN_R_NOT_Q, RingTag.IN_O_NOT_R)

    def in_R(self) -> bool:
        return self.tag in (RingTag.IN_I, RingTag.IN_Q_NOT_I, RingTag.IN_R_NOT_Q)

    def in_Q(self) -> bool:
        return self.tag in (RingTag.IN_I, RingTag.IN_Q_NOT_I)

    def in_I(self) -> bool:
        return self.tag is RingTag.IN_I

    def decided(self) -> bool:
        return self.tag is not RingTag.UNDECIDABLE


@dataclass(frozen=True)
class GenRecord:
    index: int
    name: str
    exponent: GroupElem | None
    d_value: HahnSeries


@dataclass
class DVModel:
    """Mutable-by-adjunction model; reads are safe to share, growth is not."""

    group: ValueGroupDesc
    spec: DerivationSpec
    generators: list[GenRecord] = field(default_factory=list)
    precision: GroupElem | None = None
    witness_log: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if self.precision is None:
            self.precision = self.group.unit(0).scale(6)
        for m in self.spec.coeff_table:
            if not any(g.index == m for g in self.generators):
                self.generators.append(GenRecord(m, f"th{m}", None, self.spec.coeff_table[m]))

    # -- growth --------------------------------------------------------------

    def theta_count(self) -> int:
        return max((g.index for g in self.generators), default=0)

    def adjoin_generator(self, d_builder, exponent: GroupElem | None = None, note: str = "") -> KElem:
        """Adjoin a fresh symbol th_new; d_builder(theta) gives its derivative.

        The derivative series may mention th_new itself.  Returns the symbol.
        """
        index = self.theta_count() + 1
        theta = KElem.theta(index)
        d_value = d_builder(theta)
        self.spec = self.spec.with_theta(index, d_value)
        rec = GenRecord(index, f"th{index}", exponent, d_value)
        self.generators.append(rec)
        self.witness_log.append(
            {
                "generator": rec.name,
                "exponent": None if exponent is None else repr(exponent),
                "d": repr(d_value),
                "note": note,
            }
        )
        return theta

    # -- basic reads -----------------------------------------------------------

    def delta_u(self, x: HahnSeries) -> HahnSeries:
        return self.spec.delta_u(x)

    def partial(self, x: HahnSeries) -> ResidueClass:
        return self.spec.partial(x)

    def dlog(self, x: HahnSeries) -> ResidueClass:
        return self.spec.dlog(x)

    def classify_ring(self, x: HahnSeries) -> RingClass:
        zero_e = self.group.zero()
        if x.terms and x.terms[0][0] < zero_e:
            return RingClass(RingTag.NOT_IN_O)
        if _complexity(x) > CLASSIFY_COMPLEXITY_BUDGET:
            # derivative classes of such monsters are a resource question,
            # not a mathematical one; answer honestly
            return RingClass(RingTag.UNDECIDABLE, x.precision if x.precision is not INFINITY else None)
        if x.precision is not INFINITY and not x.precision >= zero_e:
            return RingClass(RingTag.UNDECIDABLE, x.precision)
        if x.terms:
            val_positive = x.terms[0][0] > zero_e
        elif x.precision is INFINITY or x.precision > zero_e:
            val_positive = True
        else:
            # vanished down to exponent 0 exactly: I-membership unresolved
            return RingClass(RingTag.UNDECIDABLE, x.precision)
        try:
            cls = self.spec.partial(x)
        except PrecisionError:
            return RingClass(RingTag.UNDECIDABLE, x.precision)
        return self._tag_from(val_positive, cls)

    def _tag_from(self, val_positive: bool, cls: ResidueClass) -> RingClass:
        if cls.is_zero():
            return RingClass(RingTag.IN_I if val_positive else RingTag.IN_Q_NOT_I)
        if cls.dval() < self.group.zero():
            return RingClass(RingTag.IN_O_NOT_R)
        return RingClass(RingTag.IN_R_NOT_Q)

    # -- quotients num/den handled without forming truncated inverses -----------

    def partial_quotient(self, num: HahnSeries, den: HahnSeries) -> ResidueClass:
        """Class of the truncated derivative of num/den, computed exactly.

        delta(num/den) = (den*delta(num) - num*delta(den)) / den^2.
        """
        d = den * self.delta_u(num) - num * self.delta_u(den)
        if d.is_exactly_zero():
            return class_zero(self.group)
        return class_of_quotient(d, den * den)

    def classify_quotient(self, num: HahnSeries, den: HahnSeries) -> RingClass:
        """Ring tag of num/den for exact operands; never inverts den."""
        vn, vd = num.val_or_none(), den.val_or_none()
        if vn is None or vd is None or vd is INFINITY:
            raise PrecisionError("quotient valuation undecidable")
        zero_e = self.group.zero()
        if vn is INFINITY:
            return RingClass(RingTag.IN_I)
        if vn - vd < zero_e:
            return RingClass(RingTag.NOT_IN_O)
        try:
            cls = self.partial_quotient(num, den)
        except PrecisionError:
            return RingClass(RingTag.UNDECIDABLE, None)
        return self._tag_from(vn - vd > zero_e, cls)

    def val_partial(self, x: HahnSeries) -> ValOrInf:
        """Valuation in D of the truncated derivative; +inf exactly on Q."""
        zero_e = self.group.zero()
        if x.terms and x.terms[0][0] < zero_e:
            raise DomainError("val_partial needs val(x) >= 0")
        return self.spec.partial(x).dval()

    # -- neutralizers ----------------------------------------------------------

    def neutralizer(self, x: HahnSeries) -> HahnSeries:
        """An element a of Q with x*a in R minus Q and val(a) = -val_partial(x).

        Elements of R get 1.  Otherwise a kernel monomial t^g with
        g = -val_partial(x) is tried; when the character obstructs it, a fresh
        symbol with derivative canceling the character term is adjoined.
        """
        rc = self.classify_ring(x)
        if not rc.decided():
            raise PrecisionError("ring membership undecidable")
        if rc.in_Q():
            raise NoNeutralizerError("kernel elements have no neutralizer")
        if not rc.in_O():
            raise DomainError("neutralizer needs an integral element")
        if rc.in_R():
            return one(self.group)
        g = -self.val_partial(x)
        cand = monomial(self.group, g)
        if self.classify_ring(cand).in_Q():
            out = cand
        else:
            ell = self.spec.char_value(g)
            theta = self.adjoin_generator(
                lambda th: (-ell).scaled(th), exponent=g, note="neutralizer kernel generator"
            )
            out = monomial(self.group, g, theta)
        prod = self.classify_ring(x * out)
        if prod.tag is not RingTag.IN_R_NOT_Q:
            raise PrecisionError("neutralizer product membership undecided")
        return out

    # -- density ---------------------------------------------------------------

    def solve_density(self, a: HahnSeries, b: HahnSeries, gamma: GroupElem) -> HahnSeries:
        """x with val(x - a) > gamma and delta_u(x) = b, by one adjunction."""
        zero_e = self.group.zero()
        g = bump(gamma if gamma > zero_e else zero_e)
        r = b - self.delta_u(a)
        ell = self.spec.char_value(g)
        if r.is_exactly_zero():
            builder = lambda th: (-ell).scaled(th)
        else:
            w = self._divide_by_multiplier(r).shifted(-g)
            builder = lambda th: w + (-ell).scaled(th)
        theta = self.adjoin_generator(builder, exponent=g, note="density witness")
        x = a + monomial(self.group, g, theta)
        return x

    def _divide_by_multiplier(self, r: HahnSeries) -> HahnSeries:
        u = self.spec.u
        if (u - one(self.group)).is_exactly_zero():
            return r
        q = exact_div(r, u)
        if q is None:
            raise UnsupportedModelError(
                "multiplier is not exactly invertible against this density target"
            )
        return q

    def weird_witness(self, gamma: GroupElem) -> HahnSeries:
        """a with val(a) > gamma and val_partial(a) < -gamma, via one density call."""
        if not gamma > self.group.zero():
            raise DomainError("weird witness needs gamma > 0")
        g = bump(gamma)
        target = monomial(self.group, -g)
        a = self.solve_density(zero(self.group), target, gamma)
        assert a.val() > gamma and self.val_partial(a) < -gamma
        return a

    # -- triple reduction --------------------------------------------------------

    def reduce_triple(self, a: HahnSeries, b: HahnSeries, c: HahnSeries):
        """Express one of three elements over the other two with kernel coefficients.

        Returns (i, q, j, p, k) with elems[i] = q*elems[j] + p*elems[k] and
        q, p in Q, following the valuation-then-derivative normalization: the
        minimum-valuation element normalizes, derivative classes of the other
        two are compared, and one density query aligns the mismatched
        coefficient.  Coefficients are exact whenever the normalizer divides
        exactly; otherwise they carry the model's working precision.
        """
        elems = [a, b, c]
        if all(e.is_visibly_zero() for e in elems):
            raise DomainError("triple must contain a nonzero element")
        for i, e in enumerate(elems):
            if e.is_exactly_zero():
                j, k = [m for m in range(3) if m != i]
                return i, zero(self.group), j, zero(self.group), k
        for i in range(3):
            for j in range(i + 1, 3):
                if (elems[i] - elems[j]).is_exactly_zero():
                    k = [m for m in range(3) if m not in (i, j)][0]
                    return j, one(self.group), i, zero(self.group), k
        vals = []
        for e in elems:
            v = e.val_or_none()
            if v is None:
                raise PrecisionError("element valuation undecidable")
            vals.append(v)
        nidx = min(range(3), key=lambda i: (vals[i].coords, i))
        o1, o2 = [i for i in range(3) if i != nidx]
        base = elems[nidx]
        c1 = self.partial_quotient(elems[o1], base)
        c2 = self.partial_quotient(elems[o2], base)
        if c1.is_zero():
            return o1, self._quotient_elem(elems[o1], base), nidx, zero(self.group), o2
        if c2.is_zero():
            return o2, self._quotient_elem(elems[o2], base), nidx, zero(self.group), o1
        # express the element whose derivative class sits higher
        if not c1.dval() <= c2.dval():
            o1, o2, c1, c2 = o2, o1, c2, c1
        x0 = bounded_quotient(c2.rep, c1.rep, -c1.dval())
        gamma = -c1.dval()
        if self.classify_ring(x0).in_Q():
            x = x0
        else:
            x = self.solve_density(x0, zero(self.group), gamma)
        y = self._quotient_elem(elems[o2] - x * elems[o1], base)
        return o2, x, o1, y, nidx

    def _quotient_elem(self, num: HahnSeries, den: HahnSeries) -> HahnSeries:
        q = exact_div(num, den)
        if q is not None:
            return q
        if num.is_visibly_zero():
            return num
        # inexact fallback: reach 8 least-significant units past the lead so
        # minor-direction tails terminate instead of chasing a major window
        target = self.group.unit(self.group.rank - 1).scale(8) - den.val()
        return num * den.invert(target)

    # -- topology -----------------------------------------------------------------

    def dv_ball_member(
        self,
        x: HahnSeries,
        center: HahnSeries,
        dcenter: HahnSeries,
        gamma: GroupElem,
    ) -> bool:
        """Membership in {val(x-a) > gamma and val(delta x - b) > gamma}."""
        return _val_exceeds(x - center, gamma) and _val_exceeds(
            self.delta_u(x) - dcenter, gamma
        )

    def refute_vtopology(self, a: HahnSeries):
        """(x, y) with xy in aR, x not in R, y not in O, for a in R.

        Follows the proof shape: one density witness above val(a) whose
        derivative escapes below 0, then y = a/x.
        """
        rc = self.classify_ring(a)
        if not rc.decided():
            raise PrecisionError("neighborhood generator membership undecided")
        if not rc.in_R():
            raise DomainError("neighborhood generator must lie in R")
        va = a.val()
        target = monomial(self.group, -bump(self.group.zero()))
        x = self.solve_density(zero(self.group), target, va)
        theta_mono = x  # th * t^g, exactly invertible
        g, coeff = theta_mono.terms[0]
        y = a * monomial(self.group, -g, coeff.inverse())
        assert (x * y - a).is_exactly_zero()
        assert self.classify_ring(x).tag is RingTag.IN_O_NOT_R
        assert y.val() < self.group.zero()
        return x, y

    def cofinal_q_element(self, a: HahnSeries) -> HahnSeries:
        """A nonzero kernel monomial b with val(b) >= val(a).

        Negative-valuation inputs take b = 1; otherwise the exponent ladder
        val(a) + major, doubled until the character contribution dies.
        """
        v = a.val_or_none()
        if v is None:
            raise PrecisionError("input valuation undecidable")
        if v is INFINITY:
            raise DomainError("cofinal element needs a nonzero input")
        zero_e = self.group.zero()
        if v < zero_e:
            return one(self.group)
        g = bump_major(v)
        for _ in range(64):
            cand = monomial(self.group, g)
            if self.classify_ring(cand).in_Q():
                return cand
            g = g + g
        raise UnsupportedModelError("no kernel monomial found on the exponent ladder")

    # -- quadratic integrality probe ------------------------------------------------

    def discriminant_in_p(self, alpha: HahnSeries, b: HahnSeries, c: HahnSeries) -> bool:
        """Whether b^2 - 4c lands in the maximal ideal of R, for a wild alpha
        satisfying alpha^2 + b*alpha + c = 0 over R.

        Checker only; fabricating such triples inside the symbol model is not
        attempted.
        """
        if not (self.classify_ring(b).in_R() and self.classify_ring(c).in_R()):
            raise HypothesisError("quadratic coefficients must lie in R")
        lhs = alpha * alpha + b * alpha + c
        if not lhs.eq_at(zero(self.group)):
            raise HypothesisError("alpha does not satisfy the monic quadratic")
        if not self.classify_ring(alpha).tag is RingTag.IN_O_NOT_R:
            raise HypothesisError("alpha is not wild")
        disc = b * b - constant(self.group, 4) * c
        rc = self.classify_ring(disc)
        if not rc.decided():
            raise PrecisionError("discriminant membership undecided")
        return rc.in_R() and disc.res().is_zero()


def _val_exceeds(x: HahnSeries, gamma: GroupElem) -> bool:
    """Decide val(x) > gamma, with +inf counting as above everything."""
    if x.terms:
        return x.terms[0][0] > gamma
    if x.precision is INFINITY:
        return True
    if x.precision > gamma:
        return True
    raise PrecisionError("cannot compare a vanished series against the radius")


def base_model(u: HahnSeries | None = None, precision: GroupElem | None = None) -> DVModel:
    """The rank-2 model whose character sends the major coordinate to t^-major.

    This is the workhorse: delta(t^(j,i)) = j * t^(j-1,i), coefficients start
    uninterpreted, and the multiplier defaults to 1.
    """
    from .ordgroup import ZZW

    group = ZZW
    char = (monomial(group, group.elem([-1, 0])), zero(group))
    spec = DerivationSpec(group, char, {}, u if u is not None else one(group))
    return DVModel(group, spec, precision=precision)
