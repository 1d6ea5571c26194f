"""Line specialization into dual-number space.

The generalized residue wres sends R into k[eps] by pairing the residue with
the k-coefficient of the derivative class.  A line in K^n specializes to the
k-span of the wres-images of its R-points; for n = 2 closed forms cover every
case (graph lines, probe-tame lines, wild lines, coordinate lines), while
higher n falls back to witness enumeration over a bounded window and reports
honestly whether the dimension-2 certificate was reached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coeffield import DUAL_EPS, DUAL_ONE, DualNumber, K_ONE, K_ZERO, KElem, as_kelem, dual
from .dvmodel import DVModel, RingTag
from .errors import DomainError, PrecisionError
from .hahn import HahnSeries, class_of_quotient, monomial, one, zero
from .ordgroup import INFINITY, bump

# -- wres ---------------------------------------------------------------------


def wres(m: DVModel, x: HahnSeries) -> DualNumber:
    """Generalized residue res(x) + res2(dx)*eps; domain is R."""
    rc = m.classify_ring(x)
    if not rc.decided():
        raise PrecisionError("membership in R undecided")
    if not rc.in_R():
        raise DomainError("element lies outside the fundamental ring")
    s = x.res()
    t = m.partial(x).res2()
    return DualNumber(s, t)


def wres_quotient(m: DVModel, num: HahnSeries, den: HahnSeries) -> DualNumber:
    """wres(num/den) without forming a truncated inverse; domain is R."""
    rc = m.classify_quotient(num, den)
    if not rc.decided():
        raise PrecisionError("membership in R undecided")
    if not rc.in_R():
        raise DomainError("element lies outside the fundamental ring")
    s = class_of_quotient(num, den).res2() if not rc.in_I() else K_ZERO
    t = m.partial_quotient(num, den).res2()
    return DualNumber(s, t)


# -- tame/wild -----------------------------------------------------------------


@dataclass(frozen=True)
class TameClass:
    """Outcome of the four-probe membership test.

    kind is one of 'InR', 'TameViaProbe', 'Wild'; probe names the family
    member that landed in R ('inverse', 'shift+1', 'shift-1').  A tame
    element excludes at most two members of {x} u {1/(x - c)}, so four
    probes decide.
    """

    kind: str
    probe: str | None = None
    witness: DualNumber | None = None

    def is_wild(self) -> bool:
        return self.kind == "Wild"


def classify_tame(m: DVModel, x: HahnSeries) -> TameClass:
    return classify_tame_quotient(m, x, one(x.group))


def classify_tame_quotient(m: DVModel, num: HahnSeries, den: HahnSeries) -> TameClass:
    """Tame/wild split of num/den; probes never form truncated inverses."""
    vn, vd = num.val_or_none(), den.val_or_none()
    if vn is None or vd is None or vd is INFINITY:
        raise PrecisionError("probe target indistinguishable from 0")
    if vn is INFINITY:
        raise DomainError("tame/wild split needs a nonzero element")
    rc = m.classify_quotient(num, den)
    if not rc.decided():
        raise PrecisionError("membership in R undecided")
    if rc.in_R():
        return TameClass("InR", None, wres_quotient(m, num, den))
    for probe_name, shift in (("inverse", 0), ("shift+1", 1), ("shift-1", -1)):
        # 1/(x - c) = den / (num - c*den)
        pden = num - den.scaled(shift) if shift else num
        if pden.is_visibly_zero():
            raise PrecisionError("probe denominator indistinguishable from 0")
        rc2 = m.classify_quotient(den, pden)
        if not rc2.decided():
            raise PrecisionError(f"probe {probe_name} membership undecided")
        if rc2.in_R():
            return TameClass("TameViaProbe", probe_name, wres_quotient(m, den, pden))
    return TameClass("Wild")


# -- subspaces of k[eps]^n -------------------------------------------------------


@dataclass(frozen=True)
class EpsSubspace:
    """k-subspace of k[eps]^n in reduced echelon form over the 2n k-coordinates."""

    ambient: int
    basis: tuple[tuple[DualNumber, ...], ...]
    complete: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpsSubspace) or self.ambient != other.ambient:
            return False
        if len(self.basis) != len(other.basis):
            return False
        for u, v in zip(self.basis, other.basis):
            if any(a != b for a, b in zip(u, v)):
                return False
        return True

    def contains(self, vec: tuple[DualNumber, ...]) -> bool:
        rows = [_flatten(v) for v in self.basis]
        probe = _rref(rows + [_flatten(vec)])
        return len(probe) == len(rows)


def _flatten(vec: tuple[DualNumber, ...]) -> list[KElem]:
    out: list[KElem] = []
    for d in vec:
        out.extend((d.a, d.b))
    return out


def _unflatten(row: list[KElem]) -> tuple[DualNumber, ...]:
    return tuple(DualNumber(row[i], row[i + 1]) for i in range(0, len(row), 2))


def _rref(rows: list[list[KElem]]) -> list[list[KElem]]:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r]


def span(ambient: int, vectors, complete: bool) -> EpsSubspace:
    rows = [_flatten(tuple(v)) for v in vectors]
    if not rows:
        return EpsSubspace(ambient, (), complete)
    reduced = _rref(rows)
    return EpsSubspace(ambient, tuple(_unflatten(r) for r in reduced), complete)


# -- lines -----------------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """Projective line K · (a_1, ..., a_n); scaling-equivalent coordinates."""

    coords: tuple[HahnSeries, ...]

    def __post_init__(self):
        if not self.coords:
            raise DomainError("line needs at least one coordinate")

    @property
    def ambient(self) -> int:
        return len(self.coords)

    def canonicalize(self, m: DVModel) -> "Line":
        """Scale so the first nonzero coordinate is 1 where that is exact.

        Leading zeros must be exact zeros.  A non-monomial leading coordinate
        is left in place: the line is projective, every operation here is
        scaling-invariant, and an inexact global rescale would only lose
        information.
        """
        lead = None
        for i, c in enumerate(self.coords):
            if c.is_exactly_zero():
                continue
            if c.is_visibly_zero():
                raise PrecisionError(f"coordinate {i} indistinguishable from 0")
            lead = i
            break
        if lead is None:
            raise DomainError("line has no nonzero coordinate")
        c0 = self.coords[lead]
        if (c0 - one(c0.group)).is_exactly_zero():
            return self
        if not c0.is_monomial():
            return self
        inv = monomial(c0.group, -c0.val(), c0.leading_coeff().inverse())
        coords = [c * inv for c in self.coords]
        return Line(tuple(coords))


@dataclass(frozen=True)
class Window:
    """Search bounds for witness enumeration."""

    exp_bound: int = 2
    use_thetas: bool = True
    max_binomials: int = 400


@dataclass
class SpecializeReport:
    witnesses: list[str] = field(default_factory=list)
    mode: str = "closed-form"
    index_map: list[str] | None = None


def specialize_line(m: DVModel, line: Line, window: Window | None = None):
    """The image subspace of a line, with a report of how it was obtained.

    Returns (EpsSubspace, SpecializeReport).
    """
    line = line.canonicalize(m)
    n = line.ambient
    if n == 2:
        return _specialize2(m, line)
    return _specialize_enumerate(m, line, window or Window())


def _free_module_basis(gen: tuple[DualNumber, DualNumber]):
    eps_gen = tuple(DUAL_EPS * g for g in gen)
    return [gen, eps_gen]


def _specialize2(m: DVModel, line: Line):
    report = SpecializeReport(mode="closed-form")
    a1, a2 = line.coords
    if a1.is_exactly_zero():
        report.witnesses.append("coordinate-line")
        return span(2, [(dual(0), DUAL_ONE), (dual(0), DUAL_EPS)], True), report
    if a2.is_exactly_zero():
        report.witnesses.append("coordinate-line")
        return span(2, [(DUAL_ONE, dual(0)), (DUAL_EPS, dual(0))], True), report
    tc = classify_tame_quotient(m, a2, a1)  # the slope a2/a1
    if tc.kind == "InR":
        w = tc.witness
        report.witnesses.append("graph")
        return span(2, _free_module_basis((DUAL_ONE, w)), True), report
    if tc.kind == "TameViaProbe":
        w = tc.witness
        if tc.probe == "inverse":
            gen = (w, DUAL_ONE)
        else:
            c = 1 if tc.probe == "shift+1" else -1
            gen = (w, w * c + DUAL_ONE)
        report.witnesses.append(f"probe:{tc.probe}")
        return span(2, _free_module_basis(gen), True), report
    report.witnesses.append("wild")
    return span(2, [(DUAL_EPS, dual(0)), (dual(0), DUAL_EPS)], True), report


def _candidate_witnesses(m: DVModel, line: Line, window: Window):
    """Monomials (then binomials) likely to land the line inside R^n."""
    group = m.group
    b = window.exp_bound
    coeffs: list[KElem] = [K_ONE]
    if window.use_thetas:
        coeffs += [KElem.theta(g.index) for g in m.generators]
    base_exps: list = []
    ranges = [range(-b, b + 1)] * group.rank

    def rec(prefix, rest):
        if not rest:
            base_exps.append(group.elem(prefix))
            return
        for v in rest[0]:
            rec(prefix + [v], rest[1:])

    rec([], ranges)
    base_exps.sort(key=lambda g: (sum(abs(c) for c in g.coords), g.coords))
    # shift candidates so each coordinate can be brought to valuation >= 0
    shifts = {group.zero().coords}
    for c in line.coords:
        v = c.val_or_none()
        if v is not None and v is not INFINITY:
            shifts.add((-v).coords)
    monos = []
    seen = set()
    for sh in sorted(shifts):
        for g in base_exps:
            e = g + group.elem(sh)
            for ci, c in enumerate(coeffs):
                key = (e.coords, ci)
                if key not in seen:
                    seen.add(key)
                    monos.append(monomial(group, e, c))
    yield from monos
    count = 0
    for i in range(len(monos)):
        for j in range(i + 1, len(monos)):
            if count >= window.max_binomials:
                return
            s = monos[i] + monos[j]
            if not s.is_visibly_zero():
                count += 1
                yield s


def _specialize_enumerate(m: DVModel, line: Line, window: Window):
    report = SpecializeReport(mode="enumeration")
    n = line.ambient
    vectors: list[tuple[DualNumber, ...]] = []
    current = span(n, [], False)
    for x in _candidate_witnesses(m, line, window):
        try:
            imgs = []
            ok = True
            for c in line.coords:
                y = x * c
                rc = m.classify_ring(y)
                if not (rc.decided() and rc.in_R()):
                    ok = False
                    break
                imgs.append(wres(m, y))
            if not ok:
                continue
        except PrecisionError:
            continue
        vec = tuple(imgs)
        if all(d.is_zero() for d in vec):
            continue
        if current.contains(vec):
            continue
        vectors.append(vec)
        from .parsing import format_series

        report.witnesses.append(format_series(x))
        current = span(n, vectors, False)
        if current.dim == 2:
            return EpsSubspace(n, current.basis, True), report
    return current, report


# -- degeneracy and mutation -------------------------------------------------------


def find_wild(m: DVModel) -> HahnSeries:
    """A wild element: scanned from small monomials, else fabricated by density."""
    group = m.group
    for j in range(1, 3):
        for i in range(-1, -4, -1):
            coords = [0] * group.rank
            coords[0] = j
            coords[-1] = i
            if group.rank == 1:
                continue
            cand = monomial(group, group.elem(coords))
            rc = m.classify_ring(cand)
            if rc.decided() and rc.tag is RingTag.IN_O_NOT_R:
                return cand
    return m.weird_witness(bump(group.zero()))


def degeneracy_subspace(m: DVModel):
    """The common image of wild lines: k*eps, verified on one wild line."""
    x = find_wild(m)
    sub, _ = specialize_line(m, Line((one(m.group), x)))
    expected = span(2, [(DUAL_EPS, dual(0)), (dual(0), DUAL_EPS)], True)
    if sub != expected:
        raise DomainError("wild line did not specialize to the degenerate square")
    return span(1, [(DUAL_EPS,)], True)


def mutate_line(m: DVModel, base: Line, arg: Line, window: Window | None = None):
    """Specialization of the row-major coordinate products arg_i * base_j.

    The index map (i, j) -> i*n + j is recorded in the report so tuple
    positions can be matched against any other ordering convention.
    """
    for name, ln in (("base", base), ("arg", arg)):
        for c in ln.coords:
            if c.is_exactly_zero():
                raise DomainError(f"{name} line has a zero coordinate; mutation degenerates")
    base = base.canonicalize(m)
    arg = arg.canonicalize(m)
    n = base.ambient
    coords = tuple(ai * bj for ai in arg.coords for bj in base.coords)
    sub, report = specialize_line(m, Line(coords), window)
    report.index_map = [
        f"{i * n + j}<-arg[{i}]*base[{j}]" for i in range(arg.ambient) for j in range(n)
    ]
    return sub, report


# -- rational matrix actions ---------------------------------------------------------


def gl2_on_line(mat, line: Line) -> Line:
    """Integer/rational 2x2 matrix acting on a 2-coordinate line."""
    if line.ambient != 2:
        raise DomainError("matrix action defined for 2-coordinate lines")
    (a, b), (c, d) = mat
    x, y = line.coords
    return Line((x.scaled(Fraction(a)) + y.scaled(Fraction(b)), x.scaled(Fraction(c)) + y.scaled(Fraction(d))))


def gl2_on_subspace(mat, sub: EpsSubspace) -> EpsSubspace:
    (a, b), (c, d) = (tuple(as_kelem(v) for v in row) for row in mat)
    vecs = []
    for u, v in sub.basis:
        vecs.append((u * a + v * b, u * c + v * d))
    return span(2, vecs, sub.complete)


def mult_matrix(w: DualNumber):
    """Matrix of multiplication by w on k[eps] in the basis {1, eps}."""
    return [[w.a, K_ZERO], [w.b, w.a]]
