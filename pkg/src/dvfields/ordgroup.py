"""Lexicographically ordered value groups of finite rank.

A group descriptor fixes a rank and a per-coordinate kind (integers or
rationals); elements are coordinate tuples compared lexicographically with
coordinate 0 most significant.  Convex subgroups are the coordinate tails,
and coarsening quotients keep a most-significant prefix.

The divisibility predicate `is_z_less` holds exactly when every archimedean
rung of the group is non-discrete; for these descriptors that means every
coordinate kind is rational.  `strict_between` is the constructive companion:
it produces a group element strictly inside a scaled open interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, StructuralError, UnsupportedGroupError

INTEGERS = "Z"
RATIONALS = "Q"


@dataclass(frozen=True)
class ValueGroupDesc:
    """Descriptor of a lex product of copies of Z and Q.

    kinds[0] is the most significant coordinate.  Rank 0 only arises as the
    degenerate quotient of a full coarsening and denotes the trivial group.
    """

    kinds: tuple[str, ...]

    def __post_init__(self):
        for k in self.kinds:
            if k not in (INTEGERS, RATIONALS):
                raise DomainError(f"unknown coordinate kind {k!r}")

    @property
    def rank(self) -> int:
        return len(self.kinds)

    def zero(self) -> "GroupElem":
        return GroupElem((Fraction(0),) * self.rank, self)

    def unit(self, index: int) -> "GroupElem":
        """Basis element with 1 in the given coordinate."""
        coords = [Fraction(0)] * self.rank
        coords[index] = Fraction(1)
        return GroupElem(tuple(coords), self)

    def elem(self, coords: Iterable) -> "GroupElem":
        return GroupElem(tuple(Fraction(c) for c in coords), self)


def _check_same_group(a: "GroupElem", b: "GroupElem") -> None:
    if a.group != b.group:
        raise StructuralError("group descriptor mismatch")


@dataclass(frozen=True)
class GroupElem:
    """Element of a lex-ordered value group; immutable."""

    coords: tuple[Fraction, ...]
    group: ValueGroupDesc

    def __post_init__(self):
        if len(self.coords) != self.group.rank:
            raise StructuralError("coordinate count does not match descriptor rank")
        for c, kind in zip(self.coords, self.group.kinds):
            if kind == INTEGERS and c.denominator != 1:
                raise DomainError(f"coordinate {c} not an integer")

    def __add__(self, other: "GroupElem") -> "GroupElem":
        _check_same_group(self, other)
        return GroupElem(tuple(a + b for a, b in zip(self.coords, other.coords)), self.group)

    def __sub__(self, other: "GroupElem") -> "GroupElem":
        _check_same_group(self, other)
        return GroupElem(tuple(a - b for a, b in zip(self.coords, other.coords)), self.group)

    def __neg__(self) -> "GroupElem":
        return GroupElem(tuple(-a for a in self.coords), self.group)

    def scale(self, r) -> "GroupElem":
        """Scalar multiple n·g for an integer n (stays in the group)."""
        r = Fraction(r)
        if r.denominator != 1:
            raise DomainError("use hull_scale for non-integer multiples")
        return GroupElem(tuple(r * a for a in self.coords), self.group)

    def hull_scale(self, r) -> tuple[Fraction, ...]:
        """Scalar multiple in the divisible hull, as a bare tuple."""
        r = Fraction(r)
        return tuple(r * a for a in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def _cmp_key(self):
        return self.coords

    def __lt__(self, other):
        if other is INFINITY:
            return True
        _check_same_group(self, other)
        return self.coords < other.coords

    def __le__(self, other):
        if other is INFINITY:
            return True
        _check_same_group(self, other)
        return self.coords <= other.coords

    def __gt__(self, other):
        if other is INFINITY:
            return False
        _check_same_group(self, other)
        return self.coords > other.coords

    def __ge__(self, other):
        if other is INFINITY:
            return False
        _check_same_group(self, other)
        return self.coords >= other.coords

    def __repr__(self):
        return "<" + ";".join(str(c) for c in self.coords) + ">"


class _Infinity:
    """The +inf sentinel used for valuations and precision caps."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INFINITY

    def __gt__(self, other):
        return other is not INFINITY

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    def __radd__(self, other):
        return self

    def __neg__(self):
        raise DomainError("cannot negate +inf")

    def __repr__(self):
        return "+inf"


INFINITY = _Infinity()

ValOrInf = Union[GroupElem, _Infinity]


def val_min(a: ValOrInf, b: ValOrInf) -> ValOrInf:
    if a is INFINITY:
        return b
    if b is INFINITY:
        return a
    return a if a <= b else b


def val_add(a: ValOrInf, b: ValOrInf) -> ValOrInf:
    if a is INFINITY or b is INFINITY:
        return INFINITY
    return a + b


def compare(a: GroupElem, b: GroupElem) -> int:
    """Lex comparison: -1, 0 or 1."""
    _check_same_group(a, b)
    if a.coords < b.coords:
        return -1
    if a.coords > b.coords:
        return 1
    return 0


@dataclass(frozen=True)
class ConvexSubgroup:
    """Convex subgroup of elements whose first cut_index coordinates vanish."""

    cut_index: int
    group: ValueGroupDesc

    def __post_init__(self):
        if not 0 <= self.cut_index <= self.group.rank:
            raise DomainError("cut index out of range")

    def contains(self, g: GroupElem) -> bool:
        if g.group != self.group:
            raise StructuralError("element not under this subgroup's descriptor")
        return all(c == 0 for c in g.coords[: self.cut_index])

    def quotient_group(self) -> ValueGroupDesc:
        return ValueGroupDesc(self.group.kinds[: self.cut_index])


def drop_minor(group: ValueGroupDesc) -> ConvexSubgroup:
    """The subgroup spanned by the least significant coordinate."""
    return ConvexSubgroup(group.rank - 1, group)


def coarsen(a: ValOrInf, delta: ConvexSubgroup) -> ValOrInf:
    """Image of a in the quotient by the convex subgroup (prefix projection)."""
    if a is INFINITY:
        return INFINITY
    if a.group != delta.group:
        raise StructuralError("subgroup belongs to a different descriptor")
    return GroupElem(a.coords[: delta.cut_index], delta.quotient_group())


def is_z_less(group: ValueGroupDesc) -> bool:
    """Whether every positive element admits b with p·a < b < q·a for p < q.

    For lex products of Z and Q this holds iff every coordinate is rational:
    an integer coordinate gives a discrete archimedean rung witnessed by its
    basis element.
    """
    return all(k == RATIONALS for k in group.kinds)


def strict_between(a: GroupElem, p, q) -> GroupElem:
    """A group element b with p·a < b < q·a, for 0 <= p < q rational.

    Requires a divisible (Z-less) descriptor and a > 0; the midpoint of the
    hull interval then always lies in the group.
    """
    p, q = Fraction(p), Fraction(q)
    if not is_z_less(a.group):
        raise UnsupportedGroupError("descriptor has an integer coordinate")
    if not a > a.group.zero():
        raise DomainError("strict_between needs a > 0")
    if not (0 <= p < q):
        raise DomainError("need 0 <= p < q")
    mid = (p + q) / 2
    b = GroupElem(a.hull_scale(mid), a.group)
    assert a.hull_scale(p) < b.coords < a.hull_scale(q)
    return b


def bump(g: GroupElem) -> GroupElem:
    """g plus one unit in the least significant coordinate."""
    return g + g.group.unit(g.group.rank - 1)


def bump_major(g: GroupElem) -> GroupElem:
    """g plus one unit in the most significant coordinate."""
    return g + g.group.unit(0)


ZZW = ValueGroupDesc((INTEGERS, INTEGERS))
"""Rank-2 integer lex group; exponents j·(major) + i·(minor)."""

QQ1 = ValueGroupDesc((RATIONALS,))
"""Rank-1 divisible group."""
