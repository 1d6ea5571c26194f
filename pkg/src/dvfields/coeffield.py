"""The exact residue field Q(th1, ..., thM) and its dual numbers.

Rational functions are pairs of sparse polynomials over Q with exact
zero-testing: an element is zero iff its numerator normalizes to the zero
polynomial.  Denominators are normalized monic under a fixed graded-lex
monomial order and common monomial content is cancelled; full polynomial
GCD reduction is deliberately skipped, so equality always goes through
cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import zip_longest

from .errors import DomainError, NonUnitError

Monomial = tuple[int, ...]  # exponent vector, trailing zeros trimmed


def _trim(m: tuple[int, ...]) -> Monomial:
    i = len(m)
    while i > 0 and m[i - 1] == 0:
        i -= 1
    return m[:i]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return _trim(tuple(x + y for x, y in zip_longest(a, b, fillvalue=0)))


def _mono_key(m: Monomial):
    # graded lex; padding differences do not matter for the grade,
    # and tuple comparison on trimmed tails is stable enough given equal grade
    return (sum(m), m)


class Poly:
    """Sparse multivariate polynomial over Q; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction]):
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly({(): c} if c else {})

    @staticmethod
    def var(index: int) -> "Poly":
        """The symbol th<index>, 1-based."""
        if index < 1:
            raise DomainError("symbol indices are 1-based")
        mono = _trim((0,) * (index - 1) + (1,))
        return Poly({mono: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Poly(out)

    def scaled(self, c) -> "Poly":
        c = Fraction(c)
        return Poly({m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def leading(self) -> tuple[Monomial, Fraction]:
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def diff(self, index: int) -> "Poly":
        """Partial derivative with respect to th<index> (1-based)."""
        i = index - 1
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i] if i < len(m) else 0
            if e == 0:
                continue
            lowered = list(m)
            lowered[i] = e - 1
            mm = _trim(tuple(lowered))
            out[mm] = out.get(mm, Fraction(0)) + c * e
        return Poly(out)

    def variables(self) -> set[int]:
        """1-based indices of symbols that occur."""
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i + 1)
        return out

    def mono_content(self) -> Monomial:
        """Coordinatewise minimum exponent over all terms."""
        if not self.terms:
            return ()
        width = max(len(m) for m in self.terms)
        mins = [min(m[i] if i < len(m) else 0 for m in self.terms) for i in range(width)]
        return _trim(tuple(mins))

    def div_mono(self, mono: Monomial) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            shifted = tuple(x - y for x, y in zip_longest(m, mono, fillvalue=0))
            out[_trim(shifted)] = c
        return Poly(out)

    def as_rational(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None


ONE_POLY = Poly.const(1)


class KElem:
    """Element of Q(th1, ..., thM): a normalized numerator/denominator pair."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.is_zero():
            num, den = Poly.const(0), ONE_POLY
        else:
            g = _mono_mul(num.mono_content(), ())
            h = den.mono_content()
            common = _trim(tuple(min(x, y) for x, y in zip_longest(g, h, fillvalue=0)))
            if any(common):
                num, den = num.div_mono(common), den.div_mono(common)
            _, lead = den.leading()
            if lead != 1:
                inv = 1 / lead
                num, den = num.scaled(inv), den.scaled(inv)
        self.num = num
        self.den = den

    @staticmethod
    def from_rational(c) -> "KElem":
        return KElem(Poly.const(c), ONE_POLY)

    @staticmethod
    def theta(index: int) -> "KElem":
        return KElem(Poly.var(index), ONE_POLY)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __eq__(self, other) -> bool:
        other = as_kelem(other)
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        raise TypeError("KElem is not hashable (equality is cross-multiplicative)")

    def __add__(self, other):
        other = as_kelem(other)
        # identical denominators are the norm in series arithmetic; adding
        # them naively would square the denominator every merge
        if self.den == other.den:
            return KElem(self.num + other.num, self.den)
        return KElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return KElem(-self.num, self.den)

    def __sub__(self, other):
        return self + (-as_kelem(other))

    def __rsub__(self, other):
        return as_kelem(other) + (-self)

    def __mul__(self, other):
        other = as_kelem(other)
        return KElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "KElem":
        if self.is_zero():
            raise NonUnitError("inverse of zero")
        return KElem(self.den, self.num)

    def __truediv__(self, other):
        return self * as_kelem(other).inverse()

    def __rtruediv__(self, other):
        return as_kelem(other) * self.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return KElem.from_rational(1)
        if n < 0:
            return self.inverse() ** (-n)
        return KElem(self.num**n, self.den**n)

    def diff(self, index: int) -> "KElem":
        """d/d th<index> by the quotient rule."""
        return KElem(
            self.num.diff(index) * self.den - self.num * self.den.diff(index),
            self.den * self.den,
        )

    def variables(self) -> set[int]:
        return self.num.variables() | self.den.variables()

    def as_rational(self) -> Fraction | None:
        """The value as a plain rational, or None if symbols remain."""
        d = self.den.as_rational()
        n = self.num.as_rational()
        if d is None or n is None:
            return None
        return n / d

    def __repr__(self):
        from .parsing import format_kelem

        return format_kelem(self)


def as_kelem(x) -> KElem:
    if isinstance(x, KElem):
        return x
    if isinstance(x, (int, Fraction)):
        return KElem.from_rational(x)
    raise DomainError(f"cannot coerce {type(x).__name__} into the coefficient field")


K_ZERO = KElem.from_rational(0)
K_ONE = KElem.from_rational(1)


@dataclass(frozen=True)
class DualNumber:
    """a + b*eps with eps^2 = 0, over the coefficient field."""

    a: KElem
    b: KElem

    def __add__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DualNumber":
        return DualNumber(-self.a, -self.b)

    def __mul__(self, other) -> "DualNumber":
        if isinstance(other, DualNumber):
            return DualNumber(self.a * other.a, self.a * other.b + self.b * other.a)
        k = as_kelem(other)
        return DualNumber(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, DualNumber) and self.a == other.a and self.b == other.b

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_unit(self) -> bool:
        return not self.a.is_zero()

    def in_k(self) -> bool:
        """Whether the eps part vanishes."""
        return self.b.is_zero()

    def __repr__(self):
        from .parsing import format_dual

        return format_dual(self)


DUAL_ZERO = DualNumber(K_ZERO, K_ZERO)
DUAL_ONE = DualNumber(K_ONE, K_ZERO)
DUAL_EPS = DualNumber(K_ZERO, K_ONE)


def dual(a, b=0) -> DualNumber:
    return DualNumber(as_kelem(a), as_kelem(b))


def dual_invert(x: DualNumber) -> DualNumber:
    """Inverse of a + b*eps; requires a != 0, and (a+be)^-1 = a^-1 - a^-2 b eps."""
    if x.a.is_zero():
        raise NonUnitError("dual number with zero constant part has no inverse")
    ainv = x.a.inverse()
    return DualNumber(ainv, -(ainv * ainv) * x.b)


def repeated_eigenvalue_check(m) -> bool:
    """Whether a 2x2 matrix over the coefficient field has trace^2 = 4 det."""
    (a, b), (c, d) = m
    a, b, c, d = as_kelem(a), as_kelem(b), as_kelem(c), as_kelem(d)
    tr = a + d
    return tr * tr == 4 * (a * d - b * c)
