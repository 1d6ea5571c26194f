"""Text forms: series grammar, coefficient expressions, group elements.

Series grammar:

    series := sterm (('+'|'-') sterm)* ('+' 'O(' mono ')')?
    sterm  := coeff ('*' mono)? | mono
    mono   := 't^' exp
    exp    := rational | '[' rational (';' rational)* ']'
    coeff  := multiplicative coefficient-field expression; full infix
              (+ - * / ^, symbols th1, th2, ...) inside parentheses

Top-level '+'/'-' separate series terms; additive coefficient expressions
must be parenthesized.  Printing emits the same grammar canonically
(ascending exponents, rank-1 exponents as bare rationals).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeffield import DualNumber, KElem, Poly, _mono_key
from .errors import ParseError
from .hahn import HahnSeries
from .ordgroup import INFINITY, GroupElem, ValueGroupDesc

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<obig>O\()
  | (?P<mono>t\^)
  | (?P<sym>th[0-9]+)
  | (?P<int>[0-9]+)
  | (?P<op>[-+*/^()\[\];,])
    """,
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            if kind != "ws":
                self.toks.append((kind, m.group(), pos))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text!r}", pos)

    def at_end(self) -> bool:
        return self.i >= len(self.toks)


# -- group elements -----------------------------------------------------------


def parse_rational(tokens: _Tokens) -> Fraction:
    sign = 1
    kind, text, pos = tokens.peek()
    if text in ("-", "+"):
        tokens.next()
        sign = -1 if text == "-" else 1
        kind, text, pos = tokens.peek()
    if kind != "int":
        raise ParseError("expected a number", pos)
    tokens.next()
    num = int(text)
    den = 1
    k2, t2, _ = tokens.peek()
    if t2 == "/":
        save = tokens.i
        tokens.next()
        k3, t3, _ = tokens.peek()
        if k3 == "int":
            tokens.next()
            den = int(t3)
        else:
            tokens.i = save
    return Fraction(sign * num, den)


def parse_exponent(tokens: _Tokens, group: ValueGroupDesc) -> GroupElem:
    kind, text, pos = tokens.peek()
    if text == "[":
        tokens.next()
        coords = [parse_rational(tokens)]
        while True:
            k, t, p = tokens.next()
            if t == "]":
                break
            if t != ";":
                raise ParseError("expected ';' or ']' in exponent", p)
            coords.append(parse_rational(tokens))
        if len(coords) != group.rank:
            raise ParseError(f"exponent rank {len(coords)} != group rank {group.rank}", pos)
        return group.elem(coords)
    if group.rank != 1:
        raise ParseError("bare rational exponent needs a rank-1 group", pos)
    return group.elem([parse_rational(tokens)])


def parse_group_elem(text: str, group: ValueGroupDesc) -> GroupElem:
    tokens = _Tokens(text)
    g = parse_exponent(tokens, group)
    if not tokens.at_end():
        raise ParseError("trailing input after group element", tokens.peek()[2])
    return g


def format_group_elem(g: GroupElem) -> str:
    if g.group.rank == 1:
        return str(g.coords[0])
    return "[" + ";".join(str(c) for c in g.coords) + "]"


# -- coefficient field --------------------------------------------------------


def _parse_k_expr(tokens: _Tokens) -> KElem:
    out = _parse_k_term(tokens)
    while True:
        _, text, _ = tokens.peek()
        if text == "+":
            tokens.next()
            out = out + _parse_k_term(tokens)
        elif text == "-":
            tokens.next()
            out = out - _parse_k_term(tokens)
        else:
            return out


def _parse_k_term(tokens: _Tokens) -> KElem:
    out = _parse_k_factor(tokens)
    while True:
        _, text, _ = tokens.peek()
        if text == "*":
            # a '*' directly before a monomial belongs to the series term
            nxt = tokens.toks[tokens.i + 1] if tokens.i + 1 < len(tokens.toks) else (None, "", 0)
            if nxt[0] == "mono":
                return out
            tokens.next()
            out = out * _parse_k_factor(tokens)
        elif text == "/":
            tokens.next()
            out = out / _parse_k_factor(tokens)
        else:
            return out


def _parse_k_factor(tokens: _Tokens) -> KElem:
    out = _parse_k_atom(tokens)
    _, text, _ = tokens.peek()
    if text == "^":
        tokens.next()
        sign = 1
        _, t2, p2 = tokens.peek()
        if t2 == "-":
            tokens.next()
            sign = -1
        k3, t3, p3 = tokens.next()
        if k3 != "int":
            raise ParseError("expected an integer power", p3)
        out = out ** (sign * int(t3))
    return out


def _parse_k_atom(tokens: _Tokens) -> KElem:
    kind, text, pos = tokens.next()
    if text == "(":
        inner = _parse_k_expr(tokens)
        tokens.expect(")")
        return inner
    if text == "-":
        return -_parse_k_atom(tokens)
    if kind == "sym":
        return KElem.theta(int(text[2:]))
    if kind == "int":
        return KElem.from_rational(int(text))
    raise ParseError(f"unexpected token {text!r} in coefficient", pos)


def parse_kelem(text: str) -> KElem:
    tokens = _Tokens(text)
    out = _parse_k_expr(tokens)
    if not tokens.at_end():
        raise ParseError("trailing input after coefficient", tokens.peek()[2])
    return out


def _format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono in sorted(p.terms, key=_mono_key, reverse=True):
        c = p.terms[mono]
        factors = [f"th{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(mono) if e]
        body = "*".join(factors)
        if not body:
            parts.append((c, str(abs(c))))
            continue
        if abs(c) == 1:
            parts.append((c, body))
        else:
            parts.append((c, f"{abs(c)}*{body}"))
    out = ""
    for i, (c, body) in enumerate(parts):
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _poly_is_simple(p: Poly) -> bool:
    return len(p.terms) <= 1


def format_kelem(k: KElem) -> str:
    if k.den.as_rational() == 1:
        return _format_poly(k.num)
    num = _format_poly(k.num)
    den = _format_poly(k.den)
    if not _poly_is_simple(k.num):
        num = f"({num})"
    if not _poly_is_simple(k.den):
        den = f"({den})"
    return f"{num}/{den}"


def _kelem_needs_parens(k: KElem) -> bool:
    s = format_kelem(k)
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            return True
    return False


def format_dual(d: DualNumber) -> str:
    a = format_kelem(d.a)
    b = format_kelem(d.b)
    if _kelem_needs_parens(d.a):
        a = f"({a})"
    if _kelem_needs_parens(d.b):
        b = f"({b})"
    return f"{a} + {b}*eps"


# -- series -------------------------------------------------------------------


def parse_series(text: str, group: ValueGroupDesc) -> HahnSeries:
    tokens = _Tokens(text)
    items: list[tuple[GroupElem, KElem]] = []
    precision = INFINITY
    sign = 1
    _, t0, _ = tokens.peek()
    if t0 in ("+", "-"):
        tokens.next()
        sign = -1 if t0 == "-" else 1
    while True:
        kind, text_, pos = tokens.peek()
        if kind == "obig":
            tokens.next()
            tokens.expect("t^")
            precision = parse_exponent(tokens, group)
            tokens.expect(")")
            if not tokens.at_end():
                raise ParseError("input continues after the O(...) cap", tokens.peek()[2])
            break
        g, c = _parse_sterm(tokens, group)
        items.append((g, c if sign == 1 else -c))
        if tokens.at_end():
            break
        _, t, p = tokens.next()
        if t == "+":
            sign = 1
        elif t == "-":
            sign = -1
        else:
            raise ParseError(f"expected '+' or '-' between terms, found {t!r}", p)
    return HahnSeries.make(group, items, precision)


def _parse_sterm(tokens: _Tokens, group: ValueGroupDesc):
    kind, text, pos = tokens.peek()
    if kind == "mono":
        tokens.next()
        g = parse_exponent(tokens, group)
        return g, KElem.from_rational(1)
    coeff = _parse_k_term(tokens)
    _, t, _ = tokens.peek()
    if t == "*":
        save = tokens.i
        tokens.next()
        k2, _, _ = tokens.peek()
        if k2 == "mono":
            tokens.next()
            g = parse_exponent(tokens, group)
            return g, coeff
        tokens.i = save  # '*' belonged to the coefficient; should not happen
    return group.zero(), coeff


def format_series(x: HahnSeries) -> str:
    parts = []  # (sign, rendered term without sign)
    zero_e = x.group.zero()
    for g, c in x.terms:
        sign = "+"
        cstr = format_kelem(c)
        if cstr.startswith("-"):
            neg = format_kelem(-c)
            if not neg.startswith("-"):
                sign, c, cstr = "-", -c, neg
        if _kelem_needs_parens(c):
            cstr = f"({cstr})"
        if g.coords == zero_e.coords:
            parts.append((sign, cstr))
        elif c.is_one():
            parts.append((sign, f"t^{format_group_elem(g)}"))
        else:
            parts.append((sign, f"{cstr}*t^{format_group_elem(g)}"))
    if not parts and x.precision is INFINITY:
        return "0"
    body = ""
    for i, (sign, p) in enumerate(parts):
        if i == 0:
            body = ("-" if sign == "-" else "") + p
        else:
            body += (" - " if sign == "-" else " + ") + p
    if x.precision is not INFINITY:
        cap = f"O(t^{format_group_elem(x.precision)})"
        body = f"{body} + {cap}" if body else cap
    return body
