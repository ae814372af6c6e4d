"""Polynomial expression grammar and canonical serialization.

Grammar (UTF-8 text):
    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' UINT)?
    atom    := NUMBER | 'i' | VARIABLE | '(' expr ')' | '-' factor
    NUMBER  := integer | fraction a/b | exact decimal
    VARIABLE:= z1, z2, ..., zN  (aliases: z -> z1, w -> z2)

Implicit multiplication is rejected; '^' takes a nonnegative integer
literal. Decimals are exact (0.25 -> 1/4). Canonical printing uses
descending graded lex with z1 > z2 and coefficients as a/b + c/d*i.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .poly import MultiPoly, grlex_key
from .scalars import GaussianRational


class PolyParseError(ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+\.\d+|\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars_hint: Optional[int]):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.max_var = 0
        self.nvars_hint = nvars_hint

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", pos)
        return self.advance()

    # Parsing produces term lists (exponent-dict fragments) over a ring whose
    # width is fixed only after the whole expression is read, so fragments
    # carry variable indices symbolically.

    def parse(self) -> MultiPoly:
        frag = self.parse_expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected trailing input {val!r}", pos)
        nvars = max(self.max_var, self.nvars_hint or 0, 2)
        out = MultiPoly.zero(nvars)
        for e_sparse, c in frag:
            e = [0] * nvars
            for var, k in e_sparse:
                e[var] += k
            key = tuple(e)
            s = out.terms.get(key, GaussianRational(0)) + c
            if s.is_zero():
                out.terms.pop(key, None)
            else:
                out.terms[key] = s
        return out

    def parse_expr(self):
        frag = self.parse_term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.parse_term()
                if val == "-":
                    rhs = [(e, -c) for e, c in rhs]
                frag = frag + rhs
            else:
                return frag

    def parse_term(self):
        frag = self.parse_factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                rhs = self.parse_factor()
                frag = [
                    (e1 + e2, c1 * c2) for e1, c1 in frag for e2, c2 in rhs
                ]
            elif kind in ("number", "name") or (kind == "op" and val == "("):
                raise PolyParseError("implicit multiplication is not allowed", pos)
            else:
                return frag

    def parse_factor(self):
        base = self.parse_atom()
        kind, val, pos = self.peek()
        if kind == "op" and val in ("^", "**"):
            if val == "**":
                raise PolyParseError("use '^' for powers", pos)
            self.advance()
            kind2, val2, pos2 = self.peek()
            if kind2 != "number" or "." in val2:
                raise PolyParseError("'^' requires a nonnegative integer literal", pos2)
            self.advance()
            k = int(val2)
            # expand (sum of terms)^k by repeated multiplication
            result = [((), GaussianRational(1))]
            for _ in range(k):
                result = [
                    (e1 + e2, c1 * c2) for e1, c1 in result for e2, c2 in base
                ]
            return result
        return base

    def parse_atom(self):
        kind, val, pos = self.advance()
        if kind == "op" and val == "-":
            inner = self.parse_factor()
            return [(e, -c) for e, c in inner]
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if kind == "number":
            value = self._number_value(val, pos)
            # fraction literal a/b
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.advance()
                kind3, val3, pos3 = self.peek()
                if kind3 != "number":
                    raise PolyParseError("fraction denominator must be a number", pos3)
                self.advance()
                den = self._number_value(val3, pos3)
                if den == 0:
                    raise PolyParseError("zero denominator", pos3)
                value = value / den
            return [((), GaussianRational(value))]
        if kind == "name":
            if val == "i":
                return [((), GaussianRational(0, 1))]
            var = self._variable_index(val, pos)
            return [(((var, 1),), GaussianRational(1))]
        raise PolyParseError(f"unexpected token {val!r}", pos)

    def _number_value(self, text: str, pos: int) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise PolyParseError(f"bad numeric literal {text!r}", pos) from None

    def _variable_index(self, name: str, pos: int) -> int:
        if name == "z":
            idx = 1
        elif name == "w":
            idx = 2
        elif name.startswith("z") and name[1:].isdigit():
            idx = int(name[1:])
            if idx == 0:
                raise PolyParseError("variables are numbered from z1", pos)
        else:
            raise PolyParseError(f"unknown symbol {name!r}", pos)
        self.max_var = max(self.max_var, idx)
        return idx - 1


def parse_poly(text: str, nvars: Optional[int] = None) -> MultiPoly:
    """Parse an expression into a MultiPoly with exact coefficients.

    The ring width is the largest variable index seen, with a floor of 2
    (constants and z1-only inputs live in Q(i)[z1,z2]); pass nvars to widen.
    """
    poly = _Parser(text, nvars).parse()
    if nvars is not None:
        if nvars < poly.nvars and any(
            e[k] for e in poly.terms for k in range(nvars, poly.nvars)
        ):
            raise PolyParseError(f"expression uses more than {nvars} variables", 0)
        if nvars > poly.nvars:
            out = MultiPoly.zero(nvars)
            out.terms = {
                e + (0,) * (nvars - poly.nvars): c for e, c in poly.terms.items()
            }
            return out
    return poly


def _format_coefficient(c: GaussianRational, lead_monomial: bool) -> Tuple[str, str]:
    """Return (sign, magnitude-text) for a term coefficient.

    lead_monomial says whether a monomial follows (so 1 can be elided and
    mixed coefficients need parentheses).
    """
    re_, im = c.re, c.im
    if im == 0:
        sign = "-" if re_ < 0 else "+"
        mag = abs(re_)
        if lead_monomial and mag == 1:
            return sign, ""
        return sign, str(mag)
    if re_ == 0:
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        text = "i" if mag == 1 else f"{mag}*i"
        return sign, text
    # mixed: keep the textual form unambiguous under re-parsing
    inner = str(c)
    if lead_monomial:
        return "+", f"({inner})"
    return "+", f"({inner})"


def _format_monomial(e, nvars: int) -> str:
    parts = []
    for k, power in enumerate(e):
        if power == 0:
            continue
        name = f"z{k + 1}"
        parts.append(name if power == 1 else f"{name}^{power}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form: descending graded lex, exact coefficients."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = _format_monomial(e, p.nvars)
        sign, coef = _format_coefficient(c, bool(mono))
        if mono and coef:
            body = f"{coef}*{mono}"
        else:
            body = mono or coef or "1"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
