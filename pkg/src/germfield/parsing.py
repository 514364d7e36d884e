"""Text grammar for polynomials, vector fields, one-forms and ratios.

Polynomials are sums of terms like `3/2*x^2*y`, `i*x`, `-y^3`; variables are
x, y for n = 2 and x, y, z for n = 3; `i` is the imaginary unit; whitespace
is insignificant and parentheses may group a polynomial as a factor.  Vector
fields are comma-separated component lists.  One-forms attach dx / dy / dz to
each term; ratios are `P / Q` split at a top-level slash.

Printing is the exact inverse: terms in ascending graded-lex order with x <
y < z, mixed coefficients a+bi emitted as two grammar-conformant terms, so
emit-then-parse is the identity.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .gaussian import GaussianRational
from .series import PolySeries, VAR_NAMES
from .fields import OneFormJet, VectorFieldJet


class ParseError(Exception):
    """Syntax error with the position and the offending token."""

    def __init__(self, message: str, text: str, position: int):
        self.position = position
        line = text.count("\n", 0, position) + 1
        col = position - (text.rfind("\n", 0, position) + 1) + 1
        snippet = text[position : position + 10] or "<end>"
        super().__init__(f"{message} at line {line}, column {col}: {snippet!r}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<diff>d[xyz])|(?P<name>[ixyz])|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError("unexpected character", text, len(text) - len(stripped))
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.text = text
        self.dim = dim
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def expect_end(self):
        if self.pos != len(self.tokens):
            self.error("trailing input")

    # polynomial := ['+'|'-'] term (('+'|'-') term)*
    def polynomial(self, stop_at_diff=False) -> PolySeries:
        result = PolySeries.zero(self.dim)
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        while True:
            result = result + self.term(stop_at_diff) * sign
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                sign = -1 if val == "-" else 1
                continue
            return result

    # term := factor ('*'? factor)*  with '/' only after a number factor
    def term(self, stop_at_diff=False) -> PolySeries:
        result = self.factor(stop_at_diff)
        if result is None:
            self.error("expected a term")
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                ahead = (
                    self.tokens[self.pos + 1][0]
                    if self.pos + 1 < len(self.tokens)
                    else None
                )
                if stop_at_diff and ahead == "diff":
                    break  # the star binds a differential, not a factor
                self.next()
                nxt = self.factor(stop_at_diff)
                if nxt is None:
                    self.error("expected a factor after '*'")
                result = result * nxt
                continue
            # implicit product, e.g. "2x" is not in the grammar but "(x)(y)" is
            if kind in ("number", "name") or (kind == "op" and val == "("):
                if stop_at_diff is False and kind is not None:
                    nxt = self.factor(stop_at_diff)
                    if nxt is None:
                        break
                    result = result * nxt
                    continue
            break
        return result

    # factor := rational | 'i' | variable ['^' number] | '(' polynomial ')'
    def factor(self, stop_at_diff=False) -> PolySeries | None:
        kind, val, start = self.peek()
        if kind == "number":
            self.next()
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                save = self.pos
                self.next()
                kind3, val3, _ = self.peek()
                if kind3 == "number":
                    self.next()
                    if int(val3) == 0:
                        raise ParseError("zero denominator", self.text, start)
                    return PolySeries.constant(self.dim, Fraction(num, int(val3)))
                self.pos = save  # the slash belongs to a ratio split
            return PolySeries.constant(self.dim, num)
        if kind == "name" and val == "i":
            self.next()
            return PolySeries.constant(self.dim, GaussianRational(0, 1))
        if kind == "name":
            index = VAR_NAMES.index(val)
            if index >= self.dim:
                raise ParseError(
                    f"variable {val!r} is not available in dimension {self.dim}",
                    self.text,
                    start,
                )
            self.next()
            power = 1
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "^":
                self.next()
                kind3, val3, _ = self.peek()
                if kind3 != "number":
                    self.error("expected an integer exponent")
                self.next()
                power = int(val3)
            return PolySeries.variable(self.dim, index) ** power
        if kind == "op" and val == "(":
            self.next()
            inner = self.polynomial()
            kind2, val2, _ = self.peek()
            if not (kind2 == "op" and val2 == ")"):
                self.error("expected ')'")
            self.next()
            return inner
        return None


def parse_poly(text: str, dim: int = 2) -> PolySeries:
    """Parse an exact polynomial in the shared grammar."""
    parser = _Parser(text, dim)
    result = parser.polynomial()
    parser.expect_end()
    return result


def parse_field(text: str, dim: int | None = None) -> VectorFieldJet:
    """Parse a comma-separated component list into a polynomial field.

    The dimension defaults to the number of components.
    """
    if dim is None:
        dim = text.count(",") + 1
    parser = _Parser(text, dim)
    comps = [parser.polynomial()]
    while True:
        kind, val, _ = parser.peek()
        if kind == "op" and val == ",":
            parser.next()
            comps.append(parser.polynomial())
            continue
        break
    parser.expect_end()
    if len(comps) != dim:
        raise ParseError(
            f"expected {dim} components, got {len(comps)}", text, len(text)
        )
    return VectorFieldJet(comps)


def parse_one_form(text: str, dim: int = 2) -> OneFormJet:
    """Parse `P dx + Q dy (+ R dz)`; each additive term carries a differential."""
    parser = _Parser(text, dim)
    coeffs = [PolySeries.zero(dim) for _ in range(dim)]
    sign = 1
    kind, val, _ = parser.peek()
    if kind == "op" and val in "+-":
        parser.next()
        sign = -1 if val == "-" else 1
    while True:
        term = parser.term(stop_at_diff=True)
        kind, val, start = parser.peek()
        if kind == "op" and val == "*":
            parser.next()
            kind, val, start = parser.peek()
        if kind != "diff":
            raise ParseError("expected dx, dy or dz after the term", text, start)
        parser.next()
        index = VAR_NAMES.index(val[1])
        if index >= dim:
            raise ParseError(f"{val} needs a higher dimension", text, start)
        coeffs[index] = coeffs[index] + term * sign
        kind, val, _ = parser.peek()
        if kind == "op" and val in "+-":
            parser.next()
            sign = -1 if val == "-" else 1
            continue
        break
    parser.expect_end()
    return OneFormJet(coeffs)


def parse_ratio(text: str, dim: int = 2):
    """Parse `P / Q` splitting at a top-level slash; both sides polynomials.

    Ambiguous inputs (several viable splits) are rejected; parenthesize the
    numerator and denominator to disambiguate.
    """
    from .integrability import MeromorphicRatio

    depth = 0
    candidates = []
    for idx, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            candidates.append(idx)
    parses = []
    for idx in candidates:
        try:
            num = parse_poly(text[:idx], dim)
            den = parse_poly(text[idx + 1 :], dim)
        except ParseError:
            continue
        if den.is_zero():
            continue
        parses.append((idx, num, den))
    if not parses:
        raise ParseError("expected a ratio P / Q", text, 0)
    if len(parses) > 1:
        raise ParseError(
            "ambiguous ratio; parenthesize numerator and denominator",
            text,
            parses[1][0],
        )
    _, num, den = parses[0]
    return MeromorphicRatio(num, den)


# -- printing -----------------------------------------------------------------


def _ordered_scalar_terms(f: PolySeries):
    """Expand each monomial into up to two printable (rational, imag?) parts."""
    for e, c in f.sorted_terms():
        if c.re != 0:
            yield e, c.re, False
        if c.im != 0:
            yield e, c.im, True


def _format_term(e, rational: Fraction, imaginary: bool, names) -> str:
    factors = []
    mag = abs(rational)
    if mag != 1 or (not imaginary and not any(e)):
        factors.append(str(mag))
    if imaginary:
        factors.append("i")
    for var, k in zip(names, e):
        if k == 1:
            factors.append(var)
        elif k > 1:
            factors.append(f"{var}^{k}")
    return "*".join(factors)


def poly_to_text(f: PolySeries, names=VAR_NAMES) -> str:
    """Render in ascending graded-lex order; parses back to the same value.

    names overrides the displayed variable names (blow-up charts print the
    slope coordinate as t); only the default names round-trip.
    """
    parts = list(_ordered_scalar_terms(f))
    if not parts:
        return "0"
    out = []
    for idx, (e, rational, imaginary) in enumerate(parts):
        term = _format_term(e, rational, imaginary, names)
        if idx == 0:
            out.append(term if rational > 0 else f"-{term}")
        else:
            out.append(f"+ {term}" if rational > 0 else f"- {term}")
    return " ".join(out)


def field_to_text(x: VectorFieldJet, names=VAR_NAMES) -> str:
    return ", ".join(poly_to_text(c, names) for c in x.comps)


def one_form_to_text(omega: OneFormJet) -> str:
    parts = []
    for i, c in enumerate(omega.coeffs):
        if c.is_zero():
            continue
        parts.append(f"({poly_to_text(c)}) d{VAR_NAMES[i]}")
    return " + ".join(parts) if parts else "0 dx"


def ratio_to_text(ratio) -> str:
    return f"({poly_to_text(ratio.numerator)}) / ({poly_to_text(ratio.denominator)})"


# -- structured (JSON-ready) serialization ------------------------------------


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def gq_to_json(c: GaussianRational) -> list[str]:
    return [fraction_str(c.re), fraction_str(c.im)]


def poly_to_json(f: PolySeries) -> list:
    return [
        [fraction_str(c.re), fraction_str(c.im), list(e)]
        for e, c in f.sorted_terms()
    ]


def field_to_json(x: VectorFieldJet) -> list:
    return [poly_to_json(c) for c in x.comps]


def one_form_to_json(omega: OneFormJet) -> list:
    return [poly_to_json(c) for c in omega.coeffs]
