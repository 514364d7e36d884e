"""Sparse truncated multivariate power series over Q(i).

A PolySeries stores a map from exponent tuples to nonzero GaussianRational
coefficients, e.g. (2, 1) -> 3/2 for (3/2)*x^2*y.  Two flavours coexist:

  * total polynomials (trunc is None): every coefficient is known exactly;
  * truncated jets (trunc = N): terms of total degree > N are unknown and
    never stored.  A jet is honest about what it does not know -- order
    queries on a jet with no terms report a lower bound, not zero.

Truncation propagates conservatively: a product of jets known mod N and M is
claimed only mod min(N, M).  Monomials are ordered graded-lexicographically
with x < y < z; that order fixes leading terms for division and the printing
order everywhere downstream.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .gaussian import ONE, ZERO, GaussianRational

Exponent = tuple[int, ...]

VAR_NAMES = ("x", "y", "z")


class GermError(Exception):
    """Base class for contract violations in the engine."""


class DimensionMismatchError(GermError):
    pass


class TruncationError(GermError):
    """An operation required an exact (total) polynomial."""


class TermLimitError(GermError):
    """The GERM_MAX_TERMS safety cap was exceeded."""


def _term_cap() -> int:
    return int(os.environ.get("GERM_MAX_TERMS", "1000000"))


def monomial_key(e: Exponent) -> tuple[int, tuple[int, ...]]:
    """Graded-lex key with x < y < z; larger key = later in print order."""
    return (sum(e), tuple(reversed(e)))


def _coerce_scalar(c) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    raise TypeError(f"cannot use {type(c).__name__} as a Q(i) scalar")


class Weight(tuple):
    """A positive integer weight vector (p_1, ..., p_n) with gcd 1."""

    def __new__(cls, entries):
        entries = tuple(int(p) for p in entries)
        if not entries or any(p < 1 for p in entries):
            raise ValueError("weights must be positive integers")
        if math.gcd(*entries) != 1:
            raise ValueError("weight entries must have gcd 1")
        return super().__new__(cls, entries)

    def degree_of(self, e: Exponent) -> int:
        return sum(p * k for p, k in zip(self, e))


class PolySeries:
    """A sparse polynomial or truncated power series over Q(i)."""

    __slots__ = ("dim", "trunc", "terms")

    def __init__(self, dim: int, terms=None, trunc: int | None = None):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        if trunc is not None and trunc < 0:
            raise ValueError("truncation degree must be >= 0")
        clean: dict[Exponent, GaussianRational] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != dim or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e} for dimension {dim}")
            c = _coerce_scalar(c)
            if c.is_zero():
                continue
            if trunc is not None and sum(e) > trunc:
                continue
            clean[e] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolySeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, trunc: int | None = None) -> "PolySeries":
        return cls(dim, {}, trunc)

    @classmethod
    def constant(cls, dim: int, c, trunc: int | None = None) -> "PolySeries":
        return cls(dim, {(0,) * dim: _coerce_scalar(c)}, trunc)

    @classmethod
    def variable(cls, dim: int, index: int, trunc: int | None = None) -> "PolySeries":
        if not 0 <= index < dim:
            raise ValueError(f"variable index {index} out of range for dim {dim}")
        e = tuple(1 if j == index else 0 for j in range(dim))
        return cls(dim, {e: ONE}, trunc)

    @classmethod
    def monomial(cls, dim: int, e: Exponent, c=1, trunc: int | None = None) -> "PolySeries":
        return cls(dim, {tuple(e): _coerce_scalar(c)}, trunc)

    # -- basic queries ------------------------------------------------------

    @property
    def is_total(self) -> bool:
        return self.trunc is None

    def is_zero(self) -> bool:
        """No stored terms.  For a jet this means 'zero so far', not zero germ."""
        return not self.terms

    def coefficient(self, e: Exponent) -> GaussianRational:
        return self.terms.get(tuple(e), ZERO)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.dim, ZERO)

    def total_degree(self) -> int:
        """Maximal total degree of a stored term (zero polynomial -> 0)."""
        return max((sum(e) for e in self.terms), default=0)

    def order(self, weight: Weight | None = None) -> int | None:
        """Least (weighted) total degree of a nonzero term; None if no term.

        None means 'order >= trunc + 1' for a jet and 'zero germ' for a total
        polynomial; callers must not treat it as a number.
        """
        if not self.terms:
            return None
        if weight is None:
            return min(sum(e) for e in self.terms)
        return min(weight.degree_of(e) for e in self.terms)

    def leading_term(self) -> tuple[Exponent, GaussianRational]:
        """Greatest term in graded-lex order (requires a nonzero value)."""
        e = max(self.terms, key=monomial_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[Exponent, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    # -- ring operations ----------------------------------------------------

    def _join_trunc(self, other: "PolySeries") -> int | None:
        if self.trunc is None:
            return other.trunc
        if other.trunc is None:
            return self.trunc
        return min(self.trunc, other.trunc)

    def _check_dim(self, other: "PolySeries"):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other) -> "PolySeries":
        other = self._coerce(other)
        self._check_dim(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return PolySeries(self.dim, out, self._join_trunc(other))

    __radd__ = __add__

    def __neg__(self) -> "PolySeries":
        return PolySeries(self.dim, {e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other) -> "PolySeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolySeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolySeries":
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = _coerce_scalar(other)
            if c.is_zero():
                return PolySeries.zero(self.dim, self.trunc)
            return PolySeries(
                self.dim, {e: v * c for e, v in self.terms.items()}, self.trunc
            )
        if not isinstance(other, PolySeries):
            return NotImplemented
        other = self._coerce(other)
        self._check_dim(other)
        trunc = self._join_trunc(other)
        out: dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if trunc is not None and sum(e) > trunc:
                    continue
                s = out.get(e, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        if len(out) > _term_cap():
            raise TermLimitError("product exceeds GERM_MAX_TERMS")
        return PolySeries(self.dim, out, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolySeries":
        if k < 0:
            raise ValueError("negative power of a series")
        result = PolySeries.constant(self.dim, 1, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other) -> "PolySeries":
        if isinstance(other, PolySeries):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return PolySeries.constant(self.dim, other)
        raise TypeError(f"cannot combine PolySeries with {type(other).__name__}")

    # -- calculus and structure ----------------------------------------------

    def partial(self, var_index: int) -> "PolySeries":
        """Formal partial derivative; truncation degree drops by one."""
        if not 0 <= var_index < self.dim:
            raise ValueError(f"variable index {var_index} out of range")
        out: dict[Exponent, GaussianRational] = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if k == 0:
                continue
            de = tuple(v - 1 if j == var_index else v for j, v in enumerate(e))
            out[de] = c * k
        trunc = None if self.trunc is None else max(self.trunc - 1, 0)
        return PolySeries(self.dim, out, trunc)

    def truncated(self, n: int) -> "PolySeries":
        """The jet of degree n (keeps total inputs' terms up to degree n)."""
        trunc = n if self.trunc is None else min(self.trunc, n)
        return PolySeries(self.dim, self.terms, trunc)

    def as_total(self) -> "PolySeries":
        """Reinterpret the stored terms as an exact polynomial."""
        return PolySeries(self.dim, self.terms, None)

    def jet_equal(self, other: "PolySeries") -> bool:
        """Equality of all coefficients up to the smaller truncation degree."""
        other = self._coerce(other)
        self._check_dim(other)
        if self.trunc is None and other.trunc is None:
            return self.terms == other.terms
        n = self._join_trunc(other)
        for e in set(self.terms) | set(other.terms):
            if sum(e) <= n and self.coefficient(e) != other.coefficient(e):
                return False
        return True

    def homogeneous_part(self, k: int) -> "PolySeries":
        return PolySeries(
            self.dim,
            {e: c for e, c in self.terms.items() if sum(e) == k},
            self.trunc,
        )

    def weighted_parts(self, weight: Weight) -> dict[int, "PolySeries"]:
        """Split into quasi-homogeneous components keyed by weighted degree."""
        buckets: dict[int, dict[Exponent, GaussianRational]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(weight.degree_of(e), {})[e] = c
        return {
            k: PolySeries(self.dim, t, self.trunc)
            for k, t in sorted(buckets.items())
        }

    def evaluate(self, point: list[GaussianRational]) -> GaussianRational:
        """Exact evaluation of a total polynomial at a Q(i) point."""
        if not self.is_total:
            raise TruncationError("evaluation requires a total polynomial")
        if len(point) != self.dim:
            raise DimensionMismatchError("point has wrong length")
        pt = [_coerce_scalar(c) for c in point]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for k, p in zip(e, pt):
                if k:
                    v = v * p**k
            total = total + v
        return total

    def conjugate_coefficients(self) -> "PolySeries":
        return PolySeries(
            self.dim, {e: c.conjugate() for e, c in self.terms.items()}, self.trunc
        )

    def substitute(self, images: list["PolySeries"], allow_shift: bool = False) -> "PolySeries":
        """Exact truncated composition self(images[0], ..., images[n-1]).

        Every image must vanish at the origin unless allow_shift is set, in
        which case self must be a total polynomial (a truncated jet gives no
        control over low degrees after an affine shift).
        """
        if len(images) != self.dim:
            raise DimensionMismatchError(
                f"need {self.dim} image series, got {len(images)}"
            )
        target = images[0].dim if images else self.dim
        shifted = False
        for g in images:
            if g.dim != target:
                raise DimensionMismatchError("image series have mixed dimensions")
            if not g.constant_term().is_zero():
                shifted = True
        if shifted:
            if not allow_shift:
                raise GermError(
                    "substitution image has a constant term; pass allow_shift=True"
                )
            if not self.is_total:
                raise TruncationError(
                    "affine substitution into a truncated jet is uncertified"
                )
        truncs = [g.trunc for g in images]
        if not self.is_total:
            truncs.append(self.trunc)
        finite = [n for n in truncs if n is not None]
        trunc = min(finite) if finite else None

        result = PolySeries.zero(target, trunc)
        # cache image powers; exponents are small in practice
        powers: list[dict[int, PolySeries]] = [dict() for _ in images]

        def power(i: int, k: int) -> PolySeries:
            if k == 0:
                return PolySeries.constant(target, 1, trunc)
            got = powers[i].get(k)
            if got is None:
                got = power(i, k - 1) * images[i]
                powers[i][k] = got
            return got

        for e, c in self.terms.items():
            term = PolySeries.constant(target, c, trunc)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        if len(result.terms) > _term_cap():
            raise TermLimitError("substitution exceeds GERM_MAX_TERMS")
        return result

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolySeries):
            if isinstance(other, (int, Fraction, GaussianRational)):
                other = PolySeries.constant(self.dim, other, self.trunc)
            else:
                return NotImplemented
        return (
            self.dim == other.dim
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.trunc, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .parsing import poly_to_text

        tag = "" if self.is_total else f" (jet deg {self.trunc})"
        return f"<PolySeries {poly_to_text(self)}{tag}>"


def poly_divides(d: PolySeries, f: PolySeries) -> tuple[bool, PolySeries | None]:
    """Decide d | f for exact polynomials by graded-lex leading-term elimination.

    Returns (True, quotient) or (False, None).  Truncated inputs are rejected:
    divisibility of a jet is not a well-posed question.
    """
    if not (d.is_total and f.is_total):
        raise TruncationError("poly_divides requires total polynomials")
    if d.dim != f.dim:
        raise DimensionMismatchError("dimension mismatch in poly_divides")
    if d.is_zero():
        raise ZeroDivisionError("zero divisor in poly_divides")
    le, lc = d.leading_term()
    quotient: dict[Exponent, GaussianRational] = {}
    rem = f
    while not rem.is_zero():
        re_, rc = rem.leading_term()
        qe = tuple(a - b for a, b in zip(re_, le))
        if any(k < 0 for k in qe):
            return False, None
        qc = rc / lc
        quotient[qe] = qc
        rem = rem - PolySeries.monomial(d.dim, qe, qc) * d
    return True, PolySeries(d.dim, quotient)


def divide_by_variable_power(f: PolySeries, var_index: int, k: int) -> PolySeries:
    """Exact division of a total polynomial by x_i^k (raises if not exact)."""
    if not f.is_total:
        raise TruncationError("exact division requires a total polynomial")
    if k == 0:
        return f
    out = {}
    for e, c in f.terms.items():
        if e[var_index] < k:
            raise GermError(f"{VAR_NAMES[var_index]}^{k} does not divide the input")
        out[tuple(v - k if j == var_index else v for j, v in enumerate(e))] = c
    return PolySeries(f.dim, out)


def variable_power_dividing(f: PolySeries, var_index: int) -> int:
    """Largest k with x_i^k dividing f (f must be a nonzero total polynomial)."""
    if f.is_zero():
        raise GermError("zero polynomial has no finite variable multiplicity")
    return min(e[var_index] for e in f.terms)
