"""Jet-space kernels of ad_X and X( ), resonances, linear classification.

The centralizer solver works in the monomial-field basis: unknowns are the
coefficients of a field Y of coefficient degree <= N, constraints are the
coefficients of [X, Y] in every degree that the N-jet of Y fully determines,
namely all degrees <= N + mu(X) - 1.  Solutions split in two:

  * certified basis vectors commute with X identically (exact polynomial
    members of the centralizer, hence honest jets of it);
  * tentative vectors only satisfy the visible constraints -- their bracket
    first fails beyond the certified degree, and whether they extend to the
    germ level is unknown at this truncation.

The two kinds are never mixed; dimension tables, rank and stabilization
verdicts are computed from the certified part only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .gaussian import ONE, ZERO, GaussianRational, _fraction_sqrt
from .series import GermError, PolySeries, TruncationError, monomial_key
from .fields import (
    VectorFieldJet,
    lie_bracket,
    radial_field,
    wedge,
)

Exponent = tuple[int, ...]


def monomials_up_to(dim: int, max_deg: int, min_deg: int = 0) -> list[Exponent]:
    """All exponent tuples with min_deg <= |e| <= max_deg in graded-lex order."""

    def gen(prefix, remaining, slots):
        if slots == 1:
            yield prefix + (remaining,)
            return
        for k in range(remaining + 1):
            yield from gen(prefix + (k,), remaining - k, slots - 1)

    out = []
    for d in range(min_deg, max_deg + 1):
        out.extend(gen((), d, dim))
    return sorted(out, key=monomial_key)


@dataclass(frozen=True)
class CertifiedJet:
    """A kernel basis element with its certification bookkeeping."""

    value: object  # VectorFieldJet or PolySeries
    certified_to: int
    exact: bool


@dataclass(frozen=True)
class CentralizerReport:
    field: VectorFieldJet
    max_degree: int
    multiplicity: int
    certified_degree: int
    basis: tuple[CertifiedJet, ...]
    tentative: tuple[CertifiedJet, ...]
    dims: dict[int, int]
    rank_estimate: int | None
    stabilization: str

    def dimension(self) -> int:
        return len(self.basis)

    def basis_fields(self) -> list[VectorFieldJet]:
        return [b.value for b in self.basis]


@dataclass(frozen=True)
class FirstIntegralReport:
    field: VectorFieldJet
    max_degree: int
    multiplicity: int
    certified_degree: int
    basis: tuple[CertifiedJet, ...]
    tentative: tuple[CertifiedJet, ...]
    dims: dict[int, int]

    def dimension(self) -> int:
        return len(self.basis)

    def basis_series(self) -> list[PolySeries]:
        return [b.value for b in self.basis]


def _require_polynomial_field(x: VectorFieldJet):
    if not x.is_total:
        raise TruncationError("the base field must be an exact polynomial")
    if x.is_zero():
        raise GermError("the zero field has no meaningful kernel")


class _JetKernelProblem:
    """Shared assembly/split logic for ad_X and first-integral kernels."""

    def __init__(self, dim, columns, images, horizon):
        self.dim = dim
        self.columns = columns            # unknown labels, graded order
        self.images = images              # PolySeries list per column, per target slot
        self.horizon = horizon

    def solve(self):
        # constraint rows are (target slot, monomial); one matrix per cut
        supports = [set() for _ in self.images[0]] if self.images else []
        for img in self.images:
            for j, series in enumerate(img):
                supports[j].update(series.terms)
        rows_all, rows_raw = [], []
        for j, support in enumerate(supports):
            for e in sorted(support, key=monomial_key):
                row = [img[j].coefficient(e) for img in self.images]
                rows_all.append(row)
                if sum(e) <= self.horizon:
                    rows_raw.append(row)
        ncols = len(self.columns)
        raw = linalg.echelon_basis(linalg.nullspace(rows_raw, ncols), ncols)
        exact = linalg.echelon_basis(linalg.nullspace(rows_all, ncols), ncols)
        current = [list(v) for v in exact]
        tentative = []
        for v in raw:
            if not linalg.in_span(current, v, ncols):
                tentative.append(v)
                current.append(v)
        return exact, tentative

    def leading_degree(self, vector) -> int:
        for col_idx, value in enumerate(vector):
            if not value.is_zero():
                return self.column_degree(col_idx)
        return 0

    def column_degree(self, col_idx: int) -> int:
        raise NotImplementedError


class _FieldKernel(_JetKernelProblem):
    def __init__(self, x: VectorFieldJet, max_degree: int):
        dim = x.dim
        cols = [
            (e, i)
            for e in monomials_up_to(dim, max_degree)
            for i in range(dim)
        ]
        cols.sort(key=lambda ei: (monomial_key(ei[0]), ei[1]))
        images = []
        for e, i in cols:
            comps = [PolySeries.zero(dim) for _ in range(dim)]
            comps[i] = PolySeries.monomial(dim, e)
            images.append(lie_bracket(x, VectorFieldJet(comps)).comps)
        horizon = max_degree + x.mu() - 1
        super().__init__(dim, cols, images, horizon)

    def column_degree(self, col_idx: int) -> int:
        return sum(self.columns[col_idx][0])

    def to_field(self, vector) -> VectorFieldJet:
        comps_terms = [dict() for _ in range(self.dim)]
        for (e, i), c in zip(self.columns, vector):
            if not c.is_zero():
                comps_terms[i][e] = c
        return VectorFieldJet([PolySeries(self.dim, t) for t in comps_terms])


class _IntegralKernel(_JetKernelProblem):
    def __init__(self, x: VectorFieldJet, max_degree: int):
        dim = x.dim
        cols = monomials_up_to(dim, max_degree, min_deg=1)
        images = [[x.apply(PolySeries.monomial(dim, e))] for e in cols]
        horizon = max_degree + x.mu() - 1
        super().__init__(dim, cols, images, horizon)

    def column_degree(self, col_idx: int) -> int:
        return sum(self.columns[col_idx])

    def to_series(self, vector) -> PolySeries:
        terms = {e: c for e, c in zip(self.columns, vector) if not c.is_zero()}
        return PolySeries(self.dim, terms)


def ad_kernel(x: VectorFieldJet, max_degree: int) -> CentralizerReport:
    """Certified basis of the bracket kernel at coefficient degree <= N."""
    _require_polynomial_field(x)
    if max_degree < 1:
        raise GermError("max_degree must be at least 1")
    problem = _FieldKernel(x, max_degree)
    exact_vecs, tentative_vecs = problem.solve()
    horizon = problem.horizon
    basis = tuple(
        CertifiedJet(problem.to_field(v), horizon, True) for v in exact_vecs
    )
    tentative = tuple(
        CertifiedJet(problem.to_field(v), horizon, False) for v in tentative_vecs
    )
    dims: dict[int, int] = {}
    for v in exact_vecs:
        d = problem.leading_degree(v)
        dims[d] = dims.get(d, 0) + 1

    rank_estimate = None
    if x.dim == 2 and basis:
        rank_estimate = generic_rank([b.value for b in basis])

    stabilization = _stabilization_verdict(x, max_degree, dims)
    return CentralizerReport(
        field=x,
        max_degree=max_degree,
        multiplicity=x.mu(),
        certified_degree=horizon,
        basis=basis,
        tentative=tentative,
        dims=dims,
        rank_estimate=rank_estimate,
        stabilization=stabilization,
    )


def _stabilization_verdict(x, max_degree, dims) -> str:
    if max_degree < 3:
        return "undetermined"
    top = [dims.get(d, 0) for d in range(max_degree - 2, max_degree + 1)]
    if all(c == 0 for c in top):
        return "stable"
    if all(c > 0 for c in top):
        integrals = first_integral_kernel(x, max_degree)
        if integrals.dimension() > 0:
            return "growing"
    return "undetermined"


def first_integral_kernel(x: VectorFieldJet, max_degree: int) -> FirstIntegralReport:
    """Certified basis of nonconstant jets f, f(0)=0, with X(f) = 0."""
    _require_polynomial_field(x)
    if max_degree < 1:
        raise GermError("max_degree must be at least 1")
    problem = _IntegralKernel(x, max_degree)
    exact_vecs, tentative_vecs = problem.solve()
    horizon = problem.horizon
    basis = tuple(
        CertifiedJet(problem.to_series(v), horizon, True) for v in exact_vecs
    )
    tentative = tuple(
        CertifiedJet(problem.to_series(v), horizon, False) for v in tentative_vecs
    )
    dims: dict[int, int] = {}
    for v in exact_vecs:
        d = problem.leading_degree(v)
        dims[d] = dims.get(d, 0) + 1
    return FirstIntegralReport(
        field=x,
        max_degree=max_degree,
        multiplicity=x.mu(),
        certified_degree=horizon,
        basis=basis,
        tentative=tentative,
        dims=dims,
    )


def extendable_jet_dimension(x: VectorFieldJet, max_degree: int, d: int) -> int:
    """Dimension of degree-<=d jets that extend within the degree-N kernel.

    Monotone non-increasing in max_degree for fixed d: deeper truncations add
    constraints that extendable low jets must survive.
    """
    _require_polynomial_field(x)
    problem = _FieldKernel(x, max_degree)
    exact_vecs, tentative_vecs = problem.solve()
    truncated = []
    for v in exact_vecs + tentative_vecs:
        truncated.append(
            [
                c if problem.column_degree(i) <= d else ZERO
                for i, c in enumerate(v)
            ]
        )
    return linalg.rank(truncated, len(problem.columns))


def generic_rank(basis: list[VectorFieldJet]) -> int:
    """Largest r in {1, 2} with r generically independent members (plane case)."""
    if not basis:
        raise GermError("generic_rank of an empty basis")
    if any(b.dim != 2 for b in basis):
        raise GermError("generic_rank is implemented for n=2")
    for a, b in combinations(basis, 2):
        if not wedge([a, b]).is_zero():
            return 2
    return 1


# -- resonances --------------------------------------------------------------


@dataclass(frozen=True)
class Resonance:
    """lambda_target = sum_j exponents[j] * lambda_j with |exponents| >= 2.

    target is 1-based to match the usual indexing of eigenvalue lists.
    """

    target: int
    exponents: Exponent


def resonances(lambdas: list[GaussianRational], bound: int) -> tuple[Resonance, ...]:
    """All resonance relations with 2 <= |k| <= bound, by exhaustive search."""
    if bound < 2:
        raise GermError("resonance bound must be at least 2")
    lams = [
        l if isinstance(l, GaussianRational) else GaussianRational(l)
        for l in lambdas
    ]
    n = len(lams)
    found = []
    for k in monomials_up_to(n, bound, min_deg=2):
        combo = ZERO
        for kj, lj in zip(k, lams):
            if kj:
                combo = combo + lj * kj
        for i, li in enumerate(lams):
            if combo == li:
                found.append(Resonance(i + 1, k))
    found.sort(key=lambda r: (r.target, monomial_key(r.exponents)))
    return tuple(found)


# -- linear classification ----------------------------------------------------


@dataclass(frozen=True)
class LinearClass:
    case: str  # semisimple | nilpotent_nonzero | zero | nondiagonal_resonant | one_zero_eigenvalue
    ratio_rationality: str  # rational | irrational | undefined
    ratio: Fraction | None = None
    rational_ratios: tuple[Fraction, ...] = ()
    eigenvalues: tuple[GaussianRational, GaussianRational] | None = None

    def ratio_in_positive_rationals(self) -> bool:
        return any(r > 0 for r in self.rational_ratios)


def _rational_quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> list[Fraction] | None:
    """Rational roots of a r^2 + b r + c; None when identically zero."""
    if a == 0 and b == 0 and c == 0:
        return None
    if a == 0:
        return [] if b == 0 else [Fraction(-c, b)]
    disc = b * b - 4 * a * c
    s = _fraction_sqrt(disc)
    if s is None:
        return []
    roots = {(-b + s) / (2 * a), (-b - s) / (2 * a)}
    return sorted(roots)


def eigenvalue_ratio_roots(trace: GaussianRational, det: GaussianRational) -> list[Fraction]:
    """Rational solutions r of (1+r)^2 det = r trace^2, i.e. rational ratios.

    The two ratios of a 2x2 matrix with det != 0 are the roots r, 1/r of
    det r^2 + (2 det - trace^2) r + det = 0; rationality is decided without
    extracting eigenvalues.
    """
    a = det
    b = det * 2 - trace * trace
    c = det
    candidates = _rational_quadratic_roots(a.re, b.re, c.re)
    if candidates is None:
        candidates = _rational_quadratic_roots(a.im, b.im, c.im)
    if candidates is None:  # det == 0 excluded by callers, but stay safe
        return []
    roots = []
    for r in candidates:
        value = a * GaussianRational(r * r) + b * GaussianRational(r) + c
        if value.is_zero():
            roots.append(r)
    return sorted(set(roots))


def classify_linear(matrix: list[list[GaussianRational]]) -> LinearClass:
    """Classify a 2x2 linear part over Q(i), with exact ratio rationality."""
    if len(matrix) != 2 or any(len(row) != 2 for row in matrix):
        raise GermError("classify_linear expects a 2x2 matrix")
    m = [[c if isinstance(c, GaussianRational) else GaussianRational(c) for c in row] for row in matrix]
    trace = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if all(c.is_zero() for row in m for c in row):
        return LinearClass("zero", "undefined")
    if det.is_zero():
        if trace.is_zero():
            return LinearClass("nilpotent_nonzero", "undefined")
        eigs = tuple(sorted((ZERO, trace), key=GaussianRational.sort_key))
        return LinearClass("one_zero_eigenvalue", "undefined", eigenvalues=eigs)

    roots = eigenvalue_ratio_roots(trace, det)
    disc = trace * trace - det * 4
    eigs = None
    s = disc.sqrt()
    if s is not None:
        half = ONE / GaussianRational(2)
        eigs = tuple(
            sorted(((trace - s) * half, (trace + s) * half), key=GaussianRational.sort_key)
        )
    if roots:
        rationality = "rational"
        ratio = max(roots, key=lambda r: (abs(r), r))
    else:
        rationality = "irrational"
        ratio = None
    scalar = m[0][1].is_zero() and m[1][0].is_zero() and m[0][0] == m[1][1]
    if disc.is_zero() and not scalar:
        case = "nondiagonal_resonant"
    else:
        case = "semisimple"
    return LinearClass(case, rationality, ratio, tuple(roots), eigs)


# -- the reference table of plane linear / saddle-node centralizers -----------


@dataclass(frozen=True)
class TableRow:
    row: int
    field: VectorFieldJet
    generators: tuple[VectorFieldJet, ...]
    rank: int
    dimension: int | None  # None means infinite

    def generator_jets(self, max_degree: int) -> list[VectorFieldJet]:
        return [g.truncated(max_degree).as_total() for g in self.generators]


def _poly2(terms) -> PolySeries:
    return PolySeries(2, terms)


def _vf2(c1_terms, c2_terms) -> VectorFieldJet:
    return VectorFieldJet([_poly2(c1_terms), _poly2(c2_terms)])


def linear_centralizer_table(
    row: int,
    max_degree: int = 6,
    ratio: GaussianRational | None = None,
    p: int | None = None,
    q: int | None = None,
    n: int | None = None,
    residue: GaussianRational | None = None,
) -> TableRow:
    """Reference centralizer data for the normal forms of plane linear fields
    and the formal saddle-node.

    Rows: 1 radial; 2 diagonal with non-degenerate ratio; 3 diagonal ratio
    -p/q; 4 x d/dx; 5 diagonal ratio n >= 2; 6 nilpotent x d/dy; 7 the
    non-diagonal resonant case; 8 the saddle-node normal form.  Generators of
    infinite-dimensional rows come back truncated at max_degree.
    """
    x_dx = _vf2({(1, 0): ONE}, {})
    y_dy = _vf2({}, {(0, 1): ONE})
    x_dy = _vf2({}, {(1, 0): ONE})
    y_dx = _vf2({(0, 1): ONE}, {})
    d_y = _vf2({}, {(0, 0): ONE})
    r = radial_field(2)

    def module(span_field: VectorFieldJet, h: PolySeries) -> list[VectorFieldJet]:
        # jets of C{h}.V with coefficient degree <= max_degree
        base_deg = max(c.total_degree() for c in span_field.comps if not c.is_zero())
        step = h.total_degree()
        out = []
        power = PolySeries.constant(2, 1)
        m = 0
        while base_deg + m * step <= max_degree:
            out.append(span_field * power)
            power = power * h
            m += 1
        return out

    if row == 1:
        return TableRow(1, r, (x_dx, x_dy, y_dx, y_dy), 2, 4)
    if row == 2:
        if ratio is None:
            raise GermError("row 2 needs the eigenvalue ratio")
        lam = ratio if isinstance(ratio, GaussianRational) else GaussianRational(ratio)
        if lam.is_rational():
            fr = lam.re
            bad = fr <= 0 or fr.denominator == 1 or fr.numerator == 1
            if bad:
                raise GermError("row 2 excludes ratios in Q<=0, N and 1/N")
        x = x_dx + y_dy * lam
        return TableRow(2, x, (x_dx, y_dy), 2, 2)
    if row == 3:
        if not (p and q) or p < 1 or q < 1:
            raise GermError("row 3 needs positive integers p, q")
        lam = GaussianRational(Fraction(-p, q))
        x = x_dx + y_dy * lam
        h = _poly2({(p, q): ONE})
        gens = tuple(module(x_dx, h) + module(y_dy, h))
        return TableRow(3, x, gens, 2, None)
    if row == 4:
        y = PolySeries.variable(2, 1)
        gens = tuple(module(x_dx, y) + module(d_y, y))
        return TableRow(4, x_dx, gens, 2, None)
    if row == 5:
        if n is None or n < 2:
            raise GermError("row 5 needs an integer ratio n >= 2")
        x = x_dx + y_dy * n
        resonant = _vf2({}, {(n, 0): ONE})
        return TableRow(5, x, (x_dx, y_dy, resonant), 2, 3)
    if row == 6:
        xv = PolySeries.variable(2, 0)
        gens = tuple(module(r, xv) + module(d_y, xv))
        return TableRow(6, x_dy, gens, 2, None)
    if row == 7:
        x = _vf2({(1, 0): ONE}, {(1, 0): ONE, (0, 1): ONE})
        return TableRow(7, x, (r, x_dy), 2, 2)
    if row == 8:
        if p is None or p < 1:
            raise GermError("row 8 needs an integer p >= 1")
        lam = residue if residue is not None else ZERO
        if not isinstance(lam, GaussianRational):
            lam = GaussianRational(lam)
        x = _vf2({(p + 1, 0): ONE}, {(0, 1): ONE, (p, 1): lam})
        gen1 = _vf2({(p + 1, 0): ONE}, {(p, 1): lam})
        return TableRow(8, x, (gen1, y_dy), 2, 2)
    raise GermError(f"table row must be 1..8, got {row}")


def span_matches(
    kernel: list[VectorFieldJet],
    generators: list[VectorFieldJet],
    max_degree: int,
) -> bool:
    """Exact span equality of two families of degree-<=N field jets."""
    if not kernel and not generators:
        return True
    dim = (kernel or generators)[0].dim
    cols = [
        (e, i) for e in monomials_up_to(dim, max_degree) for i in range(dim)
    ]
    cols.sort(key=lambda ei: (monomial_key(ei[0]), ei[1]))
    index = {label: k for k, label in enumerate(cols)}

    def vec(f: VectorFieldJet):
        v = [ZERO] * len(cols)
        for i, comp in enumerate(f.comps):
            for e, c in comp.terms.items():
                v[index[(e, i)]] = c
        return v

    return linalg.span_equal([vec(f) for f in kernel], [vec(g) for g in generators], len(cols))
