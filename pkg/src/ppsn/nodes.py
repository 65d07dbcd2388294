"""Node sets, exact Vandermonde matrices, properly-posed certificates,
factorable-system intersection, and nested extraction from complete
intersections.

Well-posedness along a manifold follows the solvability definition: a set
of points is properly posed at degree m exactly when its evaluation matrix
over the full degree-<=m monomial basis has full row rank. Certificates
carry either the witnessing pivot columns or an explicit nonzero row
functional annihilating every row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .dimension import binom_e, dim_along
from .errors import (
    CountMismatchError,
    DimensionMismatchError,
    InputError,
    InsufficientIntersectionError,
    ParseError,
)
from .macaulay import Manifold, canonical_monomials
from .mpoly import (
    MonomialBasis,
    MultiIndex,
    Point,
    Polynomial,
    as_fraction,
    as_point,
    monomial_basis,
    parse_polynomial,
)


class NodeSet:
    """Ordered set of pairwise distinct rational points, optionally tagged
    with the manifold they are claimed to lie on (checked exactly)."""

    def __init__(self, points: Iterable[Sequence], manifold: Optional[Manifold] = None):
        pts = [as_point(p) for p in points]
        if not pts:
            self.n = manifold.n if manifold is not None else 0
        else:
            self.n = len(pts[0])
            for p in pts:
                if len(p) != self.n:
                    raise DimensionMismatchError("points of mixed dimension")
        seen = set()
        for p in pts:
            if p in seen:
                raise InputError(f"duplicate point {tuple(str(c) for c in p)}")
            seen.add(p)
        self.points: Tuple[Point, ...] = tuple(pts)
        self.manifold = manifold
        if manifold is not None:
            if pts and manifold.n != self.n:
                raise DimensionMismatchError("node/manifold dimension mismatch")
            manifold.require_on_manifold(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point) -> bool:
        return as_point(point) in set(self.points)

    def union(self, other: "NodeSet", manifold: Optional[Manifold] = None) -> "NodeSet":
        return NodeSet(self.points + other.points, manifold)

    def difference(self, other: "NodeSet") -> "NodeSet":
        drop = set(other.points)
        return NodeSet([p for p in self.points if p not in drop])

    def is_disjoint(self, other: "NodeSet") -> bool:
        return not (set(self.points) & set(other.points))

    def __repr__(self):
        return f"NodeSet({len(self.points)} points in dim {self.n})"


def vandermonde(nodes: NodeSet, basis: MonomialBasis) -> List[List[Fraction]]:
    """Rows indexed by nodes, columns by basis monomials, entries exact."""
    if len(nodes) and nodes.n != basis.n:
        raise DimensionMismatchError("node/basis dimension mismatch")
    return evaluation_matrix(nodes.points, basis.monomials)


def evaluation_matrix(
    points: Sequence[Point], monomials: Sequence[MultiIndex]
) -> List[List[Fraction]]:
    rows = []
    for q in points:
        row = []
        for alpha in monomials:
            v = Fraction(1)
            for x, e in zip(q, alpha):
                if e:
                    v *= x**e
            row.append(v)
        rows.append(row)
    return rows


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivots: Tuple[Tuple[int, int], ...]


def exact_rank(matrix: Sequence[Sequence[Fraction]]) -> RankResult:
    ech = linalg.row_reduce(matrix)
    return RankResult(rank=ech.rank, pivots=ech.pivots)


@dataclass(frozen=True)
class PPSNCertificate:
    """Exact-rank certificate of (im)proper posedness at a stated degree."""

    degree: int
    n: int
    expected_count: int
    proper: bool
    witness_columns: Tuple[int, ...] = ()
    kernel_functional: Tuple[Fraction, ...] = ()

    @property
    def verdict(self) -> str:
        return "proper" if self.proper else "improper"


def verify_ppsn(
    nodes: NodeSet, manifold: Optional[Manifold], m: int
) -> PPSNCertificate:
    """Certify well-posedness of `nodes` at degree m along `manifold`
    (ambient space when manifold is None)."""
    if manifold is not None:
        n = manifold.n
        expected = dim_along(m, manifold.profile)
    else:
        if len(nodes) == 0 and m >= 0:
            raise InputError("ambient verification needs at least one node")
        n = nodes.n
        expected = binom_e(m, n)
    if len(nodes) != expected:
        raise CountMismatchError(
            f"degree-{m} well-posedness needs exactly {expected} nodes, got {len(nodes)}"
        )
    if m < 0 or expected == 0:
        return PPSNCertificate(degree=m, n=n, expected_count=0, proper=True)
    if manifold is not None:
        manifold.require_on_manifold(nodes.points)
    matrix = vandermonde(nodes, monomial_basis(n, m))
    result = exact_rank(matrix)
    if result.rank == len(nodes):
        return PPSNCertificate(
            degree=m,
            n=n,
            expected_count=expected,
            proper=True,
            witness_columns=tuple(c for _, c in result.pivots),
        )
    kernel = linalg.left_null_vector(matrix)
    return PPSNCertificate(
        degree=m,
        n=n,
        expected_count=expected,
        proper=False,
        kernel_functional=tuple(kernel) if kernel else (),
    )


# -- factorable-system intersection -----------------------------------------


class FactorableSystem:
    """n hypersurfaces, each given as a product of affine-linear forms."""

    def __init__(self, factors: Sequence[Sequence[Polynomial]]):
        self.factors: Tuple[Tuple[Polynomial, ...], ...] = tuple(
            tuple(fs) for fs in factors
        )
        if not self.factors:
            raise InputError("empty system")
        n = self.factors[0][0].n
        self.n = n
        if len(self.factors) != n:
            raise InputError(
                f"a factorable system in dimension {n} needs exactly {n} hypersurfaces, "
                f"got {len(self.factors)}"
            )
        polys = []
        for fs in self.factors:
            if not fs:
                raise InputError("hypersurface with no linear forms")
            prod = Polynomial.constant(n, 1)
            for form in fs:
                if form.n != n:
                    raise DimensionMismatchError("linear form dimension mismatch")
                if form.degree != 1:
                    raise InputError(f"factor {form} is not affine-linear")
                prod = prod * form
            polys.append(prod)
        self.polynomials: Tuple[Polynomial, ...] = tuple(polys)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(fs) for fs in self.factors)

    def manifold(self) -> Manifold:
        """The 0-dimensional manifold cut out by all n product polynomials."""
        return Manifold(self.polynomials)

    def curve_manifold(self, t: int) -> Manifold:
        """The curve obtained by omitting hypersurface t (1-based), with the
        omitted polynomial kept as the completing witness."""
        if not 1 <= t <= self.n:
            raise InputError(f"hypersurface index {t} out of range 1..{self.n}")
        polys = [p for i, p in enumerate(self.polynomials) if i != t - 1]
        return Manifold(polys, witnesses=(self.polynomials[t - 1],))


def _linear_parts(form: Polynomial) -> Tuple[List[Fraction], Fraction]:
    """Coefficient vector and constant of an affine-linear form."""
    coeffs = [Fraction(0)] * form.n
    const = Fraction(0)
    for alpha, c in form.terms.items():
        d = sum(alpha)
        if d == 0:
            const = c
        else:
            coeffs[alpha.index(1)] = c
    return coeffs, const


@dataclass(frozen=True)
class IntersectionReport:
    sufficient: bool
    nodes: Optional[NodeSet]
    failures: Tuple[str, ...]


def intersect_factorable(system: FactorableSystem) -> IntersectionReport:
    """Solve every choice of one linear form per hypersurface exactly.

    Sufficient intersection means every n x n selection system is uniquely
    solvable and all product-count points are pairwise distinct.
    """
    n = system.n
    failures: List[str] = []
    points: List[Point] = []
    import itertools

    for combo in itertools.product(*[range(len(fs)) for fs in system.factors]):
        forms = [system.factors[i][j] for i, j in enumerate(combo)]
        rows = []
        rhs = []
        for form in forms:
            coeffs, const = _linear_parts(form)
            rows.append(coeffs)
            rhs.append(-const)
        if linalg.rank(rows) < n:
            failures.append(
                f"selection {tuple(j + 1 for j in combo)} is singular: "
                "point at infinity or a positive-dimensional component"
            )
            continue
        sol = linalg.solve(rows, rhs)
        points.append(tuple(sol))
    seen = {}
    for idx, p in enumerate(points):
        if p in seen:
            failures.append(
                f"coincident intersection points (selections {seen[p] + 1} and {idx + 1})"
            )
        else:
            seen[p] = idx
    if failures:
        return IntersectionReport(sufficient=False, nodes=None, failures=tuple(failures))
    return IntersectionReport(
        sufficient=True,
        nodes=NodeSet(points, system.manifold()),
        failures=(),
    )


# -- nested extraction -------------------------------------------------------


def extract_nested_ppsn(points: NodeSet, manifold: Manifold, m: int) -> NodeSet:
    """Extract a degree-m properly posed subset of a full complete
    intersection, nested across degrees.

    The selection works top-down: starting from all points (proper at the
    saturation degree), each descent step greedily keeps rows spanning the
    leading columns of the evaluation matrix over the unselected-monomial
    sequence. Determinism makes extractions at lower degrees subsets of
    extractions at higher ones.
    """
    if manifold.s != manifold.n:
        raise InputError("nested extraction needs a 0-dimensional manifold (s = n)")
    profile = manifold.profile
    N = profile.N
    if len(points) != N:
        raise CountMismatchError(
            f"expected the full {N}-point intersection, got {len(points)} points"
        )
    manifold.require_on_manifold(points.points)
    if m < 0:
        raise InputError("extraction degree must be >= 0")
    M = profile.M
    if m >= M:
        return points

    columns = canonical_monomials(manifold, manifold.n, max(M, 0))
    if len(columns) != N:
        raise InsufficientIntersectionError(
            f"unselected-monomial count {len(columns)} differs from N={N}"
        )
    matrix = evaluation_matrix(points.points, columns)
    selected = list(range(N))
    for d in range(M - 1, m - 1, -1):
        target = dim_along(d, profile)
        tracker = linalg.IncrementalRank(target)
        keep: List[int] = []
        for r in selected:
            if tracker.add(matrix[r][:target]):
                keep.append(r)
            if tracker.rank == target:
                break
        if tracker.rank != target:
            raise InsufficientIntersectionError(
                f"rank {tracker.rank} < {target} at degree {d}: "
                "input was not a genuine sufficient intersection"
            )
        selected = keep
    return NodeSet([points.points[r] for r in selected], manifold)


# -- text formats -------------------------------------------------------------


def parse_nodes_text(text: str, n: Optional[int] = None) -> NodeSet:
    """One point per line, comma-separated rationals; '#' comments."""
    points: List[Point] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            coords = tuple(as_fraction(c.strip()) for c in line.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad point on line {lineno}: {exc}") from exc
        if n is not None and len(coords) != n:
            raise ParseError(f"line {lineno}: expected {n} coordinates")
        points.append(coords)
    return NodeSet(points)


def format_nodes(nodes: NodeSet) -> str:
    return "\n".join(",".join(str(c) for c in p) for p in nodes.points)


def split_top_level_factors(line: str) -> List[str]:
    """Split a '*'-joined product on separators outside parentheses."""
    parts: List[str] = []
    depth = 0
    current: List[str] = []
    for ch in line:
        if ch == "(":
            depth += 1
            if depth == 1:
                continue
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'")
            if depth == 0:
                continue
        elif ch == "*" and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        current.append(ch)
    if depth != 0:
        raise ParseError("unbalanced '('")
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def parse_system_text(text: str) -> FactorableSystem:
    """One hypersurface per line: '*'-joined linear forms; any form with
    more than one term must be parenthesized."""
    lines = [
        stripped
        for raw in text.splitlines()
        if (stripped := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise ParseError("empty system file")
    n = len(lines)
    factors = []
    for lineno, line in enumerate(lines, 1):
        forms = []
        for piece in split_top_level_factors(line):
            form = parse_polynomial(piece, n)
            if form.degree != 1:
                raise ParseError(
                    f"line {lineno}: factor {piece!r} is not affine-linear"
                )
            forms.append(form)
        factors.append(forms)
    return FactorableSystem(factors)
