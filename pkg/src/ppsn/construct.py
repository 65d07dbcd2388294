"""Constructive procedures: exact interpolation, the superposition process,
curve chains, Cayley-Bacharach reduction/extension, and the classical
line/conic node generators.

Every construction returns its result together with an exact-rank
certificate; hypothesis checks are exact and refusals are exceptions, so a
returned node set is always certified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .dimension import binom_e, dim_along
from .errors import (
    CountMismatchError,
    HypothesisError,
    ImproperNodeSetError,
    InputError,
    InsufficientIntersectionError,
    InternalCheckError,
)
from .macaulay import Manifold, canonical_monomials
from .mpoly import Point, Polynomial, as_fraction, as_point
from .nodes import (
    FactorableSystem,
    NodeSet,
    PPSNCertificate,
    evaluation_matrix,
    extract_nested_ppsn,
    intersect_factorable,
    verify_ppsn,
)


# -- interpolation ------------------------------------------------------------


@dataclass(frozen=True)
class InterpolationProblem:
    """Nodes, aligned values, a degree, and an optional manifold (None for
    the ambient space)."""

    manifold: Optional[Manifold]
    m: int
    nodes: NodeSet
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "values", tuple(as_fraction(v) for v in self.values)
        )
        if len(self.values) != len(self.nodes):
            raise CountMismatchError(
                f"{len(self.nodes)} nodes but {len(self.values)} values"
            )


def interpolate(
    problem: InterpolationProblem,
    certificate: Optional[PPSNCertificate] = None,
) -> Polynomial:
    """The canonical interpolant: its support is restricted to the
    unselected monomials of degrees <= m, which makes it the unique
    representative in the canonical remainder space."""
    manifold, m, nodes = problem.manifold, problem.m, problem.nodes
    if manifold is not None:
        n = manifold.n
    elif len(nodes):
        n = nodes.n
    else:
        raise InputError("cannot infer the ambient dimension from an empty problem")
    if m < 0:
        if len(nodes):
            raise CountMismatchError("negative degree admits only the empty node set")
        return Polynomial.zero(n)
    if certificate is None:
        certificate = verify_ppsn(nodes, manifold, m)
    if not certificate.proper:
        raise ImproperNodeSetError(certificate)
    columns = canonical_monomials(manifold, n, m)
    if len(columns) != len(nodes):
        raise InternalCheckError("canonical support size differs from node count")
    matrix = evaluation_matrix(nodes.points, columns)
    ech = linalg.row_reduce(matrix)
    if ech.rank != len(nodes):
        raise InternalCheckError(
            "canonical evaluation matrix is singular for a certified node set"
        )
    coeffs = linalg.solve(matrix, list(problem.values))
    poly = Polynomial(n, dict(zip(columns, coeffs)))
    for q, v in zip(nodes.points, problem.values):
        if poly.evaluate(q) != v:
            raise InternalCheckError("interpolant misses a node value")
    return poly


# -- superposition -------------------------------------------------------------


@dataclass(frozen=True)
class SuperpositionStep:
    """One application of the superposition process.

    `sub_manifold` is cut out by f_1..f_s; its last polynomial f_s is the
    splitting polynomial. `sub_nodes` is a degree-m node set on it;
    `super_nodes` is a degree-(m - deg f_s) node set on the larger manifold
    cut out by f_1..f_{s-1} (the ambient space when s = 1), off f_s = 0.
    """

    sub_manifold: Manifold
    sub_nodes: NodeSet
    super_nodes: NodeSet
    m: int

    @property
    def splitting_poly(self) -> Polynomial:
        return self.sub_manifold.polynomials[-1]

    @property
    def super_manifold(self) -> Optional[Manifold]:
        if self.sub_manifold.s == 1:
            return None
        return Manifold(self.sub_manifold.polynomials[:-1])


def superpose_nodes(step: SuperpositionStep) -> Tuple[NodeSet, PPSNCertificate]:
    """Union of a PPSN on the sub-manifold and a lower-degree PPSN on the
    larger manifold, certified at degree m on the larger manifold."""
    f_s = step.splitting_poly
    k_s = f_s.degree
    m = step.m
    sub_cert = verify_ppsn(step.sub_nodes, step.sub_manifold, m)
    if not sub_cert.proper:
        raise ImproperNodeSetError(sub_cert, "sub-manifold node set is improper")
    super_manifold = step.super_manifold
    if m - k_s < 0:
        if len(step.super_nodes):
            raise CountMismatchError(
                "degree m - k is negative: the larger-manifold node set must be empty"
            )
    else:
        super_cert = verify_ppsn(step.super_nodes, super_manifold, m - k_s)
        if not super_cert.proper:
            raise ImproperNodeSetError(super_cert, "larger-manifold node set is improper")
    for q in step.super_nodes:
        if f_s.evaluate(q) == 0:
            raise HypothesisError(
                f"splitting polynomial vanishes at {tuple(str(c) for c in q)}"
            )
    if not step.sub_nodes.is_disjoint(step.super_nodes):
        raise HypothesisError("node sets are not disjoint")
    union = step.sub_nodes.union(step.super_nodes, super_manifold)
    if super_manifold is not None:
        expected = dim_along(m, super_manifold.profile)
    else:
        expected = binom_e(m, union.n)
    if len(union) != expected:
        raise CountMismatchError(
            f"union has {len(union)} points, expected {expected} at degree {m}"
        )
    cert = verify_ppsn(union, super_manifold, m)
    if not cert.proper:
        raise ImproperNodeSetError(
            cert,
            "superposed set is improper: the configuration is not a sufficient intersection",
        )
    return union, cert


def superpose_interpolate(
    step: SuperpositionStep, values: Sequence
) -> Polynomial:
    """Two-stage interpolation: solve on the sub-manifold, divide the
    residues by the splitting polynomial, solve the quotient problem on the
    larger manifold, and recombine."""
    union, _ = superpose_nodes(step)
    vals = tuple(as_fraction(v) for v in values)
    if len(vals) != len(union):
        raise CountMismatchError(f"{len(union)} nodes but {len(vals)} values")
    n_sub = len(step.sub_nodes)
    g_m = interpolate(
        InterpolationProblem(
            manifold=step.sub_manifold,
            m=step.m,
            nodes=step.sub_nodes,
            values=vals[:n_sub],
        )
    )
    f_s = step.splitting_poly
    k_s = f_s.degree
    if step.m - k_s < 0 or len(step.super_nodes) == 0:
        alpha = Polynomial.zero(g_m.n)
    else:
        quotient_values = [
            (v - g_m.evaluate(q)) / f_s.evaluate(q)
            for q, v in zip(step.super_nodes, vals[n_sub:])
        ]
        alpha = interpolate(
            InterpolationProblem(
                manifold=step.super_manifold,
                m=step.m - k_s,
                nodes=step.super_nodes,
                values=tuple(quotient_values),
            )
        )
    result = g_m + alpha * f_s
    for q, v in zip(union, vals):
        if result.evaluate(q) != v:
            raise InternalCheckError("superposed interpolant misses a node value")
    return result


# -- classical node generators --------------------------------------------------


def gen_line_nodes(
    base: Sequence,
    direction: Sequence,
    m: int,
    params: Optional[Sequence] = None,
) -> NodeSet:
    """m+1 points base + t * direction at distinct rational parameters."""
    base_pt = as_point(base)
    dir_vec = as_point(direction)
    if all(d == 0 for d in dir_vec):
        raise InputError("direction must be nonzero")
    if params is None:
        params = range(m + 1)
    ts = [as_fraction(t) for t in params]
    if len(set(ts)) != len(ts):
        raise InputError("repeated parameters")
    if len(ts) != m + 1:
        raise CountMismatchError(f"need {m + 1} parameters, got {len(ts)}")
    return NodeSet([tuple(b + t * d for b, d in zip(base_pt, dir_vec)) for t in ts])


def gen_conic_nodes(m: int, params: Optional[Sequence] = None) -> NodeSet:
    """2m+1 points (t, t^2) on the parabola x2 = x1^2 at distinct parameters.

    Default parameters are 0, 1, -1, 2, -2, ...
    """
    count = 2 * m + 1
    if params is None:
        params = [0]
        step = 1
        while len(params) < count:
            params.extend([step, -step])
            step += 1
        params = params[:count]
    ts = [as_fraction(t) for t in params]
    if len(set(ts)) != len(ts):
        raise InputError("repeated parameters")
    if len(ts) != count:
        raise CountMismatchError(f"need {count} parameters, got {len(ts)}")
    return NodeSet([(t, t * t) for t in ts])


def parabola_manifold() -> Manifold:
    """The fixture conic x2 - x1^2 = 0 with a completing witness line."""
    n = 2
    f = Polynomial(n, {(0, 1): Fraction(1), (2, 0): Fraction(-1)})
    # leading forms (-x1^2, x2) vanish jointly only at the origin
    witness = Polynomial(n, {(0, 1): Fraction(1), (0, 0): Fraction(-1)})
    return Manifold([f], witnesses=(witness,))


# -- Cayley-Bacharach ------------------------------------------------------------


@dataclass(frozen=True)
class CBPartition:
    """A complete intersection split into a removed subset and the rest."""

    full: NodeSet
    removed: NodeSet

    def __post_init__(self):
        full_set = set(self.full.points)
        for q in self.removed:
            if q not in full_set:
                raise InputError(
                    f"removed point {tuple(str(c) for c in q)} is not in the intersection"
                )

    @property
    def remaining(self) -> NodeSet:
        return self.full.difference(self.removed)


def cb_reduce(
    partition: CBPartition, manifold: Manifold, m: int
) -> Tuple[NodeSet, PPSNCertificate]:
    """Remove a complementary-degree PPSN from a complete intersection and
    certify what is left at degree m."""
    if manifold.s != manifold.n:
        raise InputError("Cayley-Bacharach reduction needs s = n")
    profile = manifold.profile
    M = profile.M
    if not 0 <= m <= M - 1:
        raise InputError(f"degree m={m} out of range 0..{M - 1}")
    if len(partition.full) != profile.N:
        raise CountMismatchError(
            f"expected the full {profile.N}-point intersection, got {len(partition.full)}"
        )
    manifold.require_on_manifold(partition.full.points)
    comp_degree = M - m - 1
    removed_cert = verify_ppsn(partition.removed, manifold, comp_degree)
    if not removed_cert.proper:
        raise ImproperNodeSetError(
            removed_cert,
            f"removed set is not a degree-{comp_degree} PPSN; reduction refused",
        )
    remaining = NodeSet(partition.remaining.points, manifold)
    expected = dim_along(m, profile)
    if len(remaining) != expected:
        raise InternalCheckError(
            f"remaining count {len(remaining)} differs from dimension {expected}"
        )
    cert = verify_ppsn(remaining, manifold, m)
    if not cert.proper:
        raise ImproperNodeSetError(
            cert, "remaining points are improper: input was not a complete intersection"
        )
    return remaining, cert


@dataclass(frozen=True)
class CBVerdict:
    """Outcome of the vanish-or-degenerate trichotomy check."""

    vanishes_on_removed: bool
    exception_hypersurface: Optional[Polynomial]
    consistent: bool


def cb_check(
    f: Polynomial,
    partition: CBPartition,
    manifold: Manifold,
    m: int,
    require_ppsn_removed: bool = False,
) -> CBVerdict:
    """Check the Cayley-Bacharach trichotomy on an instance.

    `f` has degree <= m and vanishes on the large remaining set. Either it
    also vanishes on the removed points, or those points lie on a
    hypersurface of degree M-m-1. With `require_ppsn_removed` the removed
    set is first verified properly posed at the complementary degree, under
    which hypothesis vanishing is forced.
    """
    if manifold.s != manifold.n:
        raise InputError("Cayley-Bacharach check needs s = n")
    profile = manifold.profile
    M, L = profile.M, profile.L
    if require_ppsn_removed:
        if not 0 <= m <= M - 1:
            raise InputError(f"degree m={m} out of range 0..{M - 1}")
    else:
        if not M - L + 1 <= m <= M - 1:
            raise InputError(f"degree m={m} out of range {M - L + 1}..{M - 1}")
    if not f.in_space(m):
        raise InputError(f"polynomial degree {f.degree} exceeds m={m}")
    if len(partition.full) != profile.N:
        raise CountMismatchError(
            f"expected the full {profile.N}-point intersection, got {len(partition.full)}"
        )
    comp_degree = M - m - 1
    expected_removed = binom_e(comp_degree, manifold.n)
    if len(partition.removed) != expected_removed and not require_ppsn_removed:
        raise CountMismatchError(
            f"removed set must have {expected_removed} points, got {len(partition.removed)}"
        )
    if require_ppsn_removed:
        cert = verify_ppsn(partition.removed, manifold, comp_degree)
        if not cert.proper:
            raise ImproperNodeSetError(cert, "removed set is not properly posed")
    for q in partition.remaining:
        v = f.evaluate(q)
        if v != 0:
            raise InputError(
                f"polynomial does not vanish on the remaining set at "
                f"{tuple(str(c) for c in q)}: value {v}"
            )
    vanishes = all(f.evaluate(q) == 0 for q in partition.removed)
    exception = None
    if not vanishes and comp_degree >= 0:
        from .mpoly import monomial_basis

        basis = monomial_basis(manifold.n, comp_degree)
        matrix = evaluation_matrix(partition.removed.points, list(basis))
        kernel = linalg.nullspace(matrix)
        if kernel:
            exception = Polynomial(manifold.n, dict(zip(basis.monomials, kernel[0])))
    consistent = vanishes or exception is not None
    return CBVerdict(
        vanishes_on_removed=vanishes,
        exception_hypersurface=exception,
        consistent=consistent,
    )


def cb_extend_curve(
    full: NodeSet,
    a_t: NodeSet,
    b: NodeSet,
    manifold: Manifold,
    t: int,
    m: int,
) -> Tuple[NodeSet, PPSNCertificate]:
    """Glue a curve node set onto a (possibly reduced) complete intersection
    and certify the union along the curve omitting hypersurface t (1-based)."""
    if manifold.s != manifold.n:
        raise InputError("curve extension needs the 0-dimensional manifold (s = n)")
    profile = manifold.profile
    n = manifold.n
    M, L = profile.M, profile.L
    if not 1 <= t <= n:
        raise InputError(f"hypersurface index {t} out of range 1..{n}")
    k_t = profile.ks[t - 1]
    if len(full) != profile.N:
        raise CountMismatchError(
            f"expected the full {profile.N}-point intersection, got {len(full)}"
        )
    manifold.require_on_manifold(full.points)
    if m >= 0:
        if m > L - 1:
            raise InputError(f"degree m={m} exceeds L-1={L - 1}")
        full_set = set(full.points)
        for q in b:
            if q not in full_set:
                raise InputError("B must be a subset of the intersection points")
        b_cert = verify_ppsn(b, None, m)
        if not b_cert.proper:
            raise ImproperNodeSetError(b_cert, "B is not an ambient PPSN")
    elif len(b):
        raise InputError("negative m requires an empty B")
    curve = Manifold(
        [p for i, p in enumerate(manifold.polynomials) if i != t - 1],
        witnesses=(manifold.polynomials[t - 1],),
    )
    if not a_t.is_disjoint(full):
        raise HypothesisError("curve node set must be disjoint from the intersection")
    a_degree = M - m - k_t - 1
    a_cert = verify_ppsn(a_t, curve, a_degree)
    if not a_cert.proper:
        raise ImproperNodeSetError(
            a_cert, f"curve node set is not a degree-{a_degree} PPSN"
        )
    out_degree = M - m - 1
    remaining = full.difference(b) if len(b) else full
    union = NodeSet(a_t.points + remaining.points, curve)
    expected = dim_along(out_degree, curve.profile)
    if len(union) != expected:
        raise CountMismatchError(
            f"union has {len(union)} points, expected {expected} at degree {out_degree}"
        )
    cert = verify_ppsn(union, curve, out_degree)
    if not cert.proper:
        raise ImproperNodeSetError(cert, "extended curve set is improper")
    return union, cert


# -- curve chains ----------------------------------------------------------------


@dataclass(frozen=True)
class ChainEntry:
    degree: int
    nodes: NodeSet
    certificate: PPSNCertificate


@dataclass(frozen=True)
class CurveChain:
    curve: Manifold
    entries: Tuple[ChainEntry, ...]

    def at(self, degree: int) -> ChainEntry:
        for e in self.entries:
            if e.degree == degree:
                return e
        raise KeyError(degree)


def _curve_lines(
    system: FactorableSystem, t: int
) -> List[Tuple[Point, Point]]:
    """Rational parametrizations (base, direction) of every line making up
    the curve that omits hypersurface t."""
    n = system.n
    from .nodes import _linear_parts

    choices = [fs for i, fs in enumerate(system.factors) if i != t - 1]
    lines: List[Tuple[Point, Point]] = []
    for combo in itertools.product(*[range(len(fs)) for fs in choices]):
        forms = [choices[i][j] for i, j in enumerate(combo)]
        rows, rhs = [], []
        for form in forms:
            coeffs, const = _linear_parts(form)
            rows.append(coeffs)
            rhs.append(-const)
        kernel = linalg.nullspace(rows)
        if len(kernel) != 1:
            raise InsufficientIntersectionError(
                "a curve component is not a line: parallel or dependent forms"
            )
        base = linalg.solve(rows, rhs)
        if base is None:
            raise InsufficientIntersectionError("empty curve component")
        lines.append((tuple(base), tuple(kernel[0])))
    return lines


def _fresh_curve_ppsn(
    system: FactorableSystem,
    t: int,
    curve: Manifold,
    degree: int,
    avoid: NodeSet,
) -> NodeSet:
    """A properly posed degree-`degree` node set on the curve, off the
    omitted hypersurface and away from `avoid`, built greedily from a
    deterministic stream of rational points on the curve's lines."""
    f_t = system.polynomials[t - 1]
    target = dim_along(degree, curve.profile)
    columns = canonical_monomials(curve, curve.n, degree)[:target]
    tracker = linalg.IncrementalRank(len(columns))
    chosen: List[Point] = []
    avoid_set = set(avoid.points)
    lines = _curve_lines(system, t)
    max_rounds = 8 * target + 16
    for round_no in range(max_rounds):
        if tracker.rank == target:
            break
        for base, direction in lines:
            pt = tuple(b + round_no * d for b, d in zip(base, direction))
            if pt in avoid_set or pt in chosen:
                continue
            if f_t.evaluate(pt) == 0:
                continue
            row = evaluation_matrix([pt], columns)[0]
            if tracker.add(row):
                chosen.append(pt)
            if tracker.rank == target:
                break
    if tracker.rank != target:
        raise InsufficientIntersectionError(
            f"could not assemble a degree-{degree} node set on the curve"
        )
    return NodeSet(chosen, curve)


def build_curve_chain(
    system: FactorableSystem, t: int, mmax: int, x0: Sequence
) -> CurveChain:
    """PPSNs of every degree 0..mmax along the curve omitting hypersurface t.

    The supplied point x0 (on the curve, off the omitted hypersurface)
    replaces any limiting argument: downward extraction handles degrees
    below the omitted degree, superposition with fresh curve points handles
    degrees above it.
    """
    report = intersect_factorable(system)
    if not report.sufficient:
        raise InsufficientIntersectionError(
            "system is not a sufficient intersection: " + "; ".join(report.failures)
        )
    full = report.nodes
    s0 = full.manifold
    curve = system.curve_manifold(t)
    f_t = system.polynomials[t - 1]
    k_t = system.degrees[t - 1]
    x0_pt = as_point(x0)
    if not curve.contains(x0_pt):
        raise InputError("x0 does not lie on the curve")
    if f_t.evaluate(x0_pt) == 0:
        raise InputError("x0 lies on the omitted hypersurface")
    if x0_pt in full:
        raise InputError("x0 coincides with an intersection point")

    # anchor level: the extracted degree-k_t set on the points, plus x0;
    # x0 goes first so the degree-0 extraction lands exactly on it
    anchor = extract_nested_ppsn(full, s0, k_t)
    anchor_nodes = NodeSet((x0_pt,) + anchor.points, curve)
    entries: Dict[int, ChainEntry] = {}
    cert = verify_ppsn(anchor_nodes, curve, k_t)
    if not cert.proper:
        raise ImproperNodeSetError(cert, "anchor level is improper")
    if k_t <= mmax:
        entries[k_t] = ChainEntry(k_t, anchor_nodes, cert)

    # downward: nested greedy restriction over the curve's canonical columns
    columns = canonical_monomials(curve, curve.n, k_t)
    matrix = evaluation_matrix(anchor_nodes.points, columns)
    selected = list(range(len(anchor_nodes)))
    for d in range(k_t - 1, -1, -1):
        target = dim_along(d, curve.profile)
        tracker = linalg.IncrementalRank(target)
        keep: List[int] = []
        for r in selected:
            if tracker.add(matrix[r][:target]):
                keep.append(r)
            if tracker.rank == target:
                break
        if tracker.rank != target:
            raise InsufficientIntersectionError(
                f"downward extraction stalled at degree {d}"
            )
        selected = keep
        if d <= mmax:
            nodes_d = NodeSet([anchor_nodes.points[r] for r in selected], curve)
            cert_d = verify_ppsn(nodes_d, curve, d)
            if not cert_d.proper:
                raise ImproperNodeSetError(cert_d, f"degree-{d} chain level improper")
            entries[d] = ChainEntry(d, nodes_d, cert_d)

    # upward: superpose extracted point-set levels with fresh curve points
    reordered = Manifold(
        [p for i, p in enumerate(system.polynomials) if i != t - 1] + [f_t]
    )
    for d in range(k_t + 1, mmax + 1):
        sub = extract_nested_ppsn(full, s0, d)
        sub = NodeSet(sub.points, reordered)
        fresh = _fresh_curve_ppsn(system, t, curve, d - k_t, avoid=full)
        union, cert_d = superpose_nodes(
            SuperpositionStep(
                sub_manifold=reordered,
                sub_nodes=sub,
                super_nodes=fresh,
                m=d,
            )
        )
        union = NodeSet(union.points, curve)
        entries[d] = ChainEntry(d, union, cert_d)

    ordered = tuple(entries[d] for d in sorted(entries) if d <= mmax)
    return CurveChain(curve=curve, entries=ordered)
