from fractions import Fraction

import pytest

from ppsn import (
    CountMismatchError,
    FactorableSystem,
    InputError,
    Manifold,
    NodeSet,
    OffManifoldError,
    binom_e,
    dim_along,
    evaluation_matrix,
    extract_nested_ppsn,
    format_nodes,
    intersect_factorable,
    monomial_basis,
    parse_nodes_text,
    parse_polynomial,
    parse_system_text,
    vandermonde,
    verify_ppsn,
)

F = Fraction


def pts(*coords):
    return [tuple(F(c) for c in p) for p in coords]


def test_node_set_rejects_duplicates_and_off_manifold(circle):
    with pytest.raises(InputError):
        NodeSet(pts((0, 0), (0, 0)))
    with pytest.raises(OffManifoldError):
        NodeSet(pts((0, 0)), circle)


def test_node_set_operations():
    a = NodeSet(pts((0, 0), (1, 0)))
    b = NodeSet(pts((0, 1)))
    assert len(a.union(b)) == 3
    assert a.difference(NodeSet(pts((1, 0)))).points == (pts((0, 0))[0],)
    assert a.is_disjoint(b)
    assert (F(1), F(0)) in a


def test_vandermonde_shape_and_values():
    nodes = NodeSet(pts((0, 0), (1, 0), (0, 1)))
    basis = monomial_basis(2, 1)
    v = vandermonde(nodes, basis)
    assert v == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]


def test_evaluation_matrix_single_monomial():
    m = evaluation_matrix(pts((2, 3)), [(1, 1)])
    assert m == [[6]]


def test_verify_ambient_triangle_proper():
    nodes = NodeSet(pts((0, 0), (1, 0), (0, 1)))
    cert = verify_ppsn(nodes, None, 1)
    assert cert.proper
    assert cert.expected_count == 3
    assert cert.verdict == "proper"


def test_verify_ambient_collinear_improper_with_kernel():
    nodes = NodeSet(pts((0, 0), (1, 1), (2, 2)))
    cert = verify_ppsn(nodes, None, 1)
    assert not cert.proper
    # the kernel functional annihilates every degree-1 monomial column
    matrix = evaluation_matrix(nodes.points, list(monomial_basis(2, 1)))
    for j in range(3):
        assert sum(cert.kernel_functional[i] * matrix[i][j] for i in range(3)) == 0


def test_verify_count_mismatch():
    nodes = NodeSet(pts((0, 0), (1, 0)))
    with pytest.raises(CountMismatchError):
        verify_ppsn(nodes, None, 1)


def test_verify_along_line(line_manifold):
    for m in range(6):
        nodes = NodeSet(pts(*[(i, 0) for i in range(m + 1)]), line_manifold)
        assert verify_ppsn(nodes, line_manifold, m).proper


def test_verify_trivial_negative_degree():
    cert = verify_ppsn(NodeSet([]), None, -1)
    assert cert.proper
    assert cert.expected_count == 0


def test_parse_nodes_round_trip():
    text = "# corner points\n0,0\n1/2, -3\n"
    nodes = parse_nodes_text(text)
    assert nodes.points == (tuple([F(0), F(0)]), tuple([F(1, 2), F(-3)]))
    assert parse_nodes_text(format_nodes(nodes)).points == nodes.points


def test_parse_nodes_errors():
    with pytest.raises(InputError):
        parse_nodes_text("0,0\n1\n")  # inconsistent arity
    with pytest.raises(InputError):
        parse_nodes_text("a,b\n")


def test_parse_system_grid(grid_system):
    assert grid_system.n == 2
    assert grid_system.degrees == (3, 3)
    assert all(f.degree == 3 for f in grid_system.polynomials)


def test_parse_system_rejects_nonlinear_factor():
    with pytest.raises(InputError):
        parse_system_text("x1^2\nx2\n")
    with pytest.raises(InputError):
        parse_system_text("x1*(x1^2-1)\nx2\n")


def test_factorable_system_requires_square_shape():
    f = parse_polynomial("x1", 2)
    with pytest.raises(InputError):
        FactorableSystem([[f]])  # one hypersurface in dimension two


def test_intersect_grid(grid_system):
    report = intersect_factorable(grid_system)
    assert report.sufficient
    assert len(report.nodes) == 9
    expected = {(F(i), F(j)) for i in range(3) for j in range(3)}
    assert set(report.nodes.points) == expected


def test_intersect_cube(cube_system):
    report = intersect_factorable(cube_system)
    assert report.sufficient
    assert len(report.nodes) == 8


def test_intersect_parallel_forms_fail():
    report = intersect_factorable(parse_system_text("x1*(x1-1)\n(x1-2)*(x1-3)\n"))
    assert not report.sufficient
    assert report.failures


def test_intersect_coincident_points_fail():
    # both lines of the second hypersurface pass through the same x2 value
    report = intersect_factorable(parse_system_text("x1*(x1-1)\nx2*(2*x2)\n"))
    assert not report.sufficient


def test_extract_nested_grid(grid_system):
    report = intersect_factorable(grid_system)
    manifold = report.nodes.manifold
    previous = None
    for m in range(4):
        sub = extract_nested_ppsn(report.nodes, manifold, m)
        assert len(sub) == dim_along(m, manifold.profile)
        assert verify_ppsn(sub, manifold, m).proper
        if previous is not None:
            assert set(previous.points) <= set(sub.points)
        previous = sub


def test_extract_full_degree_returns_everything(grid_system):
    report = intersect_factorable(grid_system)
    manifold = report.nodes.manifold
    out = extract_nested_ppsn(report.nodes, manifold, manifold.profile.M)
    assert set(out.points) == set(report.nodes.points)


def test_curve_manifold_carries_witness(cube_system):
    curve = cube_system.curve_manifold(2)
    assert curve.s == 2
    assert curve.witnesses == (cube_system.polynomials[1],)


def test_ambient_expected_count_is_binomial():
    nodes = NodeSet(pts(*[(i, j) for i in range(3) for j in range(3 - i)]))
    cert = verify_ppsn(nodes, None, 2)
    assert cert.proper
    assert cert.expected_count == binom_e(2, 2) == 6
