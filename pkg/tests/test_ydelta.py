import json
from fractions import Fraction

import pytest

from network_spectra.errors import (
    BadDegree,
    IsomorphismMismatch,
    LoopAtVertex,
    NotATriangle,
    SingularDenominator,
)
from network_spectra.fixtures import build, fixture_path
from network_spectra.graph_core import Edge, TorusGraph, isomorphic, random_rational_conductances
from network_spectra.laplacian import build_laplacian, charpoly
from network_spectra.ydelta import (
    Move,
    MoveProgram,
    cube_recurrence_program,
    delta_to_y,
    discrete_abel,
    invariance_check,
    run_program,
    y_to_delta,
)
from network_spectra.zigzag import zigzag_polygon


def star_triangle(a, b, c):
    s = a + b + c
    return (b * c / s, a * c / s, a * b / s)


def triangle_star(A, B, C):
    s = A * B + B * C + C * A
    return (s / A, s / B, s / C)


def test_formula_1_2_3():
    assert star_triangle(Fraction(1), Fraction(2), Fraction(3)) == (
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 3),
    )


def test_formula_symmetric():
    third = Fraction(1, 3)
    assert star_triangle(Fraction(1), Fraction(1), Fraction(1)) == (third, third, third)
    assert triangle_star(third, third, third) == (1, 1, 1)


def test_formula_inverse():
    assert triangle_star(Fraction(1), Fraction(1, 2), Fraction(1, 3)) == (1, 2, 3)


def test_round_trip_random_exact(rng):
    for _ in range(20):
        a, b, c = (Fraction(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(3))
        assert triangle_star(*star_triangle(a, b, c)) == (a, b, c)


def test_hex1_y2d_structure():
    g, _ = build("hex1")
    c = {0: Fraction(1), 1: Fraction(2), 2: Fraction(3)}
    g2, c2, info = y_to_delta(g, c, 0)
    assert (g2.n_vertices, g2.n_edges) == (1, 3)
    assert g2.validate().ok
    # loop displacements are the leg displacement differences
    assert sorted(g2.edges[e].disp for e in info.new_edges) == [(-1, 1), (0, -1), (1, 0)]
    # the edge opposite leg k gets the product of the other two legs over the sum
    assert c2[info.new_edges[0]] == Fraction(1)      # bc/(a+b+c) = 6/6
    assert c2[info.new_edges[1]] == Fraction(1, 2)   # ac/(a+b+c)
    assert c2[info.new_edges[2]] == Fraction(1, 3)   # ab/(a+b+c)
    t1, _ = build("tri1")
    assert isomorphic(g2, t1)


def test_y2d_bad_degree():
    g, c = build("tri2")
    with pytest.raises(BadDegree):
        y_to_delta(g, c, 0)


def test_y2d_loop_at_vertex():
    # degree-3 vertex whose star contains a loop (structural check only)
    edges = [
        Edge(0, 0, 0, (1, 0)),  # loop at v0
        Edge(1, 0, 1, (0, 1)),
        Edge(2, 1, 1, (1, 0)),
    ]
    g = TorusGraph(2, edges, {0: (0, 1, 2), 1: (3, 4, 5)}, check=False)
    c = {e.id: Fraction(1) for e in edges}
    with pytest.raises(LoopAtVertex):
        y_to_delta(g, c, 0)


def test_y2d_singular_denominator():
    g, _ = build("hex1")
    c = {0: Fraction(1), 1: Fraction(1), 2: Fraction(-2)}
    with pytest.raises(SingularDenominator):
        y_to_delta(g, c, 0)


def test_d2y_not_a_triangle():
    g, c = build("sq2")  # square faces
    with pytest.raises(NotATriangle):
        delta_to_y(g, c, 0)


def test_d2y_round_trip_tri1():
    g, c = build("tri1")
    g2, c2, info = delta_to_y(g, c, 0)
    assert g2.validate().ok
    h, _ = build("hex1")
    assert isomorphic(g2, h)
    g3, c3, _ = y_to_delta(g2, c2, info.new_vertex)
    assert isomorphic(g3, g)
    assert sorted(c3.values()) == sorted(c.values())


def test_invariance_hex1_unit():
    g, c = build("hex1")
    rep = invariance_check(g, c, "y2d", 0)
    assert rep.factor == 3
    assert rep.exact
    assert rep.polygon_equal
    # P2 = P1 / 3 exactly
    third = Fraction(1, 3)
    assert rep.p_after == third * rep.p_before


def test_invariance_random_draws(rng):
    g, _ = build("hex1")
    for v in (0, 1):
        for _ in range(20):
            c = random_rational_conductances(g, rng)
            rep = invariance_check(g, c, "y2d", v)
            assert rep.exact and rep.polygon_equal


def test_invariance_d2y_tri2(rng):
    g, _ = build("tri2")
    for f in range(g.n_faces):
        for _ in range(5):
            c = random_rational_conductances(g, rng)
            rep = invariance_check(g, c, "d2y", f)
            assert rep.exact and rep.polygon_equal


def test_trivial_program_conserves():
    g, c = build("hex1")
    prog = MoveProgram([], {v: v for v in range(g.n_vertices)}, {e.id: e.id for e in g.edges})
    rep = run_program(g, c, prog, 5)
    assert rep.conserved_constant
    assert all(step.conductances == rep.steps[0].conductances for step in rep.steps)


def test_hex1_star_triangle_star_program(rng):
    # y2d at a vertex, then d2y at the created triangle face, relabeled back
    g, _ = build("hex1")
    c = random_rational_conductances(g, rng)
    g2, c2, info = y_to_delta(g, c, 0)
    tri_face = next(
        f
        for f in range(g2.n_faces)
        if {g2.edge_of(d) for d in g2.faces[f]} == set(info.new_edges)
        and len(g2.faces[f]) == 3
    )
    g3, c3, info3 = delta_to_y(g2, c2, tri_face)
    from network_spectra.graph_core import find_isomorphism

    res = find_isomorphism(g3, g)
    assert res is not None
    vmap, dart_map, _ = res
    emap = {e.id: g.edge_of(dart_map[2 * e.id]) for e in g3.edges}
    prog = MoveProgram([Move("y2d", 0), Move("d2y", tri_face)], vmap, emap)
    rep = run_program(g, c, prog, 6)
    assert rep.conserved_constant
    assert rep.strand_classes_preserved


def test_program_json_round_trip():
    prog = MoveProgram.load(fixture_path("tri2_cube_program"))
    assert MoveProgram.from_json(prog.to_json()).to_json() == prog.to_json()


def test_cube_recurrence_program_runs(rng):
    g, _ = build("tri2")
    prog = cube_recurrence_program(g)
    assert [m.op for m in prog.moves] == ["d2y", "d2y", "y2d", "y2d"]
    c = random_rational_conductances(g, rng)
    rep = run_program(g, c, prog, 3)
    assert rep.conserved_constant
    assert rep.strand_classes_preserved
    # the orbit genuinely moves
    assert rep.steps[1].conductances != rep.steps[0].conductances


def test_bad_iso_rejected():
    g, c = build("hex1")
    prog = MoveProgram([], {0: 0, 1: 1}, {0: 1, 1: 0, 2: 2})  # swaps parallel edges
    # swapping edges 0 and 1 changes displacements by a non-coboundary
    with pytest.raises(IsomorphismMismatch):
        run_program(g, c, prog, 1)


def test_singular_step_reported():
    g, _ = build("hex1")
    c = {0: Fraction(1), 1: Fraction(1), 2: Fraction(-2)}
    prog_data = {
        "moves": [{"op": "y2d", "vertex": 0}],
        "iso": {"vertices": {}, "edges": {}},
    }
    # structural pass fails before any step because a+b+c = 0 at build time
    with pytest.raises(SingularDenominator):
        run_program(g, c, MoveProgram.from_json(prog_data), 1)


# -- discrete Abel map -------------------------------------------------------


def test_abel_base_is_zero(any_network):
    g, _ = any_network
    chart = discrete_abel(g, ("vertex", 0), ((-1, 1), (-1, 1)))
    assert chart.value("vertex", 0, (0, 0)) == tuple([0] * len(chart.strand_classes))


def test_abel_path_independent_and_equivariant(any_network):
    g, _ = any_network
    chart = discrete_abel(g, ("vertex", 0), ((-1, 1), (-1, 1)))  # raises on defects
    for h in ((1, 0), (0, 1), (1, 1), (-1, 1)):
        assert chart.check_equivariance(h)


def test_abel_equivariance_explicit_sq1():
    g, _ = build("sq1")
    chart = discrete_abel(g, ("vertex", 0), ((-1, 1), (-1, 1)))
    v0 = chart.value("vertex", 0, (0, 0))
    v1 = chart.value("vertex", 0, (1, 0))
    emb = chart.embedding((1, 0))
    assert tuple(a + b for a, b in zip(v0, emb)) == v1


def test_abel_face_loop_returns_home():
    # transporting around each face is a closed loop; the built-in consistency
    # sweep would raise PathDependence if any loop failed to close
    g, _ = build("hex1")
    chart = discrete_abel(g, ("vertex", 0), ((0, 0), (0, 0)))
    assert ("face", 0, (0, 0)) in chart.entries or len(chart.entries) >= 1
