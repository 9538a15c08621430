from collections import Counter
from fractions import Fraction

import pytest

from network_spectra.errors import NotAPolygonVertex, StrandNotOnEdgeFamily, TooManyEdges
from network_spectra.fixtures import build
from network_spectra.forests import (
    boundary_point_counts,
    dual_pair_hull,
    enumerate_dual_pairs,
    enumerate_ocrsfs,
    external_ocrsf,
    extremal_ocrsf,
    extremal_table,
    pfnlap_sum,
    polygon_edge_families,
)
from network_spectra.graph_core import random_rational_conductances
from network_spectra.laplacian import build_laplacian, charpoly
from network_spectra.zigzag import zigzag_polygon


def test_sq1_ocrsfs():
    g, _ = build("sq1")
    forests = enumerate_ocrsfs(g)
    assert len(forests) == 4
    assert sorted(f.homology() for f in forests) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_hex1_ocrsfs():
    g, _ = build("hex1")
    forests = enumerate_ocrsfs(g)
    assert len(forests) == 6
    assert sorted(f.homology() for f in forests) == [
        (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0),
    ]


def test_tri2_ocrsf_count():
    # 4 double-loop + 12 two-cycle + 16 tree-decorated orientations (frozen count)
    g, _ = build("tri2")
    assert len(enumerate_ocrsfs(g)) == 32


def test_component_balance():
    g, _ = build("tri2")
    for f in enumerate_ocrsfs(g):
        assert len(f.edges) == g.n_vertices
        out = f.out_darts(g)
        assert sorted(out) == list(range(g.n_vertices))


def test_enumeration_bound():
    g, _ = build("tri2")
    with pytest.raises(TooManyEdges):
        enumerate_ocrsfs(g, max_edges=3)
    with pytest.raises(TooManyEdges):
        pfnlap_sum(g, {e.id: Fraction(1) for e in g.edges}, max_edges=3)


def test_pfnlap_sq1_unit():
    g, c = build("sq1")
    from network_spectra.laurent import LaurentPoly2

    assert pfnlap_sum(g, c) == LaurentPoly2(
        {(0, 0): 4, (1, 0): -1, (-1, 0): -1, (0, 1): -1, (0, -1): -1}
    )


def test_pfnlap_equals_charpoly_unit(any_network):
    g, c = any_network
    assert pfnlap_sum(g, c) == charpoly(build_laplacian(g, c))


def test_pfnlap_equals_charpoly_random(any_network, rng):
    g, _ = any_network
    for _ in range(20):
        c = random_rational_conductances(g, rng, positive=False)
        assert pfnlap_sum(g, c) == charpoly(build_laplacian(g, c))


def test_sq1_dual_pairs():
    g, _ = build("sq1")
    pairs = enumerate_dual_pairs(g)
    assert len(pairs) == 8
    classes = Counter(p.cls for p in pairs)
    assert classes == Counter(
        {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1, (0, 0): 4}
    )
    # primal (1,0)-loop pairs with dual cycles of class +-(1,0)
    for p in pairs:
        if p.primal.cycle_classes == ((1, 0),):
            assert p.dual.cycle_classes in (((1, 0),), ((-1, 0),))


def test_dual_pair_hull_matches(any_network):
    g, c = any_network
    assert dual_pair_hull(g) == zigzag_polygon(g)
    assert dual_pair_hull(g) == charpoly(build_laplacian(g, c)).newton_polygon()


def test_dual_cycles_parallel(any_network):
    g, _ = any_network
    for p in enumerate_dual_pairs(g):
        classes = [h for h in p.primal.cycle_classes + p.dual.cycle_classes]
        nonzero = [h for h in classes if h != (0, 0)]
        for a in nonzero:
            for b in nonzero:
                assert a[0] * b[1] - a[1] * b[0] == 0


def test_extremal_unique_per_polygon_vertex(any_network):
    g, _ = any_network
    table = extremal_table(g)
    counts = Counter(f.homology() for f in enumerate_ocrsfs(g))
    for v, forest in table.items():
        assert counts[v] == 1
        assert forest.is_union_of_cycles()
        assert forest.homology() == v


def test_extremal_sq1():
    g, _ = build("sq1")
    forest = extremal_ocrsf(g, (1, 0))
    assert forest.edges == frozenset({0})
    assert forest.cycle_classes == ((1, 0),)


def test_extremal_hex1():
    g, _ = build("hex1")
    forest = extremal_ocrsf(g, (1, 0))
    assert forest.edges == frozenset({0, 1})
    assert forest.homology() == (1, 0)


def test_extremal_rejects_non_vertex():
    g, _ = build("tri2")
    with pytest.raises(NotAPolygonVertex):
        extremal_ocrsf(g, (5, 5))
    with pytest.raises(NotAPolygonVertex):
        extremal_ocrsf(g, (1, 1))  # boundary point but not a vertex


def test_external_empty_subset_is_extremal():
    g, _ = build("sq1")
    fam = next(f for f in polygon_edge_families(g) if f["v1"] == (1, 0))
    forest = external_ocrsf(g, (fam["v1"], fam["v2"]), [])
    assert forest.homology() == (1, 0)


def test_external_single_strand_moves_to_next_vertex():
    g, _ = build("sq1")
    fam = next(f for f in polygon_edge_families(g) if f["v1"] == (1, 0) and f["v2"] == (0, 1))
    forest = external_ocrsf(g, (fam["v1"], fam["v2"]), fam["strands"])
    assert forest.homology() == (0, 1)
    assert forest.edges == frozenset({1})  # the (0,1) loop


def test_external_full_family_identity(any_network):
    g, _ = any_network
    for fam in polygon_edge_families(g):
        edge = (fam["v1"], fam["v2"])
        assert external_ocrsf(g, edge, []).homology() == fam["v1"]
        assert external_ocrsf(g, edge, fam["strands"]).homology() == fam["v2"]
        for k in range(len(fam["strands"]) + 1):
            f = external_ocrsf(g, edge, fam["strands"][:k])
            assert f.is_union_of_cycles()
            out = f.out_darts(g)
            indeg = Counter(g.head_of(d) for d in out.values())
            assert all(indeg[v] == 1 for v in range(g.n_vertices))


def test_external_rejects_wrong_strand():
    g, _ = build("tri2")
    fams = polygon_edge_families(g)
    fam = fams[0]
    other = next(f for f in fams if f["primitive"] != fam["primitive"])
    with pytest.raises(StrandNotOnEdgeFamily):
        external_ocrsf(g, (fam["v1"], fam["v2"]), other["strands"][:1])


def test_boundary_counts_binomial(any_network):
    g, _ = any_network
    counts, expected = boundary_point_counts(g)
    assert counts == expected


def test_tri2_interior_edge_point_count_two():
    # the vertical boundary edges of tri2 have lattice length 2: C(2,1) = 2
    g, _ = build("tri2")
    counts, _ = boundary_point_counts(g)
    assert counts[(1, 1)] == 2
    assert counts[(-1, -1)] == 2


def test_weights_product_of_conductances(rng):
    g, _ = build("hex1")
    c = random_rational_conductances(g, rng)
    for f in enumerate_ocrsfs(g):
        expected = Fraction(1)
        for e in f.edges:
            expected *= c[e]
        assert f.weight(c) == expected
