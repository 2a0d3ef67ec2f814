from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracles
from tubex import complex_core as cc
from tubex import delta_graph as dg
from tubex import families as fam
from tubex.delta_graph import DeltaGraph, FVector
from tubex.errors import CapacityError, InputError, MalformedFileError, PreconditionError


def ygraph() -> DeltaGraph:
    return DeltaGraph.from_edges(cc.hypercube(3), [(1, 2), (2, 3), (2, -3)])


def label_sets(g, masks):
    return {frozenset(g.labels_of(m)) for m in masks}


def test_ygraph_tubes():
    g = ygraph()
    got = label_sets(g, g.tubes())
    assert len(got) == 11
    for t in ({1, 2}, {2, 3}, {2, -3}, {1, 2, 3}, {1, 2, -3}):
        assert frozenset(t) in got


def test_small_tube_counts():
    assert len(DeltaGraph.from_edges(cc.hypercube(2), [(1, 2)]).tubes()) == 5
    for n in range(4):
        assert len(fam.build("empty", n).tubes()) == 2 * n


def test_compatibility_examples():
    g = fam.build("pell", 2)
    assert dg.is_compatible(g, g.mask([1]), g.mask([2]))
    assert not dg.is_compatible(g, g.mask([1]), g.mask([-2]))
    assert not dg.is_compatible(g, g.mask([1]), g.mask([-1]))
    with pytest.raises(PreconditionError):
        dg.is_compatible(g, g.mask([1, 2]), g.mask([1]))


def test_tubing_examples():
    p = fam.build("path-plus", 2)
    assert dg.is_tubing(p, [p.mask([1]), p.mask([1, 2])])
    assert not dg.is_tubing(p, [p.mask([1]), p.mask([-1])])
    y = ygraph()
    assert not dg.is_tubing(y, [y.mask([1, 2]), y.mask([2, 3])])


def test_fvector_examples():
    assert dg.fvector(fam.build("path-plus", 2)).complex() == (1, 5, 5)
    assert dg.fvector(fam.build("full", 2)).complex() == (1, 8, 8)
    assert dg.fvector(fam.build("empty", 2)).complex() == (1, 4, 4)


def test_maximal_count_examples():
    assert dg.maximal_tubing_count(fam.build("pell", 2)) == 5
    assert dg.maximal_tubing_count(fam.build("twisted-cycle", 2)) == 8
    assert dg.maximal_tubing_count(fam.build("double-star", 3)) == 20


def test_fvector_conventions():
    f = FVector.from_complex([1, 5, 5], 2)
    assert f.polyhedron() == (5, 5, 1)
    assert f.to("polyhedron").complex() == (1, 5, 5)
    assert f.vertices == 5
    # deletion keeps the nominal dimension, so the polyhedron vector is padded
    h = FVector.from_complex([1, 2], 2)
    assert h.polyhedron() == (0, 2, 1)
    with pytest.raises(InputError):
        FVector((1, 2, 3), 1)


def test_induced_simplex_graph():
    y = ygraph()
    path = dg.induced_simplex_graph(y, y.mask([1, 2, 3]))
    assert dg.fvector(path).polyhedron() == dg.fvector(fam.build("simplex-path", 3)).polyhedron()
    assert dg.induced_simplex_graph(y, y.mask([1])).size == 0
    star = dg.induced_simplex_graph(y, y.mask([1, 2, -3]))
    assert sorted(star.edges()) == [(0, 1), (1, 2)]


def test_reconnected_complement_examples():
    y = ygraph()
    rc = dg.reconnected_complement(y, y.mask([2, 3]))
    assert set(rc.ground.labels) == {1, -1} and rc.edges() == []
    h = fam.build("cycle-plus", 5)
    rc = dg.reconnected_complement(h, h.mask([1, 2]))
    assert set(rc.ground.labels) == {3, 4, 5, -3, -4, -5}
    assert {frozenset(e) for e in rc.edge_labels()} == {frozenset(e) for e in [(3, 4), (4, 5), (3, 5)]}
    for n in range(2, 5):
        h = fam.build("cycle-plus", n)
        rc = dg.reconnected_complement(h, h.mask([-1]))
        assert dg.fvector(rc).polyhedron() == dg.fvector(fam.build("path-plus", n - 1)).polyhedron()


def test_neighborless_complement_examples():
    h = fam.build("cycle-plus", 5)
    nc = dg.neighborless_complement(h, h.mask([1, 2]))
    assert set(nc.ground.labels) == {-3, -5, 4, -4}
    assert nc.edges() == []
    h3 = fam.build("cycle-plus", 3)
    assert dg.neighborless_complement(h3, h3.mask([1, 2])).size == 1
    e = fam.build("empty", 2)
    t = e.mask([1])
    assert dg.neighborless_complement(e, t) == dg.reconnected_complement(e, t)


def test_graphic_building_set():
    p = fam.build("path-plus", 2)
    b = dg.graphic_building_set(p)
    assert b.label_sets() == {frozenset(s) for s in ({1}, {2}, {-1}, {-2}, {1, 2})}
    e = fam.build("empty", 2)
    assert all(len(s) == 1 for s in dg.graphic_building_set(e).label_sets())
    y = ygraph()
    closure = dg.building_set_closure(y.complex, [y.mask(list(e)) for e in y.edge_labels()])
    assert closure.label_sets() == label_sets(y, y.tubes())


def test_pseudolink_matches_reconnected_complement():
    y = ygraph()
    t = y.mask([2, 3])
    pl = dg.building_set_pseudolink(dg.graphic_building_set(y), t)
    rc = dg.reconnected_complement(y, t)
    assert pl.label_sets() == dg.graphic_building_set(rc).label_sets()
    sp = fam.build("simplex-path", 3)
    t = sp.mask([2])
    pl = dg.building_set_pseudolink(dg.graphic_building_set(sp), t)
    assert pl.label_sets() == dg.graphic_building_set(dg.reconnected_complement(sp, t)).label_sets()


def test_pseudolink_of_maximal_face_is_empty():
    p = fam.build("path-plus", 2)
    pl = dg.building_set_pseudolink(dg.graphic_building_set(p), p.mask([1, 2]))
    assert pl.complex.size == 0 and not pl.sets


def test_nested_sets_are_tubings():
    for name in ("path-plus", "cycle-plus", "pell"):
        g = fam.build(name, 3)
        b = dg.graphic_building_set(g)
        nested = {frozenset(n) for n in dg.iter_nested_sets(b)}
        assert nested == {frozenset(t) for t in dg.iter_tubings(g)}


def test_link_decomposition_examples():
    for n in range(1, 4):
        g = fam.build("path-plus", n)
        assert all(dg.link_decomposition_check(g, t) for t in g.tubes())
    for n in range(1, 5):
        g = fam.build("cycle-plus", n)
        assert all(dg.link_decomposition_check(g, t) for t in g.tubes())
    seg = fam.build("empty", 1)
    assert dg.link_product_counts(seg, seg.mask([1])) == [1]


def test_kingmaker_examples():
    h = fam.build("cycle-plus", 3)
    res = dg.kingmaker_check(h, h.mask([1, -1]))
    assert res.valid and res.matches
    assert res.decomposed.complex() == (1, 10, 24, 16)
    d = fam.build("double-path", 2)
    res = dg.kingmaker_check(d, d.mask([1, -1]))
    assert res.valid and res.decomposed.polyhedron() == (6, 6, 1)


def test_non_kingmaker_has_witness():
    p = fam.build("path-plus", 3)
    res = dg.kingmaker_check(p, p.mask([1, 3]))
    assert not res.valid
    a, b = res.witness
    assert dg.is_compatible(p, a, b) and a & b == 0


def test_subtree_examples():
    g = dg.subtree_delta_graph(fam.cycle_edges(4))
    assert g.size == 4 and g.complex.circuits == (g.ground.full,)
    assert len(g.edges()) == 4
    tri = dg.subtree_delta_graph(fam.cycle_edges(3))
    assert tri.complex.circuits == (0b111,) and len(tri.edges()) == 3
    tree = dg.subtree_delta_graph(fam.star_edges(4))
    assert tree.complex.circuits == ()


def test_edge_must_be_face():
    with pytest.raises(InputError):
        DeltaGraph.from_edges(cc.hypercube(1), [(1, -1)])


def test_capacity_error():
    with pytest.raises(CapacityError):
        dg.fvector(fam.build("full", 8))


def test_json_round_trip_and_errors():
    y = ygraph()
    back = dg.graph_from_json(dg.graph_to_json(y))
    assert back.edges() == y.edges() and back.complex == y.complex
    g = dg.graph_from_json({"hypercube": 3, "edges": [[1, 2], [2, 3], [2, -3]]})
    assert g.edges() == y.edges()
    with pytest.raises(MalformedFileError):
        dg.graph_from_json({"edges": []})
    with pytest.raises(MalformedFileError):
        dg.graph_from_json({"hypercube": 2, "edges": [[1]]})


def test_threads_do_not_change_counts():
    g = fam.build("cycle-plus", 4)
    assert dg.tubing_counts(g, threads=4) == dg.tubing_counts(g, threads=1)


# -- properties against the brute-force oracle ----------------------------

graphs = st.one_of(oracles.hypercube_graphs(3), oracles.simplex_graphs(5))


@given(graphs)
def test_tubes_match_oracle(g):
    assert label_sets(g, g.tubes()) == oracles.tubes(g)


@given(oracles.hypercube_graphs(2) | oracles.simplex_graphs(4))
def test_tubings_match_oracle(g):
    got = {frozenset(frozenset(g.labels_of(t)) for t in tb) for tb in dg.iter_tubings(g)}
    assert got == set(oracles.tubings(g))
    assert dg.tubing_counts(g) == oracles.tubing_counts(g)
    assert dg.maximal_tubing_count(g) == oracles.maximal_count(g)


@given(graphs)
def test_mirror_conventions(g):
    f = dg.fvector(g)
    assert f.complex()[0] == 1
    padded = list(f.polyhedron())
    assert list(reversed(padded))[: len(f.complex())] == list(f.complex())


@given(graphs)
def test_atomic_link_sum(g):
    total = [0]
    for t in g.tubes():
        total = dg.poly_add(total, dg.tube_link_counts(g, t))
    assert dg.poly_trim(total) == dg.poly_derivative(dg.f_polynomial(g))


@given(graphs)
def test_facet_products(g):
    for t in g.tubes():
        assert dg.link_decomposition_check(g, t)


@given(graphs, st.data())
def test_singletons_are_kingmakers(g, data):
    i = data.draw(st.integers(0, g.size - 1))
    res = dg.kingmaker_check(g, 1 << i)
    assert res.valid and res.matches


@given(oracles.hypercube_graphs(3), st.data())
def test_permutation_invariance(g, data):
    perm = data.draw(st.permutations(range(g.size)))
    assert dg.fvector(dg.permute(g, perm)).complex() == dg.fvector(g).complex()


@given(oracles.hypercube_graphs(3))
def test_hypercube_graphs_are_flag(g):
    # pairwise compatible tubes always form a tubing on hypercube graphs
    assert g.complex.is_flag()
    tubes = g.tubes()
    for a in tubes:
        for b in tubes:
            if dg.is_compatible(g, a, b):
                assert dg.is_tubing(g, [a, b])
