from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from tubex import delta_graph as dg
from tubex import families as fam
from tubex import verify as v
from tubex.errors import InputError


def nx_tubing_complex(g):
    tubes = g.tubes()
    index = {t: i for i, t in enumerate(tubes)}
    G = nx.Graph()
    G.add_nodes_from((("t", i) for i in range(len(tubes))), kind="t")
    for k, face in enumerate(v.maximal_faces(g)):
        G.add_node(("f", k), kind="f")
        for t in face:
            G.add_edge(("f", k), ("t", index[t]))
    return G


def nx_iso(g1, g2) -> bool:
    return nx.is_isomorphic(nx_tubing_complex(g1), nx_tubing_complex(g2), node_match=lambda a, b: a["kind"] == b["kind"])


@settings(max_examples=40)
@given(oracles.hypercube_graphs(2), oracles.hypercube_graphs(2))
def test_certificate_agrees_with_networkx(g1, g2):
    same = v.tubing_complex_certificate(g1) == v.tubing_complex_certificate(g2)
    assert same == nx_iso(g1, g2)


@settings(max_examples=25)
@given(oracles.hypercube_graphs(3), st.data())
def test_certificate_is_relabelling_invariant(g, data):
    perm = data.draw(st.permutations(range(g.size)))
    h = dg.permute(g, perm)
    assert v.tubing_complex_certificate(g) == v.tubing_complex_certificate(h)
    assert v.delta_graph_certificate(g) == v.delta_graph_certificate(h)


def test_certificate_separates_known_pairs():
    dp3, cyc = fam.build("double-path", 3), fam.build("simplex-cycle", 4)
    assert dg.fvector(dp3).polyhedron() == dg.fvector(cyc).polyhedron()
    assert not v.face_lattice_isomorphic(dp3, cyc)
    assert nx_iso(fam.build("near-double-path", 3), cyc)
    assert v.face_lattice_isomorphic(fam.build("near-double-path", 3), cyc)


def test_atomic_link_sum_examples():
    r = v.check_atomic_link_sum(fam.build("path-plus", 2))
    assert r.status == v.PASS
    assert dg.poly_derivative(dg.f_polynomial(fam.build("path-plus", 2))) == [5, 10]
    assert v.check_atomic_link_sum(fam.build("empty", 1)).status == v.PASS
    assert v.check_atomic_link_sum(fam.build("cycle-plus", 3)).status == v.PASS


@pytest.mark.parametrize("name,n_max", [("cycle-plus", 4), ("double-path", 5), ("near-double-path", 5)])
def test_kingmaker_family_examples(name, n_max):
    r = v.check_kingmaker_family(name, n_max)
    assert r.status == v.PASS, r.witness


@pytest.mark.parametrize("name,n", [("cycle-plus", 4), ("twisted-cycle", 3), ("simplex-path", 3), ("simplex-path", 5)])
def test_facet_closure_examples(name, n):
    r = v.check_facet_closure(name, n)
    assert r.status == v.PASS, r.witness


def test_halohedron_path_tube_multiplicities():
    r = v.check_facet_closure("cycle-plus", 4)
    assert r.detail["path"] == {"1": 1, "2": 2, "3": 3}


def test_isomorphism_search_detail():
    r = v.check_isomorphism_search(3)
    assert r.status == v.PASS
    assert r.detail["families"]["near-double-path"]["cyclohedron_face_lattice"]
    assert r.detail["families"]["double-path"]["cyclohedron_fvector"]


def test_failing_check_reports_witness():
    tally = v._Tally()
    tally.check(True, "unused")
    tally.check(False, {"n": 3})
    r = tally.report("demo", {}, 0.0)
    assert r.failed and r.witness == {"n": 3} and r.assertions == 2


def test_formulas():
    assert [v.stellocube_vertices(n) for n in (1, 2, 3)] == [2, 5, 14]
    assert v.double_stellar_vertices(3) == 20
    assert v.pell_numbers(6) == [1, 2, 5, 12, 29, 70, 169]
    assert v.omni_formula_counts(2) == list(dg.fvector(fam.build("omni", 2)).complex())


def test_conjectures_never_fail():
    for r in (v.check_pell_conjecture(4), v.check_wand_conjecture(5), v.check_pell_skeleton(3)):
        assert r.status in (v.CONJ_MATCH, v.CONJ_MISMATCH, v.SKIPPED)
        assert not r.failed


def test_pell_conjecture_readings():
    r = v.check_pell_conjecture(5)
    assert r.status == v.CONJ_MATCH
    assert not r.detail["literal_match"] and r.detail["reindexed_match"]


def test_wand_readings():
    r = v.check_wand_conjecture(6)
    mism = r.detail["mismatches"]
    assert mism["joined-graph-vs-gf"] == []
    assert mism["gf-vs-T(j+k,k)"] == []
    assert [2, 1] in mism["literal-graph-vs-gf"]


def test_skeleton_dot():
    g = fam.build("pell", 2)
    text = v.skeleton_dot(g, "pell")
    assert text.startswith('graph "pell" {')
    assert text.count(" -- ") == 5 and text.count("[label=") == 5


def test_catalog_ids_and_selection():
    ids = v.check_ids(2)
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    reports = v.run_catalog(2, ["series:path-plus", "kingmaker"])
    assert {r.id for r in reports} >= {"series:path-plus", "kingmaker:double-path"}
    with pytest.raises(InputError):
        v.run_catalog(2, ["no-such-check"])


def test_catalog_deterministic_across_threads():
    a = [r.to_json() for r in v.run_catalog(3, threads=1)]
    b = [r.to_json() for r in v.run_catalog(3, threads=4)]
    assert json.dumps(a) == json.dumps(b)
    assert not any(r["status"] == v.FAIL for r in a)
