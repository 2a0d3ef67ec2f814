from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

import oracles
from tubex import complex_core as cc
from tubex.errors import CapacityError, InputError, MalformedFileError, PreconditionError


def label_faces(cx):
    return {frozenset(cx.labels_of(f)) for f in cx.faces()}


def test_hypercube_faces():
    cx = cc.hypercube(2)
    assert cx.is_face(cx.mask([1, -2]))
    assert not cx.is_face(cx.mask([1, -1]))
    assert cx.face_counts() == [1, 4, 4]


def test_simplex_faces():
    cx = cc.simplex([1, 2, 3])
    for pair in ([1, 2], [1, 3], [2, 3]):
        assert cx.is_face(cx.mask(pair))
    assert not cx.is_face(cx.ground.full)


def test_point_and_tiny_simplex():
    assert cc.simplex([1]).size == 0
    assert cc.point().face_counts() == [1]


def test_link_examples():
    cx = cc.hypercube(3)
    lk = cc.link(cx, cx.mask([1]))
    assert set(lk.ground.labels) == {2, -2, 3, -3}
    assert {frozenset(lk.labels_of(c)) for c in lk.circuits} == {frozenset({2, -2}), frozenset({3, -3})}
    assert cc.link(cx, 0) == cx
    sx = cc.simplex([1, 2, 3])
    lk = cc.link(sx, sx.mask([1]))
    assert lk.ground.labels == (2, 3)
    assert lk.circuits == (lk.ground.full,)


def test_link_rejects_nonface():
    cx = cc.hypercube(1)
    with pytest.raises(PreconditionError):
        cc.link(cx, cx.ground.full)


def test_delete_examples():
    cx = cc.hypercube(2)
    d = cc.delete(cx, cx.mask([1, -1]))
    assert d.ground.labels == (2, -2)
    assert len(d.circuits) == 1
    assert cc.rank(d) == 1
    assert cc.delete(cx, 0) == cx
    d = cc.delete(cx, cx.mask([1]))
    assert set(d.ground.labels) == {-1, 2, -2}
    assert [set(d.labels_of(c)) for c in d.circuits] == [{2, -2}]


def test_product_examples():
    seg = cc.simplex(["a", "b"])
    sq = cc.product(seg, cc.simplex(["c", "d"]))
    assert sq.face_counts() == cc.hypercube(2).face_counts()
    rays = cc.product(cc.boolean(["r"]), cc.boolean(["s"]))
    assert rays.size == 2 and rays.circuits == ()
    mixed = cc.product(cc.hypercube(1), cc.boolean(["r"]))
    assert mixed.size == 3 and len(mixed.circuits) == 1


def test_product_relabels_clashes():
    p = cc.product(cc.hypercube(1), cc.hypercube(1))
    assert len(set(p.ground.labels)) == 4


def test_rank_examples():
    assert cc.rank(cc.hypercube(3)) == 3
    assert cc.rank(cc.simplex([1, 2, 3, 4])) == 3


def test_stellar_subdivision_square_gives_pentagon():
    cx = cc.hypercube(2)
    sd = cc.stellar_subdivision(cx, cx.mask([1, 2]))
    assert sd.size == 5
    assert sd.face_counts() == [1, 5, 5]


def test_stellar_subdivision_singleton_keeps_counts():
    cx = cc.hypercube(2)
    sd = cc.stellar_subdivision(cx, cx.mask([1]))
    assert sd.face_counts() == cx.face_counts()


def test_circuit_validation():
    g = cc.GroundSet((1, 2, 3))
    with pytest.raises(InputError):
        cc.ForbiddenComplex(g, (0b001,))
    with pytest.raises(InputError):
        cc.ForbiddenComplex(g, (0b011, 0b111))
    with pytest.raises(InputError):
        cc.GroundSet((1, 1))
    with pytest.raises(InputError):
        cc.GroundSet((1, 2), (0, 1))


def test_create_drops_nonface_singletons():
    g = cc.GroundSet((1, 2, 3))
    cx = cc.ForbiddenComplex.create(g, [0b001, 0b110, 0b111])
    assert cx.ground.labels == (2, 3)
    assert cx.circuits == (0b11,)


def test_capacity():
    with pytest.raises(CapacityError):
        cc.GroundSet(tuple(range(65)))


def test_json_round_trip():
    cx = cc.hypercube(2, rays=1)
    back = cc.complex_from_json(cc.complex_to_json(cx))
    assert back == cx
    assert cc.complex_from_json({"hypercube": 2}) == cc.hypercube(2)


@pytest.mark.parametrize("bad", [[], {"ground": 3}, {"hypercube": -1}, {"ground": [1, 2], "circuits": [[1, 5]]}])
def test_json_errors(bad):
    with pytest.raises(MalformedFileError):
        cc.complex_from_json(bad)


@given(oracles.small_complexes())
def test_faces_match_brute_force(cx):
    assert label_faces(cx) == oracles.faces(cx)
    counts = [0] * (max((len(f) for f in oracles.faces(cx)), default=0) + 1)
    for f in oracles.faces(cx):
        counts[len(f)] += 1
    assert cx.face_counts() == counts
    assert cc.rank(cx) == len(counts) - 1


@given(oracles.small_complexes(), st.data())
def test_link_is_star_quotient(cx, data):
    face = data.draw(st.sampled_from(sorted(cx.faces())))
    lk = cc.link(cx, face)
    s = frozenset(cx.labels_of(face))
    expected = {f - s for f in oracles.faces(cx) if s <= f}
    assert label_faces(lk) == expected


@given(oracles.small_complexes(), st.data())
def test_delete_keeps_faces_avoiding_x(cx, data):
    x = data.draw(st.integers(0, cx.ground.full))
    d = cc.delete(cx, x)
    removed = set(cx.labels_of(x))
    assert label_faces(d) == {f for f in oracles.faces(cx) if not f & removed}


@given(oracles.small_complexes(3), oracles.small_complexes(3))
def test_product_face_counts_convolve(a, b):
    p = cc.product(a, b)
    fa, fb = a.face_counts(), b.face_counts()
    conv = [0] * (len(fa) + len(fb) - 1)
    for i, x in enumerate(fa):
        for j, y in enumerate(fb):
            conv[i + j] += x * y
    assert p.face_counts() == conv


@given(oracles.small_complexes(5), st.data())
def test_stellar_subdivision_faces(cx, data):
    nonempty = [f for f in cx.faces() if f]
    if not nonempty:
        return
    s = data.draw(st.sampled_from(nonempty))
    sd = cc.stellar_subdivision(cx, s, label="h")
    sl = frozenset(cx.labels_of(s))
    old = oracles.faces(cx)
    expected = {f for f in old if not sl <= f}
    expected |= {g | {"h"} for g in old if not sl <= g and (g | sl) in old}
    assert label_faces(sd) == expected
