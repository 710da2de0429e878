import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from czv.arith import Lattice, solve, vector
from czv.checks import corpus
from czv.cones import (
    ZERO, Cone, Subdivision, chen_cone, chen_transverse_closed_form, faces,
    in_cone, is_smooth, is_strongly_convex, make_lattice_cone, open_face_cover,
    simplicial_subdivide, smooth_subdivide, stellar_subdivide, transverse_cone,
)
from czv.errors import DegenerateInputError, InvalidInputError, UnsupportedConeError

import oracles


def ray_set(lc):
    return set(lc.rays)


def bary(p, gens):
    c = solve([vector(g) for g in gens], vector(p))
    return None if c is None or len(c) != len(gens) else c


# --- examples ---------------------------------------------------------------

def test_make_lattice_cone_examples():
    c = make_lattice_cone([(2, 0)])
    assert c.generators == ((1,),) and c.lattice == Lattice.generated_by([(1,)])
    c = make_lattice_cone([(1, 0), (1, 1)])
    assert c == chen_cone(2) and c.lattice == Lattice.standard(2)
    assert make_lattice_cone([(1, 1)]).lattice == Lattice.generated_by([(1, 1)])
    assert len(make_lattice_cone([(1, 0), (0, 1), (1, 1)]).generators) == 2
    with pytest.raises(DegenerateInputError):
        make_lattice_cone([(0, 0)])


def test_strong_convexity():
    assert is_strongly_convex(make_lattice_cone([(1, 0), (0, 1)]))
    assert not is_strongly_convex(Cone.from_generators([(1,), (-1,)]))
    assert is_strongly_convex(chen_cone(3))


def test_faces_examples():
    assert [f.rays for f in faces(chen_cone(1))] == [(), ((1,),)]
    fs = faces(chen_cone(2))
    assert len(fs) == 4
    assert {f.rays for f in fs if f.dim == 1} == {((1,),), ((1, 1),)}
    # a two-dimensional face of the Chen 3-cone is not itself a Chen cone
    f13 = next(f for f in faces(chen_cone(3)) if ray_set(f) == {(1,), (1, 1, 1)})
    assert f13 != chen_cone(2)
    with pytest.raises(UnsupportedConeError):
        faces(make_lattice_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]))


def _face(lc, idx):
    rays = {lc.generators[i - 1] for i in idx}
    return next(f for f in faces(lc) if set(f.generators) == rays)


def test_transverse_examples():
    for k in (2, 3, 4):
        C = chen_cone(k)
        for i in range(1, k):
            t = transverse_cone(C, _face(C, [j for j in range(1, k + 1) if j != i]))
            half = vector([0] * (i - 1) + [F(1, 2), F(-1, 2)])
            assert t.generators == (half,)
        t = transverse_cone(C, _face(C, range(1, k)))
        assert t.generators == (vector([0] * (k - 1) + [1]),)
    C = chen_cone(3)
    assert transverse_cone(C, C) == ZERO
    assert transverse_cone(C, ZERO) == C
    with pytest.raises(InvalidInputError):
        transverse_cone(C, make_lattice_cone([(0, 1)]))


def test_closed_form_examples():
    assert chen_transverse_closed_form(2, [2]) == [(F(1, 2), F(-1, 2))]
    assert chen_transverse_closed_form(2, [1]) == [(0, 1)]
    assert chen_transverse_closed_form(3, [1, 3]) == [(0, F(1, 2), F(-1, 2))]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_closed_form_matches_projection(k):
    C = chen_cone(k)
    for f in faces(C):
        idx = [C.generators.index(g) + 1 for g in f.generators]
        closed = {vector(v) for v in chen_transverse_closed_form(k, idx)}
        t = transverse_cone(C, f)
        # equal up to positive scaling: same rays after normalising
        assert {Cone.from_generators([v]).rays[0] for v in closed} == set(t.rays)


def test_simplicial_subdivide_examples():
    C = chen_cone(2)
    assert simplicial_subdivide(C).pieces == (C,)
    q = make_lattice_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    sub = simplicial_subdivide(q)
    assert len(sub.pieces) == 2 and all(p.is_simplicial and p.dim == 3 for p in sub.pieces)


def test_smooth_subdivide_examples():
    assert smooth_subdivide(chen_cone(3)).pieces == (chen_cone(3),)
    sub = smooth_subdivide(make_lattice_cone([(1, 0), (1, 2)]))
    assert {frozenset(p.rays) for p in sub.pieces} == {
        frozenset({(1,), (1, 1)}), frozenset({(1, 1), (1, 2)})}
    assert len(smooth_subdivide(make_lattice_cone([(1, 0), (1, 3)])).pieces) == 3


def test_is_smooth_examples():
    assert is_smooth(make_lattice_cone([(1, 0), (0, 1)]))
    assert not is_smooth(make_lattice_cone([(1, 0), (1, 2)]))
    assert all(is_smooth(chen_cone(k)) for k in range(1, 6))


def test_open_face_cover_examples():
    C = make_lattice_cone([(1, 0), (0, 1)])
    assert open_face_cover(Subdivision(C, (C,))) == (C,)
    cover = open_face_cover(stellar_subdivide(Subdivision(C, (C,)), (1, 1)))
    assert sorted(f.dim for f in cover) == [1, 2, 2]
    assert ((1, 1),) in {f.rays for f in cover}
    cover = open_face_cover(smooth_subdivide(make_lattice_cone([(1, 0), (1, 3)])))
    assert sorted(f.dim for f in cover) == [1, 1, 2, 2, 2]


def test_chen_cone():
    assert chen_cone(1).rays == ((1,),)
    assert chen_cone(2).generators == ((1,), (1, 1))
    with pytest.raises(InvalidInputError):
        chen_cone(0)
    # interior points of the Chen 3-cone are the n1 > n2 > n3 >= 1
    C = chen_cone(3)
    for n in product(range(0, 5), repeat=3):
        c = bary(n, C.generators)
        inside = c is not None and all(t > 0 for t in c)
        assert inside == (n[0] > n[1] > n[2] >= 1)


# --- properties -------------------------------------------------------------

SIMPLICIAL = {n: c for n, c in corpus().items() if c.is_simplicial}


def _is_face_of(f, g):
    return ray_set(f) <= ray_set(g)


@pytest.mark.parametrize("name", sorted(SIMPLICIAL))
def test_transverse_properties(name):
    C = SIMPLICIAL[name]
    fs = faces(C)
    for F_ in fs:
        t = transverse_cone(C, F_)
        assert C.dim == F_.dim + t.dim
        # faces of t(C,F) are the t(G,F) for F <= G <= C
        want = {transverse_cone(G, F_) for G in fs if _is_face_of(F_, G)}
        assert set(faces(t)) == want
        for F1 in fs:
            if _is_face_of(F1, F_):
                inner = transverse_cone(F_, F1)
                assert transverse_cone(transverse_cone(C, F1), inner) == t


def _rand_point(rng, gens):
    w = [F(rng.randint(0, 6), rng.randint(1, 4)) for _ in gens]
    out = ()
    for c, g in zip(w, gens):
        out = vector(a + c * b for a, b in zip(out + (0,) * (len(g) - len(out)),
                                                g + (0,) * (len(out) - len(g))))
    return out


@pytest.mark.parametrize("gens", [[(1, 0), (1, 2)], [(1, 0), (1, 5)], [(2, 1), (1, 3)],
                                  [(1, 0, 0), (0, 1, 0), (1, 1, 2)]])
def test_smooth_subdivision_covers(gens):
    C = make_lattice_cone(gens)
    sub = smooth_subdivide(C)
    assert all(p.index == 1 and p.dim == C.dim and p.lattice == C.lattice for p in sub.pieces)
    rng = random.Random(3)
    for _ in range(60):
        v = _rand_point(rng, C.generators)
        if not v:
            continue
        holding = [p for p in sub.pieces if in_cone(v, p.generators)]
        assert holding
        interior = [p for p in holding if all(t > 0 for t in bary(v, p.generators))]
        assert len(interior) <= 1
        if not interior:          # on a shared face, or on the parent's boundary
            on_boundary = any(t == 0 for t in bary(v, C.generators))
            assert len(holding) >= 2 or on_boundary


@pytest.mark.parametrize("gens", [[(1, 0), (1, 3)], [(1, 1), (1, -1)], [(2, 1), (1, 3)],
                                  [(1, 0, 0), (0, 1, 0), (1, 1, 2)]])
def test_open_face_cover_partitions_lattice_points(gens):
    C = make_lattice_cone(gens)
    cover = open_face_cover(smooth_subdivide(C))
    d = C.ambient
    for p in product(range(-1, 7), repeat=d):
        if p not in C.lattice:
            continue
        c = bary(p, C.generators)
        in_open = c is not None and all(t > 0 for t in c)
        hits = 0
        for f in cover:
            cf = bary(p, f.generators) if f.generators else None
            if cf is not None and all(t > 0 for t in cf):
                hits += 1
        assert hits == (1 if in_open else 0), p


@settings(max_examples=25, deadline=None)
@given(a=st.integers(1, 5), c=st.integers(-3, 3))
def test_smoothing_index_sum_2d(a, c):
    C = make_lattice_cone([(1, 0), (c, a)])
    w = oracles.parallelepiped_count(C.generators)
    assert C.index == w
    sub = smooth_subdivide(C)
    assert all(p.index == 1 for p in sub.pieces)
