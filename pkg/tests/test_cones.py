import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genutil import random_cone, random_generators
from mockfan.cones import (Cone, ConeError, cone_from_generators,
                           cone_from_inequalities, dual_cone, intersect,
                           is_face_of, is_subcone, zero_cone)
from mockfan.exact import dot


def orthant(rank=2):
    return cone_from_generators(rank, [tuple(1 if j == i else 0 for j in range(rank))
                                       for i in range(rank)])


def test_from_generators_drops_redundant():
    c = cone_from_generators(2, [(1, 0), (0, 1), (1, 1)])
    assert c.rays == ((0, 1), (1, 0))
    assert c.lineality == ()


def test_from_generators_extracts_lineality():
    c = cone_from_generators(2, [(1, 0), (-1, 0), (0, 1)])
    assert c.lineality == ((1, 0),)
    assert c.rays == ((0, 1),)


def test_from_generators_primitivizes():
    c = cone_from_generators(3, [(2, 0, 0)])
    assert c.rays == ((1, 0, 0),)


def test_from_generators_rank_mismatch():
    with pytest.raises(ConeError, match="rank"):
        cone_from_generators(2, [(1, 0, 0)])


def test_dual_self_dual_orthant():
    assert dual_cone(orthant()) == orthant()


def test_dual_of_full_space_is_origin():
    full = cone_from_generators(2, [], [(1, 0), (0, 1)])
    assert dual_cone(full) == zero_cone(2)
    assert dual_cone(zero_cone(2)) == full


def test_dual_hand_example():
    d = dual_cone(cone_from_generators(2, [(1, 0), (1, 2)]))
    assert set(d.rays) == {(2, -1), (0, 1)}
    # tightness pattern: each dual ray vanishes on exactly one primal ray
    for f in d.rays:
        zeros = [r for r in ((1, 0), (1, 2)) if dot(r, f) == 0]
        assert len(zeros) == 1


def test_duality_involution_random():
    rng = random.Random(421)
    for _ in range(120):
        c = random_cone(rng)
        d = dual_cone(c)
        rebuilt = dual_cone(cone_from_generators(c.rank, d.rays, d.lineality))
        assert rebuilt == c
        for g in c.rays:
            assert rebuilt.contains(g)
        assert c.dim() + len(d.lineality) == c.rank


def test_faces_counts():
    assert len(orthant().faces()) == 4
    assert len(cone_from_generators(3, [(1, 0, -2)]).faces()) == 2
    assert len(orthant(3).faces()) == 8


def test_faces_brute_force_simplicial():
    c = orthant(3)
    found = {f.cone for f in c.faces()}
    expected = set()
    rays = c.rays
    for k in range(4):
        for sub in itertools.combinations(rays, k):
            expected.add(cone_from_generators(3, list(sub)))
    assert found == expected


def test_face_lattice_closed_under_intersection():
    rng = random.Random(31)
    for _ in range(25):
        c = random_cone(rng, max_rank=4, max_gens=6, entry=3)
        faces = [f.cone for f in c.faces()]
        fset = set(faces)
        for f1, f2 in itertools.combinations(faces, 2):
            assert intersect(f1, f2) in fset


def test_face_interior_point_recovers_tight_set():
    rng = random.Random(97)
    for _ in range(25):
        c = random_cone(rng, max_rank=4, max_gens=7, entry=3)
        for f in c.faces():
            p = f.cone.relative_interior_point()
            assert c.contains(p)
            if not f.cone.rays and f.cone.lineality:
                continue  # subspace face: the origin is tight on everything
            tight = frozenset(j for j, fac in enumerate(c.facets) if dot(p, fac) == 0)
            assert tight == f.tight_facets


def test_relative_interior_point_examples():
    assert orthant().relative_interior_point() == (1, 1)
    assert cone_from_generators(3, [(1, 0, -2)]).relative_interior_point() == (1, 0, -2)
    assert zero_cone(2).relative_interior_point() == (0, 0)


def test_contains_examples():
    c = orthant()
    assert c.contains((0, 0))
    assert not c.contains((-1, 2))
    from fractions import Fraction
    assert c.contains((Fraction(1, 2), Fraction(3, 7)))


def test_incidence_matrix():
    c = orthant()
    inc = c.incidence()
    for i, r in enumerate(c.rays):
        for j, f in enumerate(c.facets):
            assert inc[i][j] == (dot(r, f) == 0)
    assert sum(sum(row) for row in inc) == 2  # each ray tight on one facet


def test_predicates():
    c = orthant()
    assert c.is_strongly_convex() and c.is_unimodular() and c.dim() == 2
    s = cone_from_generators(2, [(1, 1), (1, -1)])
    assert s.is_strongly_convex() and not s.is_unimodular() and s.dim() == 2
    h = cone_from_generators(2, [(0, 1)], [(1, 0)])
    assert not h.is_strongly_convex() and h.dim() == 2


def test_dual_strong_convexity_iff_full_dimensional():
    rng = random.Random(5150)
    for _ in range(60):
        c = random_cone(rng, max_rank=5, max_gens=8, entry=3)
        assert dual_cone(c).is_strongly_convex() == (c.dim() == c.rank)


def test_cone_from_inequalities_matches_membership():
    rng = random.Random(77)
    for _ in range(40):
        n = rng.randint(1, 4)
        ineqs = random_generators(rng, n, rng.randint(0, 5), 3)
        c = cone_from_inequalities(n, ineqs)
        for _ in range(15):
            v = tuple(rng.randint(-3, 3) for _ in range(n))
            assert c.contains(v) == all(dot(v, a) >= 0 for a in ineqs)


def test_is_face_of():
    c = orthant()
    assert is_face_of(cone_from_generators(2, [(1, 0)]), c)
    assert is_face_of(zero_cone(2), c)
    assert is_face_of(c, c)
    assert not is_face_of(cone_from_generators(2, [(1, 1)]), c)
    sub = cone_from_generators(2, [(1, 0), (1, 1)])
    assert is_subcone(sub, c) and not is_face_of(sub, c)


def test_direct_construction_forbidden():
    with pytest.raises(ConeError):
        Cone(2, ((1, 0),), (), None, None)


def test_equality_is_canonical():
    a = cone_from_generators(2, [(1, 0), (0, 1), (2, 3)])
    b = cone_from_generators(2, [(0, 2), (3, 0)])
    assert a == b and hash(a) == hash(b)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3).map(tuple),
                min_size=1, max_size=5),
       st.integers(1, 4), st.randoms(use_true_random=False))
@settings(max_examples=50, deadline=None)
def test_canonical_form_invariant_under_scaling_and_order(gens, scale, rnd):
    c = cone_from_generators(3, gens)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    scaled = [tuple(scale * x for x in g) for g in shuffled]
    assert cone_from_generators(3, scaled) == c
