import random
from fractions import Fraction

import pytest

from genutil import (interior_lattice_point, lattice_points_in_support,
                     random_orthant_chart)
from mockfan.cones import cone_from_generators as cg
from mockfan.cones import cone_from_inequalities, dual_cone, intersect, is_subcone
from mockfan.exact import dot
from mockfan.fans import fan_from_cones, is_refinement, rescale, rescale_cone
from mockfan.subdivision import (ChartError, GlueError, LiftedExponent,
                                 MockPolytopeChart, build_D, glue_charts,
                                 rescaled_chart, subdivide_chart, support_cone,
                                 val_min)


def halfline_chart():
    # one free spatial coordinate, t >= 0; exponents 0 and 1 with kappa 0
    return MockPolytopeChart(
        "halfline", 2, ((0, 1),),
        (LiftedExponent("a", (0, 0), 0), LiftedExponent("b", (1, 0), 0)))


def orthant_chart(items, rank=3, scale=1):
    duals = tuple(tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank))
    return MockPolytopeChart("orthant", rank, duals, tuple(items), scale=scale)


def test_chart_validation():
    with pytest.raises(ChartError, match="at least one item"):
        MockPolytopeChart("x", 2, ((0, 1),), ())
    with pytest.raises(ChartError, match="duplicate"):
        MockPolytopeChart("x", 2, ((0, 1),),
                          (LiftedExponent("a", (0, 0)), LiftedExponent("a", (1, 0))))
    with pytest.raises(ChartError, match="rank"):
        MockPolytopeChart("x", 2, ((0, 1),), (LiftedExponent("a", (0, 0, 0)),))
    with pytest.raises(ChartError, match="scale"):
        MockPolytopeChart("x", 2, ((0, 1),), (LiftedExponent("a", (0, 0)),), scale=0)


def test_build_D_single_exponent_class():
    # all items share one lifted exponent: D = cone(duals x {0}, (w, 1))
    ch = orthant_chart([LiftedExponent("a", (1, -1, 0), 0),
                        LiftedExponent("b", (1, -1, 0), 0)])
    d = build_D(ch)
    expected = cg(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, -1, 0, 1)])
    assert d == expected


def test_build_D_applies_scale_and_kappa():
    ch = orthant_chart([LiftedExponent("a", (0, 0, 0), 3)], scale=2)
    d = build_D(ch)
    assert (0, 0, 6, 1) in d.rays  # kappa folded into the delta slot as l*kappa


def test_val_min_basics():
    ch = halfline_chart()
    assert val_min(ch, (0, 0)) == 0
    assert val_min(ch, (-3, 5)) == Fraction(-3)
    assert val_min(ch, (4, 2)) == 0
    with pytest.raises(ChartError, match="outside chart support"):
        val_min(ch, (1, -1))


def test_val_min_single_item_is_linear():
    ch = orthant_chart([LiftedExponent("a", (2, -1, 0), 1)], scale=2)
    w = ch.effective_exponent(ch.items[0])
    assert w == (2, -1, 2)
    rng = random.Random(3)
    for v in lattice_points_in_support(rng, ch, 20):
        assert val_min(ch, v) == dot(v, w)


def test_halfline_subdivision():
    res = subdivide_chart(halfline_chart())
    left = cg(2, [(-1, 0), (0, 1)])
    right = cg(2, [(1, 0), (0, 1)])
    assert left in res.projected_fan and right in res.projected_fan
    assert len([c for c in res.projected_fan if c.dim() == 2]) == 2
    assert res.active_sets[left] == frozenset({"b"})
    assert res.active_sets[right] == frozenset({"a"})
    assert res.active_sets[cg(2, [(0, 1)])] == frozenset({"a", "b"})


def test_single_item_gives_face_fan_of_support():
    ch = orthant_chart([LiftedExponent("a", (2, -1, 0), 1)])
    res = subdivide_chart(ch)
    sup = support_cone(ch)
    assert res.projected_fan == fan_from_cones(3, [sup], has_t=True)
    assert all(s == frozenset({"a"}) for s in res.active_sets.values())
    assert all(res.effective_dimension(c) == 1 for c in res.projected_fan)


def test_zero_cone_active_set_is_everything():
    ch = orthant_chart([LiftedExponent("a", (1, 0, 0), 0),
                        LiftedExponent("b", (0, 1, 0), 2),
                        LiftedExponent("c", (-1, 1, 0), 1)])
    res = subdivide_chart(ch)
    from mockfan.cones import zero_cone
    assert res.active_sets[zero_cone(3)] == frozenset({"a", "b", "c"})


def test_apex_always_in_big_cone():
    rng = random.Random(11)
    for _ in range(25):
        ch = random_orthant_chart(rng)
        res = subdivide_chart(ch)
        apex = (0,) * ch.ambient_dual_rank + (1,)
        assert res.big_cone.contains(apex)


def test_active_set_matches_brute_force_argmin():
    rng = random.Random(1312)
    for _ in range(30):
        ch = random_orthant_chart(rng)
        res = subdivide_chart(ch)
        effs = {it.id: ch.effective_exponent(it) for it in ch.items}
        for cone in res.projected_fan:
            if cone.dim() != ch.ambient_dual_rank:
                continue
            for _ in range(5):
                v = interior_lattice_point(rng, cone)
                vals = {i: dot(v, w) for i, w in effs.items()}
                m = min(vals.values())
                argmin = frozenset(i for i, val in vals.items() if val == m)
                assert argmin == res.active_sets[cone]


def test_val_linear_on_cells_and_concave_globally():
    rng = random.Random(2718)
    for _ in range(20):
        ch = random_orthant_chart(rng)
        res = subdivide_chart(ch)
        for cone in res.projected_fan:
            if cone.dim() == 0:
                continue
            pts = [interior_lattice_point(rng, cone, lo=0) for _ in range(3)]
            for x in pts:
                for y in pts:
                    s = tuple(a + b for a, b in zip(x, y))
                    assert val_min(ch, s) == val_min(ch, x) + val_min(ch, y)
        for _ in range(20):
            x, y = lattice_points_in_support(rng, ch, 2)
            s = tuple(a + b for a, b in zip(x, y))
            assert val_min(ch, s) >= val_min(ch, x) + val_min(ch, y)


def test_projected_fan_refines_support():
    rng = random.Random(14)
    for _ in range(10):
        ch = random_orthant_chart(rng, max_rank=3)
        res = subdivide_chart(ch)
        support_fan = fan_from_cones(ch.ambient_dual_rank, [support_cone(ch)],
                                     has_t=True)
        assert is_refinement(res.projected_fan, support_fan)


def test_rescaling_equivariance():
    rng = random.Random(6174)
    for _ in range(15):
        ch = random_orthant_chart(rng)
        base = subdivide_chart(ch)
        for n in (2, 3):
            scaled = subdivide_chart(rescaled_chart(ch, n))
            assert scaled.projected_fan == rescale(base.projected_fan, n)
            for cone in base.projected_fan:
                image = rescale_cone(cone, n)
                assert scaled.active_sets[image] == base.active_sets[cone]


def test_face_duality_consistency():
    ch = orthant_chart([LiftedExponent("a", (0, 0, 0), 2),
                        LiftedExponent("b", (1, -1, 0), 0),
                        LiftedExponent("c", (-1, 2, 0), 1)])
    res = subdivide_chart(ch)
    C = res.big_cone
    D = build_D(ch)
    assert C == dual_cone(D)
    for face in res.faces_avoiding:
        tau = face.cone
        gamma = cone_from_inequalities(
            D.rank, D.facets,
            list(D.span_eqs) + list(tau.rays) + list(tau.lineality))
        back = cone_from_inequalities(
            C.rank, C.facets,
            list(C.span_eqs) + list(gamma.rays) + list(gamma.lineality))
        assert back == tau


def test_effective_dimension_counts_lifted_exponents():
    # same spatial exponent, different kappa: distinct on t = 0 cones only
    ch = orthant_chart([LiftedExponent("a", (1, 0, 0), 0),
                        LiftedExponent("b", (1, 0, 0), 1),
                        LiftedExponent("c", (0, 1, 0), 0)])
    res = subdivide_chart(ch)
    from mockfan.cones import zero_cone
    assert res.effective_dimension(zero_cone(3)) == 3


def test_active_set_requires_fan_membership():
    res = subdivide_chart(halfline_chart())
    with pytest.raises(ChartError, match="projected fan"):
        res.active_set(cg(2, [(1, 1)]))


def test_degenerate_chart_rejected():
    # items and duals span only a hyperplane: D is not full dimensional
    ch = MockPolytopeChart("thin", 2, ((0, 1),), (LiftedExponent("a", (0, 0)),))
    with pytest.raises(ChartError, match="strongly convex"):
        subdivide_chart(ch)


def test_glue_single_chart_is_identity():
    res = subdivide_chart(halfline_chart())
    g = glue_charts([res])
    assert g.fan == res.projected_fan
    assert dict(g.active_sets) == dict(res.active_sets)


def test_glue_chart_over_face_restricts():
    items = (LiftedExponent("a", (0, 0, 0), 1),
             LiftedExponent("b", (1, -2, 0), 0),
             LiftedExponent("c", (-2, 1, 0), 2))
    big = orthant_chart(items)
    # face chart: first coordinate pinned to zero
    face_duals = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1))
    small = MockPolytopeChart("face", 3, face_duals, items)
    rbig = subdivide_chart(big)
    rsmall = subdivide_chart(small)
    glued = glue_charts([rbig, rsmall])
    face_support = support_cone(small)
    expected_small = {c for c in rbig.projected_fan if is_subcone(c, face_support)}
    assert set(rsmall.projected_fan.cones) == expected_small
    for c in rsmall.projected_fan:
        assert rsmall.active_sets[c] == rbig.active_sets[c]
    assert set(glued.fan.cones) == set(rbig.projected_fan.cones)


def test_glue_inconsistent_kappa_fails():
    duals = ((0, 1),)
    items = lambda ka: (LiftedExponent("a", (0, 0), ka),
                        LiftedExponent("b", (1, 0), 0),
                        LiftedExponent("c", (-1, 0), 0))
    r1 = subdivide_chart(MockPolytopeChart("k1", 2, duals, items(0)))
    r2 = subdivide_chart(MockPolytopeChart("k2", 2, duals, items(1)))
    with pytest.raises(GlueError, match="charts do not glue"):
        glue_charts([r1, r2])


def test_glue_overlapping_charts_fail():
    # same support subdivided differently: shared territory, different cones
    duals = ((0, 1),)
    c1 = MockPolytopeChart("o1", 2, duals,
                           (LiftedExponent("a", (0, 0), 0),
                            LiftedExponent("b", (1, 0), 0)))
    c2 = MockPolytopeChart("o2", 2, duals,
                           (LiftedExponent("a", (1, 0), 0),
                            LiftedExponent("b", (3, 0), 1)))
    r1, r2 = subdivide_chart(c1), subdivide_chart(c2)
    with pytest.raises(GlueError, match="charts do not glue"):
        glue_charts([r1, r2])


def test_projected_cones_survive_full_reconstruction():
    # the pipeline builds projected cones through a trusted fast path;
    # rebuilding from generators with the verifying constructor must agree
    rng = random.Random(808)
    for _ in range(10):
        res = subdivide_chart(random_orthant_chart(rng))
        for c in res.projected_fan:
            assert cg(c.rank, c.rays) == c
        for face in res.faces_avoiding:
            fc = face.cone
            assert cg(fc.rank, fc.rays) == fc


def test_lift_coordinate_is_minus_val():
    rng = random.Random(909)
    for _ in range(10):
        ch = random_orthant_chart(rng)
        res = subdivide_chart(ch)
        for face in res.faces_avoiding:
            for r in face.cone.rays:
                assert Fraction(r[-1]) == -val_min(ch, r[:-1])


def test_lifted_generators_dedup():
    ch = orthant_chart([LiftedExponent("a", (1, 0, 0), 1),
                        LiftedExponent("b", (1, 0, 0), 1),
                        LiftedExponent("c", (0, 1, 0), 0)])
    assert len(ch.lifted_generators()) == 2
