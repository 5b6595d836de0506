"""Min-plus subdivision of a chart support from lifted monomial exponents.

A chart supplies dual generators of its support cone together with a family
of exponent vectors, one per item, each carrying an integer t-weight kappa
and sharing a scale l.  The engine lifts every item to height one, forms the
cone D generated by the lifted items and the support duals, dualizes to C,
and reads the subdivision off the faces of C that avoid the lift direction
(0, 1): projecting those faces along the lift coordinate yields the fan on
which the pointwise minimum of the item functionals is cell-wise linear.
The items attaining the minimum on a cell form its active set.

Coordinates: a chart of ambient dual rank r has exponent vectors of rank r
whose last slot is the delta (t-dual) coordinate; the lift appends one more
coordinate.  The kappa weight contributes scale * kappa to the delta slot
when D is built, so an item's stored exponent never includes it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .cones import Cone, dual_cone, cone_from_generators, Face
from .exact import IntVec, Scalar, dot, is_zero_vec
from .fans import Fan, FanError, fan_from_cones


class ChartError(ValueError):
    """Invalid chart data (ranks, ids, degenerate support)."""


class SubdivisionInconsistency(RuntimeError):
    """An internal invariant of the face/projection pipeline failed."""


class GlueError(ValueError):
    """Charts whose subdivisions cannot be merged into one fan."""


@dataclass(frozen=True)
class LiftedExponent:
    """One item: an opaque id, its exponent vector, and its t-weight."""
    id: str
    exponent: IntVec
    kappa: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", tuple(self.exponent))


@dataclass(frozen=True)
class MockPolytopeChart:
    """Input data of one chart: support dual generators plus the item family."""
    label: str
    ambient_dual_rank: int
    sigma_dual_generators: tuple[IntVec, ...]
    items: tuple[LiftedExponent, ...]
    scale: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sigma_dual_generators",
                           tuple(tuple(g) for g in self.sigma_dual_generators))
        object.__setattr__(self, "items", tuple(self.items))
        r = self.ambient_dual_rank
        if r < 1:
            raise ChartError("chart ambient rank must be positive")
        if self.scale < 1:
            raise ChartError("chart scale must be a positive integer")
        if not self.items:
            raise ChartError("chart needs at least one item")
        for g in self.sigma_dual_generators:
            if len(g) != r:
                raise ChartError("sigma dual generator rank mismatch")
        ids = set()
        for it in self.items:
            if len(it.exponent) != r:
                raise ChartError(f"item {it.id!r} exponent rank mismatch")
            if it.id in ids:
                raise ChartError(f"duplicate item id {it.id!r}")
            ids.add(it.id)

    def effective_exponent(self, item: LiftedExponent) -> IntVec:
        """Exponent with the t-weight folded in: scale * kappa on the delta slot."""
        w = list(item.exponent)
        w[-1] += self.scale * item.kappa
        return tuple(w)

    def lifted_generators(self) -> list[IntVec]:
        """Height-one lifts of the effective exponents, deduplicated."""
        seen = set()
        out = []
        for it in self.items:
            g = self.effective_exponent(it) + (1,)
            if g not in seen:
                seen.add(g)
                out.append(g)
        return out

    def in_support(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dual_rank:
            raise ChartError("point rank does not match chart rank")
        return all(dot(v, g) >= 0 for g in self.sigma_dual_generators)


@functools.lru_cache(maxsize=128)
def support_cone(chart: MockPolytopeChart) -> Cone:
    """The chart support: the dual of the cone its sigma-duals generate."""
    return dual_cone(cone_from_generators(
        chart.ambient_dual_rank, chart.sigma_dual_generators))


def val_min(chart: MockPolytopeChart, v: Sequence[Scalar]) -> Fraction:
    """Pointwise minimum of the item functionals at a support point."""
    if not chart.in_support(v):
        raise ChartError("outside chart support")
    return Fraction(min(dot(v, chart.effective_exponent(it)) for it in chart.items))


def build_D(chart: MockPolytopeChart) -> Cone:
    """Lifted cone D: support duals at height 0 plus items at height 1."""
    r = chart.ambient_dual_rank
    gens = [tuple(g) + (0,) for g in chart.sigma_dual_generators if not is_zero_vec(g)]
    gens += chart.lifted_generators()
    return cone_from_generators(r + 1, gens)


@dataclass(frozen=True)
class SubdivisionResult:
    chart: MockPolytopeChart
    big_cone: Cone
    faces_avoiding: tuple[Face, ...]
    projected_fan: Fan
    active_sets: Mapping[Cone, frozenset[str]]

    def active_set(self, cone: Cone) -> frozenset[str]:
        """Items attaining the minimum identically on the given fan cone."""
        if cone not in self.projected_fan:
            raise ChartError("cone does not belong to the projected fan")
        return self.active_sets[cone]

    def effective_dimension(self, cone: Cone) -> int:
        """Number of distinct effective exponents among the cone's active items."""
        active = self.active_set(cone)
        return len({self.chart.effective_exponent(it)
                    for it in self.chart.items if it.id in active})


def _faces_avoiding_apex(c: Cone) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Ray-index tuples and tight facet sets of the faces of c avoiding (0, 1).

    A face avoids the apex direction exactly when some facet tight on it
    pairs positively with (0, 1); the avoiding faces are downward closed, so
    a breadth-first walk from the apex-positive facet cuts reaches them all.
    """
    apex = (0,) * (c.rank - 1) + (1,)
    facets = c.facets
    apex_positive = [j for j, f in enumerate(facets) if dot(apex, f) > 0]
    nr = len(c.rays)
    facet_masks = []
    for f in facets:
        mask = 0
        for i, r in enumerate(c.rays):
            if dot(r, f) == 0:
                mask |= 1 << i
        facet_masks.append(mask)
    full = (1 << nr) - 1
    seen = set()
    order = []
    for j in apex_positive:
        m = full & facet_masks[j]
        if m not in seen:
            seen.add(m)
            order.append(m)
    head = 0
    while head < len(order):
        cur = order[head]
        head += 1
        for fm in facet_masks:
            child = cur & fm
            if child not in seen:
                seen.add(child)
                order.append(child)
    if 0 not in seen:
        seen.add(0)
        order.append(0)
    out = []
    for mask in order:
        rays = tuple(i for i in range(nr) if mask >> i & 1)
        tight = frozenset(j for j, fm in enumerate(facet_masks) if mask & ~fm == 0)
        out.append((rays, tight))
    return out


def subdivide_chart(chart: MockPolytopeChart, verify: bool = True) -> SubdivisionResult:
    """Run the full pipeline on one chart.

    The projected fan is rebuilt through the verifying fan constructor when
    `verify` is set; a failure there indicates a pipeline bug and raises
    SubdivisionInconsistency.
    """
    r = chart.ambient_dual_rank
    big = dual_cone(build_D(chart))
    apex = (0,) * r + (1,)
    if not big.contains(apex):
        raise SubdivisionInconsistency("subdivision inconsistency: (0,1) not in C")
    if not big.is_strongly_convex():
        raise ChartError(
            "chart support and items do not span the dual space: "
            "the subdivision would not be strongly convex")
    faces = []
    proj_cones = []
    for ray_idx, tight in _faces_avoiding_apex(big):
        sub_rays = tuple(big.rays[i] for i in ray_idx)
        face_cone = Cone._make(big.rank, sub_rays, ())
        faces.append(Face(big, tight, face_cone))
        proj_cones.append(Cone._make(r, [rr[:-1] for rr in sub_rays], ()))
    if len(set(proj_cones)) != len(proj_cones):
        raise SubdivisionInconsistency(
            "subdivision inconsistency: projection identified two faces")
    try:
        if verify:
            fan = fan_from_cones(r, proj_cones, has_t=True)
            if len(fan) != len(proj_cones):
                raise SubdivisionInconsistency(
                    "subdivision inconsistency: projected family not face-closed")
        else:
            fan = Fan._trusted(r, proj_cones, True)
    except FanError as exc:
        raise SubdivisionInconsistency(f"subdivision inconsistency: {exc}") from exc
    active = {}
    for cone in fan:
        active[cone] = _active_set_at_interior_point(chart, cone)
    return SubdivisionResult(chart, big, tuple(faces), fan, active)


def _active_set_at_interior_point(chart: MockPolytopeChart, cone: Cone) -> frozenset[str]:
    """Active set from the pairing at the lift of a relative interior point."""
    v = cone.relative_interior_point()
    val = val_min(chart, v)
    return frozenset(it.id for it in chart.items
                     if dot(v, chart.effective_exponent(it)) == val)


@dataclass(frozen=True)
class GlueResult:
    fan: Fan
    active_sets: Mapping[Cone, frozenset[str]]


def glue_charts(results: Sequence[SubdivisionResult]) -> GlueResult:
    """Merge chart subdivisions into one fan with consistent active sets."""
    if not results:
        raise GlueError("charts do not glue: nothing to glue")
    rank = results[0].projected_fan.rank
    merged: dict[Cone, frozenset[str]] = {}
    for res in results:
        if res.projected_fan.rank != rank:
            raise GlueError("charts do not glue: rank mismatch")
        for cone in res.projected_fan:
            have = merged.get(cone)
            if have is None:
                merged[cone] = res.active_sets[cone]
            elif have != res.active_sets[cone]:
                raise GlueError("charts do not glue: active sets disagree on a shared cone")
    try:
        fan = fan_from_cones(rank, list(merged), has_t=True)
    except FanError as exc:
        raise GlueError(f"charts do not glue: {exc}") from exc
    if len(fan) != len(merged):
        raise GlueError("charts do not glue: union is not face-closed")
    return GlueResult(fan, merged)


def rescaled_chart(chart: MockPolytopeChart, n: int) -> MockPolytopeChart:
    """The chart with every t-weight multiplied by n (same scale)."""
    if n < 1:
        raise ChartError("rescale factor must be a positive integer")
    return replace(chart, items=tuple(replace(it, kappa=n * it.kappa)
                                      for it in chart.items))
