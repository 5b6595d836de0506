"""Seeded random generators shared by the property and acceptance suites."""

from __future__ import annotations

import random

from mockfan.cones import Cone, cone_from_generators
from mockfan.subdivision import LiftedExponent, MockPolytopeChart


def random_generators(rng: random.Random, rank: int, count: int, entry: int = 5):
    return [tuple(rng.randint(-entry, entry) for _ in range(rank))
            for _ in range(count)]


def random_cone(rng: random.Random, max_rank: int = 6, max_gens: int = 10,
                entry: int = 5) -> Cone:
    rank = rng.randint(1, max_rank)
    count = rng.randint(0, max_gens)
    return cone_from_generators(rank, random_generators(rng, rank, count, entry))


def random_orthant_chart(rng: random.Random, max_rank: int = 4, max_items: int = 8,
                         exp_entry: int = 3, kappa_max: int = 4) -> MockPolytopeChart:
    """Chart supported on the first orthant (t last); spatial exponent entries
    in [-exp_entry, exp_entry], delta slot zero, kappa in [0, kappa_max]."""
    rank = rng.randint(2, max_rank)
    duals = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    items = []
    for k in range(rng.randint(1, max_items)):
        exponent = tuple(rng.randint(-exp_entry, exp_entry)
                         for _ in range(rank - 1)) + (0,)
        items.append(LiftedExponent(f"i{k}", exponent, rng.randint(0, kappa_max)))
    return MockPolytopeChart(f"rand{rng.random():.6f}", rank, tuple(duals),
                             tuple(items))


def interior_lattice_point(rng: random.Random, cone: Cone, lo: int = 1, hi: int = 5):
    """Random point in the relative interior: positive combination of all rays."""
    coeffs = [rng.randint(lo, hi) for _ in cone.rays]
    return tuple(sum(k * r[i] for k, r in zip(coeffs, cone.rays))
                 for i in range(cone.rank))


def lattice_points_in_support(rng: random.Random, chart: MockPolytopeChart,
                              count: int, hi: int = 6):
    """Nonnegative lattice points (the support is the first orthant)."""
    return [tuple(rng.randint(0, hi) for _ in range(chart.ambient_dual_rank))
            for _ in range(count)]
