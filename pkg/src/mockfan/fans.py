"""Face-closed fans of strongly convex cones, with height-one bookkeeping.

Fans here may carry a distinguished last coordinate ("t").  On t-flagged
fans the classification predicates follow the degeneration picture: a cone
is *special* when it is not contained in the hyperplane {t = 0}, and
*bounded* when it is nonzero and every extreme ray has strictly positive
t-coordinate (equivalently, its slice at t = 1 is a bounded polytope).
The predicates "special", "bounded", "compactly arranged" and "specifically
reduced" are inferred from how they are used in the source constructions,
not restatements of external definitions; see the project README.

The Euler characteristic of the open t = 1 slice of a special cone is
(-1)^(dim - 1) when the cone is bounded and 0 otherwise; its additivity over
refinements is what the signed volume skeleton rests on.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .cones import Cone, intersect, is_face_of, is_subcone, zero_cone
from .exact import dot, lcm_all


class FanError(ValueError):
    """Raised when a collection of cones does not form a fan."""


# ---------------------------------------------------------------------------
# cone-level classification (t = last coordinate)
# ---------------------------------------------------------------------------

def is_special_cone(c: Cone) -> bool:
    """Not contained in {t = 0}: some generator has nonzero t-coordinate."""
    return any(v[-1] != 0 for v in c.rays) or any(v[-1] != 0 for v in c.lineality)


def is_bounded_cone(c: Cone) -> bool:
    """Nonzero, strongly convex, and every extreme ray has t > 0."""
    if c.is_zero() or c.lineality:
        return False
    return all(r[-1] > 0 for r in c.rays)


def euler_char_height1(c: Cone) -> int:
    """(-1)^(dim - 1) for bounded cones, 0 otherwise."""
    if not is_bounded_cone(c):
        return 0
    return -1 if c.dim() % 2 == 0 else 1


def rescale_cone(c: Cone, n: int) -> Cone:
    """Image of a cone under (v, t) -> (n*v, t); t is the last coordinate."""
    mapped_rays = [tuple(n * x for x in r[:-1]) + (r[-1],) for r in c.rays]
    mapped_lin = [tuple(n * x for x in v[:-1]) + (v[-1],) for v in c.lineality]
    return Cone._make(c.rank, mapped_rays, mapped_lin)


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------

class Fan:
    """Finite face-closed collection of strongly convex cones in one lattice."""

    __slots__ = ("rank", "cones", "has_t_coordinate", "_cone_set")

    def __init__(self, rank: int, cones: tuple[Cone, ...], has_t: bool,
                 _token: object = None):
        if _token is not _FAN_TOKEN:
            raise FanError("use fan_from_cones")
        self.rank = rank
        self.cones = cones
        self.has_t_coordinate = has_t
        self._cone_set = frozenset(cones)

    @staticmethod
    def _trusted(rank: int, cones: Iterable[Cone], has_t: bool) -> "Fan":
        """Internal constructor for cone sets already known to satisfy the
        fan conditions (images under invertible maps, verified subdivisions)."""
        ordered = tuple(sorted(set(cones), key=_cone_sort_key))
        return Fan(rank, ordered, has_t, _token=_FAN_TOKEN)

    def __iter__(self):
        return iter(self.cones)

    def __len__(self) -> int:
        return len(self.cones)

    def __contains__(self, c: Cone) -> bool:
        return c in self._cone_set

    def __eq__(self, other) -> bool:
        return (isinstance(other, Fan) and self.rank == other.rank
                and self.has_t_coordinate == other.has_t_coordinate
                and self.cones == other.cones)

    def __hash__(self) -> int:
        return hash((self.rank, self.has_t_coordinate, self.cones))

    def __repr__(self) -> str:
        return (f"Fan(rank={self.rank}, cones={len(self.cones)}, "
                f"has_t={self.has_t_coordinate})")

    def maximal_cones(self) -> list[Cone]:
        """Cones not strictly contained in another cone of the fan."""
        by_dim = sorted(self.cones, key=lambda c: -c.dim())
        maximal: list[Cone] = []
        for c in by_dim:
            if not any(is_subcone(c, m) for m in maximal):
                maximal.append(c)
        return maximal

    def support_contains(self, v: Sequence) -> bool:
        return any(c.contains(v) for c in self.maximal_cones())

    def _require_t(self, op: str):
        if not self.has_t_coordinate:
            raise FanError(f"{op} requires a fan with a t coordinate")

    def special_cones(self) -> list[Cone]:
        self._require_t("special_cones")
        return [c for c in self.cones if is_special_cone(c)]

    def bounded_cones(self) -> list[Cone]:
        self._require_t("bounded_cones")
        return [c for c in self.cones if is_bounded_cone(c)]


_FAN_TOKEN = object()


def _cone_sort_key(c: Cone):
    return (c.dim(), c.rays, c.lineality)


def fan_from_cones(rank: int, cones: Sequence[Cone], has_t: bool = False) -> Fan:
    """Close the given cones under faces and verify the fan conditions.

    Raises FanError("not a fan") when two cones meet outside a common face,
    and rejects non-strongly-convex members.  For t-flagged fans every ray
    must have nonnegative t-coordinate (height-one semantics break otherwise).
    """
    closed: set[Cone] = set()
    for c in cones:
        if c.rank != rank:
            raise FanError(f"cone rank {c.rank} does not match fan rank {rank}")
        if not c.is_strongly_convex():
            raise FanError("not a fan: member cone is not strongly convex")
        if has_t and any(r[-1] < 0 for r in c.rays):
            raise FanError("not a fan: negative t-coordinate ray in t-flagged fan")
        for f in c.faces():
            closed.add(f.cone)
    if not closed:
        closed.add(zero_cone(rank))
    _verify_fan_condition(closed)
    return Fan._trusted(rank, closed, has_t)


def _verify_fan_condition(cones: set[Cone]):
    """Pairwise common-face verification, reduced to maximal members.

    Every member must be a face of some maximal member, and maximal members
    must pairwise intersect in common faces; together with face closure this
    is equivalent to the full pairwise condition.
    """
    by_dim = sorted(cones, key=lambda c: (-c.dim(), c.rays))
    maximal: list[Cone] = []
    for c in by_dim:
        if not any(is_subcone(c, m) for m in maximal):
            maximal.append(c)
    maximal_set = set(maximal)
    for c in cones:
        if c in maximal_set:
            continue
        if not any(is_subcone(c, m) and is_face_of(c, m) for m in maximal):
            raise FanError("not a fan: cone is not a face of any maximal cone")
    for m1, m2 in itertools.combinations(maximal, 2):
        meet = intersect(m1, m2)
        if not (is_face_of(meet, m1) and is_face_of(meet, m2)):
            raise FanError("not a fan: intersection is not a common face")


def is_refinement(fine: Fan, coarse: Fan) -> bool:
    """True iff `fine` subdivides `coarse` with equal support.

    Containment of every fine cone in a coarse cone is checked directly;
    coverage of each coarse cone is certified wall by wall: every facet of a
    maximal-dimensional fine cone inside sigma either lies on the boundary
    of sigma or is shared with exactly one other such cone.
    """
    if fine.rank != coarse.rank:
        raise FanError("refinement test requires equal rank")
    coarse_list = list(coarse.cones)
    for tau in fine.cones:
        if not any(is_subcone(tau, sigma) for sigma in coarse_list):
            return False
    for sigma in coarse.cones:
        if not _covers(fine, sigma):
            return False
    return True


def _covers(fine: Fan, sigma: Cone) -> bool:
    d = sigma.dim()
    if d == 0:
        return zero_cone(sigma.rank) in fine
    cells = [tau for tau in fine.cones
             if tau.dim() == d and is_subcone(tau, sigma)]
    if not cells:
        return False
    wall_counts: dict[Cone, int] = {}
    for tau in cells:
        for j in range(len(tau.facets)):
            wall = tau.face_with_tight_set([j])
            wall_counts[wall] = wall_counts.get(wall, 0) + 1
    for wall, count in wall_counts.items():
        gens = list(wall.rays) + list(wall.lineality)
        on_boundary = any(all(dot(g, f) == 0 for g in gens) for f in sigma.facets)
        if on_boundary:
            continue
        if count != 2:
            return False
    return True


def refines_cone_faces(fine: Fan, support: Cone) -> bool:
    """True iff `fine` subdivides the face collection of one support cone.

    The support may contain a linear subspace (fan membership is not
    required of it); coverage of every face is certified by the same
    wall-pairing scheme as `is_refinement`.
    """
    if fine.rank != support.rank:
        raise FanError("refinement test requires equal rank")
    for tau in fine.cones:
        if not is_subcone(tau, support):
            return False
    return all(_covers(fine, face.cone) for face in support.faces())


def rescale(f: Fan, n: int) -> Fan:
    """Image fan under (v, t) -> (n*v, t); bijective on cones."""
    f._require_t("rescale")
    if n < 1:
        raise FanError("rescale factor must be a positive integer")
    if n == 1:
        return f
    return Fan._trusted(f.rank, (rescale_cone(c, n) for c in f.cones), True)


def is_specifically_reduced(f: Fan) -> bool:
    """Every 1-dimensional special cone has primitive generator with t = 1."""
    f._require_t("is_specifically_reduced")
    return all(c.rays[0][-1] == 1
               for c in f.cones if c.dim() == 1 and is_special_cone(c))


def specifically_reduced_scale(f: Fan) -> int:
    """Least m >= 1 such that rescale(f, m) is specifically reduced.

    For a primitive special ray (v, c) the least m with m*v/c integral is c
    itself, so the answer is the lcm of the t-coordinates of the special rays.
    """
    f._require_t("specifically_reduced_scale")
    ts = [c.rays[0][-1] for c in f.cones if c.dim() == 1 and is_special_cone(c)]
    return lcm_all(ts) if ts else 1


def is_compactly_arranged(f: Fan) -> bool:
    """Special rays that share a cone always share a bounded cone.

    For every cone of the fan, its rays with t > 0 must lie in one common
    bounded cone.  This is the inferred operational form of the property:
    what the downstream bookkeeping consumes is that any collection of
    height-positive rays with a common coface admits a common bounded
    coface.
    """
    f._require_t("is_compactly_arranged")
    bounded = f.bounded_cones()
    for c in f.cones:
        special_rays = [r for r in c.rays if r[-1] > 0]
        if not special_rays:
            continue
        if not any(all(b.contains(r) for r in special_rays) for b in bounded):
            return False
    return True
