"""Rational polyhedral cones with exact dual representations and face data.

A `Cone` is canonical: extreme rays are primitive, reduced modulo the
lineality space (orthogonal representative, cleared to integers), and sorted;
the lineality basis is the Hermite normal form of the saturated lineality
lattice.  Cones that describe the same point set therefore compare equal as
structures, which is what fans and the subdivision pipeline rely on.

Representation conversion uses an incremental double description method over
exact integers.  Both the V-representation (rays, lineality) and the
H-representation (facet inequalities plus span equalities) are available on
every cone; the H-side is computed lazily for cones created through trusted
internal paths and eagerly for user-supplied generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact import (
    IntVec,
    Scalar,
    dot,
    integerize,
    is_zero_vec,
    kernel_basis,
    lattice_basis_extension_test,
    primitive,
    rank as matrix_rank,
    vec_neg,
)


class ConeError(ValueError):
    """Raised for invalid cone inputs (rank mismatches, bad generators)."""


# ---------------------------------------------------------------------------
# double description core
# ---------------------------------------------------------------------------

def _dd(dim: int, inequalities: Sequence[IntVec]) -> tuple[list[IntVec], list[IntVec]]:
    """V-representation of {x in Q^dim : <a, x> >= 0 for all a}.

    Incremental double description: the state is a lineality basis plus a
    list of extreme rays tagged with the bitmask of already-processed
    inequalities they are tight on.  Adjacency of a positive/negative ray
    pair is decided by the standard combinatorial test (no third ray is
    tight on the common tight set).
    """
    constraints = [a for a in inequalities if not is_zero_vec(a)]
    lin: list[IntVec] = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[IntVec, int]] = []
    for idx, a in enumerate(constraints):
        hit = next((i for i, b in enumerate(lin) if dot(a, b) != 0), None)
        if hit is not None:
            b = lin.pop(hit)
            vb = dot(a, b)
            if vb < 0:
                b, vb = vec_neg(b), -vb
            lin = [primitive(tuple(vb * u[k] - dot(a, u) * b[k] for k in range(dim)))
                   for u in lin]
            rays = [(primitive(tuple(vb * r[k] - dot(a, r) * b[k] for k in range(dim))),
                     mask | (1 << idx)) for r, mask in rays]
            rays.append((b, (1 << idx) - 1))
            continue
        pos, zero, neg = [], [], []
        for pos_in_list, (r, mask) in enumerate(rays):
            v = dot(a, r)
            if v > 0:
                pos.append((r, mask, v, pos_in_list))
            elif v < 0:
                neg.append((r, mask, v, pos_in_list))
            else:
                zero.append((r, mask | (1 << idx)))
        if not neg:
            rays = [(r, m) for r, m, _, _ in pos] + zero
            continue
        new = [(r, m) for r, m, _, _ in pos] + zero
        for rp, mp, vp, ip in pos:
            for rn, mn, vn, jn in neg:
                common = mp & mn
                if any(k != ip and k != jn and (common & ~m) == 0
                       for k, (_, m) in enumerate(rays)):
                    continue
                combo = primitive(tuple(vp * rn[k] - vn * rp[k] for k in range(dim)))
                new.append((combo, common | (1 << idx)))
        rays = new
    return [r for r, _ in rays], lin


def _solve_fraction(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system exactly (Gaussian elimination)."""
    n = len(matrix)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def _reduce_mod_subspace(v: IntVec, basis: Sequence[IntVec]) -> Optional[IntVec]:
    """Orthogonal-complement representative of v modulo span(basis), integerized.

    Returns None when v lies in the subspace.  The representative is unique
    up to positive scaling, so primitivizing makes it canonical.
    """
    if not basis:
        return tuple(v)
    gram = [[Fraction(dot(bi, bj)) for bj in basis] for bi in basis]
    rhs = [Fraction(dot(bi, v)) for bi in basis]
    coeff = _solve_fraction(gram, rhs)
    w = [Fraction(x) - sum(c * Fraction(b[k]) for c, b in zip(coeff, basis))
         for k, x in enumerate(v)]
    if all(x == 0 for x in w):
        return None
    return integerize(w)


def _saturated_subspace_basis(vectors: Sequence[IntVec], dim: int) -> tuple[IntVec, ...]:
    """Canonical (HNF) basis of span(vectors) ∩ Z^dim."""
    vectors = [v for v in vectors if not is_zero_vec(v)]
    if not vectors:
        return ()
    return kernel_basis(kernel_basis(vectors, dim), dim)


def _restrict_inequalities(ineqs: Sequence[IntVec], basis: Sequence[IntVec]) -> list[IntVec]:
    return [tuple(dot(b, a) for b in basis) for a in ineqs]


def _lift(vectors: Iterable[IntVec], basis: Sequence[IntVec], dim: int) -> list[IntVec]:
    out = []
    for c in vectors:
        out.append(tuple(sum(ci * b[k] for ci, b in zip(c, basis)) for k in range(dim)))
    return out


def _vrep_from_constraints(dim: int, ineqs: Sequence[IntVec],
                           eqs: Sequence[IntVec]) -> tuple[list[IntVec], list[IntVec]]:
    """Rays and lineality of {x : <a,x> >= 0, <e,x> = 0}, via DD.

    Equalities are handled by restricting to their integer kernel first;
    the kernel is saturated, so primitive vectors lift to primitive vectors.
    """
    ineqs = [primitive(a) for a in ineqs if not is_zero_vec(a)]
    seen: set[IntVec] = set()
    uniq: list[IntVec] = []
    extra_eqs: list[IntVec] = []
    for a in ineqs:
        if a in seen:
            continue
        if vec_neg(a) in seen:
            extra_eqs.append(a)
            continue
        seen.add(a)
        uniq.append(a)
    eqs = [e for e in eqs if not is_zero_vec(e)] + extra_eqs
    if eqs:
        sub = kernel_basis(eqs, dim)
        if not sub:
            return [], []
        # inequalities absorbed into equalities restrict to zero and drop out
        restricted = _restrict_inequalities(uniq, sub)
        rays_c, lin_c = _dd(len(sub), restricted)
        return _lift(rays_c, sub, dim), _lift(lin_c, sub, dim)
    rays, lin = _dd(dim, uniq)
    return rays, lin


# ---------------------------------------------------------------------------
# the Cone type
# ---------------------------------------------------------------------------

class Cone:
    """Canonical rational polyhedral cone.

    Do not call the constructor directly; use `cone_from_generators`,
    `cone_from_inequalities`, or `dual_cone`.
    """

    __slots__ = ("rank", "rays", "lineality", "_facets", "_span_eqs", "_dim", "_hash")

    def __init__(self, rank: int, rays: tuple[IntVec, ...], lineality: tuple[IntVec, ...],
                 facets: Optional[tuple[IntVec, ...]], span_eqs: Optional[tuple[IntVec, ...]],
                 _token: object = None):
        if _token is not _CONE_TOKEN:
            raise ConeError("use cone_from_generators / cone_from_inequalities")
        self.rank = rank
        self.rays = rays
        self.lineality = lineality
        self._facets = facets
        self._span_eqs = span_eqs
        self._dim: Optional[int] = None
        self._hash = hash((rank, rays, lineality))

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def _canonicalize(rank: int, raw_rays: Sequence[IntVec],
                      raw_lin: Sequence[IntVec]) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
        lin = _saturated_subspace_basis(raw_lin, rank)
        rays = set()
        for r in raw_rays:
            if is_zero_vec(r):
                continue
            red = _reduce_mod_subspace(r, lin) if lin else primitive(r)
            if red is not None:
                rays.add(red)
        return tuple(sorted(rays)), lin

    @staticmethod
    def _make(rank: int, rays: Sequence[IntVec], lineality: Sequence[IntVec],
              facets=None, span_eqs=None) -> "Cone":
        crays, clin = Cone._canonicalize(rank, rays, lineality)
        return Cone(rank, crays, clin, facets, span_eqs, _token=_CONE_TOKEN)

    # -- H-representation ----------------------------------------------------

    @property
    def span_eqs(self) -> tuple[IntVec, ...]:
        """Basis of span(cone)^perp: the implicit equalities of the H-rep."""
        if self._span_eqs is None:
            gens = list(self.rays) + list(self.lineality)
            if gens:
                self._span_eqs = kernel_basis(gens, self.rank)
            else:
                self._span_eqs = tuple(tuple(1 if j == i else 0 for j in range(self.rank))
                                       for i in range(self.rank))
        return self._span_eqs

    @property
    def facets(self) -> tuple[IntVec, ...]:
        """Inner-normal facet inequality vectors (canonical, irredundant)."""
        if self._facets is None:
            rays_d, lin_d = _vrep_from_constraints(
                self.rank, list(self.rays), list(self.lineality))
            facets, span_d = Cone._canonicalize(self.rank, rays_d, lin_d)
            self._facets = facets
            if self._span_eqs is None:
                self._span_eqs = span_d
        return self._facets

    # -- basic queries ---------------------------------------------------------

    def dim(self) -> int:
        if self._dim is None:
            if not self.rays and not self.lineality:
                self._dim = 0
            else:
                self._dim = matrix_rank(list(self.rays) + list(self.lineality))
        return self._dim

    def is_strongly_convex(self) -> bool:
        return not self.lineality

    def is_simplicial(self) -> bool:
        return self.is_strongly_convex() and len(self.rays) == self.dim()

    def is_unimodular(self) -> bool:
        if not self.is_simplicial():
            return False
        if not self.rays:
            return True
        return lattice_basis_extension_test(self.rays)

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.rank:
            raise ConeError(f"rank mismatch: point has {len(v)}, cone has {self.rank}")
        return (all(dot(v, e) == 0 for e in self.span_eqs)
                and all(dot(v, f) >= 0 for f in self.facets))

    def relative_interior_contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.rank:
            raise ConeError(f"rank mismatch: point has {len(v)}, cone has {self.rank}")
        return (all(dot(v, e) == 0 for e in self.span_eqs)
                and all(dot(v, f) > 0 for f in self.facets))

    def relative_interior_point(self) -> IntVec:
        """Sum of the extreme rays; the zero vector for a linear subspace."""
        point = [0] * self.rank
        for r in self.rays:
            for k in range(self.rank):
                point[k] += r[k]
        return tuple(point)

    def incidence(self) -> list[list[bool]]:
        """Ray x facet tightness matrix."""
        return [[dot(r, f) == 0 for f in self.facets] for r in self.rays]

    # -- face enumeration ------------------------------------------------------

    def faces(self) -> list["Face"]:
        """All faces, each exactly once, including the cone and its minimal face.

        Enumerated by closing ray sets under iterated facet intersection;
        a face of a cone is determined by the set of extreme rays on it.
        """
        facets = self.facets
        nr = len(self.rays)
        if not facets:
            return [Face(self, frozenset(), self)]
        facet_masks = []
        for f in facets:
            mask = 0
            for i, r in enumerate(self.rays):
                if dot(r, f) == 0:
                    mask |= 1 << i
            facet_masks.append(mask)
        full = (1 << nr) - 1
        seen = {full}
        order = [full]
        head = 0
        while head < len(order):
            cur = order[head]
            head += 1
            for fm in facet_masks:
                child = cur & fm
                if child not in seen:
                    seen.add(child)
                    order.append(child)
        out = []
        for mask in order:
            ray_subset = tuple(self.rays[i] for i in range(nr) if mask >> i & 1)
            tight = frozenset(j for j, fm in enumerate(facet_masks) if mask & ~fm == 0)
            cone = Cone(self.rank, ray_subset, self.lineality, None, None,
                        _token=_CONE_TOKEN)
            out.append(Face(self, tight, cone))
        out.sort(key=lambda f: (f.cone.dim(), f.cone.rays))
        return out

    def face_with_tight_set(self, tight: Iterable[int]) -> "Cone":
        tight = set(tight)
        facets = self.facets
        rays = [r for r in self.rays if all(dot(r, facets[j]) == 0 for j in tight)]
        return Cone(self.rank, tuple(rays), self.lineality, None, None,
                    _token=_CONE_TOKEN)

    # -- dunder ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cone) and self.rank == other.rank
                and self.rays == other.rays and self.lineality == other.lineality)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        lin = f", lineality={list(self.lineality)}" if self.lineality else ""
        return f"Cone(rank={self.rank}, rays={list(self.rays)}{lin})"


_CONE_TOKEN = object()


@dataclass(frozen=True)
class Face:
    """A face of a parent cone: the tight facet indices and the face as a cone."""
    parent: Cone
    tight_facets: frozenset[int]
    cone: Cone


# ---------------------------------------------------------------------------
# public constructors and operations
# ---------------------------------------------------------------------------

def cone_from_generators(rank: int, generators: Sequence[Sequence[int]],
                         lineality_generators: Sequence[Sequence[int]] = ()) -> Cone:
    """Canonical cone spanned by `generators` plus the span of `lineality_generators`.

    Redundant generators are dropped, the lineality space is extracted as the
    largest linear subspace of the cone, and rays are reduced modulo lineality
    and primitivized.  Both representations are computed eagerly.
    """
    gens = []
    for g in generators:
        if len(g) != rank:
            raise ConeError(f"generator rank {len(g)} does not match cone rank {rank}")
        if not is_zero_vec(g):
            gens.append(primitive(g))
    lins = []
    for g in lineality_generators:
        if len(g) != rank:
            raise ConeError(f"lineality rank {len(g)} does not match cone rank {rank}")
        if not is_zero_vec(g):
            lins.append(primitive(g))
    facets_raw, span_raw = _vrep_from_constraints(rank, gens, lins)
    facets, span_eqs = Cone._canonicalize(rank, facets_raw, span_raw)
    rays_raw, lin_raw = _vrep_from_constraints(rank, list(facets), list(span_eqs))
    rays, lin = Cone._canonicalize(rank, rays_raw, lin_raw)
    return Cone(rank, rays, lin, facets, span_eqs, _token=_CONE_TOKEN)


def cone_from_inequalities(rank: int, inequalities: Sequence[Sequence[int]],
                           equalities: Sequence[Sequence[int]] = ()) -> Cone:
    """Canonical cone {x : <a,x> >= 0, <e,x> = 0}; facet data computed lazily."""
    rays_raw, lin_raw = _vrep_from_constraints(
        rank, [tuple(a) for a in inequalities], [tuple(e) for e in equalities])
    return Cone._make(rank, rays_raw, lin_raw)


def dual_cone(c: Cone) -> Cone:
    """The dual cone {y : <x, y> >= 0 for all x in c} in the dual lattice.

    Swaps the two stored representations; duality is an involution on
    canonical cones.
    """
    facets = c.facets  # forces both H-side fields
    return Cone(c.rank, facets, c.span_eqs, c.rays, c.lineality, _token=_CONE_TOKEN)


def intersect(c1: Cone, c2: Cone) -> Cone:
    if c1.rank != c2.rank:
        raise ConeError("cannot intersect cones of different rank")
    return cone_from_inequalities(c1.rank, list(c1.facets) + list(c2.facets),
                                  list(c1.span_eqs) + list(c2.span_eqs))


def is_subcone(inner: Cone, outer: Cone) -> bool:
    """Point-set containment, tested against the outer H-representation."""
    gens = list(inner.rays) + list(inner.lineality) + [vec_neg(v) for v in inner.lineality]
    return all(outer.contains(g) for g in gens)


def is_face_of(face: Cone, c: Cone) -> bool:
    """True iff `face` equals c cut by the facets of c that are tight on it."""
    if face.rank != c.rank or not is_subcone(face, c):
        return False
    gens = list(face.rays) + list(face.lineality)
    tight = [j for j, f in enumerate(c.facets) if all(dot(g, f) == 0 for g in gens)]
    return c.face_with_tight_set(tight) == face


def zero_cone(rank: int) -> Cone:
    return Cone._make(rank, (), ())
