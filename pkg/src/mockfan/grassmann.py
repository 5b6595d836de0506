"""Hypersurface-in-Gr(2,n) instance data and its machine verification.

Everything here is explicit integer data for the degree-d linear system on
Gr(2, n) pulled back to a torus fibration over a hyperplane-arrangement
base.  Index conventions:

  I = {(i, j) : 0 <= i <= j <= n-3} indexes the arrangement coordinates;
  the base lattice N is Z^I modulo the all-ones vector and we use the basis
  {e_ij : (i,j) in I, (i,j) != (0,0)}, so the dual M has the basis
  {w_ij - w_00}, which the exponent table below hits directly.

  J = {(i, j) : 0 <= i < j <= n-1} indexes Pluecker coordinates, split as
  J0 = {(0,1)}, J1 = {(i,j) : i < 2, j > 1}, J2 = {(i,j) : i > 1}; a
  degree-d monomial is an alpha in S_{J,d} with weight split (c0, c1, c2)
  across (J0, J1, J2).

Ambient coordinate order for charts: (M block | M-dagger block indexed
-1..n-3 | delta), with the torus-fiber dual block of rank n-1 and one
t-dual slot; the primal side reads (N block | N-dagger block | t).

The zero chart runs the subdivision pipeline and `verify` compares its
bounded cones and active sets against the seven expected ones; `vol_expression`
then assembles the signed stratum-class sum with the known annotations
(two point strata, one very general degree-d hypersurface stratum in
P^(2n-5), four symbolic strata).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import Optional

from .cones import Cone, cone_from_generators
from .exact import IntVec
from .subdivision import (LiftedExponent, MockPolytopeChart, SubdivisionResult,
                          subdivide_chart)
from .volume import ClassLabel, FormalSum, StratumAnnotation, vol_skeleton


class GrassmannError(ValueError):
    """Invalid parameters or indices for the Gr(2,n) instance."""


class VerificationFailed(RuntimeError):
    """Raised when the computed subdivision does not match the expected data."""


@dataclass(frozen=True)
class GrassmannSpec:
    n: int
    d: int
    l: int = 1

    def __post_init__(self):
        if self.n < 4:
            raise GrassmannError("n must be at least 4")
        if self.d < 2:
            raise GrassmannError("d must be at least 2")
        if self.l < 1:
            raise GrassmannError("scale l must be a positive integer")


Pair = tuple[int, int]
Alpha = tuple[int, ...]


@dataclass(frozen=True)
class IndexData:
    """Index sets and coordinate layout for one n."""
    n: int
    I: tuple[Pair, ...]
    J: tuple[Pair, ...]
    J0: tuple[Pair, ...]
    J1: tuple[Pair, ...]
    J2: tuple[Pair, ...]

    @property
    def m_rank(self) -> int:
        return len(self.I) - 1

    @property
    def dagger_rank(self) -> int:
        return self.n - 1

    @property
    def ambient_rank(self) -> int:
        """Rank of the chart lattice: M block + dagger block + delta."""
        return self.m_rank + self.dagger_rank + 1

    def m_slot(self, pair: Pair) -> int:
        """Coordinate slot of the M basis vector w_pair - w_00; pair != (0,0)."""
        if pair == (0, 0):
            raise GrassmannError("(0,0) has no M coordinate slot")
        return self.I.index(pair) - 1  # (0,0) is lexicographically first in I

    def dagger_slot(self, j: int) -> int:
        """Coordinate slot of eta_j (or e-dagger_j), -1 <= j <= n-3."""
        if not -1 <= j <= self.n - 3:
            raise GrassmannError(f"dagger index {j} out of range")
        return self.m_rank + (j + 1)

    @property
    def delta_slot(self) -> int:
        return self.ambient_rank - 1


@functools.lru_cache(maxsize=None)
def index_data(n: int) -> IndexData:
    if n < 4:
        raise GrassmannError("n must be at least 4")
    I = tuple((i, j) for i in range(n - 2) for j in range(i, n - 2))
    J = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    J0 = ((0, 1),)
    J1 = tuple(p for p in J if p[0] < 2 and p[1] > 1)
    J2 = tuple(p for p in J if p[0] > 1)
    assert len(J) == n * (n - 1) // 2
    return IndexData(n, I, J, J0, J1, J2)


def varpi(n: int, pair: Pair) -> IntVec:
    """Exponent vector of one Pluecker coordinate, in the M + M-dagger blocks."""
    data = index_data(n)
    if pair not in set(data.J):
        raise GrassmannError(f"{pair} is not in J")
    i, j = pair
    v = [0] * (data.ambient_rank - 1)

    def eta(k: int):
        v[data.dagger_slot(k)] += 1

    def m_basis(p: Pair):
        v[data.m_slot(p)] += 1

    if pair == (0, 1):
        pass
    elif pair == (0, 2):
        eta(-1)
        eta(0)
    elif i == 0:
        eta(-1)
        eta(j - 2)
        m_basis((j - 2, j - 2))
    elif i == 1:
        eta(j - 2)
    else:
        eta(-1)
        eta(i - 2)
        eta(j - 2)
        m_basis((i - 2, j - 2))
    return tuple(v)


def varpi_alpha(n: int, alpha: Alpha) -> IntVec:
    data = index_data(n)
    v = [0] * (data.ambient_rank - 1)
    for a, pair in zip(alpha, data.J):
        if a:
            w = varpi(n, pair)
            for k in range(len(v)):
                v[k] += a * w[k]
    return tuple(v)


def weight_split(n: int, alpha: Alpha) -> tuple[int, int, int]:
    """(c0, c1, c2): the weight of alpha on J0, J1, J2."""
    data = index_data(n)
    c0 = c1 = c2 = 0
    for a, pair in zip(alpha, data.J):
        if pair == (0, 1):
            c0 += a
        elif pair[0] < 2:
            c1 += a
        else:
            c2 += a
    return c0, c1, c2


def kappa(spec: GrassmannSpec, alpha: Alpha) -> int:
    """t-weight of a monomial: 0 at full J1 weight, else 2(d - c1) - 1."""
    if sum(alpha) != spec.d:
        raise GrassmannError("alpha must have total degree d")
    c1 = weight_split(spec.n, alpha)[1]
    if c1 == spec.d:
        return 0
    return 2 * (spec.d - c1) - 1


def enumerate_S(spec: GrassmannSpec) -> list[Alpha]:
    """All degree-d multidegrees over J, in lexicographic order."""
    data = index_data(spec.n)
    m = len(data.J)
    out: list[Alpha] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == m - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + [a], remaining - a, pos + 1)

    rec([], spec.d, 0)
    out.sort()
    assert len(out) == comb(m + spec.d - 1, spec.d)
    return out


def stratify_S(spec: GrassmannSpec, d0: int, d1: int, d2: int) -> list[Alpha]:
    """The stratum of S_{J,d} with weight split exactly (d0, d1, d2)."""
    if d0 + d1 + d2 != spec.d:
        raise GrassmannError("stratum weights must sum to d")
    if min(d0, d1, d2) < 0:
        raise GrassmannError("stratum weights must be nonnegative")
    return [a for a in enumerate_S(spec) if weight_split(spec.n, a) == (d0, d1, d2)]


def alpha_id(n: int, alpha: Alpha) -> str:
    """Readable canonical id of a multidegree, e.g. '(0,1)^2*(2,3)'."""
    data = index_data(n)
    parts = []
    for a, (i, j) in zip(alpha, data.J):
        if a == 1:
            parts.append(f"({i},{j})")
        elif a > 1:
            parts.append(f"({i},{j})^{a}")
    return "*".join(parts) if parts else "1"


def zero_chart(spec: GrassmannSpec) -> MockPolytopeChart:
    """Chart over the zero cone of the base: support {0} x N-dagger x [0, inf).

    Sigma duals are the +/- M basis (a lineality of the lifted cone) plus
    delta; items are the monomials with exponent varpi_alpha and t-weight
    kappa(alpha) at scale l.
    """
    data = index_data(spec.n)
    r = data.ambient_rank
    duals: list[IntVec] = []
    for k in range(data.m_rank):
        e = [0] * r
        e[k] = 1
        duals.append(tuple(e))
        e2 = [0] * r
        e2[k] = -1
        duals.append(tuple(e2))
    delta = [0] * r
    delta[data.delta_slot] = 1
    duals.append(tuple(delta))
    items = []
    for alpha in enumerate_S(spec):
        exponent = varpi_alpha(spec.n, alpha) + (0,)
        items.append(LiftedExponent(alpha_id(spec.n, alpha), exponent, kappa(spec, alpha)))
    return MockPolytopeChart("zero", r, tuple(duals), tuple(items), scale=spec.l)


CONE_NAMES = ("tau0", "tau1", "tau2", "tau3", "sigma0", "sigma1", "sigma2")


def _dagger_sum_ray(spec: GrassmannSpec, coeff: int) -> IntVec:
    """e_t + coeff * sum of e-dagger_j over 0 <= j <= n-3, as a primal vector."""
    data = index_data(spec.n)
    v = [0] * data.ambient_rank
    for j in range(0, spec.n - 2):
        v[data.dagger_slot(j)] = coeff
    v[data.delta_slot] = 1
    return tuple(v)


def expected_bounded_cones(spec: GrassmannSpec) -> dict[str, Cone]:
    """The seven bounded cones, with l-scaled dagger coefficients."""
    r = index_data(spec.n).ambient_rank
    g = {
        "tau0": _dagger_sum_ray(spec, -2 * spec.l),
        "tau1": _dagger_sum_ray(spec, -spec.l),
        "tau2": _dagger_sum_ray(spec, spec.l),
        "tau3": _dagger_sum_ray(spec, 2 * spec.l),
    }
    cones = {name: cone_from_generators(r, [gen]) for name, gen in g.items()}
    cones["sigma0"] = cone_from_generators(r, [g["tau0"], g["tau1"]])
    cones["sigma1"] = cone_from_generators(r, [g["tau1"], g["tau2"]])
    cones["sigma2"] = cone_from_generators(r, [g["tau2"], g["tau3"]])
    return cones


def expected_active_sets(spec: GrassmannSpec) -> dict[str, frozenset[str]]:
    d = spec.d

    def ids(strata: list[tuple[int, int, int]]) -> frozenset[str]:
        out = set()
        for (d0, d1, d2) in strata:
            for alpha in stratify_S(spec, d0, d1, d2):
                out.add(alpha_id(spec.n, alpha))
        return frozenset(out)

    return {
        "tau0": ids([(0, d - i, i) for i in range(1, d + 1)]),
        "tau1": ids([(0, d - 1, 1), (0, d, 0)]),
        "tau2": ids([(0, d, 0), (1, d - 1, 0)]),
        "tau3": ids([(i, d - i, 0) for i in range(1, d + 1)]),
        "sigma0": ids([(0, d - 1, 1)]),
        "sigma1": ids([(0, d, 0)]),
        "sigma2": ids([(1, d - 1, 0)]),
    }


@dataclass(frozen=True)
class ConeCheck:
    name: str
    expected: Cone
    found: bool
    expected_active: frozenset[str]
    computed_active: Optional[frozenset[str]]

    @property
    def active_matches(self) -> bool:
        return self.computed_active is not None and \
            self.computed_active == self.expected_active


@dataclass(frozen=True)
class VerificationReport:
    spec: GrassmannSpec
    checks: tuple[ConeCheck, ...]
    extra_bounded: tuple[Cone, ...]
    result: SubdivisionResult

    @property
    def cones_matched(self) -> int:
        return sum(1 for c in self.checks if c.found)

    @property
    def active_matched(self) -> int:
        return sum(1 for c in self.checks if c.active_matches)

    @property
    def passed(self) -> bool:
        return (self.cones_matched == len(self.checks)
                and self.active_matched == len(self.checks)
                and not self.extra_bounded)

    def render(self) -> str:
        lines = [f"grassmann-verify n={self.spec.n} d={self.spec.d} l={self.spec.l}"]
        for c in self.checks:
            lines.append(f"cone {c.name}: {'found' if c.found else 'NOT FOUND'}")
            if c.found:
                if c.active_matches:
                    lines.append(f"active {c.name}: match ({len(c.expected_active)} items)")
                else:
                    missing = sorted(c.expected_active - (c.computed_active or frozenset()))
                    extra = sorted((c.computed_active or frozenset()) - c.expected_active)
                    lines.append(f"active {c.name}: MISMATCH missing={missing} extra={extra}")
        for c in self.extra_bounded:
            lines.append(f"unexpected bounded cone: rays={list(c.rays)}")
        total = len(self.checks)
        lines.append(f"result: {self.cones_matched}/{total} cones, "
                     f"{self.active_matched}/{total} active sets"
                     + ("" if not self.extra_bounded
                        else f", {len(self.extra_bounded)} unexpected bounded cones"))
        lines.append("status: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def verify(spec: GrassmannSpec, verify_fan: bool = True) -> VerificationReport:
    """Subdivide the zero chart and compare with the expected seven bounded cones."""
    chart = zero_chart(spec)
    result = subdivide_chart(chart, verify=verify_fan)
    bounded = set(result.projected_fan.bounded_cones())
    expected = expected_bounded_cones(spec)
    expected_active = expected_active_sets(spec)
    checks = []
    for name in CONE_NAMES:
        cone = expected[name]
        found = cone in bounded
        computed = result.active_sets.get(cone) if found else None
        checks.append(ConeCheck(name, cone, found, expected_active[name], computed))
    extras = tuple(sorted(bounded - set(expected.values()),
                          key=lambda c: (c.dim(), c.rays)))
    return VerificationReport(spec, tuple(checks), extras, result)


def hypersurface_label(spec: GrassmannSpec) -> ClassLabel:
    """The very general degree-d hypersurface in P^(2n-5)."""
    return ClassLabel.hypersurface(2 * spec.n - 5, spec.d)


def grassmann_annotations(spec: GrassmannSpec) -> dict[Cone, StratumAnnotation]:
    expected = expected_bounded_cones(spec)
    ann: dict[Cone, StratumAnnotation] = {}
    for name in ("tau1", "tau2"):
        ann[expected[name]] = StratumAnnotation(name, 1, (ClassLabel.point(),))
    ann[expected["sigma1"]] = StratumAnnotation("sigma1", 1, (hypersurface_label(spec),))
    for name in ("tau0", "tau3", "sigma0", "sigma2"):
        ann[expected[name]] = StratumAnnotation(
            name, 1, (ClassLabel.symbolic(f"E({name})"),))
    return ann


def vol_expression(spec: GrassmannSpec, report: Optional[VerificationReport] = None) -> FormalSum:
    """The signed stratum-class sum over the verified bounded cones.

    Runs (or reuses) the verification first; cones with fewer than two
    distinct active exponents are filtered out, which keeps all seven here.
    """
    if report is None:
        report = verify(spec)
    if not report.passed:
        raise VerificationFailed(
            f"verification failed for n={spec.n} d={spec.d} l={spec.l}")
    result = report.result
    return vol_skeleton(result.projected_fan, grassmann_annotations(spec),
                        active_filter=lambda c: result.effective_dimension(c) >= 2)


def expected_vol_expression(spec: GrassmannSpec) -> FormalSum:
    """The closed-form answer the pipeline must reproduce."""
    total = FormalSum.zero()
    for name in ("tau0", "tau3"):
        total = total + FormalSum.of(ClassLabel.symbolic(f"E({name})"))
    total = total + FormalSum.of(ClassLabel.point(), 2)
    for name in ("sigma0", "sigma2"):
        total = total - FormalSum.of(ClassLabel.symbolic(f"E({name})"))
    total = total - FormalSum.of(hypersurface_label(spec))
    return total
