"""Exact integer and rational linear algebra.

Everything downstream (cone duality, face tightness, fan predicates) relies on
exact arithmetic, so this module works with arbitrary-precision ints and
`fractions.Fraction` only; no floats anywhere.

Conventions: a lattice vector is a tuple of ints, a matrix is a sequence of
row vectors of equal length.  Normal forms use fraction-free integer
algorithms (Bareiss elimination, unimodular row operations).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

Rational = Fraction
IntVec = tuple[int, ...]
Scalar = Union[int, Fraction]
Vec = tuple[Scalar, ...]


class ExactError(ValueError):
    """Raised for arithmetic preconditions (zero vectors, dependent rows)."""


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


def lcm_all(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    if len(a) != len(b):
        raise ExactError(f"rank mismatch in pairing: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vec_add(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: IntVec, b: IntVec) -> IntVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: int, a: IntVec) -> IntVec:
    return tuple(c * x for x in a)


def vec_neg(a: IntVec) -> IntVec:
    return tuple(-x for x in a)


def is_zero_vec(a: Sequence[Scalar]) -> bool:
    return all(x == 0 for x in a)


def primitive(v: Sequence[int]) -> IntVec:
    """v divided by the gcd of its coordinates; errors on the zero vector."""
    g = gcd_all(v)
    if g == 0:
        raise ExactError("zero vector has no primitive representative")
    if g == 1:
        return tuple(v)
    return tuple(x // g for x in v)


def integerize(v: Sequence[Scalar]) -> IntVec:
    """Clear denominators and primitivize a nonzero rational vector."""
    fracs = [Fraction(x) for x in v]
    den = lcm_all(f.denominator for f in fracs) if fracs else 1
    return primitive(tuple(int(f * den) for f in fracs))


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    Rational rows are scaled to primitive integer rows first; scaling rows
    does not change the rank.
    """
    m = [list(integerize(r)) for r in rows if not is_zero_vec(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(rk + 1, len(m)):
            for j in range(col + 1, ncols):
                m[i][j] = (m[rk][col] * m[i][j] - m[i][col] * m[rk][j]) // prev
            m[i][col] = 0
        prev = m[rk][col]
        rk += 1
        if rk == len(m):
            break
    return rk


def hnf(rows: Sequence[Sequence[int]]) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form of the lattice spanned by `rows`.

    Returns the nonzero rows only: pivots positive, entries above each pivot
    reduced into [0, pivot).  Canonical for the row lattice, hence usable as
    a structural-equality key.
    """
    work = [list(r) for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    pr = 0
    for col in range(n):
        piv = None
        for i in range(pr, m):
            if work[i][col] == 0:
                continue
            if piv is None:
                piv = i
                continue
            a, b = work[piv][col], work[i][col]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            rp = [x * work[piv][k] + y * work[i][k] for k in range(n)]
            ri = [u * work[i][k] - v * work[piv][k] for k in range(n)]
            work[piv], work[i] = rp, ri
        if piv is None:
            continue
        work[pr], work[piv] = work[piv], work[pr]
        if work[pr][col] < 0:
            work[pr] = [-x for x in work[pr]]
        p = work[pr][col]
        for i in range(pr):
            q = work[i][col] // p
            if q:
                work[i] = [work[i][k] - q * work[pr][k] for k in range(n)]
        pr += 1
    return tuple(tuple(r) for r in work[:pr])


def kernel_basis(rows: Sequence[Sequence[int]], n: int) -> tuple[IntVec, ...]:
    """Basis of the integer kernel {x in Z^n : <row_i, x> = 0 for all i}.

    Runs the Hermite elimination on [A^T | I]; rows whose A^T-part vanishes
    carry a basis of the kernel lattice in their identity-part.  The kernel of
    an integer map is saturated, so the result is a full basis of the kernel
    as a subgroup of Z^n.
    """
    rows = [r for r in rows if not is_zero_vec(r)]
    if not rows:
        return tuple(tuple(1 if k == j else 0 for k in range(n)) for j in range(n))
    m = len(rows)
    aug = [[rows[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)]
           for j in range(n)]
    reduced = hnf(aug)
    kernel = [r[m:] for r in reduced if is_zero_vec(r[:m])]
    # rows of an HNF with zero left block are themselves in HNF: canonical
    return tuple(tuple(r) for r in kernel)


def elementary_divisors(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero elementary divisors d_1 | d_2 | ... (Smith normal form diagonal)."""
    work = [list(r) for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    divisors: list[int] = []
    top = 0
    while True:
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if work[i][j] != 0 and (piv is None or abs(work[i][j]) < abs(work[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        work[top], work[pi] = work[pi], work[top]
        for row in work:
            row[top], row[pj] = row[pj], row[top]
        dirty = False
        p = work[top][top]
        for i in range(top + 1, m):
            if work[i][top] % p:
                dirty = True
            q = work[i][top] // p
            if q:
                work[i] = [work[i][k] - q * work[top][k] for k in range(n)]
        for j in range(top + 1, n):
            if work[top][j] % p:
                dirty = True
            q = work[top][j] // p
            if q:
                for row in work:
                    row[j] -= q * row[top]
        if dirty:
            continue
        # pivot divides everything it cleared; enforce divisibility on the rest
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if work[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            work[top] = [a + b for a, b in zip(work[top], work[bad])]
            continue
        divisors.append(abs(p))
        top += 1
    return tuple(divisors)


def lattice_basis_extension_test(rows: Sequence[Sequence[int]]) -> bool:
    """True iff the (independent) rows extend to a basis of the ambient lattice.

    Decided by the Smith normal form having all elementary divisors equal to 1.
    """
    rows = [tuple(r) for r in rows]
    if rank(rows) != len(rows):
        raise ExactError("lattice_basis_extension_test requires independent rows")
    return all(d == 1 for d in elementary_divisors(rows))
