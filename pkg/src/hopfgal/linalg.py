"""Exact linear algebra over the ground fields and over base rings.

Two layers:

* field_* functions work on raw scalar matrices (Gaussian elimination;
  division is fine, it is a field).  Large prime-field systems are routed
  through an int64 numpy elimination, still exact: entries stay reduced
  mod p, magnitudes never exceed p**2.

* ring_* functions work on matrices of BaseElements over an arbitrary base
  ring, where zero divisors are possible and blind division is not.  The
  workhorse is elimination that only ever pivots on *units* of the ring
  (multiplying by an explicit inverse, exact over any commutative ring),
  falling back to the division-free Berkowitz determinant for any block
  without a unit entry.  The two determinant routes agree; tests pin that.
"""

from __future__ import annotations

import numpy as np

from .fields import Field, PrimeField
from .rings import BaseElement, BaseRing, _berkowitz_dicts

_NUMPY_THRESHOLD = 48


# --------------------------------------------------------------------------
# field layer: matrices are lists of lists of raw scalars
# --------------------------------------------------------------------------

def field_det(M, field: Field):
    n = len(M)
    if n == 0:
        return field.one()
    A = [row[:] for row in M]
    det = field.one()
    sign = False
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not field.is_zero(A[r][col]):
                piv = r
                break
        if piv is None:
            return field.zero()
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = not sign
        p = A[col][col]
        det = field.mul(det, p)
        pinv = field.inv(p)
        for r in range(col + 1, n):
            f = A[r][col]
            if field.is_zero(f):
                continue
            f = field.mul(f, pinv)
            A[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[r], A[col])]
    return field.neg(det) if sign else det


def field_solve(M, b, field: Field):
    """Solve the square system M x = b; None if M is singular."""
    n = len(M)
    if isinstance(field, PrimeField) and n >= _NUMPY_THRESHOLD:
        return _solve_mod_p(M, b, field.p)
    A = [row[:] + [bv] for row, bv in zip(M, b)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not field.is_zero(A[r][col]):
                piv = r
                break
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pinv = field.inv(A[col][col])
        A[col] = [field.mul(pinv, x) for x in A[col]]
        for r in range(n):
            if r == col:
                continue
            f = A[r][col]
            if field.is_zero(f):
                continue
            A[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def _solve_mod_p(M, b, p: int):
    n = len(M)
    A = np.zeros((n, n + 1), dtype=np.int64)
    for i, row in enumerate(M):
        A[i, :n] = [x % p for x in row]
        A[i, n] = b[i] % p
    for col in range(n):
        piv = col + int(np.argmax(A[col:, col] != 0))
        if A[piv, col] == 0:
            return None
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
        pinv = pow(int(A[col, col]), p - 2, p)
        A[col] = (A[col] * pinv) % p
        factors = A[:, col].copy()
        factors[col] = 0
        A = (A - np.outer(factors, A[col])) % p
    return [int(x) for x in A[:, n]]


def field_kernel(M, field: Field, ncols: int):
    """Basis of the kernel of an (m x ncols) matrix, as coordinate lists."""
    A = [row[:] for row in M]
    m = len(A)
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, m):
            if not field.is_zero(A[i][col]):
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pinv = field.inv(A[r][col])
        A[r] = [field.mul(pinv, x) for x in A[r]]
        for i in range(m):
            if i != r and not field.is_zero(A[i][col]):
                f = A[i][col]
                A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for row_i, pc in enumerate(pivots):
            v[pc] = field.neg(A[row_i][fc])
        basis.append(v)
    return basis


def field_matrix_invertible(M, field: Field) -> bool:
    return not field.is_zero(field_det(M, field))


# --------------------------------------------------------------------------
# ring layer: matrices are lists of lists of BaseElements
# --------------------------------------------------------------------------

def berkowitz_det(M, ring: BaseRing) -> BaseElement:
    raw = [[e.coeffs for e in row] for row in M]
    return ring.element(_berkowitz_dicts(ring, raw))


def _find_unit_pivot(M, ring: BaseRing, start: int):
    n = len(M)
    # cheap first: single-term entries (constants, monomials) invert fastest
    for sweep in (True, False):
        for i in range(start, n):
            for j in range(start, n):
                e = M[i][j]
                if e.is_zero or (sweep and len(e.coeffs) != 1):
                    continue
                inv = ring.try_inverse(e)
                if inv is not None:
                    return i, j, inv
        if not sweep:
            break
    return None


def ring_det(M, ring: BaseRing) -> BaseElement:
    """Determinant over any base ring: unit-pivot elimination, Berkowitz tail."""
    n = len(M)
    if n == 0:
        return ring.one()
    if ring.is_field:
        K = ring.field
        scal = field_det([[e.constant_scalar() for e in row] for row in M], K)
        return ring.from_scalar(scal)
    A = [row[:] for row in M]
    sign = False
    diag = []
    for step in range(n):
        found = _find_unit_pivot(A, ring, step)
        if found is None:
            tail = [[A[i][j] for j in range(step, n)] for i in range(step, n)]
            rest = berkowitz_det(tail, ring)
            acc = rest
            for d in diag:
                acc = acc * d
            return -acc if sign else acc
        i, j, pinv = found
        if i != step:
            A[step], A[i] = A[i], A[step]
            sign = not sign
        if j != step:
            for row in A:
                row[step], row[j] = row[j], row[step]
            sign = not sign
        diag.append(A[step][step])
        for r in range(step + 1, n):
            f = A[r][step]
            if f.is_zero:
                continue
            f = f * pinv
            A[r] = [x - f * y for x, y in zip(A[r], A[step])]
    acc = ring.one()
    for d in diag:
        acc = acc * d
    return -acc if sign else acc


def ring_solve(M, b, ring: BaseRing):
    """Solve the square system M x = b over the ring.

    Returns the unique solution when the determinant is a unit, else None.
    Unit-pivot Gauss-Jordan; if some block has no unit entry the rare Cramer
    fallback takes over (division-free determinants, one per unknown).
    """
    n = len(M)
    if ring.is_field:
        K = ring.field
        sol = field_solve([[e.constant_scalar() for e in row] for row in M],
                          [e.constant_scalar() for e in b], K)
        if sol is None:
            return None
        return [ring.from_scalar(c) for c in sol]
    A = [row[:] + [bv] for row, bv in zip(M, b)]
    colperm = list(range(n))
    for step in range(n):
        found = _find_unit_pivot(A, ring, step)
        if found is None:
            return _cramer_solve(M, b, ring)
        i, j, pinv = found
        if i != step:
            A[step], A[i] = A[i], A[step]
        if j != step:
            for row in A:
                row[step], row[j] = row[j], row[step]
            colperm[step], colperm[j] = colperm[j], colperm[step]
        A[step] = [pinv * x for x in A[step]]
        for r in range(n):
            if r == step:
                continue
            f = A[r][step]
            if f.is_zero:
                continue
            A[r] = [x - f * y for x, y in zip(A[r], A[step])]
    x = [None] * n
    for row_i in range(n):
        x[colperm[row_i]] = A[row_i][n]
    return x


def _cramer_solve(M, b, ring: BaseRing):
    d = berkowitz_det(M, ring)
    dinv = ring.try_inverse(d)
    if dinv is None:
        return None
    out = []
    for j in range(len(M)):
        Mj = [[b[i] if c == j else M[i][c] for c in range(len(M))] for i in range(len(M))]
        out.append(berkowitz_det(Mj, ring) * dinv)
    return out


def ring_matrix_inverse(M, ring: BaseRing):
    """Inverse of a square matrix over the ring, or None if det is no unit."""
    n = len(M)
    cols = []
    for j in range(n):
        e = [ring.one() if i == j else ring.zero() for i in range(n)]
        x = ring_solve(M, e, ring)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(A, B, ring: BaseRing):
    n, k, m = len(A), len(B), len(B[0])
    out = [[ring.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = ring.zero()
            for l in range(k):
                if A[i][l].is_zero or B[l][j].is_zero:
                    continue
                acc = acc + A[i][l] * B[l][j]
            out[i][j] = acc
    return out


def mat_vec(A, v, ring: BaseRing):
    out = []
    for row in A:
        acc = ring.zero()
        for a, x in zip(row, v):
            if not (a.is_zero or x.is_zero):
                acc = acc + a * x
        out.append(acc)
    return out


def identity_matrix(n: int, ring: BaseRing):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def map_matrix(f, M):
    """Apply a BaseMorphism entrywise."""
    return [[f.apply(e) for e in row] for row in M]
