"""Small exact dense linear algebra over a Field (matrices are tuples of rows)."""
from __future__ import annotations

from .errors import DomainError


def mat_mul(field, A, B):
    cols = len(B[0])
    return tuple(
        tuple(_dot(field, row, [B[k][j] for k in range(len(B))]) for j in range(cols))
        for row in A
    )


def _dot(field, xs, ys):
    acc = field.zero
    for x, y in zip(xs, ys):
        acc = field.add(acc, field.mul(x, y))
    return acc


def identity(field, n):
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def _eliminate(field, rows, ncols=None):
    """Row-reduce a copy of ``rows`` in place (first-nonzero pivoting).

    Returns (reduced rows, pivot columns, determinant sign/scale factor).
    The factor is the product of pivots with row-swap signs, which is the
    determinant when the matrix is square.
    """
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    det = field.one
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not field.eq(M[i][c], field.zero)), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            det = field.neg(det)
        pv = M[r][c]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        M[r] = [field.mul(inv, v) for v in M[r]]
        for i in range(nrows):
            if i != r and not field.eq(M[i][c], field.zero):
                f = M[i][c]
                M[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, pivots, det


def rank(field, rows) -> int:
    return len(_eliminate(field, rows)[1])


def det(field, rows):
    n = len(rows)
    _, pivots, d = _eliminate(field, rows)
    return d if len(pivots) == n else field.zero


def inverse(field, rows):
    n = len(rows)
    I = identity(field, n)
    aug = [tuple(r) + I[i] for i, r in enumerate(rows)]
    M, pivots, _ = _eliminate(field, aug, ncols=n)
    if pivots != list(range(n)):
        raise DomainError("matrix is singular")
    return tuple(tuple(row[n:]) for row in M)


def solve(field, rows, rhs):
    """One solution x of rows·x = rhs (free variables set to 0), or None."""
    n = len(rows[0])
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    M, pivots, _ = _eliminate(field, aug, ncols=n)
    for row in M[len(pivots):]:
        if not field.eq(row[n], field.zero):
            return None
    x = [field.zero] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return tuple(x)
