"""Exact row reduction over the rationals (dense lists of ``mpq``)."""

from __future__ import annotations

from gmpy2 import mpq

from .exact_tensor import Q


def rref(rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    m = [[Q(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def row_space(vectors):
    """Canonical basis of the span: nonzero rows of the RREF."""
    red, _ = rref(vectors)
    return red


def nullspace(rows, ncols=None):
    """Basis of {v : rows . v = 0}, each vector with its first nonzero entry 1.

    The basis is returned in RREF order so it is canonical.
    """
    if not rows:
        n = ncols
        return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]
    red, piv = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * n
        v[f] = mpq(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return row_space(basis) if basis else []


def rank(rows) -> int:
    return len(rref(rows)[1])


def inverse(mat):
    n = len(mat)
    aug = [list(map(Q, r)) + [mpq(1) if i == j else mpq(0) for j in range(n)]
           for i, r in enumerate(mat)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]


def solve(mat, rhs):
    """One solution x of mat . x = rhs, or None when inconsistent."""
    n = len(mat[0]) if mat else 0
    aug = [list(map(Q, r)) + [Q(b)] for r, b in zip(mat, rhs)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [mpq(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), mpq(0)) for c in bt] for r in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def identity(n):
    return [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]
