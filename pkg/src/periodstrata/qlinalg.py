"""Dense exact linear algebra over Q on lists of ``mpq`` rows."""

from __future__ import annotations

from gmpy2 import mpq

QMatrix = list  # list[list[mpq]]

_ZERO = mpq(0)


def zeros(rows: int, cols: int) -> QMatrix:
    return [[_ZERO] * cols for _ in range(rows)]


def identity(n: int) -> QMatrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = mpq(1)
    return out


def matmul(a: QMatrix, b: QMatrix, inner: int | None = None) -> QMatrix:
    if not a:
        return []
    m = len(b[0]) if b else 0
    k = len(b) if inner is None else inner
    out = []
    for row in a:
        acc = [_ZERO] * m
        for t in range(k):
            c = row[t]
            if c:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        acc[j] += c * brow[j]
        out.append(acc)
    return out


def transpose(a: QMatrix, cols: int | None = None) -> QMatrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def rref(a: QMatrix, ncols: int | None = None) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        prow = [v * inv for v in m[r]]
        m[r] = prow
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a: QMatrix, ncols: int | None = None) -> int:
    return len(rref(a, ncols)[1])


def nullspace(a: QMatrix, ncols: int) -> list[list]:
    """Basis of ``{v : a v = 0}`` as a list of vectors."""
    red, pivots = rref(a, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [_ZERO] * ncols
        v[fc] = mpq(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def columns(a: QMatrix, ncols: int | None = None) -> list[list]:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*a)]


def column_basis(vectors: list[list], dim: int) -> list[list]:
    """A basis of the span of ``vectors`` (each of length ``dim``)."""
    if not vectors:
        return []
    red, _ = rref(vectors, dim)
    return red


def span_rank(vectors: list[list], dim: int) -> int:
    if not vectors:
        return 0
    return rank(vectors, dim)


def span_contains(big: list[list], small: list[list], dim: int) -> bool:
    return span_rank(big, dim) == span_rank(list(big) + list(small), dim)


def span_equal(a: list[list], b: list[list], dim: int) -> bool:
    ra, rb = span_rank(a, dim), span_rank(b, dim)
    return ra == rb == span_rank(list(a) + list(b), dim)


def apply(a: QMatrix, v: list) -> list:
    return [sum((c * x for c, x in zip(row, v) if c and x), _ZERO) for row in a]


def is_zero(a: QMatrix) -> bool:
    return all(not c for row in a for c in row)


def charpoly(a: QMatrix) -> list:
    """Coefficients (lowest first) of det(T I - a) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = mpq(1)
    m = zeros(n, n)
    for k in range(1, n + 1):
        m = matmul(a, m)
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = matmul(a, m)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), _ZERO) / k
    return coeffs
