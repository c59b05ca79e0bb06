"""Independent reference computations used to cross-check the main routines.

Nothing here shares code with the Smith form, the restriction of scalars
or the datum enumeration it checks.  Arithmetic is ``fractions.Fraction``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

__all__ = [
    "frac_rank",
    "frac_nullity",
    "frac_nullspace",
    "poly_eval",
    "eval_matrix",
    "tower_at_point",
    "point_h0",
    "charpoly_frac",
    "root_mult_frac",
    "generic_rank_by_points",
    "minors_gcd",
    "naive_is_datum",
    "all_data_on_frame",
    "brute_min_covers",
    "restrict_to_q",
    "integer_roots_frac",
    "point_datum_frac",
]


def frac_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def frac_nullity(rows, ncols: int) -> int:
    return ncols - frac_rank(rows)


def frac_nullspace(rows, ncols: int) -> list[list[Fraction]]:
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [a / m[r][c] for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def poly_eval(coeffs: Sequence, a: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * a + Fraction(int(c.numerator), int(c.denominator))
    return acc


def eval_matrix(values, a: Fraction) -> list[list[Fraction]]:
    """Evaluate a grid of polynomials (objects with ``coeffs``) at ``a``."""
    return [[poly_eval(v.coeffs, a) for v in row] for row in values]


def tower_at_point(blocks: Sequence, k: int, l: int, a: Fraction) -> list[list[Fraction]]:
    """Window matrix of a tower specialized at ``x = a``, built from scratch."""
    mats = [eval_matrix(b.values, a) for b in blocks]
    n = len(mats[0])
    size = l - k
    N = [[Fraction(0)] * (n * size) for _ in range(n * size)]
    for r in range(size):
        for c in range(r + 1):
            s = r - c
            if s >= len(mats):
                continue
            for i in range(n):
                for j in range(n):
                    v = mats[s][i][j]
                    if s == 0 and i == j:
                        v += k + r
                    N[r * n + i][c * n + j] = v
    return N


def point_h0(blocks, k: int, l: int, a: Fraction) -> int:
    N = tower_at_point(blocks, k, l, a)
    return frac_nullity(N, len(N))


def charpoly_frac(M: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients (lowest first) of det(T I - M): evaluate at n + 1 integers, interpolate."""
    n = len(M)
    pts = list(range(n + 1))
    vals = []
    for t in pts:
        A = [[Fraction(t if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]
        vals.append(_det(A))
    # Lagrange interpolation into monomial coefficients
    coeffs = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(zip(pts, vals)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t in range(len(basis)):
            coeffs[t] += yi * basis[t] / denom
    return coeffs


def _det(A: list[list[Fraction]]) -> Fraction:
    A = [list(r) for r in A]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def root_mult_frac(coeffs: list[Fraction], r: Fraction) -> int:
    """Multiplicity of ``r`` as a root, by repeated synthetic division."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    m = 0
    while len(cs) > 1:
        q = [Fraction(0)] * (len(cs) - 1)
        acc = Fraction(0)
        for i in range(len(cs) - 1, 0, -1):
            acc = acc * r + cs[i]
            q[i - 1] = acc
        if acc * r + cs[0] != 0:
            break
        cs, m = q, m + 1
    return m


def generic_rank_by_points(values, max_deg: int) -> int:
    """Rank over Q(x) as the maximum rank over enough rational points.

    A nonzero r x r minor has degree <= r * max_deg, so it survives at one of
    any ``r * max_deg + 1`` distinct points.
    """
    rows = len(values)
    cols = len(values[0]) if rows else 0
    need = min(rows, cols) * max_deg + 1
    best = 0
    for a in range(need):
        best = max(best, frac_rank(eval_matrix(values, Fraction(a))))
    return best


def minors_gcd(values, order: int):
    """Monic gcd (a sympy Poly in x) of all ``order x order`` minors."""
    import sympy

    x = sympy.Symbol("x")
    M = sympy.Matrix([[sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                                   for c in reversed(v.coeffs)] or [0], x).as_expr()
                       for v in row] for row in values])
    g = sympy.Poly(0, x)
    rows, cols = M.shape
    for rs in itertools.combinations(range(rows), order):
        for cs in itertools.combinations(range(cols), order):
            d = sympy.Poly(M.extract(list(rs), list(cs)).det(method="berkowitz"), x)
            g = sympy.gcd(g, d)
    if g.is_zero:
        return g
    return g.monic()


# -- brute-force de Rham data ------------------------------------------------

def naive_is_datum(omega: dict, delta: Callable[[int, int], int], lo: int, hi: int) -> bool:
    """Check (ii)-(iv) on every index in ``[lo, hi]`` using the given delta."""
    for i in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            if i >= j and delta(i, j) != 0:
                return False
    for i in range(lo, hi):
        w = omega.get(i, 0)
        if not (min(w, 1) <= delta(i, i + 1) <= w):
            return False
    for i in range(lo, hi + 1):
        for j in range(i, hi + 1):
            for k in range(j, hi + 1):
                a, b, c = delta(i, j), delta(j, k), delta(i, k)
                if not (max(a, b) <= c <= a + b):
                    return False
    return True


def all_data_on_frame(lo: int, hi: int, max_omega: int) -> list[tuple[tuple, tuple]]:
    """Every valid datum with support in ``[lo, hi]`` and omega <= ``max_omega``.

    Each datum is returned as ``(omega_vector, delta_vector)`` on the frame
    ``lo <= k < l <= hi + 1``; delta is extended from the support window by
    clamping before the axioms are checked on the whole frame plus margin.
    """
    pts = list(range(lo, hi + 1))
    frame = [(k, l) for k in range(lo, hi + 1) for l in range(k + 1, hi + 2)]
    out = []
    for om_vec in itertools.product(range(max_omega + 1), repeat=len(pts)):
        omega = {w: m for w, m in zip(pts, om_vec) if m}
        if not omega:
            out.append((om_vec, tuple(0 for _ in frame)))
            continue
        L, U = min(omega), max(omega)
        cells = [(k, l) for k in range(L, U + 1) for l in range(k + 1, U + 2)]
        ranges = []
        for k, l in cells:
            span = sum(omega.get(t, 0) for t in range(k, l))
            ranges.append(range(0, span + 1))
        for vals in itertools.product(*ranges):
            table = dict(zip(cells, vals))

            def delta(k, l, table=table, L=L, U=U):
                if k >= l:
                    return 0
                ck, cl = min(max(k, L), U + 1), min(max(l, L), U + 1)
                return table.get((ck, cl), 0)

            if naive_is_datum(omega, delta, lo - 1, hi + 2):
                out.append((om_vec, tuple(delta(k, l) for k, l in frame)))
    return out


def _le(a, b) -> bool:
    return all(x <= y for x, y in zip(a[0], b[0])) and all(x <= y for x, y in zip(a[1], b[1]))


def brute_min_covers(target: tuple, universe: list[tuple]) -> set[tuple]:
    """Minimal elements strictly above ``target`` with omega <= omega + 1 pointwise."""
    om = target[0]
    above = [u for u in universe if u != target and _le(target, u)
             and all(y <= x + 1 for x, y in zip(om, u[0]))]
    return {u for u in above if not any(v != u and _le(v, u) for v in above)}


def _frac(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def restrict_to_q(values, modulus_coeffs: Sequence) -> list[list[Fraction]]:
    """Q-matrix of a matrix over Q[x]/(f) on the basis 1, x, ..., x^{d-1}.

    Column ``(j, t)`` holds the coordinates of ``entry(i, j) * x^t mod f``.
    """
    mod = [_frac(c) for c in modulus_coeffs]
    d = len(mod) - 1

    def reduce(p: list[Fraction]) -> list[Fraction]:
        p = list(p) + [Fraction(0)] * max(0, d - len(p))
        for top in range(len(p) - 1, d - 1, -1):
            c = p[top]
            if c:
                for t in range(d + 1):
                    p[top - d + t] -= c * mod[t]
        return p[:d]

    rows = len(values)
    cols = len(values[0]) if rows else 0
    out = [[Fraction(0)] * (cols * d) for _ in range(rows * d)]
    for i in range(rows):
        for j in range(cols):
            base = [_frac(c) for c in values[i][j].coeffs]
            for t in range(d):
                col = reduce([Fraction(0)] * t + base)
                for a in range(d):
                    out[i * d + a][j * d + t] = col[a]
    return out


def integer_roots_frac(coeffs: Sequence[Fraction]) -> list[int]:
    """Integer roots by the rational root test on a cleared-denominator polynomial."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    roots = set()
    while len(cs) > 1 and cs[0] == 0:
        roots.add(0)
        cs = cs[1:]
    if len(cs) == 1:
        return sorted(roots)
    from math import lcm

    scale = lcm(*(c.denominator for c in cs))
    ints = [int(c * scale) for c in cs]
    c0 = abs(ints[0])
    divs = [t for t in range(1, int(c0 ** 0.5) + 1) if c0 % t == 0]
    cands = {t for d in divs for t in (d, c0 // d)}
    for r in cands:
        for s in (r, -r):
            if poly_eval(cs, Fraction(s)) == 0:
                roots.add(s)
    return sorted(roots)


def point_datum_frac(blocks, a: Fraction, i: int | None = None, j: int | None = None):
    """Pointwise (omega, delta) at ``x = a`` as plain dicts, optionally truncated.

    ``delta`` covers the pairs of the (truncated) support window.
    """
    A0 = eval_matrix(blocks[0].values, a)
    cp = charpoly_frac(A0)
    omega = {-r: root_mult_frac(cp, Fraction(r)) for r in integer_roots_frac(cp)}
    if i is not None:
        omega = {w: m for w, m in omega.items() if i <= w <= j}
    omega = {w: m for w, m in omega.items() if m}
    if not omega:
        return {}, {}
    lo, hi = min(omega), max(omega) + 1
    delta = {}
    for k in range(lo, hi):
        for l in range(k + 1, hi + 1):
            delta[(k, l)] = point_h0(blocks, k, l, a)
    return omega, delta
