"""Finite free modules over Q, Q[x] and Q[x]/(f).

Over the PIDs Q and Q[x] everything goes through a Smith normal form.
Quotient rings are handled by restriction of scalars: an n x m matrix over
Q[x]/(f) becomes an (n d) x (m d) rational matrix with d = deg f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import gcd as _zgcd, lcm as _zlcm, mpq

from . import qlinalg as ql
from .rings import (
    RingDescriptor,
    RingElement,
    RingMap,
    RingPoly,
    UniPoly,
    factor_irreducible,
    is_unit,
    poly_gcd,
    poly_gcd_bezout,
)

__all__ = [
    "MatrixOverRing",
    "SmithDecomposition",
    "ModuleSummary",
    "KernelCokernel",
    "SplitResult",
    "FlatSummary",
    "smith_normal_form",
    "invariant_factors",
    "kernel_and_cokernel",
    "generic_rank",
    "char_poly",
    "determinant",
    "split_by_operator",
    "localized_flat_summary",
    "base_change_defect",
    "q_dims",
]

_ONE = UniPoly.const(1)
_ZERO = UniPoly()


class MatrixOverRing:
    """Immutable dense matrix whose entries are reduced ring values."""

    __slots__ = ("ring", "rows", "cols", "values")

    def __init__(self, ring: RingDescriptor, rows: int, cols: int, values: Sequence[Sequence]):
        if len(values) != rows or any(len(r) != cols for r in values):
            raise ValueError(f"entries do not form a {rows}x{cols} grid")
        grid = []
        for r in values:
            row = []
            for v in r:
                if isinstance(v, RingElement):
                    v = ring.element(v).value
                elif not isinstance(v, UniPoly):
                    v = UniPoly.const(v)
                row.append(ring.reduce(v))
            grid.append(tuple(row))
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.values = tuple(grid)

    @classmethod
    def from_rows(cls, ring: RingDescriptor, rows: Sequence[Sequence]) -> "MatrixOverRing":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def zeros(cls, ring: RingDescriptor, rows: int, cols: int) -> "MatrixOverRing":
        return cls(ring, rows, cols, [[_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "MatrixOverRing":
        return cls(ring, n, n, [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring: RingDescriptor, entries: Sequence) -> "MatrixOverRing":
        n = len(entries)
        return cls(ring, n, n, [[entries[i] if i == j else _ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def block_diagonal(cls, ring: RingDescriptor, blocks: Sequence["MatrixOverRing"]) -> "MatrixOverRing":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        grid = [[_ZERO] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    grid[r0 + i][c0 + j] = b.values[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(ring, rows, cols, grid)

    def entry(self, i: int, j: int) -> RingElement:
        return RingElement(self.ring, self.values[i][j])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, MatrixOverRing):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self.values) == (
            other.ring, other.rows, other.cols, other.values)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.values))

    def __repr__(self):
        body = "; ".join(", ".join(v.to_string(self.ring.var) for v in r) for r in self.values)
        return f"MatrixOverRing({self.ring}, [{body}])"

    def _same(self, other: "MatrixOverRing"):
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "MatrixOverRing"):
        self._same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return MatrixOverRing(self.ring, self.rows, self.cols,
                              [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.values, other.values)])

    def __sub__(self, other: "MatrixOverRing"):
        return self + (-other)

    def __neg__(self):
        return MatrixOverRing(self.ring, self.rows, self.cols, [[-a for a in r] for r in self.values])

    def __matmul__(self, other: "MatrixOverRing"):
        self._same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        red = self.ring.reduce
        out = []
        for r in self.values:
            row = []
            for j in range(other.cols):
                acc = _ZERO
                for t in range(self.cols):
                    a = r[t]
                    if a:
                        b = other.values[t][j]
                        if b:
                            acc = acc + a * b
                row.append(red(acc))
            out.append(row)
        return MatrixOverRing(self.ring, self.rows, other.cols, out)

    def scale(self, c) -> "MatrixOverRing":
        c = self.ring.element(c).value
        return MatrixOverRing(self.ring, self.rows, self.cols, [[a * c for a in r] for r in self.values])

    def shift_diagonal(self, c) -> "MatrixOverRing":
        """``self + c I`` for a square matrix."""
        c = self.ring.element(c).value
        return MatrixOverRing(self.ring, self.rows, self.cols,
                              [[a + c if i == j else a for j, a in enumerate(r)]
                               for i, r in enumerate(self.values)])

    def transpose(self) -> "MatrixOverRing":
        return MatrixOverRing(self.ring, self.cols, self.rows,
                              [[self.values[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(v.is_zero() for r in self.values for v in r)

    def column(self, j: int) -> tuple:
        return tuple(self.values[i][j] for i in range(self.rows))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "MatrixOverRing":
        rows, cols = list(rows), list(cols)
        return MatrixOverRing(self.ring, len(rows), len(cols),
                              [[self.values[i][j] for j in cols] for i in rows])

    def map(self, m: RingMap) -> "MatrixOverRing":
        if m.source != self.ring:
            raise ValueError(f"map source {m.source} differs from {self.ring}")
        return MatrixOverRing(m.target, self.rows, self.cols,
                              [[m.apply_value(v) for v in r] for r in self.values])

    def to_q(self) -> list:
        """Restriction of scalars to Q (finite-dimensional rings only)."""
        d = self.ring.q_dim
        if d is None:
            raise ValueError(f"{self.ring} is not finite-dimensional over QQ")
        out = ql.zeros(self.rows * d, self.cols * d)
        for i, r in enumerate(self.values):
            for j, v in enumerate(r):
                if v.is_zero():
                    continue
                blk = self.ring.q_basis_mul_matrix(v)
                for a in range(d):
                    for b in range(d):
                        out[i * d + a][j * d + b] = blk[a][b]
        return out


def _q_vector(ring: RingDescriptor, column: Sequence[UniPoly]) -> list:
    d = ring.q_dim
    return [v.coeff(t) for v in column for t in range(d)]


# -- Smith normal form ---------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    U: MatrixOverRing
    S: MatrixOverRing
    V: MatrixOverRing

    @property
    def diagonal(self) -> list[UniPoly]:
        return [self.S.values[i][i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if not d.is_zero())


def _deg(p: UniPoly) -> int:
    return len(p.coeffs) - 1


def _content(polys) -> mpq:
    """Positive rational c with every coefficient of every poly in c * Z, gcd 1."""
    num, den = 0, 1
    for p in polys:
        for c in p.coeffs:
            if c:
                num = _zgcd(num, c.numerator)
                den = _zlcm(den, c.denominator)
    return mpq(num, den) if num else mpq(1)


def _scaled(polys: list, inv: mpq) -> list:
    return [UniPoly._raw([c * inv for c in p.coeffs]) if p else p for p in polys]


def _smith_core(grid: list[list[UniPoly]], m: int, n: int, track: bool):
    S = [list(r) for r in grid]
    U = [[_ONE if i == j else _ZERO for j in range(m)] for i in range(m)] if track else None
    V = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)] if track else None

    def row_op(dst, src, q):  # row dst -= q * row src
        rs, rd = S[src], S[dst]
        for c in range(n):
            if rs[c]:
                rd[c] = rd[c] - q * rs[c]
        if track:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] = ud[c] - q * us[c]
        # divide out the joint rational content (a unit) to curb coefficient growth
        inv = 1 / _content(rd + (U[dst] if track else []))
        if inv != 1:
            S[dst] = _scaled(rd, inv)
            if track:
                U[dst] = _scaled(U[dst], inv)

    def col_op(dst, src, q):  # col dst -= q * col src
        for r in range(m):
            if S[r][src]:
                S[r][dst] = S[r][dst] - q * S[r][src]
        if track:
            for r in range(n):
                if V[r][src]:
                    V[r][dst] = V[r][dst] - q * V[r][src]
        col = [S[r][dst] for r in range(m)] + ([V[r][dst] for r in range(n)] if track else [])
        inv = 1 / _content(col)
        if inv != 1:
            for r in range(m):
                if S[r][dst]:
                    S[r][dst] = _scaled([S[r][dst]], inv)[0]
            if track:
                for r in range(n):
                    if V[r][dst]:
                        V[r][dst] = _scaled([V[r][dst]], inv)[0]

    def mix(vecs_a, vecs_b, s, u, v, w):
        na = [s * x + u * y if (x or y) else x for x, y in zip(vecs_a, vecs_b)]
        nb = [v * x + w * y if (x or y) else x for x, y in zip(vecs_a, vecs_b)]
        return na, nb

    def row_bezout(a, b, s, u, v, w):  # rows (a, b) <- [[s, u], [v, w]] (a, b)
        S[a], S[b] = mix(S[a], S[b], s, u, v, w)
        if track:
            U[a], U[b] = mix(U[a], U[b], s, u, v, w)
        for i in (a, b):
            inv = 1 / _content(S[i] + (U[i] if track else []))
            if inv != 1:
                S[i] = _scaled(S[i], inv)
                if track:
                    U[i] = _scaled(U[i], inv)

    def col_bezout(a, b, s, u, v, w):  # cols (a, b) <- (a, b) [[s, v], [u, w]]
        mats = [S, V] if track else [S]
        for M in mats:
            ca, cb = mix([r[a] for r in M], [r[b] for r in M], s, u, v, w)
            for r, x, y in zip(M, ca, cb):
                r[a], r[b] = x, y
        for c in (a, b):
            col = [r[c] for r in S] + ([r[c] for r in V] if track else [])
            inv = 1 / _content(col)
            if inv != 1:
                for M in mats:
                    for r in M:
                        if r[c]:
                            r[c] = _scaled([r[c]], inv)[0]

    def swap_rows(a, b):
        if a != b:
            S[a], S[b] = S[b], S[a]
            if track:
                U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        if a != b:
            for r in S:
                r[a], r[b] = r[b], r[a]
            if track:
                for r in V:
                    r[a], r[b] = r[b], r[a]

    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                row = S[i]
                for j in range(t, n):
                    v = row[j]
                    if v:
                        d = _deg(v)
                        if best is None or d < best[0]:
                            best = (d, i, j)
                            if d == 0:
                                break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                return S, U, V, t
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            # clear row and column t; a non-dividing entry is merged into the
            # pivot by a unimodular Bezout step, so the pivot degree only drops
            clean = False
            while not clean:
                clean = True
                for i in range(t + 1, m):
                    b = S[i][t]
                    if b:
                        a = S[t][t]
                        q, r = divmod(b, a)
                        if r:
                            g, su, sv = poly_gcd_bezout(a, b)
                            row_bezout(t, i, su, sv, -b.exact_div(g), a.exact_div(g))
                        else:
                            row_op(i, t, q)
                for j in range(t + 1, n):
                    b = S[t][j]
                    if b:
                        a = S[t][t]
                        q, r = divmod(b, a)
                        if r:
                            g, su, sv = poly_gcd_bezout(a, b)
                            col_bezout(t, j, su, sv, -b.exact_div(g), a.exact_div(g))
                            clean = False
                        else:
                            col_op(j, t, q)
            piv = S[t][t]
            # pivot now alone in its row and column; enforce divisibility
            bad = None
            if _deg(piv) > 0:
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if S[i][j] and (S[i][j] % piv):
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            row_op(t, bad, UniPoly.const(-1))  # row t += row bad
        lc = S[t][t].lc
        if lc != 1:
            inv = 1 / lc
            S[t] = [v * inv for v in S[t]]
            if track:
                U[t] = [v * inv for v in U[t]]
        t += 1
    return S, U, V, t


def _require_pid(ring: RingDescriptor):
    if not ring.is_pid:
        raise ValueError(f"Smith normal form needs a PID, got {ring}")


def smith_normal_form(A: MatrixOverRing) -> SmithDecomposition:
    """Smith form ``U A V = S`` over Q or Q[x].

    Pivot: the nonzero entry of least degree, ties by smallest (row, col).

    >>> from periodstrata.rings import poly_ring, X
    >>> R = poly_ring()
    >>> A = MatrixOverRing.from_rows(R, [[X, 1], [0, X]])
    >>> [d.to_string() for d in smith_normal_form(A).diagonal]
    ['1', 'x^2']
    """
    _require_pid(A.ring)
    S, U, V, _ = _smith_core([list(r) for r in A.values], A.rows, A.cols, True)
    ring = A.ring
    return SmithDecomposition(
        MatrixOverRing(ring, A.rows, A.rows, U),
        MatrixOverRing(ring, A.rows, A.cols, S),
        MatrixOverRing(ring, A.cols, A.cols, V),
    )


def invariant_factors(A: MatrixOverRing) -> list[UniPoly]:
    """Nonzero monic invariant factors d_1 | d_2 | ... (no transforms kept)."""
    _require_pid(A.ring)
    S, _, _, r = _smith_core([list(r) for r in A.values], A.rows, A.cols, False)
    return [S[i][i] for i in range(r)]


def determinant(A: MatrixOverRing) -> UniPoly:
    """Fraction-free (Bareiss) determinant over Q or Q[x]."""
    if not A.is_square:
        raise ValueError("determinant of a non-square matrix")
    _require_pid(A.ring)
    n = A.rows
    if n == 0:
        return _ONE
    M = [list(r) for r in A.values]
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if not M[k][k]:
            p = next((i for i in range(k + 1, n) if M[i][k]), None)
            if p is None:
                return _ZERO
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


# -- kernels and cokernels -------------------------------------------------

@dataclass(frozen=True)
class ModuleSummary:
    """A finitely generated module over a PID: free part plus torsion chain."""

    free_rank: int
    torsion_divisors: tuple[UniPoly, ...] = ()

    def __post_init__(self):
        for d in self.torsion_divisors:
            if d.degree < 1 or d.lc != 1:
                raise ValueError("torsion divisors must be monic of degree >= 1")
        for a, b in zip(self.torsion_divisors, self.torsion_divisors[1:]):
            if not a.divides(b):
                raise ValueError("torsion divisors must form a divisibility chain")

    def tensor_q_dim(self, m: RingMap) -> int:
        """Dimension over Q of ``self (x) target`` for a finite-dimensional target."""
        t = m.target
        d = t.q_dim
        if d is None:
            raise ValueError(f"{t} is not finite-dimensional over QQ")
        if m.source.is_rationals:
            return self.free_rank * d
        if m.kind == "evaluate":
            ideal = UniPoly.linear_root(m.point)
        else:
            ideal = t.modulus
        return self.free_rank * d + sum(poly_gcd(td, ideal).degree for td in self.torsion_divisors)


@dataclass(frozen=True)
class KernelCokernel:
    """Kernel basis and cokernel summary over a PID; Q-dimensions otherwise."""

    kernel: tuple[tuple[RingElement, ...], ...]
    cokernel: ModuleSummary | None
    q_dims: tuple[int, int] | None


def q_dims(A: MatrixOverRing) -> tuple[int, int]:
    """(dim_Q ker, dim_Q coker) for a matrix over a finite-dimensional ring."""
    qa = A.to_q()
    d = A.ring.q_dim
    r = ql.rank(qa, A.cols * d)
    return A.cols * d - r, A.rows * d - r


def kernel_and_cokernel(A: MatrixOverRing) -> KernelCokernel:
    ring = A.ring
    if ring.is_rationals:
        qa = [[v.coeff(0) for v in r] for r in A.values]
        basis = ql.nullspace(qa, A.cols)
        r = A.cols - len(basis)
        ker = tuple(tuple(ring.element(c) for c in v) for v in basis)
        return KernelCokernel(ker, ModuleSummary(A.rows - r), (len(basis), A.rows - r))
    if ring.is_poly:
        sd = smith_normal_form(A)
        diag = sd.diagonal
        r = sd.rank
        ker = tuple(tuple(sd.V.entry(i, j) for i in range(A.cols)) for j in range(r, A.cols))
        tors = tuple(d for d in diag[:r] if d.degree >= 1)
        return KernelCokernel(ker, ModuleSummary(A.rows - r, tors), None)
    return KernelCokernel((), None, q_dims(A))


def generic_rank(A: MatrixOverRing) -> int:
    """Rank over the fraction field of Q or Q[x]."""
    if not A.ring.is_pid:
        raise ValueError(f"generic rank needs an integral ring, got {A.ring}")
    if A.ring.is_rationals:
        return ql.rank([[v.coeff(0) for v in r] for r in A.values], A.cols)
    return len(invariant_factors(A))


def char_poly(A: MatrixOverRing) -> RingPoly:
    """``det(T I - A)`` by Faddeev-LeVerrier (divides only by integers)."""
    if not A.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    ring, n = A.ring, A.rows
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    M = MatrixOverRing.zeros(ring, n, n)
    for k in range(1, n + 1):
        M = (A @ M).shift_diagonal(coeffs[n - k + 1])
        AM = A @ M
        tr = _ZERO
        for i in range(n):
            tr = tr + AM.values[i][i]
        coeffs[n - k] = ring.reduce(tr * (-1 / mpq(k)))
    return RingPoly(ring, coeffs)


def poly_at_matrix(p: RingPoly, A: MatrixOverRing) -> MatrixOverRing:
    """Horner evaluation of a polynomial in T at a square matrix."""
    if p.ring != A.ring:
        raise ValueError("ring mismatch")
    acc = MatrixOverRing.zeros(A.ring, A.rows, A.cols)
    for c in reversed(p.coeffs):
        acc = (acc @ A).shift_diagonal(c)
    return acc


# -- splitting by an operator ---------------------------------------------

@dataclass(frozen=True)
class SplitResult:
    """Projectors and block generators; index 0 is the cofactor block."""

    projectors: tuple[MatrixOverRing, ...]
    block_bases: tuple[tuple[tuple[RingElement, ...], ...], ...]
    labels: tuple[str, ...]


def _as_ring_poly(ring: RingDescriptor, q) -> RingPoly:
    if isinstance(q, RingPoly):
        if q.ring != ring:
            raise ValueError("cofactor lives in a different ring")
        return q
    if isinstance(q, UniPoly):
        return RingPoly.from_rational(ring, q)
    return RingPoly(ring, q)


def split_by_operator(phi: MatrixOverRing, roots: Sequence[tuple], Q) -> SplitResult:
    """Split the module along ``P = Q * prod (T - r_i)^{k_i}`` with ``P(phi) = 0``.

    Needs ``prod Q(r_i) * prod_{i<j} (r_i - r_j)`` to be a unit.  Block ``i``
    is the image of the idempotent which is 1 modulo ``(T - r_i)^{k_i}`` and 0
    modulo the other factors; block 0 belongs to ``Q``.
    """
    ring = phi.ring
    if not phi.is_square:
        raise ValueError("operator must be square")
    Qp = _as_ring_poly(ring, Q)
    rs = [(ring.element(r), int(k)) for r, k in roots]
    if any(k < 1 for _, k in rs):
        raise ValueError("root multiplicities must be positive")
    unit = ring.one()
    for i, (ri, _) in enumerate(rs):
        unit = unit * Qp.evaluate(ri)
        for rj, _ in rs[i + 1:]:
            unit = unit * (ri - rj)
    if not is_unit(unit):
        raise ValueError(f"splitting hypothesis fails: {unit} is not a unit in {ring}")
    factors = [RingPoly.linear(ring, r) ** k for r, k in rs]
    P = Qp
    for f in factors:
        P = P * f
    if not poly_at_matrix(P, phi).is_zero():
        raise ValueError("P(phi) != 0")
    n = phi.rows
    projs = []
    for i, (ri, ki) in enumerate(rs):
        cof = Qp
        for j, f in enumerate(factors):
            if j != i:
                cof = cof * f
        t = cof.shift(ri).coeffs
        t0_inv = RingElement(ring, t[0]).inverse()
        b = [t0_inv]
        for mdeg in range(1, ki):
            acc = ring.zero()
            for j in range(1, mdeg + 1):
                if j < len(t):
                    acc = acc + RingElement(ring, t[j]) * b[mdeg - j]
            b.append(-(t0_inv * acc))
        # v(T) = sum b_m (T - r_i)^m
        v = RingPoly(ring, [])
        lin = RingPoly.linear(ring, ri)
        power = RingPoly(ring, [_ONE])
        for bm in b:
            v = v + power.scale(bm)
            power = power * lin
        projs.append(poly_at_matrix(v * cof, phi))
    e0 = MatrixOverRing.identity(ring, n)
    for e in projs:
        e0 = e0 - e
    projectors = [e0] + projs
    bases = [_image_generators(e) for e in projectors]
    labels = ["cofactor"] + ["root"] * len(rs)
    return SplitResult(tuple(projectors), tuple(bases), tuple(labels))


def _image_generators(e: MatrixOverRing) -> tuple:
    ring = e.ring
    cols = [e.column(j) for j in range(e.cols) if any(v for v in e.column(j))]
    if ring.is_rationals and cols:
        basis = ql.column_basis([[v.coeff(0) for v in c] for c in cols], e.rows)
        cols = [tuple(UniPoly.const(a) for a in row) for row in basis]
    return tuple(tuple(RingElement(ring, v) for v in c) for c in cols)


# -- localization and base change -------------------------------------------

@dataclass(frozen=True)
class FlatSummary:
    flat: bool
    ker_rank: int
    coker_rank: int
    offending: tuple[UniPoly, ...] = ()


def localized_flat_summary(A: MatrixOverRing, f: UniPoly) -> FlatSummary:
    """Is coker A free after inverting ``f``?  Decided from Smith divisor support."""
    if not A.ring.is_poly:
        raise ValueError("localized_flat_summary needs a matrix over Q[x]")
    if isinstance(f, RingElement):
        f = f.value
    if f.is_zero():
        raise ValueError("cannot invert zero")
    divs = invariant_factors(A)
    r = len(divs)
    offending = []
    for d in divs:
        if d.degree < 1:
            continue
        for g, _ in factor_irreducible(d):
            if not g.divides(f):
                offending.append(d)
                break
    return FlatSummary(not offending, A.cols - r, A.rows - r, tuple(offending))


def base_change_defect(A: MatrixOverRing, m: RingMap, f, bound: int = 16) -> tuple:
    """Exponents ``(r0, r1)`` measuring how far H^0 and H^1 fail to base change.

    ``r0`` is the least ``e <= bound`` with ``m(f)^e`` killing kernel and
    cokernel of ``(ker A) (x) target -> ker(A (x) target)``; ``math.inf``
    if there is none.  ``r1`` compares cokernels, which always agree.
    """
    if A.ring != m.source:
        raise ValueError(f"matrix over {A.ring} but map from {m.source}")
    if not m.source.is_pid:
        raise ValueError("base change defect needs a source PID (Q or Q[x])")
    f = m.source.element(f)
    target = m.target
    if target.q_dim is None:
        # inclusion into Q[x] is flat and the identity on Q[x] is trivially so
        return 0, 0
    kc = kernel_and_cokernel(A)
    At = A.map(m)
    d = target.q_dim
    n = A.cols
    K = [tuple(m.apply_value(e.value) for e in col) for col in kc.kernel]
    r = len(K)
    # Q-matrix of target^r -> target^n, (a_1..a_r) -> sum a_t K_t
    Kmat = MatrixOverRing(target, n, r, [[K[t][i] for t in range(r)] for i in range(n)]) if r else None
    phi = Kmat.to_q() if Kmat is not None else ql.zeros(n * d, 0)
    ker_phi = ql.nullspace(phi, r * d) if r else []
    im_phi = ql.columns(phi, r * d) if r else []
    V = ql.nullspace(At.to_q(), n * d)
    g = m.apply_value(f.value)
    mul = target.q_basis_mul_matrix(g)

    def times_g(vec):
        out = []
        for b in range(len(vec) // d):
            out.extend(ql.apply(mul, vec[b * d:(b + 1) * d]))
        return out

    kers, covs = list(ker_phi), list(V)
    r0 = math.inf
    for e in range(bound + 1):
        if all(not any(v) for v in kers) and ql.span_contains(im_phi, covs, n * d):
            r0 = e
            break
        kers = [times_g(v) for v in kers]
        covs = [times_g(v) for v in covs]
    direct = q_dims(At)[1]
    via_summary = kc.cokernel.tensor_q_dim(m)
    r1 = 0 if direct == via_summary else math.inf
    return r0, r1
