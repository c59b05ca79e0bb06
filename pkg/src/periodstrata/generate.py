"""Seeded random towers, matrices and splitting instances.

All randomness comes from ``numpy.random.default_rng(seed)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from gmpy2 import mpq

from .drdatum import DeRhamDatum, dimensions
from .family import DifTower, family_datum
from .matrices import MatrixOverRing
from .rings import (
    RingDescriptor,
    RingElement,
    RingPoly,
    UniPoly,
    X,
    is_unit,
    poly_ring,
    quotient_ring,
)

__all__ = [
    "make_rng",
    "generate_random_family",
    "random_poly",
    "random_poly_matrix",
    "random_ring_element",
    "random_invertible_q",
    "random_line_tower",
    "random_artinian_ring",
    "random_artinian_tower",
    "random_split_instance",
    "SplitInstance",
    "GenerationError",
]


class GenerationError(RuntimeError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _small(rng, lo=-3, hi=3, nonzero=False) -> mpq:
    while True:
        v = int(rng.integers(lo, hi + 1))
        if v or not nonzero:
            return mpq(v)


def random_poly(rng, max_deg: int, density: float = 0.6) -> UniPoly:
    deg = int(rng.integers(0, max_deg + 1))
    return UniPoly(_small(rng) if rng.random() < density else 0 for _ in range(deg + 1))


def random_poly_matrix(rng, rows: int, cols: int, max_deg: int, ring: RingDescriptor | None = None,
                       density: float = 0.7) -> MatrixOverRing:
    ring = ring or poly_ring()
    grid = [[random_poly(rng, max_deg) if rng.random() < density else UniPoly() for _ in range(cols)]
            for _ in range(rows)]
    return MatrixOverRing(ring, rows, cols, grid)


def random_ring_element(rng, ring: RingDescriptor, max_deg: int = 2) -> UniPoly:
    if ring.is_rationals:
        return UniPoly.const(_small(rng))
    d = max_deg if ring.q_dim is None else min(max_deg, ring.q_dim - 1)
    return ring.reduce(random_poly(rng, d))


def random_invertible_q(rng, n: int) -> tuple[list, list]:
    """Unit lower times unit upper triangular integer matrix and its inverse."""
    import itertools

    from . import qlinalg as ql

    L = ql.identity(n)
    Up = ql.identity(n)
    for i, j in itertools.product(range(n), range(n)):
        if i > j:
            L[i][j] = _small(rng, -2, 2)
        elif i < j:
            Up[i][j] = _small(rng, -2, 2)
    C = ql.matmul(L, Up)
    # invert by solving with rref on [C | I]
    aug = [row + ql.identity(n)[i] for i, row in enumerate(C)]
    red, _ = ql.rref(aug, 2 * n)
    Cinv = [row[n:] for row in red]
    return C, Cinv


def _conj(M: MatrixOverRing, C: list, Cinv: list) -> MatrixOverRing:
    ring = M.ring
    Cm = MatrixOverRing(ring, M.rows, M.rows, [[UniPoly.const(c) for c in r] for r in C])
    Ci = MatrixOverRing(ring, M.rows, M.rows, [[UniPoly.const(c) for c in r] for r in Cinv])
    return Cm @ M @ Ci


def random_line_tower(rng, rank: int | None = None, depth: int | None = None,
                      weights=(0, 1, 2)) -> DifTower:
    """A tower over Q[x] with integer weights, moving eigenvalues and jumps."""
    ring = poly_ring()
    n = rank or int(rng.integers(1, 4))
    m = depth or int(rng.integers(1, 4))
    zero = UniPoly()
    A0 = [[zero] * n for _ in range(n)]
    for i in range(n):
        roll = rng.random()
        if roll < 0.6:
            A0[i][i] = UniPoly.const(-int(rng.choice(weights)))
        elif roll < 0.85:
            # eigenvalue -w + c x: integral only on a finite set
            A0[i][i] = UniPoly((-int(rng.choice(weights)), _small(rng, -2, 2, True)))
        else:
            A0[i][i] = UniPoly((mpq(1, 2), 0))
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                A0[i][j] = random_poly(rng, 1)
    C, Cinv = random_invertible_q(rng, n)
    blocks = [_conj(MatrixOverRing(ring, n, n, A0), C, Cinv)]
    for _ in range(1, m):
        blocks.append(random_poly_matrix(rng, n, n, 1, ring, density=0.4))
    return DifTower(ring, n, m, tuple(blocks))


def random_artinian_ring(rng, max_e: int = 4) -> RingDescriptor:
    a = _small(rng, -2, 2)
    e = int(rng.integers(1, max_e + 1))
    return quotient_ring(UniPoly((-a, 1)) ** e)


def random_artinian_tower(rng, ring: RingDescriptor, max_n: int = 4, max_depth: int = 4,
                          weights=(0, 1, 2, 3)) -> DifTower:
    """Tower over ``Q[x]/((x-a)^e)`` with weights near ``[0, 3]`` perturbed by nilpotents."""
    n = int(rng.integers(1, max_n + 1))
    m = int(rng.integers(1, max_depth + 1))
    a = -ring.modulus.squarefree_part().coeffs[0]
    t = UniPoly((-a, 1))  # x - a, nilpotent
    zero = UniPoly()
    A0 = [[zero] * n for _ in range(n)]
    for i in range(n):
        w = int(rng.choice(weights)) if rng.random() < 0.8 else None
        base = UniPoly.const(-w) if w is not None else UniPoly.const(mpq(1, 3))
        A0[i][i] = ring.reduce(base + t * _small(rng, -1, 1))
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                A0[i][j] = random_ring_element(rng, ring, 1)
    C, Cinv = random_invertible_q(rng, n)
    blocks = [_conj(MatrixOverRing(ring, n, n, A0), C, Cinv)]
    for _ in range(1, m):
        grid = [[random_ring_element(rng, ring, 1) if rng.random() < 0.4 else zero for _ in range(n)]
                for _ in range(n)]
        blocks.append(MatrixOverRing(ring, n, n, grid))
    return DifTower(ring, n, m, tuple(blocks))


@dataclass(frozen=True)
class SplitInstance:
    phi: MatrixOverRing
    roots: tuple[tuple[RingElement, int], ...]
    Q: RingPoly


def random_split_instance(rng, ring: RingDescriptor, max_rank: int = 6) -> SplitInstance:
    """An operator annihilated by ``Q * prod (T - r_i)^{k_i}`` with the unit hypothesis."""
    for _ in range(200):
        nroots = int(rng.integers(1, 4))
        roots: list[UniPoly] = []
        for _ in range(nroots):
            roots.append(random_ring_element(rng, ring, 1))
        qdeg = int(rng.integers(0, 3))
        Q = RingPoly(ring, [random_ring_element(rng, ring, 1) for _ in range(qdeg)] + [UniPoly.const(1)])
        unit = ring.one()
        for i, r in enumerate(roots):
            unit = unit * Q.evaluate(r)
            for s in roots[i + 1:]:
                unit = unit * ring.element(r - s)
        if not is_unit(unit):
            continue
        sizes = [int(rng.integers(1, 3)) for _ in roots]
        if sum(sizes) + qdeg > max_rank:
            continue
        n = sum(sizes) + qdeg
        zero = UniPoly()
        J = [[zero] * n for _ in range(n)]
        pos = 0
        ks = []
        for r, b in zip(roots, sizes):
            for t in range(b):
                J[pos + t][pos + t] = r
                if t + 1 < b:
                    J[pos + t][pos + t + 1] = random_ring_element(rng, ring, 1)
            ks.append(b + int(rng.integers(0, 2)))
            pos += b
        # companion block of Q
        for t in range(qdeg):
            if t + 1 < qdeg:
                J[pos + t + 1][pos + t] = UniPoly.const(1)
            J[pos + t][pos + qdeg - 1] = -Q.coeff(t)
        C, Cinv = random_invertible_q(rng, n)
        phi = _conj(MatrixOverRing(ring, n, n, J), C, Cinv)
        return SplitInstance(phi, tuple((RingElement(ring, r), k) for r, k in zip(roots, ks)), Q)
    raise GenerationError("could not draw a splitting instance")


def _jordan_cells(m: int, b: int) -> list[int]:
    """Split ``m`` into ``b`` positive cell sizes, as even as possible."""
    base, extra = divmod(m, b)
    return [base + (1 if i < extra else 0) for i in range(b)]


def generate_random_family(target: DeRhamDatum, seed: int, rank: int | None = None,
                           depth: int | None = None, max_tries: int = 200) -> DifTower:
    """A tower over Q[x] whose generic datum equals ``target``.

    Each weight ``w`` gets ``Delta(w, w+1)`` Jordan cells of eigenvalue
    ``-w`` (superdiagonal 1 or x); remaining rank gets non-integral
    eigenvalues.  Attempt 0 has no couplings, which realizes full data;
    later attempts add random ``A_s`` entries from the kernel line of a
    weight-``w`` cell to the cokernel line of a weight-``w + s`` cell.
    """
    rng = make_rng(seed)
    sd = dimensions(target).sd
    n = rank if rank is not None else max(sd, 1)
    if n < sd or n < 1:
        raise GenerationError(f"rank {n} cannot carry Sen dimension {sd}")
    ring = poly_ring()
    if target.is_zero:
        span = 1
    else:
        span = target.U - target.L + 1
    m = depth if depth is not None else max(span, 1)
    if m < 1:
        raise GenerationError(f"depth must be at least 1, got {m}")
    # cells: (weight or None, size)
    cells: list[tuple[int | None, int]] = []
    for w, mult in target.omega:
        b = target.delta_at(w, w + 1)
        cells += [(w, s) for s in _jordan_cells(mult, b)]
    extra = n - sd
    zero = UniPoly()
    for attempt in range(max_tries):
        A0 = [[zero] * n for _ in range(n)]
        heads, tails = [], []  # (weight, row index of kernel line / cokernel line)
        pos = 0
        for w, size in cells:
            for t in range(size):
                A0[pos + t][pos + t] = UniPoly.const(-w)
                if t + 1 < size:
                    A0[pos + t][pos + t + 1] = X if rng.random() < 0.3 else UniPoly.const(1)
            heads.append((w, pos))
            tails.append((w, pos + size - 1))
            pos += size
        for t in range(extra):
            A0[pos + t][pos + t] = UniPoly((mpq(1, 2), 0)) if rng.random() < 0.5 else UniPoly((_small(rng, 1, 3) + mpq(1, 2), 1))
        blocks = [MatrixOverRing(ring, n, n, A0)]
        for s in range(1, m):
            grid = [[zero] * n for _ in range(n)]
            if attempt > 0:
                for w, col in heads:
                    for w2, row in tails:
                        if w2 == w + s and rng.random() < 0.5:
                            c = _small(rng, -2, 2, True)
                            grid[row][col] = X * c if rng.random() < 0.3 else UniPoly.const(c)
            blocks.append(MatrixOverRing(ring, n, n, grid))
        T = DifTower(ring, n, m, tuple(blocks))
        if family_datum(T) == target:
            return T
    raise GenerationError(f"could not realize {target} at rank {n} within {max_tries} attempts")
