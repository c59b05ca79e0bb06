"""Sen operators and truncated de Rham towers over a base ring.

A tower of rank ``n`` carries blocks ``A_0, ..., A_{m-1}``.  ``A_0`` plays
the Sen operator; weight ``w`` means a factor ``T + w`` of its
characteristic polynomial, i.e. eigenvalue ``-w``.  The window ``[k, l)``
is modelled by the block lower-triangular matrix with diagonal blocks
``A_0 + j I`` (``j = k .. l-1``) and ``A_s`` on the ``s``-th subdiagonal;
its kernel and cokernel are H^0 and H^1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import qlinalg as ql
from .drdatum import DeRhamDatum
from .matrices import (
    MatrixOverRing,
    char_poly,
    generic_rank,
    invariant_factors,
    q_dims,
)
from .rings import (
    RingDescriptor,
    RingElement,
    RingMap,
    RingPoly,
    UniPoly,
    integer_roots,
    poly_gcd,
    root_multiplicity,
)

__all__ = [
    "DifTower",
    "SenFactorization",
    "TowerMatrix",
    "sen_polynomial",
    "weight_multiplicities",
    "factor_sen",
    "cumulative_cofactor",
    "tower_matrix",
    "cohomology_dims",
    "family_datum",
    "pointwise_datum",
    "dual_twist",
    "direct_sum",
    "stabilized_plus_dim",
    "rational_weights",
]


@dataclass(frozen=True)
class DifTower:
    ring: RingDescriptor
    rank: int
    depth: int
    blocks: tuple[MatrixOverRing, ...]

    def __post_init__(self):
        if self.depth < 1 or len(self.blocks) != self.depth:
            raise ValueError(f"depth {self.depth} but {len(self.blocks)} blocks")
        for s, b in enumerate(self.blocks):
            if b.ring != self.ring:
                raise ValueError(f"block {s} lives over {b.ring}, tower over {self.ring}")
            if (b.rows, b.cols) != (self.rank, self.rank):
                raise ValueError(f"block {s} is {b.rows}x{b.cols}, expected {self.rank}x{self.rank}")

    @classmethod
    def from_blocks(cls, ring: RingDescriptor, blocks: Sequence) -> "DifTower":
        mats = tuple(b if isinstance(b, MatrixOverRing) else MatrixOverRing.from_rows(ring, b)
                     for b in blocks)
        n = mats[0].rows if mats else 0
        return cls(ring, n, len(mats), mats)

    @property
    def sen_operator(self) -> MatrixOverRing:
        return self.blocks[0]

    def block(self, s: int) -> MatrixOverRing:
        if s < self.depth:
            return self.blocks[s]
        return MatrixOverRing.zeros(self.ring, self.rank, self.rank)

    def map(self, m: RingMap) -> "DifTower":
        return DifTower(m.target, self.rank, self.depth, tuple(b.map(m) for b in self.blocks))

    def graded(self) -> "DifTower":
        """The same tower with every ``A_s`` (``s >= 1``) set to zero."""
        zero = MatrixOverRing.zeros(self.ring, self.rank, self.rank)
        return DifTower(self.ring, self.rank, self.depth,
                        (self.blocks[0],) + (zero,) * (self.depth - 1))


@dataclass(frozen=True)
class SenFactorization:
    P: RingPoly
    S: UniPoly
    Q: RingPoly
    omega: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TowerMatrix:
    k: int
    l: int
    N: MatrixOverRing


def sen_polynomial(T: DifTower) -> RingPoly:
    return _sen_cached(T)


@lru_cache(maxsize=1024)
def _sen_cached(T: DifTower) -> RingPoly:
    return char_poly(T.sen_operator)


def weight_multiplicities(P: RingPoly) -> dict[int, int]:
    """Exact multiplicity of each ``T + i`` (``i`` integer) dividing ``P``.

    ``P`` splits as ``sum_m x^m s_m(T)`` with rational slices; ``(T + i)^e``
    divides ``P`` iff it divides every slice, so the candidates are the
    integer roots of the gcd of the slices.
    """
    if P.is_zero():
        raise ValueError("the zero polynomial has no weight multiplicities")
    slices = [s for s in P.slices() if not s.is_zero()]
    g = UniPoly()
    for s in slices:
        g = poly_gcd(g, s)
    if g.degree < 1:
        return {}
    out = {}
    for r in integer_roots(g):
        out[-r] = min(root_multiplicity(s, r) for s in slices)
    return dict(sorted(out.items()))


def factor_sen(P: RingPoly) -> SenFactorization:
    omega = weight_multiplicities(P)
    S = UniPoly.const(1)
    for w, m in omega.items():
        S = S * UniPoly((w, 1)) ** m
    Q, rem = P.divmod_rational(S)
    if not rem.is_zero():
        raise ArithmeticError("integer-root part does not divide P")
    return SenFactorization(P, S, Q, tuple(omega.items()))


def cumulative_cofactor(Q: RingPoly, k: int) -> RingElement:
    """``Q_k = prod_{j=0}^{k-1} Q(-j)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = Q.ring.one()
    for j in range(k):
        out = out * Q.evaluate(UniPoly.const(-j))
    return out


def tower_matrix(T: DifTower, k: int, l: int) -> TowerMatrix:
    if k >= l:
        raise ValueError(f"need k < l, got ({k}, {l})")
    return TowerMatrix(k, l, _tower_cached(T, k, l))


@lru_cache(maxsize=4096)
def _tower_cached(T: DifTower, k: int, l: int) -> MatrixOverRing:
    n, size = T.rank, l - k
    zero = UniPoly()
    grid = [[zero] * (n * size) for _ in range(n * size)]
    for a in range(size):
        for b in range(a + 1):
            s = a - b
            if s == 0:
                blk = T.blocks[0].shift_diagonal(k + a)
            elif s < T.depth:
                blk = T.blocks[s]
            else:
                continue
            for i in range(n):
                for j in range(n):
                    grid[a * n + i][b * n + j] = blk.values[i][j]
    return MatrixOverRing(T.ring, n * size, n * size, grid)


@lru_cache(maxsize=4096)
def tower_invariants(T: DifTower, k: int, l: int) -> tuple[UniPoly, ...]:
    """Nonzero invariant factors of the window matrix over a PID."""
    return tuple(invariant_factors(_tower_cached(T, k, l)))


def _dims_over(T: DifTower, k: int, l: int) -> tuple[int, int]:
    N = _tower_cached(T, k, l)
    ring = T.ring
    if ring.is_pid:
        r = len(tower_invariants(T, k, l)) if ring.is_poly else generic_rank(N)
        return N.cols - r, N.rows - r
    h0, h1 = q_dims(N)
    deg = ring.residue_degree
    if h0 % deg == 0 and h1 % deg == 0:
        return h0 // deg, h1 // deg
    return h0, h1


def cohomology_dims(T: DifTower, k: int, l: int, locus: RingMap | None = None) -> tuple[int, int]:
    """(h0, h1) of the window ``[k, l)``: generic ranks, or at a specialization.

    At a finite-dimensional target the Q-dimensions are divided by the
    residue degree, so ``Q[x]/(g)`` with ``g`` irreducible reports ranks over
    its residue field.
    """
    if k >= l:
        raise ValueError(f"need k < l, got ({k}, {l})")
    if locus is not None:
        if locus.source != T.ring:
            raise ValueError(f"locus from {locus.source}, tower over {T.ring}")
        T = T.map(locus)
    return _dims_over(T, k, l)


def _integral_weights(T: DifTower) -> dict[int, int]:
    return weight_multiplicities(sen_polynomial(T))


def family_datum(T: DifTower) -> DeRhamDatum:
    """Generic de Rham datum of a tower over Q, Q[x] or a residue field Q[x]/(g)."""
    if not T.ring.is_integral:
        raise ValueError(f"family datum needs an integral base, got {T.ring}")
    omega = _integral_weights(T)
    return DeRhamDatum.from_functions(omega, lambda k, l: _dims_over(T, k, l)[0])


def pointwise_datum(T: DifTower, point: RingMap) -> DeRhamDatum:
    """Datum of the tower specialized to a field point (Q or Q[x]/(g))."""
    return family_datum(T.map(point))


def dual_twist(T: DifTower, s: int) -> DifTower:
    """Model of the dual twisted by ``s``: ``A_0 -> -A_0^t + s I``, ``A_j -> -A_j^t``.

    Weights ``w`` become ``-w - s``.
    """
    blocks = [(-T.blocks[0].transpose()).shift_diagonal(s)]
    blocks += [-b.transpose() for b in T.blocks[1:]]
    return DifTower(T.ring, T.rank, T.depth, tuple(blocks))


def direct_sum(T1: DifTower, T2: DifTower) -> DifTower:
    if T1.ring != T2.ring:
        raise ValueError(f"ring mismatch: {T1.ring} vs {T2.ring}")
    depth = max(T1.depth, T2.depth)
    blocks = tuple(MatrixOverRing.block_diagonal(T1.ring, [T1.block(s), T2.block(s)])
                   for s in range(depth))
    return DifTower(T1.ring, T1.rank + T2.rank, depth, blocks)


def rational_weights(T: DifTower) -> list[int]:
    """Integer weights over every residue field of a finite-dimensional base."""
    ring = T.ring
    if ring.q_dim is None:
        raise ValueError(f"{ring} is not finite-dimensional over QQ")
    cp = UniPoly(ql.charpoly(T.sen_operator.to_q()))
    if cp.degree < 1:
        return []
    return sorted(-r for r in integer_roots(cp))


def stabilized_plus_dim(T: DifTower, k: int, locus: RingMap | None = None) -> tuple[int, int, list[int]]:
    """Stable value of ``h0(k, l)`` as ``l`` grows, and the first ``l`` reaching it.

    Returns ``(d, l_star, sequence)`` where ``sequence`` lists ``h0(k, l)`` for
    ``l = k+1, ...``.  Once ``l > U + 1`` (``U`` the top integer weight) the
    new graded pieces carry no weight, so the value is frozen.
    """
    if locus is not None:
        if locus.target.q_dim is None:
            raise ValueError("stabilization needs an Artinian target or a rational point")
        T = T.map(locus)
    elif T.ring.q_dim is None:
        raise ValueError("stabilization needs an Artinian base or a rational point")
    if T.ring.is_quotient and not T.ring.is_local_artinian:
        raise ValueError(f"{T.ring} is not local Artinian")
    weights = rational_weights(T)
    top = max(max(weights) + 1, k) if weights else k
    seq = [_dims_over(T, k, l)[0] for l in range(k + 1, top + 3)]
    for a, b in zip(seq, seq[1:]):
        if b < a:
            raise AssertionError(f"h0 decreased along l: {seq}")
    d = seq[-1]
    l_star = k + 1 + seq.index(d)
    return d, l_star, seq
