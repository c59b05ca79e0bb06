"""Stratifying the affine line by Sen data and de Rham data.

A closed point of the line over Q is a monic irreducible ``g``; rational
points are ``x - a``.  Loci are finite or cofinite sets of such orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .drdatum import DeRhamDatum, ZERO_DATUM, min_covers
from .family import (
    DifTower,
    cohomology_dims,
    sen_polynomial,
    tower_invariants,
    weight_multiplicities,
)
from .rings import RingMap, UniPoly, factor_irreducible, poly_gcd

__all__ = [
    "Locus",
    "Stratum",
    "StratumReport",
    "EVERYTHING",
    "EMPTY",
    "sen_stratum_locus",
    "datum_stratum_locus",
    "strata_decomposition",
    "stratum_report",
    "point_datum",
    "sample_points",
]


def _canon(polys: Iterable[UniPoly]) -> tuple[UniPoly, ...]:
    uniq = {p.monic() for p in polys}
    return tuple(sorted(uniq, key=UniPoly.sort_key))


@dataclass(frozen=True)
class Locus:
    kind: str  # "finite" | "cofinite" | "everything" | "empty"
    points: tuple[UniPoly, ...] = ()

    def __post_init__(self):
        if self.kind not in ("finite", "cofinite", "everything", "empty"):
            raise ValueError(f"unknown locus kind {self.kind!r}")
        if self.kind in ("everything", "empty") and self.points:
            raise ValueError(f"{self.kind} locus carries no points")
        if self.points != _canon(self.points):
            raise ValueError("locus points must be distinct, monic and sorted")

    @classmethod
    def finite(cls, polys: Iterable[UniPoly]) -> "Locus":
        pts = _canon(polys)
        return cls("finite", pts) if pts else EMPTY

    @classmethod
    def cofinite(cls, polys: Iterable[UniPoly]) -> "Locus":
        pts = _canon(polys)
        return cls("cofinite", pts) if pts else EVERYTHING

    @classmethod
    def zeros_of(cls, p: UniPoly) -> "Locus":
        """Vanishing set of ``p``; the zero polynomial vanishes everywhere."""
        if p.is_zero():
            return EVERYTHING
        return cls.finite(g for g, _ in factor_irreducible(p))

    def _as_sets(self):
        # (is_cofinite, set)
        if self.kind in ("finite", "empty"):
            return False, set(self.points)
        return True, set(self.points)

    @staticmethod
    def _from_sets(cof: bool, s: set) -> "Locus":
        return Locus.cofinite(s) if cof else Locus.finite(s)

    def contains(self, g: UniPoly) -> bool:
        g = g.monic()
        if self.kind == "everything":
            return True
        if self.kind == "empty":
            return False
        inside = g in self.points
        return inside if self.kind == "finite" else not inside

    def contains_point(self, a) -> bool:
        return self.contains(UniPoly.linear_root(a))

    def complement(self) -> "Locus":
        cof, s = self._as_sets()
        return self._from_sets(not cof, s)

    def intersect(self, other: "Locus") -> "Locus":
        ca, a = self._as_sets()
        cb, b = other._as_sets()
        if ca and cb:
            return Locus.cofinite(a | b)
        if ca:
            return Locus.finite(b - a)
        if cb:
            return Locus.finite(a - b)
        return Locus.finite(a & b)

    def union(self, other: "Locus") -> "Locus":
        return self.complement().intersect(other.complement()).complement()

    def difference(self, other: "Locus") -> "Locus":
        return self.intersect(other.complement())

    def is_subset(self, other: "Locus") -> bool:
        return self.difference(other).is_empty

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    def describe(self, var: str = "x") -> str:
        if self.kind == "everything":
            return "everything"
        if self.kind == "empty":
            return "empty"
        body = ", ".join(p.to_string(var) for p in self.points)
        return f"{{{body}}}" if self.kind == "finite" else f"all but {{{body}}}"

    def __str__(self):
        return self.describe()


EVERYTHING = Locus("everything")
EMPTY = Locus("empty")


def _require_line(T: DifTower):
    if not T.ring.is_poly:
        raise ValueError(f"strata need a tower over Q[x], got {T.ring}")


def _shifted_coeffs(T: DifTower, w: int) -> tuple[UniPoly, ...]:
    """Coefficients of ``P(U - w)``: ``P = sum_j c_j(x) (T + w)^j``."""
    return sen_polynomial(T).shift(UniPoly.const(-w)).coeffs


def sen_stratum_locus(T: DifTower, w: int, m: int) -> Locus:
    """Where ``(T + w)^m`` divides the specialized Sen polynomial."""
    _require_line(T)
    if m > T.rank:
        raise ValueError(f"multiplicity {m} exceeds rank {T.rank}")
    if m <= 0:
        return EVERYTHING
    g = UniPoly()
    for c in _shifted_coeffs(T, w)[:m]:
        g = poly_gcd(g, c)
    return Locus.zeros_of(g)


def _rank_drop_locus(T: DifTower, k: int, l: int, d: int) -> Locus:
    """Points where h0 of the window ``[k, l)`` is at least ``d``.

    With invariant factors ``d_1 | ... | d_r`` and size ``s``, the rank at a
    point drops by the number of ``d_t`` vanishing there, so ``h0 >= d``
    iff ``d_t`` vanishes for ``t >= r - (d - (s - r)) + 1``, i.e. at
    ``d_{r - (d - h0) + 1}`` by divisibility.
    """
    invs = tower_invariants(T, k, l)
    size = T.rank * (l - k)
    r = len(invs)
    h0 = size - r
    if d <= h0:
        return EVERYTHING
    if d > size:
        return EMPTY
    idx = r - (d - h0)  # zero-based
    return Locus.zeros_of(invs[idx])


def datum_stratum_locus(T: DifTower, D: DeRhamDatum) -> Locus:
    """Closed locus where the pointwise datum dominates ``D``."""
    _require_line(T)
    if not isinstance(D, DeRhamDatum):
        raise TypeError("expected a DeRhamDatum")
    loc = EVERYTHING
    for w, m in D.omega:
        if m > T.rank:
            return EMPTY
        loc = loc.intersect(sen_stratum_locus(T, w, m))
        if loc.is_empty:
            return loc
    for k, l, d in D.delta:
        loc = loc.intersect(_rank_drop_locus(T, k, l, d))
        if loc.is_empty:
            return loc
    return loc


def _special_points(T: DifTower, generic_omega: dict, i: int, j: int) -> list[UniPoly]:
    """Closed points where some truncated invariant can jump."""
    pts: set[UniPoly] = set()
    for w in range(i, j + 1):
        c = _shifted_coeffs(T, w)[generic_omega.get(w, 0)]
        if c.degree >= 1:
            pts.update(g for g, _ in factor_irreducible(c))
    for k in range(i, j + 1):
        for l in range(k + 1, j + 2):
            invs = tower_invariants(T, k, l)
            if invs and invs[-1].degree >= 1:
                pts.update(g for g, _ in factor_irreducible(invs[-1]))
    return sorted(pts, key=UniPoly.sort_key)


def _point_map(T: DifTower, g: UniPoly) -> RingMap:
    if g.degree == 1:
        return RingMap.evaluate_at(T.ring, -g.coeffs[0])
    return RingMap.project_to_quotient(T.ring, g)


def _window_datum(omega: dict, delta_fn, i: int, j: int) -> DeRhamDatum:
    om = {w: m for w, m in omega.items() if i <= w <= j and m}
    if not om:
        return ZERO_DATUM
    return DeRhamDatum.from_functions(om, delta_fn)


def point_datum(T: DifTower, g: UniPoly, i: int, j: int) -> DeRhamDatum:
    """Pointwise datum at the closed point ``g``, truncated to ``[i, j]``."""
    _require_line(T)
    Tp = T.map(_point_map(T, g))
    omega = weight_multiplicities(sen_polynomial(Tp))
    return _window_datum(omega, lambda k, l: cohomology_dims(Tp, k, l)[0], i, j)


def generic_truncated_datum(T: DifTower, i: int, j: int) -> DeRhamDatum:
    omega = weight_multiplicities(sen_polynomial(T))
    return _window_datum(omega, lambda k, l: cohomology_dims(T, k, l)[0], i, j)


@dataclass(frozen=True)
class Stratum:
    datum: DeRhamDatum
    closed: Locus
    removed: tuple[tuple[DeRhamDatum, Locus], ...]
    interval: tuple[int, int]

    def __post_init__(self):
        i, j = self.interval
        if any(not (i <= w <= j) for w in self.datum.support):
            raise ValueError("stratum datum leaves the interval")
        for _, loc in self.removed:
            if not loc.is_subset(self.closed):
                raise ValueError("removed locus not inside the closed locus")

    @property
    def locus(self) -> Locus:
        out = self.closed
        for _, loc in self.removed:
            out = out.difference(loc)
        return out


def strata_decomposition(T: DifTower, i: int, j: int) -> list[Stratum]:
    """Nonempty locally closed strata of the line for data supported in ``[i, j]``.

    Candidates are the generic truncated datum and the truncated data at the
    finitely many points where a Sen coefficient or a window invariant
    factor vanishes; each stratum is then its closed locus minus the closed
    loci of its minimal covers.
    """
    _require_line(T)
    if i > j:
        raise ValueError("empty interval")
    omega = weight_multiplicities(sen_polynomial(T))
    generic = generic_truncated_datum(T, i, j)
    data = [generic]
    for g in _special_points(T, omega, i, j):
        D = point_datum(T, g, i, j)
        if D not in data:
            data.append(D)
    out = []
    for D in data:
        closed = datum_stratum_locus(T, D)
        removed = tuple((E, datum_stratum_locus(T, E).intersect(closed)) for E in min_covers(D, i, j))
        S = Stratum(D, closed, removed, (i, j))
        if not S.locus.is_empty:
            out.append(S)
    return sorted(out, key=lambda s: s.datum)


def sample_points(loc: Locus, budget: int = 25) -> Iterator[UniPoly]:
    """Closed points of a locus: all of a finite one, else 0, 1, -1, 2, ... avoiding exclusions."""
    if loc.kind == "finite":
        yield from loc.points
        return
    if loc.kind == "empty":
        return
    n, a = 0, 0
    while n < budget:
        g = UniPoly.linear_root(a)
        if loc.contains(g):
            yield g
            n += 1
        a = -a if a > 0 else -a + 1


@dataclass(frozen=True)
class StratumReport:
    window: tuple[int, int]
    expected: int
    rows: tuple[tuple[str, int, int], ...]
    verdict: str  # "constant" | "counterexample" | "vacuous"
    counterexample: str | None = None
    irrational_points: tuple[str, ...] = ()


def stratum_report(T: DifTower, S: Stratum, window: tuple[int, int], samples: int = 25) -> StratumReport:
    """Evaluate (h0, h1) over points of the stratum and check both equal the datum."""
    k, l = window
    i, j = S.interval
    if not (i <= k < l <= j + 1):
        raise ValueError(f"window {window} leaves [{i}, {j + 1}]")
    expected = S.datum.delta_at(k, l)
    rows, irr = [], []
    bad = None
    for g in sample_points(S.locus, samples):
        if g.degree == 1:
            label = f"{T.ring.var}={-g.coeffs[0]}"
        else:
            label = f"{T.ring.var} root of {g.to_string(T.ring.var)}"
            irr.append(label)
        h0, h1 = cohomology_dims(T, k, l, _point_map(T, g))
        rows.append((label, h0, h1))
        if bad is None and not (h0 == h1 == expected):
            bad = label
    if not rows:
        return StratumReport(window, expected, (), "vacuous")
    verdict = "constant" if bad is None else "counterexample"
    return StratumReport(window, expected, tuple(rows), verdict, bad, tuple(irr))
