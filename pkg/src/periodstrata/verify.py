"""Seeded verification suites with a record of which hypotheses were checked.

Each suite returns a :class:`VerificationReport`.  Expected values come
from the independent routines in :mod:`periodstrata.oracles` or from
constructions whose answer is known by design.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from gmpy2 import mpq

from . import oracles as orc
from . import qlinalg as ql
from .drdatum import DeRhamDatum, compare, min_covers, validate
from .family import (
    DifTower,
    cohomology_dims,
    direct_sum,
    dual_twist,
    family_datum,
    rational_weights,
    sen_polynomial,
    stabilized_plus_dim,
    tower_invariants,
    tower_matrix,
    weight_multiplicities,
)
from .generate import (
    make_rng,
    random_artinian_ring,
    random_artinian_tower,
    random_line_tower,
    random_poly,
    random_poly_matrix,
    random_split_instance,
)
from .matrices import (
    MatrixOverRing,
    base_change_defect,
    determinant,
    kernel_and_cokernel,
    localized_flat_summary,
    poly_at_matrix,
    q_dims,
    smith_normal_form,
    split_by_operator,
)
from .rings import (
    RATIONALS,
    RingMap,
    RingPoly,
    UniPoly,
    X,
    factor_irreducible,
    poly_ring,
    quotient_ring,
)
from .strata import datum_stratum_locus, strata_decomposition, stratum_report

__all__ = ["VerificationReport", "Failure", "Hypothesis", "SUITES", "run_suite", "running_example",
           "special_rational_points"]


@dataclass(frozen=True)
class Failure:
    case: str
    detail: str


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: str  # "checked" | "assumed" | "violated"
    note: str = ""


@dataclass
class VerificationReport:
    suite: str
    seed: int
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    hypotheses: list[Hypothesis] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case: str, detail: str):
        self.failures.append(Failure(case, detail))

    def expect(self, ok: bool, case: str, detail: str):
        if not ok:
            self.fail(case, detail)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.cases} cases, {len(self.failures)} failures, {self.elapsed:.2f}s"


def running_example() -> DifTower:
    """Rank 2, weights 0 and 1, with the weight-0 period obstructed by x."""
    R = poly_ring()
    return DifTower.from_blocks(R, [[[0, 0], [0, -1]], [[0, 0], [X, 0]]])


def _qcols(M: MatrixOverRing) -> list:
    return ql.columns(M.to_q(), M.cols * M.ring.q_dim)


def _frac_matrix(M: MatrixOverRing) -> list:
    if M.ring.is_rationals:
        return [[Fraction(int(v.coeff(0).numerator), int(v.coeff(0).denominator)) for v in r] for r in M.values]
    return orc.restrict_to_q(M.values, M.ring.modulus.coeffs)


def _to_mpq_vectors(vs) -> list:
    return [[mpq(c.numerator, c.denominator) for c in v] for v in vs]


# -- 1. splitting --------------------------------------------------------------

def suite_splitting(seed: int, count: int = 200, max_rank: int = 6) -> VerificationReport:
    rep = VerificationReport("splitting", seed)
    rng = make_rng(seed)
    for t in range(count):
        if t % 2 == 0:
            ring = RATIONALS
        else:
            deg = int(rng.integers(1, 4))
            f = UniPoly([int(rng.integers(-3, 4)) for _ in range(deg)] + [1])
            ring = quotient_ring(f)
        inst = random_split_instance(rng, ring, max_rank)
        case = f"#{t} over {ring}"
        res = split_by_operator(inst.phi, inst.roots, inst.Q)
        n = inst.phi.rows
        I = MatrixOverRing.identity(ring, n)
        es = res.projectors
        total = MatrixOverRing.zeros(ring, n, n)
        for a, ea in enumerate(es):
            total = total + ea
            rep.expect((ea @ inst.phi) == (inst.phi @ ea), case, f"projector {a} does not commute")
            for b, eb in enumerate(es):
                want = ea if a == b else MatrixOverRing.zeros(ring, n, n)
                rep.expect((ea @ eb) == want, case, f"e{a} e{b} wrong")
        rep.expect(total == I, case, "projectors do not sum to I")
        d = ring.q_dim
        dim = n * d
        lin = lambda r: RingPoly.linear(ring, r)
        S = RingPoly(ring, [UniPoly.const(1)])
        for r, k in inst.roots:
            S = S * lin(r) ** k
        blocks_dim = 0
        all_cols = []
        for i, (r, k) in enumerate(inst.roots, start=1):
            img = _qcols(es[i])
            ker = orc.frac_nullspace(_frac_matrix(poly_at_matrix(lin(r) ** k, inst.phi)), dim)
            Pi = inst.Q
            for j, (r2, k2) in enumerate(inst.roots, start=1):
                if j != i:
                    Pi = Pi * lin(r2) ** k2
            pimg = _qcols(poly_at_matrix(Pi, inst.phi))
            rep.expect(ql.span_equal(img, _to_mpq_vectors(ker), dim), case, f"block {i} != ker (phi-r)^k")
            rep.expect(ql.span_equal(img, pimg, dim), case, f"block {i} != image P_i(phi)")
            blocks_dim += ql.span_rank(img, dim)
            all_cols += img
        img0 = _qcols(es[0])
        ker0 = orc.frac_nullspace(_frac_matrix(poly_at_matrix(inst.Q, inst.phi)), dim)
        simg = _qcols(poly_at_matrix(S, inst.phi))
        rep.expect(ql.span_equal(img0, _to_mpq_vectors(ker0), dim), case, "block 0 != ker Q(phi)")
        rep.expect(ql.span_equal(img0, simg, dim), case, "block 0 != image S(phi)")
        blocks_dim += ql.span_rank(img0, dim)
        all_cols += img0
        rep.expect(blocks_dim == dim and ql.span_rank(all_cols, dim) == dim, case, "blocks do not form a direct sum")
        rep.cases += 1
    rep.hypotheses.append(Hypothesis("unit hypothesis prod Q(r_i) prod (r_i - r_j) in R^x", "checked",
                                     "drawn instances are rejected unless it holds"))
    rep.hypotheses.append(Hypothesis("P(phi) = 0", "checked", "verified inside split_by_operator"))
    return rep


# -- 2. rank equality ------------------------------------------------------------

def suite_rank_equality(seed: int, count: int = 200, max_n: int = 8, max_deg: int = 4) -> VerificationReport:
    rep = VerificationReport("rank-equality", seed)
    rng = make_rng(seed)
    for t in range(count):
        n = int(rng.integers(1, max_n + 1))
        A = random_poly_matrix(rng, n, n, max_deg, density=float(rng.choice([0.3, 0.6, 0.9])))
        if rng.random() < 0.3 and n > 1:
            # force a rank drop: last row a combination of two others
            rows = [list(r) for r in A.values]
            c = random_poly(rng, 1)
            rows[-1] = [a * c + b for a, b in zip(rows[0], rows[1 % n])]
            A = MatrixOverRing.from_rows(A.ring, rows)
        case = f"#{t} ({n}x{n})"
        sd = smith_normal_form(A)
        rep.expect((sd.U @ A @ sd.V) == sd.S, case, "U A V != S")
        diag = sd.diagonal
        nz = [d for d in diag if not d.is_zero()]
        rep.expect(all(d.lc == 1 for d in nz), case, "invariant factor not monic")
        rep.expect(all(a.divides(b) for a, b in zip(diag, diag[1:])), case, "divisibility chain broken")
        for name, M in (("U", sd.U), ("V", sd.V)):
            det = determinant(M)
            rep.expect(det.degree == 0, case, f"det {name} = {det} is not a unit")
        r = len(nz)
        oracle = orc.generic_rank_by_points(A.values, max(max_deg, 1) + 1)
        rep.expect(r == oracle, case, f"rank {r} but evaluation oracle says {oracle}")
        kc = kernel_and_cokernel(A)
        K = MatrixOverRing(A.ring, n, len(kc.kernel), [[col[i] for col in kc.kernel] for i in range(n)]) \
            if kc.kernel else None
        if K is not None:
            rep.expect((A @ K).is_zero(), case, "kernel basis not in kernel")
        ker_rank = len(kc.kernel)
        rep.expect(ker_rank == n - oracle, case, f"kernel rank {ker_rank} != {n - oracle}")
        rep.expect(kc.cokernel.free_rank == ker_rank, case,
                   f"coker rank {kc.cokernel.free_rank} != ker rank {ker_rank}")
        rep.cases += 1
    rep.hypotheses.append(Hypothesis("square endomorphism of a free module", "checked"))
    return rep


# -- 3. Artinian h0 = h1 -----------------------------------------------------------

def suite_artinian(seed: int, count: int = 100, max_e: int = 4, kmax: int = 4) -> VerificationReport:
    rep = VerificationReport("artinian", seed)
    rng = make_rng(seed)
    for t in range(count):
        ring = random_artinian_ring(rng, max_e)
        T = random_artinian_tower(rng, ring)
        case = f"#{t} rank {T.rank} depth {T.depth} over {ring}"
        deg = ring.residue_degree
        for k in range(0, kmax):
            for l in range(k + 1, kmax + 1):
                h0, h1 = cohomology_dims(T, k, l)
                N = tower_matrix(T, k, l).N
                F = orc.restrict_to_q(N.values, ring.modulus.coeffs)
                rk = orc.frac_rank(F)
                o0, o1 = (len(F[0]) - rk) // deg, (len(F) - rk) // deg
                rep.expect(h0 == h1, case, f"h0={h0} h1={h1} at ({k},{l})")
                rep.expect((h0, h1) == (o0, o1), case, f"({h0},{h1}) vs oracle ({o0},{o1}) at ({k},{l})")
        rep.cases += 1
    rep.hypotheses.append(Hypothesis("base is local Artinian of finite dimension", "checked",
                                     "Q[x]/((x-a)^e) by construction"))
    return rep


# -- 4. monotonicity and stabilization -----------------------------------------------

def _corpus(rng, count: int) -> list[DifTower]:
    out = []
    for t in range(count):
        if t % 2 == 0:
            T = random_line_tower(rng)
            a = int(rng.integers(-2, 3))
            out.append(T.map(RingMap.evaluate_at(T.ring, a)))
        else:
            ring = random_artinian_ring(rng, 3)
            out.append(random_artinian_tower(rng, ring, 3, 3))
    return out


def suite_monotonicity(seed: int, count: int = 40) -> VerificationReport:
    rep = VerificationReport("monotonicity", seed)
    rng = make_rng(seed)
    for t, T in enumerate(_corpus(rng, count)):
        ws = rational_weights(T)
        U = max(ws) if ws else 0
        lo = (min(ws) if ws else 0) - 2
        case = f"#{t} over {T.ring} weights {ws}"
        for k in range(lo, U + 2):
            top = max(U + 5, k + 4)
            seq = []
            for l in range(k + 1, top + 1):
                if T.ring.is_rationals:
                    seq.append(orc.point_h0(T.blocks, k, l, Fraction(0)))
                else:
                    N = tower_matrix(T, k, l).N
                    F = orc.restrict_to_q(N.values, T.ring.modulus.coeffs)
                    seq.append((len(F) - orc.frac_rank(F)) // T.ring.residue_degree)
            rep.expect(all(a <= b for a, b in zip(seq, seq[1:])), case, f"k={k}: not monotone {seq}")
            start = max(U + 2, k + 1) - (k + 1)
            rep.expect(len(set(seq[start:])) == 1, case, f"k={k}: not stable from l=U+2: {seq}")
            d, l_star, _ = stabilized_plus_dim(T, k)
            rep.expect(d == seq[-1], case, f"k={k}: stabilized {d} != {seq[-1]}")
            rep.expect(seq[l_star - k - 1] == d and (l_star == k + 1 or seq[l_star - k - 2] < d),
                       case, f"k={k}: l*={l_star} wrong for {seq}")
            rep.cases += 1
    rep.hypotheses.append(Hypothesis("top integer weight U known exactly", "checked",
                                     "integer roots of the Q-restricted Sen operator"))
    return rep


# -- 5. running example ---------------------------------------------------------------

def suite_running_example(seed: int = 0) -> VerificationReport:
    rep = VerificationReport("running-example", seed)
    T = running_example()
    R = T.ring
    D = family_datum(T)
    rep.expect(D.delta_at(0, 2) == 1, "generic", f"generic Delta(0,2) = {D.delta_at(0, 2)}")
    points = [Fraction(v) for v in (0, 1, -1, 2, -2, 3, 5, 7)] + [Fraction(1, 2), Fraction(-1, 3)]
    for a in points:
        expect = 2 if a == 0 else 1
        oracle = orc.point_h0(T.blocks, 0, 2, a)
        got = cohomology_dims(T, 0, 2, RingMap.evaluate_at(R, mpq(a.numerator, a.denominator)))
        rep.expect(oracle == expect, f"x={a}", f"oracle h0 {oracle} != {expect}")
        rep.expect(got == (oracle, oracle), f"x={a}", f"cohomology_dims {got} vs oracle {oracle}")
        rep.cases += 1
    jump = DeRhamDatum.from_maps({0: 1, 1: 1}, {(0, 1): 1, (1, 2): 1, (0, 2): 2})
    loc = datum_stratum_locus(T, jump)
    rep.expect(loc.kind == "finite" and loc.points == (X,), "locus", f"Delta(0,2)=2 locus is {loc}")
    N = tower_matrix(T, 0, 2).N
    r0, r1 = base_change_defect(N, RingMap.evaluate_at(R, 0), X)
    rep.expect(r0 != float("inf") and r1 == 0, "base change", f"(r0, r1) = ({r0}, {r1})")
    rep.cases += 2
    rep.hypotheses.append(Hypothesis("oracle specializations", "checked", f"{len(points)} rational points"))
    return rep


# -- 6. Hodge-Tate flatness instance -----------------------------------------------------

def flat_family() -> DifTower:
    return DifTower.from_blocks(poly_ring(), [[[0, 0, 0], [0, 0, 0], [0, 0, X]]])


def flat_counter_family() -> DifTower:
    return DifTower.from_blocks(poly_ring(), [[[0, X - 1, 0], [0, 0, 0], [0, 0, X]]])


def flat_witnesses(R) -> list[RingMap]:
    return [RingMap.evaluate_at(R, 1), RingMap.evaluate_at(R, 2), RingMap.evaluate_at(R, 3),
            RingMap.project_to_quotient(R, (X - 1) ** 2)]


def _flatness_conditions(T: DifTower, m: int, rep: VerificationReport, label: str) -> bool:
    from .family import factor_sen

    R = T.ring
    fs = factor_sen(sen_polynomial(T))
    q0 = fs.Q.evaluate(UniPoly())
    cond_i = cond_ii = True
    breadths = []
    for xi in flat_witnesses(R):
        N = T.map(xi).sen_operator
        h0 = q_dims(N)[0] if xi.target.q_dim else None
        dim = xi.target.q_dim
        cond_i &= h0 == m * dim
        from .rings import is_unit, apply_ring_map

        cond_ii &= is_unit(apply_ring_map(q0, xi))
        breadths.append(xi.target.breadth)
    rep.hypotheses.append(Hypothesis(f"{label}: (i) dim H0 at witness = m dim R_i", "checked" if cond_i else "violated"))
    rep.hypotheses.append(Hypothesis(f"{label}: (ii) image of Q(0) a unit", "checked" if cond_ii else "violated"))
    rep.hypotheses.append(Hypothesis(f"{label}: (iii) bounded breadth", "checked", f"max breadth {max(breadths)}"))
    rep.hypotheses.append(Hypothesis(f"{label}: (iii) injectivity into the product", "assumed",
                                     "a finite witness set cannot embed Q[x]; density is assumed"))
    return cond_i and cond_ii


def suite_flatness(seed: int = 0) -> VerificationReport:
    rep = VerificationReport("flatness", seed)
    T = flat_family()
    fs_ok = _flatness_conditions(T, 2, rep, "family")
    rep.expect(fs_ok, "family", "hypotheses (i)/(ii) fail on the witnesses")
    P = sen_polynomial(T)
    rep.expect(P == RingPoly(T.ring, [0, 0, -X, 1]), "family", f"P = {P}")
    summary = localized_flat_summary(T.sen_operator, -X)
    rep.expect(summary.flat and (summary.ker_rank, summary.coker_rank) == (2, 2), "family",
               f"flat summary {summary}")
    for xi in (RingMap.evaluate_at(T.ring, 0), RingMap.evaluate_at(T.ring, 5),
               RingMap.project_to_quotient(T.ring, X ** 2)):
        r0, r1 = base_change_defect(T.sen_operator, xi, -X)
        rep.expect(r0 != float("inf") and r1 == 0, f"base change at {xi}", f"(r0, r1) = ({r0}, {r1})")
    C = flat_counter_family()
    c_ok = _flatness_conditions(C, 2, rep, "counter-family")
    rep.expect(not c_ok, "counter-family", "counter-family unexpectedly satisfies (i)/(ii)")
    cs = localized_flat_summary(C.sen_operator, -X)
    rep.expect(not cs.flat, "counter-family", f"counter-family reported flat: {cs}")
    rep.cases += 5
    return rep


# -- 7. H^1 base change -------------------------------------------------------------------

def special_rational_points(T: DifTower, lo: int, hi: int) -> list:
    """Rational points where a Sen coefficient or window invariant factor vanishes."""
    pts = set()
    P = sen_polynomial(T)
    omega = weight_multiplicities(P)
    for w in range(lo, hi + 1):
        coeffs = P.shift(UniPoly.const(-w)).coeffs
        c = coeffs[omega.get(w, 0)] if omega.get(w, 0) < len(coeffs) else UniPoly.const(1)
        if c.degree >= 1:
            pts.update(-g.coeffs[0] for g, _ in factor_irreducible(c) if g.degree == 1)
    for k in range(lo, hi + 1):
        for l in range(k + 1, hi + 2):
            inv = tower_invariants(T, k, l)
            if inv and inv[-1].degree >= 1:
                pts.update(-g.coeffs[0] for g, _ in factor_irreducible(inv[-1]) if g.degree == 1)
    return sorted(pts)


def suite_h1_base_change(seed: int, towers: int = 50, maps: int = 5) -> VerificationReport:
    rep = VerificationReport("h1-base-change", seed)
    rng = make_rng(seed)
    R = poly_ring()
    for t in range(towers):
        T = random_line_tower(rng)
        k = int(rng.integers(-1, 3))
        l = k + int(rng.integers(1, 4))
        N = tower_matrix(T, k, l).N
        kc = kernel_and_cokernel(N)
        specials = special_rational_points(T, k, l - 1)
        targets = []
        for s in range(maps):
            a = specials[s % len(specials)] if specials and s < 3 else mpq(int(rng.integers(-3, 4)))
            kind = s % 3
            if kind == 0:
                targets.append(RingMap.evaluate_at(R, a))
            elif kind == 1:
                e = int(rng.integers(2, 4))
                targets.append(RingMap.project_to_quotient(R, UniPoly((-a, 1)) ** e))
            else:
                targets.append(RingMap.project_to_quotient(R, X ** 2 - 2 if rng.random() < 0.5 else X ** 2 + 1))
        for xi in targets:
            direct = q_dims(N.map(xi))[1]
            via = kc.cokernel.tensor_q_dim(xi)
            rep.expect(direct == via, f"#{t} window ({k},{l}) at {xi}", f"direct {direct} vs summary {via}")
            rep.cases += 1
    rep.hypotheses.append(Hypothesis("source ring is a PID", "checked", "towers over Q[x]"))
    return rep


# -- 8. datum axioms and specialization --------------------------------------------------

def _pointwise_oracle_datum(T: DifTower, a: Fraction) -> DeRhamDatum:
    omega, delta = orc.point_datum_frac(T.blocks, a)
    return DeRhamDatum.from_maps(omega, delta)


def _sample_rationals(specials: list, count: int) -> list[Fraction]:
    pts = [Fraction(int(a.numerator), int(a.denominator)) for a in specials][:count]
    v = 0
    while len(pts) < count:
        if Fraction(v) not in pts:
            pts.append(Fraction(v))
        v = -v if v > 0 else -v + 1
    return pts


def suite_datum_axioms(seed: int, towers: int = 50, points: int = 20) -> VerificationReport:
    rep = VerificationReport("datum-axioms", seed)
    rng = make_rng(seed)
    for t in range(towers):
        T = random_line_tower(rng)
        D = family_datum(T)
        case = f"#{t}"
        rep.expect(isinstance(validate(D._omega, D._delta), DeRhamDatum), case, f"{D} fails validate")
        if not D.is_zero:
            rep.expect(orc.naive_is_datum(D._omega, D.delta_at, D.L - 2, D.U + 3), case,
                       f"{D} fails the naive axiom check")
        lo, hi = (D.L, D.U) if not D.is_zero else (0, 2)
        for a in _sample_rationals(special_rational_points(T, lo - 1, hi + 1), points):
            Da = _pointwise_oracle_datum(T, a)
            rel = compare(D, Da).relation
            rep.expect(rel in ("lt", "eq"), f"{case} x={a}", f"generic {D} vs pointwise {Da}: {rel}")
            rep.cases += 1
    rep.hypotheses.append(Hypothesis("base integral (Q[x])", "checked"))
    return rep


# -- 9. minimal covers -------------------------------------------------------------------

def suite_min_covers(seed: int = 0, lo: int = 0, hi: int = 2, max_omega: int = 2, max_delta: int = 3,
                     budget: float = 60.0) -> VerificationReport:
    rep = VerificationReport("min-covers", seed)
    universe = orc.all_data_on_frame(lo, hi, max_omega + 1)
    frame = [(k, l) for k in range(lo, hi + 1) for l in range(k + 1, hi + 2)]
    pts = list(range(lo, hi + 1))

    def vec(D: DeRhamDatum):
        return (tuple(D.weight_mult(w) for w in pts), tuple(D.delta_at(k, l) for k, l in frame))

    targets = [u for u in universe if max(u[0]) <= max_omega and max(u[1], default=0) <= max_delta]
    for om_vec, de_vec in targets:
        omega = {w: m for w, m in zip(pts, om_vec) if m}
        D = DeRhamDatum.from_functions(omega, lambda k, l: de_vec[frame.index((k, l))]) if omega \
            else DeRhamDatum()
        got = {vec(E) for E in min_covers(D, lo, hi)}
        want = orc.brute_min_covers((om_vec, de_vec), universe)
        rep.expect(got == want, D.to_literal(), f"min_covers {sorted(got)} vs brute force {sorted(want)}")
        rep.cases += 1
    rep.hypotheses.append(Hypothesis("bounded grid omega' <= omega + 1", "checked",
                                     f"{len(universe)} valid data on [{lo},{hi}] with omega <= {max_omega + 1}"))
    return rep


# -- 10. strata ---------------------------------------------------------------------------

def suite_strata(seed: int, towers: int = 20, points: int = 200, i: int = 0, j: int = 2,
                 samples: int = 25) -> VerificationReport:
    rep = VerificationReport("strata", seed)
    rng = make_rng(seed)
    for t in range(towers):
        T = random_line_tower(rng, rank=int(rng.integers(1, 4)), depth=int(rng.integers(1, 3)))
        strata = strata_decomposition(T, i, j)
        case = f"#{t} ({len(strata)} strata)"
        for a in _sample_rationals(special_rational_points(T, i, j), points):
            g = UniPoly((-mpq(a.numerator, a.denominator), 1))
            hits = [S for S in strata if S.locus.contains(g)]
            if len(hits) != 1:
                rep.fail(case, f"x={a} lies in {len(hits)} strata")
                continue
            omega, delta = orc.point_datum_frac(T.blocks, a, i, j)
            Da = DeRhamDatum.from_maps(omega, delta)
            rep.expect(hits[0].datum == Da, case, f"x={a}: stratum {hits[0].datum} vs pointwise {Da}")
        for S in strata:
            for k in range(i, j + 1):
                for l in range(k + 1, j + 2):
                    r = stratum_report(T, S, (k, l), samples)
                    rep.expect(r.verdict == "constant", case,
                               f"{S.datum} on ({k},{l}): {r.verdict} at {r.counterexample}")
        rep.cases += 1
    rep.hypotheses.append(Hypothesis("one-parameter base Q[x]", "checked"))
    return rep


# -- 11. self-dual count --------------------------------------------------------------------

def suite_self_dual(seed: int = 0) -> VerificationReport:
    rep = VerificationReport("self-dual", seed)
    V = DifTower.from_blocks(RATIONALS, [[[0, 0], [0, -1]], [[0, 0], [0, 0]]])
    s = 3
    W = dual_twist(V, s)
    E = direct_sum(V, W)
    weights_V = weight_multiplicities(sen_polynomial(V))
    weights_W = weight_multiplicities(sen_polynomial(W))
    rep.expect(weights_V == {0: 1, 1: 1}, "V", f"weights {weights_V}")
    rep.expect(weights_W == {-w - s: m for w, m in weights_V.items()}, "dual", f"weights {weights_W}")
    d2 = sum(m for w, m in weights_V.items() if w < 2)
    dV = stabilized_plus_dim(V, 0)[0]
    dW = stabilized_plus_dim(W, 0)[0]
    dE = stabilized_plus_dim(E, 0)[0]
    rep.expect(dV == d2 == 2, "V", f"stabilized h0 of V = {dV}, d_2 = {d2}")
    rep.expect(dW == 0, "dual", f"stabilized h0 of the dual twist = {dW}")
    rep.expect(dE == dV + dW, "sum", f"stabilized h0 of the sum = {dE}")
    low = min(weights_W) - 1
    rep.expect(stabilized_plus_dim(E, low)[0] == 4, "sum", "full period count at very negative k")
    rep.cases += 5
    rep.hypotheses.append(Hypothesis("weights of V nonnegative, s >= 1", "checked"))
    return rep


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "splitting": suite_splitting,
    "rank-equality": suite_rank_equality,
    "artinian": suite_artinian,
    "monotonicity": suite_monotonicity,
    "running-example": suite_running_example,
    "flatness": suite_flatness,
    "h1-base-change": suite_h1_base_change,
    "datum-axioms": suite_datum_axioms,
    "min-covers": suite_min_covers,
    "strata": suite_strata,
    "self-dual": suite_self_dual,
}


def run_suite(name: str, seed: int = 0, **kwargs) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    rep = SUITES[name](seed, **kwargs)
    rep.elapsed = time.perf_counter() - start
    return rep
