import math
from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from periodstrata import oracles as orc
from periodstrata.matrices import (
    MatrixOverRing,
    ModuleSummary,
    base_change_defect,
    char_poly,
    determinant,
    generic_rank,
    invariant_factors,
    kernel_and_cokernel,
    localized_flat_summary,
    q_dims,
    smith_normal_form,
    split_by_operator,
)
from periodstrata.rings import RATIONALS, RingMap, RingPoly, UniPoly, X, poly_ring, quotient_ring

from strategies import monic_polys, poly_matrices, to_frac

R = poly_ring()


def M(rows, ring=R):
    return MatrixOverRing.from_rows(ring, rows)


def diag_strings(S):
    return [d.to_string() for d in S.diagonal]


class TestSmith:
    def test_zero(self):
        sd = smith_normal_form(MatrixOverRing.zeros(R, 2, 2))
        assert sd.S.is_zero() and sd.rank == 0

    def test_already_smith(self):
        assert diag_strings(smith_normal_form(M([[X, 0], [0, X ** 2]]))) == ["x", "x^2"]

    def test_unit_entry(self):
        A = M([[X, 1], [0, X]])
        sd = smith_normal_form(A)
        assert diag_strings(sd) == ["1", "x^2"]
        assert sd.U @ A @ sd.V == sd.S

    def test_divisibility_fix(self):
        # diag(x, x - 1) is not in Smith form: the result must be diag(1, x(x-1))
        sd = smith_normal_form(M([[X, 0], [0, X - 1]]))
        assert list(sd.diagonal) == [UniPoly.const(1), X * (X - 1)]

    def test_rejects_non_pid(self):
        with pytest.raises(ValueError):
            smith_normal_form(M([[X]], quotient_ring(X ** 2)))

    def test_deterministic(self):
        A = M([[X ** 2 + 1, X, 3], [X - 1, 2, X ** 3]])
        a, b = smith_normal_form(A), smith_normal_form(A)
        assert (a.U, a.S, a.V) == (b.U, b.S, b.V)

    @given(poly_matrices(max_n=4, max_deg=2, square=False))
    def test_factorization_invariants(self, A):
        sd = smith_normal_form(A)
        assert sd.U @ A @ sd.V == sd.S
        diag = sd.diagonal
        assert all(d.is_zero() or d.lc == 1 for d in diag)
        assert all(a.divides(b) for a, b in zip(diag, diag[1:]))
        for i in range(A.rows):
            for j in range(A.cols):
                if i != j:
                    assert sd.S.values[i][j].is_zero()
        assert determinant(sd.U).degree == 0 and determinant(sd.V).degree == 0
        assert invariant_factors(A) == [d for d in diag if not d.is_zero()]

    @given(poly_matrices(max_n=3, max_deg=2, square=False))
    def test_invariant_factors_match_minor_gcds(self, A):
        # d_1 ... d_t is the gcd of the t x t minors
        invs = invariant_factors(A)
        prod = UniPoly.const(1)
        for t, d in enumerate(invs, start=1):
            prod = prod * d
            g = orc.minors_gcd(A.values, t)
            assert [to_frac(c) for c in reversed(prod.coeffs)] == [Fraction(str(c)) for c in g.all_coeffs()]
        if len(invs) < min(A.rows, A.cols):
            assert orc.minors_gcd(A.values, len(invs) + 1).is_zero

    @given(poly_matrices(max_n=4, max_deg=2))
    def test_determinant_matches_sympy(self, A):
        x = sympy.Symbol("x")
        S = sympy.Matrix([[sum(sympy.Rational(str(c)) * x ** i for i, c in enumerate(v.coeffs)) for v in r]
                          for r in A.values])
        want = sympy.Poly(S.det(method="berkowitz"), x)
        got = determinant(A)
        assert [Fraction(str(c)) for c in want.all_coeffs()] == ([to_frac(c) for c in reversed(got.coeffs)]
                                                                 or [Fraction(0)])


class TestKernelCokernel:
    def test_nilpotent_over_q(self):
        kc = kernel_and_cokernel(M([[0, 1], [0, 0]], RATIONALS))
        assert [[e.value for e in col] for col in kc.kernel] == [[UniPoly.const(1), UniPoly()]]
        assert kc.cokernel.free_rank == 1

    def test_torsion(self):
        kc = kernel_and_cokernel(M([[X]]))
        assert kc.kernel == () and kc.cokernel == ModuleSummary(0, (X,))
        kc = kernel_and_cokernel(M([[X, 1], [0, X]]))
        assert kc.kernel == () and kc.cokernel.torsion_divisors == (X ** 2,)

    def test_quotient_ring_dims(self):
        A = M([[X]], quotient_ring(X ** 2))
        assert kernel_and_cokernel(A).q_dims == (1, 1)

    @given(poly_matrices(max_n=4, max_deg=2, square=False))
    def test_kernel_is_free_and_annihilated(self, A):
        kc = kernel_and_cokernel(A)
        r = generic_rank(A)
        assert len(kc.kernel) == A.cols - r
        assert kc.cokernel.free_rank == A.rows - r
        for col in kc.kernel:
            v = MatrixOverRing(R, A.cols, 1, [[e.value] for e in col])
            assert (A @ v).is_zero()
        if kc.kernel:
            K = MatrixOverRing(R, A.cols, len(kc.kernel), [[c[i].value for c in kc.kernel] for i in range(A.cols)])
            # saturated: the kernel basis has trivial invariant factors
            assert all(d == UniPoly.const(1) for d in invariant_factors(K))

    @given(poly_matrices(max_n=4, max_deg=2))
    def test_square_rank_equality(self, A):
        kc = kernel_and_cokernel(A)
        assert len(kc.kernel) == kc.cokernel.free_rank


class TestGenericRank:
    def test_examples(self):
        assert generic_rank(MatrixOverRing.identity(R, 3)) == 3
        assert generic_rank(M([[X, X], [X, X]])) == 1
        assert generic_rank(M([[X, 1], [1, X]])) == 2

    @given(poly_matrices(max_n=4, max_deg=2, square=False))
    def test_matches_point_evaluation(self, A):
        assert generic_rank(A) == orc.generic_rank_by_points(A.values, 2)


class TestCharPoly:
    def test_examples(self):
        assert char_poly(MatrixOverRing.diagonal(RATIONALS, [0, 0, 2])) == \
            RingPoly.from_rational(RATIONALS, UniPoly((0, 0, -2, 1)))
        assert char_poly(M([[0, 1], [0, 0]], RATIONALS)) == RingPoly.from_rational(RATIONALS, UniPoly((0, 0, 1)))
        assert char_poly(M([[0, 1], [0, X]])) == RingPoly(R, [UniPoly(), -X, UniPoly.const(1)])

    @given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                                                         min_size=n, max_size=n)))
    def test_matches_interpolation_oracle(self, rows):
        A = M(rows, RATIONALS)
        got = [to_frac(c.coeff(0)) for c in char_poly(A).coeffs]
        assert got == orc.charpoly_frac([[Fraction(v) for v in r] for r in rows])

    def test_over_quotient_ring(self):
        K = quotient_ring(X ** 2 - 2)
        P = char_poly(M([[X, 1], [0, X]], K))
        assert P == RingPoly(K, [UniPoly.const(2), -2 * X, UniPoly.const(1)])


class TestSplit:
    def _spans(self, res):
        return [len(b) for b in res.block_bases]

    def test_eigen_decomposition(self):
        phi = MatrixOverRing.diagonal(RATIONALS, [0, 0, 2])
        res = split_by_operator(phi, [(0, 2)], UniPoly((-2, 1)))
        assert res.labels == ("cofactor", "root")
        assert res.projectors[1] == MatrixOverRing.diagonal(RATIONALS, [1, 1, 0])
        assert res.projectors[0] == MatrixOverRing.diagonal(RATIONALS, [0, 0, 1])

    def test_zero_operator(self):
        phi = MatrixOverRing.zeros(RATIONALS, 3, 3)
        res = split_by_operator(phi, [(0, 1)], UniPoly.const(1))
        assert res.projectors[1] == MatrixOverRing.identity(RATIONALS, 3)
        assert res.projectors[0].is_zero()

    def test_non_semisimple(self):
        phi = M([[0, 1], [0, 0]], RATIONALS)
        res = split_by_operator(phi, [(0, 2)], UniPoly.const(1))
        assert res.projectors[1] == MatrixOverRing.identity(RATIONALS, 2)

    def test_hypothesis_failure(self):
        with pytest.raises(ValueError):
            split_by_operator(M([[0, 0], [0, 1]], RATIONALS), [(0, 1), (1, 1)], UniPoly((-1, 1)))
        with pytest.raises(ValueError):  # P(phi) != 0
            split_by_operator(M([[0, 1], [0, 0]], RATIONALS), [(0, 1)], UniPoly.const(1))

    def test_over_artinian_ring(self):
        A = quotient_ring(X ** 2)
        phi = M([[X, 0], [0, 1 + X]], A)
        res = split_by_operator(phi, [(X, 1), (1 + X, 1)], UniPoly.const(1))
        assert res.projectors[1] == M([[1, 0], [0, 0]], A)
        assert res.projectors[2] == M([[0, 0], [0, 1]], A)


class TestFlatAndBaseChange:
    def test_flat_examples(self):
        s = localized_flat_summary(M([[X]]), X)
        assert s.flat and (s.ker_rank, s.coker_rank) == (0, 0)
        s = localized_flat_summary(M([[X, 1], [0, X]]), X)
        assert s.flat and (s.ker_rank, s.coker_rank) == (0, 0)
        s = localized_flat_summary(M([[X - 1]]), X)
        assert not s.flat and s.offending == (X - 1,)

    def test_defect_examples(self):
        ev0 = RingMap.evaluate_at(R, 0)
        assert base_change_defect(M([[X]]), ev0, 1) == (math.inf, 0)
        assert base_change_defect(M([[X]]), ev0, X) == (1, 0)
        A = M([[1, X], [0, 1]])
        for a in (0, 3, mpq(-1, 2)):
            assert base_change_defect(A, RingMap.evaluate_at(R, a), X + 5) == (0, 0)

    @given(poly_matrices(max_n=3, max_deg=2, square=False), monic_polys(1, 2))
    def test_h1_tensor_matches_direct(self, A, f):
        m = RingMap.project_to_quotient(R, f)
        assert q_dims(A.map(m))[1] == kernel_and_cokernel(A).cokernel.tensor_q_dim(m)
