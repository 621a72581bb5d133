import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import definition_det, fraction_det
from qwmp import (
    QMatrix,
    Quaternion,
    bordered_minor_sum_col,
    bordered_minor_sum_row,
    cdet,
    charpoly_border_coeffs,
    cofactors,
    det_hermitian,
    hermitian_inverse,
    minor_sum,
    principal_minor_sums,
    rank,
    rdet,
)
from qwmp.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotHermitian,
    RankOutOfRange,
    SingularMatrix,
    SizeCapExceeded,
)
from qwmp.wmp import weighted_adjoint
from strategies import hermitian_int, int_qmatrix

ZERO = Quaternion(0)


def entries(A):
    return [[tuple(Fraction(x) for x in A.data[r, c]) for c in range(A.cols)] for r in range(A.rows)]


def real_part_rows(A):
    return [[A.data[r, c, 0] for c in range(A.cols)] for r in range(A.rows)]


def sharp_gram(example):
    return weighted_adjoint(example["A"], example["W"]) @ example["A"]


class TestDefinitions:
    def test_one_by_one(self):
        A = QMatrix.from_rows([["1+2i-j+3k"]])
        assert rdet(1, A) == cdet(1, A) == A[0, 0]

    def test_two_by_two(self):
        A = QMatrix.from_rows([["i", "j"], ["k", "1+i"]])
        a, b, c, d = A[0, 0], A[0, 1], A[1, 0], A[1, 1]
        assert rdet(1, A) == a * d - b * c
        # row 2 anchor reads the 2-cycle from row 2
        assert rdet(2, A) == d * a - c * b
        assert cdet(1, A) == d * a - b * c
        assert cdet(2, A) == a * d - c * b

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_permutation_sum(self, n):
        rng = np.random.default_rng(n)
        A = QMatrix(rng.integers(-3, 4, size=(n, n, 4)))
        E = entries(A)
        for anchor in range(1, n + 1):
            assert rdet(anchor, A).components == definition_det(E, anchor - 1, "row")
            assert cdet(anchor, A).components == definition_det(E, anchor - 1, "col")

    @pytest.mark.parametrize("n", range(1, 7))
    def test_real_matrices_give_classical_determinant(self, n):
        rng = np.random.default_rng(100 + n)
        R = rng.integers(-5, 6, size=(n, n))
        data = np.zeros((n, n, 4), dtype=np.int64)
        data[..., 0] = R
        A = QMatrix(data)
        expected = fraction_det(R.tolist())
        F = A.to_float()
        lu = np.linalg.det(R.astype(float))
        for anchor in range(1, n + 1):
            assert rdet(anchor, A) == Quaternion(expected)
            assert cdet(anchor, A) == Quaternion(expected)
            assert abs(rdet(anchor, F).components[0] - lu) <= 1e-10 * max(1.0, abs(lu))
            assert abs(cdet(anchor, F).components[0] - lu) <= 1e-10 * max(1.0, abs(lu))

    def test_hermitian_two_by_two(self):
        A = QMatrix.from_rows([["2", "i"], ["-i", "2"]])
        assert cdet(1, A) == Quaternion(3) == rdet(1, A)
        assert det_hermitian(A) == 3

    def test_trivial_values(self):
        assert det_hermitian(QMatrix.identity(3)) == 1
        assert det_hermitian(QMatrix.diag([2, 3])) == 6

    def test_float_agrees_with_exact(self, example):
        G = sharp_gram(example)
        for i in (1, 2, 3):
            assert rdet(i, G.to_float()).isclose(rdet(i, G), 1e-9)

    def test_index_errors(self):
        A = QMatrix.identity(3)
        for bad in (0, 4, -1):
            with pytest.raises(IndexOutOfRange):
                rdet(bad, A)
            with pytest.raises(IndexOutOfRange):
                cdet(bad, A)

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            rdet(1, QMatrix.zeros(2, 3))

    def test_size_cap(self, monkeypatch):
        monkeypatch.setenv("QWMP_SIZE_CAP", "3")
        with pytest.raises(SizeCapExceeded):
            rdet(1, QMatrix.identity(4))
        with pytest.raises(SizeCapExceeded):
            cofactors(QMatrix.identity(4))
        assert rdet(1, QMatrix.identity(3)) == Quaternion(1)

    def test_default_cap_is_eight(self):
        with pytest.raises(SizeCapExceeded):
            cdet(1, QMatrix.identity(9))


class TestHermitianEquality:
    @given(hermitian_int())
    def test_all_expansions_agree_and_are_real(self, A):
        n = A.rows
        value = rdet(1, A)
        assert value.components[1:] == (0, 0, 0)
        for i in range(1, n + 1):
            assert rdet(i, A) == value == cdet(i, A)

    @given(hermitian_int(n=3))
    def test_verify_mode(self, A):
        assert det_hermitian(A, verify=True) == rdet(2, A).components[0]

    def test_debug_env(self, monkeypatch, example):
        monkeypatch.setenv("QWMP_DEBUG", "1")
        assert det_hermitian(example["M"]) == det_hermitian(example["M"], verify=False)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            det_hermitian(QMatrix.from_rows([["1", "i"], ["i", "1"]]))


def _replace_row(A, t, row):
    return A.with_row(t, QMatrix.row_vector(row) if not isinstance(row, QMatrix) else row)


class TestLinearity:
    @given(int_qmatrix(3, 3), int_qmatrix(1, 3), int_qmatrix(1, 3), st.integers(0, 2))
    def test_row_additivity(self, A, b, c, t):
        whole = A.with_row(t, b + c)
        left, right = A.with_row(t, b), A.with_row(t, c)
        for i in (1, 2, 3):
            assert rdet(i, whole) == rdet(i, left) + rdet(i, right)
            assert cdet(i, whole) == cdet(i, left) + cdet(i, right)

    @given(int_qmatrix(3, 3), int_qmatrix(3, 1), int_qmatrix(3, 1), st.integers(0, 2))
    def test_column_additivity(self, A, b, c, t):
        whole = A.with_col(t, b + c)
        left, right = A.with_col(t, b), A.with_col(t, c)
        for j in (1, 2, 3):
            assert rdet(j, whole) == rdet(j, left) + rdet(j, right)
            assert cdet(j, whole) == cdet(j, left) + cdet(j, right)

    @given(int_qmatrix(3, 3), int_qmatrix(1, 1), st.integers(1, 3))
    def test_scalar_pulls_out_on_the_anchor_side(self, A, s, i):
        q = s[0, 0]
        assert rdet(i, A.with_row(i - 1, q * A.row(i - 1))) == q * rdet(i, A)
        assert cdet(i, A.with_col(i - 1, A.col(i - 1) * q)) == cdet(i, A) * q


class TestCombinations:
    @given(hermitian_int(n=4), int_qmatrix(1, 3), st.integers(0, 3))
    def test_row_replaced_by_left_combination(self, A, coeffs, i):
        others = [r for r in range(4) if r != i]
        combo = QMatrix.zeros(1, 4)
        for c, r in zip(range(3), others):
            combo = combo + coeffs[0, c] * A.row(r)
        B = A.with_row(i, combo)
        assert rdet(i + 1, B) == ZERO
        assert cdet(i + 1, B) == ZERO

    @given(hermitian_int(n=4), int_qmatrix(3, 1), st.integers(0, 3))
    def test_column_replaced_by_right_combination(self, A, coeffs, j):
        others = [c for c in range(4) if c != j]
        combo = QMatrix.zeros(4, 1)
        for r, c in zip(range(3), others):
            combo = combo + A.col(c) * coeffs[r, 0]
        B = A.with_col(j, combo)
        assert cdet(j + 1, B) == ZERO
        assert rdet(j + 1, B) == ZERO

    @given(int_qmatrix(4, 2), int_qmatrix(2, 1))
    def test_dependent_columns_give_singular_gram(self, A, coeffs):
        B = QMatrix(np.concatenate([A.data, (A @ coeffs).data], axis=1))
        assert det_hermitian(B.H @ B) == 0

    @given(int_qmatrix(4, 3))
    def test_gram_nonsingular_iff_independent(self, A):
        independent = rank(A) == A.cols
        assert (det_hermitian(A.H @ A) != 0) == independent

    def test_gram_nonsingular_constructed(self):
        A = QMatrix.from_rows([["1", "i"], ["j", "k"], ["0", "1"]])
        assert rank(A) == 2 and det_hermitian(A.H @ A) != 0
        # second column = first column times i on the right
        B = QMatrix.from_rows([["1", "i"], ["j", "-k"], ["k", "j"]])
        assert rank(B) == 1 and det_hermitian(B.H @ B) == 0


class TestCofactors:
    def test_identity(self):
        R, L = cofactors(QMatrix.identity(2))
        assert R == L == QMatrix.identity(2)

    @given(hermitian_int(n=3))
    def test_expansions_reproduced(self, A):
        R, L = cofactors(A)
        for i in range(3):
            row = sum((A[i, j] * R[i, j] for j in range(3)), ZERO)
            assert row == rdet(i + 1, A)
            col = sum((L[r, i] * A[r, i] for r in range(3)), ZERO)
            assert col == cdet(i + 1, A)

    @given(int_qmatrix(3, 3))
    def test_expansions_for_general_matrices(self, A):
        R, L = cofactors(A)
        for i in range(3):
            assert sum((A[i, j] * R[i, j] for j in range(3)), ZERO) == rdet(i + 1, A)
            assert sum((L[r, i] * A[r, i] for r in range(3)), ZERO) == cdet(i + 1, A)


class TestHermitianInverse:
    def test_identity(self):
        assert hermitian_inverse(QMatrix.identity(4)) == QMatrix.identity(4)

    def test_diag(self):
        assert hermitian_inverse(QMatrix.diag([2, 4])) == QMatrix.diag([Fraction(1, 2), Fraction(1, 4)])

    def test_two_by_two(self):
        X = hermitian_inverse(QMatrix.from_rows([["2", "i"], ["-i", "2"]]))
        assert X == QMatrix.from_rows([["2", "-i"], ["i", "2"]]) * Fraction(1, 3)

    @given(hermitian_int(n=3))
    def test_products_are_identity(self, A):
        if det_hermitian(A) == 0:
            with pytest.raises(SingularMatrix):
                hermitian_inverse(A)
            return
        X = hermitian_inverse(A)
        assert A @ X == QMatrix.identity(3) == X @ A

    def test_float(self, example):
        M = example["M"].to_float()
        X = hermitian_inverse(M)
        assert (M @ X).allclose(QMatrix.identity(4, exact=False), 1e-12)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            hermitian_inverse(QMatrix.from_rows([["1", "i"], ["-i", "1"]]))


class TestMinorSums:
    def test_pairs_of_sharp_gram(self, example):
        G = sharp_gram(example)
        minors = [det_hermitian(G.submatrix(list(b), list(b))) for b in itertools.combinations(range(3), 2)]
        assert minors == [23380, 23380, 23380]
        assert minor_sum(G, 2) == 70140

    def test_coefficients(self, example):
        G = sharp_gram(example)
        d = principal_minor_sums(G)
        assert d[1] == 178 + 176 + 176
        assert d[2] == 70140
        assert d[3] == det_hermitian(G) == 0
        assert d.coefficients("minus") == (1, -530, 70140, 0)

    @given(hermitian_int(n=4))
    def test_shifted_determinant(self, A):
        d = principal_minor_sums(A)
        for t in range(-2, 4):
            shifted = A + QMatrix.identity(4) * t
            assert det_hermitian(shifted) == d.evaluate(t)
            assert det_hermitian(QMatrix.identity(4) * t - A) == d.evaluate(t, "minus")

    def test_trace_and_det(self, example):
        M = example["M"]
        d = principal_minor_sums(M)
        assert d[1] == 8 and d[4] == det_hermitian(M) and d.order == 4

    def test_rank_range(self):
        with pytest.raises(RankOutOfRange):
            minor_sum(QMatrix.identity(3), 4)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            principal_minor_sums(QMatrix.from_rows([["0", "1"], ["0", "0"]]))


class TestBordered:
    def test_printed_numerator(self, example):
        G = sharp_gram(example)
        a = weighted_adjoint(example["A"], example["W"])
        value = bordered_minor_sum_col(G, a.col(0), 1, 2)
        assert value == Quaternion.parse("13360-3340i+6680j-6680k")

    @given(hermitian_int(n=3), int_qmatrix(3, 1), st.integers(1, 3))
    def test_full_order_is_single_term(self, G, b, i):
        assert bordered_minor_sum_col(G, b, i, 3) == cdet(i, G.with_col(i - 1, b))
        assert bordered_minor_sum_row(G, b.H, i, 3) == rdet(i, G.with_row(i - 1, b.H))

    @given(hermitian_int(n=4), st.integers(1, 4), st.integers(1, 4))
    def test_replacing_with_own_column_is_a_no_op(self, G, i, r):
        expected = sum(
            det_hermitian(G.submatrix(list(beta), list(beta)))
            for beta in itertools.combinations(range(4), r)
            if i - 1 in beta
        )
        assert bordered_minor_sum_col(G, G.col(i - 1), i, r) == Quaternion(expected)
        assert bordered_minor_sum_row(G, G.row(i - 1), i, r) == Quaternion(expected)

    @pytest.mark.parametrize("seed", range(5))
    def test_real_row_sum_matches_classical(self, seed):
        rng = np.random.default_rng(seed)
        n = 4
        S = rng.integers(-4, 5, size=(n, n))
        S = S + S.T
        b = rng.integers(-4, 5, size=n)
        data = np.zeros((n, n, 4), dtype=np.int64)
        data[..., 0] = S
        G = QMatrix(data)
        bq = QMatrix.row_vector([int(x) for x in b])
        for j in range(n):
            for r in range(1, n + 1):
                expected = Fraction(0)
                for alpha in itertools.combinations(range(n), r):
                    if j not in alpha:
                        continue
                    sub = [[S[x, y] if x != j else b[y] for y in alpha] for x in alpha]
                    expected += fraction_det(sub)
                assert bordered_minor_sum_row(G, bq, j + 1, r) == Quaternion(expected)

    @given(hermitian_int(n=3), int_qmatrix(3, 1), st.integers(1, 3))
    def test_charpoly_border_identity(self, G, b, i):
        c = charpoly_border_coeffs(G, b, i)
        for t in range(4):
            lhs = cdet(i, (G + QMatrix.identity(3) * t).with_col(i - 1, b))
            rhs = sum((c[k] * t ** (2 - k) for k in range(3)), ZERO)
            assert lhs == rhs

    def test_charpoly_border_trivial(self):
        b = QMatrix.column(["1+i", "j", "k"])
        c = charpoly_border_coeffs(QMatrix.zeros(3, 3), b, 2)
        assert c == [b[1, 0], ZERO, ZERO]
        assert charpoly_border_coeffs(QMatrix.from_rows([["5"]]), QMatrix.column(["i"]), 1) == [Quaternion.parse("i")]

    def test_errors(self, example):
        G = sharp_gram(example)
        b = QMatrix.column(["1", "2", "3"])
        with pytest.raises(IndexOutOfRange):
            bordered_minor_sum_col(G, b, 4, 2)
        with pytest.raises(RankOutOfRange):
            bordered_minor_sum_col(G, b, 1, 0)
        with pytest.raises(DimensionMismatch):
            bordered_minor_sum_col(G, QMatrix.column(["1"]), 1, 1)


class TestBorderedRank:
    @given(st.integers(0, 10**6))
    def test_bordered_rank_bounded_by_rank(self, seed):
        from qwmp.verify import random_instances

        inst = random_instances(3, seed=seed, max_dim=4)[seed % 3]
        A, W = inst.A, inst.W
        a = weighted_adjoint(A, W)
        G = a @ A
        H = A @ a
        r = rank(A)
        for i in range(A.cols):
            for j in range(A.rows):
                assert rank(G.with_col(i, a.col(j))) <= r
        for i in range(A.cols):
            for j in range(A.rows):
                assert rank(H.with_row(j, a.row(i))) <= r
