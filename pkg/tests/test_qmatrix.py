import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import interleaved_embed
from qwmp import QMatrix, complex_embed, complex_unembed, conj_transpose, inverse, is_hermitian, matmul, rank
from qwmp.errors import DimensionMismatch, NotInImage, SingularMatrix
from qwmp.wmp import weighted_adjoint
from strategies import any_int_qmatrix, int_qmatrix, ranked_qmatrix


class TestMatmul:
    def test_identity(self, example):
        A = example["A"]
        assert matmul(A, QMatrix.identity(3)) == A
        assert QMatrix.identity(4) @ A == A

    def test_sharp_gram_matches_printed(self, example):
        G = weighted_adjoint(example["A"], example["W"]) @ example["A"]
        printed = QMatrix.from_rows(
            [
                ["178", "41+47i+47j+43k", "-41+43i+47j+47k"],
                ["41-47i-47j-43k", "176", "-40-46i-42j-46k"],
                ["-41-43i-47j-47k", "-40+46i+42j+46k", "176"],
            ]
        )
        assert G == printed

    def test_one_by_one(self):
        assert QMatrix.from_rows([["i"]]) @ QMatrix.from_rows([["j"]]) == QMatrix.from_rows([["k"]])

    def test_order_of_factors_kept(self):
        a, b = QMatrix.from_rows([["i", "j"]]), QMatrix.from_rows([["j"], ["i"]])
        assert a @ b == QMatrix.from_rows([["0"]])  # ij + ji = 0
        assert (b @ a)[0, 1] == QMatrix.from_rows([["-1"]])[0, 0]

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            QMatrix.zeros(2, 3) @ QMatrix.zeros(2, 3)

    def test_mixed_backends_fall_back_to_float(self, example):
        P = example["A"].to_float() @ example["A"].H
        assert not P.is_exact
        assert P.allclose(example["A"] @ example["A"].H)


class TestConjTranspose:
    def test_identity(self):
        assert QMatrix.identity(3).H == QMatrix.identity(3)

    def test_row(self):
        assert conj_transpose(QMatrix.from_rows([["i", "j"]])) == QMatrix.from_rows([["-i"], ["-j"]])

    def test_involution(self, example):
        assert example["A"].H.H == example["A"]

    @given(st.integers(1, 4).flatmap(lambda k: st.tuples(int_qmatrix(3, k), int_qmatrix(k, 2))))
    def test_reverses_products(self, pair):
        A, B = pair
        assert (A @ B).H == B.H @ A.H


class TestRank:
    def test_example(self, example):
        assert rank(example["A"]) == 2
        assert example["A"].to_float().rank() == 2

    def test_zero(self):
        assert rank(QMatrix.zeros(3, 4)) == 0

    def test_identity(self):
        assert rank(QMatrix.identity(5)) == 5

    def test_left_dependence_detected(self):
        # second row = i * first row; rank 1 over H although the rows are "independent" over C-right
        A = QMatrix.from_rows([["1", "j"], ["i", "k"]])
        assert rank(A) == 1

    @given(ranked_qmatrix())
    def test_rank_invariants(self, A):
        r = rank(A)
        assert r == rank(A.H) == rank(A.H @ A)
        assert r == np.linalg.matrix_rank(complex_embed(A)) // 2
        assert r == A.to_float().rank()


class TestHermitian:
    def test_weight(self, example):
        assert is_hermitian(example["M"])
        assert is_hermitian(example["N_inv"])

    def test_not_hermitian(self):
        assert not is_hermitian(QMatrix.from_rows([["0", "i"], ["i", "0"]]))

    def test_sharp_gram(self, example):
        assert is_hermitian(weighted_adjoint(example["A"], example["W"]) @ example["A"])

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            is_hermitian(QMatrix.zeros(2, 3))

    def test_float_tolerance(self, example):
        M = example["M"].to_float()
        eps = QMatrix.from_rows([["0", "0", "0", "0"]] * 3 + [["1e-13", "0", "0", "0"]], exact=False)
        assert is_hermitian(M + eps)
        assert not is_hermitian(M + eps * 1e9)


class TestEmbedding:
    def test_j(self):
        np.testing.assert_array_equal(complex_embed(QMatrix.from_rows([["j"]])), [[0, 1], [-1, 0]])

    def test_i(self):
        np.testing.assert_array_equal(complex_embed(QMatrix.from_rows([["i"]])), [[1j, 0], [0, -1j]])

    @given(int_qmatrix(3, 4))
    def test_round_trip(self, A):
        assert complex_unembed(complex_embed(A)) == A.to_float()

    @given(st.tuples(int_qmatrix(2, 3), int_qmatrix(3, 2)))
    def test_multiplicative(self, pair):
        A, B = pair
        np.testing.assert_allclose(complex_embed(A @ B), complex_embed(A) @ complex_embed(B), atol=1e-12)

    @given(any_int_qmatrix)
    def test_same_spectrum_as_interleaved_oracle(self, A):
        # the two layouts differ by a row/column permutation
        s1 = np.linalg.svd(complex_embed(A), compute_uv=False)
        s2 = np.linalg.svd(interleaved_embed(A.to_float().data), compute_uv=False)
        np.testing.assert_allclose(s1, s2, atol=1e-10)

    def test_not_in_image(self):
        with pytest.raises(NotInImage):
            complex_unembed(np.array([[1, 0], [0, 1j]]))
        with pytest.raises(NotInImage):
            complex_unembed(np.zeros((3, 2)))


class TestInverse:
    def test_exact(self, example):
        M = example["M"]
        assert M @ inverse(M) == QMatrix.identity(4) == inverse(M) @ M

    def test_float(self, example):
        N = example["N_inv"].to_float()
        assert (N @ inverse(N)).allclose(QMatrix.identity(3, exact=False), 1e-12)

    def test_singular(self, example):
        G = example["A"].H @ example["A"]
        with pytest.raises(SingularMatrix):
            inverse(G)


class TestAccess:
    def test_submatrix_and_replace(self, example):
        A = example["A"]
        sub = A.submatrix([0, 2], [1, 2])
        assert sub == QMatrix.from_rows([["i", "j"], ["j", "-i"]])
        B = A.with_col(0, QMatrix.column(["1", "2", "3", "4"]))
        assert B.col(0) == QMatrix.column(["1", "2", "3", "4"]) and B.col(1) == A.col(1)
        C = A.with_row(3, QMatrix.row_vector(["k", "k", "k"]))
        assert C.row(3) == QMatrix.row_vector(["k", "k", "k"])

    def test_immutable(self, example):
        with pytest.raises(ValueError):
            example["A"].data[0, 0, 0] = 5

    def test_scalar_sides(self):
        A = QMatrix.from_rows([["i"]])
        assert (A * "j")[0, 0] == QMatrix.from_rows([["k"]])[0, 0]
        assert ("j" * A)[0, 0] == QMatrix.from_rows([["-k"]])[0, 0]
