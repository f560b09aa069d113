"""Integer linear algebra: Smith form against sympy, affine solvers by brute force."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dwcat.linalg import (
    AffineSolutionSet,
    factor_prime_powers,
    merge_invariant_factors,
    smith_normal_form,
    solve_affine_mod,
)

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-9, 9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


class TestSmith:
    @given(small_matrices)
    @settings(max_examples=60, deadline=None)
    def test_decomposition_identities(self, rows):
        A = np.array(rows, dtype=object)
        s = smith_normal_form(np.array(rows, dtype=np.int64))
        U, Ui = np.array(s.U, dtype=object), np.array(s.Uinv, dtype=object)
        V, Vi = np.array(s.V, dtype=object), np.array(s.Vinv, dtype=object)
        D = np.array(s.D, dtype=object)
        assert np.array_equal(U @ A @ V, D)
        assert np.array_equal(U @ Ui, np.eye(A.shape[0], dtype=object))
        assert np.array_equal(V @ Vi, np.eye(A.shape[1], dtype=object))
        d = [abs(D[i, i]) for i in range(min(A.shape))]
        nz = [x for x in d if x]
        for a, b in zip(nz, nz[1:]):
            assert b % a == 0
        # off-diagonal must vanish
        assert sum(1 for x in D.ravel() if x) == len(nz)

    @given(small_matrices)
    @settings(max_examples=40, deadline=None)
    def test_matches_sympy(self, rows):
        sympy = pytest.importorskip("sympy")
        from sympy.matrices.normalforms import smith_normal_form as snf

        A = np.array(rows, dtype=np.int64)
        D = smith_normal_form(A).D
        ours = sorted(abs(D[i][i]) for i in range(min(A.shape)) if D[i][i])
        ref = snf(sympy.Matrix(rows))
        theirs = sorted(
            abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0
        )
        assert ours == theirs

    def test_unimodular_factors(self):
        sympy = pytest.importorskip("sympy")
        A = np.array([[2, 4], [6, 8]], dtype=np.int64)
        s = smith_normal_form(A)
        assert abs(sympy.Matrix(s.U).det()) == 1
        assert abs(sympy.Matrix(s.V).det()) == 1


def brute_solutions(A, b, M):
    n = A.shape[1]
    out = set()
    for x in itertools.product(range(M), repeat=n):
        if np.array_equal((A @ np.array(x)) % M, b % M):
            out.add(x)
    return out


class TestAffine:
    @given(
        st.integers(1, 3),
        st.integers(1, 3),
        st.integers(2, 12),
        st.data(),
    )
    @settings(max_examples=50, deadline=None)
    def test_matches_brute_force(self, rows, cols, M, data):
        A = np.array(
            data.draw(
                st.lists(
                    st.lists(st.integers(0, M - 1), min_size=cols, max_size=cols),
                    min_size=rows,
                    max_size=rows,
                )
            ),
            dtype=np.int64,
        )
        b = np.array(
            data.draw(st.lists(st.integers(0, M - 1), min_size=rows, max_size=rows)),
            dtype=np.int64,
        )
        sols = solve_affine_mod(A, b, M)
        expected = brute_solutions(A, b, M)
        assert sols.cardinality() == len(expected)
        if expected:
            got = set(sols)
            assert got == expected

    def test_solution_set_structure(self):
        A = np.array([[2, 0], [0, 3]], dtype=np.int64)
        b = np.array([0, 0], dtype=np.int64)
        sols = solve_affine_mod(A, b, 6)
        # x1 in {0, 3}, x2 in {0, 2, 4}
        assert sols.cardinality() == 6
        assert not sols.is_empty
        assert set(sols) == {(a, b) for a in (0, 3) for b in (0, 2, 4)}

    def test_empty_system(self):
        A = np.array([[2]], dtype=np.int64)
        b = np.array([1], dtype=np.int64)
        sols = solve_affine_mod(A, b, 4)
        assert sols.is_empty
        assert sols.cardinality() == 0
        assert list(sols) == []

    def test_kernel_coordinates_roundtrip(self):
        A = np.array([[2, 4, 0]], dtype=np.int64)
        sols = solve_affine_mod(A, np.array([0]), 8)
        for ts in itertools.product(*(range(o) for o in sols.orders)):
            x = sols.solution_at(ts)
            y = (x - sols.particular) % sols.modulus
            assert sols.kernel_coordinates(y) == ts

    def test_kernel_coordinates_rejects_non_kernel(self):
        A = np.array([[2]], dtype=np.int64)
        sols = solve_affine_mod(A, np.array([0]), 4)
        # kernel of x -> 2x mod 4 is {0, 2}; 1 is not in it
        assert sols.kernel_coordinates(np.array([1])) is None


class TestFactorizations:
    def test_factor_prime_powers(self):
        assert factor_prime_powers(12) == [(2, 2, 4), (3, 1, 3)]
        assert factor_prime_powers(1) == []
        assert factor_prime_powers(49) == [(7, 2, 49)]

    def test_merge_invariant_factors(self):
        # Z/4 x Z/3  merges to the chain (12,)
        assert merge_invariant_factors([[4], [3]]) == [12]
        # (Z/2 x Z/4) x (Z/3) -> (2, 12)
        assert merge_invariant_factors([[2, 4], [3]]) == [2, 12]
        assert merge_invariant_factors([[], []]) == []
