"""Classification layer: pairing systems, the rescaling quotient, expected tables.

The counting oracle used throughout: over a trivial 3-cocycle with H = N the
sigma-shifts act on the solution set by translation, so every orbit has the
size of the shift image and ``classes = |S| / |image|``.  The image size is
obtained here by brute enumeration of all sigma vectors (the kernel count
divides the full sigma space), with no elimination or lattice machinery
involved, which makes it an independent check on the quotient that
``classify_pair`` computes prime by prime.  For Z_2 the candidate space is
small enough (16 vectors) to run every vector through the full algebra
battery, tying the affine system itself to the axioms it claims to encode.
"""

import itertools
from functools import lru_cache

import numpy as np
import pytest

from conftest import cyclic_data, dihedral_data
from dwcat.algebras import verify_algebra
from dwcat.center import CocycleData
from dwcat.classify import (
    ComparisonResult,
    ExpectedEntry,
    PairingLayout,
    algebra_from_vector,
    classify_group,
    classify_pair,
    compare_with_expected,
    dihedral_expected,
    gauge_equivalent,
    pairing_system,
    rotation_subgroup,
    sigma_shift_matrix,
    solve_pairings,
)
from dwcat.cohomology import Cochain
from dwcat.groups import cyclic_group, dihedral_group

ROT3 = [0, 1, 2]


@lru_cache(maxsize=None)
def flat_cyclic(n):
    """Z_n with the zero 3-cocycle at modulus 1 (so the layout default is n^2)."""
    G = cyclic_group(n)
    omega = Cochain(G, 3, 1, np.zeros((n, n, n), dtype=np.int64))
    return CocycleData(G, omega)


def brute_sigma_kernel(layout):
    """Count sigma : N-{e} -> Z/M whose induced shift vanishes, by full sweep."""
    S = sigma_shift_matrix(layout)
    M = layout.modulus
    k = len(layout.N) - 1
    kernel = 0
    for sig in itertools.product(range(M), repeat=k):
        if not ((S @ np.array(sig, dtype=np.int64)) % M).any():
            kernel += 1
    return kernel, M**k


class TestLayoutAndSystem:
    def test_variable_indexing_is_a_bijection(self):
        layout = PairingLayout(flat_cyclic(3), range(3), range(3))
        assert (layout.n_kappa, layout.n_eps, layout.n_vars) == (4, 4, 8)
        assert layout.modulus == 9
        seen = set()
        for n in layout.N:
            for m in layout.N:
                i = layout.kappa_var(n, m)
                if n == 0 or m == 0:
                    assert i is None
                else:
                    seen.add(i)
        for h in layout.H:
            for n in layout.N:
                i = layout.eps_var(h, n)
                if h == 0 or n == 0:
                    assert i is None
                else:
                    seen.add(i)
        assert seen == set(range(8))

    def test_tables_round_trip_through_the_vector(self):
        layout = PairingLayout(flat_cyclic(3), range(3), range(3))
        vec = np.arange(1, 9, dtype=np.int64)
        kappa, eps = layout.tables_from_vector(vec)
        assert kappa[0].tolist() == [0, 0, 0] and kappa[:, 0].tolist() == [0, 0, 0]
        assert eps[0].tolist() == [0, 0, 0] and eps[:, 0].tolist() == [0, 0, 0]
        for n in (1, 2):
            for m in (1, 2):
                assert kappa[n, m] == vec[layout.kappa_var(n, m)]
        for h in (1, 2):
            for n in (1, 2):
                assert eps[h, n] == vec[layout.eps_var(h, n)]

    def test_rejects_bad_subgroup_data(self, d3_data_p1):
        with pytest.raises(ValueError, match="subgroups"):
            PairingLayout(d3_data_p1, [0, 1], [0])
        with pytest.raises(ValueError, match="normal"):
            PairingLayout(d3_data_p1, [0, 3], ROT3)
        with pytest.raises(ValueError, match="normal"):
            # {e, s} is a subgroup but not normal in the whole group
            PairingLayout(d3_data_p1, range(6), [0, 3])
        with pytest.raises(ValueError, match="multiple of the cocycle modulus"):
            PairingLayout(d3_data_p1, ROT3, ROT3, modulus=10)

    def test_default_modulus_scales_with_the_pair(self, d3_data_p1):
        layout = PairingLayout(d3_data_p1, ROT3, ROT3)
        assert layout.modulus == 3 * 3 * d3_data_p1.modulus == 54

    def test_system_shape_and_normalized_rows(self):
        layout = PairingLayout(flat_cyclic(3), range(3), range(3))
        A, b = pairing_system(layout)
        # 8 associativity + 8 module + 8 equivariance + 4 commutativity rows
        assert A.shape == (28, 8)
        assert not b.any()  # trivial cocycle: homogeneous system

    def test_sigma_shifts_lie_in_the_solution_kernel(self):
        for data, H, N in (
            (flat_cyclic(3), range(3), range(3)),
            (dihedral_data(1, 3), ROT3, ROT3),
            (dihedral_data(1, 2), [0, 3], [0, 3]),
        ):
            sols, layout = solve_pairings(data, H, N)
            assert not sols.is_empty
            S = sigma_shift_matrix(layout)
            for j in range(S.shape[1]):
                assert sols.kernel_coordinates(S[:, j]) is not None


class TestCountingOracles:
    # n -> (layout modulus, n_vars, |S|, brute sigma-kernel count)
    FLAT = {2: (4, 2, 4, 2), 3: (9, 8, 81, 3), 4: (16, 18, 4096, 4)}

    @pytest.mark.parametrize("n", sorted(FLAT))
    def test_flat_cyclic_counts_match_the_brute_image(self, n):
        data = flat_cyclic(n)
        cls = classify_pair(data, range(n), range(n))
        M, n_vars, card, kernel = self.FLAT[n]
        layout = cls.layout
        assert (layout.modulus, layout.n_vars) == (M, n_vars)
        assert cls.solutions.cardinality() == card
        k, total = brute_sigma_kernel(layout)
        assert k == kernel
        image = total // kernel
        assert card % image == 0
        assert cls.class_count == card // image == n
        assert cls.class_factors == [n]

    def test_flat_z5_counts_match_the_brute_image(self):
        # 25^4 sigma vectors: enumerate in chunks, count the vanishing shifts
        data = flat_cyclic(5)
        cls = classify_pair(data, range(5), range(5))
        layout = cls.layout
        assert (layout.modulus, layout.n_vars) == (25, 32)
        card = cls.solutions.cardinality()
        assert card == 390625
        S = sigma_shift_matrix(layout)
        grid = np.array(list(itertools.product(range(25), repeat=4)), dtype=np.int64)
        kernel = 0
        for chunk in np.array_split(grid, 25):
            kernel += int((((chunk @ S.T) % 25) == 0).all(axis=1).sum())
        assert kernel == 5
        image = 25**4 // kernel
        assert cls.class_count == card // image == 5
        assert cls.class_factors == [5]

    def test_flat_z2_solutions_are_exactly_the_battery_valid_vectors(self):
        # all 16 candidate (kappa, eps) vectors, each through the full battery
        data = flat_cyclic(2)
        sols, layout = solve_pairings(data, range(2), range(2))
        valid = set()
        for vec in itertools.product(range(4), repeat=2):
            A = algebra_from_vector(data, layout, np.array(vec, dtype=np.int64))
            if all(v == "ok" for v in verify_algebra(A).values()):
                valid.add(vec)
        assert valid == {tuple(int(x) for x in s) for s in sols}
        assert len(valid) == 4


class TestGaugeQuotient:
    def test_flat_z3_representatives_inequivalent_under_every_sigma(self):
        cls = classify_pair(flat_cyclic(3), range(3), range(3))
        layout, reps = cls.layout, cls.representatives
        assert len(reps) == 3 and not cls.truncated
        S = sigma_shift_matrix(layout)
        sigmas = np.array(list(itertools.product(range(9), repeat=2)), dtype=np.int64)
        shifts = (sigmas @ S.T) % 9  # all 81 possible shifts
        for i in range(3):
            for j in range(i + 1, 3):
                diff = (reps[j] - reps[i]) % 9
                assert not (shifts == diff[None, :]).all(axis=1).any()
                assert not gauge_equivalent(layout, reps[i], reps[j])
        moved = (reps[0] + shifts[17]) % 9
        assert gauge_equivalent(layout, reps[0], moved)

    def test_dihedral_representatives_solve_and_separate(self):
        data = dihedral_data(1, 3)
        cls = classify_pair(data, ROT3, ROT3)
        assert cls.class_count == 3
        for r in cls.representatives:
            assert cls.solutions.contains(r)
        for i in range(3):
            for j in range(i + 1, 3):
                assert not gauge_equivalent(
                    cls.layout, cls.representatives[i], cls.representatives[j]
                )
        rng = np.random.default_rng(5)
        sigma = rng.integers(0, 54, size=2)
        shifted = (
            cls.representatives[1] + sigma_shift_matrix(cls.layout) @ sigma
        ) % 54
        assert cls.solutions.contains(shifted)
        assert gauge_equivalent(cls.layout, cls.representatives[1], shifted)

    @pytest.mark.parametrize(
        "maker, H, M, classes, cardinality",
        [
            (lambda: flat_cyclic(3), range(3), 9, 3, 81),
            (lambda: flat_cyclic(3), range(3), 27, 3, 729),
            (lambda: dihedral_data(1, 3), ROT3, 54, 3, 2916),
            (lambda: dihedral_data(1, 3), ROT3, 162, 3, 26244),
        ],
    )
    def test_class_count_is_stable_under_modulus_escalation(
        self, maker, H, M, classes, cardinality
    ):
        # the solution set grows with the modulus, the quotient does not
        cls = classify_pair(maker(), H, H, modulus=M)
        assert cls.solutions.cardinality() == cardinality
        assert cls.class_count == classes

    def test_truncation_caps_representatives_not_the_count(self):
        cls = classify_pair(flat_cyclic(3), range(3), range(3), max_representatives=1)
        assert cls.truncated and len(cls.representatives) == 1
        assert cls.class_count == 3

    @pytest.mark.parametrize(
        "p, H", [(0, (0, 3)), (2, (0, 3)), (0, tuple(range(6)))]
    )
    def test_reflection_zone_representatives_pass_the_battery(self, p, H):
        data = dihedral_data(1, p)
        cls = classify_pair(data, H, H)
        assert cls.class_count == 2
        for r in cls.representatives:
            A = algebra_from_vector(data, cls.layout, r)
            assert all(v == "ok" for v in verify_algebra(A).values())


class TestObstruction:
    @pytest.mark.parametrize("p, classes", [(0, 3), (1, 0), (2, 0), (3, 3)])
    def test_rotation_pairs_need_p_divisible_by_the_order(self, p, classes):
        cls = classify_pair(dihedral_data(1, p), ROT3, ROT3)
        assert cls.class_count == classes
        assert cls.solutions.is_empty == (classes == 0)
        if classes == 0:
            assert cls.representatives == [] and cls.class_factors == []


class TestDihedralSweep:
    def test_sweep_covers_every_pair_in_order(self, d3):
        results = classify_group(dihedral_data(1, 0))
        keys = [(c.layout.H, c.layout.N) for c in results]
        expected = sorted(
            (tuple(sorted(H)), tuple(sorted(N)))
            for H in d3.subgroups()
            for N in d3.normal_subgroups_of(H)
        )
        assert keys == expected
        assert len(keys) == 12

    def test_expected_table_states_the_rules(self, d3):
        rows = {(e.H, e.N): e for e in dihedral_expected(d3, 1)}
        assert len(rows) == 12
        rot = tuple(ROT3)
        e = rows[(rot, rot)]
        assert (e.expected, e.flagged) == (0, False) and "mod 3" in e.reason
        e = rows[((0, 3), (0, 3))]
        assert (e.expected, e.flagged) == (1, True) and "reflection" in e.reason
        rows3 = {(e.H, e.N): e for e in dihedral_expected(d3, 3)}
        assert rows3[(rot, rot)].expected == 3
        assert "cyclic" in rows3[(rot, rot)].reason
        assert rows3[(tuple(range(6)), rot)].expected == 1
        assert "dihedral" in rows3[(tuple(range(6)), rot)].reason
        assert rows3[(tuple(range(6)), tuple(range(6)))].expected == 1
        assert rows[(tuple(range(6)), tuple(range(6)))].expected == 0

    @pytest.mark.parametrize("p", range(6))
    def test_dihedral_three_matches_expected_for_every_class(self, p):
        data = dihedral_data(1, p)
        results = classify_group(data)
        comp = compare_with_expected(results, dihedral_expected(data.group, p))
        assert comp.ok
        assert len(comp.matches) == 8 and len(comp.flagged_notes) == 4
        counts = {(c.layout.H, c.layout.N): c.class_count for c in results}
        rot = tuple(ROT3)
        whole = tuple(range(6))
        assert counts[(rot, rot)] == (3 if p % 3 == 0 else 0)
        assert counts[(whole, rot)] == (1 if p % 3 == 0 else 0)
        # mu_M zone: doubled when solvable, solvable iff the exponent is even
        for s in (3, 4, 5):
            assert counts[((0, s), (0, s))] == (2 if p % 2 == 0 else 0)
        assert counts[(whole, whole)] == (2 if p == 0 else 0)

    @pytest.mark.parametrize("p", [0, 1, 2, 5])
    def test_dihedral_five_matches_expected(self, p):
        data = dihedral_data(2, p)
        results = classify_group(data)
        assert len(results) == 16
        comp = compare_with_expected(results, dihedral_expected(data.group, p))
        assert comp.ok
        assert len(comp.matches) == 10 and len(comp.flagged_notes) == 6
        counts = {(c.layout.H, c.layout.N): c.class_count for c in results}
        rot = tuple(range(5))
        whole = tuple(range(10))
        assert counts[(rot, rot)] == (5 if p % 5 == 0 else 0)
        assert counts[(whole, rot)] == (1 if p % 5 == 0 else 0)
        for s in range(5, 10):
            assert counts[((0, s), (0, s))] == (2 if p % 2 == 0 else 0)
        assert counts[(whole, whole)] == (2 if p == 0 else 0)

    def test_rotation_subgroup_indexing(self):
        assert rotation_subgroup(dihedral_group(1)) == {0, 1, 2}
        assert rotation_subgroup(dihedral_group(2)) == {0, 1, 2, 3, 4}

    def test_comparison_separates_mismatches_from_notes(self):
        data = dihedral_data(1, 0)
        results = classify_group(data)
        expected = dihedral_expected(data.group, 0)

        doctored = [
            ExpectedEntry(e.H, e.N, e.expected, e.flagged, e.reason) for e in expected
        ]
        rot = tuple(ROT3)
        for e in doctored:
            if (e.H, e.N) == (rot, rot):
                e.expected += 1  # unflagged row: must become a hard mismatch
            if e.flagged:
                e.expected = 99  # flagged rows only ever produce notes
        comp = compare_with_expected(results, doctored)
        assert not comp.ok
        assert comp.mismatches == [(rot, rot, 3, 4)]
        assert all(note[3] == 99 for note in comp.flagged_notes)

        # a computed row with no expected entry at all is reported with -1
        short = [e for e in expected if (e.H, e.N) != (rot, rot)]
        comp2 = compare_with_expected(results, short)
        assert (rot, rot, 3, -1) in comp2.mismatches
        assert isinstance(comp2, ComparisonResult) and not comp2.ok
