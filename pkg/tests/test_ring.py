"""Fusion-ring core: axioms, dimensions, gradings, hom spaces."""

import numpy as np
import pytest

from modcat import (
    AlgebraicReal,
    DegenerateInputError,
    FusionRing,
    InternalConsistencyError,
    MalformedInputError,
    UnsupportedInputError,
    adjoint_subring,
    asymptotic_dim_ratio,
    fp_dimensions,
    global_fp_dim,
    gn_grading,
    hom_space_dim,
    invertibles,
    subring_generated,
    universal_grading,
    verify_axioms,
)
from modcat.ring import FP_TOL, is_commutative

import oracles


def pointed_z(n):
    fusion = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            fusion[i, j, (i + j) % n] = 1
    labels = tuple(f"g{i}" for i in range(n))
    dual = tuple((-i) % n for i in range(n))
    return FusionRing(labels, dual, fusion)


# ---------------------------------------------------------------------------
# AlgebraicReal


class TestAlgebraicReal:
    def test_sqrt_canonicalizes_square_factors(self):
        assert AlgebraicReal.sqrt(8) == AlgebraicReal.of(2) * AlgebraicReal.sqrt(2)
        assert AlgebraicReal.sqrt(9) == AlgebraicReal.of(3)
        assert AlgebraicReal.sqrt(1) == AlgebraicReal.of(1)

    def test_arithmetic_and_float(self):
        phi = (AlgebraicReal.of(1) + AlgebraicReal.sqrt(5)) * AlgebraicReal.of(
            1
        ) * AlgebraicReal.from_json([1, 2, 1, 2, 5])
        # (1 + sqrt 5) * (1 + sqrt 5)/2 = 3 + sqrt 5... check numerically
        assert abs(float(phi) - (1 + 5**0.5) * (1 + 5**0.5) / 2) < 1e-12

    def test_squared_golden_ratio(self):
        phi = AlgebraicReal.from_json([1, 2, 1, 2, 5])
        assert float(phi.squared()) == pytest.approx(float(phi) + 1, abs=1e-12)

    def test_json_round_trip(self):
        x = AlgebraicReal.from_json([1, 3, -2, 7, 6])
        assert AlgebraicReal.from_json(x.to_json()) == x

    def test_mixed_radicands_rejected(self):
        with pytest.raises(UnsupportedInputError):
            AlgebraicReal.sqrt(2) + AlgebraicReal.sqrt(3)


# ---------------------------------------------------------------------------
# construction and validation


class TestConstruction:
    def test_rejects_bad_shape(self):
        with pytest.raises(MalformedInputError):
            FusionRing(("1", "x"), (0, 1), np.zeros((2, 2, 3), dtype=np.int64))

    def test_rejects_negative_multiplicity(self):
        fusion = pointed_z(2).fusion.copy()
        fusion[1, 1, 0] = -1
        with pytest.raises(MalformedInputError):
            FusionRing(("1", "x"), (0, 1), fusion)

    def test_rejects_non_involutive_dual(self):
        r = pointed_z(3)
        with pytest.raises(MalformedInputError):
            FusionRing(r.labels, (1, 2, 0), r.fusion)

    def test_wrong_dual_pairing_is_an_axiom_violation(self):
        r = pointed_z(3)
        bad = FusionRing(r.labels, (0, 1, 2), r.fusion)
        assert not verify_axioms(bad).ok

    def test_rejects_duplicate_labels(self):
        r = pointed_z(2)
        with pytest.raises(MalformedInputError):
            FusionRing(("x", "x"), r.dual, r.fusion)

    def test_json_round_trip(self, ising):
        again = FusionRing.loads(ising.dumps())
        assert again.labels == ising.labels
        assert again.dual == ising.dual
        assert np.array_equal(again.fusion, ising.fusion)
        assert again.dumps() == ising.dumps()


class TestAxioms:
    def test_pointed_and_examples_pass(self, fibonacci, ising):
        for r in (pointed_z(1), pointed_z(6), fibonacci, ising):
            assert verify_axioms(r).ok

    def test_broken_associativity_reported(self, ising):
        fusion = ising.fusion.copy()
        fusion[2, 2, 1] = 2  # sig (x) sig gains an extra psi
        bad = FusionRing(ising.labels, ising.dual, fusion)
        report = verify_axioms(bad)
        assert not report.ok
        assert any("assoc" in name for name, _ in report.violations)

    def test_broken_unit_reported(self):
        fusion = np.zeros((2, 2, 2), dtype=np.int64)
        fusion[0, 0, 0] = 1
        fusion[1, 1, 0] = 1
        bad = FusionRing(("1", "x"), (0, 1), fusion)
        assert any("unit" in n for n, _ in verify_axioms(bad).violations)


# ---------------------------------------------------------------------------
# dimensions


class TestDimensions:
    def test_fibonacci_dim(self, fibonacci):
        d = fp_dimensions(fibonacci)
        assert abs(d[1] - (1 + 5**0.5) / 2) < 1e-9

    def test_ising_dim(self, ising):
        d = fp_dimensions(ising)
        assert abs(d[ising.index("sig")] - 2**0.5) < 1e-9

    def test_dims_satisfy_fusion_homomorphism(self, fibonacci, ising, so_rings):
        for r in (fibonacci, ising, so_rings(7), so_rings(12)):
            d = fp_dimensions(r)
            lhs = np.outer(d, d)
            rhs = np.einsum("ijk,k->ij", r.fusion.astype(float), d)
            assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_dims_at_least_one_and_dual_invariant(self, fibonacci, ising, so_rings):
        for r in (fibonacci, ising, so_rings(9), so_rings(10), so_rings(16)):
            d = fp_dimensions(r)
            assert np.all(d >= 1 - FP_TOL)
            assert np.max(np.abs(d[list(r.dual)] - d)) < 1e-9

    def test_global_dim(self, ising):
        assert global_fp_dim(ising) == pytest.approx(4.0, abs=1e-9)

    def test_exact_dim_mismatch_raises(self, ising):
        wrong = (AlgebraicReal.of(1), AlgebraicReal.of(1), AlgebraicReal.of(2))
        bad = FusionRing(ising.labels, ising.dual, ising.fusion, exact_dims=wrong)
        with pytest.raises(InternalConsistencyError):
            fp_dimensions(bad)

    def test_noncommutative_rejected(self):
        # left-regular representation of S3 is not a valid commutative input;
        # fake a minimal non-commutative tensor that still passes construction
        fusion = np.zeros((3, 3, 3), dtype=np.int64)
        for i in range(3):
            fusion[0, i, i] = fusion[i, 0, i] = 1
        fusion[1, 1, 0] = fusion[2, 2, 0] = 1
        fusion[1, 2, 1] = 1
        fusion[2, 1, 2] = 1
        r = FusionRing(("1", "a", "b"), (0, 1, 2), fusion)
        assert not is_commutative(r)
        with pytest.raises(UnsupportedInputError):
            fp_dimensions(r)


# ---------------------------------------------------------------------------
# hom spaces and asymptotics


class TestHom:
    def test_matches_bruteforce_oracle(self, fibonacci, ising, so_rings):
        rings = [fibonacci, ising, pointed_z(5), so_rings(5), so_rings(8)]
        for r in rings:
            if r.rank > 8:
                continue
            for word_len in range(1, 7):
                word = [(3 * i + 1) % r.rank for i in range(word_len)]
                for target in range(r.rank):
                    assert hom_space_dim(r, word, target) == oracles.hom_dim_bruteforce(
                        r, word, target
                    )

    def test_ising_sigma_powers(self, ising):
        sig = ising.index("sig")
        for n in range(1, 11):
            assert hom_space_dim(ising, [sig] * (2 * n), 0) == 2 ** (n - 1)

    def test_fibonacci_ratio_squares(self, fibonacci):
        phi = (1 + 5**0.5) / 2
        assert asymptotic_dim_ratio(fibonacci, 1, 30) == pytest.approx(
            phi * phi, abs=1e-6
        )

    def test_ising_ratio_exact(self, ising):
        assert asymptotic_dim_ratio(ising, ising.index("sig"), 20) == 2.0

    def test_too_small_power_rejected(self, ising):
        with pytest.raises(MalformedInputError):
            asymptotic_dim_ratio(ising, ising.index("sig"), 0)


# ---------------------------------------------------------------------------
# invertibles, subrings, gradings


class TestStructure:
    def test_invertibles_are_the_dim_one_objects(self, so_rings):
        for n in (6, 8, 9):
            r = so_rings(n)
            d = fp_dimensions(r)
            grp = invertibles(r)
            assert set(grp.elements) == {
                i for i in range(r.rank) if d[i] <= 1 + FP_TOL
            }
            # closure under fusion
            for a in grp.elements:
                for b in grp.elements:
                    k = int(np.nonzero(r.fusion[a, b])[0][0])
                    assert k in grp.elements

    def test_invertible_group_structure(self, so_rings):
        assert invertibles(so_rings(7)).invariant_factors() == [2]
        assert invertibles(so_rings(12)).invariant_factors() == [2, 2]
        assert invertibles(so_rings(10)).invariant_factors() == [4]

    def test_subring_generated_contains_seeds_and_closes(self, so_rings):
        r = so_rings(12)
        seed = next(i for i, lab in enumerate(r.labels) if lab.startswith("X"))
        sub = subring_generated(r, [seed])
        for i in sub:
            for j in sub:
                for k in np.nonzero(r.fusion[i, j])[0]:
                    assert int(k) in sub

    def test_adjoint_equals_trivial_component(self, fibonacci, so_rings):
        for r in (fibonacci, so_rings(5), so_rings(6), so_rings(8), so_rings(12)):
            g = universal_grading(r)
            zero = tuple(0 for _ in g.group)
            comps = g.components()
            trivial = comps.get(zero, tuple(range(r.rank)))
            assert tuple(sorted(adjoint_subring(r))) == tuple(sorted(trivial))

    def test_grading_faithful_and_equidimensional(self, so_rings):
        for n in (5, 6, 8, 9, 12, 14):
            r = so_rings(n)
            g = universal_grading(r)
            assert g.is_faithful
            assert g.check_tensor_compatible(r)
            d = fp_dimensions(r)
            comps = g.components()
            sizes = [sum(d[i] ** 2 for i in comp) for comp in comps.values()]
            assert max(sizes) - min(sizes) < 1e-6

    def test_gn_grading_trivial_for_integral_spinors(self, so_rings):
        assert gn_grading(so_rings(8)).group == ()
        assert gn_grading(so_rings(18)).group == ()

    def test_gn_grading_z2_for_irrational_spinors(self, so_rings):
        for n in (5, 6, 12):
            assert gn_grading(so_rings(n)).group == (2,)

    def test_gn_grading_rejects_non_weakly_integral(self, fibonacci):
        with pytest.raises(UnsupportedInputError):
            gn_grading(fibonacci)
