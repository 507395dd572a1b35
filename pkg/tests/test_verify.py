"""Moment computation, comparison, and random instance generation."""

from fractions import Fraction as F

import pytest

from quadra import INFINITY, Measure, MomentSequence
from quadra.errors import InfeasibleSpecError, LengthMismatchError
from quadra.moments import moment_matrix
from quadra.numerics import is_positive_definite
from quadra.verify import (
    InstanceSpec,
    compare,
    moments_of,
    random_instance,
    reproduction_ok,
)


class TestMomentsOf:
    def test_two_point_measure(self):
        measure = Measure(((F(1), F(2)), (F(2), F(3))))
        assert moments_of(measure, 4).gamma == (5, 8, 14, 26, 50)

    def test_infinity_contributes_to_top_degree_only(self):
        measure = Measure(((F(0), F(1)), (F(1), F(1)), (INFINITY, F(1))))
        assert moments_of(measure, 4).gamma == (2, 1, 1, 1, 2)

    def test_infinity_only_affects_requested_degree(self):
        measure = Measure(((F(3), F(2)), (INFINITY, F(5))))
        g3 = moments_of(measure, 3)
        g5 = moments_of(measure, 5)
        # the first four entries of g5 are the infinity-free values
        assert g5.gamma[:3] == g3.gamma[:3]
        assert g3[3] == 2 * 27 + 5
        assert g5[3] == 2 * 27

    def test_linearity(self):
        a = Measure(((F(1), F(2)),))
        b = Measure(((F(-1), F(3)),))
        both = Measure(((F(-1), F(3)), (F(1), F(2))))
        ga, gb, gab = (moments_of(m, 6) for m in (a, b, both))
        assert gab.gamma == tuple(x + y for x, y in zip(ga.gamma, gb.gamma))

    def test_exactness_preserved(self):
        measure = Measure(((F(1, 3), F(1, 7)),))
        assert all(isinstance(x, F) for x in moments_of(measure, 3).gamma)

    def test_float_atom_gives_float_moments(self):
        measure = Measure(((0.5, 1.0),))
        assert all(isinstance(x, float) for x in moments_of(measure, 2).gamma)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            moments_of(Measure(((F(0), F(1)),)), -1)


class TestCompare:
    def test_exact_match(self):
        a = MomentSequence((F(1), F(2), F(3)))
        assert compare(a, a).match

    def test_exact_mismatch_reports_first_index(self):
        a = MomentSequence((F(1), F(2), F(3)))
        b = MomentSequence((F(1), F(2), F(4)))
        result = compare(a, b)
        assert not result.match
        assert result.index == 2
        assert result.delta == 1

    def test_factorial_vs_extended_tail(self):
        # the degree-8 entry of the recursively extended truncation in the
        # generalized worked instance differs from 8!
        expected = MomentSequence((F(40320),))
        actual = MomentSequence((F(73385484, 1861),))
        result = compare(expected, actual)
        assert not result.match
        assert result.index == 0

    def test_float_within_tolerance(self):
        a = MomentSequence((1.0, 2.0))
        b = MomentSequence((1.0 + 1e-9, 2.0 - 1e-9))
        assert compare(a, b).match

    def test_float_outside_tolerance(self):
        a = MomentSequence((1.0, 2.0))
        b = MomentSequence((1.0, 2.1))
        result = compare(a, b)
        assert not result.match and result.index == 1

    def test_relative_scaling(self):
        a = MomentSequence((F(10) ** 12,))
        b = MomentSequence((float(10 ** 12) * (1 + 1e-8),))
        assert compare(a, b).match

    def test_length_mismatch_raises(self):
        with pytest.raises(LengthMismatchError):
            compare(MomentSequence((F(1),)), MomentSequence((F(1), F(2))))


class TestReproductionOk:
    def test_exact_roundtrip(self):
        measure = Measure(((F(1), F(2)), (F(2), F(3))))
        assert reproduction_ok(moments_of(measure, 4), measure)

    def test_exact_failure(self):
        measure = Measure(((F(1), F(2)), (F(2), F(3))))
        gamma = MomentSequence((F(5), F(8), F(14), F(26), F(51)))
        assert not reproduction_ok(gamma, measure)

    def test_cancellation_scale(self):
        # gamma_1 is tiny relative to the individual terms rho * y; the
        # tolerance must scale with the term magnitudes, not the result
        measure = Measure(((-1e6, 1.0), (1e6, 1.0 + 1e-12)))
        gamma = moments_of(measure, 2)
        wiggled = MomentSequence((gamma[0], gamma[1] + 1e-4, gamma[2]))
        assert reproduction_ok(wiggled, measure)


class TestRandomInstance:
    def test_deterministic_under_seed(self):
        spec = InstanceSpec(atom_count=3, prescribe=1, seed=42)
        first = random_instance(spec)
        second = random_instance(spec)
        assert first[0].atoms == second[0].atoms
        assert first[1].gamma == second[1].gamma

    def test_moments_are_exact(self):
        _, gamma, _ = random_instance(InstanceSpec(atom_count=3, prescribe=1, seed=7))
        assert all(isinstance(x, F) for x in gamma.gamma)

    def test_degree_bookkeeping(self):
        for seed in range(10):
            spec = InstanceSpec(atom_count=4, prescribe=2, seed=seed)
            measure, gamma, problem = random_instance(spec)
            assert problem.d1 == 2
            assert problem.d2 == 2
            assert gamma.degree == problem.degree == 2 + 2 * 2 - 1

    def test_base_moment_matrix_positive_definite(self):
        for seed in range(25):
            spec = InstanceSpec(atom_count=3, prescribe=1, seed=3000 + seed)
            _, gamma, problem = random_instance(spec)
            order = problem.degree // 2
            assert is_positive_definite(moment_matrix(gamma, order))

    def test_infinity_instance_sizing(self):
        spec = InstanceSpec(atom_count=2, prescribe=1, include_infinity=True,
                            seed=11)
        measure, gamma, problem = random_instance(spec)
        assert measure.infinity_density is not None
        assert problem.d2 == 2  # one free real atom plus the infinity atom
        assert problem.allow_infinity

    def test_prescribing_all_atoms_without_infinity_rejected(self):
        with pytest.raises(InfeasibleSpecError):
            random_instance(InstanceSpec(atom_count=2, prescribe=2, seed=0))

    def test_prescribe_bounds_validated(self):
        with pytest.raises(InfeasibleSpecError):
            InstanceSpec(atom_count=2, prescribe=3)

    def test_atoms_within_range_and_separated(self):
        spec = InstanceSpec(atom_count=5, atom_range=(-2, 2), prescribe=1, seed=9)
        measure, _, _ = random_instance(spec)
        atoms = [a for a, _ in measure.real_atoms]
        assert all(-2 <= a <= 2 for a in atoms)
        gaps = [b - a for a, b in zip(atoms, atoms[1:])]
        assert all(g >= F(4, 1000) for g in gaps)
