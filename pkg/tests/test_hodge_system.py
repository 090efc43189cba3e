from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hodgeslope.hodge_system import (
    Answer,
    Declared,
    HodgeSystem,
    ISOMORPHISMS,
    Verdict,
    criterion_semistable,
    criterion_stable,
    derive_components,
    partial_slope,
    system_from_json,
    system_to_json,
    total_slope,
    transport_subsystem,
)
from hodgeslope.profiles import SubsystemProfile
from hodgeslope.slope_core import BundleData, GeometricContext, slope


def curve(w: int, char: int = 0) -> GeometricContext:
    return GeometricContext(char, 1, w, omega_semistable=True, omega_stable=True)


def example_tower(g: int = 2) -> HodgeSystem:
    e0 = BundleData(2, -(2 * g - 2), semistable=True, stable=False)
    e1 = BundleData(2, 2 * g - 2, semistable=True, stable=False)
    return HodgeSystem(curve(2 * g - 2), (e0, e1), ISOMORPHISMS)


class TestConstruction:
    def test_isomorphism_tower_validated(self):
        ctx = curve(2)
        with pytest.raises(ValueError, match="incompatible with the isomorphism tower"):
            HodgeSystem(ctx, (BundleData(2, -2), BundleData(2, 1)), ISOMORPHISMS)

    def test_declared_mode_accepts_any_components(self):
        ctx = curve(2)
        sys = HodgeSystem(ctx, (BundleData(1, 3), BundleData(2, 1)), Declared())
        assert sys.n == 1

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            HodgeSystem(curve(2), (), ISOMORPHISMS)


class TestDeriveComponents:
    def test_rank_one_tower(self):
        sys = derive_components(BundleData(1, 0), curve(2), 3)
        assert [(c.rank, c.degree) for c in sys.components] == [
            (1, 0),
            (1, 2),
            (1, 4),
            (1, 6),
        ]

    def test_height_zero_is_identity(self):
        base = BundleData(3, 7, semistable=True)
        sys = derive_components(base, curve(2), 0)
        assert sys.components == (base,)

    def test_example_tower_data(self):
        sys = derive_components(BundleData(2, -2), curve(2), 1)
        assert [(c.rank, c.degree) for c in sys.components] == [(2, -2), (2, 2)]

    def test_higher_dimension_formulas(self):
        ctx = GeometricContext(0, 2, 3, omega_semistable=True)
        sys = derive_components(BundleData(2, 1, semistable=True), ctx, 2)
        # rank d^i * r0; degree i d^(i-1) w r0 + d^i e0
        assert [(c.rank, c.degree) for c in sys.components] == [
            (2, 1),
            (4, 1 * 1 * 3 * 2 + 2 * 1),
            (8, 2 * 2 * 3 * 2 + 4 * 1),
        ]

    def test_flag_inheritance_needs_semistable_omega(self):
        base = BundleData(2, -2, semistable=True)
        inherited = derive_components(base, curve(2), 1)
        assert all(c.semistable is True for c in inherited.components)
        bare_ctx = GeometricContext(0, 1, 2, omega_semistable=False)
        dropped = derive_components(base, bare_ctx, 1)
        assert dropped.components[0].semistable is True
        assert dropped.components[1].semistable is None

    def test_stable_flag_never_inherited(self):
        base = BundleData(2, -2, semistable=True, stable=True)
        sys = derive_components(base, curve(2), 1)
        assert sys.components[1].stable is None

    def test_negative_height_rejected(self):
        with pytest.raises(ValueError):
            derive_components(BundleData(1, 0), curve(2), -1)


class TestSlopes:
    def test_partial_slope_examples(self):
        sys = derive_components(BundleData(1, 0), curve(2), 3)
        assert partial_slope(sys, 1) == 1
        assert partial_slope(sys, 0) == slope(sys.components[0])
        assert partial_slope(example_tower(), 1) == 0

    def test_partial_slope_range_checked(self):
        sys = derive_components(BundleData(1, 0), curve(2), 2)
        for k in (-1, 3):
            with pytest.raises(ValueError, match="out of range"):
                partial_slope(sys, k)

    def test_partial_slope_requires_isomorphisms(self):
        declared = HodgeSystem(curve(2), (BundleData(1, 3), BundleData(2, 1)), Declared())
        with pytest.raises(ValueError, match="isomorphism structure"):
            partial_slope(declared, 0)

    def test_total_slope(self):
        assert total_slope(example_tower()) == 0
        single = derive_components(BundleData(3, 7), curve(2), 0)
        assert total_slope(single) == Fraction(7, 3)
        declared = HodgeSystem(curve(2), (BundleData(1, 3), BundleData(2, 1)), Declared())
        assert total_slope(declared) == Fraction(4, 3)

    def test_partial_slope_monotone_and_capped(self):
        rng = random.Random(23)
        for _ in range(100):
            d = rng.randint(1, 2)
            w = rng.randint(0, 4)
            ctx = GeometricContext(0, d, w, omega_semistable=True)
            sys = derive_components(BundleData(rng.randint(1, 3), rng.randint(-5, 5)), ctx, 3)
            values = [partial_slope(sys, k) for k in range(4)]
            assert values[-1] == total_slope(sys)
            for a, b in zip(values, values[1:]):
                assert a <= b
                if w > 0:
                    assert a < b


class TestTransport:
    def test_identity_transport(self):
        sys = example_tower()
        profile = transport_subsystem(sys, sys.components[0])
        assert profile.entries == tuple((c.rank, c.degree) for c in sys.components)
        assert profile.slope == total_slope(sys)

    def test_destabilizer_pattern(self):
        sys = derive_components(BundleData(2, -2), curve(2), 1)
        profile = transport_subsystem(sys, BundleData(1, 0))
        assert profile.entries == ((1, 0), (1, 2))
        assert profile.slope == 1 > total_slope(sys)

    def test_degree_zero_cotangent(self):
        sys = derive_components(BundleData(2, 0), curve(0), 1)
        profile = transport_subsystem(sys, BundleData(1, 1))
        assert profile.entries == ((1, 1), (1, 1))
        assert profile.slope == 1 > total_slope(sys)

    def test_rank_overflow_rejected(self):
        sys = example_tower()
        with pytest.raises(ValueError, match="exceeds base rank"):
            transport_subsystem(sys, BundleData(3, 0))

    def test_slope_difference_identity(self):
        rng = random.Random(29)
        for _ in range(300):
            d = rng.randint(1, 3)
            ctx = GeometricContext(0, d, rng.randint(0, 5), omega_semistable=True)
            base = BundleData(rng.randint(1, 4), rng.randint(-9, 9))
            sys = derive_components(base, ctx, rng.randint(0, 3))
            f0 = BundleData(rng.randint(1, base.rank), rng.randint(-9, 9))
            profile = transport_subsystem(sys, f0)
            assert profile.slope - total_slope(sys) == slope(f0) - slope(base)


class TestCriterionSemistable:
    def test_all_components_semistable(self):
        verdict = criterion_semistable(example_tower())
        assert verdict.semistable is Answer.YES
        assert verdict.stable is Answer.UNKNOWN

    def test_single_component(self):
        sys = derive_components(BundleData(2, 5, semistable=True), curve(2), 0)
        assert criterion_semistable(sys).semistable is Answer.YES

    def test_converse_with_destabilizer_datum(self):
        base = BundleData(2, 1, semistable=False)
        sys = derive_components(base, curve(2), 1)
        verdict = criterion_semistable(sys, base_destabilizer=BundleData(1, 1))
        assert verdict.semistable is Answer.NO
        assert verdict.stable is Answer.NO
        assert verdict.certificate is not None
        assert verdict.certificate.slope == 2 > total_slope(sys)

    def test_converse_needs_characteristic_zero(self):
        base = BundleData(2, 1, semistable=False)
        sys = derive_components(base, curve(2, char=5), 1)
        verdict = criterion_semistable(sys, base_destabilizer=BundleData(1, 1))
        assert verdict.semistable is Answer.UNKNOWN

    def test_unknown_without_datum(self):
        sys = derive_components(BundleData(2, 1, semistable=False), curve(2), 1)
        assert criterion_semistable(sys).semistable is Answer.UNKNOWN

    def test_invalid_datum_rejected(self):
        sys = derive_components(BundleData(2, 1, semistable=False), curve(2), 1)
        with pytest.raises(ValueError, match="proper subsheaf"):
            criterion_semistable(sys, base_destabilizer=BundleData(2, 3))
        with pytest.raises(ValueError, match="does not exceed"):
            criterion_semistable(sys, base_destabilizer=BundleData(1, 0))

    def test_negative_cotangent_degree_rejected(self):
        sys = derive_components(BundleData(1, 0, semistable=True), curve(-2), 1)
        with pytest.raises(ValueError, match="hypothesis violated"):
            criterion_semistable(sys)

    def test_declared_mode_rejected(self):
        declared = HodgeSystem(curve(2), (BundleData(1, 3),), Declared())
        with pytest.raises(ValueError, match="isomorphism structure"):
            criterion_semistable(declared)

    def test_no_verdict_certificate_beats_total_slope(self):
        rng = random.Random(31)
        for _ in range(100):
            rank = rng.randint(2, 4)
            degree = rng.randint(-5, 5)
            base = BundleData(rank, degree, semistable=False)
            ctx = GeometricContext(0, rng.randint(1, 2), rng.randint(0, 4), omega_semistable=True)
            sys = derive_components(base, ctx, rng.randint(0, 3))
            sub_rank = rng.randint(1, rank - 1)
            # force a strictly larger slope
            sub_degree = (sub_rank * degree) // rank + 1
            verdict = criterion_semistable(sys, base_destabilizer=BundleData(sub_rank, sub_degree))
            assert verdict.semistable is Answer.NO
            assert verdict.certificate.slope > total_slope(sys)


class TestCriterionStable:
    def test_all_components_stable(self):
        e0 = BundleData(2, -2, semistable=True, stable=True)
        e1 = BundleData(2, 2, semistable=True, stable=True)
        sys = HodgeSystem(curve(2), (e0, e1), ISOMORPHISMS)
        verdict = criterion_stable(sys)
        assert verdict.stable is Answer.YES
        assert verdict.semistable is Answer.YES

    def test_strictly_semistable_tower_not_stable(self):
        verdict = criterion_stable(example_tower())
        assert verdict.stable is Answer.NO
        assert verdict.semistable is Answer.YES
        assert verdict.certificate is None

    def test_equal_slope_datum_builds_certificate(self):
        sys = example_tower()
        verdict = criterion_stable(sys, equal_slope_sub=BundleData(1, -1))
        assert verdict.stable is Answer.NO
        assert verdict.certificate.entries == ((1, -1), (1, 1))
        assert verdict.certificate.slope == total_slope(sys)

    def test_equal_slope_datum_validated(self):
        sys = example_tower()
        with pytest.raises(ValueError, match="match the base slope"):
            criterion_stable(sys, equal_slope_sub=BundleData(1, 0))

    def test_single_stable_component(self):
        sys = derive_components(BundleData(2, 1, semistable=True, stable=True), curve(2), 0)
        assert criterion_stable(sys).stable is Answer.YES

    def test_unknown_off_curves(self):
        ctx = GeometricContext(0, 2, 3, omega_semistable=True)
        base = BundleData(2, 1, semistable=True, stable=False)
        e1 = BundleData(
            4, 1 * 1 * 3 * 2 + 2 * 1, semistable=True, stable=False
        )
        sys = HodgeSystem(ctx, (base, e1), ISOMORPHISMS)
        assert criterion_stable(sys).stable is Answer.UNKNOWN

    def test_nonpositive_cotangent_degree_rejected(self):
        sys = derive_components(BundleData(1, 0, semistable=True), curve(0), 1)
        with pytest.raises(ValueError, match="hypothesis violated"):
            criterion_stable(sys)


class TestVerdictInvariants:
    def test_stable_yes_needs_semistable_yes(self):
        with pytest.raises(ValueError):
            Verdict(Answer.UNKNOWN, Answer.YES)

    def test_semistable_no_needs_certificate(self):
        with pytest.raises(ValueError):
            Verdict(Answer.NO, Answer.NO)

    def test_semistable_no_forces_stable_no(self):
        witness = SubsystemProfile(((1, 5),))
        v = Verdict(Answer.NO, Answer.UNKNOWN, witness)
        assert v.stable is Answer.NO


class TestJson:
    def test_round_trip_isomorphisms(self):
        sys = example_tower()
        assert system_from_json(system_to_json(sys)) == sys

    def test_round_trip_declared(self):
        witness = SubsystemProfile(((1, 3),))
        sys = HodgeSystem(
            curve(2), (BundleData(1, 3), BundleData(2, 1)), Declared((witness,))
        )
        assert system_from_json(system_to_json(sys)) == sys

    def test_unknown_fields_rejected(self):
        doc = system_to_json(example_tower())
        doc["extra"] = 1
        with pytest.raises(ValueError, match="unknown"):
            system_from_json(doc)

    def test_bad_theta_rejected(self):
        doc = system_to_json(example_tower())
        doc["theta"] = "declared"
        with pytest.raises(ValueError):
            system_from_json(doc)
