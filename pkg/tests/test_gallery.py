from __future__ import annotations

from fractions import Fraction

import pytest

from hodgeslope.gallery import (
    build_entry,
    default_entries,
    example_injective_not_iso,
    example_strictly_semistable,
    example_surjective_not_iso,
    example_unstable_component,
    recompute_verdict,
    unstable_component_hn,
)
from hodgeslope.hn_profiles import validate_hn
from hodgeslope.hodge_system import Answer, total_slope
from hodgeslope.slope_core import slope


class TestStrictlySemistable:
    def test_genus_two_data(self):
        entry = example_strictly_semistable(2)
        assert [(c.rank, c.degree) for c in entry.system.components] == [(2, -2), (2, 2)]
        assert total_slope(entry.system) == 0
        assert entry.declared_subobject.entries == ((1, -1), (1, 1))
        assert entry.declared_subobject.slope == 0

    def test_total_degree_always_zero(self):
        for g in (1, 2, 3, 7):
            entry = example_strictly_semistable(g)
            assert total_slope(entry.system) == 0

    def test_genus_three(self):
        entry = example_strictly_semistable(3)
        assert [(c.rank, c.degree) for c in entry.system.components] == [(2, -4), (2, 4)]
        assert entry.declared_subobject.entries == ((1, -2), (1, 2))

    def test_genus_one_degenerates(self):
        entry = example_strictly_semistable(1)
        assert entry.system.context.omega_degree == 0
        assert all(slope(c) == 0 for c in entry.system.components)

    def test_verdict_reproduced_by_search(self):
        for g in (1, 2, 3):
            entry = example_strictly_semistable(g)
            verdict = recompute_verdict(entry)
            assert verdict.semistable is Answer.YES
            assert verdict.stable is Answer.NO
            # equal-slope witness: zero gap
            assert verdict.certificate.slope == total_slope(entry.system)

    def test_genus_validated(self):
        with pytest.raises(ValueError):
            example_strictly_semistable(0)


class TestSurjectiveNotIso:
    def test_stated_slope(self):
        entry = example_surjective_not_iso(2, 3)
        assert total_slope(entry.system) == Fraction(8, 3)
        assert entry.declared_subobject.slope == 3

    def test_slope_gap_formula(self):
        for g, d in [(2, 3), (2, 5), (3, 5)]:
            entry = example_surjective_not_iso(g, d)
            mu = total_slope(entry.system)
            assert mu == Fraction(2 * d + 2 * g - 2, 3)
            assert mu < d
            verdict = recompute_verdict(entry)
            assert verdict.semistable is Answer.NO
            assert verdict.certificate.slope - mu == d - mu

    def test_degree_hypothesis_enforced(self):
        with pytest.raises(ValueError, match="d > 2g-2"):
            example_surjective_not_iso(2, 2)
        with pytest.raises(ValueError):
            example_surjective_not_iso(1, 5)


class TestInjectiveNotIso:
    def test_verdicts(self):
        for g, d0 in [(2, 4), (2, 1), (5, 2)]:
            entry = example_injective_not_iso(g, d0)
            assert total_slope(entry.system) == 0
            verdict = recompute_verdict(entry)
            assert verdict.semistable is Answer.NO
            assert verdict.certificate.slope == d0

    def test_positive_degree_required(self):
        with pytest.raises(ValueError):
            example_injective_not_iso(2, 0)


class TestUnstableComponent:
    def test_component_data(self):
        entry = example_unstable_component(2, 1)
        e0, e1 = entry.system.components
        assert (e0.rank, e0.degree) == (1, 1)
        assert (e1.rank, e1.degree) == (2, -1)
        assert e1.semistable is False
        assert total_slope(entry.system) == 0

    def test_line_degrees(self):
        entry = example_unstable_component(3, 2)
        e1 = entry.system.components[1]
        # lines of degree -2*2-(2*3-2) = -8 and 2+2*3-2 = 6
        assert e1.degree == -8 + 6

    def test_side_hn_profile_validates(self):
        for g, d0 in [(2, 1), (2, 3), (3, 2)]:
            hn = unstable_component_hn(g, d0)
            assert validate_hn(hn).valid
            assert [(q.rank, q.degree) for q in hn.quotients] == [
                (1, d0 + 2 * g - 2),
                (1, -2 * d0 - 2 * g + 2),
            ]

    def test_verdicts(self):
        for g, d0 in [(2, 1), (2, 3), (3, 2)]:
            entry = example_unstable_component(g, d0)
            verdict = recompute_verdict(entry)
            assert verdict.semistable is Answer.NO
            assert verdict.certificate.slope == d0 == d0 - total_slope(entry.system)

    def test_positive_degree_required(self):
        with pytest.raises(ValueError):
            example_unstable_component(2, 0)


class TestRegistry:
    def test_default_entries_reproduce_expectations(self):
        for entry in default_entries():
            verdict = recompute_verdict(entry)
            assert verdict.semistable is entry.expected.semistable, entry.name
            assert verdict.stable is entry.expected.stable, entry.name

    def test_build_entry_dispatch(self):
        entry = build_entry("injective-not-iso", d0=7)
        assert entry.declared_subobject.slope == 7

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown gallery entry"):
            build_entry("nonexistent")

    def test_wrong_parameter(self):
        with pytest.raises(ValueError, match="does not accept"):
            build_entry("strictly-semistable", d0=3)
