"""Divergence of reduced rapidities along a shrinking-anisotropy schedule."""
import math

import pytest

from bethe_xxz.model import ChainParams, HalfInt, QuantumPair, SolutionClass
from bethe_xxz.xxx_limit import small_zeta_bound, trace_divergence

FAM = SolutionClass.INFINITE_FAMILY_REAL
SCHEDULE = [0.3, 0.1, 0.03, 0.01]


def _trace(n, tw1, tw2, schedule=SCHEDULE):
    q = QuantumPair(HalfInt(tw1), HalfInt(tw2), FAM)
    return trace_divergence(q, ChainParams(n, schedule[0]), schedule)


class TestBoundaryMember:
    def test_reduced_value_strictly_increases(self):
        t = _trace(8, 7, 1)
        reduced = [s.reduced for s in t.samples]
        assert all(a < b for a, b in zip(reduced, reduced[1:]))

    def test_first_rapidity_pinned_in_upper_window(self):
        t = _trace(8, 7, 1)
        bound = small_zeta_bound(8)
        for s in t.samples:
            if s.zeta <= bound:
                assert math.pi / 4.0 <= s.lambda1 < math.pi / 2.0

    def test_mirror_family_diverges_negated(self):
        t = _trace(8, -7, -1)
        bound = small_zeta_bound(8)
        for s in t.samples:
            if s.zeta <= bound:
                assert -math.pi / 2.0 < s.lambda1 <= -math.pi / 4.0
        reduced = [abs(s.reduced) for s in t.samples]
        assert all(a < b for a, b in zip(reduced, reduced[1:]))


class TestOtherMembers:
    @pytest.mark.parametrize("tw1,tw2", [(3, 7), (5, 7), (7, 7)])
    def test_all_family_members_diverge(self, tw1, tw2):
        t = _trace(8, tw1, tw2)
        reduced = [s.reduced for s in t.samples]
        assert all(a < b for a, b in zip(reduced, reduced[1:]))
        assert t.samples[-1].lambda1 >= math.pi / 4.0


class TestGuards:
    def test_rejects_non_family_pair(self):
        q = QuantumPair(HalfInt(1), HalfInt(3), SolutionClass.STANDARD_REAL)
        with pytest.raises(ValueError):
            trace_divergence(q, ChainParams(8, 0.3), SCHEDULE)

    def test_rejects_family_pair_without_edge_label(self):
        q = QuantumPair(HalfInt(1), HalfInt(3), FAM)
        with pytest.raises(ValueError):
            trace_divergence(q, ChainParams(8, 0.3), SCHEDULE)

    def test_rejects_non_decreasing_schedule(self):
        q = QuantumPair(HalfInt(7), HalfInt(1), FAM)
        with pytest.raises(ValueError):
            trace_divergence(q, ChainParams(8, 0.1), [0.1, 0.3])

    def test_rejects_nonpositive_schedule(self):
        q = QuantumPair(HalfInt(7), HalfInt(1), FAM)
        with pytest.raises(ValueError):
            trace_divergence(q, ChainParams(8, 0.1), [0.1, 0.0])
