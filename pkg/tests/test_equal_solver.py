"""Equal-label real pairs via the center/deviation counting function."""
import math

import pytest

from bethe_xxz.equal_solver import (
    counting_w,
    solve_equal,
    tan2x_complex_raw,
    tan2x_limit,
    tan2x_of_phi,
)
from bethe_xxz.model import (
    ChainParams,
    HalfInt,
    NoRealSolution,
    QuantumPair,
    SolutionClass,
)
from bethe_xxz.quantum_numbers import threshold_f

P86 = ChainParams(8, 0.6)


def _pair(tw):
    return QuantumPair(HalfInt(tw), HalfInt(tw), SolutionClass.EQUAL_QN_REAL)


class TestFrozenSolutions:
    def test_edge_pair_n8(self):
        s = solve_equal(_pair(7), P86)
        assert s.lambda1.real == pytest.approx(0.7810779836701285, abs=1e-11)
        assert s.lambda2.real == pytest.approx(1.2178480798759193, abs=1e-11)
        assert s.residual < 1e-10

    def test_collapsed_pair_n12(self):
        s = solve_equal(_pair(11), ChainParams(12, 0.52))
        assert s.lambda1.real == pytest.approx(0.9493167575160664, abs=1e-11)
        assert s.lambda2.real == pytest.approx(1.259423221717947, abs=1e-11)

    def test_collapsed_pair_near_isotropic_point(self):
        p = ChainParams(22, 1e-3)
        s = solve_equal(_pair(19), p)
        assert s.lambda1.real == pytest.approx(0.002228486567302891, abs=1e-12)
        assert s.lambda2.real == pytest.approx(0.0023727496657503905, abs=1e-12)

    def test_edge_pair_near_isotropic_point(self):
        # The root sits in a ~5e-4 sliver of phi just before a branch jump;
        # regression for the jump-edge bracketing of the scanner.
        p = ChainParams(22, 1e-3)
        s = solve_equal(_pair(21), p)
        assert s.lambda1.real == pytest.approx(0.003477566369981977, abs=1e-12)
        assert s.lambda2.real == pytest.approx(1.5704485683993008, abs=1e-12)


class TestNoRealSolution:
    def test_edge_pair_gone_complex(self):
        with pytest.raises(NoRealSolution):
            solve_equal(_pair(11), ChainParams(12, 0.57))

    def test_narrow_pair_label_has_no_real_root(self):
        with pytest.raises(NoRealSolution):
            solve_equal(_pair(5), P86)


class TestSymmetry:
    @pytest.mark.parametrize("n,zeta,tw", [(8, 0.6, 7), (12, 0.52, 11),
                                           (22, 1e-3, 19)])
    def test_mirror_is_negated_set(self, n, zeta, tw):
        p = ChainParams(n, zeta)
        s = solve_equal(_pair(tw), p)
        m = solve_equal(_pair(-tw), p)
        got = sorted((m.lambda1.real, m.lambda2.real))
        want = sorted((-s.lambda1.real, -s.lambda2.real))
        assert got[0] == pytest.approx(want[0], abs=1e-12)
        assert got[1] == pytest.approx(want[1], abs=1e-12)


class TestCountingFunction:
    @pytest.mark.parametrize("n,zeta", [(8, 0.6), (12, 0.52)])
    def test_small_deviation_limit_is_threshold(self, n, zeta):
        p = ChainParams(n, zeta)
        assert counting_w(1e-9, p, 1) == pytest.approx(
            threshold_f(p), abs=1e-6
        )

    def test_center_tangent_square_limit(self):
        for n, zeta in [(8, 0.6), (12, 0.52), (12, 0.57), (22, 1e-3)]:
            p = ChainParams(n, zeta)
            assert tan2x_of_phi(1e-7, 0, p) == pytest.approx(
                tan2x_limit(p), abs=1e-8
            )

    def test_factored_form_matches_complex_form(self):
        for phi in (1e-6, 1e-3, 0.1, 0.5, 1.0):
            raw = tan2x_complex_raw(phi, 0, P86)
            assert abs(raw.imag) < 1e-9
            assert tan2x_of_phi(phi, 0, P86) == pytest.approx(
                raw.real, rel=1e-9, abs=1e-12
            )

    def test_value_at_solution_hits_label(self):
        s = solve_equal(_pair(7), P86)
        phi = 0.5 * (s.lambda2.real - s.lambda1.real)
        assert counting_w(phi, P86, 1) == pytest.approx(3.5, abs=1e-10)

    def test_metadata_reports_center_and_deviation(self):
        s = solve_equal(_pair(7), P86)
        meta = s.branch_meta
        assert meta["method"] == "equal_counting"
        assert meta["center"] == pytest.approx(
            0.5 * (s.lambda1.real + s.lambda2.real), abs=1e-14
        )
        assert meta["phi"] > 0.0
        assert meta["gamma"] == pytest.approx(
            2.0 * meta["phi"] / P86.zeta, rel=1e-14
        )


class TestErrors:
    def test_rejects_distinct_labels(self):
        q = QuantumPair(HalfInt(1), HalfInt(3), SolutionClass.STANDARD_REAL)
        with pytest.raises(ValueError):
            solve_equal(q, P86)
