"""Distinct-label real pairs via the monotone height function."""
import math

import pytest

from bethe_xxz.height_solver import (
    contour_bracket,
    diff_p,
    discontinuity_k,
    height,
    lambda_star,
    solve_pair,
)
from bethe_xxz.model import (
    ChainParams,
    HalfInt,
    NoRootInInterval,
    QuantumPair,
    SolutionClass,
)
from bethe_xxz.quantum_numbers import enumerate_all

P86 = ChainParams(8, 0.6)


def _real_distinct_pairs(p):
    return [
        q
        for q in enumerate_all(p)
        if q.cls.is_real and q.j1 != q.j2
    ]


def _solve(j1_twice, j2_twice, p):
    q = QuantumPair(
        HalfInt(j1_twice), HalfInt(j2_twice), SolutionClass.STANDARD_REAL
    )
    return solve_pair(q, p)


class TestFrozenSolutions:
    def test_standard_pair(self):
        s = _solve(1, 3, P86)
        assert s.lambda1.real == pytest.approx(0.04690056085296905, abs=1e-12)
        assert s.lambda2.real == pytest.approx(0.2074403635366954, abs=1e-12)
        assert s.lambda1.imag == 0.0 and s.lambda2.imag == 0.0

    def test_infinite_family_pair(self):
        s = _solve(3, 7, P86)
        assert s.lambda1.real == pytest.approx(0.12376070383345561, abs=1e-12)
        assert s.lambda2.real == pytest.approx(1.533458069372903, abs=1e-12)

    def test_boundary_family_pair_pinned_at_edge(self):
        s = _solve(1, 7, P86)
        assert s.lambda1.real == 0.0
        assert s.lambda2.real == math.nextafter(math.pi / 2.0, 0.0)
        assert s.branch_meta["method"] == "boundary_limit"

    def test_label_order_controls_output_order(self):
        a = _solve(1, 3, P86)
        b = _solve(3, 1, P86)
        assert a.lambda1 == b.lambda2 and a.lambda2 == b.lambda1


class TestDefects:
    @pytest.mark.parametrize("n,zeta", [(8, 0.6), (12, 0.52), (12, 0.57),
                                        (8, 0.01), (10, 2.0)])
    def test_all_real_distinct_pairs_converge(self, n, zeta):
        p = ChainParams(n, zeta)
        for q in _real_distinct_pairs(p):
            s = solve_pair(q, p)
            assert s.residual < 1e-10, (q.j1, q.j2)


class TestSymmetry:
    @pytest.mark.parametrize("n,zeta", [(8, 0.6), (12, 0.57)])
    def test_negated_labels_give_negated_rapidities(self, n, zeta):
        p = ChainParams(n, zeta)
        for q in _real_distinct_pairs(p):
            s = solve_pair(q, p)
            m = solve_pair(q.negated(), p)
            assert abs(m.lambda1 + s.lambda1) < 1e-12, (q.j1, q.j2)
            assert abs(m.lambda2 + s.lambda2) < 1e-12, (q.j1, q.j2)


class TestContours:
    def test_lowest_contour_starts_at_zero(self):
        br = contour_bracket(HalfInt(1), P86)
        assert br.k_left == 0.0

    def test_no_left_discontinuity_for_lowest_label(self):
        with pytest.raises(NoRootInInterval):
            discontinuity_k(HalfInt(1), P86)

    def test_contours_tile_the_domain(self):
        labels = [HalfInt(tw) for tw in (1, 3, 5, 7)]
        brs = [contour_bracket(j, P86) for j in labels]
        assert brs[0].k_left == 0.0
        assert brs[-1].k_right == math.pi / 2.0
        for a, b in zip(brs, brs[1:]):
            assert a.k_right == pytest.approx(b.k_left, abs=1e-12)

    def test_height_decreases_on_contour(self):
        br = contour_bracket(HalfInt(5), P86)
        eps = 1e-9 * (br.k_right - br.k_left)
        grid = [
            br.k_left + eps + k * (br.k_right - br.k_left - 2 * eps) / 999
            for k in range(1000)
        ]
        values = [height(mu, HalfInt(5), P86) for mu in grid]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_pair_distance_decreases_on_contour(self):
        br = contour_bracket(HalfInt(5), P86)
        eps = 1e-9 * (br.k_right - br.k_left)
        grid = [
            br.k_left + eps + k * (br.k_right - br.k_left - 2 * eps) / 999
            for k in range(1000)
        ]
        values = [diff_p(mu, HalfInt(5), P86) for mu in grid]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_pair_distance_at_window_edge(self):
        # At the right edge of the first-domain window the distance between
        # the two rapidities is exactly a quarter turn.
        for tw in (1, 3, 5):
            ls = lambda_star(HalfInt(tw), P86)
            assert diff_p(ls, HalfInt(tw), P86) == pytest.approx(
                -math.pi / 2.0, abs=1e-9
            )


class TestErrors:
    def test_rejects_equal_labels(self):
        q = QuantumPair(HalfInt(3), HalfInt(3), SolutionClass.EQUAL_QN_REAL)
        with pytest.raises(ValueError):
            solve_pair(q, P86)
