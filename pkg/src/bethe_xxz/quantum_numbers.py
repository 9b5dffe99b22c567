"""Regime classification and complete enumeration of quantum-number pairs.

The two-string threshold F(N, zeta) decides which equal-quantum-number pairs
are real (collapsed) and which are complex, and whether the edge pair
(+-(N-1)/2, +-(N-1)/2) turns into an extra two-string.  The enumeration emits
exactly C(N, 2) labelled pairs for any non-degenerate parameter point.
"""
from __future__ import annotations

import math

from .model import (
    BoundaryDegenerate,
    ChainParams,
    HalfInt,
    QuantumPair,
    RegimeReport,
    SolutionClass,
)

BOUNDARY_TOL = 1e-12


def threshold_value(n, zeta):
    """Two-string threshold F for a chain of n sites (n may be odd here).

    F = (n/pi) * atan(sqrt((n - (1 + t^2)) / (1 - (n-1) t^2))) with
    t = tanh(zeta/2); +inf when the argument of the square root is not
    positive (the stable regime).
    """
    t2 = math.tanh(zeta / 2.0) ** 2
    den = 1.0 - (n - 1) * t2
    if den <= 0.0:
        return math.inf
    num = n - (1.0 + t2)
    return (n / math.pi) * math.atan(math.sqrt(num / den))


def threshold_f(p: ChainParams):
    """Two-string threshold F(N, zeta); +inf sentinel in the stable regime."""
    return threshold_value(p.n, p.zeta)


def is_stable(p: ChainParams):
    """Stable regime: tanh^2(zeta/2) >= 1/(N-1)."""
    return p.t ** 2 >= 1.0 / (p.n - 1)


def _check_boundary(p, f):
    """Reject parameters whose threshold sits on a comparison half-integer."""
    if math.isinf(f):
        return
    # All regime comparisons pit F against half-odd integers
    # ((N-1)/2 for the extra string, (N-1-2m)/2 for collapses).
    nearest = math.floor(f) + 0.5
    for cand in (nearest - 1.0, nearest, nearest + 1.0):
        if 0.0 < cand <= (p.n - 1) / 2.0 and abs(f - cand) < BOUNDARY_TOL:
            raise BoundaryDegenerate(
                f"threshold {f!r} lies on the regime boundary {cand!r}"
            )


def has_extra_two_string(p: ChainParams):
    """True when (N-1)/2 < F, i.e. the edge pair is complex.

    The stable regime (F = +inf) always satisfies this, in agreement with the
    closed-form inequality on tanh^2(zeta/2).
    """
    f = threshold_f(p)
    _check_boundary(p, f)
    return (p.n - 1) / 2.0 < f


def collapse_count_value(n, zeta):
    """Number m of collapsed two-strings per sign for an n-site chain."""
    f = threshold_value(n, zeta)
    if math.isinf(f):
        return 0
    # m = number of half-odd integers J with F < J < (N-1)/2; it then
    # automatically satisfies (N-3-2m)/2 < F < (N-1-2m)/2.
    count = 0
    j = (n - 1) / 2.0 - 1.0
    while j > f:
        count += 1
        j -= 1.0
    return count


def collapse_count(p: ChainParams):
    """Collapse count m >= 0 with the boundary guard applied."""
    f = threshold_f(p)
    _check_boundary(p, f)
    return collapse_count_value(p.n, p.zeta)


def classify_regime(p: ChainParams):
    """Full regime summary: stability, threshold, cutoff, collapse, extra."""
    f = threshold_f(p)
    _check_boundary(p, f)
    stable = is_stable(p)
    extra = (p.n - 1) / 2.0 < f
    m = collapse_count_value(p.n, p.zeta)
    edge = HalfInt(p.n - 1)  # (N-1)/2
    if math.isinf(f) or extra:
        cutoff = edge
    else:
        # Largest half-odd integer below F: the top narrow-pair label.
        cutoff = HalfInt(2 * math.floor(f + 0.5) - 1)
        if cutoff > edge:
            cutoff = edge
    return RegimeReport(
        stable=stable,
        threshold=f,
        cutoff=cutoff,
        m_collapsed=m,
        extra_two_string=extra,
    )


def _half_odds_between(lo, hi):
    """Half-odd integers j with lo < j < hi (strict), ascending."""
    out = []
    tw = 2 * math.floor(lo) + 1
    if tw / 2.0 <= lo:
        tw += 2
    while tw / 2.0 < hi:
        out.append(HalfInt(tw))
        tw += 2
    return out


def enumerate_all(p: ChainParams):
    """Complete list of C(N, 2) quantum-number pairs with classes.

    The same (j1, j2) label can appear twice with different classes: the
    singular pair shares its label with a standard real pair, and each wide
    pair shares its label set with a member of the infinite real family.
    """
    report = classify_regime(p)
    n = p.n
    f = report.threshold
    edge = HalfInt(n - 1)  # (N-1)/2
    pairs = []

    # Standard real pairs: all -(N-1)/2 < j1 < j2 < (N-1)/2.
    interior = _half_odds_between(-(n - 1) / 2.0, (n - 1) / 2.0)
    for a in range(len(interior)):
        for b in range(a + 1, len(interior)):
            pairs.append(
                QuantumPair(interior[a], interior[b], SolutionClass.STANDARD_REAL)
            )

    # Infinite family with distinct labels: (k, (N-1)/2) and (-k, -(N-1)/2).
    for k in _half_odds_between(0.0, (n - 1) / 2.0):
        pairs.append(QuantumPair(k, edge, SolutionClass.INFINITE_FAMILY_REAL))
        pairs.append(QuantumPair(-k, -edge, SolutionClass.INFINITE_FAMILY_REAL))

    # Edge pairs (+-(N-1)/2, +-(N-1)/2): real members of the infinite family
    # unless the extra two-string replaces them.
    edge_cls = (
        SolutionClass.EXTRA_TWO_STRING
        if report.extra_two_string
        else SolutionClass.INFINITE_FAMILY_REAL
    )
    pairs.append(QuantumPair(edge, edge, edge_cls))
    pairs.append(QuantumPair(-edge, -edge, edge_cls))

    # Remaining equal-label pairs in (N/4, N/2) excluding the edge:
    # complex narrow below F, collapsed real above F.
    for j in _half_odds_between(n / 4.0, n / 2.0):
        if j == edge:
            continue
        cls = (
            SolutionClass.NARROW_PAIR_COMPLEX
            if float(j) < f
            else SolutionClass.EQUAL_QN_REAL
        )
        pairs.append(QuantumPair(j, j, cls))
        pairs.append(QuantumPair(-j, -j, cls))

    # Wide pairs (j, j+1) for N/4 - 1/2 < j < (N-1)/2, with mirrors emitted
    # in ascending label order.
    for j in _half_odds_between(n / 4.0 - 0.5, (n - 1) / 2.0):
        pairs.append(QuantumPair(j, j + 1, SolutionClass.WIDE_PAIR_COMPLEX))
        pairs.append(
            QuantumPair(-(j + 1), -j, SolutionClass.WIDE_PAIR_COMPLEX)
        )

    # The singular pair, once; its two equivalent labels are deduplicated in
    # favour of the positive one.
    if n % 4 == 0:
        singular = QuantumPair(
            HalfInt(n // 2 - 1), HalfInt(n // 2 + 1), SolutionClass.SINGULAR
        )
    else:
        singular = QuantumPair(
            HalfInt(n // 2), HalfInt(n // 2), SolutionClass.SINGULAR
        )
    pairs.append(singular)

    pairs.sort(key=QuantumPair.key)
    expected = n * (n - 1) // 2
    if len(pairs) != expected:
        raise AssertionError(
            f"enumeration produced {len(pairs)} pairs, expected {expected}"
        )
    return pairs


def regime_label_from_report(report: RegimeReport):
    """Map a regime report to the map label: extra | none | m1 | m2 | ..."""
    if report.extra_two_string:
        return "extra"
    if report.m_collapsed == 0:
        return "none"
    return f"m{report.m_collapsed}"


def regime_label_from_inequalities(n, zeta):
    """Regime label straight from the closed-form tanh^2 inequalities.

    The boundary between 'none' and 'extra' is
    tanh^2(zeta/2) = (1 - (n-1) tan^2(pi/2n)) / ((n-1) - tan^2(pi/2n)),
    and the collapse boundaries use tan^2((2k+1) pi / 2n).  This is an
    independent formulation of the threshold comparisons, used as a
    cross-check of classify_regime.
    """
    t2 = math.tanh(zeta / 2.0) ** 2

    def bound(j):
        tg = math.tan(j * math.pi / (2.0 * n)) ** 2
        den = (n - 1) - tg
        if den <= 0.0:
            return None
        return (1.0 - (n - 1) * tg) / den

    b1 = bound(1)
    if b1 is not None and t2 > b1:
        return "extra"
    m = 0
    k = 1
    while 2 * k + 1 < n:
        bk = bound(2 * k + 1)
        if bk is None or not t2 < bk:
            break
        m = k
        k += 1
    return "none" if m == 0 else f"m{m}"
