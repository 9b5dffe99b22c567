"""Routing from an enumerated quantum-number pair to its solver.

One entry point turns any pair produced by enumerate_all into rapidities.
The only subtlety is the boundary member of the infinite real family: its
two mirrored labels carry two distinct states of the chain (a real pair
pinned at the domain edge and a wide string centered on the edge), which
coincide mod pi at the label level.  The positive labels get the real state
and the negative labels the string, so that the full inventory stays
complete and mirror-symmetric as a set.
"""
from __future__ import annotations

from .equal_solver import solve_equal
from .height_solver import solve_pair
from .model import ChainParams, QuantumPair, SolutionClass
from .string_solver import (
    singular_solution,
    solve_boundary_string,
    solve_complex,
)


def is_boundary_family_pair(q: QuantumPair, p: ChainParams):
    """True for the (+-1/2, +-(N-1)/2) members of the infinite family."""
    if q.cls is not SolutionClass.INFINITE_FAMILY_REAL:
        return False
    magnitudes = {abs(q.j1).twice, abs(q.j2).twice}
    return magnitudes == {1, p.n - 1} and (q.j1 < 0) == (q.j2 < 0)


def solve_quantum_pair(q: QuantumPair, p: ChainParams, **kwargs):
    """Solve the state carried by an enumerated quantum-number pair."""
    if q.cls is SolutionClass.SINGULAR:
        return singular_solution(p)
    if q.cls.is_complex:
        return solve_complex(q, p, **kwargs)
    if is_boundary_family_pair(q, p) and q.j1 < 0:
        return solve_boundary_string(p, **kwargs)
    if q.j1 == q.j2:
        return solve_equal(q, p, **kwargs)
    return solve_pair(q, p, **kwargs)
