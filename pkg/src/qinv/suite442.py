"""The ((4,4,2)) quartic-uniqueness verification suite.

Checks the pinned quartic invariant values of the XXXX/ZZZZ code, the
chain equations, the symmetrized global invariant, the vanishing signed
combinations for every two-letter subset, and invariance of all
generator-derangement quartic tuples under random local unitaries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .codes import StabilizerCode, fixture_442, projector
from .invariants import invariant_code, symmetrize
from .permtuple import PermTuple, power
from .qspace import Operator, partial_trace, random_local_unitary
from .reductions import derangement_generators_s4

__all__ = ["CheckResult", "run_verify_442"]


@dataclass
class CheckResult:
    name: str
    description: str
    expected: float
    actual: float
    passed: bool


def _conjugated(p: Operator, seed: int) -> Operator:
    u = random_local_unitary(p.shape, seed)
    return Operator(p.shape, u.entries @ p.entries @ u.entries.conj().T)


def run_verify_442(
    code: StabilizerCode | None = None,
    tol: float = 1e-9,
    seed: int = 0,
) -> list[CheckResult]:
    if code is None:
        code = fixture_442()
    p = projector(code)
    g1, g2, g3 = derangement_generators_s4()
    g1sq, g3sq = power(g1, 2), power(g3, 2)

    def val(perms) -> float:
        return invariant_code(PermTuple(tuple(perms)), p).real

    checks: list[CheckResult] = []

    def record(name, description, expected, actual):
        checks.append(
            CheckResult(name, description, expected, actual, abs(actual - expected) <= tol)
        )

    # 5.1: trace and single-letter purity
    record("5.1a", "Tr(P)", 4.0, p.trace().real)
    for i in range(1, 5):
        reduced = partial_trace(p, {i}).entries
        dev = np.abs(reduced - 0.5 * np.eye(8)).max()
        record("5.1b", f"max |Tr_{i}(P) - I/2|", 0.0, float(dev))

    # 5.2 and 5.3: pinned quartic values
    record("5.2", "A'[g1^2,g3^2,g3^2,g3^2]", 4.0, val([g1sq, g3sq, g3sq, g3sq]))
    record("5.3", "A'[g3,g3^2,g3^2,g3^2]", 2.0, val([g3, g3sq, g3sq, g3sq]))

    # 5.4: the three chain equations
    record(
        "5.4a",
        "two-term chain sum",
        2.0,
        val([g3, g1, g3sq, g3sq]) + val([g3, g2, g3sq, g3sq]),
    )
    record(
        "5.4b",
        "four-term chain sum",
        2.0,
        val([g3, g1, g1, g3sq])
        + val([g3, g2, g1, g3sq])
        + val([g3, g1, g2, g3sq])
        + val([g3, g2, g2, g3sq]),
    )
    record(
        "5.4c",
        "three-term chain sum",
        3.0,
        val([g3, g1, g1, g2]) + val([g3, g1, g2, g1]) + val([g3, g2, g1, g1]),
    )

    # 5.5: symmetrized global invariant (mean over letter reorderings)
    record(
        "5.5",
        "sym A'[g1,g1,g2,g3]",
        1.0,
        symmetrize(PermTuple((g1, g1, g2, g3)), p).real,
    )

    # 5.6: vanishing signed combination for every two-letter subset
    base_terms = [
        (2.0, (g2, g3, g1, g1)),
        (2.0, (g1, g1, g2, g3)),
        (1.0, (g1, g2, g1, g3)),
        (1.0, (g1, g2, g3, g1)),
        (1.0, (g2, g1, g1, g3)),
        (1.0, (g2, g1, g3, g1)),
    ]
    for subset in itertools.combinations(range(1, 5), 2):
        comp = [i for i in range(1, 5) if i not in subset]
        order = [subset[0], subset[1], comp[0], comp[1]]
        total = 8.0
        for coeff, perms in base_terms:
            placed = [None] * 4
            for slot, letter in enumerate(order):
                placed[letter - 1] = perms[slot]
            total -= coeff * val(placed)
        record("5.6", f"kappa combination S={{{subset[0]},{subset[1]}}}", 0.0, total)

    # 5.7: every generator-derangement quartic tuple is invariant under
    # conjugation by random local unitaries (tuple-outer loop so the
    # per-tuple index blocks are reused across the eleven operators)
    conjugated = [_conjugated(p, seed + trial) for trial in range(10)]
    worst = 0.0
    for parts in itertools.product((g1, g2, g3), repeat=4):
        t = PermTuple(parts)
        ref = invariant_code(t, p)
        for q in conjugated:
            worst = max(worst, abs(invariant_code(t, q) - ref))
    record("5.7", "max |A'(t, UPU+) - A'(t, P)| over 81 tuples x 10 unitaries", 0.0, worst)

    return checks
