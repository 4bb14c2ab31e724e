"""Voter satisfaction for a hypothetical winner.

A voter is satisfied by positive votes given to the winner and by negative
votes given to any candidate that loses; a negative vote given to the winner
counts against satisfaction.
"""

from __future__ import annotations

import numpy as np

from .ballot import Election, Tally
from .selection import REPORT, WinnerResult, select_winner

S = "S"
SBAR = "SBar"
VARIANTS = (S, SBAR)


def satisfaction_all(P, N):
    """``S`` for every candidate at once: ``P - 2N + sum(N)``."""
    P = np.asarray(P, dtype=float)
    N = np.asarray(N, dtype=float)
    return P - 2.0 * N + N.sum(axis=-1, keepdims=True)


def satisfaction_bar_all(P, N):
    """``S`` minus the positive votes won by every other candidate."""
    P = np.asarray(P, dtype=float)
    N = np.asarray(N, dtype=float)
    return satisfaction_all(P, N) - (P.sum(axis=-1, keepdims=True) - P)


def satisfaction(tally: Tally, alpha) -> float:
    a = tally.index(alpha)
    others = np.delete(tally.N, a).sum()
    return float(tally.P[a] - tally.N[a] + others)


def satisfaction_bar(tally: Tally, alpha) -> float:
    a = tally.index(alpha)
    return satisfaction(tally, a) - float(np.delete(tally.P, a).sum())


def satisfaction_per_voter(election: Election, alpha) -> np.ndarray:
    """Each voter's satisfaction if ``alpha`` wins; sums to ``satisfaction``."""
    a = election.index(alpha)
    scores = election.scores()
    pos = np.clip(scores, 0.0, None)
    neg = np.clip(-scores, 0.0, None)
    return pos[:, a] - neg[:, a] + (neg.sum(axis=1) - neg[:, a])


def variant_values(tally: Tally, variant: str = S) -> np.ndarray:
    if variant == S:
        return satisfaction_all(tally.P, tally.N)
    if variant == SBAR:
        return satisfaction_bar_all(tally.P, tally.N)
    raise ValueError(f"unknown satisfaction variant {variant!r}; use one of {VARIANTS}")


def max_satisfaction_winner(tally: Tally, variant: str = S, tie_rule: str = REPORT,
                            qualified_only: bool = True) -> WinnerResult:
    """Candidate whose victory would maximize total voter satisfaction."""
    eligible = tally.qualified if qualified_only else None
    return select_winner(tally.candidates, variant_values(tally, variant),
                         eligible, tie_rule, label=variant)
