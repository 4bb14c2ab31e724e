"""Argmax with an absolute tie tolerance, shared by every winner rule."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoQualifiedCandidate

TIE_TOL = 1e-9

REPORT = "report"
LOWEST_INDEX = "lowest-index"
TIE_RULES = (REPORT, LOWEST_INDEX)


@dataclass(frozen=True, eq=False)
class WinnerResult:
    """Winner of one rule applied to one election.

    ``tied`` always lists every candidate within the tie tolerance of the
    best value.  ``winner`` is the single chosen index, or ``None`` when the
    tie rule is ``"report"`` and more than one candidate is tied.
    """

    candidates: tuple[str, ...]
    values: np.ndarray
    tied: tuple[int, ...]
    winner: int | None
    disqualified: frozenset = frozenset()
    label: str = ""

    @property
    def is_tie(self) -> bool:
        return self.winner is None

    @property
    def name(self) -> str | None:
        return None if self.winner is None else self.candidates[self.winner]

    @property
    def tied_names(self) -> tuple[str, ...]:
        return tuple(self.candidates[i] for i in self.tied)

    def outcome(self):
        """Winner name, or the sorted list of tied names."""
        return self.name if self.winner is not None else list(self.tied_names)

    def __repr__(self):
        what = self.name if self.winner is not None else f"tie{self.tied_names}"
        return f"WinnerResult({self.label or 'winner'}={what})"


def argmax_set(values, eligible=None, tol: float = TIE_TOL) -> tuple[int, ...]:
    """Indices of eligible entries within ``tol`` of the eligible maximum."""
    values = np.asarray(values, dtype=float)
    if eligible is None:
        eligible = np.ones(values.shape, dtype=bool)
    eligible = np.asarray(eligible, dtype=bool) & ~np.isnan(values)
    if not eligible.any():
        return ()
    best = values[eligible].max()
    return tuple(int(i) for i in np.flatnonzero(eligible & (values >= best - tol)))


def select_winner(candidates, values, eligible=None, tie_rule: str = REPORT,
                  label: str = "", tol: float = TIE_TOL) -> WinnerResult:
    if tie_rule not in TIE_RULES:
        raise ValueError(f"tie_rule must be one of {TIE_RULES}, got {tie_rule!r}")
    values = np.asarray(values, dtype=float)
    tied = argmax_set(values, eligible, tol)
    if not tied:
        raise NoQualifiedCandidate("no qualified candidate (every polarity exceeds 1)")
    if eligible is None:
        disq = frozenset()
    else:
        disq = frozenset(int(i) for i in np.flatnonzero(~np.asarray(eligible, dtype=bool)))
    if len(tied) == 1 or tie_rule == LOWEST_INDEX:
        winner = tied[0]
    else:
        winner = None
    values = values.copy()
    values.setflags(write=False)
    return WinnerResult(tuple(candidates), values, tied, winner, disq, label)
