"""Ranked-ballot methods and their comparison with normed negative voting.

Distinct scores on a normed ballot induce a strict ranking, so any NNV
election can also be counted with Borda, Condorcet or instant runoff.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .ballot import DEFAULT_NORM, Ballot, Election, aggregate, default_names
from .errors import TiedScores
from .metrics import MetricKind, pick_winner, w
from .satisfaction import S, max_satisfaction_winner
from .selection import REPORT, WinnerResult, select_winner

RankBallot = tuple  # ranks[mu] = position of candidate mu, 1 = most preferred


def to_ranks(ballot, voter: int | None = None) -> RankBallot:
    """Rank candidates by score, highest score gets rank 1."""
    scores = ballot.scores if isinstance(ballot, Ballot) else tuple(float(s) for s in ballot)
    order = sorted(range(len(scores)), key=lambda i: -scores[i])
    for hi, lo in zip(order, order[1:]):
        if scores[hi] == scores[lo]:
            raise TiedScores(*sorted((hi, lo)), voter=voter)
    ranks = [0] * len(scores)
    for pos, cand in enumerate(order, start=1):
        ranks[cand] = pos
    return tuple(ranks)


def election_ranks(election: Election) -> list[RankBallot]:
    return [to_ranks(b, voter=i) for i, b in enumerate(election.ballots)]


def _rank_matrix(rank_ballots) -> np.ndarray:
    arr = np.asarray(list(rank_ballots), dtype=int)
    return arr.reshape(len(arr), -1) if arr.size else arr.reshape(0, 0)


@dataclass(frozen=True)
class BordaResult:
    counts: tuple[int, ...]
    result: WinnerResult


def borda(rank_ballots, m: int, candidates=None, tie_rule: str = REPORT) -> BordaResult:
    """Rank ``r`` earns ``m - r`` points."""
    ranks = _rank_matrix(rank_ballots)
    counts = np.zeros(m, dtype=int)
    if ranks.size:
        counts = (m - ranks).sum(axis=0)
    cands = candidates or default_names(m)
    result = select_winner(cands, counts, None, tie_rule, label="Borda")
    return BordaResult(tuple(int(c) for c in counts), result)


def pairwise_matrix(rank_ballots, m: int) -> np.ndarray:
    """``M[mu, nu]`` = number of voters ranking ``mu`` above ``nu``."""
    ranks = _rank_matrix(rank_ballots)
    if not ranks.size:
        return np.zeros((m, m), dtype=int)
    return (ranks[:, :, None] < ranks[:, None, :]).sum(axis=0)


@dataclass(frozen=True, eq=False)
class CondorcetOutcome:
    winner: int | None
    matrix: np.ndarray
    candidates: tuple[str, ...]

    @property
    def has_winner(self) -> bool:
        return self.winner is not None

    @property
    def name(self) -> str | None:
        return None if self.winner is None else self.candidates[self.winner]

    def outcome(self):
        return self.name if self.winner is not None else "cycle"


def condorcet(rank_ballots, m: int | None = None, candidates=None) -> CondorcetOutcome:
    """Candidate that strictly beats every other one head to head, if any."""
    ranks = _rank_matrix(rank_ballots)
    if m is None:
        m = ranks.shape[1] if ranks.size else len(candidates)
    M = pairwise_matrix(ranks, m)
    wins = M > M.T
    np.fill_diagonal(wins, True)
    beats_all = np.flatnonzero(wins.all(axis=1))
    winner = int(beats_all[0]) if len(beats_all) else None
    M.setflags(write=False)
    return CondorcetOutcome(winner, M, tuple(candidates or default_names(m)))


@dataclass(frozen=True)
class IrvRound:
    survivors: tuple[int, ...]
    counts: dict
    eliminated: tuple[int, ...]


@dataclass(frozen=True)
class IrvResult:
    result: WinnerResult
    rounds: tuple[IrvRound, ...] = field(default=())


def instant_runoff(rank_ballots, m: int, candidates=None) -> IrvResult:
    """Instant runoff where every candidate tied at the fewest first choices
    is dropped in the same round.

    Counting stops when one candidate is left, or when all survivors hold the
    same number of first choices; the latter is returned as a tie.
    """
    ranks = _rank_matrix(rank_ballots)
    cands = tuple(candidates or default_names(m))
    # preference order per ballot: candidate indices sorted by rank
    prefs = [list(np.argsort(r)) for r in ranks] if ranks.size else []
    survivors = list(range(m))
    rounds = []
    while True:
        alive = set(survivors)
        counts = {c: 0 for c in survivors}
        for order in prefs:
            for c in order:
                if c in alive:
                    counts[int(c)] += 1
                    break
        low = min(counts.values())
        if len(survivors) == 1 or all(v == low for v in counts.values()):
            rounds.append(IrvRound(tuple(survivors), counts, ()))
            break
        out = tuple(c for c in survivors if counts[c] == low)
        rounds.append(IrvRound(tuple(survivors), counts, out))
        survivors = [c for c in survivors if c not in out]
    values = np.full(m, -np.inf)
    for c, v in rounds[-1].counts.items():
        values[c] = v
    tied = tuple(survivors)
    winner = tied[0] if len(tied) == 1 else None
    values.setflags(write=False)
    result = WinnerResult(cands, values, tied, winner, frozenset(), "IRV")
    return IrvResult(result, tuple(rounds))


def approval_to_nnv(approvals: Iterable, m: int | None = None, norm: float = DEFAULT_NORM,
                    candidates: Sequence[str] | None = None) -> Election:
    """Normed approval ballots: approved candidates get ``+norm/m``, the rest ``-norm/m``.

    ``approvals`` holds one collection of approved candidates (indices or
    names) per voter.
    """
    if candidates is None:
        if m is None:
            raise ValueError("give m or candidates")
        candidates = default_names(m)
    candidates = tuple(candidates)
    m = len(candidates)
    unit = norm / m
    ballots = []
    for approved in approvals:
        idx = {a if isinstance(a, (int, np.integer)) else candidates.index(a) for a in approved}
        if any(not 0 <= i < m for i in idx):
            raise ValueError(f"approval set {sorted(idx)} outside 0..{m - 1}")
        ballots.append(Ballot(unit if i in idx else -unit for i in range(m)))
    return Election(candidates, tuple(ballots), norm)


# --------------------------------------------------------------------------


DEFAULT_COMPARE_METRICS = (w(0, 1), w(1, 1))
RANKED_METHODS = ("Borda", "Condorcet", "IRV")


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome per method.  Values are a winner name, a list of tied names,
    or ``"cycle"`` for a missing Condorcet winner."""

    candidates: tuple[str, ...]
    outcomes: dict
    ranked_winners: frozenset
    nnv_winners: frozenset
    divergent: bool

    def to_dict(self) -> dict:
        return {
            "candidates": list(self.candidates),
            "outcomes": self.outcomes,
            "ranked_winners": sorted(self.ranked_winners),
            "nnv_winners": sorted(self.nnv_winners),
            "divergent": self.divergent,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def to_table(self) -> str:
        width = max(len(k) for k in self.outcomes)
        lines = []
        for method, out in self.outcomes.items():
            shown = f"tie {{{', '.join(out)}}}" if isinstance(out, list) else out
            lines.append(f"{method:<{width}}  {shown}")
        lines.append(f"{'divergent':<{width}}  {'yes' if self.divergent else 'no'}")
        return "\n".join(lines)


def _winner_set(outcome, candidates) -> frozenset | None:
    if outcome == "cycle":
        return None
    if isinstance(outcome, list):
        return frozenset(outcome)
    return frozenset([outcome])


def _common(sets) -> frozenset:
    sets = [s for s in sets if s is not None]
    if not sets:
        return frozenset()
    out = sets[0]
    for s in sets[1:]:
        out = out & s
    return out


def compare_methods(election: Election, metrics: Sequence[MetricKind] = DEFAULT_COMPARE_METRICS,
                    satisfaction_variant: str = S) -> ComparisonReport:
    """Winners under Borda, Condorcet, IRV, the given metrics and satisfaction.

    The ranked and NNV sides each reduce to the set of candidates that every
    method on that side selects (a tie contributes all its members, a
    Condorcet cycle contributes nothing).  The report is divergent when those
    two sets are disjoint.
    """
    ranks = election_ranks(election)
    m, cands = election.m, election.candidates
    outcomes = {
        "Borda": borda(ranks, m, cands).result.outcome(),
        "Condorcet": condorcet(ranks, m, cands).outcome(),
        "IRV": instant_runoff(ranks, m, cands).result.outcome(),
    }
    tally = aggregate(election)
    nnv_keys = []
    for kind in metrics:
        outcomes[kind.label] = pick_winner(tally, kind).outcome()
        nnv_keys.append(kind.label)
    outcomes[satisfaction_variant] = max_satisfaction_winner(tally, satisfaction_variant).outcome()
    nnv_keys.append(satisfaction_variant)

    ranked = _common(_winner_set(outcomes[k], cands) for k in RANKED_METHODS)
    nnv = _common(_winner_set(outcomes[k], cands) for k in nnv_keys)
    return ComparisonReport(cands, outcomes, ranked, nnv, not (ranked & nnv))
