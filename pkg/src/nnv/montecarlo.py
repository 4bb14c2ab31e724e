"""Random elections: metric/satisfaction agreement rates and monotonicity search.

Trials are processed in fixed-size blocks.  Block ``k`` draws from its own
generator seeded with ``SeedSequence(seed, spawn_key=(k,))``, so results
depend only on the seed and the trial count, never on how many worker
processes share the blocks.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ballot import DEFAULT_NORM, Election, Tally, aggregate, default_names
from .errors import NoQualifiedCandidate, NonAdmissibleMetric
from .metrics import MetricKind, RationalCB, is_admissible_closed, pick_winner, w
from .satisfaction import S, SBAR, VARIANTS, satisfaction_all, satisfaction_bar_all
from .selection import TIE_TOL

log = logging.getLogger(__name__)

BLOCK_SIZE = 1 << 15
MAX_REDRAWS = 10_000

TABLE1_METRICS = (w(0, 1), w(1, 1), w(2, 1), w(0.5, 0.5))
TABLE1_M = (3, 4, 5, 8, 20)


# --------------------------------------------------------------------------
# Sampling laws for (P, N)


@dataclass(frozen=True)
class Uniform:
    """``P`` and ``N`` drawn independently from Uniform(low, high)."""

    low: float = 0.0
    high: float = 1.0

    def sample(self, rng: np.random.Generator, n: int, m: int):
        draws = rng.uniform(self.low, self.high, size=(n, m, 2))
        return draws[..., 0], draws[..., 1]

    def __str__(self):
        return f"uniform:{self.low:g},{self.high:g}"


@dataclass(frozen=True)
class IntegerUniform:
    """``P`` and ``N`` drawn independently from the integers ``low..high``."""

    low: int = 0
    high: int = 10

    def sample(self, rng: np.random.Generator, n: int, m: int):
        draws = rng.integers(self.low, self.high + 1, size=(n, m, 2)).astype(float)
        return draws[..., 0], draws[..., 1]

    def __str__(self):
        return f"integer:{self.low},{self.high}"


def parse_distribution(text: str):
    """``uniform``, ``uniform:LOW,HIGH``, ``integer`` or ``integer:LOW,HIGH``."""
    name, _, args = text.partition(":")
    name = name.strip().lower()
    if name not in ("uniform", "integer"):
        raise ValueError(f"unknown distribution {text!r}")
    if not args:
        return Uniform() if name == "uniform" else IntegerUniform()
    parts = args.split(",")
    if len(parts) != 2:
        raise ValueError(f"distribution bounds must be LOW,HIGH in {text!r}")
    if name == "uniform":
        low, high = (float(p) for p in parts)
        dist = Uniform(low, high)
    else:
        low, high = (int(p) for p in parts)
        dist = IntegerUniform(low, high)
    if low < 0 or high <= low:
        raise ValueError(f"need 0 <= low < high in {text!r}")
    return dist


def sample_tallies(rng, n: int, m: int, distribution=Uniform(),
                   max_redraws: int = MAX_REDRAWS):
    """Draw ``n`` elections of ``m`` candidates with at least one qualified.

    Elections with nobody qualified are redrawn whole.  Returns ``(P, N,
    rejected)`` with ``P`` and ``N`` of shape ``(n, m)``.
    """
    P, N = distribution.sample(rng, n, m)
    P, N = P.copy(), N.copy()
    rejected = 0
    bad = np.flatnonzero(~(N <= P).any(axis=1))
    redraws = 0
    while len(bad):
        redraws += 1
        if redraws > max_redraws:
            raise RuntimeError(
                f"could not draw a qualified election after {max_redraws} redraws"
            )
        rejected += len(bad)
        P[bad], N[bad] = distribution.sample(rng, len(bad), m)
        bad = bad[~(N[bad] <= P[bad]).any(axis=1)]
    return P, N, rejected


def random_tally(rng, m: int, distribution=Uniform()) -> Tally:
    P, N, _ = sample_tallies(rng, 1, m, distribution)
    return Tally(default_names(m), P[0], N[0])


# --------------------------------------------------------------------------
# Correlation experiment


def metric_admissible(kind: MetricKind, m: int) -> bool:
    if isinstance(kind, RationalCB):
        return is_admissible_closed(kind.c, kind.b, m)
    return kind.admissible_form


@dataclass(frozen=True)
class SimConfig:
    m: int
    trials: int
    seed: int = 0
    distribution: object = Uniform()
    metrics: tuple = TABLE1_METRICS
    variant: str = S
    qualified_only: bool = True
    force: bool = False

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ValueError(f"m must be an integer >= 2, got {self.m}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if not self.metrics:
            raise ValueError("at least one metric is required")
        object.__setattr__(self, "metrics", tuple(self.metrics))

    def non_admissible(self) -> list[MetricKind]:
        return [k for k in self.metrics if not metric_admissible(k, self.m)]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "distribution": str(self.distribution),
            "metrics": [k.label for k in self.metrics],
            "variant": self.variant,
            "qualified_only": self.qualified_only,
        }


@dataclass(frozen=True)
class CorrelationReport:
    config: SimConfig
    matches: tuple[int, ...]
    rejected: int = 0

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(k.label for k in self.config.metrics)

    @property
    def trials(self) -> int:
        return self.config.trials

    @property
    def rates(self) -> dict:
        return {lab: n / self.trials for lab, n in zip(self.labels, self.matches)}

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "seed": self.config.seed,
            "trials": self.trials,
            "rejected_draws": self.rejected,
            "metrics": [
                {"metric": lab, "matches": n, "trials": self.trials, "rate": n / self.trials}
                for lab, n in zip(self.labels, self.matches)
            ],
        }


def _winner_masks(values: np.ndarray, eligible: np.ndarray) -> np.ndarray:
    v = np.where(eligible, values, -np.inf)
    v = np.where(np.isnan(v), -np.inf, v)
    best = v.max(axis=1, keepdims=True)
    return eligible & (v >= best - TIE_TOL)


def _run_block(config: SimConfig, block: int):
    start = block * BLOCK_SIZE
    n = min(BLOCK_SIZE, config.trials - start)
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(block,)))
    P, N, rejected = sample_tallies(rng, n, config.m, config.distribution)
    qual = N <= P
    if config.variant == SBAR:
        sat = satisfaction_bar_all(P, N)
    else:
        sat = satisfaction_all(P, N)
    sat_mask = _winner_masks(sat, qual if config.qualified_only else np.ones_like(qual))
    with np.errstate(all="ignore"):
        counts = [
            int((_winner_masks(np.asarray(kind(P, N)), qual) & sat_mask).any(axis=1).sum())
            for kind in config.metrics
        ]
    return np.array(counts, dtype=np.int64), rejected


def n_blocks(trials: int) -> int:
    return -(-trials // BLOCK_SIZE)


def correlation_experiment(config: SimConfig, workers: int = 1) -> CorrelationReport:
    """Fraction of random elections where each metric picks a satisfaction maximizer.

    Both argmaxes run over qualified candidates (the satisfaction one over
    everybody when ``qualified_only`` is False).  A trial counts as a match
    when the metric's winner set and the satisfaction winner set intersect.
    """
    bad = config.non_admissible()
    if bad and not config.force:
        raise NonAdmissibleMetric(
            f"metrics not admissible for m={config.m}: "
            + ", ".join(k.label for k in bad)
            + " (set force=True to run anyway)"
        )
    blocks = range(n_blocks(config.trials))
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_block, [config] * len(blocks), blocks))
    else:
        parts = [_run_block(config, k) for k in blocks]
    matches = sum((p[0] for p in parts), np.zeros(len(config.metrics), dtype=np.int64))
    rejected = sum(p[1] for p in parts)
    log.debug("m=%d trials=%d rejected=%d", config.m, config.trials, rejected)
    return CorrelationReport(config, tuple(int(x) for x in matches), int(rejected))


def table_sweep(ms: Sequence[int] = TABLE1_M, trials: int = 1_000_000, seed: int = 0,
                metrics=TABLE1_METRICS, variant: str = S, distribution=Uniform(),
                force: bool = False, workers: int = 1) -> list[CorrelationReport]:
    """One report per candidate count, shaped like a table of rates."""
    return [
        correlation_experiment(
            SimConfig(m, trials, seed, distribution, tuple(metrics), variant, force=force),
            workers=workers,
        )
        for m in ms
    ]


def sweep_rows(reports: Sequence[CorrelationReport]) -> tuple[list[str], list[list]]:
    header = ["m", *reports[0].labels]
    rows = [[r.config.m, *r.rates.values()] for r in reports]
    return header, rows


# --------------------------------------------------------------------------
# Monotonicity counterexamples


@dataclass(frozen=True)
class MonotonicityCounterexample:
    """Raising the winner on one ballot (paid for by softening a negative vote
    against ``rival``) hands the election to ``rival``."""

    metric: RationalCB
    before: Election
    after: Election
    ballot_index: int
    winner: str
    rival: str
    delta: float

    def verify(self) -> bool:
        old = pick_winner(aggregate(self.before), self.metric)
        new = pick_winner(aggregate(self.after), self.metric)
        b0 = self.before.ballots[self.ballot_index].scores
        b1 = self.after.ballots[self.ballot_index].scores
        w_i = self.before.index(self.winner)
        r_i = self.before.index(self.rival)
        return (
            old.name == self.winner
            and new.name == self.rival
            and b1[w_i] == b0[w_i] + self.delta and b0[w_i] >= 0
            and b1[r_i] == b0[r_i] + self.delta and b1[r_i] <= 0
            and all(b0[k] == b1[k] for k in range(len(b0)) if k not in (w_i, r_i))
        )

    def to_dict(self) -> dict:
        return {
            "metric": self.metric.label,
            "winner": self.winner,
            "rival": self.rival,
            "ballot_index": self.ballot_index,
            "delta": self.delta,
            "before": _election_dict(self.before),
            "after": _election_dict(self.after),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _election_dict(e: Election) -> dict:
    return {"candidates": list(e.candidates),
            "ballots": [list(b.scores) for b in e.ballots], "norm": e.norm}


def _random_ballots(rng, voters: int, m: int, norm: int) -> np.ndarray:
    mags = rng.multinomial(norm, np.full(m, 1.0 / m), size=voters).astype(float)
    signs = rng.choice((-1.0, 1.0), size=(voters, m))
    return mags * signs


def monotonicity_search(c: float, b: float, m: int, trials: int, seed: int = 0,
                        norm: int = int(DEFAULT_NORM), max_voters: int = 7):
    """Look for an election where strengthening the winner makes a rival win.

    Each trial draws an integer-valued strict election with 2..``max_voters``
    voters.  For every ballot that does not vote against the winner, every
    rival voted against on that ballot and every integer shift ``delta`` up to
    the size of that negative vote, the winner's score is raised by ``delta``
    and the rival's negative vote is reduced by ``delta`` (the norm is kept).
    Returns the first case where the rival becomes the sole winner, or
    ``None`` after ``trials`` elections.
    """
    if m < 3:
        raise ValueError("monotonicity search needs m >= 3")
    metric = RationalCB(c=c, b=b)
    names = default_names(m)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        voters = int(rng.integers(2, max_voters + 1))
        ballots = _random_ballots(rng, voters, m, norm)
        P = np.clip(ballots, 0, None).sum(axis=0)
        N = np.clip(-ballots, 0, None).sum(axis=0)
        try:
            base = pick_winner(Tally(names, P, N), metric)
        except NoQualifiedCandidate:
            continue
        if base.winner is None:
            continue
        win = base.winner
        for i in range(voters):
            if ballots[i, win] < 0:
                continue
            for r in np.flatnonzero(ballots[i] < 0):
                for delta in range(1, int(-ballots[i, r]) + 1):
                    P2, N2 = P.copy(), N.copy()
                    P2[win] += delta
                    N2[r] -= delta
                    new = pick_winner(Tally(names, P2, N2), metric)
                    if new.winner != r:
                        continue
                    after = ballots.copy()
                    after[i, win] += delta
                    after[i, r] += delta
                    return MonotonicityCounterexample(
                        metric,
                        Election(names, tuple(map(tuple, ballots)), norm),
                        Election(names, tuple(map(tuple, after)), norm),
                        i, names[win], names[int(r)], float(delta),
                    )
    return None
