"""Ballots, elections and the per-candidate positive/negative tallies.

A normed negative ballot assigns every candidate a signed score and the
magnitudes of the scores add up to a fixed norm (10 by default), so each
voter carries the same total weight.  Aggregating an election gives, per
candidate, the total positive votes ``P`` and the total negative votes ``N``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyBallot,
    InvalidElection,
    LenientNormWarning,
    NormViolation,
    UnknownCandidate,
)

DEFAULT_NORM = 10.0
NORM_TOL = 1e-9

STRICT = "strict"
LENIENT = "lenient"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Ballot:
    """One voter's signed scores, one entry per candidate.

    A positive entry is a positive vote ``p`` for that candidate, a negative
    entry is a negative vote of magnitude ``n``; zero means neither.
    """

    scores: tuple[float, ...]

    def __init__(self, scores: Iterable[float]):
        object.__setattr__(self, "scores", tuple(float(s) for s in scores))

    def __len__(self) -> int:
        return len(self.scores)

    @property
    def positive(self) -> np.ndarray:
        return np.clip(np.asarray(self.scores), 0.0, None)

    @property
    def negative(self) -> np.ndarray:
        return np.clip(-np.asarray(self.scores), 0.0, None)

    @property
    def magnitude(self) -> float:
        return math.fsum(abs(s) for s in self.scores)


@dataclass(frozen=True)
class NormReport:
    """Outcome of a norm check; ``ok`` is False only in lenient mode."""

    ok: bool
    actual_sum: float
    norm: float

    @property
    def deviation(self) -> float:
        return self.actual_sum - self.norm


def validate_ballot(ballot, norm: float = DEFAULT_NORM, mode: str = STRICT,
                    index: int | None = None) -> NormReport:
    """Check that a ballot's magnitudes sum to ``norm``.

    In strict mode a violation raises :class:`NormViolation`; in lenient mode
    it is reported (and warned about) but accepted.
    """
    scores = ballot.scores if isinstance(ballot, Ballot) else tuple(ballot)
    if len(scores) == 0:
        raise EmptyBallot("ballot has no entries")
    if mode not in (STRICT, LENIENT):
        raise ValueError(f"unknown validation mode {mode!r}")
    total = math.fsum(abs(float(s)) for s in scores)
    if abs(total - norm) <= NORM_TOL:
        return NormReport(True, total, norm)
    if mode == STRICT:
        raise NormViolation(total, norm, index)
    where = "" if index is None else f"ballot {index}: "
    warnings.warn(
        f"{where}magnitudes sum to {total:g}, not {norm:g} (accepted, lenient mode)",
        LenientNormWarning,
        stacklevel=2,
    )
    return NormReport(False, total, norm)


@dataclass(frozen=True)
class Election:
    """Candidate roster, ballots and norm.

    Ballots are validated on construction according to ``mode``.
    """

    candidates: tuple[str, ...]
    ballots: tuple[Ballot, ...] = ()
    norm: float = DEFAULT_NORM
    mode: str = STRICT
    reports: tuple[NormReport, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        cands = tuple(str(c) for c in self.candidates)
        if not cands:
            raise InvalidElection("an election needs at least one candidate")
        if len(set(cands)) != len(cands):
            raise InvalidElection("candidate names must be unique")
        if not self.norm > 0:
            raise InvalidElection(f"norm must be positive, got {self.norm}")
        ballots = tuple(b if isinstance(b, Ballot) else Ballot(b) for b in self.ballots)
        for i, b in enumerate(ballots):
            if len(b) != len(cands):
                raise InvalidElection(
                    f"ballot {i} has {len(b)} entries, expected {len(cands)}"
                )
        reports = tuple(
            validate_ballot(b, self.norm, self.mode, index=i)
            for i, b in enumerate(ballots)
        )
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "ballots", ballots)
        object.__setattr__(self, "norm", float(self.norm))
        object.__setattr__(self, "reports", reports)

    @property
    def m(self) -> int:
        return len(self.candidates)

    def index(self, candidate) -> int:
        return _resolve(self.candidates, candidate)

    def scores(self) -> np.ndarray:
        """Ballots as a ``(voters, m)`` array."""
        if not self.ballots:
            return np.zeros((0, self.m))
        return np.array([b.scores for b in self.ballots], dtype=float)

    def with_ballots(self, ballots) -> "Election":
        return Election(self.candidates, tuple(ballots), self.norm, self.mode)


def _resolve(candidates: Sequence[str], candidate) -> int:
    if isinstance(candidate, (int, np.integer)) and not isinstance(candidate, bool):
        idx = int(candidate)
        if 0 <= idx < len(candidates):
            return idx
        raise UnknownCandidate(f"candidate index {idx} out of range 0..{len(candidates) - 1}")
    try:
        return list(candidates).index(candidate)
    except ValueError:
        raise UnknownCandidate(f"unknown candidate {candidate!r}") from None


# --------------------------------------------------------------------------
# Per-candidate quantities.  All accept scalars or numpy arrays.


def popularity(P, N):
    """Net support ``P - N``."""
    return P - N


def polarity(P, N):
    """``N / P``; 0 when both are zero and ``inf`` when only ``P`` is zero."""
    P_ = np.asarray(P, dtype=float)
    N_ = np.asarray(N, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        out = np.where(P_ > 0, N_ / np.where(P_ > 0, P_, 1.0),
                       np.where(N_ > 0, np.inf, 0.0))
    return float(out) if out.ndim == 0 else out


def qualified(P, N):
    """A candidate may win only with polarity at most 1, i.e. ``N <= P``."""
    out = np.asarray(N) <= np.asarray(P)
    return bool(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class Tally:
    """Aggregated positive (``P``) and negative (``N``) votes per candidate."""

    candidates: tuple[str, ...]
    P: np.ndarray
    N: np.ndarray

    def __post_init__(self):
        P = _frozen(self.P)
        N = _frozen(self.N)
        cands = tuple(str(c) for c in self.candidates)
        if P.shape != (len(cands),) or N.shape != (len(cands),):
            raise InvalidElection("P and N must have one entry per candidate")
        if (P < 0).any() or (N < 0).any():
            raise ValueError("P and N must be non-negative")
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "N", N)

    def __eq__(self, other):
        if not isinstance(other, Tally):
            return NotImplemented
        return (self.candidates == other.candidates
                and np.array_equal(self.P, other.P)
                and np.array_equal(self.N, other.N))

    __hash__ = None

    @classmethod
    def from_arrays(cls, P, N, candidates=None) -> "Tally":
        P = np.asarray(P, dtype=float)
        if candidates is None:
            candidates = default_names(len(P))
        return cls(tuple(candidates), P, np.asarray(N, dtype=float))

    @property
    def m(self) -> int:
        return len(self.candidates)

    def index(self, candidate) -> int:
        return _resolve(self.candidates, candidate)

    @property
    def popularity(self) -> np.ndarray:
        return self.P - self.N

    @property
    def polarity(self) -> np.ndarray:
        return polarity(self.P, self.N)

    @property
    def qualified(self) -> np.ndarray:
        return qualified(self.P, self.N)

    def __add__(self, other: "Tally") -> "Tally":
        if self.candidates != other.candidates:
            raise InvalidElection("cannot add tallies over different rosters")
        return Tally(self.candidates, self.P + other.P, self.N + other.N)

    def rows(self) -> list[dict]:
        pol = self.polarity
        return [
            {
                "name": name,
                "P": float(self.P[i]),
                "N": float(self.N[i]),
                "popularity": float(self.P[i] - self.N[i]),
                "polarity": None if math.isinf(pol[i]) else float(pol[i]),
                "qualified": bool(self.N[i] <= self.P[i]),
            }
            for i, name in enumerate(self.candidates)
        ]


def default_names(m: int) -> tuple[str, ...]:
    """``A, B, ..., Z, C26, C27, ...``"""
    return tuple(chr(ord("A") + i) if i < 26 else f"C{i}" for i in range(m))


def aggregate(election: Election) -> Tally:
    """Sum positive and negative votes per candidate."""
    scores = election.scores()
    P = np.clip(scores, 0.0, None).sum(axis=0)
    N = np.clip(-scores, 0.0, None).sum(axis=0)
    return Tally(election.candidates, P, N)


# --------------------------------------------------------------------------
# File formats

TALLY_FIELDS = ("name", "P", "N", "popularity", "polarity", "qualified")


def election_from_dict(data: dict, mode: str = STRICT) -> Election:
    if not isinstance(data, dict):
        raise InvalidElection("election JSON must be an object")
    try:
        candidates = data["candidates"]
    except KeyError:
        raise InvalidElection("missing key 'candidates'") from None
    ballots = data.get("ballots", [])
    norm = data.get("norm", DEFAULT_NORM)
    if not isinstance(candidates, list) or not all(isinstance(c, str) for c in candidates):
        raise InvalidElection("'candidates' must be an array of strings")
    if not isinstance(ballots, list):
        raise InvalidElection("'ballots' must be an array")
    for i, b in enumerate(ballots):
        if not isinstance(b, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in b
        ):
            raise InvalidElection(f"ballot {i} must be an array of numbers")
    if isinstance(norm, bool) or not isinstance(norm, (int, float)):
        raise InvalidElection("'norm' must be a number")
    return Election(tuple(candidates), tuple(Ballot(b) for b in ballots), norm, mode)


def election_to_dict(election: Election) -> dict:
    return {
        "candidates": list(election.candidates),
        "ballots": [list(b.scores) for b in election.ballots],
        "norm": election.norm,
    }


def load_election(path, mode: str = STRICT) -> Election:
    """Read an election JSON file.

    Raises ``json.JSONDecodeError`` (with line/column) on malformed JSON,
    :class:`InvalidElection` on schema problems and :class:`NormViolation`
    in strict mode.
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return election_from_dict(data, mode)


def tally_to_json(tally: Tally, **kwargs) -> str:
    return json.dumps(tally.rows(), **kwargs)


def tally_to_csv(tally: Tally) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TALLY_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in tally.rows():
        row = dict(row)
        row["polarity"] = "inf" if row["polarity"] is None else repr(row["polarity"])
        row["P"], row["N"], row["popularity"] = (repr(row[k]) for k in ("P", "N", "popularity"))
        writer.writerow(row)
    return buf.getvalue()
