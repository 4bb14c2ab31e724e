"""Winning metrics and the over-penalization analysis.

The main family is

    W(P, N) = (P - c N) / (1 + b N / P)

where ``c`` weighs negative votes against positive ones and ``b`` penalizes
polarity.  Notation used throughout: ``W_b^c``, so ``w(b=1, c=1)`` is the
``W_1^1`` metric and ``w(b=0, c=1)`` is plain popularity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .ballot import Tally
from .errors import NonAdmissibleFormWarning
from .selection import REPORT, WinnerResult, select_winner

ADMISSIBLE_TOL = 1e-9
DEFAULT_GRID_STEP = 1e-4


@dataclass(frozen=True)
class MetricParams:
    """Weights ``c`` (negative votes) and ``b`` (polarity penalty)."""

    c: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.c <= 1.0):
            raise ValueError(f"c must lie in [0, 1], got {self.c}")
        if not self.b >= 0.0:
            raise ValueError(f"b must be non-negative, got {self.b}")


def _as_float_arrays(P, N):
    return np.asarray(P, dtype=float), np.asarray(N, dtype=float)


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


def winning_metric(P, N, params: MetricParams):
    """Evaluate ``(P - cN) / (1 + b N/P)``.

    Degenerate inputs are defined by continuity: ``N = 0`` gives ``P``
    (so ``P = N = 0`` gives 0), and ``P = 0 < N`` gives the limit as
    ``P -> 0+``, which is 0 for ``b > 0`` and ``-cN`` for ``b = 0``.
    Disqualified candidates still get a (diagnostic) value.
    """
    P, N = _as_float_arrays(P, N)
    c, b = params.c, params.b
    with np.errstate(divide="ignore", invalid="ignore"):
        # (P - cN) P / (P + bN) is the same expression with no division by P.
        denom = P + b * N
        regular = (P - c * N) * P / np.where(denom > 0, denom, 1.0)
    at_zero_p = np.where(b > 0, 0.0, -c * N)
    out = np.where(P > 0, regular, at_zero_p)
    out = np.where(N == 0, P, out)
    return _scalar_or_array(out)


class MetricKind:
    """A winning-metric functional form, callable on ``(P, N)``."""

    admissible_form = True
    label = ""

    def __call__(self, P, N):
        raise NotImplementedError

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class RationalCB(MetricKind):
    c: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        MetricParams(self.c, self.b)

    @property
    def params(self) -> MetricParams:
        return MetricParams(self.c, self.b)

    @property
    def label(self) -> str:
        return f"W_{self.b:g}^{self.c:g}"

    def __call__(self, P, N):
        return winning_metric(P, N, self.params)


def w(b: float, c: float) -> RationalCB:
    """``W_b^c``: subscript (polarity penalty ``b``) first, as in the flag grammar."""
    return RationalCB(c=c, b=b)


def _alt_degenerate(P, N, regular):
    # P = N = 0 -> 0; P = 0 < N is outside the domain -> nan.
    out = np.where(P > 0, regular, np.where(N > 0, np.nan, 0.0))
    return _scalar_or_array(out)


@dataclass(frozen=True)
class ExpPolarity(MetricKind):
    label = "exp"

    def __call__(self, P, N):
        P, N = _as_float_arrays(P, N)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            regular = (P - N) / np.exp(N / np.where(P > 0, P, 1.0))
        return _alt_degenerate(P, N, regular)


@dataclass(frozen=True)
class SquareOverSum(MetricKind):
    label = "sqsum"

    def __call__(self, P, N):
        P, N = _as_float_arrays(P, N)
        with np.errstate(divide="ignore", invalid="ignore"):
            total = P + N
            regular = (P - N) ** 2 / np.where(total > 0, total, 1.0)
        return _alt_degenerate(P, N, regular)


@dataclass(frozen=True)
class PowerForm(MetricKind):
    """``(P - N) ** (1 - N/P)``: not linear in popularity, hence not admissible."""

    label = "power"
    admissible_form = False

    def __call__(self, P, N):
        P, N = _as_float_arrays(P, N)
        with np.errstate(divide="ignore", invalid="ignore"):
            regular = np.power(P - N, 1.0 - N / np.where(P > 0, P, 1.0))
        return _alt_degenerate(P, N, regular)


ALT_FORMS = {"exp": ExpPolarity(), "sqsum": SquareOverSum(), "power": PowerForm()}


def alt_metric(P, N, kind: MetricKind):
    """Evaluate one of the nonlinear alternative forms (or any ``MetricKind``)."""
    if not kind.admissible_form:
        warnings.warn(
            f"metric form {kind.label!r} is not linear in popularity; "
            "its ranking depends on electorate size",
            NonAdmissibleFormWarning,
            stacklevel=2,
        )
    return kind(P, N)


def pick_winner(tally: Tally, kind: MetricKind, tie_rule: str = REPORT) -> WinnerResult:
    """Highest metric value among qualified candidates."""
    values = np.asarray(kind(tally.P, tally.N), dtype=float).reshape(tally.m)
    return select_winner(tally.candidates, values, tally.qualified, tie_rule,
                         label=kind.label)


# --------------------------------------------------------------------------
# Over-penalization constraint
#
# With x = X/10 the fraction of a voter's norm spent as a negative vote on a
# candidate that another voter fully supports, the metric must satisfy
#     m - 2 >= a x - b x^2,   a = (m - 1) c + b - 1,   for all x in [0, 1].


def _penalty_slope(c, b, m):
    return (m - 1) * c + b - 1


def max_override_gap(c: float, b: float, m: int) -> float:
    """``max_{x in [0,1]} (a x - b x^2)`` by vertex analysis."""
    a = _penalty_slope(c, b, m)
    best = max(0.0, a - b)
    if b > 0:
        vertex = a / (2 * b)
        if 0.0 < vertex < 1.0:
            best = max(best, a * a / (4 * b))
    return best


def is_admissible_closed(c: float, b: float, m: int, tol: float = ADMISSIBLE_TOL) -> bool:
    _check_region_args(c, b, m)
    return max_override_gap(c, b, m) <= m - 2 + tol


def is_admissible_grid(c: float, b: float, m: int,
                       grid_step: float = DEFAULT_GRID_STEP) -> bool:
    """Brute-force scan of the constraint on ``x = 0, step, 2 step, ..., 1``."""
    _check_region_args(c, b, m)
    if not grid_step > 0:
        raise ValueError("grid_step must be positive")
    n = int(math.ceil(1.0 / grid_step))
    x = np.minimum(np.arange(n + 1) * grid_step, 1.0)
    a = _penalty_slope(c, b, m)
    return bool(np.all(a * x - b * x * x <= m - 2 + ADMISSIBLE_TOL))


def is_admissible(c: float, b: float, m: int,
                  grid_step: float | None = DEFAULT_GRID_STEP) -> bool:
    """Whether ``W_b^c`` never lets negative votes override a full positive vote.

    The closed form decides.  When ``grid_step`` is given the grid scan is run
    as a cross-check; a disagreement larger than the scan's discretization
    error (at most ``b * step**2 / 4``) raises ``AssertionError``.
    """
    closed = is_admissible_closed(c, b, m)
    if grid_step is not None:
        grid = is_admissible_grid(c, b, m, grid_step)
        excess = max_override_gap(c, b, m) - (m - 2)
        if grid != closed and excess > b * grid_step ** 2 / 4 + ADMISSIBLE_TOL:
            raise AssertionError(
                f"admissibility mismatch at c={c}, b={b}, m={m}: "
                f"closed form {closed}, grid scan {grid}"
            )
    return closed


def _check_region_args(c, b, m):
    if int(m) != m or m < 2:
        raise ValueError(f"m must be an integer >= 2, got {m}")
    if c < 0 or b < 0:
        raise ValueError("c and b must be non-negative")


def max_penalty_boundary(m: int, c: float, tol: float = 1e-6) -> float:
    """Largest ``b`` for which ``(c, b)`` is admissible with ``m`` candidates.

    Bisection on ``b``; admissibility is monotone in ``b`` because the
    constraint's ``b`` term ``b (x - x^2)`` is non-negative on [0, 1].  The
    returned value is the admissible end of the final bracket.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"c must lie in [0, 1], got {c}")

    def ok(b):
        # exact test: any slack on the gap becomes ~sqrt(slack) slack on b
        return is_admissible_closed(c, b, m, tol=0.0)

    if not ok(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while ok(hi):
        lo, hi = hi, hi * 2.0
        if hi > 1e9:
            raise RuntimeError("boundary search diverged")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def c_grid(c_step: float) -> np.ndarray:
    n = int(round(1.0 / c_step))
    cs = np.round(np.arange(n + 1) * c_step, 12)
    return cs[cs <= 1.0]


def region_curve(m: int, c_step: float = 0.01, tol: float = 1e-6) -> list[tuple[int, float, float]]:
    """``(m, c, b_max)`` samples of the maximal-penalty curve."""
    return [(int(m), float(c), max_penalty_boundary(m, c, tol)) for c in c_grid(c_step)]


# --------------------------------------------------------------------------
# Worked checks


@dataclass(frozen=True)
class OverrideCheck:
    A_metric: float
    B_metric: float
    B_wins: bool


def two_voter_override_check(c: float, b: float, X: float) -> OverrideCheck:
    """Voter 1 gives A +10; voter 2 gives A -X and B +(10 - X).  Can B win?"""
    if not 0.0 <= X <= 10.0:
        raise ValueError("X must lie in [0, 10]")
    a_metric = 10.0 * (10.0 - c * X) / (10.0 + b * X)
    b_metric = 10.0 - X
    return OverrideCheck(a_metric, b_metric, b_metric - a_metric > ADMISSIBLE_TOL)


@dataclass(frozen=True)
class LinearityReport:
    kind: str
    passed: bool
    samples: int
    worst_relative_error: float
    worst_case: tuple | None = None


def scale_linearity_check(kind: MetricKind, samples: int = 1000,
                          scales=(2, 10, 100), seed: int = 0,
                          rtol: float = 1e-9) -> LinearityReport:
    """Check ``metric(kP, kN) == k * metric(P, N)`` on random qualified tallies."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    P = rng.uniform(0.5, 10.0, samples)
    N = P * rng.uniform(0.0, 1.0, samples)
    base = np.asarray(kind(P, N), dtype=float)
    worst, case = 0.0, None
    for k in scales:
        scaled = np.asarray(kind(k * P, k * N), dtype=float)
        expect = k * base
        err = np.abs(scaled - expect) / np.maximum(np.abs(expect), 1e-300)
        err = np.where(np.isnan(err), np.inf, err)
        i = int(np.argmax(err))
        if err[i] > worst:
            worst = float(err[i])
            case = (float(P[i]), float(N[i]), k)
    return LinearityReport(kind.label, worst <= rtol, samples, worst, case)


def parse_metric(text: str) -> MetricKind:
    """Parse ``w:<b>,<c>`` (subscript ``b`` first) or ``exp``/``sqsum``/``power``."""
    spec = text.strip().lower()
    if spec in ALT_FORMS:
        return ALT_FORMS[spec]
    name, _, args = spec.partition(":")
    if name != "w" or not args:
        raise ValueError(f"bad metric {text!r}: expected w:<b>,<c>, exp, sqsum or power")
    try:
        b, c = (float(x) for x in args.split(","))
    except ValueError:
        raise ValueError(f"bad metric {text!r}: expected w:<b>,<c>") from None
    return w(b=b, c=c)
