"""Normed negative voting.

Voters split a fixed norm of signed votes across candidates; the winner
maximizes a metric that rewards popularity (``P - N``) and penalizes
polarity (``N / P``).
"""

from .ballot import (
    Ballot,
    Election,
    NormReport,
    Tally,
    aggregate,
    load_election,
    polarity,
    popularity,
    qualified,
    validate_ballot,
)
from .errors import (
    EmptyBallot,
    InvalidElection,
    LenientNormWarning,
    NNVError,
    NoQualifiedCandidate,
    NonAdmissibleFormWarning,
    NonAdmissibleMetric,
    NormViolation,
    TiedScores,
    UnknownCandidate,
)
from .metrics import (
    ExpPolarity,
    MetricParams,
    PowerForm,
    RationalCB,
    SquareOverSum,
    alt_metric,
    is_admissible,
    max_penalty_boundary,
    pick_winner,
    scale_linearity_check,
    two_voter_override_check,
    w,
    winning_metric,
)
from .montecarlo import (
    CorrelationReport,
    SimConfig,
    correlation_experiment,
    monotonicity_search,
    random_tally,
)
from .ranked import (
    approval_to_nnv,
    borda,
    compare_methods,
    condorcet,
    instant_runoff,
    to_ranks,
)
from .satisfaction import (
    max_satisfaction_winner,
    satisfaction,
    satisfaction_bar,
    satisfaction_per_voter,
)
from .selection import WinnerResult

__version__ = "0.1.0"

__all__ = [
    "Ballot",
    "CorrelationReport",
    "Election",
    "EmptyBallot",
    "ExpPolarity",
    "InvalidElection",
    "LenientNormWarning",
    "MetricParams",
    "NNVError",
    "NoQualifiedCandidate",
    "NonAdmissibleFormWarning",
    "NonAdmissibleMetric",
    "NormReport",
    "NormViolation",
    "PowerForm",
    "RationalCB",
    "SimConfig",
    "SquareOverSum",
    "Tally",
    "TiedScores",
    "UnknownCandidate",
    "WinnerResult",
    "aggregate",
    "alt_metric",
    "approval_to_nnv",
    "borda",
    "compare_methods",
    "condorcet",
    "correlation_experiment",
    "instant_runoff",
    "is_admissible",
    "load_election",
    "max_penalty_boundary",
    "max_satisfaction_winner",
    "monotonicity_search",
    "pick_winner",
    "polarity",
    "popularity",
    "qualified",
    "random_tally",
    "satisfaction",
    "satisfaction_bar",
    "satisfaction_per_voter",
    "scale_linearity_check",
    "to_ranks",
    "two_voter_override_check",
    "validate_ballot",
    "w",
    "winning_metric",
    "__version__",
]
