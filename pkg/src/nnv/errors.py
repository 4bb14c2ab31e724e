"""Exception and warning types raised across the package."""


class NNVError(Exception):
    """Base class for all errors raised by :mod:`nnv`."""


class EmptyBallot(NNVError):
    """A ballot with no candidate entries."""


class NormViolation(NNVError):
    """A ballot whose magnitudes do not sum to the election norm."""

    def __init__(self, actual_sum, norm, ballot_index=None):
        self.actual_sum = actual_sum
        self.norm = norm
        self.ballot_index = ballot_index
        where = "" if ballot_index is None else f"ballot {ballot_index}: "
        super().__init__(
            f"{where}magnitudes sum to {actual_sum:g}, expected norm {norm:g}"
        )


class InvalidElection(NNVError):
    """Structural problem with an election (ragged ballots, duplicate names...)."""


class UnknownCandidate(NNVError, KeyError):
    """Candidate name or index not present in the roster."""

    def __str__(self):
        return Exception.__str__(self)


class NoQualifiedCandidate(NNVError):
    """Every candidate has polarity above 1, so nobody can win."""


class TiedScores(NNVError):
    """Two candidates received equal scores on a ballot, so ranks are undefined."""

    def __init__(self, first, second, voter=None):
        self.pair = (first, second)
        self.voter = voter
        where = "" if voter is None else f"voter {voter}: "
        super().__init__(
            f"{where}candidates {first} and {second} have equal scores"
        )


class NonAdmissibleMetric(NNVError):
    """A metric outside the no-over-penalization region was requested."""


class NonAdmissibleFormWarning(UserWarning):
    """Emitted when evaluating a metric form that is not linear in popularity."""


class LenientNormWarning(UserWarning):
    """Emitted when a norm violation is accepted in lenient mode."""
