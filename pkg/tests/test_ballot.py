import json
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nnv import (
    Ballot,
    Election,
    EmptyBallot,
    InvalidElection,
    LenientNormWarning,
    NormViolation,
    Tally,
    aggregate,
    polarity,
    popularity,
    qualified,
    validate_ballot,
)
from nnv.ballot import LENIENT, election_from_dict, tally_to_csv, tally_to_json


@pytest.mark.parametrize("scores", [(7, -1, -2), (3, 2, -5), (10, 0, 0), (-10, 0, 0)])
def test_validate_ok(scores):
    assert validate_ballot(scores).ok


def test_validate_election1_voter1_strict_and_lenient():
    with pytest.raises(NormViolation) as info:
        validate_ballot((5, 2, 1, -1))
    assert info.value.actual_sum == 9
    with pytest.warns(LenientNormWarning):
        report = validate_ballot((5, 2, 1, -1), mode=LENIENT)
    assert not report.ok and report.deviation == -1


def test_validate_empty():
    with pytest.raises(EmptyBallot):
        validate_ballot(())


def test_validate_tolerance():
    assert validate_ballot((10 / 3, 10 / 3, -10 / 3)).ok
    with pytest.raises(NormViolation):
        validate_ballot((5, 5 + 1e-6))


def test_election_names_ballot_index():
    with pytest.raises(NormViolation) as info:
        Election(("A", "B"), ((5, 5), (4, 4)))
    assert info.value.ballot_index == 1


@pytest.mark.parametrize("kwargs", [
    dict(candidates=()),
    dict(candidates=("A", "A")),
    dict(candidates=("A", "B"), ballots=((10,),)),
    dict(candidates=("A",), norm=0),
])
def test_election_structure(kwargs):
    with pytest.raises(InvalidElection):
        Election(**kwargs)


def test_aggregate_worked_table():
    t = aggregate(Election(("A", "B", "C"), ((10, 0, 0), (-5, 4, 1))))
    assert t.P.tolist() == [10, 4, 1]
    assert t.N.tolist() == [5, 0, 0]


def test_aggregate_empty():
    t = aggregate(Election(("A", "B", "C")))
    assert t.P.tolist() == [0, 0, 0] and t.N.tolist() == [0, 0, 0]
    assert t.qualified.all()


def test_aggregate_election2(election2):
    t = aggregate(election2)
    assert list(zip(t.P, t.N)) == [(8, 1), (6, 0), (2, 2), (9, 1)]
    assert t.popularity.tolist() == [7, 6, 0, 8]


def test_popularity_polarity_qualified_examples():
    assert popularity(10, 5) == 5 and popularity(0, 0) == 0 and popularity(6, 1) == 5
    assert polarity(10, 5) == 0.5
    assert polarity(0, 0) == 0
    assert math.isinf(polarity(0, 3)) and not qualified(0, 3)
    assert qualified(11, 5) and qualified(4, 4) and not qualified(3, 4)
    assert qualified(0, 0)


def test_tally_is_immutable():
    t = Tally.from_arrays([1, 2], [0, 1])
    with pytest.raises(ValueError):
        t.P[0] = 5


def test_json_and_csv_rows():
    t = Tally.from_arrays([10, 0], [5, 3])
    rows = json.loads(tally_to_json(t))
    assert rows[0] == {"name": "A", "P": 10.0, "N": 5.0, "popularity": 5.0,
                       "polarity": 0.5, "qualified": True}
    assert rows[1]["polarity"] is None and rows[1]["qualified"] is False
    lines = tally_to_csv(t).splitlines()
    assert lines[0] == "name,P,N,popularity,polarity,qualified"
    assert lines[2] == "B,0.0,3.0,-3.0,inf,False"


def test_election_from_dict_errors():
    with pytest.raises(InvalidElection):
        election_from_dict({"ballots": []})
    with pytest.raises(InvalidElection):
        election_from_dict({"candidates": ["A"], "ballots": [["x"]]})
    e = election_from_dict({"candidates": ["A", "B"], "ballots": [[4, -6]], "norm": 10})
    assert e.m == 2 and e.norm == 10


# -- properties --------------------------------------------------------------

def nnv_ballots(m, norm=10.0):
    weights = st.lists(st.integers(0, 20), min_size=m, max_size=m).filter(any)
    signs = st.lists(st.sampled_from((-1.0, 1.0)), min_size=m, max_size=m)

    def build(ws, ss):
        total = sum(ws)
        return tuple(s * norm * wt / total for wt, s in zip(ws, ss))

    return st.builds(build, weights, signs)


elections = st.integers(1, 5).flatmap(
    lambda m: st.lists(nnv_ballots(m), max_size=8).map(
        lambda bs: Election(tuple(f"c{i}" for i in range(m)), tuple(bs))
    )
)


@given(elections)
def test_strict_ballots_hit_the_norm(e):
    for b in e.ballots:
        assert abs(b.magnitude - e.norm) <= 1e-9


@given(elections, st.data())
def test_aggregate_is_linear_and_monotone(e, data):
    k = data.draw(st.integers(0, len(e.ballots)))
    first, second = e.with_ballots(e.ballots[:k]), e.with_ballots(e.ballots[k:])
    whole = aggregate(e)
    summed = aggregate(first) + aggregate(second)
    np.testing.assert_allclose(whole.P, summed.P, atol=1e-9)
    np.testing.assert_allclose(whole.N, summed.N, atol=1e-9)
    assert (aggregate(first).P <= whole.P + 1e-12).all()
    assert (aggregate(first).N <= whole.N + 1e-12).all()


@given(st.floats(0, 1e6), st.floats(0, 1e6), st.floats(1e-3, 1e3))
def test_popularity_antisymmetric_polarity_scale_free(P, N, k):
    assert popularity(P, N) == -popularity(N, P)
    if P > 0:
        assert math.isclose(polarity(k * P, k * N), polarity(P, N), rel_tol=1e-12)


def test_lenient_election_keeps_reports():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        e = Election(("A", "B"), ((5, 4), (10, 0)), mode=LENIENT)
    assert [r.ok for r in e.reports] == [False, True]


def test_ballot_parts():
    b = Ballot((7, -1, -2))
    assert b.positive.tolist() == [7, 0, 0]
    assert b.negative.tolist() == [0, 1, 2]
