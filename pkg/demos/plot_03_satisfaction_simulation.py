"""
Which metric best tracks voter satisfaction?
============================================

Satisfaction credits a voter for positive votes on the winner and for
negative votes on every loser.  We draw random (P, N) tallies and count how
often each metric's winner also maximizes satisfaction.
"""

from pathlib import Path

from nnv import SimConfig, aggregate, correlation_experiment, load_election
from nnv.montecarlo import sweep_rows, table_sweep
from nnv.satisfaction import SBAR, max_satisfaction_winner

e0 = aggregate(load_election(Path(__file__).parents[1] / "fixtures" / "election0.json"))
print("satisfaction winner of election 0:", max_satisfaction_winner(e0).name)

###############################################################################
# A modest sweep (raise ``trials`` to 1_000_000 for stable third decimals).
# W_2^1 is outside the admissible region at m = 3, hence ``force``.

reports = table_sweep(ms=(3, 4, 5, 8, 20), trials=100_000, seed=1, force=True)
header, rows = sweep_rows(reports)
print(" ".join(f"{h:>10}" for h in header))
for row in rows:
    print(" ".join(f"{row[0]:>10}" if i == 0 else f"{v:>10.3f}" for i, v in enumerate(row)))

###############################################################################
# Subtracting the losers' positive votes (``SBar``) makes plain popularity a
# perfect predictor.

rep = correlation_experiment(SimConfig(5, 50_000, seed=2, metrics=reports[0].config.metrics[:1],
                                       variant=SBAR))
print(rep.rates)
