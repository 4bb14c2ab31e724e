"""
Ballots, tallies and the winning metric
=======================================

Each voter spreads 10 units of signed votes over the candidates.  Summing
gives every candidate a positive total P and a negative total N.
"""

import numpy as np

from nnv import Election, aggregate, pick_winner, w

election = Election(("A", "B", "C"), ((10, 0, 0), (-5, 4, 1)))
tally = aggregate(election)
for row in tally.rows():
    print(row)

###############################################################################
# ``W_1^1`` trades popularity against polarity: A is the most popular
# candidate but B wins because nobody voted against B.

metric = w(b=1, c=1)
print(np.round(metric(tally.P, tally.N), 2))
print("winner:", pick_winner(tally, metric).name)

###############################################################################
# Plain popularity (``W_0^1``) would have picked A instead.

print("popularity winner:", pick_winner(tally, w(b=0, c=1)).name)
