"""
Monotonicity can fail for a single election
===========================================

Raising the winner on one ballot must be paid for by taking votes from
somebody else.  If that softens a negative vote on a rival, the rival's
metric can jump past the winner's once c + b > 1.
"""

from nnv import aggregate, monotonicity_search, pick_winner

found = monotonicity_search(c=1, b=1, m=3, trials=10_000, seed=0)
print(found.to_json(indent=2))
print("verified:", found.verify())
for label, election in (("before", found.before), ("after", found.after)):
    r = pick_winner(aggregate(election), found.metric)
    print(label, dict(zip(election.candidates, r.values.round(3).tolist())), "->", r.name)

###############################################################################
# Plain popularity moves the winner and the rival by the same amount, so
# the same search comes back empty.

print(monotonicity_search(c=1, b=0, m=3, trials=2_000, seed=0))
