"""
How hard may polarity be penalized?
===================================

A full +10 for A from one voter must not be overturned by another voter's
negative vote on A.  With m candidates this bounds the polarity penalty b
for each negative-vote weight c.  The boundary curves are computed by
bisection; matplotlib is only needed for the figure.
"""

from nnv import is_admissible, two_voter_override_check
from nnv.metrics import region_curve

print("(c=1, b=1) admissible for m=2?", is_admissible(1, 1, 2))
print("(c=1, b=1) admissible for m=3?", is_admissible(1, 1, 3))

###############################################################################
# Two voters, two candidates: with c + b > 1 voter 2 can hand B the win.

for c, b in [(1, 0), (1, 1)]:
    r = two_voter_override_check(c, b, X=5)
    print(f"c={c} b={b}: A={r.A_metric:.2f}  B={r.B_metric:.2f}  B wins: {r.B_wins}")

###############################################################################
# Maximal-penalty curves for m = 2..5.

curves = {m: region_curve(m, c_step=0.02) for m in (2, 3, 4, 5)}
for m, rows in curves.items():
    print(m, [round(b, 3) for _, c, b in rows if c in (0.0, 0.5, 1.0)])

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    for m, rows in curves.items():
        ax.plot([r[1] for r in rows], [r[2] for r in rows], label=f"m={m}")
    ax.set_xlabel("c")
    ax.set_ylabel("b_max")
    ax.set_ylim(0, 4)
    ax.legend()
    fig.savefig("max_penalty.png", dpi=120)
