"""
Same ranks, different preferences
=================================

Elections 1 and 2 induce identical rankings, so Borda, Condorcet and
instant runoff cannot tell them apart.  The signed votes can.
"""

import warnings
from pathlib import Path

from nnv import compare_methods, load_election

FIXTURES = Path(__file__).parents[1] / "fixtures"
warnings.simplefilter("ignore")  # voter 1 of both fixtures spends only 9 units

for name in ("election1", "election2"):
    election = load_election(FIXTURES / f"{name}.json", mode="lenient")
    print(f"--- {name}")
    print(compare_methods(election).to_table())
