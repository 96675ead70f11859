"""
==============================
Kemeny aggregation of votes
==============================

Turn a vote profile into a weighted tournament and aggregate exactly.
"""

# %%
# A small election
# ----------------

from fractions import Fraction
from itertools import permutations

from rankfpt import Ranking
from rankfpt.formats import parse_votes
from rankfpt.kra import aggregate, avg_kt, reduce_to_fast

P = parse_votes("""
alice bob carol dave
bob alice dave carol
alice carol bob dave
carol alice bob dave
bob alice carol dave
""")
print(P)

# %%
# Pairwise majorities
# -------------------
#
# ``w[u][v]`` counts the voters who put u ahead of v; the denominator is
# the number of votes.

T = reduce_to_fast(P)
print(T.weights)

# %%
# The Kemeny ranking
# ------------------

rep = aggregate(P)
print(" > ".join(rep.ranking_names()))
print("summed distance", rep.cost, " average", Fraction(rep.cost, rep.denom))

# %%
# Check by brute force over all 24 rankings.

best = min(avg_kt(P, Ranking(p)) for p in permutations(range(4)))
assert best == rep.cost
