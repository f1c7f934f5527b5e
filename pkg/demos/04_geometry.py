"""
Covers and blocking sets
========================

Holes of partial covers and the smallest blocking set of a small affine plane.
"""
from itertools import combinations

from afgrid import geometry as G

pg = G.Space("PG", 2, 3)
print("PG(2,3):", len(pg.points), "points,", len(pg.hyperplanes), "lines")

# four lines never cover the 13 points; count what they miss
counts = {}
for combo in combinations(pg.hyperplanes, 4):
    k = len(G.holes(G.CoverSpec(pg, combo)))
    counts[k] = counts.get(k, 0) + 1
print("holes -> number of 4-line families:", dict(sorted(counts.items())))

ag = G.Space("AG", 2, 3)
r = G.min_blocking_search(ag, 5)
print("smallest blocking set of AG(2,3) has", r.size, "points:", r.witness)
print("subsets checked per size:", r.checked)
