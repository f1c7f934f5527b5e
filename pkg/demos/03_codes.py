"""
Evaluation codes on grids
=========================

Minimum distance from the closed formula against an exhaustive search.
"""
from afgrid import codes as C
from afgrid.poly import GridSpec
from afgrid.ring import GF

spec = C.grm(3, 2, 2)
print("GRM of order 2 on GF(3)^2, dimension", C.dimension(spec))
print(C.generator_matrix(spec).to_csv(GF(3)))
r = C.min_weight_bruteforce(spec)
print("search", r.weight, "formula", C.min_weight_formula(spec), "witness", r.witness)

# a rectangular grid inside GF(4)
A = GridSpec.from_lists(GF(4), [[0, 1, 2, 3], [0, 1, 2]])
for d in range(6):
    spec = C.agc(A, d)
    r = C.min_weight_exact(spec)
    print(f"d={d}: formula {C.min_weight_formula(spec)}, search {r.weight} ({r.method})")
