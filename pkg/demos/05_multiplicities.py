"""
Multiplicities
==============

Hasse derivatives, Taylor shifts and summed multiplicities over a grid.
"""
from afgrid import bounds as B
from afgrid import oracle as O
from afgrid.poly import GridSpec, format_poly, multiplicity, multiplicity_sum, parse_poly, taylor_shift
from afgrid.ring import GF

ring = GF(3)
f = parse_poly("t1^2*t2^2 + t1", ring, 2)
print("f(t + (0,1)) =", format_poly(taylor_shift(f, (0, 1))))
print("m(f, (0,0)) =", multiplicity(f, (0, 0)))

A = GridSpec.full(ring, 2)
g = parse_poly("t1^2*t2^2", ring, 2)
print("multiplicity sum of t1^2 t2^2:", multiplicity_sum(g, A),
      "bound", B.mult_schwartz_bound((3, 3), (2, 2)).value)

# summed multiplicities can beat the plain zero count from AF
for d in [(1, 1), (2, 2)]:
    print(O.multiplicity_af_gap(3, *d))
