"""
Counting zeros on a grid
========================

Compare several zero bounds with the true count for two small polynomials.
"""
from afgrid import bounds as B
from afgrid.poly import GridSpec, leading_coeff_chain, parse_poly, zero_census
from afgrid.ring import GF

ring = GF(5)
A = GridSpec.from_lists(ring, [[0, 1, 2], [0, 1, 2]])  # a 3x3 piece of GF(5)^2

for text in ("t1*t2", "t1 + t2"):
    f = parse_poly(text, ring, 2)
    d = f.total_degree
    chain = leading_coeff_chain(f).degrees
    print(text)
    print("  zeros seen      ", zero_census(f, A).zeros)
    print("  DMLZ            ", B.dmlz_zeros(3, 2, 1).value)
    print("  Schwartz (chain)", B.schwartz_zeros((3, 3), chain).value)
    print("  from AF         ", B.af_zero_bound((3, 3), d))

# the AF nonzero bound is attained by products of linear factors
for d in range(5):
    print("degree", d, "at least", B.alon_furedi_nonzeros((3, 3), d).value, "nonzeros")
