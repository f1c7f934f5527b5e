"""
Balls in prefilled bins
=======================

The smallest product of bin counts, given capacities, prefills and a ball total.
"""
from afgrid.bins import BinProfile, min_product, min_product_witness, min_product_table

# two bins holding at most 4 and 3 balls, prefilled with 1 and 2, four balls in total
profile = BinProfile((4, 3), (1, 2), 4)
value, y = min_product_witness(profile)
print("least product", value, "reached by", y)

# the greedy fill (left to right) is optimal when capacities are non-increasing
print("table for caps (3,3,2):", min_product_table((3, 3, 2))[3:])

# pushing balls into one bin beats spreading them out
for N in range(3, 9):
    print(N, min_product(BinProfile.unit((3, 3, 2), N)))
