"""
Sideways kinship in a pedigree
==============================

The PED-B fixture is a tidy two-advisor pedigree. The overlap of
generation-n ancestor sets tells siblings from half siblings and cousins.
"""

from nobeltree import fixtures, horizontal_distance, kinship_neighborhood, pairwise_cross_distance

g = fixtures.load("ped_b")

pairs = [("c1", "c1s", 1), ("c1", "c1h", 1), ("c1", "c2", 2), ("d1", "d2", 3)]
for a, b, n in pairs:
    print(f"{a}/{b}: overlap at generation {n} = {horizontal_distance(g, a, b, n)}")

###############################################################################
# The sideways distance takes the best generation: n divided by the overlap.
for a, b, _ in pairs:
    print(a, b, pairwise_cross_distance(g, a, b))

###############################################################################
# Everyone within two generations sideways of c1, nearest first.
for kin in kinship_neighborhood(g, "c1", max_n=2):
    print(kin.id, kin.generation, kin.overlap)
