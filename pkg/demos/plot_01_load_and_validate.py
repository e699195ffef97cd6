"""
Loading a genealogy and checking its shape
==========================================

Read the bundled MINI-NOBEL dataset through its manifest, then look at the
family trees it contains.
"""

from nobeltree import fixtures, weak_components

# a manifest names the nodes and edges files, relative to itself
m = fixtures.manifest("mini_nobel")
print(m.nodes_path.name, m.edges_path.name)

g = fixtures.load("mini_nobel")
print(g)

###############################################################################
# Family trees are the weakly connected components. The histogram maps
# "laureates in the tree" to "number of such trees".
census = weak_components(g)
for comp in census.components:
    print(comp.laureate_count, sorted(comp.members))
print(census.histogram)

###############################################################################
# Depth is the longest advisor chain, in generations.
print("deepest lineage:", g.depth, "generations")
print("advisors of g:", g.advisors("g"), "students of b:", g.students("b"))
