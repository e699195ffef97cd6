"""
Ranking scholars by closeness to laureates
==========================================

Out-closeness looks up the family tree, in-closeness looks down, and
crosscloseness looks sideways at siblings and cousins.
"""

from nobeltree import (
    Field,
    HolderParams,
    Prize,
    Scholar,
    build_graph,
    closeness_report,
    fixtures,
    holder_mean_distance,
)

###############################################################################
# A three-generation chain A -> B -> C where A and B won prizes.
chain = build_graph(
    [Scholar("A", prizes=(Prize(Field.PHYSICS, 1910),)),
     Scholar("B", prizes=(Prize(Field.PHYSICS, 1930),)),
     Scholar("C")],
    [("A", "B"), ("B", "C")],
)

# h = -1 is the harmonic mean of distances 1 and 2, h = 1 the arithmetic one
for h in (-1.0, 1.0):
    print(h, holder_mean_distance(chain, "C", HolderParams(h=h), "out"))

###############################################################################
# On MINI-NOBEL, compute all three measures for every scholar at once.
g = fixtures.load("mini_nobel")
report = closeness_report(g, HolderParams(h=-1.0))
for rec in report.ranked("total", top=5):
    print(f"{rec.id:>3}  out {rec.out_closeness:.3f}  in {rec.in_closeness:.3f}  "
          f"cross {rec.cross_closeness:.3f}")

###############################################################################
# Restricting the reference set to one field changes the picture.
chem = {x for x in g.laureates if Field.CHEMISTRY in g.scholars[x].fields}
for rec in closeness_report(g, HolderParams(subset=chem)).ranked("in", top=3):
    print(rec.id, round(rec.in_closeness, 3))
