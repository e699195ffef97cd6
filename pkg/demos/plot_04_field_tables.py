"""
Which fields train which
========================

Cross tables count laureate pairs by field: advisor to student
(proximate) and ancestor to descendant at any depth (distal).
"""

from nobeltree import ancestry_summary, cross_table, fixtures, laureate_pair_counts, tie_classification
from nobeltree.graph import FIELDS

g = fixtures.load("mini_nobel")

print(laureate_pair_counts(g))

for kind in ("proximate", "distal"):
    t = cross_table(g, kind)
    print(kind)
    print(f"{'':<10}" + "".join(f"{f.value[:4]:>6}" for f in FIELDS) + "   any  none")
    for f in FIELDS:
        print(f"{f.value:<10}" + "".join(f"{v:>6}" for v in t.row(f)))

###############################################################################
# Mean laureate ancestors and descendants per laureate, by field.
summary = ancestry_summary(g)
for scope in ("any", "chemistry", "economics"):
    anc = summary[scope]["ancestors"]
    print(scope, anc and round(anc.mean, 2), anc and round(anc.se, 2))

###############################################################################
# How each laureate is tied to the others.
for x, c in sorted(tie_classification(g).items()):
    print(x, c.value)
