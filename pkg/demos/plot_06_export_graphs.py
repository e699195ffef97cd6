"""
Drawing the family tree
=======================

Export to Graphviz DOT (field colours, node size by total closeness) or
GraphML for other graph tools.
"""

import tempfile
from pathlib import Path

from nobeltree import HolderParams, closeness_report, fixtures
from nobeltree.export import RenderSpec, export_dot, export_graphml, lineage_of, read_graphml

g = fixtures.load("mini_nobel")
report = closeness_report(g, HolderParams())
out = Path(tempfile.mkdtemp())

dot = export_dot(g, report, RenderSpec(scale_factor=2.0), out / "mini.dot")
print(dot.read_text())

###############################################################################
# Only the lineage below c, in GraphML. Render the DOT file with
# ``dot -Tsvg mini.dot`` if Graphviz is installed.
spec = RenderSpec(include=lineage_of(g, "c"))
path = export_graphml(g, report, spec, out / "c_lineage.graphml")
scholars, edges, closeness = read_graphml(path)
print(len(scholars), "nodes", len(edges), "edges")
print(closeness["g"])
