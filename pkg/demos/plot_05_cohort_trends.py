"""
Trends across award years
=========================

Group laureates by award year and follow a statistic through time.
"""

import tempfile
from pathlib import Path

from nobeltree import cohort_series, fixtures
from nobeltree.export import export_svg_scatter, export_tables_csv
from nobeltree.stats import METRICS

g = fixtures.load("mini_nobel")

for metric in METRICS:
    s = cohort_series(g, metric)
    print(f"{metric:<28} {len(s.points):>2} years  slope {s.trend_slope:+.4f}")

###############################################################################
# Counting only relatives who had already won by the award year.
late = cohort_series(g, "anc_per_laureate", prior_only=True)
print([(p.year, p.value) for p in late.points])

###############################################################################
# Write the series as CSV and as an SVG scatter with its trend line.
out = Path(tempfile.mkdtemp())
export_tables_csv(out, series=[late])
export_svg_scatter(late, out / "anc_prior.svg")
print(sorted(p.name for p in out.iterdir()))
