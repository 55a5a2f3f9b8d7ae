# Contour-band data for one coordinate function over a polygon.
#
# The grid is built by projecting the polygon into the tangent plane at
# its spherical centroid, sampling the bounding box of the image on a
# regular lattice and lifting each node back to the sphere.  Every node
# becomes one CSV row; nodes outside the polygon carry an error tag
# instead of a value, so the row count is always resolution^2.

import collections
import sys

import sphbary as sb
from sphbary.harness import rows_to_csv

polygon = sb.demo_quadrilateral()
rows = sb.grid_rows(polygon, vertex_index=0, resolution=48, method="NEW_MV")

by_band = collections.Counter(r.band for r in rows if r.band is not None)
errors = collections.Counter(r.error for r in rows if r.error)

print(f"grid rows: {len(rows)}")
print("rows per contour band (band -1 = between bands):")
for band in sorted(by_band):
    label = "outside all bands" if band == -1 else f"band {band} {sb.DEFAULT_BANDS[band]}"
    print(f"  {label}: {by_band[band]}")
print("error rows:", dict(errors))

worst = max(r.residual for r in rows if r.residual is not None)
print("worst linear-precision residual on the grid:", worst)

# Full CSV (same format as `sphbary grid`) goes to a file when a path is
# given, ready for any plotting tool.
if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(rows_to_csv(rows))
    print("wrote", sys.argv[1])
