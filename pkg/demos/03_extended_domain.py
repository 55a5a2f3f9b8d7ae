# Where the polyhedral route keeps working and the tangent-plane route
# cannot: points more than a quarter turn from some vertex, and rings on
# a single great circle.

import numpy as np

import sphbary as sb
from sphbary.errors import NonPositiveDenominator, ProjectionUndefined

# --- case 1: an interior point with <x, v_1> < 0 ---------------------------
polygon, x = sb.extended_pair()
print("wide quadrilateral, point", np.round(x, 4), "->", sb.locate_point(polygon, x))
print("dot products <x, v_i>:", np.round(polygon.vertices @ x, 4))

try:
    sb.spherical_coords_classical(polygon, x, "MV")
except ProjectionUndefined as exc:
    print("tangent-plane route:", type(exc).__name__, "-", exc)

cv = sb.extended_spherical_coords(polygon.vertices, x)
print("polyhedral route:   ", np.round(cv.values, 6))
print("residual:           ", sb.reconstruction_residual(cv.values, polygon.vertices, x))

# --- case 2: all vertices on one great circle -------------------------------
# No open hemisphere contains the ring, so this is not a valid polygon;
# the polyhedron over the ring still exists and the 3D coordinates of the
# origin are perfectly finite.
ring, pole = sb.great_circle_ring()
print("\nequator ring, evaluation direction", pole)
phi = sb.origin_coords_on_ring(ring, pole)
print("3D coordinates of the origin:", np.round(phi, 6), "| sum =", phi.sum())
print("residual of sum(phi_i p_i):  ", np.linalg.norm(phi @ np.vstack([ring, pole, -pole])))

# The spherical quotient, however, must divide by phi[-x] - phi[x], and
# with the whole ring inside the plane z = 0 those two coordinates agree
# identically: no combination of equator vertices can reach an off-plane
# point, and the implementation refuses rather than divides by zero.
try:
    sb.extended_spherical_coords(ring, pole)
except NonPositiveDenominator as exc:
    print("spherical quotient:", type(exc).__name__, "-", exc)
