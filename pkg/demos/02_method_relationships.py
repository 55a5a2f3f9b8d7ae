# How the constructions relate: the two mean value routes coincide, the
# two polar-dual (Wachspress-style) routes do not.
#
# Route A ("NEW_*"): 3D coordinates of the origin inside the polyhedron
#   [v_1..v_n, x, -x], divided by phi[-x] - phi[x].
# Route B ("CC_*"): project the polygon gnomonically into the tangent
#   plane at x, take planar coordinates there, divide by <v_i, x>.

import numpy as np

import sphbary as sb

quad = sb.demo_quadrilateral()
print("demo quadrilateral: n =", quad.n, "| convex =", quad.convex)

rng = np.random.default_rng(7)
points = sb.interior_points(quad, 400, rng)

gap_mv, gap_closed, gap_wc = [], [], []
for x in points:
    new_mv = sb.evaluate(quad, x, "NEW_MV").values
    gap_closed.append(np.max(np.abs(new_mv - sb.evaluate(quad, x, "NEW_MV_CLOSED").values)))
    try:
        cc_mv = sb.evaluate(quad, x, "CC_MV").values
        gap_mv.append(np.max(np.abs(new_mv - cc_mv)))
        gap_wc.append(np.max(np.abs(
            sb.evaluate(quad, x, "NEW_WC").values - sb.evaluate(quad, x, "CC_WC").values)))
    except sb.SphBaryError:
        pass   # tangent-plane route undefined where some <v_i, x> <= 0

print(f"\nsamples with both routes defined: {len(gap_mv)} of {len(points)}")
print(f"max |NEW_MV - CC_MV|        = {max(gap_mv):.3e}   (identical up to roundoff)")
print(f"max |NEW_MV - NEW_MV_CLOSED| = {max(gap_closed):.3e}   (closed form = polyhedral route)")
print(f"max |NEW_WC - CC_WC|        = {max(gap_wc):.3e}   (genuinely different functions)")

# The same comparison as the command-line front end reports it:
print()
print(sb.compare_methods(quad, "NEW_WC", "CC_WC", resolution=24).to_text())

# The closed form behind the mean value equivalence: per-vertex weights
# pi (tan(alpha_i/2) + tan(alpha_(i-1)/2)) / (2 sin theta_i) over a shared
# denominator, built from the angle cache.
x = points[0]
cache = sb.angles(quad, x)
print("\nangle cache at", np.round(x, 4))
print("theta:", np.round(cache.theta, 6))
print("alpha:", np.round(cache.alpha, 6), "| sum(alpha) =", cache.alpha.sum())
omega, denom = sb.closed_form_mv_weights(quad, x)
print("omega / denom:", np.round(omega / denom, 10))
print("NEW_MV:       ", np.round(sb.evaluate(quad, x, "NEW_MV").values, 10))
