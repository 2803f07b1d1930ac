"""Points on curves and Artinian truncations.

Thirteen points on a twisted cubic and on a plane cubic plus a point share
a Hilbert function, yet sit on components of different dimension.  The
normal space of each point set is compared with ``dim W + s`` (and
``s - 1`` at the isolated point), where ``dim W`` is the family of curves.

Run: python demos/points_and_truncations.py
"""
import numpy as np

from gradalg.constructions import CurveSpec, points_on_curve, truncate_algebra
from gradalg.deformation import hom_dim, predicted_dims
from gradalg.resolution import betti_numbers

rng = np.random.default_rng(12)
for tag, dim_W in (("twisted_cubic", 12), ("plane_cubic_plus_point", 15)):
    ps = points_on_curve(CurveSpec.parse(tag), 13, rng)
    A = ps.ideal
    print(f"{tag}: H_A = {ps.hilbert}, (N_A)_0 = {hom_dim(A, A, 0)}")
    print(betti_numbers(A))

# truncating the twisted cubic's coordinate ring at degree 5
T = CurveSpec.parse("twisted_cubic").curve_ideal()
for alpha in (0, 2, 5):
    A = truncate_algebra(T, 5, alpha, rng)
    pred = predicted_dims(T, A, "sgenartin", dim_B=12, j=5)
    print(f"alpha = {alpha}: predicted {pred.value}, tangent {hom_dim(A, A, 0)}")
