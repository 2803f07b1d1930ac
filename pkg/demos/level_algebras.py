"""Type-two level algebras from pairs of dual forms.

``lev2_analysis`` splits the tangent space of ``R/ann(F1, F2)`` into two
pieces and tests a homology group per piece.  When both vanish the
algebra is unobstructed and the dimension is certified.  The second pair
uses ``x^6y + xy^6 + z^7`` written for the differentiation action.

Run: python demos/level_algebras.py
"""
import numpy as np

from gradalg.apolarity import annihilator, dual_ring, from_differentiation, power_sum_form
from gradalg.deformation import lev2_analysis, obstruction_report
from gradalg.ring import PolyRing

R = PolyRing(("x", "y", "z"))
D = dual_ring(R)
rng = np.random.default_rng(16)

F1 = power_sum_form(D, 5, 5, rng).form
F2 = power_sum_form(D, 5, 5, rng).form
rep = lev2_analysis(F1, F2)
print("two power sums of length 5:", rep.hilbert, "certified", rep.certified, "dim", rep.dim)

rng = np.random.default_rng(21)
G1 = power_sum_form(D, 9, 7, rng).form
G2 = from_differentiation(D.parse("X^6*Y + X*Y^6 + Z^7"))
A = annihilator([G1, G2], ring=R)
ob = obstruction_report(A)
print("power sum of length 9 with x^6y + xy^6 + z^7:", A.hilbert_function(7).values)
print("tangent", ob.tangent, "obstruction bound", ob.obstruction, "bracket", ob.dim_bracket)
