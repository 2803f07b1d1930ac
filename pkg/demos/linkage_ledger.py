"""Walking from a point of the plane to a compressed Gorenstein algebra by links.

Each link by a complete intersection of type ``(a_1, a_2, a_3)`` keeps
``dim - sum H(a_i)`` fixed.  Starting at a complete intersection, whose
component dimension is known, this gives a dimension at the far end.  The
transfer rests on the linkage theorem, so the ledger is conditional.

Run: python demos/linkage_ledger.py
"""
from pathlib import Path

from gradalg.deformation import ext1_dim, hom_dim, rho
from gradalg.ideal import read_ideal_file
from gradalg.linkage import linkage_chain, read_chain_file
from gradalg.resolution import betti_numbers

here = Path(__file__).parent / "data"
start = read_ideal_file(here / "point.ideal")
types = read_chain_file((here / "exlink.chain").read_text())
cert = linkage_chain(start, types, seed=19)

for k, step in enumerate(cert.steps, start=1):
    print(f"link {k}: type {step.type}, deg {step.degree_J} + {step.degree_J2}, "
          f"sum H_J = {step.sum_H_J}, sum H_J' = {step.sum_H_J2}")
print("ledger:", cert.dims, "(conditional)" if cert.conditional else "")

A = cert.final
print(betti_numbers(A).format_resolution())
print("H =", A.hilbert_function(6).values)
print("tangent", hom_dim(A, A, 0), "ext1", ext1_dim(A, A, 0), "rho", rho(A))
