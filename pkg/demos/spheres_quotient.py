"""Walk through the three-sphere product S^3 x S^3 x S^7.

Builds the one-parameter witness model, checks finiteness and the symplectic
class, then adds two more circle directions and checks the quotient again.
"""
from precsymp import csym_polarized, finiteness, formal_dimension, is_coboundary
from precsymp.catalog import all_models
from precsymp.csym import thm12_criterion, thm12_witness
from precsymp.differential import split_extension
from precsymp.toral import complete_to_full_torus

degrees = (3, 3, 7)
print("criterion:", thm12_criterion(degrees).reason)

w = thm12_witness(degrees)
print(w)
print("finite:", finiteness(w).status, " fd:", formal_dimension(w))
print("[t^6] exact?", is_coboundary(w, "t^6").exact)

models = all_models()
fiber = models["s3s3s7.fiber"]
partial = split_extension(models["ex3.6.a.p2"], ["t1", "t2"], fiber=fiber)
full = complete_to_full_torus(fiber, partial).extension.total
print(full)
v = csym_polarized(full)
print("three-torus quotient: fd", formal_dimension(full), v.status, "omega =", v.witness.omega)
