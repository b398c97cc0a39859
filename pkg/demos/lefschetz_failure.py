"""Hard Lefschetz for two c-symplectic circle quotients of fd 26.

Both carry a symplectic class t, yet t^k fails to be an isomorphism in
several degrees; the kernels are printed as explicit cocycles.
"""
from precsymp.catalog import all_models
from precsymp.cohomology import hard_lefschetz

models = all_models()
for name in ("rk2.12.a", "rk2.12.b"):
    rep = hard_lefschetz(models[name], "t", 26)
    print(name, "failures at k =", rep.failures)
    for step in rep.steps:
        if not step.bijective:
            print(f"  k={step.k}: kernel spanned by", ", ".join(map(str, step.kernel)) or "(rank deficit)")
