"""The Trott quartic and its dual curve.

A line in the plane avoids the curve exactly when its point in the dual
plane lies off the dual curve in an avoidant region.  We compute the dual
curve by elimination, then count regions of its complement.
"""
import time

from avoidance import catalog, forms
from avoidance.regions import AtlasConfig, build_atlas

X = catalog.named("trott")
D = forms.dual_plane_curve(X.equations[0], seed=0)
print(f"dual curve: degree {D.degree}, {D.monomial_count} monomials")

t = time.time()
A = build_atlas(AtlasConfig(X, k=2, samples=3000, seed=0, model="dual"))
print(f"{A.region_count} regions, {A.avoidant_region_count} avoidant ({time.time() - t:.0f}s)")
# at this budget a few regions are still split in thin places; 12000 samples give 29 and 7
