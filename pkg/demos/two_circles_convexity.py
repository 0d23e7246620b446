"""Two nested circles: each avoidant region is convex, their union is not.

The segment between representatives of the two avoidant regions crosses a
wall, and the crossing is a certified real root.
"""
from avoidance import catalog
from avoidance import convexity as cv
from avoidance.classify import Verdict
from avoidance.regions import AtlasConfig, build_atlas

A = build_atlas(AtlasConfig(catalog.named("two_circles"), k=2, samples=1500, seed=0, model="dual"))
av = [r.id for r in A.regions if r.verdict == Verdict.AVOIDANT]
print(f"{A.region_count} regions, avoidant ids {av}")
for i in av:
    print(f"  region {i}:", cv.test_region_convexity(A, i, trials=100, seed=0).verdict.value)
print("union:", cv.test_region_convexity(A, av, trials=100, seed=0).verdict.value)
