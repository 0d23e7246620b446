"""Region counts of generic hyperplane arrangements.

Compares the closed formula from the characteristic polynomial with a
sampling count on an explicit random arrangement.
"""
from avoidance.arrangements import (Arrangement, brute_force_regions, char_poly_generic,
                                    lattice_char_poly, projective_region_count)

for n in (3, 4):
    for l in range(1, 6):
        arr = Arrangement.random(l, n, seed=l)
        want = projective_region_count(char_poly_generic(l, n))
        lattice = projective_region_count(lattice_char_poly(arr))
        got = brute_force_regions(arr, seed=0, expected=want).regions
        print(f"n={n} l={l}: formula {want}, intersection lattice {lattice}, sampled {got}")
