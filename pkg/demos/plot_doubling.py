"""
Building lattices by doubling intervals
=======================================

Double pseudorandom intervals starting from a point, on the lattice side and
on the factorization-system side, and check that the two agree.
"""

import numpy as np

from sdlattice.congruence import is_congruence_uniform
from sdlattice.constructions import double_lattice, double_system
from sdlattice.generators import Lcg
from sdlattice.lattice import is_isomorphic
from sdlattice.relations import pairs_lattice, validate_system

rng = Lcg(7)
sys_ = validate_system(np.zeros((0, 0), dtype=bool))
for step in range(6):
    P = pairs_lattice(sys_)
    lo = rng.below(len(P))
    hi = rng.choice(np.flatnonzero(P.lattice.leq[lo]).tolist())
    sys_ = double_system(sys_, P.pair(lo).torsion, P.pair(hi).torsion)
    D = double_lattice(P.lattice, lo, hi)
    same = is_isomorphic(pairs_lattice(sys_).lattice, D) is not None
    print(f"step {step}: {len(P)} -> {D.size} elements, sides agree: {same}")

print("congruence uniform:", is_congruence_uniform(sys_))
print("ground set:", sys_.labels)
