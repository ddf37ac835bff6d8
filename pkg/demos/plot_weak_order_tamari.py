"""
Tamari lattices as quotients of the weak order
==============================================

Extract the factorization system of the weak order on S_4, then look for a
forcing-upset whose restricted system gives the 14-element Tamari lattice.
"""

from sdlattice.congruence import con_lattice, forcing_upsets, restrict_system
from sdlattice.extraction import extract_system, ftfsdl_roundtrip
from sdlattice.generators import tamari, weak_order_sn
from sdlattice.lattice import is_isomorphic
from sdlattice.relations import pairs_lattice

W = weak_order_sn(4)
print(ftfsdl_roundtrip(W))
sys_ = extract_system(W).system
print("ground set (join-irreducible permutations):", sys_.labels)
print("congruences of the weak order:", len(con_lattice(sys_)))

###############################################################################
# Every forcing-upset is a quotient; keep those isomorphic to Tamari.
T = tamari(4)
for U in forcing_upsets(sys_):
    Q = pairs_lattice(restrict_system(sys_, U)).lattice
    if is_isomorphic(Q, T) is not None:
        print("Tamari quotient keeps", sorted(sys_.labels[i] for i in U))
