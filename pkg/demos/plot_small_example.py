"""
A six-element lattice from four arrows
======================================

Load a factorization system on four elements, list its closed sets, and read
off covers, canonical joins, forcing and congruences.
"""

from pathlib import Path

from sdlattice.congruence import con_lattice, directly_forces, forcing_upsets, quotient
from sdlattice.covers import canonical_join_rep, cj_complex, cov
from sdlattice.constructions import classify
from sdlattice.relations import pairs_lattice
from sdlattice.serialize import load, system_from_document

DATA = Path(__file__).parent / "data"
sys_ = system_from_document(load(DATA / "semi_fig.json"))


def show(X):
    return "{" + ",".join(sys_.labels[i] for i in sorted(X)) + "}"


###############################################################################
# The closed sets, bottom to top.  Each one is the torsion part of a maximal
# orthogonal pair.
P = pairs_lattice(sys_)
for X in P.torsion_sets:
    print(show(X), "perp", show(P.pair(P.index_of(X)).free))

###############################################################################
# Lower covers come from deleting, for each c in Cov(X), everything that maps
# onto c.
for X in P.torsion_sets:
    data = cov(sys_, X)
    for c, D in data.lower_covers.items():
        print(f"{show(D)} < {show(X)}  (delete via {sys_.labels[c]})")

###############################################################################
# Canonical join representations and the canonical join complex.
for X in P.torsion_sets:
    parts = sorted(show(T) for T in canonical_join_rep(sys_, X))
    print(show(X), "=", " v ".join(parts) or "bottom")
cx = cj_complex(sys_, verify=True)
print("complex edges:", [(sys_.labels[a], sys_.labels[b]) for a, b in cx.edges],
      "flag:", cx.flag)

###############################################################################
# Direct forcing, its upsets, and the lattice quotients they give.
forcing = directly_forces(sys_)
for (x, y), tag in sorted(forcing.tags.items()):
    print(f"{sys_.labels[x]} ~> {sys_.labels[y]}  ({tag})")
for U in forcing_upsets(sys_):
    print(show(U), "->", len(quotient(sys_, U).quotient), "elements")

con = con_lattice(sys_)
print("congruences:", len(con))
print(classify(sys_).to_dict())
