"""
An extremal lattice that is not semidistributive
================================================

The chain 1 -> 2 -> 3 -> 4 is acyclic and reflexive but the middle arrow does
not factor, so it is not a factorization system.  Its closed sets still form a
lattice, and that lattice is extremal.
"""

from pathlib import Path

from sdlattice.constructions import classify, extremal_analysis, markowsky_system
from sdlattice.errors import InvalidSystem
from sdlattice.relations import pairs_lattice, validate_system
from sdlattice.serialize import load, relation_from_document

to, labels = relation_from_document(load(Path(__file__).parent / "data" / "ext_fig.json"))

try:
    validate_system(to)
except InvalidSystem as e:
    print("not a factorization system:", e.witness)

###############################################################################
# Nine closed sets, and a maximal chain of length four.
P = pairs_lattice(to)
for X in P.torsion_sets:
    print("{" + ",".join(labels[i] for i in sorted(X)) + "}")

cert = extremal_analysis(P.lattice)
print("chain length", cert.length, "join-irreducibles", cert.n_jirr,
      "meet-irreducibles", cert.n_mirr)
print("mu:", cert.mu)

###############################################################################
# The join-/meet-irreducible relation describes the same lattice.
rel = markowsky_system(P.lattice)
print(len(rel.left), "x", len(rel.right), "relation")
print(classify(to).to_dict())
