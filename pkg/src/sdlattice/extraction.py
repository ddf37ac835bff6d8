"""From a finite semidistributive lattice to its factorization system, and back.

For join-irreducibles ``i, j`` of ``L``:

* ``i -> j``  iff  ``i`` is not below ``kappa(j)``
* ``i => j`` (onto)  iff  ``i >= j``
* ``i => j`` (into)  iff  ``kappa(i) >= kappa(j)``

and ``x`` maps to the pair (join-irreducibles below ``x``,
``kappa_d`` of the meet-irreducibles above ``x``).
"""

from dataclasses import dataclass

import numpy as np

from . import _bits
from .errors import IsomorphismFailure, NotSemidistributive
from .lattice import irreducibles
from .relations import OrthoPair, pairs_lattice, validate_system


@dataclass(frozen=True)
class ExtractedSystem:
    system: object
    jirr_index: tuple  # system index -> lattice element
    kappa: dict

    def element(self, i):
        return self.jirr_index[i]


def extract_system(L):
    """Build the two-acyclic factorization system on ``JIrr(L)``.

    Raises :class:`NotSemidistributive` if either kappa map is partial.  The
    arrow relation is also recomputed as ``i ∨ j_* >= j`` and the two must
    agree.
    """
    irr = irreducibles(L)
    if not (irr.kappa_total and irr.kappa_d_total):
        bad = [j for j, m in irr.kappa.items() if m is None]
        bad += [m for m, j in irr.kappa_d.items() if j is None]
        raise NotSemidistributive("kappa is not total", witness=tuple(bad[:1]))
    jirr = irr.jirr
    kap = np.array([irr.kappa[j] for j in jirr], dtype=np.intp)
    J = np.array(jirr, dtype=np.intp)
    leq = L.leq
    to = ~leq[np.ix_(J, kap)]
    onto = leq[np.ix_(J, J)].T
    into = leq[np.ix_(kap, kap)].T

    star = np.array([irr.j_star[j] for j in jirr], dtype=np.intp)
    alt = leq[J[None, :], L.join[np.ix_(J, star)]]
    if (alt != to).any():
        i, j = map(int, np.argwhere(alt != to)[0])
        raise IsomorphismFailure("arrow criteria disagree", witness=(jirr[i], jirr[j]))

    labels = tuple(L.label(j) for j in jirr)
    system = validate_system(to, onto, into, labels=labels)
    return ExtractedSystem(system, tuple(jirr), dict(irr.kappa))


@dataclass(frozen=True)
class IsomorphismReport:
    correspondence: tuple  # (lattice element, OrthoPair) in lattice order
    extracted: ExtractedSystem
    pairs: object

    @property
    def size(self):
        return len(self.correspondence)

    def __str__(self):
        return f"isomorphism verified: {self.size} elements"


def ftfsdl_roundtrip(L):
    """Verify ``L`` is isomorphic to the pairs lattice of its extracted system.

    Checks the forward map is an order isomorphism onto every maximal
    orthogonal pair and that both inverse formulas (join of the torsion part,
    meet of kappa of the free part) return the original element.
    """
    ex = extract_system(L)
    sys = ex.system
    irr = irreducibles(L)
    J = ex.jirr_index
    kappa_d = irr.kappa_d
    k_of = {j: k for k, j in enumerate(J)}
    P = pairs_lattice(sys)
    if len(P) != L.size:
        raise IsomorphismFailure(f"{L.size} elements but {len(P)} pairs")

    images = []
    corr = []
    for x in range(L.size):
        X = _bits.mask(k for k, j in enumerate(J) if L.leq[j, x])
        Y = _bits.mask(k_of[kappa_d[m]] for m in irr.mirr if L.leq[x, m])
        b = sys._bits
        if b.perp_right(X) != Y or b.perp_left(Y) != X:
            raise IsomorphismFailure("image is not a maximal orthogonal pair", witness=(x,))
        if L.join_all(J[k] for k in _bits.iter_bits(X)) != x:
            raise IsomorphismFailure("join of torsion part is not x", witness=(x,))
        if L.meet_all(irr.kappa[J[k]] for k in _bits.iter_bits(Y)) != x:
            raise IsomorphismFailure("meet of kappa(free part) is not x", witness=(x,))
        images.append(P.index_of_mask(X))
        corr.append((x, OrthoPair(_bits.to_frozenset(X), _bits.to_frozenset(Y))))

    if sorted(images) != list(range(L.size)):
        raise IsomorphismFailure("map is not a bijection")
    f = np.asarray(images)
    if not (P.lattice.leq[np.ix_(f, f)] == L.leq).all():
        raise IsomorphismFailure("map does not preserve order")
    return IsomorphismReport(tuple(corr), ex, P)
