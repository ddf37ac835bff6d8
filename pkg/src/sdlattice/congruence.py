"""Direct forcing, quotients by forcing-upsets, and congruence lattices.

``x ~> y`` (x directly forces y) when ``x`` is onto-minimal in ``F(y)`` or
into-maximal in ``T(y)``.  A set ``U`` closed under ``~>``-predecessors
gives a quotient ``X -> X ∩ U`` of the pairs lattice; complements of such
sets, the ``~>``-downsets, are in bijection with congruences.

Partitions of a lattice are label arrays: ``labels[a]`` is the smallest
element of the block of ``a``.
"""

from dataclasses import dataclass

import numpy as np

from . import _bits
from .errors import IsomorphismFailure, NoArrow, NotAForcingUpset, SizeLimitExceeded
from .lattice import Lattice, irreducibles, is_distributive, lattice_from_sets
from .relations import maximal, minimal, pairs_lattice, restrict, _compose


@dataclass(frozen=True)
class ForcingRelation:
    squig: np.ndarray
    closure: np.ndarray
    tags: dict  # (x, y) -> "i", "ii" or "i+ii" for non-loop edges

    @property
    def edges(self):
        return sorted(self.tags)

    def is_acyclic(self):
        off = ~np.eye(len(self.squig), dtype=bool)
        return not (self.closure & self.closure.T & off).any()

    def upset_witness(self, U):
        """A pair ``(x, y)`` with ``x ~> y``, ``y`` in ``U``, ``x`` not in ``U``; else ``None``."""
        U = frozenset(U)
        for (x, y) in self.edges:
            if y in U and x not in U:
                return (x, y)
        return None


def reflexive_transitive_closure(rel):
    c = np.array(rel, dtype=bool) | np.eye(len(rel), dtype=bool)
    while True:
        nxt = _compose(c, c)
        if (nxt == c).all():
            return c
        c = nxt


def directly_forces(sys):
    n = sys.n
    squig = np.eye(n, dtype=bool)
    tags = {}
    for y in range(n):
        F = _bits.to_frozenset(sys.into_cols[y])
        T = _bits.to_frozenset(sys.onto_rows[y])
        by_i = minimal(sys.onto, F)
        by_ii = maximal(sys.into, T)
        for x in by_i | by_ii:
            squig[x, y] = True
            if x != y:
                tags[(x, y)] = "i+ii" if x in by_i and x in by_ii else ("i" if x in by_i else "ii")
    squig.setflags(write=False)
    clo = reflexive_transitive_closure(squig)
    clo.setflags(write=False)
    return ForcingRelation(squig, clo, tags)


def image_coimage(sys, x, z):
    """Images (onto-minimal) and co-images (into-maximal) of ``{y : x => y => z}``."""
    if not sys.to[x, z]:
        raise NoArrow(f"no arrow from {x} to {z}", witness=(x, z))
    S = frozenset(int(y) for y in np.flatnonzero(sys.onto[x] & sys.into[:, z]))
    return minimal(sys.onto, S), maximal(sys.into, S)


def is_congruence_uniform(sys):
    return directly_forces(sys).is_acyclic()


def restrict_system(sys, U, forcing=None):
    forcing = forcing or directly_forces(sys)
    w = forcing.upset_witness(U)
    if w is not None:
        raise NotAForcingUpset("set is not closed under forcing predecessors", witness=w)
    return restrict(sys, U)


# ---------------------------------------------------------------------------
# lattice-side oracles


def _canonical(parent):
    n = len(parent)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    roots = [find(a) for a in range(n)]
    first = {}
    for a, r in enumerate(roots):
        first.setdefault(r, a)
    return np.array([first[r] for r in roots], dtype=np.intp)


def congruence_closure(L, pairs=(), labels=None):
    """Smallest congruence identifying every pair in ``pairs`` (and refining-coarser than ``labels``)."""
    n = L.size
    parent = list(range(n)) if labels is None else [int(v) for v in labels]

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            return True
        return False

    for a, b in pairs:
        union(int(a), int(b))
    while True:
        lab = _canonical(parent)
        changed = False
        for op in (L.meet, L.join):
            rows = lab[op]
            bad = np.argwhere(rows != rows[lab])
            for a, u in bad:
                changed |= union(int(op[a, u]), int(op[lab[a], u]))
        if not changed:
            return lab


def is_congruence(L, labels):
    lab = np.asarray(labels, dtype=np.intp)
    if (lab[lab] != lab).any():
        return False
    return all((lab[op] == lab[op][lab]).all() for op in (L.meet, L.join))


def blocks(labels):
    out = {}
    for a, r in enumerate(labels):
        out.setdefault(int(r), []).append(a)
    return [tuple(b) for b in out.values()]


def brute_congruences(L, cap=1 << 16):
    """Every congruence of ``L`` as a label tuple, finest first.

    Each congruence is a join of the congruences generated by single covers,
    so a search from the trivial partition that joins in one cover
    congruence at a time reaches them all.
    """
    principal = []
    for a, b in L.covers:
        p = tuple(congruence_closure(L, [(a, b)]))
        if p not in principal:
            principal.append(p)
    start = tuple(range(L.size))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principal:
                j = tuple(congruence_closure(L, enumerate(p), labels=theta))
                if j not in seen:
                    seen.add(j)
                    nxt.append(j)
                    if len(seen) > cap:
                        raise SizeLimitExceeded(f"more than {cap} congruences")
        frontier = nxt
    return sorted(seen, key=lambda t: (-len(set(t)), t))


def refinement_lattice(partitions):
    """Partitions ordered by refinement (finer is lower)."""
    P = np.asarray(partitions, dtype=np.intp)
    k = len(P)
    leq = np.ones((k, k), dtype=bool)
    for s in range(k):
        same = P[s][:, None] == P[s][None, :]
        for t in range(k):
            leq[s, t] = not (same & (P[t][:, None] != P[t][None, :])).any()
    return Lattice(leq)


def quotient_lattice(L, labels):
    """``L`` modulo a congruence, on block representatives in increasing order."""
    lab = np.asarray(labels, dtype=np.intp)
    reps = np.unique(lab)
    leq = lab[L.join[np.ix_(reps, reps)]] == reps[None, :]
    return Lattice(leq)


def is_interval(L, block):
    block = sorted(block)
    lo, hi = L.meet_all(block), L.join_all(block)
    inside = np.flatnonzero(L.leq[lo] & L.leq[:, hi])
    return sorted(int(v) for v in inside) == block


# ---------------------------------------------------------------------------
# system-side quotients


@dataclass(frozen=True)
class CongruenceSpec:
    upset: frozenset
    restricted: object
    partition: tuple  # labels over pairs-lattice indices
    quotient: object  # PairsLattice of the restricted system

    @property
    def blocks(self):
        return blocks(self.partition)


def quotient(sys, U, pairs=None, forcing=None):
    """The congruence of the pairs lattice cut out by a forcing-upset ``U``.

    Verifies that blocks are intervals, that the partition is a congruence,
    and that the blocks correspond, in order, to the closed sets of the
    restricted system.
    """
    U = frozenset(U)
    restricted = restrict_system(sys, U, forcing)
    P = pairs if pairs is not None else pairs_lattice(sys)
    um = _bits.mask(U)
    first = {}
    labels = []
    for i, m in enumerate(P.masks):
        labels.append(first.setdefault(m & um, i))
    labels = tuple(labels)
    L = P.lattice
    for b in blocks(labels):
        if not is_interval(L, b):
            raise IsomorphismFailure("block is not an interval", witness=b)
    if not is_congruence(L, labels):
        raise IsomorphismFailure("fibers do not form a congruence")

    Q = pairs_lattice(restricted)
    pos = {x: k for k, x in enumerate(sorted(U))}
    image = []
    for r in sorted(first.values()):
        image.append(Q.index_of_mask(_bits.mask(pos[x] for x in _bits.iter_bits(P.masks[r] & um))))
    if sorted(image) != list(range(len(Q))):
        raise IsomorphismFailure("fibers do not match the restricted closed sets")
    f = np.asarray(image)
    if not (Q.lattice.leq[np.ix_(f, f)] == quotient_lattice(L, labels).leq).all():
        raise IsomorphismFailure("quotient order disagrees with the restricted system")
    return CongruenceSpec(U, restricted, labels, Q)


def forcing_upsets(sys, forcing=None, cap=1 << 22):
    """All forcing-upsets as frozensets (complements of the forcing-downsets)."""
    forcing = forcing or directly_forces(sys)
    full = _bits.full(sys.n)
    return [_bits.to_frozenset(full & ~d) for d in _forcing_downsets(forcing, cap)]


def _forcing_downsets(forcing, cap):
    need = _bits.row_masks(forcing.closure)
    return _bits.downsets(need, cap=cap)


@dataclass(frozen=True)
class ConLattice:
    lattice: Lattice
    downsets: tuple  # frozensets; a downset D is the set of contracted elements
    system: object
    forcing: ForcingRelation

    def __len__(self):
        return len(self.downsets)

    def congruence(self, i, pairs=None):
        U = frozenset(range(self.system.n)) - self.downsets[i]
        return quotient(self.system, U, pairs=pairs, forcing=self.forcing)


def con_lattice(sys, cap=1 << 22):
    """Forcing-downsets under containment; isomorphic to the congruence lattice of ``Pairs``."""
    forcing = directly_forces(sys)
    masks = _forcing_downsets(forcing, cap)
    L = lattice_from_sets(masks)
    if not is_distributive(L):
        raise IsomorphismFailure("downset lattice is not distributive")
    return ConLattice(L, tuple(_bits.to_frozenset(m) for m in masks), sys, forcing)


def brute_forcing(L):
    """``j`` forces ``j2`` iff contracting ``j_* < j`` contracts ``j2_* < j2`` (join-irreducibles)."""
    irr = irreducibles(L)
    J = irr.jirr
    out = np.zeros((len(J), len(J)), dtype=bool)
    for a, j in enumerate(J):
        lab = congruence_closure(L, [(irr.j_star[j], j)])
        for b, k in enumerate(J):
            out[a, b] = lab[irr.j_star[k]] == lab[k]
    return J, out
