"""Lower covers in the lattice of closed sets, canonical join representations,
and the canonical join complex.

A closed set ``X`` covers ``Del(X, c) = X \\ {x : x => c (onto)}`` for exactly
the ``c`` in ``Cov(X)``.  For finite ``X`` these are the onto-maximal members
of ``C(X)``, the into-maximal members of ``X``; :func:`cov` uses that shortcut
and re-checks the defining conditions on every ``c``.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _bits
from .errors import ElementNotInSet, IsomorphismFailure, NotClosed, SizeLimitExceeded
from .lattice import irreducibles
from .relations import fact, maximal


def T_of(sys, x):
    """``{x' : x => x' (onto)}``, the closure of ``{x}``."""
    return _bits.to_frozenset(sys.onto_rows[x])


def T_star(sys, x):
    return T_of(sys, x) - {x}


def F_of(sys, x):
    """``{x' : x' => x (into)}``."""
    return _bits.to_frozenset(sys.into_cols[x])


def F_star(sys, x):
    return F_of(sys, x) - {x}


def _require_closed(sys, X):
    m = _bits.mask(X)
    if sys._bits.closure(m) != m:
        raise NotClosed("set is not closed", witness=tuple(sorted(X)))
    return m


def del_set(sys, X, c):
    """``X`` minus everything with an onto arrow to ``c``.  Not closed in general."""
    X = frozenset(X)
    if c not in X:
        raise ElementNotInSet(f"{c} is not in the set", witness=(c,))
    return frozenset(x for x in X if not sys.onto[x, c])


@dataclass(frozen=True)
class CoverData:
    closed_set: frozenset
    cov: tuple
    lower_covers: dict  # c -> Del(X, c)

    def __len__(self):
        return len(self.cov)


def cov(sys, X, check_restriction=False):
    """Compute ``Cov(X)`` and the lower cover attached to each of its elements.

    With ``check_restriction`` the result is also compared with the
    into-maximal elements of ``X`` for ``Fact`` of the arrow relation
    restricted to ``X`` (slower; a diagnostic).
    """
    X = frozenset(X)
    m = _require_closed(sys, X)
    b = sys._bits
    C = maximal(sys.into, X)
    result = sorted(maximal(sys.onto, C))
    lower = {}
    for c in result:
        d = del_set(sys, X, c)
        dm = _bits.mask(d)
        if b.closure(dm) != dm or b.closure(dm | (1 << c)) != m:
            raise IsomorphismFailure("cover shortcut disagrees with the definition", witness=(c,))
        lower[c] = d
    if check_restriction:
        alt = cov_by_restriction(sys, X)
        if alt != frozenset(result):
            raise IsomorphismFailure("restricted-factorization cover test disagrees",
                                     witness=tuple(sorted(alt ^ frozenset(result))))
    return CoverData(X, tuple(result), lower)


def cov_by_restriction(sys, X):
    """Into-maximal elements of ``X`` for ``Fact`` of the arrows restricted to ``X``."""
    idx = np.asarray(sorted(X), dtype=np.intp)
    if idx.size == 0:
        return frozenset()
    _, into = fact(sys.to[np.ix_(idx, idx)])
    local = maximal(into, range(len(idx)))
    return frozenset(int(idx[k]) for k in local)


def cov_by_definition(sys, X):
    """``Cov(X)`` straight from the definition; used as an oracle."""
    X = frozenset(X)
    m = _require_closed(sys, X)
    b = sys._bits
    out = []
    for c in sorted(X):
        dm = _bits.mask(del_set(sys, X, c))
        if b.closure(dm) == dm and b.closure(dm | (1 << c)) == m:
            out.append(c)
    return tuple(out)


def canonical_join_rep(sys, X):
    """``{T(c) : c in Cov(X)}``, checked against the definition of a canonical join.

    The checks: the sets join to ``X``; they form an antichain; and for each
    ``c``, the closed subsets of ``X`` avoiding ``c`` join to something
    strictly below ``X`` (so every join representation has a member above
    ``T(c)``).
    """
    data = cov(sys, X)
    b = sys._bits
    m = _bits.mask(data.closed_set)
    parts = {c: T_of(sys, c) for c in data.cov}
    union = 0
    for t in parts.values():
        union |= _bits.mask(t)
    if b.closure(union) != m:
        raise IsomorphismFailure("representation does not join to the set")
    for c, d in combinations(data.cov, 2):
        if sys.onto[c, d] or sys.onto[d, c]:
            raise IsomorphismFailure("representation is not an antichain", witness=(c, d))
    for c in data.cov:
        avoid = _bits.mask(x for x in data.closed_set if not sys.onto[x, c])
        if b.closure(avoid) == m:
            raise IsomorphismFailure("some join representation avoids T(c)", witness=(c,))
    return frozenset(parts.values())


def refines(L, S, S2):
    """``S <<= S2``: every member of ``S`` lies below some member of ``S2``."""
    return all(any(L.leq[s, t] for t in S2) for s in S)


def joining_antichains(L, x, cap=1 << 18):
    """Antichains of join-irreducibles below ``x`` joining to ``x`` with no proper prefix doing so."""
    irr = irreducibles(L)
    J = [j for j in irr.jirr if L.leq[j, x]]
    out = []

    def rec(start, chosen, acc):
        if acc == x:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise SizeLimitExceeded(f"more than {cap} joining antichains")
            return
        for k in range(start, len(J)):
            j = J[k]
            if any(L.leq[j, c] or L.leq[c, j] for c in chosen):
                continue
            chosen.append(j)
            rec(k + 1, chosen, int(L.join[acc, j]))
            chosen.pop()

    rec(0, [], L.bottom)
    return out


def brute_cjr(L, x, cap=1 << 18):
    """Canonical join representation of ``x`` by search, or ``None`` if there is none.

    Any join representation can be refined to an antichain of
    join-irreducibles with the same join, so it is enough to find a joining
    antichain that refines all the others.
    """
    cands = joining_antichains(L, x, cap)
    for C in cands:
        if all(refines(L, C, A) for A in cands):
            return C
    return None


@dataclass(frozen=True)
class CJComplex:
    vertices: tuple
    edges: tuple
    flag: bool = None  # None until checked against a brute-force face list

    def is_face(self, S):
        S = sorted(S)
        es = set(self.edges)
        return all((a, b) in es for a, b in combinations(S, 2))

    def faces(self):
        """All cliques of the edge graph (including the empty face)."""
        adj = {v: 0 for v in self.vertices}
        for a, b in self.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        out = []

        def grow(face, cand):
            out.append(frozenset(face))
            for v in _bits.iter_bits(cand):
                grow(face + [v], cand & adj[v] & ~((1 << (v + 1)) - 1))

        grow([], _bits.mask(self.vertices))
        return sorted(out, key=lambda f: (len(f), sorted(f)))


def cj_complex(sys, verify=False):
    """Vertices are the ground set; distinct ``x, y`` span an edge iff neither points to the other.

    With ``verify`` the cliques are compared against the canonical join
    representations of every element of the pairs lattice, computed by search.
    """
    n = sys.n
    edges = tuple((a, b) for a, b in combinations(range(n), 2)
                  if not sys.to[a, b] and not sys.to[b, a])
    cx = CJComplex(tuple(range(n)), edges)
    if not verify:
        return cx
    return CJComplex(cx.vertices, cx.edges, brute_faces(sys) == set(cx.faces()))


def brute_faces(sys):
    """Canonical join representations of the pairs lattice, as sets of ground elements."""
    from .relations import pairs_lattice

    P = pairs_lattice(sys)
    # T(x) is the closed set of ground element x
    ground_of = {P.index_of_mask(sys.onto_rows[x]): x for x in range(sys.n)}
    faces = set()
    for e in range(len(P)):
        rep = brute_cjr(P.lattice, e)
        if rep is None:
            return None
        faces.add(frozenset(ground_of[j] for j in rep))
    return faces
