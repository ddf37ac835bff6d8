"""Systems and lattices built from others: intervals, doubling, the
distributive and extremal special cases, and the two-set representation of
an arbitrary finite lattice by join- and meet-irreducibles.
"""

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from . import _bits
from .errors import (IsomorphismFailure, NotAnInterval, NotComparable, NotSemidistributive,
                     SizeLimitExceeded)
from .lattice import (Lattice, irreducibles, is_distributive, is_isomorphic,
                      is_semidistributive)
from .relations import (OrthoPair, PairsLattice, _TwoSetBits, closed_set_masks, diagnose, fact,
                        is_partial_order, is_reflexive, pairs_lattice, validate_system, _compose)


def _pair_masks(sys, p):
    """``(X, Y)`` bitmasks for an :class:`OrthoPair` or a closed set."""
    b = sys._bits
    X = _bits.mask(p.torsion if isinstance(p, OrthoPair) else p)
    if b.closure(X) != X:
        raise NotComparable("not a closed set", witness=tuple(_bits.members(X)))
    return X, b.perp_right(X)


# ---------------------------------------------------------------------------
# intervals


def interval_system(sys, lo, hi, verify=True):
    """The system on ``X2 ∩ Y1`` whose pairs lattice is the interval ``[lo, hi]``.

    With ``verify`` the map ``(U, V) -> (U ∩ Y1, V ∩ X2)`` is checked to be an
    order isomorphism from the interval onto the new pairs lattice.
    """
    X1, Y1 = _pair_masks(sys, lo)
    X2, Y2 = _pair_masks(sys, hi)
    if X1 & ~X2:
        raise NotComparable("lower end is not below upper end",
                            witness=(tuple(_bits.members(X1)), tuple(_bits.members(X2))))
    ground = _bits.members(X2 & Y1)
    idx = np.asarray(ground, dtype=np.intp)
    sub = sys.to[np.ix_(idx, idx)]
    result = validate_system(sub, labels=[sys.labels[i] for i in ground])
    if verify:
        _check_interval_map(sys, result, X1, X2, Y1, ground)
    return result


def _check_interval_map(sys, result, X1, X2, Y1, ground):
    pos = {x: k for k, x in enumerate(ground)}
    relabel = lambda m: _bits.mask(pos[x] for x in _bits.iter_bits(m))
    full = pairs_lattice(sys)
    inside = [m for m in full.masks if m & ~X2 == 0 and X1 & ~m == 0]
    sub = pairs_lattice(result)
    rb = result._bits
    images = []
    for U in inside:
        V = sys._bits.perp_right(U)
        u, v = relabel(U & Y1), relabel(V & X2)
        if rb.perp_right(u) != v or rb.perp_left(v) != u:
            raise IsomorphismFailure("interval image is not a maximal orthogonal pair")
        images.append(u)
    if sorted(images, key=_bits.sort_key) != list(sub.masks):
        raise IsomorphismFailure("interval map is not a bijection")
    for a, U in enumerate(inside):
        for b, W in enumerate(inside):
            if (U & ~W == 0) != (images[a] & ~images[b] == 0):
                raise IsomorphismFailure("interval map does not preserve order")


def is_cover_by_ground(sys, lo, hi):
    """``lo < hi`` is a cover exactly when ``X2 ∩ Y1`` is a single element."""
    _, Y1 = _pair_masks(sys, lo)
    X2, _ = _pair_masks(sys, hi)
    return _bits.popcount(X2 & Y1) == 1


# ---------------------------------------------------------------------------
# doubling


def doubled(L, lo, hi):
    """Double the interval ``[lo, hi]`` of ``L``.

    Returns the new lattice and its origin list: ``origin[k]`` is
    ``(x, None)`` for an untouched ``x`` and ``(x, 1)`` or ``(x, 2)`` for the
    two copies of an ``x`` in the interval.  Elements keep the order of
    ``L``, each copy pair taking two consecutive slots.
    """
    if not L.leq[lo, hi]:
        raise NotAnInterval("lower end is not below upper end", witness=(lo, hi))
    inside = L.leq[lo] & L.leq[:, hi]
    origin = []
    for x in range(L.size):
        origin += [(x, 1), (x, 2)] if inside[x] else [(x, None)]
    proj = np.array([o[0] for o in origin], dtype=np.intp)
    level = np.array([o[1] or 0 for o in origin])
    both = level > 0
    leq = L.leq[np.ix_(proj, proj)] & ~(both[:, None] & both[None, :] & (level[:, None] > level[None, :]))
    labels = None
    if L.labels is not None:
        labels = [L.labels[x] if lv is None else f"{L.labels[x]}#{lv}" for x, lv in origin]
    return Lattice(leq, labels), tuple(origin)


def double_lattice(L, lo, hi):
    return doubled(L, lo, hi)[0]


def _fresh_label(labels):
    k = len(labels) + 1
    while str(k) in labels:
        k += 1
    return str(k)


def double_system(sys, lo, hi, verify=False):
    """Add one element ``a`` so that the pairs lattice doubles the interval ``[lo, hi]``.

    ``a`` is appended as the last index.  With ``verify`` the result's pairs
    lattice is compared with :func:`double_lattice` up to isomorphism.
    """
    X1, Y1 = _pair_masks(sys, lo)
    X2, Y2 = _pair_masks(sys, hi)
    if X1 & ~X2:
        raise NotComparable("lower end is not below upper end")
    n = sys.n
    inX1 = np.array([X1 >> x & 1 for x in range(n)], dtype=bool)
    inX2 = np.array([X2 >> x & 1 for x in range(n)], dtype=bool)
    inY1 = np.array([Y1 >> x & 1 for x in range(n)], dtype=bool)
    inY2 = np.array([Y2 >> x & 1 for x in range(n)], dtype=bool)

    def grow(r):
        out = np.zeros((n + 1, n + 1), dtype=bool)
        out[:n, :n] = r
        out[n, n] = True
        return out

    to, onto, into = grow(sys.to), grow(sys.onto), grow(sys.into)
    to[:n, n] = ~inX2
    to[n, :n] = ~inY1
    onto[n, :n] = inX1
    onto[:n, n] = ~inX2 & sys.onto[:, inX1].all(axis=1)
    into[:n, n] = inY2
    into[n, :n] = ~inY1 & sys.into[inY2, :].all(axis=0)
    labels = list(sys.labels) + [_fresh_label(sys.labels)]
    result = validate_system(to, onto, into, labels=labels)
    if verify:
        P = pairs_lattice(sys)
        target = double_lattice(P.lattice, P.index_of_mask(X1), P.index_of_mask(X2))
        if is_isomorphic(pairs_lattice(result).lattice, target) is None:
            raise IsomorphismFailure("doubled system does not match the doubled lattice")
    return result


# ---------------------------------------------------------------------------
# distributive case


@dataclass(frozen=True)
class DistributiveReport:
    pairs_distributive: bool
    arrow_partial_order: bool
    onto_equals_into: bool
    arrow_equals_onto: bool
    arrow_equals_into: bool

    @property
    def values(self):
        return (self.pairs_distributive, self.arrow_partial_order, self.onto_equals_into,
                self.arrow_equals_onto, self.arrow_equals_into)

    @property
    def consistent(self):
        return len(set(self.values)) == 1


def dist_char(sys, pairs=None):
    """Evaluate the five equivalent descriptions of a distributive pairs lattice."""
    P = pairs if pairs is not None else pairs_lattice(sys)
    report = DistributiveReport(
        is_distributive(P.lattice),
        is_partial_order(sys.to),
        bool((sys.onto == sys.into).all()),
        bool((sys.to == sys.onto).all()),
        bool((sys.to == sys.into).all()),
    )
    if not report.consistent:
        raise IsomorphismFailure("distributivity criteria disagree", witness=report.values)
    return report


# ---------------------------------------------------------------------------
# arbitrary finite lattices via two sets


@dataclass(frozen=True, eq=False)
class TwoSetRelation:
    left: tuple
    right: tuple
    adj: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.adj, dtype=bool).reshape(len(self.left), len(self.right))
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    def fact(self):
        """Preorders on each side: left ``x1 => x2`` iff image(x2) ⊆ image(x1); right dually."""
        r = self.adj.astype(np.float32)
        onto = (r @ r.T) == self.adj.sum(axis=1)[None, :]
        into = (r.T @ r) == self.adj.sum(axis=0)[:, None]
        return onto, into


def markowsky_system(L):
    """Join-irreducibles, meet-irreducibles, and ``j -> m`` iff ``j`` is not below ``m``."""
    irr = irreducibles(L)
    J, M = list(irr.jirr), list(irr.mirr)
    adj = ~L.leq[np.ix_(J, M)] if J and M else np.zeros((len(J), len(M)), dtype=bool)
    return TwoSetRelation(tuple(J), tuple(M), adj)


def two_set_pairs(rel):
    """Maximal orthogonal pairs of a two-set relation, ordered by the left part."""
    b = _TwoSetBits(rel.adj)
    return PairsLattice(rel, closed_set_masks(b), b.perp_right)


def companionable(rel):
    """``(True, None)`` or ``(False, (side, element))`` for the first element lacking a companion."""
    onto, into = rel.fact()
    A = rel.adj
    for x in range(len(rel.left)):
        ok = any(A[x, y] and not any(onto[x, x2] and A[x2, y] for x2 in range(len(rel.left)) if x2 != x)
                 for y in range(len(rel.right)))
        if not ok:
            return False, ("left", x)
    for y in range(len(rel.right)):
        ok = any(A[x, y] and not any(A[x, y2] and into[y2, y] for y2 in range(len(rel.right)) if y2 != y)
                 for x in range(len(rel.left)))
        if not ok:
            return False, ("right", y)
    return True, None


def markowsky_roundtrip(L):
    """Check ``x -> ({j <= x}, {m >= x})`` is an isomorphism onto the two-set pairs lattice."""
    rel = markowsky_system(L)
    P = two_set_pairs(rel)
    if len(P) != L.size:
        raise IsomorphismFailure(f"{L.size} elements but {len(P)} pairs")
    b = _TwoSetBits(rel.adj)
    images = []
    for x in range(L.size):
        X = _bits.mask(k for k, j in enumerate(rel.left) if L.leq[j, x])
        Y = _bits.mask(k for k, m in enumerate(rel.right) if L.leq[x, m])
        if b.perp_right(X) != Y or b.perp_left(Y) != X:
            raise IsomorphismFailure("image is not a maximal orthogonal pair", witness=(x,))
        if L.join_all(rel.left[k] for k in _bits.iter_bits(X)) != x:
            raise IsomorphismFailure("join of left part is not x", witness=(x,))
        if L.meet_all(rel.right[k] for k in _bits.iter_bits(Y)) != x:
            raise IsomorphismFailure("meet of right part is not x", witness=(x,))
        images.append(P.index_of_mask(X))
    f = np.asarray(images)
    if sorted(images) != list(range(L.size)) or not (P.lattice.leq[np.ix_(f, f)] == L.leq).all():
        raise IsomorphismFailure("map is not an order isomorphism")
    ok, w = companionable(rel)
    if not ok:
        raise IsomorphismFailure("irreducible relation is not companionable", witness=w)
    return P


# ---------------------------------------------------------------------------
# extremal lattices


def is_acyclic_reflexive(rel):
    """Reflexive, and acyclic once the loops are removed."""
    rel = np.asarray(rel, dtype=bool)
    if not is_reflexive(rel):
        return False
    g = rel & ~np.eye(len(rel), dtype=bool)
    alive = np.ones(len(rel), dtype=bool)
    while alive.any():
        sources = alive & ~g[alive].any(axis=0)
        if not sources.any():
            return False
        alive &= ~sources
    return True


@dataclass(frozen=True)
class ExtremalCertificate:
    chain: tuple
    n_jirr: int
    n_mirr: int
    mu: dict = None  # join-irreducible -> meet-irreducible, when extremal

    @property
    def length(self):
        return len(self.chain) - 1

    @property
    def extremal(self):
        return self.length == self.n_jirr == self.n_mirr


def _arrow_mu(L, J, mu):
    """``i ->mu j`` iff ``i`` is not below ``mu(j)``."""
    M = [mu[j] for j in J]
    return ~L.leq[np.ix_(J, M)] if J else np.zeros((0, 0), dtype=bool)


def ftfel_mu(L):
    """The bijection ``mu`` with ``j`` not below ``mu(j)`` for all ``j``, or ``None``.

    ``None`` unless ``L`` is extremal.  A perfect matching of the
    "not below" bipartite graph is found, shown to be the only one, and its
    relation is checked to be acyclic reflexive.
    """
    chain = L.longest_chain()
    irr = irreducibles(L)
    J, M = list(irr.jirr), list(irr.mirr)
    if not (len(chain) - 1 == len(J) == len(M)):
        return None
    if not J:
        return {}
    graph = ~L.leq[np.ix_(J, M)]
    match = maximum_bipartite_matching(csr_matrix(graph.astype(np.int8)), perm_type="column")
    if (match < 0).any():
        raise IsomorphismFailure("extremal lattice without a diagonal bijection")
    mu = {J[a]: M[int(match[a])] for a in range(len(J))}
    # another perfect matching exists iff a matched edge can be avoided
    for a in range(len(J)):
        g = graph.copy()
        g[a, int(match[a])] = False
        other = maximum_bipartite_matching(csr_matrix(g.astype(np.int8)), perm_type="column")
        if not (other < 0).any():
            raise IsomorphismFailure("diagonal bijection is not unique", witness=(J[a],))
    if not is_acyclic_reflexive(_arrow_mu(L, J, mu)):
        raise IsomorphismFailure("diagonal relation is not acyclic")
    return mu


def brute_mu(L, cap=9):
    """Every bijection ``mu`` with ``j`` not below ``mu(j)``, by trying all of them."""
    irr = irreducibles(L)
    J, M = list(irr.jirr), list(irr.mirr)
    if len(J) != len(M):
        return []
    if len(J) > cap:
        raise SizeLimitExceeded(f"more than {cap} join-irreducibles")
    out = []
    for perm in permutations(M):
        if all(not L.leq[j, m] for j, m in zip(J, perm)):
            out.append(dict(zip(J, perm)))
    return out


def extremal_analysis(L):
    irr = irreducibles(L)
    cert = ExtremalCertificate(tuple(L.longest_chain()), len(irr.jirr), len(irr.mirr))
    if cert.extremal:
        cert = ExtremalCertificate(cert.chain, cert.n_jirr, cert.n_mirr, ftfel_mu(L))
    return cert


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    size: int
    distributive: bool
    join_sd: bool
    meet_sd: bool
    semidistributive: bool
    congruence_uniform: bool
    extremal: bool
    trim_candidate: bool
    system: dict = None  # extra verdicts when the input was a relation

    def to_dict(self):
        d = {k: v for k, v in self.__dict__.items() if k != "system"}
        if self.system is not None:
            d["system"] = dict(self.system)
        return d


def classify_lattice(L):
    from .congruence import is_congruence_uniform
    from .extraction import extract_system

    sd = is_semidistributive(L)
    cu = False
    if sd.semidistributive:
        cu = is_congruence_uniform(extract_system(L).system)
    ext = extremal_analysis(L).extremal
    return Classification(L.size, is_distributive(L), sd.join_sd, sd.meet_sd,
                          sd.semidistributive, cu, ext, ext and sd.semidistributive)


def classify_relation(to):
    """Classify ``Pairs(to)`` and cross-check the relation-level criteria.

    ``to`` may be any reflexive relation; the axioms of a two-acyclic
    factorization system are reported rather than required.
    """
    to = np.asarray(getattr(to, "to", to), dtype=bool)
    onto, into = fact(to)
    diag = diagnose(to, onto, into)
    P = pairs_lattice(to)
    base = classify_lattice(P.lattice)
    acyclic = is_acyclic_reflexive(to)
    mult_ok = bool((_compose(onto, into) == to).all())
    extra = {
        "two_acyclic": diag.ok,
        "failures": {k: list(v) for k, v in diag.failures().items()},
        "acyclic_reflexive": acyclic,
        "mult_equals_arrow": mult_ok,
    }
    if acyclic:
        extra["sd_iff_mult"] = base.semidistributive == mult_ok
    if diag.ok:
        extra["extremal_iff_acyclic"] = base.extremal == acyclic
    if not all(extra.get(k, True) for k in ("sd_iff_mult", "extremal_iff_acyclic")):
        raise IsomorphismFailure("relation-level criteria disagree with the lattice", witness=extra)
    return Classification(**{**base.__dict__, "system": extra})


def classify(obj):
    if isinstance(obj, Lattice):
        return classify_lattice(obj)
    return classify_relation(obj)
