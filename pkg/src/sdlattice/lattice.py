"""Finite lattices given by an order matrix.

A :class:`Lattice` stores ``leq[i, j] == (i <= j)`` as a read-only boolean
array, together with eagerly materialised meet and join tables, the Hasse
diagram, and the bottom/top elements.  Everything downstream hammers the
tables, so they are built once at construction.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import NotALattice, NotAPartialOrder, SizeLimitExceeded


def _readonly(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def _bool_matmul(a, b):
    # float32 BLAS is exact for counts below 2**24
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


def _bound_table(leq, counts):
    """Least-upper (or greatest-lower) bound table by counting.

    For ``leq`` the order matrix, ``m`` is the meet of ``a`` and ``b`` iff it is
    a common lower bound whose principal downset has as many elements as the
    set of all common lower bounds.  Pass ``leq.T`` and up-counts for joins.
    """
    n = leq.shape[0]
    table = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        common = leq[:, a][:, None] & leq
        total = common.sum(axis=0)
        score = np.where(common, counts[:, None], -1)
        best = score.argmax(axis=0)
        bad = np.flatnonzero(counts[best] != total)
        if bad.size:
            raise NotALattice(
                f"elements {a} and {int(bad[0])} have no unique bound",
                witness=(a, int(bad[0])),
            )
        table[a] = best
    return table


def check_partial_order(leq):
    """Raise :class:`NotAPartialOrder` (with a witness) unless ``leq`` is a partial order."""
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise NotAPartialOrder(f"order matrix must be square, got shape {leq.shape}")
    n = leq.shape[0]
    diag = np.flatnonzero(~leq.diagonal())
    if diag.size:
        raise NotAPartialOrder("not reflexive", witness=(int(diag[0]),))
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        raise NotAPartialOrder("not antisymmetric", witness=(i, j))
    broken = _bool_matmul(leq, leq) & ~leq
    if broken.any():
        i, k = map(int, np.argwhere(broken)[0])
        j = int(np.flatnonzero(leq[i] & leq[:, k])[0])
        raise NotAPartialOrder("not transitive", witness=(i, j, k))


class Lattice:
    """A finite lattice on elements ``0..size-1``.

    Construction validates that ``leq`` is a partial order with all pairwise
    meets and joins; it raises :class:`NotAPartialOrder` or
    :class:`NotALattice` otherwise.
    """

    def __init__(self, leq, labels=None):
        leq = np.asarray(leq, dtype=bool)
        check_partial_order(leq)
        n = leq.shape[0]
        if n == 0:
            raise NotALattice("a lattice needs at least one element")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise ValueError("labels must be distinct and one per element")
        self.size = n
        self.labels = labels
        self.leq = _readonly(leq)
        self.down_count = _readonly(leq.sum(axis=0))
        self.up_count = _readonly(leq.sum(axis=1))
        self.meet = _readonly(_bound_table(leq, self.down_count))
        self.join = _readonly(_bound_table(leq.T, self.up_count))
        self.bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        self.top = int(np.flatnonzero(leq.all(axis=0))[0])

        strict = leq & ~np.eye(n, dtype=bool)
        cover = strict & ~_bool_matmul(strict, strict)
        self.cover_matrix = _readonly(cover)
        self.upper_covers = tuple(tuple(map(int, np.flatnonzero(cover[i]))) for i in range(n))
        self.lower_covers = tuple(tuple(map(int, np.flatnonzero(cover[:, i]))) for i in range(n))

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"Lattice(size={self.size})"

    def label(self, i):
        return self.labels[i] if self.labels is not None else str(i)

    @property
    def covers(self):
        """All cover pairs ``(a, b)`` with ``a`` covered by ``b``."""
        return [(a, b) for a in range(self.size) for b in self.upper_covers[a]]

    def join_all(self, elements):
        x = self.bottom
        for e in elements:
            x = int(self.join[x, e])
        return x

    def meet_all(self, elements):
        x = self.top
        for e in elements:
            x = int(self.meet[x, e])
        return x

    def interval(self, lo, hi):
        return [int(x) for x in np.flatnonzero(self.leq[lo] & self.leq[:, hi])]

    def dual(self):
        return Lattice(self.leq.T, self.labels)

    def linear_extension(self):
        """Elements sorted so that ``a < b`` implies ``a`` comes first."""
        return [int(x) for x in np.argsort(self.down_count, kind="stable")]

    def heights(self):
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.size
        for x in self.linear_extension():
            for y in self.lower_covers[x]:
                h[x] = max(h[x], h[y] + 1)
        return h

    def depths(self):
        d = [0] * self.size
        for x in reversed(self.linear_extension()):
            for y in self.upper_covers[x]:
                d[x] = max(d[x], d[y] + 1)
        return d

    def longest_chain(self):
        """A maximal chain of greatest length, listed bottom to top."""
        h = self.heights()
        chain = [self.top]
        while chain[-1] != self.bottom:
            x = chain[-1]
            chain.append(max(self.lower_covers[x], key=lambda y: h[y]))
        return chain[::-1]


def lattice_from_leq(matrix, labels=None):
    return Lattice(matrix, labels)


def lattice_from_covers(edges, size, labels=None):
    """Build a lattice from cover pairs ``(a, b)`` meaning ``a`` is below ``b``.

    The edges need only generate the order; redundant ones are harmless.
    """
    adj = np.eye(size, dtype=bool)
    for a, b in edges:
        if not (0 <= a < size and 0 <= b < size):
            raise NotAPartialOrder(f"edge {(a, b)} out of range", witness=(a, b))
        adj[a, b] = True
    leq = transitive_closure(adj)
    return Lattice(leq, labels)


def transitive_closure(adj):
    """Reflexive-transitive closure of a boolean adjacency matrix."""
    reach = np.asarray(adj, dtype=bool) | np.eye(len(adj), dtype=bool)
    while True:
        nxt = _bool_matmul(reach, reach)
        if (nxt == reach).all():
            return reach
        reach = nxt


def lattice_from_sets(masks, labels=None):
    """Containment order on a family of subsets given as int bitmasks."""
    masks = [int(m) for m in masks]
    width = max((m.bit_length() for m in masks), default=0)
    member = np.array([[(m >> j) & 1 for j in range(width)] for m in masks],
                      dtype=np.float32).reshape(len(masks), width)
    # a ⊆ b iff no element of a lies outside b
    leq = (member @ (1 - member).T) == 0
    return Lattice(leq, labels)


# ---------------------------------------------------------------------------
# irreducibles and the kappa maps


@dataclass(frozen=True)
class IrreducibleData:
    jirr: tuple
    j_star: dict
    mirr: tuple
    m_star: dict
    kappa: dict  # j -> m, or None where no unique maximum exists
    kappa_d: dict  # m -> j, or None

    @property
    def kappa_total(self):
        return all(v is not None for v in self.kappa.values())

    @property
    def kappa_d_total(self):
        return all(v is not None for v in self.kappa_d.values())


def _extremum(L, candidates, above=True):
    """The unique maximum (or minimum) of a boolean candidate mask, else None."""
    if not candidates.any():
        return None
    idx = np.flatnonzero(candidates)
    if above:
        ok = L.leq[idx].all(axis=0) & candidates
    else:
        ok = L.leq[:, idx].all(axis=1) & candidates
    found = np.flatnonzero(ok)
    return int(found[0]) if found.size else None


def irreducibles(L):
    jirr = tuple(x for x in range(L.size) if len(L.lower_covers[x]) == 1)
    mirr = tuple(x for x in range(L.size) if len(L.upper_covers[x]) == 1)
    j_star = {j: L.lower_covers[j][0] for j in jirr}
    m_star = {m: L.upper_covers[m][0] for m in mirr}
    kappa = {j: _extremum(L, L.meet[j] == j_star[j], above=True) for j in jirr}
    kappa_d = {m: _extremum(L, L.join[m] == m_star[m], above=False) for m in mirr}
    return IrreducibleData(jirr, j_star, mirr, m_star, kappa, kappa_d)


@dataclass(frozen=True)
class SDReport:
    join_sd: bool
    meet_sd: bool
    join_witness: tuple = None
    meet_witness: tuple = None
    kappa_total: bool = field(default=None)
    kappa_d_total: bool = field(default=None)

    @property
    def semidistributive(self):
        return self.join_sd and self.meet_sd

    @property
    def consistent(self):
        """Definitional verdicts agree with the kappa-totality characterisation."""
        return self.meet_sd == self.kappa_total and self.join_sd == self.kappa_d_total


def _sd_witness(op, dual):
    # x op y == x op z  must imply  x op (y dual z) == x op y
    n = op.shape[0]
    for x in range(n):
        row = op[x]
        same = row[:, None] == row[None, :]
        lhs = row[dual]
        bad = same & (lhs != row[:, None])
        if bad.any():
            y, z = map(int, np.argwhere(bad)[0])
            return (x, y, z)
    return None


def is_semidistributive(L):
    """Definitional triple check of join- and meet-semidistributivity.

    The report also records totality of the kappa maps so the two verdicts
    can be compared.
    """
    jw = _sd_witness(L.join, L.meet)
    mw = _sd_witness(L.meet, L.join)
    irr = irreducibles(L)
    return SDReport(
        join_sd=jw is None,
        meet_sd=mw is None,
        join_witness=jw,
        meet_witness=mw,
        kappa_total=irr.kappa_total,
        kappa_d_total=irr.kappa_d_total,
    )


def is_distributive(L):
    """``x ∧ (y ∨ z) == (x ∧ y) ∨ (x ∧ z)`` for all triples."""
    meet, join = L.meet, L.join
    for x in range(L.size):
        lhs = meet[x][join]
        rhs = join[meet[x][:, None], meet[x][None, :]]
        if (lhs != rhs).any():
            return False
    return True


# ---------------------------------------------------------------------------
# isomorphism


def invariants(L):
    """Per-element isomorphism invariants used to prune the search."""
    irr = set(irreducibles(L).jirr)
    h, d = L.heights(), L.depths()
    jbelow = [sum(1 for j in irr if L.leq[j, x]) for x in range(L.size)]
    return [
        (h[x], d[x], len(L.upper_covers[x]), len(L.lower_covers[x]),
         int(L.down_count[x]), int(L.up_count[x]), jbelow[x])
        for x in range(L.size)
    ]


def is_isomorphic(L1, L2, cap=2000):
    """Search for an order isomorphism; return it as a list ``f`` or None.

    ``f[x]`` is the image in ``L2`` of element ``x`` of ``L1``.
    """
    if max(L1.size, L2.size) > cap:
        raise SizeLimitExceeded(f"isomorphism search capped at {cap} elements")
    if L1.size != L2.size or len(L1.covers) != len(L2.covers):
        return None
    inv1, inv2 = invariants(L1), invariants(L2)
    if sorted(inv1) != sorted(inv2):
        return None
    buckets = {}
    for y, key in enumerate(inv2):
        buckets.setdefault(key, []).append(y)

    # bottom-up so every element after the first has a mapped lower cover
    order = L1.linear_extension()
    f = [-1] * L1.size
    used = [False] * L2.size
    leq1, leq2 = L1.leq, L2.leq

    def consistent(x, y, done):
        d = np.asarray(done, dtype=np.intp)
        if d.size == 0:
            return True
        img = np.asarray([f[u] for u in done], dtype=np.intp)
        return bool((leq1[d, x] == leq2[img, y]).all() and (leq1[x, d] == leq2[y, img]).all())

    n = len(order)
    choices = [None] * n
    k = 0
    choices[0] = iter(buckets[inv1[order[0]]])
    while True:
        x = order[k]
        if f[x] >= 0:
            used[f[x]] = False
            f[x] = -1
        for y in choices[k]:
            if not used[y] and consistent(x, y, order[:k]):
                f[x] = y
                used[y] = True
                break
        if f[x] < 0:
            k -= 1
            if k < 0:
                return None
            continue
        k += 1
        if k == n:
            return list(f)
        choices[k] = iter(buckets[inv1[order[k]]])


def isomorphism_preserves_order(L1, L2, f):
    """Check a candidate bijection ``f`` against both order matrices."""
    if sorted(f) != list(range(L2.size)) or L1.size != L2.size:
        return False
    f = np.asarray(f)
    return bool((L2.leq[np.ix_(f, f)] == L1.leq).all())


def is_antichain(L, elements):
    return all(not L.leq[a, b] and not L.leq[b, a] for a, b in combinations(elements, 2))
