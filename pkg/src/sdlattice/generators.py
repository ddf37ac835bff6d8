"""Instance factories: classical lattices, weak order, Tamari, random doublings,
and exhaustive enumeration of small lattices.

All randomness goes through :class:`Lcg`, a 32-bit linear congruential
generator (multiplier 1664525, increment 1013904223), so seeded instances are
reproducible bit for bit in any language.
"""

from itertools import permutations

import numpy as np

from . import _bits
from .errors import NotALattice, NotAPartialOrder, SizeLimitExceeded
from .lattice import Lattice, invariants, is_isomorphic, lattice_from_covers, lattice_from_sets

KNOWN_LATTICE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53, 8: 222}


class Lcg:
    MULT = 1664525
    INC = 1013904223

    def __init__(self, seed):
        self.state = int(seed) & 0xFFFFFFFF

    def next_u32(self):
        self.state = (self.MULT * self.state + self.INC) & 0xFFFFFFFF
        return self.state

    def below(self, k):
        """Uniform-ish integer in ``range(k)`` from the high bits."""
        if k <= 0:
            raise ValueError("k must be positive")
        return (self.next_u32() * k) >> 32

    def random(self):
        return self.next_u32() / 2**32

    def choice(self, seq):
        return seq[self.below(len(seq))]


def chain(n):
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    if n < 1:
        raise ValueError("a chain needs at least one element")
    return Lattice(np.triu(np.ones((n, n), dtype=bool)))


def boolean(n, cap=1 << 12):
    """Subsets of an ``n``-set under containment."""
    if (1 << n) > cap:
        raise SizeLimitExceeded(f"boolean({n}) has more than {cap} elements")
    masks = sorted(range(1 << n), key=_bits.sort_key)
    labels = ["{" + ",".join(str(i + 1) for i in _bits.members(m)) + "}" for m in masks]
    return lattice_from_sets(masks, labels)


def downsets_of(P, cap=1 << 16):
    """Distributive lattice of downsets of a poset, ordered by containment.

    ``P[x, y]`` is ``x <= y``; a downset contains everything below its members.
    """
    P = np.asarray(P, dtype=bool)
    if not (P.diagonal().all() and not (P & P.T & ~np.eye(len(P), dtype=bool)).any()):
        raise NotAPartialOrder("downsets_of needs a partial order")
    below = _bits.row_masks(P.T)
    masks = _bits.downsets(below, cap=cap)
    labels = ["{" + ",".join(str(i + 1) for i in _bits.members(m)) + "}" for m in masks]
    return lattice_from_sets(masks, labels)


def antichain_poset(n):
    return np.eye(n, dtype=bool)


def chain_poset(n):
    return np.triu(np.ones((n, n), dtype=bool))


def random_poset(n, seed, p=0.3):
    """Random partial order on ``range(n)`` (natural labelling), ``P[x, y]`` = ``x <= y``."""
    rng = Lcg(seed)
    P = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                P[i, j] = True
    for k in range(n):
        P |= P[:, k][:, None] & P[k][None, :]
    return P


def inversion_set(w):
    """Pairs of values ``(a, b)``, ``a < b``, with ``b`` appearing before ``a``."""
    pos = {v: i for i, v in enumerate(w)}
    return frozenset((a, b) for a in w for b in w if a < b and pos[b] < pos[a])


def weak_order_sn(n):
    """Right weak order on permutations of ``1..n``: containment of inversion sets."""
    if n > 7:
        raise SizeLimitExceeded("weak order is capped at n = 7")
    perms = sorted(permutations(range(1, n + 1)), key=lambda w: (len(inversion_set(w)), w))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    bit = {p: 1 << i for i, p in enumerate(pairs)}
    masks = [sum(bit[p] for p in inversion_set(w)) for w in perms]
    labels = ["".join(map(str, w)) for w in perms]
    return lattice_from_sets(masks, labels)


def binary_trees(n):
    """All binary trees with ``n`` internal nodes as nested pairs (``None`` is a leaf)."""
    if n == 0:
        return [None]
    out = []
    for k in range(n):
        for left in binary_trees(k):
            for right in binary_trees(n - 1 - k):
                out.append((left, right))
    return out


def _rotations(t):
    """Trees one right-to-left rotation above ``t``: ``((A, B), C) -> (A, (B, C))``."""
    if t is None:
        return []
    left, right = t
    out = []
    if left is not None:
        a, b = left
        out.append((a, (b, right)))
    out += [(l2, right) for l2 in _rotations(left)]
    out += [(left, r2) for r2 in _rotations(right)]
    return out


def tree_string(t):
    if t is None:
        return "."
    return "(" + tree_string(t[0]) + tree_string(t[1]) + ")"


def tamari(n):
    """Tamari lattice on binary trees with ``n`` nodes, built from rotation covers."""
    if n > 9:
        raise SizeLimitExceeded("tamari is capped at n = 9")
    trees = binary_trees(n)
    index = {t: i for i, t in enumerate(trees)}
    edges = [(index[t], index[s]) for t in trees for s in _rotations(t)]
    return lattice_from_covers(edges, len(trees), labels=[tree_string(t) for t in trees])


def random_interval(L, rng):
    lo = rng.below(L.size)
    above = [int(x) for x in np.flatnonzero(L.leq[lo])]
    return lo, rng.choice(above)


def doubling_random(steps, seed, cap=4096):
    """Start from one element and double a pseudorandom interval ``steps`` times."""
    from .constructions import double_lattice

    rng = Lcg(seed)
    L = chain(1)
    for _ in range(steps):
        lo, hi = random_interval(L, rng)
        L = double_lattice(L, lo, hi)
        if L.size > cap:
            raise SizeLimitExceeded(f"doubling exceeded {cap} elements")
    return L


def _natural_posets(m):
    """Naturally labelled posets on ``m`` points as lists of strict-downset masks."""
    if m == 0:
        yield []
        return
    for below in _natural_posets(m - 1):
        need = [b | (1 << i) for i, b in enumerate(below)]
        for d in _bits.downsets(need):
            yield below + [d]


def exhaustive_lattices(n):
    """Every lattice with ``n`` elements, one per isomorphism class.

    Lattices with two or more elements are a bottom and a top around a
    naturally labelled poset on the remaining ``n - 2`` points; candidates are
    checked with the lattice constructor and deduplicated by invariants plus
    an isomorphism test.
    """
    if n < 1:
        return []
    if n > 8:
        raise SizeLimitExceeded("exhaustive enumeration is capped at 8 elements")
    if n == 1:
        return [chain(1)]
    m = n - 2
    found = {}
    out = []
    for below in _natural_posets(m):
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        for i, d in enumerate(below):
            for j in _bits.iter_bits(d):
                leq[j + 1, i + 1] = True
        try:
            L = Lattice(leq)
        except NotALattice:
            continue
        key = tuple(sorted(invariants(L)))
        bucket = found.setdefault(key, [])
        if any(is_isomorphic(L, other) is not None for other in bucket):
            continue
        bucket.append(L)
        out.append(L)
    return out


def lattices_up_to(n):
    out = []
    for k in range(1, n + 1):
        out.extend(exhaustive_lattices(k))
    return out
