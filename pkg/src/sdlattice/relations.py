"""Binary relations, factorization systems, and lattices of maximal orthogonal pairs.

Relations are square boolean numpy arrays with ``rel[x, y]`` meaning
``x -> y``.  Subsets of the ground set are exchanged as frozensets of indices
and handled internally as int bitmasks.

Order convention: when onto or into is read as a partial order, an arrow
``x => y`` means ``x >= y``.  So "x is onto-minimal in S" means there is no
other ``x'`` in ``S`` with ``x => x'``, and "c is into-maximal in X" means
there is no other ``x`` in ``X`` with ``x => c``.  Every min/max helper in
the package goes through :func:`maximal` and :func:`minimal` below.
"""

import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _bits
from .errors import InvalidSystem, NonReflexiveInput, NotTransitiveWarning, SizeLimitExceeded
from .lattice import lattice_from_sets

DEFAULT_CAP = 1 << 20


def as_relation(rel, reflexive=False):
    """Coerce to a square boolean array; ``reflexive=True`` sets the diagonal."""
    a = np.array(rel, dtype=bool)
    if a.size == 0:
        a = np.zeros((0, 0), dtype=bool)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"relation must be square, got shape {a.shape}")
    if reflexive:
        np.fill_diagonal(a, True)
    return a


def identity(n):
    return np.eye(n, dtype=bool)


def relation_from_pairs(n, pairs, reflexive=True):
    a = np.zeros((n, n), dtype=bool)
    for x, y in pairs:
        a[x, y] = True
    if reflexive:
        np.fill_diagonal(a, True)
    return a


def is_reflexive(rel):
    return bool(np.asarray(rel).diagonal().all())


def is_transitive(rel):
    rel = np.asarray(rel, dtype=bool)
    return not (_compose(rel, rel) & ~rel).any()


def is_antisymmetric(rel):
    rel = np.asarray(rel, dtype=bool)
    return not (rel & rel.T & ~np.eye(len(rel), dtype=bool)).any()


def is_partial_order(rel):
    return is_reflexive(rel) and is_transitive(rel) and is_antisymmetric(rel)


def _compose(a, b):
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


def maximal(rel, S):
    """Elements ``c`` of ``S`` with no other ``x`` in ``S`` such that ``x => c``."""
    S = sorted(S)
    return frozenset(c for c in S if not any(rel[x, c] for x in S if x != c))


def minimal(rel, S):
    """Elements ``x`` of ``S`` with no other ``x'`` in ``S`` such that ``x => x'``."""
    S = sorted(S)
    return frozenset(x for x in S if not any(rel[x, y] for y in S if y != x))


def _require_reflexive(rel, name="relation"):
    missing = np.flatnonzero(~np.asarray(rel).diagonal())
    if missing.size:
        raise NonReflexiveInput(f"{name} is missing the loop at {int(missing[0])}",
                                witness=(int(missing[0]),))


def fact(rel):
    """Factor a reflexive relation into its (onto, into) preorders.

    ``onto[x, y]``: everything ``y`` points to, ``x`` points to as well.
    ``into[x, y]``: everything pointing to ``x`` also points to ``y``.
    """
    rel = as_relation(rel)
    _require_reflexive(rel)
    r = rel.astype(np.float32)
    # onto[x, y] iff |image(y)| == |image(x) ∩ image(y)|
    common_out = r @ r.T
    onto = common_out == rel.sum(axis=1)[None, :]
    common_in = r.T @ r
    into = common_in == rel.sum(axis=0)[:, None]
    return onto, into


def mult(onto, into):
    """Relational product: ``x -> z`` iff ``x => y`` onto and ``y => z`` into for some ``y``."""
    onto, into = as_relation(onto), as_relation(into)
    _require_reflexive(onto, "onto")
    _require_reflexive(into, "into")
    if not (is_transitive(onto) and is_transitive(into)):
        warnings.warn("mult() called with a non-transitive argument", NotTransitiveWarning,
                      stacklevel=2)
    return _compose(onto, into)


def _first(matrix):
    hit = np.argwhere(matrix)
    return tuple(int(v) for v in hit[0]) if len(hit) else None


@dataclass(frozen=True)
class Diagnostics:
    """Per-axiom verdicts for a candidate factorization system.

    Each entry is ``None`` when the axiom holds and a witness tuple otherwise.
    """

    reflexive: tuple = None
    onto_preorder: tuple = None
    into_preorder: tuple = None
    fact_equal: tuple = None
    mult_equal: tuple = None
    order_condition: tuple = None
    brick_condition: tuple = None

    def failures(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}

    @property
    def ok(self):
        return not self.failures()


def diagnose(to, onto, into):
    """Check every axiom of a two-acyclic factorization system; never raises on bad data."""
    to, onto, into = as_relation(to), as_relation(onto), as_relation(into)
    if not (to.shape == onto.shape == into.shape):
        raise ValueError("relations must share one ground set")
    n = len(to)
    off = ~np.eye(n, dtype=bool)
    out = {}
    for name, r in (("to", to), ("onto", onto), ("into", into)):
        miss = np.flatnonzero(~r.diagonal())
        if miss.size and "reflexive" not in out:
            out["reflexive"] = (name, int(miss[0]))
    for key, r in (("onto_preorder", onto), ("into_preorder", into)):
        w = _first(_compose(r, r) & ~r)
        if w:
            out[key] = w
    if "reflexive" not in out:
        f_onto, f_into = fact(to)
        w = _first(f_onto != onto)
        if w is None:
            w = _first(f_into != into)
            if w is not None:
                w = ("into",) + w
        else:
            w = ("onto",) + w
        if w is not None:
            out["fact_equal"] = w
        w = _first(_compose(onto, into) != to)
        if w is not None:
            out["mult_equal"] = w
    w = _first(onto & onto.T & off)
    if w is None:
        w = _first(into & into.T & off)
    if w is not None:
        out["order_condition"] = w
    # brick: x => y onto and y => x into, x != y
    w = _first(onto & into.T & off)
    if w is not None:
        out["brick_condition"] = w
    return Diagnostics(**out)


@dataclass(frozen=True, eq=False)
class FactSystem:
    """A validated two-acyclic factorization system on ``range(n)``.

    Build instances with :func:`validate_system`, :func:`system_from_relation`
    or :func:`system_from_posets`; the constructor itself does not check.
    """

    to: np.ndarray
    onto: np.ndarray
    into: np.ndarray
    labels: tuple = None
    diagnostics: Diagnostics = field(default_factory=Diagnostics)

    def __post_init__(self):
        for name in ("to", "onto", "into"):
            a = np.array(getattr(self, name), dtype=bool)
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(len(self.to))))
        else:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(self.to) or len(set(labels)) != len(labels):
                raise ValueError("labels must be distinct and one per element")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return len(self.to)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FactSystem(n={self.n}, labels={self.labels})"

    def __eq__(self, other):
        if not isinstance(other, FactSystem):
            return NotImplemented
        return (self.n == other.n and (self.to == other.to).all()
                and (self.onto == other.onto).all() and (self.into == other.into).all())

    __hash__ = object.__hash__

    @cached_property
    def _bits(self):
        return _RelationBits(self.to)

    @cached_property
    def onto_rows(self):
        return _bits.row_masks(self.onto)

    @cached_property
    def into_rows(self):
        return _bits.row_masks(self.into)

    @cached_property
    def into_cols(self):
        return _bits.row_masks(self.into.T)

    def index(self, label):
        return self.labels.index(str(label))

    def subset(self, labels):
        """Frozenset of indices for a collection of labels."""
        return frozenset(self.index(x) for x in labels)

    def names(self, subset):
        """Sorted labels of a subset of indices (for display)."""
        return [self.labels[i] for i in sorted(subset)]


class _RelationBits:
    """Bitmask views of a relation used by the perp/closure operators."""

    def __init__(self, rel):
        rel = as_relation(rel)
        self.n = len(rel)
        self.full = _bits.full(self.n)
        self.image = _bits.row_masks(rel)
        self.preimage = _bits.row_masks(rel.T)

    def perp_right(self, m):
        hit = 0
        for x in _bits.iter_bits(m):
            hit |= self.image[x]
        return self.full & ~hit

    def perp_left(self, m):
        hit = 0
        for y in _bits.iter_bits(m):
            hit |= self.preimage[y]
        return self.full & ~hit

    def closure(self, m):
        return self.perp_left(self.perp_right(m))


class _TwoSetBits(_RelationBits):
    """Perp operators for a relation between two sets (rows left, columns right)."""

    def __init__(self, adj):
        adj = np.asarray(adj, dtype=bool)
        self.n = adj.shape[0]
        self.full = _bits.full(adj.shape[0])
        self.full_right = _bits.full(adj.shape[1])
        self.image = _bits.row_masks(adj)
        self.preimage = _bits.row_masks(adj.T)

    def perp_right(self, m):
        hit = 0
        for x in _bits.iter_bits(m):
            hit |= self.image[x]
        return self.full_right & ~hit


def _bits_of(obj):
    if isinstance(obj, FactSystem):
        return obj._bits
    if isinstance(obj, _RelationBits):
        return obj
    return _RelationBits(obj)


def validate_system(to, onto=None, into=None, labels=None):
    """Return a :class:`FactSystem` or raise :class:`InvalidSystem` with diagnostics.

    Omitted ``onto``/``into`` are computed with :func:`fact` (the relation must
    then be reflexive).
    """
    to = as_relation(to)
    if onto is None or into is None:
        if not is_reflexive(to):
            raise InvalidSystem(diagnose(to, to, to))
        f_onto, f_into = fact(to)
        onto = f_onto if onto is None else onto
        into = f_into if into is None else into
    d = diagnose(to, onto, into)
    if not d.ok:
        raise InvalidSystem(d)
    return FactSystem(to, onto, into, labels, d)


def system_from_relation(to, labels=None):
    return validate_system(to, labels=labels)


def _down(rel_rows, m):
    out = 0
    for x in _bits.iter_bits(m):
        out |= rel_rows[x]
    return out


def system_from_posets(onto, into, labels=None):
    """Build the system generated by two partial orders, checking the poset-only criteria.

    The criteria are: (i) no distinct ``x, y`` with ``x`` into ``y`` and ``y``
    onto ``x``; (ii) ``x`` onto ``y`` iff down_into(down_onto(y)) is inside
    down_into(down_onto(x)); (iii) the dual statement for into with ups.
    Failures raise :class:`InvalidSystem` whose diagnostics name the failing
    criteria ``"i"``, ``"ii"``, ``"iii"``.
    """
    onto, into = as_relation(onto), as_relation(into)
    n = len(onto)
    for name, r in (("onto", onto), ("into", into)):
        if not is_partial_order(r):
            raise InvalidSystem(_PosetDiagnostics({"partial_order": (name,)}))
    off = ~np.eye(n, dtype=bool)
    fails = {}
    w = _first(into & onto.T & off)
    if w is not None:
        fails["i"] = w
    onto_rows, into_rows = _bits.row_masks(onto), _bits.row_masks(into)
    onto_cols, into_cols = _bits.row_masks(onto.T), _bits.row_masks(into.T)
    dd = [_down(into_rows, _down(onto_rows, 1 << x)) for x in range(n)]
    uu = [_down(onto_cols, _down(into_cols, 1 << x)) for x in range(n)]
    for x in range(n):
        for y in range(n):
            if "ii" not in fails and bool(onto[x, y]) != (dd[y] & ~dd[x] == 0):
                fails["ii"] = (x, y)
            if "iii" not in fails and bool(into[x, y]) != (uu[x] & ~uu[y] == 0):
                fails["iii"] = (x, y)
    if fails:
        raise InvalidSystem(_PosetDiagnostics(fails))
    to = _compose(onto, into)
    return FactSystem(to, onto, into, labels, diagnose(to, onto, into))


@dataclass(frozen=True)
class _PosetDiagnostics:
    failed: dict

    def failures(self):
        return dict(self.failed)

    @property
    def ok(self):
        return not self.failed


def op_dual(sys):
    """Reverse every arrow; onto and into trade places."""
    return validate_system(sys.to.T, sys.into.T, sys.onto.T, labels=sys.labels)


def restrict(sys, subset):
    """Entrywise restriction to ``subset`` (indices re-numbered in sorted order), validated."""
    idx = np.asarray(sorted(subset), dtype=np.intp)
    sub = np.ix_(idx, idx)
    labels = tuple(sys.labels[i] for i in idx)
    return validate_system(sys.to[sub], sys.onto[sub], sys.into[sub], labels=labels)


# ---------------------------------------------------------------------------
# orthogonality and closure


def perp_right(sys, X):
    """``X^⊥``: elements that nothing in ``X`` points to."""
    return _bits.to_frozenset(_bits_of(sys).perp_right(_bits.mask(X)))


def perp_left(sys, Y):
    """``⊥Y``: elements that point to nothing in ``Y``."""
    return _bits.to_frozenset(_bits_of(sys).perp_left(_bits.mask(Y)))


def closure(sys, X):
    return _bits.to_frozenset(_bits_of(sys).closure(_bits.mask(X)))


def is_closed(sys, X):
    m = _bits.mask(X)
    return _bits_of(sys).closure(m) == m


def closed_set_masks(rel, cap=DEFAULT_CAP):
    """All closed sets of a relation (or system) as sorted bitmasks.

    Every closed set is the closure of the union of the closures of its
    points, so a search from the closure of the empty set that adds one point
    at a time reaches all of them.
    """
    b = _bits_of(rel)
    start = b.closure(0)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for x in _bits.iter_bits(b.full & ~c):
                d = b.closure(c | (1 << x))
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
                    if len(seen) > cap:
                        raise SizeLimitExceeded(f"more than {cap} closed sets")
        frontier = nxt
    return sorted(seen, key=_bits.sort_key)


@dataclass(frozen=True)
class OrthoPair:
    torsion: frozenset
    free: frozenset


class PairsLattice:
    """The lattice of maximal orthogonal pairs of a relation, ordered by torsion part.

    ``masks[i]`` is the torsion part of element ``i`` as a bitmask; elements
    are sorted by size then by members, so index 0 is the bottom.
    """

    def __init__(self, system, masks, perp):
        self.system = system
        self.masks = tuple(masks)
        self.free_masks = tuple(perp(m) for m in self.masks)
        self._index = {m: i for i, m in enumerate(self.masks)}
        self.lattice = lattice_from_sets(self.masks)

    def __len__(self):
        return len(self.masks)

    def __repr__(self):
        return f"PairsLattice(size={len(self)})"

    @property
    def pairs(self):
        return [OrthoPair(_bits.to_frozenset(t), _bits.to_frozenset(f))
                for t, f in zip(self.masks, self.free_masks)]

    @property
    def torsion_sets(self):
        return [_bits.to_frozenset(m) for m in self.masks]

    def pair(self, i):
        return OrthoPair(_bits.to_frozenset(self.masks[i]), _bits.to_frozenset(self.free_masks[i]))

    def index_of(self, X):
        """Lattice index of a closed set (or of an :class:`OrthoPair`)."""
        if isinstance(X, OrthoPair):
            X = X.torsion
        return self._index[_bits.mask(X)]

    def index_of_mask(self, m):
        return self._index[m]


def pairs_lattice(sys, cap=DEFAULT_CAP):
    """Enumerate ``Pairs(->)`` for a system or for any bare relation."""
    b = _bits_of(sys)
    return PairsLattice(sys, closed_set_masks(b, cap), b.perp_right)
