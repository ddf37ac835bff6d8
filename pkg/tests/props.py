"""Property checks shared by the hypothesis suite and the acceptance run.

Each ``check_*`` function raises ``AssertionError`` on a counterexample.
"""

import numpy as np

from sdlattice.congruence import directly_forces, image_coimage
from sdlattice.constructions import double_system
from sdlattice.covers import T_of, T_star, cov, del_set
from sdlattice.errors import InvalidSystem
from sdlattice.lattice import is_isomorphic
from sdlattice.relations import (closure, fact, maximal, mult, op_dual, pairs_lattice,
                                 perp_left, perp_right, validate_system)


def preorder_closure(rel):
    c = np.array(rel, dtype=bool) | np.eye(len(rel), dtype=bool)
    for k in range(len(c)):
        c |= c[:, [k]] & c[[k], :]
    return c


def relation_from_bits(n, bits):
    """Reflexive ``n x n`` relation from the low ``n*n`` bits of an integer."""
    rel = np.array([(bits >> k) & 1 for k in range(n * n)], dtype=bool).reshape(n, n)
    return rel | np.eye(n, dtype=bool)


def projected_system(rel):
    """``Mult(Fact(rel))`` as a validated system, or ``None`` if not two-acyclic."""
    try:
        return validate_system(mult(*fact(rel)))
    except InvalidSystem:
        return None


def doubled_system(choices):
    """Start from the empty system and double intervals picked by ``choices``."""
    sys = validate_system(np.zeros((0, 0), dtype=bool))
    for k in choices:
        P = pairs_lattice(sys)
        lo = k % len(P)
        above = np.flatnonzero(P.lattice.leq[lo])
        hi = int(above[(k // len(P)) % len(above)])
        sys = double_system(sys, P.pair(lo).torsion, P.pair(hi).torsion)
    return sys


def _leq(a, b):
    return bool((~a | b).all())


# ---------------------------------------------------------------------------


def check_fact_mult_laws(rel):
    """Mult(Fact R) is contained in R, and Mult∘Fact is idempotent."""
    onto, into = fact(rel)
    m = mult(onto, into)
    assert _leq(m, rel)
    assert (mult(*fact(m)) == m).all()
    assert (onto == preorder_closure(onto)).all() and (into == preorder_closure(into)).all()


def check_fact_of_mult(onto, into):
    """For preorders: Fact(Mult(a, b)) contains (a, b) and Mult∘Fact∘Mult = Mult."""
    m = mult(onto, into)
    a, b = fact(m)
    assert _leq(onto, a) and _leq(into, b)
    assert (mult(a, b) == m).all()


def check_mult_monotone(onto, into, onto2, into2):
    a, b = onto | onto2, into | into2
    a, b = preorder_closure(a), preorder_closure(b)
    assert _leq(mult(onto, into), mult(a, b))


def check_downsets(sys):
    """Closed sets are onto-downsets; right perps are into-upsets."""
    for X in pairs_lattice(sys).torsion_sets:
        for x in X:
            assert set(np.flatnonzero(sys.onto[x])) <= X
        Y = perp_right(sys, X)
        for y in Y:
            assert set(np.flatnonzero(sys.into[:, y])) <= Y


def check_acyclicity(sys):
    """x -> y into x, or x onto y -> x, forces x = y."""
    n = sys.n
    off = ~np.eye(n, dtype=bool)
    assert not (sys.to & sys.into.T & off).any()
    assert not (sys.onto & sys.to.T & off).any()


def check_del_meet_join(sys):
    """For c in Cov(X): Del(X,c) meets T(c) in T_*(c) and joins it to X."""
    for X in pairs_lattice(sys).torsion_sets:
        for c in cov(sys, X).cov:
            D = del_set(sys, X, c)
            T = T_of(sys, c)
            assert D & T == closure(sys, T_star(sys, c))
            assert closure(sys, D | T) == X


def check_delete_equalities(sys):
    """For into-maximal c in closed X: deleting what maps onto c, what points to c,
    and taking the left perp of X^⊥ + c all agree."""
    for X in pairs_lattice(sys).torsion_sets:
        Y = perp_right(sys, X)
        for c in maximal(sys.into, X):
            a = frozenset(x for x in X if not sys.onto[x, c])
            b = frozenset(x for x in X if not sys.to[x, c])
            assert a == b == perp_left(sys, Y | {c})


def check_images_force(sys):
    """Images of x -> z force z; co-images force x."""
    squig = directly_forces(sys).squig
    for x in range(sys.n):
        for z in range(sys.n):
            if x != z and sys.to[x, z]:
                images, coimages = image_coimage(sys, x, z)
                assert images and coimages
                assert all(squig[y, z] for y in images)
                assert all(squig[y, x] for y in coimages)


def check_no_forcing_two_cycles(sys):
    """Direct forcing never relates two distinct elements both ways."""
    squig = directly_forces(sys).squig
    off = ~np.eye(sys.n, dtype=bool)
    assert not (squig & squig.T & off).any()


def check_covers_match_hasse(sys):
    P = pairs_lattice(sys)
    L = P.lattice
    for i, X in enumerate(P.torsion_sets):
        got = sorted(P.index_of(d) for d in cov(sys, X).lower_covers.values())
        assert got == sorted(L.lower_covers[i])


def check_dual_antiisomorphic(sys):
    a = pairs_lattice(op_dual(sys)).lattice
    b = pairs_lattice(sys).lattice.dual()
    assert is_isomorphic(a, b) is not None

