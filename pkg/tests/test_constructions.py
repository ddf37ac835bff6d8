import numpy as np
import pytest

from corpus import ext_fig_relation, semi_fig
from sdlattice.constructions import (brute_mu, classify, companionable, dist_char, double_lattice,
                                     double_system, doubled, extremal_analysis, ftfel_mu,
                                     interval_system, is_acyclic_reflexive, is_cover_by_ground,
                                     markowsky_roundtrip, markowsky_system, two_set_pairs)
from sdlattice.congruence import is_congruence_uniform
from sdlattice.errors import NotAnInterval, NotComparable
from sdlattice.extraction import extract_system
from sdlattice.generators import boolean, chain, downsets_of, random_poset, weak_order_sn
from sdlattice.lattice import (is_distributive, is_isomorphic, is_semidistributive,
                               lattice_from_covers)
from sdlattice.relations import pairs_lattice, relation_from_pairs, validate_system


def m3():
    return lattice_from_covers([(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], 5)


def test_interval_full_is_the_system():
    s = semi_fig()
    P = pairs_lattice(s)
    r = interval_system(s, P.pair(0), P.pair(len(P) - 1))
    assert r == s


def test_interval_lower_two_four():
    s = semi_fig()
    r = interval_system(s, frozenset(), frozenset({1, 3}))
    assert r.labels == ("2", "4")
    assert len(pairs_lattice(r)) == 3


def test_interval_singleton_and_incomparable():
    s = semi_fig()
    r = interval_system(s, frozenset({0}), frozenset({0}))
    assert r.n == 0 and len(pairs_lattice(r)) == 1
    with pytest.raises(NotComparable):
        interval_system(s, frozenset({0}), frozenset({3}))


def test_cover_by_ground_semi_fig():
    s = semi_fig()
    P = pairs_lattice(s)
    L = P.lattice
    for a in range(len(P)):
        for b in range(len(P)):
            if L.leq[a, b] and a != b:
                assert bool(L.cover_matrix[a, b]) == is_cover_by_ground(s, P.pair(a), P.pair(b))


def test_double_point_is_two_chain():
    D = double_lattice(chain(1), 0, 0)
    assert D.size == 2 and is_isomorphic(D, chain(2)) is not None


def test_double_b2_atom_is_pentagon():
    L = boolean(2)
    D, origin = doubled(L, 1, 1)
    assert D.size == 5 and origin == ((0, None), (1, 1), (1, 2), (2, None), (3, None))
    assert is_semidistributive(D).semidistributive
    assert is_congruence_uniform(extract_system(D).system)
    n5 = lattice_from_covers([(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], 5)
    assert is_isomorphic(D, n5) is not None


def test_double_bad_interval():
    with pytest.raises(NotAnInterval):
        double_lattice(boolean(2), 1, 2)


def test_double_system_empty():
    e = validate_system(np.zeros((0, 0), dtype=bool))
    d = double_system(e, frozenset(), frozenset())
    assert d.n == 1 and len(pairs_lattice(d)) == 2


def test_double_system_two_chain_full_interval():
    s = validate_system(np.eye(1, dtype=bool))
    d = double_system(s, frozenset(), frozenset({0}), verify=True)
    assert len(pairs_lattice(d)) == 4
    assert is_isomorphic(pairs_lattice(d).lattice, boolean(2)) is not None


def test_double_system_semi_fig_interval():
    s = semi_fig()
    d = double_system(s, frozenset({0}), frozenset({0, 2}), verify=True)
    assert d.labels[-1] == "5"
    assert len(pairs_lattice(d)) == 8
    assert is_semidistributive(pairs_lattice(d).lattice).semidistributive


def test_dist_char():
    assert not any(dist_char(semi_fig()).values)
    s = extract_system(downsets_of(random_poset(5, seed=4, p=0.4))).system
    assert all(dist_char(s).values)
    b3 = extract_system(boolean(3)).system
    assert all(dist_char(b3).values) and (b3.to == np.eye(3, dtype=bool)).all()


def test_markowsky_m3():
    rel = markowsky_system(m3())
    assert rel.left == (1, 2, 3) and rel.right == (1, 2, 3)
    assert len(markowsky_roundtrip(m3())) == 5
    assert companionable(rel) == (True, None)


def test_markowsky_point():
    rel = markowsky_system(chain(1))
    assert rel.left == () and rel.right == ()
    assert len(two_set_pairs(rel)) == 1


def test_markowsky_matches_one_set_pairs_for_sd():
    L = weak_order_sn(3)
    a = two_set_pairs(markowsky_system(L)).lattice
    b = pairs_lattice(extract_system(L).system).lattice
    assert is_isomorphic(a, b) is not None


def test_companionable_failure():
    # x1 => x0 and everything x1 hits, x0 also hits
    from sdlattice.constructions import TwoSetRelation
    rel = TwoSetRelation((0, 1), (0,), np.array([[1], [1]], dtype=bool))
    ok, w = companionable(rel)
    assert not ok


def test_acyclic_reflexive():
    assert is_acyclic_reflexive(ext_fig_relation())
    assert not is_acyclic_reflexive(semi_fig().to)
    assert not is_acyclic_reflexive(np.zeros((2, 2), dtype=bool))


def test_extremal_ext_fig():
    L = pairs_lattice(ext_fig_relation()).lattice
    cert = extremal_analysis(L)
    assert cert.extremal and cert.length == 4
    P = pairs_lattice(ext_fig_relation())
    assert [sorted(P.torsion_sets[x]) for x in cert.chain] == [[], [3], [2, 3], [1, 2, 3],
                                                               [0, 1, 2, 3]]
    assert [cert.mu] == brute_mu(L)


def test_semi_fig_not_extremal():
    cert = extremal_analysis(pairs_lattice(semi_fig()).lattice)
    assert not cert.extremal and cert.length == 3 and cert.mu is None


def test_b2_mu_swaps_atoms():
    assert ftfel_mu(boolean(2)) == {1: 2, 2: 1}


def test_classify_examples():
    c = classify(semi_fig())
    assert (c.semidistributive, c.extremal, c.congruence_uniform, c.distributive) == \
        (True, False, True, False)
    c = classify(ext_fig_relation())
    assert (c.semidistributive, c.extremal) == (False, True)
    assert c.system["sd_iff_mult"] and not c.system["two_acyclic"]
    c = classify(weak_order_sn(4))
    assert (c.semidistributive, c.congruence_uniform, c.extremal) == (True, True, False)
    assert classify(boolean(3)).trim_candidate


def test_m3_is_neither_sd_nor_cu():
    c = classify(m3())
    assert not c.semidistributive and not c.congruence_uniform and not c.extremal
