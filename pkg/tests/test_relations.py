from itertools import combinations

import numpy as np
import pytest

from corpus import ext_fig_relation, semi_fig
from sdlattice import _bits
from sdlattice.errors import InvalidSystem, NonReflexiveInput, NotTransitiveWarning
from sdlattice.lattice import is_isomorphic
from sdlattice.relations import (closure, diagnose, fact, identity, is_closed, mult, op_dual,
                                 pairs_lattice, perp_left, perp_right, relation_from_pairs,
                                 restrict, system_from_posets, validate_system)


def off_diagonal(rel):
    return sorted(map(tuple, np.argwhere(rel & ~np.eye(len(rel), dtype=bool)).tolist()))


def brute_closed_sets(rel):
    """Scan all subsets; the oracle for the closure-based enumeration."""
    n = len(rel)
    out = []
    for m in range(1 << n):
        X = _bits.to_frozenset(m)
        Y = {y for y in range(n) if not any(rel[x, y] for x in X)}
        back = {x for x in range(n) if not any(rel[x, y] for y in Y)}
        if back == X:
            out.append(X)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def test_fact_semi_fig():
    s = semi_fig()
    assert off_diagonal(s.onto) == [(1, 3), (2, 0)]
    assert off_diagonal(s.into) == [(0, 1), (3, 2)]


def test_fact_identity_and_total():
    onto, into = fact(identity(3))
    assert (onto == identity(3)).all() and (into == identity(3)).all()
    full = np.ones((3, 3), dtype=bool)
    onto, into = fact(full)
    assert onto.all() and into.all()


def test_fact_rejects_missing_loop():
    rel = np.ones((2, 2), dtype=bool)
    rel[1, 1] = False
    with pytest.raises(NonReflexiveInput) as e:
        fact(rel)
    assert e.value.witness == (1,)


def test_mult_recovers_semi_fig_arrows():
    s = semi_fig()
    assert (mult(s.onto, s.into) == s.to).all()


def test_mult_warns_on_non_transitive():
    rel = relation_from_pairs(3, [(0, 1), (1, 2)])
    with pytest.warns(NotTransitiveWarning):
        mult(rel, identity(3))


def test_ext_fig_fails_mult_with_witness():
    to = ext_fig_relation()
    onto, into = fact(to)
    assert off_diagonal(onto) == [(2, 3)]
    assert off_diagonal(into) == [(0, 1)]
    d = diagnose(to, onto, into)
    assert d.mult_equal == (1, 2)
    assert set(d.failures()) == {"mult_equal"}
    with pytest.raises(InvalidSystem) as e:
        validate_system(to)
    assert e.value.to_dict()["witness"] == {"mult_equal": [1, 2]}


def test_diagnose_never_raises_on_garbage():
    rel = np.zeros((3, 3), dtype=bool)
    d = diagnose(rel, rel, rel)
    assert d.reflexive is not None and not d.ok


def test_order_and_brick_conditions():
    # two elements pointing at each other: onto is not antisymmetric
    both = np.ones((2, 2), dtype=bool)
    d = diagnose(both, *fact(both))
    assert d.order_condition == (0, 1)
    # onto 0 => 1 and into 1 => 0 with matching arrows
    onto = relation_from_pairs(2, [(0, 1)])
    into = relation_from_pairs(2, [(1, 0)])
    d = diagnose(both, onto, into)
    assert d.brick_condition == (0, 1)


def test_system_from_posets_matches_validate():
    s = semi_fig()
    assert system_from_posets(s.onto, s.into) == s


def test_system_from_posets_names_failing_criteria():
    # 0 into 1 and 1 onto 0 violates the first criterion
    onto = relation_from_pairs(2, [(1, 0)])
    into = relation_from_pairs(2, [(0, 1)])
    with pytest.raises(InvalidSystem) as e:
        system_from_posets(onto, into)
    assert "i" in e.value.witness


def test_system_from_posets_second_criterion():
    onto, into = fact(ext_fig_relation())
    with pytest.raises(InvalidSystem) as e:
        system_from_posets(onto, into)
    assert {"ii", "iii"} & set(e.value.witness)


def test_perps_and_closure_semi_fig():
    s = semi_fig()
    assert perp_right(s, {0}) == {2, 3}
    assert perp_left(s, {2, 3}) == {0}
    assert closure(s, {1}) == {1, 3}
    assert closure(s, {0, 3}) == {0, 1, 2, 3}
    assert perp_right(s, set()) == {0, 1, 2, 3}
    assert is_closed(s, {0, 2}) and not is_closed(s, {1})


def test_pairs_semi_fig_torsion_sets():
    P = pairs_lattice(semi_fig())
    assert P.torsion_sets == [frozenset(), {0}, {3}, {0, 2}, {1, 3}, {0, 1, 2, 3}]
    assert [sorted(p.free) for p in P.pairs] == [[0, 1, 2, 3], [2, 3], [0, 1], [3], [0], []]


def test_pairs_ext_fig_nine_closed_sets():
    P = pairs_lattice(ext_fig_relation())
    labelled = [sorted(x + 1 for x in X) for X in P.torsion_sets]
    assert labelled == [[], [1], [2], [4], [1, 2], [1, 4], [3, 4], [2, 3, 4], [1, 2, 3, 4]]


@pytest.mark.parametrize("pairs", [[], [(0, 1)], [(0, 1), (1, 0)], [(0, 1), (1, 2), (2, 0)],
                                   [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]])
def test_closure_enumeration_matches_subset_scan(pairs):
    n = 1 + max([max(p) for p in pairs], default=0)
    rel = relation_from_pairs(n, pairs)
    assert pairs_lattice(rel).torsion_sets == brute_closed_sets(rel)


def test_empty_ground_set():
    s = validate_system(np.zeros((0, 0), dtype=bool))
    P = pairs_lattice(s)
    assert len(P) == 1 and P.torsion_sets == [frozenset()]


def test_op_dual_is_anti_isomorphic():
    s = semi_fig()
    d = op_dual(s)
    assert (d.onto == s.into.T).all() and (d.into == s.onto.T).all()
    P, Q = pairs_lattice(s), pairs_lattice(d)
    # (X, Y) -> (Y, X) reverses order
    for p in P.pairs:
        assert Q.index_of(p.free) is not None
    assert is_isomorphic(P.lattice.dual(), Q.lattice) is not None


def test_restrict_relabels_in_sorted_order():
    s = semi_fig()
    r = restrict(s, {3, 0})
    assert r.labels == ("1", "4")
    assert (r.to == np.eye(2, dtype=bool)).all()


def test_labels_and_subsets():
    s = semi_fig()
    assert s.subset(["2", "4"]) == {1, 3}
    assert s.names({3, 1}) == ["2", "4"]
    with pytest.raises(ValueError):
        validate_system(s.to, labels=["a", "a", "b", "c"])


def test_systems_are_immutable():
    s = semi_fig()
    with pytest.raises(ValueError):
        s.to[0, 0] = False


def test_closed_sets_closed_under_intersection():
    P = pairs_lattice(semi_fig())
    sets = set(P.torsion_sets)
    for a, b in combinations(P.torsion_sets, 2):
        assert a & b in sets
