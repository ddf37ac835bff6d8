import numpy as np
import pytest

from corpus import semi_fig
from sdlattice.congruence import (blocks, brute_congruences, brute_forcing, con_lattice,
                                  congruence_closure, directly_forces, forcing_upsets,
                                  image_coimage, is_congruence, is_congruence_uniform,
                                  quotient, quotient_lattice, refinement_lattice,
                                  restrict_system)
from sdlattice.errors import NoArrow, NotAForcingUpset
from sdlattice.extraction import extract_system
from sdlattice.generators import boolean, chain, downsets_of, random_poset, tamari
from sdlattice.lattice import is_distributive, is_isomorphic, lattice_from_covers
from sdlattice.relations import pairs_lattice, validate_system


def test_forcing_edges_semi_fig():
    f = directly_forces(semi_fig())
    assert f.edges == [(0, 1), (0, 2), (3, 1), (3, 2)]
    assert f.tags == {(0, 1): "i", (0, 2): "ii", (3, 1): "ii", (3, 2): "i"}
    assert f.squig.diagonal().all()
    assert f.is_acyclic()


def test_forcing_identity_and_distributive():
    assert directly_forces(validate_system(np.eye(3, dtype=bool))).edges == []
    s = extract_system(downsets_of(random_poset(5, seed=2, p=0.5))).system
    assert directly_forces(s).edges == []


def test_image_coimage():
    s = semi_fig()
    assert image_coimage(s, 1, 2) == ({3}, {3})
    assert image_coimage(s, 2, 1) == ({0}, {0})
    assert image_coimage(s, 2, 2) == ({2}, {2})
    with pytest.raises(NoArrow):
        image_coimage(s, 0, 3)


def test_restrict_system_rejects_non_upset():
    s = semi_fig()
    with pytest.raises(NotAForcingUpset) as e:
        restrict_system(s, {1, 2})
    assert e.value.witness in {(0, 1), (0, 2), (3, 1), (3, 2)}
    r = restrict_system(s, {0, 3})
    assert (r.to == np.eye(2, dtype=bool)).all()


def test_quotients_semi_fig():
    s = semi_fig()
    q = quotient(s, {0, 3})
    assert len(q.quotient) == 4
    assert sorted(map(len, q.blocks)) == [1, 1, 2, 2]
    assert len(quotient(s, range(4)).blocks) == 6
    assert len(quotient(s, set()).blocks) == 1


def test_con_lattice_semi_fig():
    C = con_lattice(semi_fig())
    assert len(C) == 7
    assert [sorted(d) for d in C.downsets] == [[], [1], [2], [1, 2], [0, 1, 2], [1, 2, 3],
                                               [0, 1, 2, 3]]
    assert is_distributive(C.lattice)
    assert len(C.congruence(3).quotient) == 4


def test_con_lattice_identity_is_boolean():
    assert len(con_lattice(validate_system(np.eye(3, dtype=bool)))) == 8
    assert len(con_lattice(validate_system(np.eye(1, dtype=bool)))) == 2


def test_brute_congruence_counts():
    assert len(brute_congruences(boolean(2))) == 4
    assert len(brute_congruences(chain(3))) == 4
    m3 = lattice_from_covers([(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], 5)
    # M3 is simple
    assert len(brute_congruences(m3)) == 2


def test_semi_fig_brute_matches():
    s = semi_fig()
    L = pairs_lattice(s).lattice
    brute = brute_congruences(L)
    assert len(brute) == 7
    assert all(is_congruence(L, p) for p in brute)
    assert is_isomorphic(refinement_lattice(brute), con_lattice(s).lattice) is not None


def test_congruence_closure_of_n5_cover():
    L = tamari(3)  # the pentagon
    # contracting the bottom of the long side collapses nothing else
    for a, b in L.covers:
        lab = congruence_closure(L, [(a, b)])
        assert is_congruence(L, lab)
        assert lab[a] == lab[b]


def test_is_congruence_rejects_bad_partition():
    L = boolean(2)
    assert not is_congruence(L, [0, 0, 2, 3])
    assert is_congruence(L, [0, 0, 2, 2])


def test_quotient_lattice_of_total_congruence():
    L = boolean(3)
    assert quotient_lattice(L, [0] * 8).size == 1


def test_blocks():
    assert blocks([0, 0, 2, 2, 4]) == [(0, 1), (2, 3), (4,)]


def test_forcing_upsets_semi_fig():
    ups = forcing_upsets(semi_fig())
    assert len(ups) == 7
    assert frozenset({0, 3}) in ups and frozenset({1, 2}) not in ups


def test_brute_forcing_matches_transitive_forcing():
    s = semi_fig()
    P = pairs_lattice(s)
    J, forced = brute_forcing(P.lattice)
    ground = {P.index_of_mask(s.onto_rows[x]): x for x in range(s.n)}
    clo = directly_forces(s).closure
    for a, j in enumerate(J):
        for b, k in enumerate(J):
            assert forced[a, b] == clo[ground[j], ground[k]]


def test_congruence_uniform():
    assert is_congruence_uniform(semi_fig())
    assert is_congruence_uniform(validate_system(np.eye(4, dtype=bool)))


def test_forcing_cycle_detection():
    from sdlattice.congruence import ForcingRelation, reflexive_transitive_closure

    squig = np.eye(3, dtype=bool)
    squig[0, 1] = squig[1, 2] = squig[2, 0] = True
    f = ForcingRelation(squig, reflexive_transitive_closure(squig), {})
    assert not f.is_acyclic()
    assert f.closure.all()
    squig[2, 0] = False
    assert ForcingRelation(squig, reflexive_transitive_closure(squig), {}).is_acyclic()


def test_no_sd_non_cu_lattice_up_to_seven():
    from corpus import sd_corpus

    for name, L in sd_corpus():
        assert is_congruence_uniform(extract_system(L).system), name
