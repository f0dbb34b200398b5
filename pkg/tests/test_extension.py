import pytest

from conftest import matroids_upto
from matquot.errors import InvalidModularCut
from matquot.extension import (
    cut_of_extension,
    enumerate_modular_cuts,
    extend,
    find_cut_violation,
    generate_cut,
    is_modular_cut,
    lift_cut,
    modular_cut,
    principal_cut,
)
from matquot.matroid import enumerate_matroids, mask_of, members, uniform, weak_leq

UP_TO_4 = matroids_upto(4)
UP_TO_5 = matroids_upto(5)


def _brute_force_cut_check(M, family):
    """Direct axioms: upward closed among flats, closed under meets of modular pairs."""
    fam = set(family)
    flats = list(M.flats())
    if not fam <= set(flats):
        return False
    for F in fam:
        for G in flats:
            if G & F == F and G not in fam:
                return False
    for F in fam:
        for G in fam:
            if M.rank_of(F) + M.rank_of(G) == M.rank_of(F | G) + M.rank_of(F & G) and F & G not in fam:
                return False
    return True


def test_cut_predicate_matches_axioms():
    for M in matroids_upto(3):
        flats = list(M.flats())
        for bits in range(1 << len(flats)):
            fam = [F for i, F in enumerate(flats) if bits >> i & 1]
            assert is_modular_cut(M, fam) == _brute_force_cut_check(M, fam)


def test_enumerated_cuts_are_exactly_the_valid_families():
    for M in matroids_upto(3):
        flats = list(M.flats())
        valid = set()
        for bits in range(1 << len(flats)):
            fam = frozenset(F for i, F in enumerate(flats) if bits >> i & 1)
            if _brute_force_cut_check(M, fam):
                valid.add(fam)
        assert {c.flats for c in enumerate_modular_cuts(M)} == valid


def test_extension_count_matches_brute_force():
    # Every matroid on n+1 elements whose deletion of the last element is M is an extension.
    for n in range(4):
        counts = {}
        for N in enumerate_matroids(n + 1):
            M = N.delete(1 << n)
            counts[M] = counts.get(M, 0) + 1
        for M in enumerate_matroids(n):
            assert len(enumerate_modular_cuts(M)) == counts[M]


def test_delete_undoes_extend():
    for M in UP_TO_5:
        for cut in enumerate_modular_cuts(M):
            assert extend(M, cut).delete(1 << M.n) == M


def test_extensions_are_distinct():
    for M in UP_TO_5:
        exts = [extend(M, c) for c in enumerate_modular_cuts(M)]
        assert len(set(exts)) == len(exts)


def test_cut_recovered_from_extension():
    for M in UP_TO_4:
        for cut in enumerate_modular_cuts(M):
            assert cut_of_extension(extend(M, cut), M.n) == cut


def test_empty_and_loop_cuts():
    M = uniform(2, 3)
    empty = modular_cut(M, [])
    assert empty.is_empty
    assert extend(M, empty).coloops() == 1 << 3
    loop = generate_cut(M, [0])
    assert loop.is_loop_cut
    assert extend(M, loop).loops() == 1 << 3


def test_invalid_cut_raises_with_witness():
    M = uniform(2, 4)
    fam = [0b0001, 0b0010, M.ground]
    v = find_cut_violation(M, fam)
    assert v is not None
    with pytest.raises(InvalidModularCut):
        modular_cut(M, fam)


def test_generate_cut_is_smallest():
    M = uniform(3, 6)
    cut = generate_cut(M, [0b11, 0b1100, 0b110000])
    assert set(cut.minimal) == {0b11, 0b1100, 0b110000}
    for other in enumerate_modular_cuts(M):
        if {0b11, 0b1100, 0b110000} <= other.flats:
            assert cut.flats <= other.flats


def test_principal_cut():
    M = uniform(2, 3)
    cut = principal_cut(M, 0b1)
    assert cut.flats == frozenset({0b1, 0b111})
    # the new element becomes parallel to element 0
    assert 0b1001 in extend(M, cut).circuits()


def test_weak_order_lemma():
    # nested cuts give weakly ordered extensions; the contracted form needs
    # both cuts to be nonempty and to differ from the loop cut
    for M in matroids_upto(4):
        cuts = enumerate_modular_cuts(M)
        e = 1 << M.n
        exts = [extend(M, c) for c in cuts]
        for c1, A in zip(cuts, exts):
            for c2, B in zip(cuts, exts):
                nested = c1.flats <= c2.flats
                assert nested == weak_leq(A, B)
                if not (c1.is_empty or c1.is_loop_cut or c2.is_empty or c2.is_loop_cut):
                    assert nested == weak_leq(A.contract(e), B.contract(e))


def test_degenerate_cuts_break_contracted_weak_order():
    M = uniform(1, 1)
    top, loop = modular_cut(M, [0b1]), generate_cut(M, [0])
    A, B = extend(M, top), extend(M, loop)
    e = 1 << 1
    assert top.flats <= loop.flats
    assert weak_leq(A, B)
    # contracting a loop leaves U_{1,1}; contracting a generic point leaves U_{0,1}
    assert not weak_leq(A.contract(e), B.contract(e))


def test_diamond_commutes():
    # extending M by the lifted cut and contracting e equals contracting e first
    for M in UP_TO_4:
        for e in range(M.n):
            Me = M.contract(1 << e)
            for cut in enumerate_modular_cuts(Me):
                lifted = lift_cut(M, e, cut)
                assert is_modular_cut(M, lifted.flats)
                left = extend(M, lifted).contract(1 << e)
                right = extend(Me, cut)
                assert left == right


def test_lifted_cut_flats_contain_e():
    M = uniform(3, 5)
    cut = enumerate_modular_cuts(M.contract(0b1))[3]
    assert all(F & 1 for F in lift_cut(M, 0, cut))
    assert {members(F)[0] for F in lift_cut(M, 0, cut)} == {0}


def test_extend_label():
    N = extend(uniform(2, 3), modular_cut(uniform(2, 3), [0b111]), "p")
    assert N.names[-1] == "p"
    assert mask_of([3]) == 1 << N.n - 1
