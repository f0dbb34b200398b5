import itertools

import pytest

from conftest import matroids_upto
from matquot.errors import IndexOutOfRange, InvalidFactorization, InvalidFlag, InvalidMajor, NotAQuotient
from matquot.extension import enumerate_modular_cuts, extend, is_modular_cut
from matquot.fixtures import gamma_major, gamma_matroid
from matquot.matroid import direct_sum, enumerate_matroids, is_isomorphic, mask_of, uniform, weak_leq
from matquot.quotient import (
    Factorization,
    FlagMatroid,
    Major,
    Quotient,
    circuit_violation,
    enumerate_elementary_quotients,
    enumerate_factorizations,
    factorization_from_major,
    flag_higgs,
    flat_violation,
    higgs_factorization,
    higgs_lift,
    higgs_major,
    is_quotient,
    is_quotient_by_circuits,
    is_quotient_by_flats,
    major_from_factorization,
    top_nullity_cut,
)


def quotients_upto(n: int):
    for m in range(n + 1):
        ms = enumerate_matroids(m)
        for top in ms:
            for bottom in ms:
                if bottom.rank <= top.rank and is_quotient(top, bottom):
                    yield Quotient(top, bottom)


QUOTIENTS_4 = tuple(quotients_upto(4))
QUOTIENTS_5 = tuple(quotients_upto(5))


def _weak_map_oracle(top, bottom):
    # Rank-function definition: r_top(B) - r_top(A) >= r_bottom(B) - r_bottom(A) for A in B.
    for B in range(1 << top.n):
        A = B
        while True:
            if top.rank_of(B) - top.rank_of(A) < bottom.rank_of(B) - bottom.rank_of(A):
                return False
            if A == 0:
                break
            A = (A - 1) & B
    return True


def test_quotient_matches_rank_definition():
    for top in matroids_upto(4):
        for bottom in enumerate_matroids(top.n):
            assert is_quotient(top, bottom) == _weak_map_oracle(top, bottom)


def test_routes_agree_on_all_pairs_of_five():
    ms = enumerate_matroids(5)
    for top in ms:
        for bottom in ms:
            assert is_quotient_by_flats(top, bottom) == is_quotient_by_circuits(top, bottom)


def test_circuit_route_direction():
    # every circuit of the top must be a cycle of the bottom
    top, bottom = uniform(2, 3), uniform(1, 3)
    assert is_quotient(top, bottom)
    assert all(bottom.is_cycle(C) for C in top.circuits())
    assert not is_quotient(bottom, top)
    C = circuit_violation(bottom, top)
    assert C is not None and not top.is_cycle(C)
    assert flat_violation(bottom, top) is not None


def test_quotient_rejects_non_quotient():
    with pytest.raises(NotAQuotient):
        Quotient(uniform(1, 3), uniform(2, 3))


def test_nullity():
    q = Quotient(uniform(3, 5), uniform(1, 5))
    assert q.nullity == 2
    assert q.nullity_of(0b11) == 1
    assert q.nullity_of(0b111) == 2


def test_flat_cover_lemma():
    samples = list(QUOTIENTS_5)
    samples += [Quotient(uniform(r, 6), uniform(s, 6)) for r in range(7) for s in range(r + 1)]
    samples += [Quotient(gamma_major(6).delete(1 << 6), gamma_matroid(6))]
    for q in samples:
        top, bottom = q.top, q.bottom
        flats = list(top.flats())
        for F in flats:
            covers = [G for G in flats if G & F == F and G != F and top.rank_of(G) == top.rank_of(F) + 1]
            blocked = any(q.nullity_of(G) == q.nullity_of(F) + 1 for G in covers)
            assert bottom.is_flat(F) == (not blocked)


def test_higgs_lift_cut_lemma():
    for q in QUOTIENTS_5:
        if q.nullity == 0:
            continue
        cut = top_nullity_cut(q)
        assert is_modular_cut(q.top, cut.flats)
        assert extend(q.top, cut).contract(1 << q.n) == higgs_lift(q, q.nullity - 1)


def test_higgs_lift_ranks_and_ends():
    for q in QUOTIENTS_4:
        L0 = higgs_lift(q, 0)
        assert L0 == q.bottom
        assert higgs_lift(q, q.nullity) == q.top
        for i in range(q.nullity + 1):
            assert higgs_lift(q, i).rank - L0.rank == i
    with pytest.raises(IndexOutOfRange):
        higgs_lift(Quotient(uniform(2, 3), uniform(1, 3)), 2)


def test_higgs_factorization_is_a_chain_of_quotients():
    for q in QUOTIENTS_4:
        fac = higgs_factorization(q)
        assert fac.top == q.top and fac.bottom == q.bottom
        for a, b in zip(fac.steps, fac.steps[1:]):
            assert is_quotient(a, b) and a.rank == b.rank + 1


def test_higgs_major_round_trips():
    for q in QUOTIENTS_5:
        H = higgs_major(q)
        K = H.K
        assert H.h.delete(K) == q.top
        assert H.h.contract(K) == q.bottom
        assert H.h.names[q.n:] == tuple(f"ē{i + 1}" for i in range(q.nullity))


def test_uniform_higgs_major():
    assert higgs_major(Quotient(uniform(5, 8), uniform(2, 8))).h == uniform(5, 11)


def test_gamma_major():
    top = uniform(3, 6)
    q = Quotient(top, gamma_matroid(6))
    assert q.nullity == 1
    assert higgs_major(q).h == gamma_major(6)


def test_kennedy_maps_on_small_quotients():
    for q in QUOTIENTS_4:
        for N in enumerate_factorizations(q):
            assert factorization_from_major(major_from_factorization(N)) == N
        assert major_from_factorization(higgs_factorization(q)) == higgs_major(q)


def _majors_upto_4():
    # every (matroid, K) pair with K independent and spanning the matroid
    for H in matroids_upto(4):
        for size in range(1, H.n):
            for K in itertools.permutations(range(H.n), size):
                mask = mask_of(K)
                if H.is_independent(mask) and H.rank_of(H.ground & ~mask) == H.rank:
                    yield Major(H, K)


def test_kennedy_coclosure():
    for H in _majors_upto_4():
        if list(H.new_elements) != list(range(H.h.n - len(H.new_elements), H.h.n)):
            continue
        try:
            N = factorization_from_major(H)
        except InvalidMajor:
            continue
        H1 = major_from_factorization(N)
        assert weak_leq(H1.h, H.h)
        assert major_from_factorization(factorization_from_major(H1)) == H1


def test_major_validation():
    with pytest.raises(InvalidMajor):
        Major(uniform(1, 3), (0, 1))
    with pytest.raises(InvalidMajor):
        Major(direct_sum(uniform(1, 2), uniform(1, 1)), (2,))


def test_factorization_validation():
    with pytest.raises(InvalidFactorization):
        Factorization((uniform(3, 4), uniform(1, 4)))


def test_elementary_quotient_count():
    # one elementary quotient per cut, apart from the empty and the loop cut
    M = uniform(2, 3)
    assert len(enumerate_modular_cuts(M)) == 6
    assert len(enumerate_elementary_quotients(M)) == 4
    for M in matroids_upto(4):
        qs = enumerate_elementary_quotients(M)
        assert len(set(qs)) == len(qs)
        assert all(is_quotient(M, Q) and Q.rank == M.rank - 1 for Q in qs)
        brute = [B for B in enumerate_matroids(M.n) if B.rank == M.rank - 1 and is_quotient(M, B)]
        assert set(qs) == set(brute)


def test_flag_higgs():
    flag = FlagMatroid((uniform(3, 4), uniform(2, 4), uniform(0, 4)))
    fac, major = flag_higgs(flag)
    assert [M.rank for M in fac.steps] == [3, 2, 1, 0]
    assert major.top == uniform(3, 4) and major.bottom == uniform(0, 4)
    with pytest.raises(InvalidFlag):
        FlagMatroid((uniform(1, 3), uniform(2, 3)))


def test_non_pappus_major_isomorphic():
    from matquot.fixtures import non_pappus

    P = non_pappus()
    e = 1 << 8
    q = Quotient(P.delete(e), P.contract(e))
    assert q.nullity == 1
    assert is_isomorphic(higgs_major(q).h, P) is not None
