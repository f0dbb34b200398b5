import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import matroids_upto, sample_matroids
from matquot.errors import DegreeTooSmall, LengthMismatch, NotAChainOfFlats, TooManyMonomials
from matquot.fixtures import NON_PAPPUS_E, gamma_matroid, non_pappus
from matquot.linalg import GF, QQ, ExactMatrix
from matquot.matroid import mask_of, uniform
from matquot.realization import QuotientRealization, check_quotient_realization
from matquot.quotient import Quotient
from matquot.tropical import (
    HomogeneousIdealInput,
    NonRealizableReport,
    NotIncluded,
    TropicalPoint,
    bergman_inclusion,
    check_quotient_implies_inclusion,
    flag_chains,
    flag_cone_point,
    inclusion_witness,
    linear_relative_realizability,
    macaulay_matrix,
    matroid_of_degree_part,
    monomial_name,
    monomials,
    trop_matroid_membership,
    trop_matroid_membership_cycles,
    trop_membership_batch,
    trop_set_membership,
    trop_veronese_apply,
)


def _random_point(rng, n):
    # small range so that ties, and hence membership, actually happen
    return TropicalPoint.of([rng.randint(0, 3) for _ in range(n)])


@pytest.mark.parametrize("M", [M for M in sample_matroids() if M.n <= 8], ids=repr)
def test_circuit_and_cycle_membership_agree(M):
    rng = random.Random(M.n * 31 + M.rank)
    for _ in range(1000):
        v = _random_point(rng, M.n)
        assert trop_matroid_membership(M, v) == trop_matroid_membership_cycles(M, v)


def test_batch_matches_scalar():
    rng = np.random.default_rng(0)
    for M in matroids_upto(4)[::3]:
        pts = rng.integers(0, 3, size=(50, M.n))
        batch = trop_membership_batch(M, pts)
        assert list(batch) == [trop_matroid_membership(M, list(p)) for p in pts]


def test_min_convention_on_gamma():
    G = gamma_matroid(6)
    assert trop_matroid_membership(G, [1, 1, 0, 0, 0, 0])
    assert not trop_matroid_membership(G, [0, 0, 1, 1, 1, 1])


def test_points_are_normalized():
    assert TropicalPoint.of([3, 5, 4]).coords == (0, 2, 1)
    assert trop_set_membership(0b111, [2, 2, 5])
    assert not trop_set_membership(0b111, [1, 2, 5])
    with pytest.raises(LengthMismatch):
        trop_matroid_membership(uniform(1, 3), [0, 0])


def test_flag_cone_points_lie_in_trop():
    for M in matroids_upto(4):
        if M.loops():
            with pytest.raises(NotAChainOfFlats):
                flag_cone_point(M, [])
            continue
        for chain in flag_chains(M):
            assert trop_matroid_membership(M, flag_cone_point(M, chain))


def test_flag_cone_point_rejects_non_chains():
    M = uniform(2, 3)
    with pytest.raises(NotAChainOfFlats):
        flag_cone_point(M, [0b011])
    with pytest.raises(NotAChainOfFlats):
        flag_cone_point(M, [0b001, 0b010])
    v = flag_cone_point(M, [0b001], [Fraction(5, 2)])
    assert v.coords == (Fraction(5, 2), 0, 0)


def test_inclusion_and_witness():
    assert bergman_inclusion(uniform(1, 3), uniform(2, 3))
    assert not bergman_inclusion(uniform(2, 3), uniform(1, 3))
    w = inclusion_witness(uniform(2, 3), uniform(1, 3))
    assert trop_matroid_membership(uniform(2, 3), w)
    assert not trop_matroid_membership(uniform(1, 3), w)
    assert inclusion_witness(uniform(1, 3), uniform(2, 3)) is None


def test_witnesses_on_all_small_pairs():
    for M1 in matroids_upto(4):
        if M1.loops():
            continue
        for M2 in matroids_upto(4):
            if M2.n != M1.n or bergman_inclusion(M1, M2):
                continue
            w = inclusion_witness(M1, M2)
            assert trop_matroid_membership(M1, w) and not trop_matroid_membership(M2, w)


def test_veronese_injective():
    rng = random.Random(2024)
    for _ in range(1000):
        a = TropicalPoint.of([rng.randint(0, 9) for _ in range(3)])
        b = TropicalPoint.of([rng.randint(0, 9) for _ in range(3)])
        if a != b:
            assert trop_veronese_apply(a, 2) != trop_veronese_apply(b, 2)


def test_monomial_order():
    assert [monomial_name(u) for u in monomials(2, 2)] == ["x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"]
    assert monomials(1, 0) == [(0, 0)]
    with pytest.raises(TooManyMonomials):
        trop_veronese_apply([0] * 6, 4)  # 126 monomials


def test_macaulay_matrix():
    I = HomogeneousIdealInput(2, ({(1, 0, 0): 1, (0, 1, 0): -1},))
    B = macaulay_matrix(I, 2)
    assert (B.rows, B.cols) == (3, 6)
    with pytest.raises(DegreeTooSmall):
        macaulay_matrix(I, 0)
    with pytest.raises(ValueError):
        HomogeneousIdealInput(2, ({(1, 0, 0): 1, (0, 2, 0): 1},))


def _row_space_supports(B: ExactMatrix, p: int):
    """Supports of every nonzero vector in the row space, by brute-force enumeration over GF(p)."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=B.rows):
        v = [sum(c * B[i, j] for i, c in enumerate(coeffs)) for j in range(B.cols)]
        supp = mask_of(j for j, x in enumerate(v) if x)
        if supp:
            out.add(supp)
    return out


def test_degree_part_circuits_are_minimal_supports():
    I = HomogeneousIdealInput(2, ({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1},))
    F = GF(3)
    B = macaulay_matrix(I, 2, F)
    M = matroid_of_degree_part(I, 2, F)
    supports = _row_space_supports(B, 3)
    minimal = {S for S in supports if not any(T != S and T & S == T for T in supports)}
    assert set(M.circuits()) == minimal
    assert all(M.is_cycle(S) for S in supports)


def test_degree_part_random_supports_are_cycles():
    I = HomogeneousIdealInput(2, ({(1, 1, 0): 1, (0, 0, 2): -3}, {(1, 0, 0): 2, (0, 1, 0): 1, (0, 0, 1): 5}))
    B = macaulay_matrix(I, 3, QQ)
    M = matroid_of_degree_part(I, 3, QQ)
    rng = random.Random(17)
    for _ in range(200):
        # sparse combinations reach small supports, not only the generic one
        coeffs = [rng.choice([0, 0, 1, -2, 3]) for _ in range(B.rows)]
        v = [sum(c * B[i, j] for i, c in enumerate(coeffs)) for j in range(B.cols)]
        supp = mask_of(j for j, x in enumerate(v) if x)
        assert M.is_cycle(supp)
    for C in M.circuits():
        assert any(C == mask_of(j for j, x in enumerate(row) if x) for row in _circuit_vectors(B, C))


def _circuit_vectors(B: ExactMatrix, C: int):
    # a row-space vector vanishing off C: y with y B_j = 0 for j outside C
    outside = [j for j in range(B.cols) if not C >> j & 1]
    Y = B.select_columns(outside).left_kernel()
    return [(Y @ B).row(i) for i in range(Y.rows)]


def test_standard_line_over_rationals_and_gf2():
    I = HomogeneousIdealInput(2, ({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1},))
    J = HomogeneousIdealInput(2, ({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1},))
    pts = [[5, 0, 0], [0, 2, 0], [0, 0, 0]]
    over_q = check_quotient_implies_inclusion(I, J, 2, pts)
    assert not over_q.quotient
    assert all(s.in_I and s.in_J for s in over_q.samples)
    # in characteristic 2, J_2 lies inside I_2 and the quotient holds
    over_2 = check_quotient_implies_inclusion(I, J, 2, pts, GF(2))
    assert over_2.quotient and over_2.consistent


def test_relative_realizability_outcomes():
    out = linear_relative_realizability(uniform(1, 4), uniform(2, 4), seed=0)
    assert isinstance(out, QuotientRealization)
    assert check_quotient_realization(out, Quotient(uniform(2, 4), uniform(1, 4)))

    miss = linear_relative_realizability(uniform(2, 4), uniform(1, 4), seed=0)
    assert isinstance(miss, NotIncluded) and miss.witness is not None

    P = non_pappus()
    e = 1 << NON_PAPPUS_E
    report = linear_relative_realizability(P.contract(e), P.delete(e), seed=0)
    assert isinstance(report, NonRealizableReport)
    assert report.fixture == "non-pappus"
    assert report.major.h.relabel(report.permutation) == P
