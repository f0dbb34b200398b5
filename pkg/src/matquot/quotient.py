"""Quotients, Higgs lifts, factorizations and majors.

A quotient ``top ->> bottom`` lives on one ground set and requires every flat
of ``bottom`` to be a flat of ``top``.  Majors place their new elements after
the ground set, in the order they are contracted by the factorization map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import (
    GroundSetMismatch,
    IndexOutOfRange,
    InternalInconsistency,
    InvalidFactorization,
    InvalidFlag,
    InvalidMajor,
    NotAQuotient,
    NotElementary,
    TooLarge,
)
from .extension import ModularCut, enumerate_modular_cuts, extend, lift_cut, modular_cut
from .matroid import ElementSet, Matroid, direct_sum, mask_of, matroid_from_flats, uniform


def flat_violation(top: Matroid, bottom: Matroid) -> Optional[ElementSet]:
    """A flat of ``bottom`` that is not closed in ``top``, if any."""
    if top.n != bottom.n:
        raise GroundSetMismatch(f"{top.n} != {bottom.n}")
    for F in bottom.flats():
        if not top.is_flat(F):
            return F
    return None


def circuit_violation(top: Matroid, bottom: Matroid) -> Optional[ElementSet]:
    """A circuit of ``top`` that is not a union of circuits of ``bottom``, if any."""
    if top.n != bottom.n:
        raise GroundSetMismatch(f"{top.n} != {bottom.n}")
    for C in top.circuits():
        if not bottom.is_cycle(C):
            return C
    return None


def is_quotient_by_flats(top: Matroid, bottom: Matroid) -> bool:
    return flat_violation(top, bottom) is None


def is_quotient_by_circuits(top: Matroid, bottom: Matroid) -> bool:
    return circuit_violation(top, bottom) is None


def is_quotient(top: Matroid, bottom: Matroid) -> bool:
    """Decide ``top ->> bottom`` by the flat criterion, cross-checked by circuits."""
    by_flats = is_quotient_by_flats(top, bottom)
    if by_flats != is_quotient_by_circuits(top, bottom):
        raise InternalInconsistency("flat and circuit quotient criteria disagree")
    return by_flats


@dataclass(frozen=True)
class Quotient:
    top: Matroid
    bottom: Matroid

    def __post_init__(self):
        witness = flat_violation(self.top, self.bottom)
        if witness is not None:
            raise NotAQuotient(f"flat {witness:#x} of bottom is not a flat of top")
        if circuit_violation(self.top, self.bottom) is not None:
            raise InternalInconsistency("flat and circuit quotient criteria disagree")

    @property
    def n(self) -> int:
        return self.top.n

    @property
    def nullity(self) -> int:
        return self.top.rank - self.bottom.rank

    def nullity_of(self, A: ElementSet) -> int:
        return self.top.rank_of(A) - self.bottom.rank_of(A)


def subset_nullity(q: Quotient, A: ElementSet) -> int:
    return q.nullity_of(A)


@dataclass(frozen=True)
class Factorization:
    steps: tuple[Matroid, ...]

    def __post_init__(self):
        steps = tuple(self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise InvalidFactorization("a factorization has at least one matroid")
        for i, (a, b) in enumerate(zip(steps, steps[1:])):
            if a.n != b.n or a.rank - b.rank != 1 or not is_quotient(a, b):
                raise InvalidFactorization(f"step {i} -> {i + 1} is not an elementary quotient")

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Matroid]:
        return iter(self.steps)

    @property
    def nullity(self) -> int:
        return len(self.steps) - 1

    @property
    def top(self) -> Matroid:
        return self.steps[0]

    @property
    def bottom(self) -> Matroid:
        return self.steps[-1]

    def quotient(self) -> Quotient:
        return Quotient(self.top, self.bottom)


@dataclass(frozen=True)
class Major:
    h: Matroid
    new_elements: tuple[int, ...]

    def __post_init__(self):
        K = tuple(self.new_elements)
        object.__setattr__(self, "new_elements", K)
        if len(set(K)) != len(K) or any(not 0 <= e < self.h.n for e in K):
            raise InvalidMajor("new elements must be distinct indices of the ground set")
        if self.h.rank_of(self.K) != len(K) or self.h.rank_of(self.h.ground & ~self.K) != self.h.rank:
            raise InvalidMajor("new elements must be independent and spanned by the old ones")

    @property
    def K(self) -> ElementSet:
        return mask_of(self.new_elements)

    @property
    def top(self) -> Matroid:
        return self.h.delete(self.K)

    @property
    def bottom(self) -> Matroid:
        return self.h.contract(self.K)

    def is_major_of(self, q: Quotient) -> bool:
        return self.top == q.top and self.bottom == q.bottom


@dataclass(frozen=True)
class FlagMatroid:
    chain: tuple[Matroid, ...]

    def __post_init__(self):
        chain = tuple(self.chain)
        object.__setattr__(self, "chain", chain)
        if not chain:
            raise InvalidFlag("a flag needs at least one matroid")
        for i, (a, b) in enumerate(zip(chain, chain[1:])):
            if a.n != b.n or not is_quotient(a, b):
                raise InvalidFlag(f"members {i} and {i + 1} do not form a quotient")


# -- Higgs lifts -------------------------------------------------------------


def higgs_lift(q: Quotient, i: int) -> Matroid:
    if not 0 <= i <= q.nullity:
        raise IndexOutOfRange(f"Higgs lift index {i} outside 0..{q.nullity}")
    family = set(q.bottom.flats())
    family.update(F for F in q.top.flats() if q.nullity_of(F) < i)
    return matroid_from_flats(q.n, family, q.top.labels)


def higgs_factorization(q: Quotient) -> Factorization:
    k = q.nullity
    return Factorization(tuple(higgs_lift(q, k - j) for j in range(k + 1)))


def top_nullity_cut(q: Quotient) -> ModularCut:
    """Flats of the top of maximal nullity: the cut of ``top ->> L^(k-1)``."""
    k = q.nullity
    if k == 0:
        raise NotElementary("a nullity-0 quotient has no elementary step")
    return modular_cut(q.top, (F for F in q.top.flats() if q.nullity_of(F) == k))


def elementary_cut(q: Quotient) -> ModularCut:
    if q.nullity != 1:
        raise NotElementary(f"quotient has nullity {q.nullity}, expected 1")
    return top_nullity_cut(q)


def higgs_major(q: Quotient) -> Major:
    k = q.nullity
    n = q.n
    labels = q.top.names + tuple(f"ē{i + 1}" for i in range(k))
    lifted = Quotient(direct_sum(q.top, uniform(k, k)), direct_sum(q.bottom, uniform(0, k)))
    h = higgs_lift(lifted, k).with_labels(labels)
    major = Major(h, tuple(range(n, n + k)))
    if not major.is_major_of(q):
        raise InternalInconsistency("Higgs major does not restore the quotient")
    return major


# -- Kennedy's maps ----------------------------------------------------------


def major_from_factorization(N: Factorization) -> Major:
    """Extend the top by e1..ek along the lifted cuts of each elementary step."""
    n = N.top.n
    k = N.nullity
    H = N.top
    for i in range(1, k + 1):
        prefix = mask_of(range(n, n + i - 1))
        if H.contract(prefix) != N.steps[i - 1]:
            raise InternalInconsistency(f"level {i - 1} of the triangle does not contract to N_{i - 1}")
        cut = elementary_cut(Quotient(N.steps[i - 1], N.steps[i]))
        # lift through e_{i-1}, then e_{i-2}, ..., then e_1
        for j in range(i - 1, 0, -1):
            cut = lift_cut(H.contract(mask_of(range(n, n + j - 1))), n, cut)
        H = extend(H, cut, f"e{i}")
    major = Major(H, tuple(range(n, n + k)))
    if not (major.top == N.top and major.bottom == N.bottom):
        raise InternalInconsistency("constructed major does not restore the quotient")
    return major


def factorization_from_major(H: Major) -> Factorization:
    K = H.new_elements
    k = len(K)
    steps = []
    for i in range(k + 1):
        steps.append(H.h.contract(mask_of(K[:i])).delete(_reindex_after_contract(K[:i], K[i:])))
    try:
        return Factorization(tuple(steps))
    except InvalidFactorization as exc:
        raise InvalidMajor(f"major does not induce a factorization: {exc}") from exc


def _reindex_after_contract(removed: Sequence[int], kept: Sequence[int]) -> ElementSet:
    out = 0
    for e in kept:
        out |= 1 << (e - sum(1 for r in removed if r < e))
    return out


# -- enumeration and flags -------------------------------------------------


@lru_cache(maxsize=4096)
def _elementary_quotients(M: Matroid) -> tuple[Matroid, ...]:
    out: list[Matroid] = []
    seen = set()
    for cut in enumerate_modular_cuts(M):
        if cut.is_empty or cut.is_loop_cut:
            continue
        Q = extend(M, cut).contract(1 << M.n)
        if Q not in seen:
            seen.add(Q)
            out.append(Q)
    return tuple(out)


def enumerate_elementary_quotients(M: Matroid) -> list[Matroid]:
    """All nullity-1 quotients of ``M``, one per nondegenerate modular cut."""
    if M.n > 6:
        raise TooLarge("elementary quotient enumeration is limited to n <= 6")
    return [Q.with_labels(M.labels) for Q in _elementary_quotients(M.with_labels(None))]


def enumerate_factorizations(q: Quotient) -> list[Factorization]:
    """Every factorization of ``q`` (small ground sets only)."""
    out = []

    def walk(chain: list[Matroid]) -> None:
        current = chain[-1]
        if current.rank == q.bottom.rank:
            if current == q.bottom:
                out.append(Factorization(tuple(chain)))
            return
        for nxt in enumerate_elementary_quotients(current):
            if is_quotient(nxt, q.bottom):
                walk(chain + [nxt])

    walk([q.top])
    return out


def flag_higgs(flag: FlagMatroid) -> tuple[Factorization, Major]:
    steps = [flag.chain[0]]
    for a, b in zip(flag.chain, flag.chain[1:]):
        steps.extend(higgs_factorization(Quotient(a, b)).steps[1:])
    fac = Factorization(tuple(steps))
    return fac, major_from_factorization(fac)
