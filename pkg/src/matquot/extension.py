"""Modular cuts and single-element extensions.

The empty family is accepted as a modular cut; extending along it adds the new
element as a coloop.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InvalidModularCut
from .matroid import ElementSet, Matroid, insert_bit, matroid_from_flats


@dataclass(frozen=True)
class CutViolation:
    reason: str
    witness: tuple


@dataclass(frozen=True)
class ModularCut:
    matroid: Matroid
    flats: frozenset[ElementSet]

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(sorted(self.flats, key=lambda F: (F.bit_count(), F)))

    def __len__(self) -> int:
        return len(self.flats)

    def __contains__(self, F: ElementSet) -> bool:
        return F in self.flats

    @cached_property
    def minimal(self) -> tuple[ElementSet, ...]:
        out = [F for F in self.flats if not any(G != F and G & F == G for G in self.flats)]
        return tuple(sorted(out))

    @property
    def is_empty(self) -> bool:
        return not self.flats

    @property
    def is_loop_cut(self) -> bool:
        """True when the new element would be a loop (closure of the empty set is a member)."""
        return self.matroid.loops() in self.flats


def find_cut_violation(M: Matroid, family: Iterable[ElementSet]) -> Optional[CutViolation]:
    fam = frozenset(family)
    flats = M.flats()
    for F in fam:
        if F not in flats:
            return CutViolation("not a flat", (F,))
    for F in fam:
        for G in flats:
            if G & F == F and G not in fam:
                return CutViolation("not upward closed", (F, G))
    members = sorted(fam)
    for i, A in enumerate(members):
        for B in members[i + 1:]:
            meet = A & B
            if meet in fam:
                continue
            if M.rank_of(A) + M.rank_of(B) == M.rank_of(meet) + M.rank_of(A | B):
                return CutViolation("modular pair with missing intersection", (A, B))
    return None


def is_modular_cut(M: Matroid, family: Iterable[ElementSet]) -> bool:
    return find_cut_violation(M, family) is None


def modular_cut(M: Matroid, family: Iterable[ElementSet]) -> ModularCut:
    fam = frozenset(family)
    violation = find_cut_violation(M, fam)
    if violation is not None:
        raise InvalidModularCut(f"{violation.reason}: {violation.witness}")
    return ModularCut(M, fam)


def generate_cut(M: Matroid, generators: Iterable[ElementSet]) -> ModularCut:
    """Smallest modular cut containing the closures of ``generators``."""
    flats = list(M.flats())
    fam = set()
    pending = [M.closure(g) for g in generators]
    while pending:
        for F in pending:
            fam.update(G for G in flats if G & F == F)
        pending = []
        members = sorted(fam)
        for i, A in enumerate(members):
            for B in members[i + 1:]:
                meet = A & B
                if meet not in fam and meet not in pending and (
                    M.rank_of(A) + M.rank_of(B) == M.rank_of(meet) + M.rank_of(A | B)
                ):
                    pending.append(meet)
    return ModularCut(M, frozenset(fam))


def _linear_subclasses(M: Matroid) -> list[frozenset[ElementSet]]:
    hyps = list(M.hyperplanes())
    colines = M.flats().by_rank[M.rank - 2] if M.rank >= 2 else ()
    groups = [[i for i, H in enumerate(hyps) if H & X == X] for X in colines]
    groups = [g for g in groups if len(g) > 1]
    groups_of = [[] for _ in hyps]
    for gi, g in enumerate(groups):
        for i in g:
            groups_of[i].append(gi)

    found: list[frozenset[ElementSet]] = []

    def settle(state: list, queue: list[int]) -> bool:
        # once two hyperplanes through a coline are in, all of them are
        while queue:
            i = queue.pop()
            for gi in groups_of[i]:
                g = groups[gi]
                if sum(1 for j in g if state[j] is True) >= 2:
                    for j in g:
                        if state[j] is False:
                            return False
                        if state[j] is None:
                            state[j] = True
                            queue.append(j)
        return True

    def branch(state: list, i: int) -> None:
        while i < len(hyps) and state[i] is not None:
            i += 1
        if i == len(hyps):
            found.append(frozenset(hyps[j] for j, s in enumerate(state) if s))
            return
        for choice in (False, True):
            nxt = list(state)
            nxt[i] = choice
            if choice and not settle(nxt, [i]):
                continue
            branch(nxt, i + 1)

    branch([None] * len(hyps), 0)
    return found


def enumerate_modular_cuts(M: Matroid) -> list[ModularCut]:
    """Every modular cut of ``M`` including the empty one, in a canonical order."""
    hyps_of = {F: [H for H in M.hyperplanes() if H & F == F] for F in M.flats()}
    cuts = [ModularCut(M, frozenset())]
    for subclass in _linear_subclasses(M):
        fam = frozenset(F for F, hs in hyps_of.items() if all(H in subclass for H in hs))
        cuts.append(ModularCut(M, fam))
    cuts.sort(key=lambda c: (len(c.flats), sorted(c.flats)))
    return cuts


def extend(M: Matroid, cut: ModularCut, label: Optional[str] = None) -> Matroid:
    """One-element extension of ``M`` along ``cut``; the new element has index ``M.n``."""
    if cut.matroid != M:
        raise InvalidModularCut("cut belongs to a different matroid")
    violation = find_cut_violation(M, cut.flats)
    if violation is not None:
        raise InvalidModularCut(f"{violation.reason}: {violation.witness}")
    e = 1 << M.n
    flats = M.flats()
    in_cut = cut.flats
    covered = set()
    for G in in_cut:
        r = M.rank_of(G)
        if r == 0:
            continue
        for F in flats.by_rank[r - 1]:
            if F & G == F and F not in in_cut:
                covered.add(F)
    new = []
    for F in flats:
        if F in in_cut:
            new.append(F | e)
        else:
            new.append(F)
            if F not in covered:
                new.append(F | e)
    labels = None
    if label is not None or M.labels is not None:
        labels = M.names + (label if label is not None else str(M.n),)
    return matroid_from_flats(M.n + 1, new, labels)


def cut_of_extension(N: Matroid, e: int) -> ModularCut:
    """The modular cut of ``N \\ e`` that extends back to ``N`` (with ``e`` moved last)."""
    base = N.delete(1 << e)
    ebit = 1 << e
    fam = set()
    for F in base.flats():
        lifted = insert_bit(F, e)
        if N.rank_of(lifted | ebit) == N.rank_of(lifted):
            fam.add(F)
    return ModularCut(base, frozenset(fam))


def lift_cut(M: Matroid, e: int, cut: ModularCut) -> ModularCut:
    """Lift a modular cut of ``M / e`` to the cut ``{F + e}`` of ``M``."""
    if cut.matroid != M.contract(1 << e):
        raise InvalidModularCut("cut does not belong to the contraction M / e")
    fam = frozenset(insert_bit(F, e) | (1 << e) for F in cut.flats)
    violation = find_cut_violation(M, fam)
    if violation is not None:
        raise InvalidModularCut(f"lifted family is not a modular cut: {violation.reason}")
    return ModularCut(M, fam)


def principal_cut(M: Matroid, F: ElementSet) -> ModularCut:
    F = M.closure(F)
    return ModularCut(M, frozenset(G for G in M.flats() if G & F == F))


__all__: Sequence[str] = [
    "CutViolation",
    "ModularCut",
    "find_cut_violation",
    "is_modular_cut",
    "modular_cut",
    "generate_cut",
    "enumerate_modular_cuts",
    "extend",
    "cut_of_extension",
    "lift_cut",
    "principal_cut",
]
