"""Bitset matroid engine.

Subsets of the ground set ``{0, ..., n-1}`` are plain ``int`` bitmasks.  A
:class:`Matroid` is stored by its bases; rank queries go through a numpy rank
table when the ground set is small enough to tabulate every subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    EmptyBases,
    ExchangeAxiomViolation,
    GroundSetMismatch,
    NotAFlatLattice,
    TooLarge,
    UnequalBases,
)

ElementSet = int

MAX_N = 63
TABLE_N = 20  # above this, subset tables are not built


def mask_of(elements: Iterable[int]) -> ElementSet:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def members(mask: ElementSet) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def compress(mask: ElementSet, keep: ElementSet) -> ElementSet:
    """Reindex ``mask`` onto the positions of ``keep``, preserving order."""
    out = 0
    j = 0
    for p in members(keep):
        if mask >> p & 1:
            out |= 1 << j
        j += 1
    return out


def expand(mask: ElementSet, keep: ElementSet) -> ElementSet:
    """Inverse of :func:`compress`: bit j of ``mask`` goes to the j-th element of ``keep``."""
    out = 0
    for j, p in enumerate(members(keep)):
        if mask >> j & 1:
            out |= 1 << p
    return out


def insert_bit(mask: ElementSet, pos: int) -> ElementSet:
    """Open a zero bit at ``pos``, shifting higher bits up by one."""
    low = mask & ((1 << pos) - 1)
    return low | ((mask >> pos) << (pos + 1))


@lru_cache(maxsize=None)
def _subset_index(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


@lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    idx = _subset_index(n)
    pc = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        pc += ((idx >> i) & 1).astype(np.int8)
    return pc


@lru_cache(maxsize=None)
def _layers(n: int) -> tuple[np.ndarray, ...]:
    idx = _subset_index(n)
    pc = _popcounts(n)
    return tuple(idx[pc == k] for k in range(n + 1))


@dataclass(frozen=True)
class FlatFamily:
    """Flats of a matroid grouped by rank."""

    n: int
    by_rank: tuple[tuple[ElementSet, ...], ...]

    def __iter__(self) -> Iterator[ElementSet]:
        for level in self.by_rank:
            yield from level

    def __len__(self) -> int:
        return sum(len(level) for level in self.by_rank)

    def __contains__(self, F: ElementSet) -> bool:
        return F in self.as_set

    @cached_property
    def as_set(self) -> frozenset[ElementSet]:
        return frozenset(self)

    def rank_of_flat(self, F: ElementSet) -> int:
        for r, level in enumerate(self.by_rank):
            if F in level:
                return r
        raise KeyError(F)


@dataclass(frozen=True)
class Matroid:
    """A matroid on ``{0, ..., n-1}`` given by its bases.

    Bases are canonicalized to a sorted tuple of bitmasks, so two matroids
    compare equal exactly when they have the same ground-set size and bases.
    Labels are presentation only and do not take part in equality.
    """

    n: int
    rank: int
    bases: tuple[ElementSet, ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise TooLarge(f"ground set size {self.n} outside 0..{MAX_N}")
        bases = tuple(sorted(set(self.bases)))
        if not bases:
            raise EmptyBases("a matroid needs at least one basis")
        full = (1 << self.n) - 1
        for b in bases:
            if b & ~full:
                raise ValueError(f"basis {b:#x} has elements outside the ground set")
            if b.bit_count() != self.rank:
                raise UnequalBases(f"basis {b:#x} does not have cardinality {self.rank}")
        object.__setattr__(self, "bases", bases)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise ValueError("labels must name every element")
            object.__setattr__(self, "labels", labels)

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, |bases|={len(self.bases)})"

    @property
    def ground(self) -> ElementSet:
        return (1 << self.n) - 1

    @property
    def names(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else tuple(str(i) for i in range(self.n))

    def with_labels(self, labels: Optional[Sequence[str]]) -> "Matroid":
        return Matroid(self.n, self.rank, self.bases, None if labels is None else tuple(labels))

    @cached_property
    def basis_set(self) -> frozenset[ElementSet]:
        return frozenset(self.bases)

    @cached_property
    def _table(self) -> Optional[np.ndarray]:
        if self.n > TABLE_N:
            return None
        n = self.n
        idx = _subset_index(n)
        ind = np.zeros(1 << n, dtype=bool)
        ind[np.array(self.bases, dtype=np.int64)] = True
        for i in range(n):
            bit = 1 << i
            sel = idx[(idx & bit) != 0]
            ind[sel ^ bit] |= ind[sel]
        rk = np.where(ind, _popcounts(n), 0).astype(np.int8)
        for i in range(n):
            bit = 1 << i
            sel = idx[(idx & bit) != 0]
            rk[sel] = np.maximum(rk[sel], rk[sel ^ bit])
        return rk

    # -- rank and closure --------------------------------------------------

    def rank_of(self, A: ElementSet) -> int:
        table = self._table
        if table is not None:
            return int(table[A])
        return max((A & b).bit_count() for b in self.bases)

    def is_independent(self, A: ElementSet) -> bool:
        return self.rank_of(A) == A.bit_count()

    def closure(self, A: ElementSet) -> ElementSet:
        r = self.rank_of(A)
        out = A
        for x in range(self.n):
            bit = 1 << x
            if not A & bit and self.rank_of(A | bit) == r:
                out |= bit
        return out

    def is_flat(self, A: ElementSet) -> bool:
        return self.closure(A) == A

    def loops(self) -> ElementSet:
        return self.closure(0)

    def coloops(self) -> ElementSet:
        out = self.ground
        for b in self.bases:
            out &= b
        return out

    # -- flats, circuits, cycles -------------------------------------------

    @cached_property
    def _flats(self) -> FlatFamily:
        table = self._table
        if table is not None:
            idx = _subset_index(self.n)
            ok = np.ones(1 << self.n, dtype=bool)
            for x in range(self.n):
                bit = 1 << x
                ok &= ((idx & bit) != 0) | (table[idx | bit] > table)
            found = [int(F) for F in idx[ok]]
        else:
            found = self._flats_by_search()
        levels: list[list[int]] = [[] for _ in range(self.rank + 1)]
        for F in found:
            levels[self.rank_of(F)].append(F)
        return FlatFamily(self.n, tuple(tuple(sorted(lv)) for lv in levels))

    def _flats_by_search(self) -> list[ElementSet]:
        start = self.closure(0)
        seen = {start}
        stack = [start]
        while stack:
            F = stack.pop()
            rest = self.ground & ~F
            while rest:
                x = (rest & -rest).bit_length() - 1
                G = self.closure(F | (1 << x))
                rest &= ~G
                if G not in seen:
                    seen.add(G)
                    stack.append(G)
        return list(seen)

    def flats(self) -> FlatFamily:
        return self._flats

    def hyperplanes(self) -> tuple[ElementSet, ...]:
        return self._flats.by_rank[self.rank - 1] if self.rank > 0 else ()

    @cached_property
    def _circuits(self) -> tuple[ElementSet, ...]:
        table = self._table
        if table is not None:
            idx = _subset_index(self.n)
            pc = _popcounts(self.n)
            ok = table < pc
            for x in range(self.n):
                bit = 1 << x
                ok &= ((idx & bit) == 0) | (table[idx ^ bit] == pc - 1)
            return tuple(int(C) for C in idx[ok])
        found = set()
        for b in self.bases:
            for x in members(self.ground & ~b):
                C = 1 << x
                for y in members(b):
                    if (b ^ (1 << y)) | (1 << x) in self.basis_set:
                        C |= 1 << y
                found.add(C)
        return tuple(sorted(found))

    def circuits(self) -> tuple[ElementSet, ...]:
        return self._circuits

    def cocircuits(self) -> tuple[ElementSet, ...]:
        return tuple(sorted(self.ground & ~H for H in self.hyperplanes()))

    def is_cycle(self, A: ElementSet) -> bool:
        """A union of circuits, i.e. a set with no coloops in the restriction to it."""
        r = self.rank_of(A)
        return all(self.rank_of(A & ~(1 << x)) == r for x in members(A))

    def cycles(self) -> frozenset[ElementSet]:
        """All cycles, built as unions of circuits (exponential; small matroids only)."""
        out = {0}
        for C in self.circuits():
            out |= {V | C for V in out}
        return frozenset(out)

    # -- minors, duals -----------------------------------------------------

    def _kept_labels(self, keep: ElementSet) -> Optional[tuple[str, ...]]:
        if self.labels is None:
            return None
        return tuple(self.labels[i] for i in members(keep))

    def delete(self, S: ElementSet) -> "Matroid":
        keep = self.ground & ~S
        restricted = {b & keep for b in self.bases}
        r = max(b.bit_count() for b in restricted)
        bases = {compress(b, keep) for b in restricted if b.bit_count() == r}
        return Matroid(keep.bit_count(), r, tuple(bases), self._kept_labels(keep))

    def restrict(self, S: ElementSet) -> "Matroid":
        return self.delete(self.ground & ~S)

    def contract(self, S: ElementSet) -> "Matroid":
        keep = self.ground & ~S
        rs = self.rank_of(S)
        bases = {compress(b & keep, keep) for b in self.bases if (b & S).bit_count() == rs}
        return Matroid(keep.bit_count(), self.rank - rs, tuple(bases), self._kept_labels(keep))

    def dual(self) -> "Matroid":
        full = self.ground
        return Matroid(self.n, self.n - self.rank, tuple(full ^ b for b in self.bases), self.labels)

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Image of this matroid under ``i -> perm[i]``."""
        bases = tuple(mask_of(perm[i] for i in members(b)) for b in self.bases)
        labels = None
        if self.labels is not None:
            inv = [0] * self.n
            for i, p in enumerate(perm):
                inv[p] = i
            labels = tuple(self.labels[inv[j]] for j in range(self.n))
        return Matroid(self.n, self.rank, bases, labels)


# -- constructors ----------------------------------------------------------


def check_exchange(n: int, bases: Sequence[ElementSet]) -> None:
    """Raise :class:`ExchangeAxiomViolation` with a witness if exchange fails."""
    basis_set = set(bases)
    arr = np.array(sorted(basis_set), dtype=np.uint64)
    for b1 in sorted(basis_set):
        for x in members(b1):
            rest = b1 ^ (1 << x)
            reach = 0
            for y in range(n):
                if not rest >> y & 1 and (rest | (1 << y)) in basis_set:
                    reach |= 1 << y
            xbit = np.uint64(1 << x)
            bad = ((arr & xbit) == 0) & ((arr & np.uint64(reach)) == 0)
            if bad.any():
                raise ExchangeAxiomViolation(b1, int(arr[np.argmax(bad)]), x)


def from_bases(n: int, bases: Iterable[ElementSet], labels: Optional[Sequence[str]] = None) -> Matroid:
    bases = sorted(set(bases))
    if not bases:
        raise EmptyBases("a matroid needs at least one basis")
    r = bases[0].bit_count()
    if any(b.bit_count() != r for b in bases):
        raise UnequalBases("bases must all have the same cardinality")
    check_exchange(n, bases)
    return Matroid(n, r, tuple(bases), None if labels is None else tuple(labels))


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise ValueError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, r, tuple(mask_of(c) for c in itertools.combinations(range(n), r)))


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    bases = tuple(b1 | (b2 << M1.n) for b1 in M1.bases for b2 in M2.bases)
    labels = None
    if M1.labels is not None or M2.labels is not None:
        labels = M1.names + M2.names
    return Matroid(M1.n + M2.n, M1.rank + M2.rank, bases, labels)


def from_circuits_of_rank(n: int, rank: int, dependent: Iterable[Iterable[int]]) -> Matroid:
    """Rank-``rank`` matroid whose non-bases are exactly the given ``rank``-sets.

    Convenient for point-line configurations such as the non-Pappus matroid.
    """
    dep = {mask_of(d) for d in dependent}
    bases = [mask_of(c) for c in itertools.combinations(range(n), rank) if mask_of(c) not in dep]
    return from_bases(n, bases)


def weak_leq(M1: Matroid, M2: Matroid) -> bool:
    """True iff every independent set of ``M2`` is independent in ``M1``."""
    if M1.n != M2.n:
        raise GroundSetMismatch(f"{M1.n} != {M2.n}")
    return all(M1.is_independent(b) for b in M2.bases)


def matroid_from_flats(n: int, flats: Iterable[ElementSet], labels: Optional[Sequence[str]] = None) -> Matroid:
    """The matroid whose lattice of flats is ``flats``.

    Validates the flat axioms (ground set present, closed under intersection,
    covers of every flat partition its complement) and raises
    :class:`NotAFlatLattice` with a witness otherwise.
    """
    if n > TABLE_N:
        raise TooLarge(f"matroid_from_flats supports n <= {TABLE_N}")
    N = 1 << n
    full = N - 1
    member = np.zeros(N, dtype=bool)
    for F in flats:
        if F & ~full or F < 0:
            raise NotAFlatLattice(f"set {F:#x} is not a subset of the ground set", witness=F)
        member[F] = True
    if not member[full]:
        raise NotAFlatLattice("the ground set is not in the family", witness=full)

    # up[A] = intersection of all members containing A
    up = np.zeros(N, dtype=np.int64)
    layers = _layers(n)
    up[full] = full
    for k in range(n - 1, -1, -1):
        A = layers[k]
        acc = np.full(len(A), full, dtype=np.int64)
        for x in range(n):
            bit = 1 << x
            free = (A & bit) == 0
            acc[free] &= up[A[free] | bit]
        up[A] = np.where(member[A], A, acc)

    bad = ~member[up]
    if bad.any():
        A = int(np.argmax(bad))
        containing = [int(F) for F in np.flatnonzero(member) if int(F) & A == A]
        witness = next(
            ((F, G) for F, G in itertools.combinations(containing, 2) if not member[F & G]),
            (A, int(up[A])),
        )
        raise NotAFlatLattice("family is not closed under intersection", witness=witness)

    idx = _subset_index(n)
    mem = idx[member]
    for x in range(n):
        bx = 1 << x
        for y in range(n):
            if y == x:
                continue
            by = 1 << y
            F = mem[((mem & bx) == 0) & ((mem & by) == 0)]
            gx = up[F | bx]
            gy = up[F | by]
            viol = ((gx & by) != 0) & (gx != gy)
            if viol.any():
                i = int(np.argmax(viol))
                raise NotAFlatLattice(
                    "the smallest members above a flat do not partition its complement",
                    witness=(int(F[i]), x, y),
                )

    rank = np.zeros(N, dtype=np.int8)
    for k in range(1, n + 1):
        A = layers[k]
        low = A & -A
        prev = A ^ low
        rank[A] = rank[prev] + ((up[prev] & low) == 0)
    r = int(rank[full])
    bases = idx[(_popcounts(n) == r) & (rank == r)]
    return Matroid(n, r, tuple(int(b) for b in bases), None if labels is None else tuple(labels))


def enumerate_matroids(n: int) -> list[Matroid]:
    """All matroids on ``{0..n-1}`` (labeled), by rank-wise basis-family search."""
    if n > 5:
        raise TooLarge("exhaustive matroid enumeration is limited to n <= 5")
    out = []
    for r in range(n + 1):
        subsets = [mask_of(c) for c in itertools.combinations(range(n), r)]
        for pattern in range(1, 1 << len(subsets)):
            family = [s for i, s in enumerate(subsets) if pattern >> i & 1]
            if _exchange_holds(family):
                out.append(Matroid(n, r, tuple(family)))
    return out


def _exchange_holds(family: Sequence[ElementSet]) -> bool:
    fs = set(family)
    for b1 in family:
        for b2 in family:
            diff2 = b2 & ~b1
            for x in members(b1 & ~b2):
                base = b1 ^ (1 << x)
                if not any((base | (1 << y)) in fs for y in members(diff2)):
                    return False
    return True


# -- isomorphism -----------------------------------------------------------


def is_isomorphic(M1: Matroid, M2: Matroid) -> Optional[tuple[int, ...]]:
    """A permutation ``p`` with ``M1.relabel(p) == M2``, or ``None``."""
    if (M1.n, M1.rank, len(M1.bases)) != (M2.n, M2.rank, len(M2.bases)):
        return None
    if M1 == M2:
        return tuple(range(M1.n))
    C1, C2 = M1.circuits(), M2.circuits()
    if len(C1) != len(C2):
        return None
    C2set = set(C2)

    def signature(M: Matroid, circuits, x: int):
        sizes = sorted(C.bit_count() for C in circuits if C >> x & 1)
        return (sum(1 for b in M.bases if b >> x & 1), tuple(sizes))

    sig1 = [signature(M1, C1, x) for x in range(M1.n)]
    sig2 = [signature(M2, C2, x) for x in range(M2.n)]
    if sorted(sig1) != sorted(sig2):
        return None

    order = sorted(range(M1.n), key=lambda x: sum(1 for s in sig2 if s == sig1[x]))
    by_last: dict[int, list[int]] = {x: [] for x in order}
    position = {x: i for i, x in enumerate(order)}
    for C in C1:
        last = max(members(C), key=lambda e: position[e])
        by_last[last].append(C)

    perm = [-1] * M1.n
    used = [False] * M2.n

    def image(C: int) -> int:
        return mask_of(perm[e] for e in members(C))

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in range(M2.n):
            if used[y] or sig2[y] != sig1[x]:
                continue
            perm[x] = y
            used[y] = True
            if all(image(C) in C2set for C in by_last[x]) and extend(i + 1):
                return True
            used[y] = False
            perm[x] = -1
        return False

    if extend(0):
        return tuple(perm)
    return None
