"""Tropical linear spaces (min convention) and their inclusions.

A point lies in trop(M) when, on every circuit, the minimum of its coordinates
is attained at least twice.  Points are kept modulo the all-ones vector,
normalized so that the smallest coordinate is zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import (
    DegreeTooSmall,
    EmptySupport,
    GroundSetMismatch,
    InternalInconsistency,
    LengthMismatch,
    NotAChainOfFlats,
    TooManyMonomials,
)
from .fixtures import KNOWN_NON_REALIZABLE
from .linalg import QQ, ExactMatrix, Field
from .matroid import ElementSet, Matroid, is_isomorphic, members
from .quotient import Major, Quotient, circuit_violation, higgs_major, is_quotient
from .realization import QuotientRealization, column_matroid, realize_quotient_from_major, search_realization

MAX_MONOMIALS = 63


@dataclass(frozen=True)
class TropicalPoint:
    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Sequence) -> "TropicalPoint":
        vals = [Fraction(v) for v in values]
        if not vals:
            return cls(())
        low = min(vals)
        return cls(tuple(v - low for v in vals))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def _as_point(v) -> TropicalPoint:
    return v if isinstance(v, TropicalPoint) else TropicalPoint.of(v)


def trop_set_membership(A: ElementSet, v) -> bool:
    """Whether the minimum of ``v`` over ``A`` is attained at least twice."""
    if A == 0:
        raise EmptySupport("tropical hypersurface of an empty support")
    v = _as_point(v)
    vals = [v.coords[i] for i in members(A)]
    low = min(vals)
    return sum(1 for x in vals if x == low) >= 2


def _check_length(M: Matroid, v: TropicalPoint) -> None:
    if len(v) != M.n:
        raise LengthMismatch(f"point has {len(v)} coordinates, matroid has {M.n} elements")


def trop_matroid_membership(M: Matroid, v) -> bool:
    v = _as_point(v)
    _check_length(M, v)
    return all(trop_set_membership(C, v) for C in M.circuits())


def trop_matroid_membership_cycles(M: Matroid, v) -> bool:
    """The same test run over every nonempty cycle instead of every circuit."""
    v = _as_point(v)
    _check_length(M, v)
    return all(trop_set_membership(V, v) for V in M.cycles() if V)


def trop_membership_batch(M: Matroid, points: np.ndarray) -> np.ndarray:
    """Vectorized circuit test for integer points, one per row."""
    points = np.asarray(points)
    if points.ndim != 2 or points.shape[1] != M.n:
        raise LengthMismatch("points must form an array with one column per element")
    ok = np.ones(points.shape[0], dtype=bool)
    for C in M.circuits():
        vals = points[:, members(C)]
        low = vals.min(axis=1, keepdims=True)
        ok &= (vals == low).sum(axis=1) >= 2
    return ok


def flag_cone_point(M: Matroid, chain: Sequence[ElementSet], weights: Optional[Sequence] = None) -> TropicalPoint:
    """``sum_j w_j * 1_{F_j}`` for a chain of nonempty proper flats.

    A matroid with a loop has an empty tropical linear space, so it is rejected.
    """
    if M.loops():
        raise NotAChainOfFlats("a matroid with loops has no tropical points")
    chain = list(chain)
    weights = [Fraction(1)] * len(chain) if weights is None else [Fraction(w) for w in weights]
    if len(weights) != len(chain):
        raise LengthMismatch("one weight per flat is required")
    if any(w <= 0 for w in weights):
        raise NotAChainOfFlats("weights must be positive")
    prev = 0
    for F in chain:
        if not M.is_flat(F) or F == M.ground or F == 0 or F & prev != prev or F == prev:
            raise NotAChainOfFlats(f"{F:#x} does not continue a strict chain of proper flats")
        prev = F
    coords = [Fraction(0)] * M.n
    for F, w in zip(chain, weights):
        for i in members(F):
            coords[i] += w
    v = TropicalPoint.of(coords)
    if not trop_matroid_membership(M, v):
        raise InternalInconsistency("flag cone point is not in the tropical linear space")
    return v


def flag_chains(M: Matroid, max_length: Optional[int] = None):
    """All strict chains of nonempty proper flats, shortest first."""
    proper = [F for F in M.flats() if F and F != M.ground]
    proper.sort(key=lambda F: (M.rank_of(F), F))
    limit = len(proper) if max_length is None else max_length

    def grow(chain: list[ElementSet]):
        yield list(chain)
        if len(chain) == limit:
            return
        last = chain[-1] if chain else 0
        for F in proper:
            if F != last and F & last == last:
                chain.append(F)
                yield from grow(chain)
                chain.pop()

    yield from grow([])


def bergman_inclusion(M1: Matroid, M2: Matroid) -> bool:
    """Whether trop(M1) is contained in trop(M2), i.e. M1 is a quotient of M2."""
    if M1.n != M2.n:
        raise GroundSetMismatch(f"{M1.n} != {M2.n}")
    return is_quotient(M2, M1)


def inclusion_witness(M1: Matroid, M2: Matroid) -> Optional[TropicalPoint]:
    """A point of trop(M1) outside trop(M2), built from a circuit of M2 that is not a cycle of M1.

    Requires M1 loopless; returns ``None`` when the inclusion holds.
    """
    C = circuit_violation(M2, M1)
    if C is None:
        return None
    x = next(x for x in members(C) if M1.rank_of(C & ~(1 << x)) == M1.rank_of(C) - 1)
    F = M1.closure(C & ~(1 << x))
    v = flag_cone_point(M1, [F] if F else [])
    if trop_matroid_membership(M2, v):
        raise InternalInconsistency("witness point unexpectedly lies in trop(M2)")
    return v


# -- relative realizability ---------------------------------------------------


@dataclass(frozen=True)
class NotIncluded:
    witness: Optional[TropicalPoint] = None


@dataclass(frozen=True)
class NonRealizableReport:
    fixture: str
    major: Major
    permutation: tuple[int, ...]


def linear_relative_realizability(
    M1: Matroid, M2: Matroid, seed: int, attempts: int = 32, jobs: int = 1
) -> Union[QuotientRealization, NonRealizableReport, NotIncluded]:
    """Realize the inclusion trop(M1) in trop(M2) by nested rational linear spaces.

    The quotient ``M2 ->> M1`` is realizable exactly when its Higgs major is.
    Majors isomorphic to a shipped non-realizable fixture are reported as such;
    any other failure of the seeded search raises ``SearchInconclusive``.
    """
    if not bergman_inclusion(M1, M2):
        witness = inclusion_witness(M1, M2) if not M1.loops() else None
        return NotIncluded(witness)
    q = Quotient(M2, M1)
    major = higgs_major(q)
    for name, build in KNOWN_NON_REALIZABLE.items():
        perm = is_isomorphic(major.h, build())
        if perm is not None:
            return NonRealizableReport(name, major, perm)
    R = search_realization(major.h, seed, attempts=attempts, jobs=jobs)
    return realize_quotient_from_major(R, major, q)


# -- degree-d parts of homogeneous ideals ---------------------------------------


Polynomial = Mapping[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class HomogeneousIdealInput:
    n: int
    generators: tuple[Polynomial, ...] = field(default_factory=tuple)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            clean = {tuple(u): Fraction(c) for u, c in g.items() if Fraction(c) != 0}
            if not clean:
                raise ValueError("zero polynomial among the generators")
            degrees = {sum(u) for u in clean}
            if len(degrees) != 1:
                raise ValueError("generator is not homogeneous")
            if any(len(u) != self.n + 1 or min(u) < 0 for u in clean):
                raise ValueError(f"exponent vectors must have {self.n + 1} nonnegative entries")
            gens.append(clean)
        object.__setattr__(self, "generators", tuple(gens))

    def degrees(self) -> list[int]:
        return [sum(next(iter(g))) for g in self.generators]


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` in ``n+1`` variables, graded lex with x0 > ... > xn."""
    out = [u for u in itertools.product(range(d + 1), repeat=n + 1) if sum(u) == d]
    out.sort(reverse=True)
    return out


def monomial_name(u: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(u):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) if parts else "1"


def _check_monomial_count(n: int, d: int) -> int:
    count = comb(n + d, d)
    if count > MAX_MONOMIALS:
        raise TooManyMonomials(f"{count} monomials of degree {d} exceed {MAX_MONOMIALS}")
    return count


def macaulay_matrix(I: HomogeneousIdealInput, d: int, fld: Field = QQ) -> ExactMatrix:
    """Coefficients of every ``x^a * g`` of degree ``d``, one row each, columns in monomial order."""
    if any(dg > d for dg in I.degrees()):
        raise DegreeTooSmall(f"degree {d} is below a generator degree")
    _check_monomial_count(I.n, d)
    cols = {u: j for j, u in enumerate(monomials(I.n, d))}
    rows = []
    for g, dg in zip(I.generators, I.degrees()):
        for a in monomials(I.n, d - dg):
            row = [0] * len(cols)
            for u, c in g.items():
                row[cols[tuple(x + y for x, y in zip(a, u))]] = c
            rows.append(row)
    return ExactMatrix.from_rows(rows, fld, cols=len(cols))


def matroid_of_degree_part(I: HomogeneousIdealInput, d: int, fld: Field = QQ) -> Matroid:
    """The matroid whose cycles are the supports of the degree-``d`` part of ``I``."""
    B = macaulay_matrix(I, d, fld)
    labels = [monomial_name(u) for u in monomials(I.n, d)]
    return column_matroid(B).dual().with_labels(labels)


def trop_veronese_apply(v, d: int) -> TropicalPoint:
    v = _as_point(v)
    n = len(v) - 1
    _check_monomial_count(n, d)
    return TropicalPoint.of([sum(a * x for a, x in zip(u, v.coords)) for u in monomials(n, d)])


@dataclass(frozen=True)
class SampleVerdict:
    point: TropicalPoint
    transported: TropicalPoint
    in_I: bool
    in_J: bool


@dataclass(frozen=True)
class InclusionReport:
    quotient: bool
    samples: tuple[SampleVerdict, ...]

    @property
    def consistent(self) -> bool:
        """When the quotient holds, every transported sample of the I side is on the J side."""
        return not self.quotient or all(s.in_J for s in self.samples if s.in_I)


def check_quotient_implies_inclusion(
    I: HomogeneousIdealInput, J: HomogeneousIdealInput, d: int, samples: Sequence, fld: Field = QQ
) -> InclusionReport:
    """Test ``M(J_d) ->> M(I_d)`` and transport samples of trop(V(I)) by the Veronese map.

    Only the implication from the quotient to the inclusion is checked; its
    converse fails in general.
    """
    if I.n != J.n:
        raise GroundSetMismatch("ideals live in different polynomial rings")
    MI = matroid_of_degree_part(I, d, fld)
    MJ = matroid_of_degree_part(J, d, fld)
    verdicts = []
    for w in samples:
        w = _as_point(w)
        u = trop_veronese_apply(w, d)
        verdicts.append(SampleVerdict(w, u, trop_matroid_membership(MI, u), trop_matroid_membership(MJ, u)))
    return InclusionReport(is_quotient(MJ, MI), tuple(verdicts))
