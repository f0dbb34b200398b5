"""Realizations of matroids, quotients, factorizations and majors.

Two pictures are used.  A :class:`Realization` is column based: column ``j`` of
the matrix is the vector of element ``j``.  A :class:`QuotientRealization` is
row based: the row spaces of its two matrices are nested, bottom inside top,
and each matrix realizes its matroid through its columns.  The row space of a
column realization is the bridge between the two.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from .errors import (
    DimensionMismatch,
    FiniteFieldUnsupported,
    InternalInconsistency,
    InvalidModularCut,
    InvalidRealization,
    SearchInconclusive,
    TooLarge,
)
from .extension import ModularCut, cut_of_extension, extend, find_cut_violation
from .linalg import QQ, ExactMatrix, Field, Scalar, in_span, is_subspace
from .matroid import ElementSet, Matroid, mask_of, members
from .quotient import Major, Quotient, higgs_factorization, higgs_major, major_from_factorization

STRICT_N = 12


@dataclass(frozen=True)
class Realization:
    matroid: Matroid
    matrix: ExactMatrix

    @property
    def field(self) -> Field:
        return self.matrix.field

    def column(self, j: int) -> tuple[Scalar, ...]:
        return self.matrix.column(j)


@dataclass(frozen=True)
class QuotientRealization:
    top: ExactMatrix
    bottom: ExactMatrix


@dataclass(frozen=True)
class ObstructionCertificate:
    """Proof that a realization does not extend along ``cut``.

    ``candidate_space`` spans W, the vectors lying in the span of every
    minimal flat of the cut (it has zero rows when W = 0).  W is contained in
    the span of ``blocking_flat``, which is not in the cut, so every candidate
    vector would also put the new element in that flat.  ``system`` is the
    stacked linear conditions whose kernel is W.
    """

    cut: ModularCut
    candidate_space: ExactMatrix
    blocking_flat: ElementSet
    system: ExactMatrix

    def verify(self, R: Realization) -> bool:
        W = self.candidate_space
        if self.blocking_flat in self.cut:
            return False
        if self.system.kernel().T.row_basis() != W.row_basis():
            return False
        return is_subspace(W, _span(R.matrix, self.blocking_flat))


# -- column matroids -----------------------------------------------------------


def _integer_rows(A: ExactMatrix) -> list[list[int]]:
    out = []
    for row in A.entries:
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * m) for x in row])
    return out


def _bareiss_nonzero(M: list[list[int]]) -> bool:
    n = len(M)
    M = [r[:] for r in M]
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return False
            M[k], M[swap] = M[swap], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return n == 0 or M[n - 1][n - 1] != 0


def column_matroid(A: ExactMatrix) -> Matroid:
    """Matroid of linear dependencies among the columns of ``A``."""
    R = A.row_basis()
    r = R.rows
    n = A.cols
    bases = []
    if A.field.is_rational:
        rows = _integer_rows(R)
        for B in itertools.combinations(range(n), r):
            if _bareiss_nonzero([[row[j] for j in B] for row in rows]):
                bases.append(mask_of(B))
    else:
        for B in itertools.combinations(range(n), r):
            if R.select_columns(B).det():
                bases.append(mask_of(B))
    return Matroid(n, r, tuple(bases))


def check_realizes(A: ExactMatrix, M: Matroid, strict: bool = False) -> bool:
    """Whether the columns of ``A`` have exactly the independent sets of ``M``.

    The basis comparison is complete on its own.  ``strict`` additionally
    compares the rank of every subset (ground sets of at most 12 elements).
    """
    if A.cols != M.n or A.rows != M.rank:
        raise DimensionMismatch(f"expected a {M.rank}x{M.n} matrix, got {A.rows}x{A.cols}")
    if column_matroid(A) != M:
        return False
    if strict:
        if M.n > STRICT_N:
            raise TooLarge(f"strict verification is limited to n <= {STRICT_N}")
        for S in range(1 << M.n):
            if A.select_columns(members(S)).rank() != M.rank_of(S):
                return False
    return True


def check_quotient_realization(qr: QuotientRealization, q: Quotient, strict: bool = False) -> bool:
    return (
        check_realizes(qr.top, q.top, strict)
        and check_realizes(qr.bottom, q.bottom, strict)
        and is_subspace(qr.bottom, qr.top)
    )


# -- extension along a modular cut ---------------------------------------------


def _span(A: ExactMatrix, F: ElementSet) -> ExactMatrix:
    """Row-space matrix of the span of the columns indexed by ``F``."""
    return A.select_columns(members(F)).T


def _maximal(family: Sequence[ElementSet]) -> list[ElementSet]:
    return [F for F in family if not any(G != F and G & F == F for G in family)]


def _sample(basis: ExactMatrix, avoid: Sequence[ExactMatrix], rng: random.Random) -> tuple[Scalar, ...]:
    """A vector in the row space of ``basis`` outside every row space in ``avoid``.

    The caller guarantees that no space in ``avoid`` contains the whole row
    space of ``basis``, so over Q this terminates; the bound doubles every few
    misses to keep the expected number of draws small.
    """
    m, d = basis.rows, basis.cols
    if m == 0:
        return tuple(Fraction(0) for _ in range(d))
    bound = 1
    misses = 0
    while True:
        coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(m)]
        v = tuple(sum((c * basis.entries[i][j] for i, c in enumerate(coeffs)), Fraction(0)) for j in range(d))
        if not any(in_span(S, v) for S in avoid):
            return v
        misses += 1
        if misses % 4 == 0:
            bound *= 2


def _candidate(A: ExactMatrix, M: Matroid, cut: ModularCut,
               within: Optional[ExactMatrix] = None) -> Union[tuple[ExactMatrix, ExactMatrix, list[ExactMatrix]], ObstructionCertificate]:
    d = A.rows
    minimal = cut.minimal
    conditions = ExactMatrix(A.field, 0, d, ())
    for G in minimal:
        conditions = conditions.vstack(_span(A, G).kernel().T)
    if within is not None:
        conditions = conditions.vstack(within.kernel().T)
    W = conditions.kernel().T.row_basis()
    outside = [F for F in M.flats() if F not in cut]
    for F in outside:
        if is_subspace(W, _span(A, F)):
            return ObstructionCertificate(cut, W, F, conditions)
    avoid = [_span(A, F) for F in _maximal(outside)]
    return W, conditions, avoid


def extend_along_cut(R: Realization, cut: ModularCut, seed: int) -> Union[Realization, ObstructionCertificate]:
    """Realize ``extend(M, cut)`` by appending one column, or certify that no column works.

    The empty cut adds the new element as a coloop: the ambient space gains a
    coordinate and the new column is the corresponding unit vector.
    """
    if not R.field.is_rational:
        raise FiniteFieldUnsupported("extension needs an infinite field; use Q")
    M = R.matroid
    if cut.matroid != M:
        raise InvalidModularCut("cut belongs to a different matroid")
    violation = find_cut_violation(M, cut.flats)
    if violation is not None:
        raise InvalidModularCut(f"{violation.reason}: {violation.witness}")
    target = extend(M, cut)
    A = R.matrix
    if cut.is_empty:
        grown = A.vstack(ExactMatrix.zeros(1, A.cols))
        unit = ExactMatrix.from_columns([[0] * A.rows + [1]])
        return Realization(target, grown.hstack(unit))
    found = _candidate(A, M, cut)
    if isinstance(found, ObstructionCertificate):
        return found
    W, _, avoid = found
    v = _sample(W, avoid, random.Random(seed))
    out = Realization(target, A.hstack(ExactMatrix.from_columns([v])))
    if not check_realizes(out.matrix, target):
        raise InternalInconsistency("sampled column does not realize the extension")
    return out


def verify_extension_column(R: Realization, cut: ModularCut, v: Sequence) -> bool:
    """Whether appending ``v`` to ``R`` realizes ``extend(M, cut)``."""
    A = R.matrix
    col = ExactMatrix.from_columns([v], A.field, rows=A.rows)
    for F in R.matroid.flats():
        if in_span(_span(A, F), col.column(0)) != (F in cut):
            return False
    return check_realizes(A.hstack(col), extend(R.matroid, cut))


# -- quotients, majors, factorizations -----------------------------------------


def _left_kernel_of_columns(A: ExactMatrix, cols: Sequence[int]) -> ExactMatrix:
    """Rows ``y`` with ``y . a_j = 0`` for the listed columns (identity if none)."""
    if not cols:
        return ExactMatrix.identity(A.rows, A.field)
    return A.select_columns(cols).T.kernel().T


def realize_quotient_from_major(R_H: Realization, H: Major, q: Optional[Quotient] = None) -> QuotientRealization:
    """Top is the E-columns; bottom is their image modulo the span of the K-columns."""
    if R_H.matroid != H.h:
        raise InvalidRealization("realization is not of the given major")
    if not check_realizes(R_H.matrix, H.h):
        raise InvalidRealization("matrix does not realize the major")
    if q is not None and not H.is_major_of(q):
        raise InvalidRealization("the major does not belong to this quotient")
    A = R_H.matrix
    E = [j for j in range(H.h.n) if j not in H.new_elements]
    top = A.select_columns(E)
    Q = _left_kernel_of_columns(A, H.new_elements)
    bottom = Q @ top
    qr = QuotientRealization(top, bottom)
    if not check_quotient_realization(qr, Quotient(H.top, H.bottom)):
        raise InternalInconsistency("derived quotient realization is invalid")
    return qr


def quotient_map(qr: QuotientRealization) -> ExactMatrix:
    """The matrix ``G`` with ``bottom = G @ top``."""
    T, B = qr.top, qr.bottom
    if T.rank() != T.rows:
        raise InvalidRealization("top matrix must have full row rank")
    rows = []
    for i in range(B.rows):
        x, _ = T.T.solve(B.row(i))
        if x is None:
            raise InvalidRealization("bottom row space is not inside the top row space")
        rows.append(x)
    return ExactMatrix.from_rows(rows, T.field, cols=T.rows)


def realize_major_from_quotient(qr: QuotientRealization, q: Quotient, seed: int) -> Realization:
    """Realize the Higgs major by appending generic vectors of ``ker G`` to the top columns."""
    if not qr.top.field.is_rational:
        raise FiniteFieldUnsupported("major realization needs an infinite field; use Q")
    if not check_quotient_realization(qr, q):
        raise InvalidRealization("matrices do not realize the quotient")
    major = higgs_major(q)
    U = quotient_map(qr).kernel().T
    k = q.nullity
    rng = random.Random(seed)
    A = qr.top
    current = q.top
    lifted = major_from_factorization(higgs_factorization(q))
    for i in range(k):
        step = lifted.h.delete(mask_of(range(q.n + i + 1, q.n + k)))
        cut = cut_of_extension(step, q.n + i)
        found = _candidate(A, current, cut, within=U)
        if isinstance(found, ObstructionCertificate):
            raise InternalInconsistency("no vector of ker G extends the Higgs factorization")
        W, _, avoid = found
        v = _sample(W, avoid, rng)
        A = A.hstack(ExactMatrix.from_columns([v]))
        current = step
    out = Realization(major.h, A)
    if not check_realizes(A, major.h):
        raise InternalInconsistency("assembled matrix does not realize the Higgs major")
    return out


def realize_factorization(qr: QuotientRealization, q: Quotient, seed: int) -> list[ExactMatrix]:
    """Nested row spaces ``U_0 > U_1 > ... > U_k`` realizing the Higgs factorization."""
    R = realize_major_from_quotient(qr, q, seed)
    n, k = q.n, q.nullity
    A = R.matrix
    top = A.select_columns(range(n))
    spaces = [(_left_kernel_of_columns(A, list(range(n, n + i))) @ top).row_basis() for i in range(k + 1)]
    fac = higgs_factorization(q)
    for U, N in zip(spaces, fac.steps):
        if not check_realizes(U, N):
            raise InternalInconsistency("intermediate space does not realize its Higgs lift")
    return spaces


def project_flag_pluckers(R_H: Realization, H: Major) -> tuple[dict, dict]:
    """Plücker vectors of top and bottom read off the major's realization.

    Top coordinates are the maximal minors on subsets of E; bottom coordinate
    ``B`` is the maximal minor on ``B`` together with all of K.  Both are
    normalized projectively.
    """
    A = R_H.matrix
    K = list(H.new_elements)
    E = [j for j in range(H.h.n) if j not in K]
    r = A.rows
    s = r - len(K)
    if A.rank() != r:
        raise InvalidRealization("major realization must have full row rank")

    def normalized(coords: dict) -> dict:
        lead = next((v for v in coords.values() if v), None)
        if lead is None:
            raise InvalidRealization("all Plücker coordinates vanish")
        return {B: v / lead for B, v in coords.items()}

    top = {B: A.select_columns([E[i] for i in B]).det() for B in itertools.combinations(range(len(E)), r)}
    bottom = {
        B: A.select_columns([E[i] for i in B] + K).det() for B in itertools.combinations(range(len(E)), s)
    }
    return normalized(top), normalized(bottom)


# -- realization search ------------------------------------------------------


def _attempt(M: Matroid, order: Sequence[int], seed: int) -> Optional[ExactMatrix]:
    """Greedy column-by-column realization along ``order``; ``None`` if blocked."""
    rng = random.Random(seed)
    d = M.rank
    cols: list[tuple[Fraction, ...]] = []
    placed: list[int] = []
    for x in order:
        S = placed + [x]
        sub = M.restrict(mask_of(S))
        pos = sorted(S).index(x)
        cut = cut_of_extension(sub, pos)
        prev = sub.delete(1 << pos)
        keep = sorted(placed)
        A = ExactMatrix.from_columns([cols[placed.index(j)] for j in keep], QQ, rows=d)
        found = _candidate(A, prev, cut)
        if isinstance(found, ObstructionCertificate):
            return None
        W, _, avoid = found
        cols.append(_sample(W, avoid, rng))
        placed.append(x)
    A = ExactMatrix.from_columns([cols[placed.index(j)] for j in range(M.n)], QQ, rows=d)
    return A


def _attempt_job(args):
    M, i, seed = args
    order = list(range(M.n))
    if i > 0:
        random.Random(seed * 1_000_003 + i).shuffle(order)
    return _attempt(M, order, seed * 1_000_003 + i)


def search_realization(M: Matroid, seed: int, attempts: int = 32, jobs: int = 1) -> Realization:
    """Look for a rational realization by greedy extension over element orders.

    Attempt 0 uses the natural order, later attempts seeded permutations.  With
    several jobs the lowest successful attempt index wins, so the result does
    not depend on scheduling.  Failure is reported as
    :class:`SearchInconclusive`, never as non-realizability.
    """
    tasks = [(M, i, seed) for i in range(attempts)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_attempt_job, tasks))
    else:
        results = []
        for t in tasks:
            results.append(_attempt_job(t))
            if results[-1] is not None:
                break
    for A in results:
        if A is not None:
            if not check_realizes(A, M):
                raise InternalInconsistency("search produced a matrix that does not realize M")
            return Realization(M, A)
    raise SearchInconclusive(f"no realization found in {attempts} attempts")
