"""Exact linear algebra over the rationals and prime fields.

Rationals use :class:`fractions.Fraction`; prime-field elements use the small
:class:`ModP` wrapper below so both share the same arithmetic operators.
Row reduction always pivots on the first nonzero entry of a column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatch, FieldMismatch, RankDeficient


@dataclass(frozen=True, slots=True)
class ModP:
    v: int
    p: int

    def _coerce(self, other) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) mixed with GF({other.p})")
            return other
        if isinstance(other, int):
            return ModP(other % self.p, self.p)
        if isinstance(other, Fraction):
            return ModP(other.numerator % self.p, self.p) / ModP(other.denominator % self.p, self.p)
        raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, o):
        o = self._coerce(o)
        return ModP((self.v + o.v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        return ModP((self.v - o.v) % self.p, self.p)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        return ModP(self.v * o.v % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return ModP(self.v * pow(o.v, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, o):
        return self._coerce(o) / self

    def __neg__(self):
        return ModP(-self.v % self.p, self.p)

    def __eq__(self, o):
        if isinstance(o, ModP):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


Scalar = Union[Fraction, ModP]


@dataclass(frozen=True)
class Field:
    """``p is None`` means the rationals."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1))):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x) -> Scalar:
        if self.p is None:
            if isinstance(x, ModP):
                raise FieldMismatch("prime-field element used over Q")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element used over GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        return ModP(0, self.p)._coerce(x)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def _rref_rows(rows: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


@dataclass(frozen=True)
class ExactMatrix:
    field: Field
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch("entries do not match the declared shape")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], field: Field = QQ, cols: Optional[int] = None) -> "ExactMatrix":
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if cols is None:
            if not data:
                raise DimensionMismatch("column count is required for a matrix with no rows")
            cols = len(data[0])
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field = QQ, rows: Optional[int] = None) -> "ExactMatrix":
        cols = [tuple(field(x) for x in c) for c in columns]
        if rows is None:
            if not cols:
                raise DimensionMismatch("row count is required for a matrix with no columns")
            rows = len(cols[0])
        return cls(field, rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        z = field.zero
        return cls(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- shape helpers -----------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.entries))

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, len(idx), self.cols, tuple(self.entries[i] for i in idx))

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.cols, self.rows,
                           tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)))

    def _same_field(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_field(other)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        return ExactMatrix(self.field, self.rows, self.cols + other.cols,
                           tuple(a + b for a, b in zip(self.entries, other.entries)))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_field(other)
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        return ExactMatrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = self.field.zero
        oc = other.columns()
        out = []
        for r in self.entries:
            out.append(tuple(sum((a * b for a, b in zip(r, c) if a and b), z) for c in oc))
        return ExactMatrix(self.field, self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        z = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), z) for r in self.entries)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["ExactMatrix", tuple[int, ...]]:
        rows, piv = _rref_rows([list(r) for r in self.entries], self.cols)
        return ExactMatrix(self.field, self.rows, self.cols, tuple(tuple(r) for r in rows)), tuple(piv)

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_basis(self) -> "ExactMatrix":
        """Nonzero rows of the reduced echelon form: a canonical basis of the row space."""
        R, piv = self.rref()
        return R.select_rows(range(len(piv)))

    def kernel(self) -> "ExactMatrix":
        """Columns form a basis of ``{x : A x = 0}`` (shape ``cols x dim``)."""
        R, piv = self.rref()
        free = [j for j in range(self.cols) if j not in piv]
        z, o = self.field.zero, self.field.one
        basis = []
        for f in free:
            v = [z] * self.cols
            v[f] = o
            for i, p in enumerate(piv):
                v[p] = -R.entries[i][f]
            basis.append(v)
        return ExactMatrix.from_columns(basis, self.field, rows=self.cols)

    def left_kernel(self) -> "ExactMatrix":
        """Rows form a basis of ``{y : y A = 0}``."""
        return self.T.kernel().T

    def solve(self, b: Sequence) -> tuple[Optional[tuple[Scalar, ...]], int]:
        """A particular solution of ``A x = b`` (or ``None``) and the solution-space dimension."""
        if len(b) != self.rows:
            raise DimensionMismatch("right-hand side length does not match row count")
        bcol = [self.field(x) for x in b]
        aug = [list(r) + [bv] for r, bv in zip(self.entries, bcol)]
        rows, piv = _rref_rows(aug, self.cols + 1)
        if self.cols in piv:
            return None, -1
        x = [self.field.zero] * self.cols
        for i, p in enumerate(piv):
            x[p] = rows[i][self.cols]
        return tuple(x), self.cols - len(piv)

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        rows = [list(r) for r in self.entries]
        n = self.rows
        d = self.field.one
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return self.field.zero
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = -d
            lead = rows[c][c]
            d = d * lead
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] / lead
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d

    def to_strings(self) -> list[list[str]]:
        return [[scalar_to_str(x) for x in r] for r in self.entries]

    def __repr__(self):
        return f"ExactMatrix({self.field}, {self.rows}x{self.cols}, {self.to_strings()})"


def scalar_to_str(x: Scalar) -> str:
    if isinstance(x, ModP):
        return str(x.v)
    return str(x)


# -- subspaces (as row spaces) -----------------------------------------------


def annihilator(A: ExactMatrix) -> ExactMatrix:
    """Rows span the vectors orthogonal to the row space of ``A``."""
    return A.kernel().T


def subspace_intersection(spaces: Sequence[ExactMatrix]) -> ExactMatrix:
    """Row-space basis of the intersection of the row spaces of ``spaces``."""
    if not spaces:
        raise DimensionMismatch("need at least one subspace")
    d = spaces[0].cols
    field = spaces[0].field
    for S in spaces:
        if S.cols != d:
            raise DimensionMismatch("subspaces live in different ambient dimensions")
        if S.field != field:
            raise FieldMismatch(f"{S.field} vs {field}")
    stacked = ExactMatrix(field, 0, d, ())
    for S in spaces:
        stacked = stacked.vstack(annihilator(S))
    return annihilator(stacked).row_basis()


def subspace_sum(spaces: Sequence[ExactMatrix]) -> ExactMatrix:
    out = spaces[0]
    for S in spaces[1:]:
        out = out.vstack(S)
    return out.row_basis()


def in_span(A: ExactMatrix, v: Sequence) -> bool:
    """Whether ``v`` lies in the row space of ``A``."""
    if len(v) != A.cols:
        raise DimensionMismatch("vector length does not match ambient dimension")
    row = ExactMatrix.from_rows([v], A.field)
    return A.vstack(row).rank() == A.rank()


def is_subspace(A: ExactMatrix, B: ExactMatrix) -> bool:
    """Whether the row space of ``A`` is contained in the row space of ``B``."""
    return B.vstack(A).rank() == B.rank()


def same_row_space(A: ExactMatrix, B: ExactMatrix) -> bool:
    return A.row_basis() == B.row_basis()


# -- Plücker coordinates -----------------------------------------------------


def plucker(A: ExactMatrix, normalize: bool = True) -> dict[tuple[int, ...], Scalar]:
    """Maximal minors of a full-row-rank ``r x n`` matrix, keyed by column subsets.

    With ``normalize`` the vector is scaled so the first nonzero coordinate, in
    lexicographic subset order, equals one.
    """
    r = A.rows
    if A.rank() != r:
        raise RankDeficient(f"matrix has rank {A.rank()} < {r} rows")
    coords = {B: A.select_columns(B).det() for B in itertools.combinations(range(A.cols), r)}
    if normalize:
        lead = next(v for v in coords.values() if v)
        coords = {B: v / lead for B, v in coords.items()}
    return coords


def projectively_equal(p: dict, q: dict) -> bool:
    if p.keys() != q.keys():
        return False
    lead_p = next((v for v in p.values() if v), None)
    lead_q = next((q[B] for B, v in p.items() if v), None)
    if lead_p is None or not lead_q:
        return lead_p is None and not any(q.values())
    return all(p[B] * lead_q == q[B] * lead_p for B in p)
