"""Named matroids and matrices used as regression fixtures."""

from __future__ import annotations

from fractions import Fraction

from .matroid import Matroid, from_bases, from_circuits_of_rank, mask_of

# Non-Pappus configuration: points 1..8 and e (index 8).  The three diagonal
# points 7, 8, e are NOT collinear.
NON_PAPPUS_LABELS = ("1", "2", "3", "4", "5", "6", "7", "8", "e")
NON_PAPPUS_LINES = (
    ("1", "2", "3"),
    ("4", "5", "6"),
    ("1", "5", "7"),
    ("2", "4", "7"),
    ("1", "6", "8"),
    ("3", "4", "8"),
    ("2", "6", "e"),
    ("3", "5", "e"),
)


def non_pappus() -> Matroid:
    idx = {name: i for i, name in enumerate(NON_PAPPUS_LABELS)}
    lines = [[idx[p] for p in line] for line in NON_PAPPUS_LINES]
    return from_circuits_of_rank(9, 3, lines).with_labels(NON_PAPPUS_LABELS)


NON_PAPPUS_E = 8


def gamma_matroid(n_plus_1: int = 6) -> Matroid:
    """Rank-2 loopless matroid on {0..n} with parallel pairs {0,1}, {2,3}, ...

    For odd ground-set size the last element is a simple point.
    """
    if n_plus_1 < 3:
        raise ValueError("need at least two parallel classes")
    bases = []
    for a in range(n_plus_1):
        for b in range(a + 1, n_plus_1):
            if a // 2 != b // 2:
                bases.append(mask_of((a, b)))
    return from_bases(n_plus_1, bases)


def gamma_major(n_plus_1: int = 6) -> Matroid:
    """U_{3,n+1} plus an element e on every line {i, i+1} of the parallel pairs."""
    n = n_plus_1
    e = n
    dependent = [(i, i + 1, e) for i in range(0, n - 1, 2)]
    m = from_circuits_of_rank(n + 1, 3, dependent)
    return m.with_labels(tuple(str(i) for i in range(n)) + ("e",))


def _q(rows):
    return [[Fraction(x) for x in row] for row in rows]


# A plane realizing U_{3,6} that extends to a realization of the major.
EXTENDABLE_PLANE = _q([
    [1, 3, 0, 1, 5, 7],
    [0, 0, 1, 3, -1, -1],
    [1, 4, -1, -3, 0, 0],
])
EXTENDABLE_PLANE_COLUMN = _q([[1], [0], [0]])
EXTENDABLE_PLANE_BOTTOM = _q([
    [0, 0, 1, 3, -1, -1],
    [1, 4, -1, -3, 0, 0],
])

# A plane realizing U_{3,6} that admits no extension to the major.
BLOCKED_PLANE = _q([
    [0, -271, -92, 0, -13, -54],
    [0, -18, -7, -1, 0, -4],
    [-1, 12293, 4173, 0, 588, 2450],
])
# Determinant conditions det(A_{i,i+1,e}) = 0 written as linear forms in the new column.
BLOCKED_PLANE_SYSTEM = _q([
    [-18, 271, 0],
    [4173, 0, 92],
    [2352, 98, 52],
])

KNOWN_NON_REALIZABLE = {"non-pappus": non_pappus}

__all__ = [
    "non_pappus",
    "NON_PAPPUS_E",
    "gamma_matroid",
    "gamma_major",
    "EXTENDABLE_PLANE",
    "EXTENDABLE_PLANE_COLUMN",
    "EXTENDABLE_PLANE_BOTTOM",
    "BLOCKED_PLANE",
    "BLOCKED_PLANE_SYSTEM",
    "KNOWN_NON_REALIZABLE",
]
