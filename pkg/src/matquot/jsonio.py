"""JSON encodings of every public value type.

Element sets are written as ascending index lists; rationals as canonical
``"a/b"`` or ``"a"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .extension import ModularCut, modular_cut
from .linalg import QQ, ExactMatrix, Field, scalar_to_str
from .matroid import Matroid, from_bases, mask_of, members
from .quotient import Factorization, Major
from .realization import ObstructionCertificate, QuotientRealization, Realization
from .tropical import (
    HomogeneousIdealInput,
    InclusionReport,
    NonRealizableReport,
    NotIncluded,
    TropicalPoint,
)


def _sets(masks) -> list[list[int]]:
    return [members(m) for m in sorted(masks)]


def matroid_to_json(M: Matroid) -> dict:
    out: dict[str, Any] = {"n": M.n, "rank": M.rank, "bases": _sets(M.bases)}
    if M.labels is not None:
        out["labels"] = {str(i): name for i, name in enumerate(M.labels)}
    return out


def matroid_from_json(obj: dict) -> Matroid:
    n = int(obj["n"])
    labels = None
    if "labels" in obj and obj["labels"] is not None:
        raw = obj["labels"]
        labels = [raw.get(str(i), str(i)) for i in range(n)] if isinstance(raw, dict) else list(raw)
    M = from_bases(n, [mask_of(b) for b in obj["bases"]], labels)
    if "rank" in obj and int(obj["rank"]) != M.rank:
        raise ValueError(f"declared rank {obj['rank']} differs from basis size {M.rank}")
    return M


def cut_to_json(cut: ModularCut) -> dict:
    return {"matroid": matroid_to_json(cut.matroid), "flats": _sets(cut.flats)}


def cut_from_json(obj: dict) -> ModularCut:
    M = matroid_from_json(obj["matroid"])
    return modular_cut(M, [mask_of(F) for F in obj["flats"]])


def factorization_to_json(N: Factorization) -> dict:
    return {"steps": [matroid_to_json(M) for M in N.steps]}


def factorization_from_json(obj: dict) -> Factorization:
    return Factorization(tuple(matroid_from_json(m) for m in obj["steps"]))


def major_to_json(H: Major) -> dict:
    return {"matroid": matroid_to_json(H.h), "new_elements": list(H.new_elements)}


def major_from_json(obj: dict) -> Major:
    return Major(matroid_from_json(obj["matroid"]), tuple(int(e) for e in obj["new_elements"]))


def field_to_json(F: Field):
    return "Q" if F.is_rational else {"p": F.p}


def field_from_json(obj) -> Field:
    if obj in ("Q", "QQ", None):
        return QQ
    return Field(int(obj["p"]))


def matrix_to_json(A: ExactMatrix) -> dict:
    return {"field": field_to_json(A.field), "rows": A.rows, "cols": A.cols, "entries": A.to_strings()}


def matrix_from_json(obj: dict) -> ExactMatrix:
    fld = field_from_json(obj.get("field", "Q"))
    rows = [[Fraction(x) if isinstance(x, str) else x for x in r] for r in obj["entries"]]
    A = ExactMatrix.from_rows(rows, fld, cols=int(obj["cols"]) if "cols" in obj else None)
    if "rows" in obj and int(obj["rows"]) != A.rows:
        raise ValueError("declared row count does not match the entries")
    return A


def realization_to_json(R: Realization) -> dict:
    return {"matroid": matroid_to_json(R.matroid), "matrix": matrix_to_json(R.matrix)}


def realization_from_json(obj: dict) -> Realization:
    return Realization(matroid_from_json(obj["matroid"]), matrix_from_json(obj["matrix"]))


def quotient_realization_to_json(qr: QuotientRealization) -> dict:
    return {"top": matrix_to_json(qr.top), "bottom": matrix_to_json(qr.bottom)}


def quotient_realization_from_json(obj: dict) -> QuotientRealization:
    return QuotientRealization(matrix_from_json(obj["top"]), matrix_from_json(obj["bottom"]))


def certificate_to_json(c: ObstructionCertificate) -> dict:
    return {
        "kind": "obstruction",
        "cut": cut_to_json(c.cut),
        "candidate_space": matrix_to_json(c.candidate_space),
        "candidate_dimension": c.candidate_space.rows,
        "blocking_flat": members(c.blocking_flat),
        "system": matrix_to_json(c.system),
    }


def point_to_json(v: TropicalPoint) -> dict:
    return {"coords": [str(x) for x in v.coords]}


def point_from_json(obj) -> TropicalPoint:
    coords = obj["coords"] if isinstance(obj, dict) else obj
    return TropicalPoint.of([Fraction(x) for x in coords])


def ideal_to_json(I: HomogeneousIdealInput) -> dict:
    return {
        "n": I.n,
        "generators": [
            {"terms": [{"exps": list(u), "coef": str(c)} for u, c in sorted(g.items(), reverse=True)]}
            for g in I.generators
        ],
    }


def ideal_from_json(obj: dict) -> HomogeneousIdealInput:
    gens = []
    for g in obj["generators"]:
        gens.append({tuple(int(a) for a in t["exps"]): Fraction(t["coef"]) for t in g["terms"]})
    return HomogeneousIdealInput(int(obj["n"]), tuple(gens))


def report_to_json(r: InclusionReport) -> dict:
    return {
        "quotient": r.quotient,
        "consistent": r.consistent,
        "samples": [
            {
                "point": point_to_json(s.point),
                "transported": point_to_json(s.transported),
                "in_I": s.in_I,
                "in_J": s.in_J,
            }
            for s in r.samples
        ],
    }


def non_realizable_to_json(r: NonRealizableReport) -> dict:
    return {
        "kind": "non-realizable",
        "fixture": r.fixture,
        "major": major_to_json(r.major),
        "permutation": list(r.permutation),
    }


def not_included_to_json(r: NotIncluded) -> dict:
    out: dict[str, Any] = {"kind": "not-included"}
    if r.witness is not None:
        out["witness"] = point_to_json(r.witness)
    return out


def to_json(obj) -> Any:
    """Encode any library value; plain JSON values pass through."""
    encoders = [
        (Matroid, matroid_to_json),
        (ModularCut, cut_to_json),
        (Factorization, factorization_to_json),
        (Major, major_to_json),
        (ExactMatrix, matrix_to_json),
        (Realization, realization_to_json),
        (QuotientRealization, quotient_realization_to_json),
        (ObstructionCertificate, certificate_to_json),
        (TropicalPoint, point_to_json),
        (HomogeneousIdealInput, ideal_to_json),
        (InclusionReport, report_to_json),
        (NonRealizableReport, non_realizable_to_json),
        (NotIncluded, not_included_to_json),
    ]
    for cls, enc in encoders:
        if isinstance(obj, cls):
            return enc(obj)
    if isinstance(obj, dict):
        return {k: to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if isinstance(obj, Fraction):
        return scalar_to_str(obj)
    return obj


def _format(value, depth: int) -> str:
    # Like indent=2, but lists of scalars stay on one line.
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_format(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [inner + _format(v, depth + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def dumps(obj) -> str:
    return _format(to_json(obj), 0) + "\n"
