"""Command-line front end.

Exit codes: 0 success, 1 negative verdict, 2 obstruction or non-realizability
certificate, 3 usage error, 4 inconclusive search.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import fixtures, jsonio
from .errors import MatquotError, SearchInconclusive
from .extension import enumerate_modular_cuts, extend, find_cut_violation, generate_cut, modular_cut
from .linalg import ExactMatrix, Field, plucker, same_row_space, scalar_to_str
from .matroid import (
    Matroid,
    direct_sum,
    is_isomorphic,
    mask_of,
    matroid_from_flats,
    members,
    uniform,
)
from .quotient import (
    FlagMatroid,
    Major,
    Quotient,
    factorization_from_major,
    flag_higgs,
    higgs_factorization,
    higgs_lift,
    higgs_major,
    is_quotient,
    major_from_factorization,
)
from .realization import (
    ObstructionCertificate,
    Realization,
    check_quotient_realization,
    check_realizes,
    extend_along_cut,
    project_flag_pluckers,
    realize_factorization,
    realize_major_from_quotient,
    realize_quotient_from_major,
    verify_extension_column,
)
from .tropical import (
    HomogeneousIdealInput,
    NonRealizableReport,
    NotIncluded,
    TropicalPoint,
    bergman_inclusion,
    check_quotient_implies_inclusion,
    flag_cone_point,
    inclusion_witness,
    linear_relative_realizability,
    matroid_of_degree_part,
    trop_matroid_membership,
    trop_veronese_apply,
)

OK, NEGATIVE, OBSTRUCTION, USAGE, INCONCLUSIVE = 0, 1, 2, 3, 4

FIXTURES: dict[str, Callable[[], Matroid]] = {
    "non-pappus": fixtures.non_pappus,
    "non-pappus-deletion": lambda: fixtures.non_pappus().delete(1 << fixtures.NON_PAPPUS_E),
    "non-pappus-contraction": lambda: fixtures.non_pappus().contract(1 << fixtures.NON_PAPPUS_E),
    "gamma": fixtures.gamma_matroid,
    "gamma-major": fixtures.gamma_major,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument decoding ---------------------------------------------------------


def _load_json(text: str) -> Any:
    text = text.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    path = Path(text)
    if not path.exists():
        raise UsageError(f"no such file and not inline JSON: {text}")
    return json.loads(path.read_text())


def load_matroid(text: str) -> Matroid:
    if text.startswith("uniform:"):
        try:
            r, n = (int(x) for x in text[len("uniform:"):].split(","))
        except ValueError as exc:
            raise UsageError(f"expected uniform:r,n, got {text}") from exc
        return uniform(r, n)
    if text.startswith("fixture:"):
        name = text[len("fixture:"):]
        if name not in FIXTURES:
            raise UsageError(f"unknown fixture {name}; known: {', '.join(sorted(FIXTURES))}")
        return FIXTURES[name]()
    return jsonio.matroid_from_json(_load_json(text))


def _elements(text: Optional[str]) -> int:
    if not text:
        return 0
    return mask_of(int(x) for x in text.split(",") if x.strip())


def _family(text: str) -> list[int]:
    return [mask_of(s) for s in _load_json(text)]


def _need_seed(args) -> int:
    if args.seed is None:
        raise UsageError("this command is randomized and needs an explicit --seed")
    return args.seed


# -- subcommand handlers ------------------------------------------------------
# Each returns (payload, exit code).


def _matroid_cmd(args):
    op = args.op
    if op == "uniform":
        return uniform(args.r, args.n), OK
    if op == "from-bases":
        return jsonio.matroid_from_json(_load_json(args.input)), OK
    if op == "from-flats":
        obj = _load_json(args.input)
        return matroid_from_flats(int(obj["n"]), [mask_of(F) for F in obj["flats"]]), OK
    M = load_matroid(args.matroid)
    if op == "dual":
        return M.dual(), OK
    if op == "minor":
        return _minor(M, args), OK
    if op == "sum":
        return direct_sum(M, load_matroid(args.other)), OK
    if op == "flats":
        return {"by_rank": [[members(F) for F in level] for level in M.flats().by_rank]}, OK
    if op == "circuits":
        return {"circuits": [members(C) for C in M.circuits()]}, OK
    if op == "iso":
        perm = is_isomorphic(M, load_matroid(args.other))
        return {"isomorphic": perm is not None, "permutation": list(perm) if perm else None}, (
            OK if perm is not None else NEGATIVE
        )
    raise UsageError(f"unknown matroid operation {op}")


def _minor(M: Matroid, args) -> Matroid:
    D, C = _elements(args.delete), _elements(args.contract)
    if D & C:
        raise UsageError("deleted and contracted sets must be disjoint")
    # contract first, then delete the survivors of D in the reindexed ground set
    N = M.contract(C)
    kept = [i for i in range(M.n) if not C >> i & 1]
    return N.delete(mask_of(kept.index(i) for i in members(D)))


def _cut_cmd(args):
    M = load_matroid(args.matroid)
    if args.op == "enumerate":
        return {"cuts": [jsonio.cut_to_json(c)["flats"] for c in enumerate_modular_cuts(M)]}, OK
    fam = _family(args.flats)
    if args.op == "check":
        v = find_cut_violation(M, fam)
        if v is None:
            return {"modular_cut": True}, OK
        return {"modular_cut": False, "reason": v.reason, "witness": [members(x) if isinstance(x, int) else x
                                                                     for x in v.witness]}, NEGATIVE
    if args.op == "extend":
        cut = generate_cut(M, fam) if args.generate else modular_cut(M, fam)
        return extend(M, cut, args.label), OK
    raise UsageError(f"unknown cut operation {args.op}")


def _quotient_cmd(args):
    if args.op == "major-from-factorization":
        return major_from_factorization(jsonio.factorization_from_json(_load_json(args.input))), OK
    if args.op == "factorization-from-major":
        return factorization_from_major(jsonio.major_from_json(_load_json(args.input))), OK
    if args.op == "flag-higgs":
        fac, major = flag_higgs(FlagMatroid(tuple(load_matroid(m) for m in args.chain)))
        return {"factorization": fac, "major": major}, OK
    top, bottom = load_matroid(args.top), load_matroid(args.bottom)
    if args.op == "check":
        ok = is_quotient(top, bottom)
        return {"quotient": ok}, OK if ok else NEGATIVE
    q = Quotient(top, bottom)
    if args.op == "nullity":
        return {"nullity": q.nullity_of(_elements(args.set)) if args.set is not None else q.nullity}, OK
    if args.op == "higgs-lift":
        return higgs_lift(q, args.index), OK
    if args.op == "higgs-factorization":
        return higgs_factorization(q), OK
    if args.op == "higgs-major":
        return higgs_major(q), OK
    raise UsageError(f"unknown quotient operation {args.op}")


def _major_arg(args, M: Matroid) -> Major:
    return Major(M, tuple(int(x) for x in args.new_elements.split(",") if x.strip()))


def _realize_cmd(args):
    if args.op in ("major-from-quotient", "factorization"):
        qr = jsonio.quotient_realization_from_json(_load_json(args.input))
        q = Quotient(load_matroid(args.top), load_matroid(args.bottom))
        seed = _need_seed(args)
        if args.op == "major-from-quotient":
            return realize_major_from_quotient(qr, q, seed), OK
        return {"spaces": realize_factorization(qr, q, seed)}, OK
    if args.op == "check-quotient":
        qr = jsonio.quotient_realization_from_json(_load_json(args.input))
        q = Quotient(load_matroid(args.top), load_matroid(args.bottom))
        ok = check_quotient_realization(qr, q, args.strict)
        return {"realizes": ok}, OK if ok else NEGATIVE
    R = jsonio.realization_from_json(_load_json(args.input))
    if args.op == "check":
        ok = check_realizes(R.matrix, R.matroid, args.strict)
        return {"realizes": ok}, OK if ok else NEGATIVE
    if args.op == "extend":
        cut = generate_cut(R.matroid, _family(args.flats)) if args.generate else modular_cut(R.matroid, _family(args.flats))
        out = extend_along_cut(R, cut, _need_seed(args))
        return out, OBSTRUCTION if isinstance(out, ObstructionCertificate) else OK
    if args.op == "quotient-from-major":
        return realize_quotient_from_major(R, _major_arg(args, R.matroid)), OK
    if args.op == "pluckers":
        top, bottom = project_flag_pluckers(R, _major_arg(args, R.matroid))
        return {"top": _coords(top), "bottom": _coords(bottom)}, OK
    raise UsageError(f"unknown realize operation {args.op}")


def _coords(p: dict) -> list:
    return [{"subset": list(B), "value": scalar_to_str(v)} for B, v in p.items()]


def _point(text: str) -> TropicalPoint:
    return jsonio.point_from_json(_load_json(text))


def _trop_cmd(args):
    if args.op == "ideal-matroid":
        I = jsonio.ideal_from_json(_load_json(args.ideal))
        fld = Field(args.p) if args.p else Field()
        return matroid_of_degree_part(I, args.degree, fld), OK
    if args.op == "veronese":
        return trop_veronese_apply(_point(args.point), args.degree), OK
    M = load_matroid(args.matroid)
    if args.op == "member":
        ok = trop_matroid_membership(M, _point(args.point))
        return {"member": ok}, OK if ok else NEGATIVE
    if args.op == "cone-point":
        chain = _family(args.chain)
        weights = [Fraction(w) for w in _load_json(args.weights)] if args.weights else None
        return flag_cone_point(M, chain, weights), OK
    other = load_matroid(args.other)
    if args.op == "inclusion":
        ok = bergman_inclusion(M, other)
        payload: dict[str, Any] = {"included": ok}
        if not ok and not M.loops():
            payload["witness"] = inclusion_witness(M, other)
        return payload, OK if ok else NEGATIVE
    if args.op == "relative":
        out = linear_relative_realizability(M, other, _need_seed(args), attempts=args.attempts, jobs=args.jobs)
        if isinstance(out, NotIncluded):
            return out, NEGATIVE
        if isinstance(out, NonRealizableReport):
            return out, OBSTRUCTION
        return out, OK
    raise UsageError(f"unknown trop operation {args.op}")


# -- worked examples ---------------------------------------------------------


def cmd_non_pappus(args):
    P = fixtures.non_pappus()
    e = 1 << fixtures.NON_PAPPUS_E
    top, bottom = P.delete(e), P.contract(e)
    quotient = is_quotient(top, bottom)
    q = Quotient(top, bottom)
    major = higgs_major(q)
    perm = is_isomorphic(major.h, P)
    report = linear_relative_realizability(bottom, top, seed=0)
    return {
        "quotient": quotient,
        "nullity": q.nullity,
        "elementary": q.nullity == 1,
        "major_isomorphic_to_P": perm is not None,
        "permutation": list(perm) if perm else None,
        "report": report,
    }, OBSTRUCTION if isinstance(report, NonRealizableReport) else NEGATIVE


def cmd_uniform_major(args):
    r, k, n = args.r, args.k, args.n
    q = Quotient(uniform(r + k, n), uniform(r, n))
    major = higgs_major(q)
    ok = major.h == uniform(r + k, n + k)
    return {"major": major, "equals_uniform": ok}, OK if ok else NEGATIVE


def _three_pairs_cut(M: Matroid):
    return generate_cut(M, [0b11, 0b1100, 0b110000])


def cmd_blocked_plane(args):
    M = uniform(3, 6)
    R = Realization(M, ExactMatrix.from_rows(fixtures.BLOCKED_PLANE))
    out = extend_along_cut(R, _three_pairs_cut(M), seed=0)
    if not isinstance(out, ObstructionCertificate):
        return {"obstruction": False, "realization": out}, NEGATIVE
    reference_system = ExactMatrix.from_rows(fixtures.BLOCKED_PLANE_SYSTEM)
    return {
        "realizes_U36": check_realizes(R.matrix, M),
        "certificate": out,
        "certificate_verified": out.verify(R),
        "system_kernel_dimension": out.system.kernel().cols,
        "reference_system_kernel_dimension": reference_system.kernel().cols,
        "system_rows_proportional_to_reference": _rows_proportional(out.system, reference_system),
    }, OBSTRUCTION


def _rows_proportional(A: ExactMatrix, B: ExactMatrix) -> bool:
    if A.rows != B.rows:
        return False
    return all(A.select_rows([i]).vstack(B.select_rows([i])).rank() == 1 for i in range(A.rows))


def cmd_extendable_plane(args):
    M = uniform(3, 6)
    R = Realization(M, ExactMatrix.from_rows(fixtures.EXTENDABLE_PLANE))
    cut = _three_pairs_cut(M)
    column = [row[0] for row in fixtures.EXTENDABLE_PLANE_COLUMN]
    accepted = verify_extension_column(R, cut, column)
    major = Major(extend(M, cut, "e"), (6,))
    RH = Realization(major.h, R.matrix.hstack(ExactMatrix.from_rows(fixtures.EXTENDABLE_PLANE_COLUMN)))
    qr = realize_quotient_from_major(RH, major)
    reference_bottom = ExactMatrix.from_rows(fixtures.EXTENDABLE_PLANE_BOTTOM)
    matches = same_row_space(qr.bottom, reference_bottom)
    payload = {
        "reference_column_accepted": accepted,
        "major": major,
        "quotient_realization": qr,
        "bottom_row_space_matches_reference": matches,
        "bottom_pluckers": _coords(plucker(qr.bottom)),
    }
    return payload, OK if accepted and matches else NEGATIVE


def standard_line_samples(count: int, seed: int) -> list[TropicalPoint]:
    """Points of the standard tropical line in the plane: ``t * e_i`` for ``t >= 0``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        i = rng.randrange(3)
        w = [Fraction(0)] * 3
        w[i] = Fraction(rng.randint(0, 1000), rng.randint(1, 50))
        out.append(TropicalPoint.of(w))
    return out


def standard_line_ideals(p: int) -> tuple[HomogeneousIdealInput, HomogeneousIdealInput]:
    I = HomogeneousIdealInput(2, ({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1},))
    J = HomogeneousIdealInput(2, ({(p, 0, 0): 1, (0, p, 0): 1, (0, 0, p): 1},))
    return I, J


def cmd_standard_line(args):
    I, J = standard_line_ideals(args.p)
    fld = Field(args.char) if args.char else Field()
    samples = standard_line_samples(args.samples, _need_seed(args))
    report = check_quotient_implies_inclusion(I, J, args.p, samples, fld)
    return {
        "M_I": matroid_of_degree_part(I, args.p, fld),
        "M_J": matroid_of_degree_part(J, args.p, fld),
        "report": report,
    }, OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--strict", action="store_true")
    common.add_argument("--out", default=None)

    parser = _Parser(prog="matquot", description="Matroid quotients, Higgs majors and realizations.")
    sub = parser.add_subparsers(dest="group", required=True)

    def leaf(group_parser, name, handler, **kw):
        p = group_parser.add_parser(name, parents=[common], **kw)
        p.set_defaults(handler=handler, op=name)
        return p

    g = sub.add_parser("matroid").add_subparsers(dest="op_name", required=True)
    p = leaf(g, "uniform", _matroid_cmd)
    p.add_argument("r", type=int)
    p.add_argument("n", type=int)
    for name in ("from-bases", "from-flats"):
        leaf(g, name, _matroid_cmd).add_argument("input")
    for name in ("dual", "flats", "circuits"):
        leaf(g, name, _matroid_cmd).add_argument("matroid")
    p = leaf(g, "minor", _matroid_cmd)
    p.add_argument("matroid")
    p.add_argument("--delete", default="")
    p.add_argument("--contract", default="")
    for name in ("sum", "iso"):
        p = leaf(g, name, _matroid_cmd)
        p.add_argument("matroid")
        p.add_argument("other")

    g = sub.add_parser("cut").add_subparsers(dest="op_name", required=True)
    leaf(g, "enumerate", _cut_cmd).add_argument("--matroid", required=True)
    for name in ("check", "extend"):
        p = leaf(g, name, _cut_cmd)
        p.add_argument("--matroid", required=True)
        p.add_argument("--flats", required=True, help="JSON list of element lists")
        if name == "extend":
            p.add_argument("--label", default="e")
            p.add_argument("--generate", action="store_true", help="close the flats into the smallest cut")

    g = sub.add_parser("quotient").add_subparsers(dest="op_name", required=True)
    for name in ("check", "nullity", "higgs-lift", "higgs-factorization", "higgs-major"):
        p = leaf(g, name, _quotient_cmd)
        p.add_argument("--top", required=True)
        p.add_argument("--bottom", required=True)
        if name == "nullity":
            p.add_argument("--set", default=None)
        if name == "higgs-lift":
            p.add_argument("--index", type=int, required=True)
    for name in ("major-from-factorization", "factorization-from-major"):
        leaf(g, name, _quotient_cmd).add_argument("input")
    leaf(g, "flag-higgs", _quotient_cmd).add_argument("chain", nargs="+")

    g = sub.add_parser("realize").add_subparsers(dest="op_name", required=True)
    leaf(g, "check", _realize_cmd).add_argument("input")
    p = leaf(g, "extend", _realize_cmd)
    p.add_argument("input")
    p.add_argument("--flats", required=True)
    p.add_argument("--generate", action="store_true")
    for name in ("quotient-from-major", "pluckers"):
        p = leaf(g, name, _realize_cmd)
        p.add_argument("input")
        p.add_argument("--new-elements", required=True)
    for name in ("major-from-quotient", "factorization", "check-quotient"):
        p = leaf(g, name, _realize_cmd)
        p.add_argument("input")
        p.add_argument("--top", required=True)
        p.add_argument("--bottom", required=True)

    g = sub.add_parser("trop").add_subparsers(dest="op_name", required=True)
    p = leaf(g, "member", _trop_cmd)
    p.add_argument("--matroid", required=True)
    p.add_argument("--point", required=True)
    for name in ("inclusion", "relative"):
        p = leaf(g, name, _trop_cmd)
        p.add_argument("--matroid", required=True, help="the matroid whose tropical space should be contained")
        p.add_argument("--other", required=True)
        if name == "relative":
            p.add_argument("--attempts", type=int, default=32)
    p = leaf(g, "cone-point", _trop_cmd)
    p.add_argument("--matroid", required=True)
    p.add_argument("--chain", required=True)
    p.add_argument("--weights", default=None)
    p = leaf(g, "ideal-matroid", _trop_cmd)
    p.add_argument("--ideal", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--p", type=int, default=None, help="work over GF(p) instead of Q")
    p = leaf(g, "veronese", _trop_cmd)
    p.add_argument("--point", required=True)
    p.add_argument("--degree", type=int, required=True)

    g = sub.add_parser("paper").add_subparsers(dest="op_name", required=True)
    leaf(g, "non-pappus", cmd_non_pappus)
    p = leaf(g, "uniform-major", cmd_uniform_major)
    for name in ("r", "k", "n"):
        p.add_argument(name, type=int)
    leaf(g, "lamboglia-3.3", cmd_blocked_plane)
    leaf(g, "lamboglia-3.4", cmd_extendable_plane)
    p = leaf(g, "standard-line", cmd_standard_line)
    p.add_argument("p", type=int)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--char", type=int, default=None, help="work over GF(char) instead of Q")
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        payload, code = args.handler(args)
    except UsageError as exc:
        stderr.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return USAGE
    except SearchInconclusive as exc:
        stdout.write(jsonio.dumps({"kind": "inconclusive", "message": str(exc)}))
        return INCONCLUSIVE
    except (MatquotError, ValueError, KeyError, json.JSONDecodeError) as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return USAGE
    text = jsonio.dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
