"""Command-line front end.  Exit codes: 0 property holds, 1 property fails, 2 input error."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import SuperAlgebra
from .corpus import ENTRIES, NAMES, build
from .engine.certificates import certificate_document, verify_certificate
from .engine.chain import engel_chain
from .engine.jordan import special_jordan_pipeline
from .engine.qideal import verify_qideal
from .engine.search import counterexample_search, shestakov_support
from .errors import (
    BadParams,
    BudgetExceeded,
    CharTwoUnsupported,
    NotAssociative,
    NotGraded,
    NotPlusClosed,
    ParseError,
    PreconditionFailed,
    SuperEngelError,
    UnknownName,
    UnsupportedMode,
    ValidationError,
)
from .identities import (
    check_alternative_super,
    check_jordan_super,
    check_superassociative,
    check_supercommutative,
)
from .io import algebra_digest, algebra_to_json, dumps, load_json, parse_algebra, subspace_from_json
from .operators import engel_check
from .structure import DEFAULT_BUDGET, SubSuperspace, derived_series, graded_nil_check, power_series

INPUT_ERRORS = (
    ParseError, BadParams, UnknownName, ValidationError, NotGraded, NotPlusClosed,
    CharTwoUnsupported, NotAssociative, UnsupportedMode, BudgetExceeded,
)


def split_params(text: str) -> list[str]:
    """Split "a,b,GF(3)" on top-level commas."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def load_algebra(spec: str, validate: bool = True) -> SuperAlgebra:
    """A JSON file path, or a corpus name such as ``upper-tri(3,010)``."""
    if Path(spec).is_file():
        return parse_algebra(spec, validate)
    if "(" in spec:
        if not spec.endswith(")"):
            raise BadParams(f"malformed corpus spec {spec!r}")
        name, body = spec.split("(", 1)
        return build(name, *split_params(body[:-1]))
    if spec in NAMES:
        return build(spec)
    raise ParseError(f"{spec}: no such file or corpus name")


def _report(A: SuperAlgebra, command: str, results: dict) -> dict:
    return {"tool": "superengel", "version": __version__, "command": command,
            "algebra": A.name, "input_digest": algebra_digest(A), "results": results}


def _elem(x) -> dict | None:
    return None if x is None else {"name": str(x), "coords": x.to_strings()}


def classify(A: SuperAlgebra, backend: str = "auto", budget: int = DEFAULT_BUDGET, envelope_gens: int | None = None) -> dict:
    report = A.validate()
    out: dict = {"valid": report.ok}
    if not report.ok:
        out["issues"] = [str(i) for i in report.issues]
        return out
    out["associative"] = check_superassociative(A).verdict
    out["supercommutative"] = check_supercommutative(A).verdict
    alt = check_alternative_super(A)
    out["alternative"] = alt.verdict
    out["alternative_report"] = alt.to_dict(A)
    if A.field.characteristic != 2:
        kw = {} if envelope_gens is None else {"envelope_gens": envelope_gens}
        jor = check_jordan_super(A, **kw)
        out["jordan"] = jor.verdict
        out["jordan_report"] = jor.to_dict(A)
    else:
        out["jordan"] = None
    try:
        gn = graded_nil_check(A, backend, budget)
        out["graded_nil"] = {"verdict": gn.verdict, "index": gn.index, "witness": _elem(gn.witness),
                             "backend": gn.backend, "flag": gn.flag}
    except SuperEngelError as exc:
        out["graded_nil"] = {"verdict": None, "error": str(exc)}
    ps = power_series(A)
    out["nilpotent"] = {"verdict": ps.reaches_zero, "index": ps.index, "dims": ps.dims()}
    ds = derived_series(A)
    out["solvable"] = {"verdict": ds.reaches_zero, "index": ds.index, "dims": ds.dims()}
    try:
        eng = engel_check(A, "RNilpotencyOnly", backend, budget)
        out["r_nilpotency"] = {"verdict": eng.verdict, "index": eng.index, "witness": _elem(eng.witness),
                               "backend": eng.backend}
    except SuperEngelError as exc:
        out["r_nilpotency"] = {"verdict": None, "error": str(exc)}
    return out


def _emit(args, doc: dict) -> None:
    text = dumps(doc)
    sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    A = load_algebra(args.algebra, validate=False)
    rep = A.validate()
    _emit(args, _report(A, "validate", {"valid": rep.ok, "issues": [str(i) for i in rep.issues]}))
    return 0 if rep.ok else 1


def cmd_classify(args) -> int:
    A = load_algebra(args.algebra)
    t = time.perf_counter()
    res = classify(A, args.backend, args.budget, args.envelope_gens)
    doc = _report(A, "classify", res)
    if args.timing:
        doc["timing_seconds"] = round(time.perf_counter() - t, 4)
    _emit(args, doc)
    return 0 if res["valid"] else 1


def cmd_engel(args) -> int:
    A = load_algebra(args.algebra)
    res = engel_check(A, args.mode, args.backend, args.budget)
    _emit(args, _report(A, "engel", res.to_dict()))
    return 0 if res.verdict else 1


def cmd_chain(args) -> int:
    A = load_algebra(args.algebra)
    cert = engel_chain(A, args.budget)
    _emit(args, certificate_document(A, cert))
    return 0 if cert.nilpotent else 1


def cmd_pipeline(args) -> int:
    A = load_algebra(args.algebra)
    J = subspace_from_json(A, load_json(args.subspace)) if args.subspace else SubSuperspace.whole(A)
    cert = special_jordan_pipeline(A, J, args.backend, args.budget)
    _emit(args, certificate_document(A, cert))
    return 0 if cert.passed else 1


def cmd_qideal(args) -> int:
    A = load_algebra(args.algebra)
    I = subspace_from_json(A, load_json(args.ideal)) if args.ideal else SubSuperspace.zero(A)
    try:
        v = A.parse_element(args.v)
    except ValueError as exc:
        raise ParseError(f"element {args.v!r}: {exc}") from exc
    try:
        q = verify_qideal(I, v)
    except PreconditionFailed as exc:
        w = exc.witness
        wd = w.to_dict() if hasattr(w, "to_dict") else _elem(w)
        _emit(args, _report(A, "qideal", {"ok": False, "reason": exc.reason, "message": str(exc), "witness": wd}))
        return 1
    _emit(args, _report(A, "qideal", {"ok": q.ok, **q.to_dict()}))
    return 0 if q.ok else 1


def cmd_verify(args) -> int:
    A = load_algebra(args.algebra)
    try:
        text = Path(args.certificate).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{args.certificate}: {exc.strerror}") from exc
    res = verify_certificate(A, text, args.budget)
    _emit(args, _report(A, "verify-certificate", res.to_dict()))
    return 0 if res.ok else 1


def cmd_corpus(args) -> int:
    if args.action == "list":
        doc = {"names": list(NAMES),
               "entries": [{"name": e.name, "expected": e.expected, "summary": e.summary} for e in ENTRIES]}
        _emit(args, doc)
        return 0
    if not args.name:
        raise BadParams("corpus emit needs a name")
    A = build(args.name, *args.params)
    _emit(args, algebra_to_json(A))
    return 0


def cmd_search(args) -> int:
    res = counterexample_search(shestakov_support(), args.p, args.budget)
    _emit(args, {"template": "shestakov", **res.to_dict()})
    return 1 if res.violations else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("auto", "enumerate", "symbolic"), default="auto")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cap on enumerated elements or assignments")
    common.add_argument("--envelope-gens", type=int, default=None, help="Grassmann generators for envelope checks")
    common.add_argument("--json", metavar="OUT", default=None, help="also write the JSON output to this file")

    p = argparse.ArgumentParser(prog="superengel", description="Nilpotency and identity checks for finite-dimensional superalgebras.")
    p.add_argument("--version", action="version", version=f"superengel {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    alg_help = "JSON algebra file or corpus name, e.g. upper-tri(3,010)"
    add("validate", cmd_validate, "check grading of the structure constants").add_argument("algebra", help=alg_help)
    sp = add("classify", cmd_classify, "run every identity and nilpotency check")
    sp.add_argument("algebra", help=alg_help)
    sp.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sp = add("engel", cmd_engel, "nilpotency of R_a (or the Engel algebra) for homogeneous a")
    sp.add_argument("algebra", help=alg_help)
    sp.add_argument("--mode", default="RNilpotencyOnly", choices=("RNilpotencyOnly", "FullEngel"))
    add("chain", cmd_chain, "build the nilpotency chain certificate").add_argument("algebra", help=alg_help)
    sp = add("jordan-pipeline", cmd_pipeline, "run the special Jordan pipeline on J inside an associative algebra")
    sp.add_argument("algebra", help=alg_help)
    sp.add_argument("subspace", nargs="?", help="JSON array of coordinate vectors spanning J (default: whole algebra)")
    sp = add("qideal", cmd_qideal, "check the Q-ideal inclusion for B = I + Fv")
    sp.add_argument("algebra", help=alg_help)
    sp.add_argument("v", help="element, e.g. 'f2' or 'E12+E34'")
    sp.add_argument("--ideal", help="JSON subspace file for I (default: zero)")
    sp = add("verify-certificate", cmd_verify, "replay a chain or pipeline certificate")
    sp.add_argument("algebra", help=alg_help)
    sp.add_argument("certificate")
    sp = add("corpus", cmd_corpus, "list or emit built-in algebras")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("params", nargs="*")
    sp = add("search", cmd_search, "exhaustive structure-constant search on the shestakov support")
    sp.add_argument("--p", type=int, default=3, help="prime field size")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
