"""Serialize chain and pipeline certificates and replay them against an algebra."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..algebra import SuperAlgebra
from ..errors import ParseError
from ..io import algebra_digest, dumps, subspace_from_json
from ..structure import DEFAULT_BUDGET
from .chain import ChainCertificate, engel_chain
from .jordan import PipelineCertificate, special_jordan_pipeline


def certificate_document(A: SuperAlgebra, cert: ChainCertificate | PipelineCertificate) -> dict:
    doc = cert.to_dict()
    doc["algebra_digest"] = algebra_digest(A)
    return doc


def certificate_json(A: SuperAlgebra, cert: ChainCertificate | PipelineCertificate) -> str:
    return dumps(certificate_document(A, cert))


def diff_paths(expected, actual, path: str = "$") -> list[str]:
    """JSON paths where two decoded documents differ."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            if k not in expected:
                out.append(f"{path}.{k} (unexpected)")
            elif k not in actual:
                out.append(f"{path}.{k} (missing)")
            else:
                out += diff_paths(expected[k], actual[k], f"{path}.{k}")
        return out
    if isinstance(expected, list) and isinstance(actual, list):
        out = []
        if len(expected) != len(actual):
            out.append(f"{path} (length {len(actual)} != {len(expected)})")
        for n, (x, y) in enumerate(zip(expected, actual)):
            out += diff_paths(x, y, f"{path}[{n}]")
        return out
    return [] if expected == actual and type(expected) is type(actual) else [path]


@dataclass
class VerificationResult:
    ok: bool
    kind: str
    mismatches: list[str] = field(default_factory=list)
    byte_identical: bool = False
    replayed: str = ""

    def to_dict(self) -> dict:
        return {"ok": self.ok, "kind": self.kind, "mismatches": list(self.mismatches),
                "byte_identical": self.byte_identical}


def _replay(A: SuperAlgebra, doc: dict, budget: int):
    kind = doc.get("kind")
    if kind == "chain":
        cert = engel_chain(A, budget)
        checks = []
        if cert.failure is not None and not cert.failure.recheck():
            checks.append("$.failure (witness does not recheck)")
        for n, step in enumerate(cert.steps):
            C = step.B_before.with_element(step.v)
            if C != step.C or step.v in step.B_before or not (C * C) <= step.B_before:
                checks.append(f"$.steps[{n}] (step invariants)")
        return cert, checks
    if kind == "pipeline":
        if "J" not in doc:
            raise ParseError("pipeline certificate has no J")
        J = subspace_from_json(A, doc["J"])
        cert = special_jordan_pipeline(A, J, budget=budget)
        checks = []
        if cert.Jprime is not None and not J <= cert.Jprime:
            checks.append("$.Jprime (does not contain J)")
        return cert, checks
    raise ParseError(f"unknown certificate kind {kind!r}")


def verify_certificate(A: SuperAlgebra, text: str, budget: int = DEFAULT_BUDGET) -> VerificationResult:
    """Recompute the certificate from A and compare it with ``text``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("certificate: expected a JSON object")
    kind = str(doc.get("kind"))
    cert, checks = _replay(A, doc, budget)
    replayed = certificate_json(A, cert)
    mismatches = diff_paths(json.loads(replayed), doc) + checks
    return VerificationResult(not mismatches, kind, mismatches, replayed == text, replayed)


__all__ = [
    "certificate_document", "certificate_json", "verify_certificate", "VerificationResult", "diff_paths",
]
