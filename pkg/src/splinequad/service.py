"""HTTP surface and shared document builders.

The command line and the web API emit the same documents, built by the
same functions.  Everything numerical happens in :mod:`splinequad.engine`,
:mod:`splinequad.realline`, and :mod:`splinequad.splinecheck`; this module
only translates between wire shapes and library objects, and maps library
errors onto HTTP status codes (422 for requests that can never work, 409
for requests that failed numerically).

Builders raise the library's own exceptions so the CLI can reuse them
without pulling in any HTTP machinery.
"""

from __future__ import annotations

from typing import List, Literal, Optional, Tuple

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from .engine import (FreeParameter, Partition, QuadratureRule, RuleRequest,
                     generate)
from .errors import (InvalidPartition, NumericFailure,
                     UnsupportedConfiguration)
from .realline import realline_rule_c0, realline_rule_c1
from .splinecheck import SplineSpace, residuals

TOOL_VERSION = "0.1.0"


# --------------------------------------------------------------------------
# request body

class RuleBody(BaseModel):
    """What a caller must supply to have a rule built.

    ``free`` uses the same mini-syntax as the command line:
    ``zero``, ``value=V``, or ``pin=X``.
    """

    continuity: Literal[0, 1]
    nodes: int = Field(ge=1, description="nodes per ordinary subinterval")
    lengths: List[float] = Field(min_length=1)
    interval: Tuple[float, float]
    middle: int = Field(ge=1, description="1-based meeting subinterval")
    family: Literal["full", "half"] = "full"
    free: str = "zero"
    verify: bool = False


def parse_free_spec(text: str) -> FreeParameter:
    """Turn ``zero`` / ``value=V`` / ``pin=X`` into a :class:`FreeParameter`.

    Raises ``ValueError`` with a human-readable reason on anything else.
    """
    spec = text.strip()
    if spec == "zero":
        return FreeParameter.zero()
    for prefix, make in (("value=", FreeParameter.of_value),
                         ("pin=", FreeParameter.pin)):
        if spec.startswith(prefix):
            tail = spec[len(prefix):]
            try:
                return make(float(tail))
            except ValueError:
                raise ValueError(
                    f"could not parse {tail!r} as a number in {text!r}")
    raise ValueError(
        f"expected 'zero', 'value=V', or 'pin=X', got {text!r}")


def free_spec_text(free: FreeParameter) -> str:
    """Canonical mini-syntax string for a free-parameter choice."""
    if free.kind == "value":
        return f"value={free.value!r}"
    if free.kind == "pin_node":
        return f"pin={free.value!r}"
    return "zero"


# --------------------------------------------------------------------------
# response documents

class RequestDoc(BaseModel):
    continuity: int
    nodes_per_subinterval: int
    middle_index: int
    family: str
    free: str


class PartitionDoc(BaseModel):
    a: float
    b: float
    lengths: List[float]


class SubintervalDoc(BaseModel):
    index: int
    nodes: List[float]
    weights: List[float]


class MetaDoc(BaseModel):
    """Provenance: what was built and which choices were taken."""

    degree: int
    dimension: int
    node_count: int
    free_value: Optional[float]
    branches: List[Tuple[int, str]]


class ResidualDoc(BaseModel):
    basis_id: str
    exact: float
    quadrature: float
    residual: float


class VerificationDoc(BaseModel):
    max_residual: float
    min_weight: float
    per_basis: List[ResidualDoc]


class RuleDocument(BaseModel):
    """Serialized rule: request echo, partition, nodes/weights, provenance.

    Numeric fields are emitted as shortest round-trip decimals, so
    ``parse(emit(doc))`` reproduces every float bit for bit.
    """

    tool_version: str
    request: RequestDoc
    partition: PartitionDoc
    per_subinterval: List[SubintervalDoc]
    nodes: List[float]
    weights: List[float]
    meta: MetaDoc
    verification: Optional[VerificationDoc] = None


class LimitDocument(BaseModel):
    """Reference rule for one interior subinterval of a huge uniform grid."""

    tool_version: str
    family: str
    n: int
    nodes: List[float]
    weights: List[float]


# --------------------------------------------------------------------------
# builders (pure: raise library errors, never HTTP ones)

def document_from_rule(rule: QuadratureRule, *,
                       verify: bool = False) -> RuleDocument:
    """Serialize a generated rule, optionally attaching a residual report."""
    req = rule.request
    part = rule.partition
    verification = None
    if verify:
        space = SplineSpace(degree=rule.meta.degree,
                            continuity=req.continuity,
                            knots=tuple(float(t) for t in part.knots[1:-1]),
                            a=part.a, b=part.b)
        report = residuals(rule, space)
        verification = VerificationDoc(
            max_residual=report.max_residual,
            min_weight=report.min_weight,
            per_basis=[ResidualDoc(basis_id=r.id, exact=r.exact,
                                   quadrature=r.quadrature,
                                   residual=r.residual)
                       for r in report.per_basis])
    return RuleDocument(
        tool_version=TOOL_VERSION,
        request=RequestDoc(continuity=req.continuity,
                           nodes_per_subinterval=req.nodes_per_subinterval,
                           middle_index=req.middle_index,
                           family=req.family,
                           free=free_spec_text(req.free_parameter)),
        partition=PartitionDoc(a=part.a, b=part.b,
                               lengths=[float(x) for x in part.lengths]),
        per_subinterval=[SubintervalDoc(index=piece.index,
                                        nodes=[float(x) for x in piece.nodes],
                                        weights=[float(w) for w in piece.weights])
                         for piece in rule.per_subinterval],
        nodes=[float(x) for x in rule.nodes],
        weights=[float(w) for w in rule.weights],
        meta=MetaDoc(degree=rule.meta.degree,
                     dimension=rule.meta.dimension,
                     node_count=int(rule.nodes.size),
                     free_value=rule.meta.free_value,
                     branches=list(rule.meta.branches)),
        verification=verification)


def build_rule_document(body: RuleBody) -> RuleDocument:
    """Generate the requested rule and serialize it."""
    free = parse_free_spec(body.free)
    part = Partition(a=body.interval[0], b=body.interval[1],
                     lengths=tuple(body.lengths))
    req = RuleRequest(continuity=body.continuity,
                      nodes_per_subinterval=body.nodes,
                      middle_index=body.middle,
                      family=body.family,
                      free_parameter=free)
    rule = generate(req, part)
    return document_from_rule(rule, verify=body.verify)


def build_realline_document(family: str, n: int) -> LimitDocument:
    """Interior limit rule for ``family`` in {'c0', 'c1'} with n nodes."""
    if family == "c0":
        rule = realline_rule_c0(n)
    elif family == "c1":
        rule = realline_rule_c1(n)
    else:
        raise UnsupportedConfiguration(
            f"unknown interior-rule family {family!r}; choose 'c0' or 'c1'")
    return LimitDocument(tool_version=TOOL_VERSION, family=family, n=n,
                         nodes=[float(x) for x in rule.nodes],
                         weights=[float(w) for w in rule.weights])


# --------------------------------------------------------------------------
# the app

app = FastAPI(title="splinequad", version=TOOL_VERSION)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": TOOL_VERSION}


@app.post("/rules", response_model=RuleDocument)
def post_rules(body: RuleBody) -> RuleDocument:
    try:
        return build_rule_document(body)
    except ValueError as bad:
        raise HTTPException(status_code=422, detail=f"free: {bad}")
    except (InvalidPartition, UnsupportedConfiguration) as bad:
        raise HTTPException(status_code=422, detail=str(bad))
    except NumericFailure as bad:
        raise HTTPException(status_code=409, detail=str(bad))


@app.get("/realline/{family}", response_model=LimitDocument)
def get_realline(family: str, n: int = Query(ge=1)) -> LimitDocument:
    try:
        return build_realline_document(family, n)
    except (InvalidPartition, UnsupportedConfiguration) as bad:
        raise HTTPException(status_code=422, detail=str(bad))
    except NumericFailure as bad:
        raise HTTPException(status_code=409, detail=str(bad))
