"""
Report Pydantic Models
Verdict records emitted by the CLI under --json and by the cross-check harness
"""
import json
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from .trace import DerivationTrace, SequentTrace


class KripkeModelExport(BaseModel):
    worlds: List[int]
    # strict part of the order; reflexive pairs are implied
    order: List[List[int]]
    valuation: Dict[str, List[str]]


class CheckReport(BaseModel):
    formula: str
    context: List[str] = Field(default_factory=list)
    valid: bool
    proof: Optional[SequentTrace] = None


class SupportReport(BaseModel):
    formula: str
    context: List[str]
    base: List[str]
    verdict: bool
    universe: List[str]
    certificate: Optional[DerivationTrace] = None


class DeriveReport(BaseModel):
    goal: str
    assumptions: List[str]
    derivable: bool
    trace: Optional[DerivationTrace] = None


class RefuteReport(BaseModel):
    formula: str
    max_worlds: int
    model: Optional[KripkeModelExport] = None


class CrosscheckRecord(BaseModel):
    record: Literal["formula"] = "formula"
    index: int
    formula: str
    expected: Optional[bool] = None
    bes: bool
    oracle: bool
    mints: bool
    modified: bool
    guarded: bool
    kripke: Optional[KripkeModelExport] = None
    bounded: Optional[bool] = None
    agree: bool


class CrosscheckSummary(BaseModel):
    record: Literal["summary"] = "summary"
    checked: int
    valid: int
    invalid: int
    refuted: int
    mismatches: int
    mismatched: List[int]
    bounded_findings: Optional[int] = None
    ok: bool


def dump_json(model: BaseModel) -> str:
    """Byte-deterministic JSON: sorted keys, compact separators"""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
