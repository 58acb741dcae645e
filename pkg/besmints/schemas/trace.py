"""
Trace Pydantic Models
Machine-readable certificates for base derivations and sequent proofs
"""
from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class TraceNode(BaseModel):
    step: Literal["hypothesis", "nullary", "apply"]
    conclusion: str
    rule: Optional[str] = None
    # hypotheses discharged by each premise, aligned with children
    discharged: List[List[str]] = Field(default_factory=list)
    children: List["TraceNode"] = Field(default_factory=list)


class DerivationTrace(BaseModel):
    conclusion: str
    open_hypotheses: List[str]
    rule_applications: int
    replayed: bool
    root: TraceNode


class SequentTrace(BaseModel):
    rule: str
    sequent: str
    premises: List["SequentTrace"] = Field(default_factory=list)


TraceNode.model_rebuild()
SequentTrace.model_rebuild()
