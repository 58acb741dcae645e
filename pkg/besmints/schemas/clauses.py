"""
Clause System Pydantic Models
"""
from typing import List, Optional

from pydantic import BaseModel


class ClausePremiseExport(BaseModel):
    hyps: List[str]
    head: str


class ClauseExport(BaseModel):
    premises: List[ClausePremiseExport]
    conclusion: str
    formula: str
    shape: str


class SchematicExport(BaseModel):
    kind: str
    template: str
    disjunction: Optional[List[str]] = None
    bot: Optional[str] = None


class ClauseSystemExport(BaseModel):
    clauses: List[ClauseExport]
    schematics: List[SchematicExport]
    goal: Optional[str] = None
    universe: Optional[List[str]] = None


class FlatMapEntry(BaseModel):
    formula: str
    atom: str


class FlatMapExport(BaseModel):
    entries: List[FlatMapEntry]
    bot_atom: str
    fresh_y: str
