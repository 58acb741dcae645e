from .clauses import ClauseExport, ClausePremiseExport, ClauseSystemExport, FlatMapEntry, FlatMapExport, SchematicExport
from .report import (
    CheckReport,
    CrosscheckRecord,
    CrosscheckSummary,
    DeriveReport,
    KripkeModelExport,
    RefuteReport,
    SupportReport,
    dump_json,
)
from .trace import DerivationTrace, SequentTrace, TraceNode

__all__ = [
    "CheckReport",
    "ClauseExport",
    "ClausePremiseExport",
    "ClauseSystemExport",
    "CrosscheckRecord",
    "CrosscheckSummary",
    "DerivationTrace",
    "DeriveReport",
    "FlatMapEntry",
    "FlatMapExport",
    "KripkeModelExport",
    "RefuteReport",
    "SchematicExport",
    "SequentTrace",
    "SupportReport",
    "TraceNode",
    "dump_json",
]
