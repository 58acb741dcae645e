"""
Crosscheck - differential validity harness
Every formula is decided by the support procedure, the sequent oracle and the
two clausal translations; unprovable formulas also get a Kripke countermodel
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from besmints.engines.kripke import kripke_refute
from besmints.engines.sequent import Sequent, oracle_prove
from besmints.exceptions import BesMintsError, FormulaSyntaxError
from besmints.harness.generator import ATOM_POOL
from besmints.logic.base import EMPTY_BASE
from besmints.logic.grammar import parse_formula
from besmints.logic.syntax import Atom, Formula, atoms, print_formula
from besmints.schemas import CrosscheckRecord, CrosscheckSummary, KripkeModelExport
from besmints.semantics.bounded import Bounds, bounded_eval
from besmints.semantics.support import SupportQuery, guarded_verdict, mints_verdict, modified_verdict, valid
from besmints.utils.config import settings

logger = logging.getLogger(__name__)

_STATUS = {"valid": True, "invalid": False}


@dataclass(frozen=True)
class CorpusEntry:
    formula: Formula
    expected: Optional[bool] = None


def load_corpus(text: str) -> List[CorpusEntry]:
    """Parse corpus text: one formula per line, optionally tagged 'valid:' or 'invalid:'"""
    entries = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        expected = None
        tag, sep, rest = body.partition(":")
        if sep and tag.strip() in _STATUS:
            expected = _STATUS[tag.strip()]
            body = rest.strip()
        try:
            formula = parse_formula(body)
        except FormulaSyntaxError as e:
            raise BesMintsError(f"corpus line {line_no}: {e.message}") from e
        entries.append(CorpusEntry(formula, expected))
    return entries


def load_corpus_file(path: Path) -> List[CorpusEntry]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise BesMintsError(f"cannot read corpus '{path}': {e.strerror}") from e
    return load_corpus(text)


def curated_corpus() -> List[CorpusEntry]:
    return load_corpus(files("besmints.data").joinpath("curated.corpus").read_text(encoding="utf-8"))


def bounded_universe(f: Formula, bounds_rules: int) -> frozenset:
    """atoms of f padded from the pool until it outnumbers the rule cap"""
    universe = set(atoms(f))
    for name in ATOM_POOL:
        if len(universe) > bounds_rules:
            break
        universe.add(Atom(name))
    return frozenset(universe)


@dataclass
class CrosscheckOptions:
    max_worlds: int = settings.KRIPKE_MAX_WORLDS
    jobs: int = settings.CROSSCHECK_JOBS
    bounded: bool = False
    max_rules: int = settings.BOUNDED_MAX_RULES
    max_premises: int = settings.BOUNDED_MAX_PREMISES
    premise_depth: int = settings.BOUNDED_PREMISE_DEPTH


def check_entry(index: int, entry: CorpusEntry, options: CrosscheckOptions) -> CrosscheckRecord:
    f = entry.formula
    bes = valid((), f)
    oracle, _ = oracle_prove(Sequent.of((), f))
    mints = mints_verdict(f)
    modified = modified_verdict(f)
    guarded = guarded_verdict(f)

    kripke = None
    if not oracle:
        model = kripke_refute(f, options.max_worlds)
        if model is not None:
            kripke = KripkeModelExport(**model.to_dict())

    bounded = None
    if options.bounded:
        bounds = Bounds(
            bounded_universe(f, options.max_rules), options.max_rules, options.max_premises, options.premise_depth
        )
        bounded = bounded_eval(SupportQuery.of(EMPTY_BASE, (), f), bounds)
        if bounded != bes:
            logger.warning(f"bounded evaluation differs on {print_formula(f)}: bounded {bounded}, support {bes}")

    agree = bes == oracle == mints == modified == guarded and (entry.expected is None or entry.expected == oracle)
    if not agree:
        logger.warning(
            f"mismatch on {print_formula(f)}: bes {bes}, oracle {oracle}, mints {mints}, "
            f"modified {modified}, guarded {guarded}, expected {entry.expected}"
        )
    return CrosscheckRecord(
        index=index,
        formula=print_formula(f),
        expected=entry.expected,
        bes=bes,
        oracle=oracle,
        mints=mints,
        modified=modified,
        guarded=guarded,
        kripke=kripke,
        bounded=bounded,
        agree=agree,
    )


def crosscheck(
    entries: Sequence[CorpusEntry], options: Optional[CrosscheckOptions] = None
) -> Tuple[List[CrosscheckRecord], CrosscheckSummary]:
    """Check every entry; records come back in input order whatever the job count"""
    options = options or CrosscheckOptions()
    logger.info(f"Cross-checking {len(entries)} formulas with {options.jobs} jobs")

    def run(item: Tuple[int, CorpusEntry]) -> CrosscheckRecord:
        return check_entry(item[0], item[1], options)

    indexed = list(enumerate(entries))
    if options.jobs > 1:
        with ThreadPoolExecutor(max_workers=options.jobs) as executor:
            records = list(executor.map(run, indexed))
    else:
        records = [run(item) for item in indexed]
    return records, summarize(records, options.bounded)


def summarize(records: Iterable[CrosscheckRecord], bounded: bool = False) -> CrosscheckSummary:
    records = list(records)
    mismatched = [r.index for r in records if not r.agree]
    findings = sum(1 for r in records if r.bounded is not None and r.bounded != r.bes) if bounded else None
    summary = CrosscheckSummary(
        checked=len(records),
        valid=sum(1 for r in records if r.oracle),
        invalid=sum(1 for r in records if not r.oracle),
        refuted=sum(1 for r in records if r.kripke is not None),
        mismatches=len(mismatched),
        mismatched=mismatched,
        bounded_findings=findings,
        ok=not mismatched,
    )
    logger.info(f"Cross-check finished: {summary.checked} checked, {summary.mismatches} mismatches")
    return summary
