"""
Command-line interface for besmints
Verdict commands exit 0 for a positive and 1 for a negative answer; usage and input errors exit 2
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from besmints import __version__
from besmints.engines.clausal import system_base
from besmints.engines.kripke import KripkeModel, kripke_refute
from besmints.engines.sequent import Sequent, SequentProof, oracle_prove, sequent_trace
from besmints.exceptions import BesMintsError
from besmints.harness.crosscheck import (
    CrosscheckOptions,
    CorpusEntry,
    crosscheck,
    curated_corpus,
    load_corpus_file,
)
from besmints.harness.generator import random_corpus
from besmints.logic.base import Base, build_trace, derivation_trace, derives, parse_base
from besmints.logic.clauses import (
    flatmap_export,
    flatten,
    instantiate_system,
    mints_system,
    modified_system_for,
    print_flatmap,
    print_system,
    system_export,
)
from besmints.logic.grammar import parse_formula
from besmints.logic.syntax import Atom, Formula, normalize_bot, print_formula, surface_atom
from besmints.schemas import (
    CheckReport,
    DeriveReport,
    KripkeModelExport,
    RefuteReport,
    SupportReport,
    dump_json,
)
from besmints.semantics.support import SupportQuery, supports
from besmints.utils.config import settings

logger = logging.getLogger(__name__)


def _exit(flag: bool) -> int:
    return 0 if flag else 1


def _formula(text: str) -> Formula:
    return parse_formula(text)


def _context(text: Optional[str]) -> List[Formula]:
    if not text:
        return []
    return [parse_formula(part) for part in text.split(";") if part.strip()]


def _atoms(text: Optional[str]) -> List[Atom]:
    if not text:
        return []
    try:
        return [surface_atom(name.strip()) for name in text.split(",") if name.strip()]
    except ValueError as e:
        raise BesMintsError(str(e)) from e


def _read_base(path: str) -> Base:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise BesMintsError(f"cannot read base '{path}': {e.strerror}") from e
    return parse_base(text)


def _render_proof(p: SequentProof, depth: int = 0) -> List[str]:
    lines = [f"{'  ' * depth}{p.sequent}    ({p.rule})"]
    for q in p.premises:
        lines.extend(_render_proof(q, depth + 1))
    return lines


def _render_model(model: KripkeModel) -> List[str]:
    strict = sorted((u, v) for (u, v) in model.order if u != v)
    lines = [
        f"worlds: {' '.join(str(w) for w in model.worlds)}",
        f"order: {', '.join(f'{u} < {v}' for u, v in strict) or 'discrete'}",
    ]
    for w in model.worlds:
        forced = " ".join(a.name for a in sorted(model.valuation[w])) or "(none)"
        lines.append(f"world {w}: {forced}")
    return lines


# Subcommands


def cmd_check(args: argparse.Namespace) -> int:
    f = _formula(args.formula)
    context = _context(args.context)
    result = supports(SupportQuery.of(Base(), context, f))
    proof = None
    if args.trace:
        _, proof = oracle_prove(Sequent.of(context, f))
    if args.json:
        print(
            dump_json(
                CheckReport(
                    formula=print_formula(f),
                    context=[print_formula(g) for g in context],
                    valid=result.verdict,
                    proof=sequent_trace(proof) if proof else None,
                )
            )
        )
    else:
        print("valid" if result.verdict else "invalid")
        if proof:
            print("\n".join(_render_proof(proof)))
    return _exit(result.verdict)


def cmd_support(args: argparse.Namespace) -> int:
    if args.extra_atoms < 0:
        raise BesMintsError("--extra-atoms must be non-negative")
    base = _read_base(args.base)
    f = _formula(args.formula)
    context = _context(args.context)
    result = supports(SupportQuery.of(base, context, f), extra_atoms=args.extra_atoms)
    certificate = None
    if args.trace and result.certificate is not None:
        certificate = build_trace(result.certificate, system_base(result.system), result.hyps)
    if args.json:
        report = SupportReport(
            formula=print_formula(f),
            context=[print_formula(g) for g in context],
            base=[str(r) for r in base],
            verdict=result.verdict,
            universe=sorted(a.name for a in result.universe),
            certificate=certificate,
        )
        print(dump_json(report))
    else:
        print("supported" if result.verdict else "not supported")
        if certificate is not None:
            print(derivation_trace(result.certificate, system_base(result.system), result.hyps), end="")
    return _exit(result.verdict)


def cmd_derive(args: argparse.Namespace) -> int:
    base = _read_base(args.base)
    assumptions = _atoms(args.assume)
    goal = _atoms(args.atom)
    if len(goal) != 1:
        raise BesMintsError(f"expected a single goal atom, got '{args.atom}'")
    ok, derivation = derives(base, assumptions, goal[0])
    if args.json:
        report = DeriveReport(
            goal=goal[0].name,
            assumptions=sorted(a.name for a in assumptions),
            derivable=ok,
            trace=build_trace(derivation, base, assumptions) if ok and args.trace else None,
        )
        print(dump_json(report))
    else:
        print("derivable" if ok else "not derivable")
        if ok and args.trace:
            print(derivation_trace(derivation, base, assumptions), end="")
    return _exit(ok)


def cmd_flatten(args: argparse.Namespace) -> int:
    f = _formula(args.formula)
    normal = normalize_bot(f)
    if normal != f:
        logger.info(f"flattening the normalized form {print_formula(normal)}")
    m = flatten(normal)
    if args.json:
        print(dump_json(flatmap_export(m)))
    else:
        print(print_flatmap(m), end="")
    return 0


def cmd_emit_clauses(args: argparse.Namespace) -> int:
    normal = normalize_bot(_formula(args.formula))
    universe = _atoms(args.universe) or None
    if args.system == "mints":
        system, goal = mints_system(normal)
    else:
        m = flatten(normal)
        goal = m[normal]
        system = modified_system_for(m)
        if universe is not None:
            system = instantiate_system(system, universe)
    if args.json:
        print(dump_json(system_export(system, goal, universe)))
    else:
        print(print_system(system), end="")
        print(f"goal: {goal}")
    return 0


def _crosscheck_entries(args: argparse.Namespace) -> List[CorpusEntry]:
    if args.max_size < 0:
        raise BesMintsError("--max-size must be non-negative")
    entries: List[CorpusEntry] = []
    if args.corpus:
        entries.extend(load_corpus_file(args.corpus))
    if args.random is not None:
        try:
            formulas = random_corpus(args.random, seed=args.seed, max_size=args.max_size, atoms=args.atoms)
        except ValueError as e:
            raise BesMintsError(str(e)) from e
        entries.extend(CorpusEntry(f) for f in formulas)
    if args.curated or (not args.corpus and args.random is None):
        entries.extend(curated_corpus())
    return entries


def cmd_crosscheck(args: argparse.Namespace) -> int:
    if args.max_worlds < 1:
        raise BesMintsError("--max-worlds must be at least 1")
    options = CrosscheckOptions(max_worlds=args.max_worlds, jobs=args.jobs, bounded=args.bounded)
    records, summary = crosscheck(_crosscheck_entries(args), options)
    if args.json:
        for record in records:
            print(dump_json(record))
        print(dump_json(summary))
    else:
        for r in records:
            status = "ok" if r.agree else "MISMATCH"
            print(f"{status:<8} {'valid' if r.oracle else 'invalid':<7} {r.formula}")
        print(f"{summary.checked} checked, {summary.mismatches} mismatches, {summary.refuted} refuted by countermodel")
        if summary.bounded_findings is not None:
            print(f"{summary.bounded_findings} bounded-evaluation findings")
    return _exit(summary.ok)


def cmd_refute(args: argparse.Namespace) -> int:
    if args.max_worlds < 1:
        raise BesMintsError("--max-worlds must be at least 1")
    f = _formula(args.formula)
    model = kripke_refute(f, args.max_worlds)
    if args.json:
        export = KripkeModelExport(**model.to_dict()) if model else None
        print(dump_json(RefuteReport(formula=print_formula(f), max_worlds=args.max_worlds, model=export)))
    elif model is None:
        print("none")
    else:
        print("\n".join(_render_model(model)))
    return _exit(model is not None)


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "check": cmd_check,
    "support": cmd_support,
    "derive": cmd_derive,
    "flatten": cmd_flatten,
    "emit-clauses": cmd_emit_clauses,
    "crosscheck": cmd_crosscheck,
    "refute": cmd_refute,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log to stderr (-vv for debug)")

    parser = argparse.ArgumentParser(
        prog="besmints",
        description="Base-extension semantics for intuitionistic propositional logic",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide validity")
    p.add_argument("formula")
    p.add_argument("--context", help='assumptions separated by ";"')
    p.add_argument("--trace", action="store_true", help="print the sequent proof when valid")

    p = sub.add_parser("support", parents=[common], help="decide support in a base")
    p.add_argument("formula")
    p.add_argument("--base", required=True, help="base file")
    p.add_argument("--context", help='assumptions separated by ";"')
    p.add_argument("--trace", action="store_true", help="print the clause derivation when supported")
    p.add_argument("--extra-atoms", type=int, default=0, help="additional fresh atoms in the instantiation universe")

    p = sub.add_parser("derive", parents=[common], help="decide derivability in a base")
    p.add_argument("atom")
    p.add_argument("--base", required=True, help="base file")
    p.add_argument("--assume", help="comma-separated assumption atoms")
    p.add_argument("--trace", action="store_true", help="print the derivation when derivable")

    p = sub.add_parser("flatten", parents=[common], help="print the flattening table")
    p.add_argument("formula")

    p = sub.add_parser("emit-clauses", parents=[common], help="print a clause system")
    p.add_argument("formula")
    p.add_argument("--system", choices=["mints", "n"], default="mints")
    p.add_argument("--universe", help="comma-separated atoms instantiating the schematic families of n")

    p = sub.add_parser("crosscheck", parents=[common], help="differential validity check")
    p.add_argument("--corpus", help="corpus file (default: the curated corpus)")
    p.add_argument("--random", type=int, metavar="N", help="add N random formulas")
    p.add_argument("--curated", action="store_true", help="also include the curated corpus")
    p.add_argument("--seed", type=int, default=settings.RANDOM_SEED)
    p.add_argument("--max-size", type=int, default=settings.RANDOM_MAX_SIZE)
    p.add_argument("--atoms", type=int, default=settings.RANDOM_ATOMS)
    p.add_argument("--jobs", type=int, default=settings.CROSSCHECK_JOBS)
    p.add_argument("--max-worlds", type=int, default=settings.KRIPKE_MAX_WORLDS)
    p.add_argument("--bounded", action="store_true", help="also run the bounded evaluator (findings only)")

    p = sub.add_parser("refute", parents=[common], help="search for a Kripke countermodel")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=settings.KRIPKE_MAX_WORLDS)

    return parser


def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr, force=True)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose)
    if getattr(args, "jobs", 1) < 1:
        print("besmints: error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except BesMintsError as e:
        print(f"besmints: error: {e.message}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
