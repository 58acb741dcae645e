"""
Support - support in a base decided through the modified clausal system
A query is flattened jointly with its context, the schematic families are
instantiated over a finite universe, and the base is added as clauses
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple

from besmints.engines.clausal import clause_derives
from besmints.engines.sequent import provable
from besmints.logic.base import EMPTY_BASE, Base, Derivation, derives
from besmints.logic.clauses import (
    ClauseSystem,
    FlatMap,
    base_to_clauses,
    flatten,
    flatten_all,
    instantiate_system,
    mints_system,
    modified_system_for,
    reserved_universe_atoms,
)
from besmints.logic.syntax import (
    Atom,
    Context,
    Formula,
    atoms,
    exfalso_guards,
    make_context,
    normalize_bot,
    print_formula,
    sort_formulas,
    substitute_bot,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupportQuery:
    """Gamma ||-_B phi"""
    base: Base
    context: Context
    formula: Formula

    @classmethod
    def of(cls, base: Base, context: Iterable[Formula], formula: Formula) -> "SupportQuery":
        return cls(base, make_context(context), formula)


@dataclass(frozen=True)
class SupportResult:
    verdict: bool
    # clause derivation of the formula's atom, present exactly when verdict holds
    certificate: Optional[Derivation]
    universe: FrozenSet[Atom]
    system: ClauseSystem
    hyps: FrozenSet[Atom]
    goal: Atom


def universe_for(m: FlatMap, base: Base, extra_atoms: int = 0) -> FrozenSet[Atom]:
    """range of the flattening, the atoms of the base and 1 + extra_atoms reserved fresh atoms"""
    if extra_atoms < 0:
        raise ValueError("extra_atoms must be non-negative")
    return m.range | base.atoms() | frozenset(reserved_universe_atoms(1 + extra_atoms))


def supports(q: SupportQuery, extra_atoms: int = 0) -> SupportResult:
    context: List[Formula] = sort_formulas(normalize_bot(g) for g in q.context)
    formula = normalize_bot(q.formula)
    m = flatten_all(context + [formula])
    universe = universe_for(m, q.base, extra_atoms)
    system = instantiate_system(modified_system_for(m), universe).union(base_to_clauses(q.base))
    hyps = frozenset(m[g] for g in context)
    goal = m[formula]
    verdict, certificate = clause_derives(system, hyps, goal)
    logger.debug(
        f"supports {print_formula(q.formula)} with {len(context)} context formulas: {verdict} "
        f"({len(system)} clauses over {len(universe)} atoms)"
    )
    return SupportResult(verdict, certificate, universe, system, hyps, goal)


def valid(context: Iterable[Formula], f: Formula) -> bool:
    """Gamma ||- phi, i.e. support in the empty base"""
    return supports(SupportQuery.of(EMPTY_BASE, context, f)).verdict


def support_atomic(b: Base, hyps: Iterable[Atom], p: Atom) -> bool:
    return derives(b, hyps, p)[0]


# Equivalent verdicts along the clausal translation


def guarded_sequent(f: Formula) -> Tuple[Tuple[Formula, ...], Formula]:
    """Assumptions and goal of f with absurdity replaced by its flattened atom.

    The absurdity atom is guarded by bot -> a for every atom a of f, which
    makes it behave as absurdity in the oracle.
    """
    normal = normalize_bot(f)
    m = flatten(normal)
    guards = exfalso_guards(atoms(normal), m.bot_atom)
    return guards, substitute_bot(normal, m.bot_atom)


def guarded_verdict(f: Formula) -> bool:
    guards, goal = guarded_sequent(f)
    return provable(guards, goal)


def mints_verdict(f: Formula) -> bool:
    """M_X |- atom of f, with X the range of the flattening of f"""
    system, goal = mints_system(normalize_bot(f))
    return clause_derives(system, (), goal)[0]


def modified_verdict(f: Formula, extra_atoms: int = 0) -> bool:
    """N |- atom of f, with N instantiated over the range plus reserved atoms"""
    normal = normalize_bot(f)
    m = flatten(normal)
    system = instantiate_system(modified_system_for(m), universe_for(m, EMPTY_BASE, extra_atoms))
    return clause_derives(system, (), m[normal])[0]
