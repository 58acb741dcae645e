"""
Clausal - derivability in an instantiated clause system
Clauses are read back as atomic rules and handed to the base engine
"""

import itertools
import logging
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

from besmints.exceptions import FragmentError, SchematicClauseError
from besmints.logic.base import Base, Derivation, derives
from besmints.logic.clauses import FRESH_PREFIX, ClausePremise, ClauseSystem, GeneralClause, clause_to_rule
from besmints.logic.syntax import Atom, Atomic, Conj, Formula, Impl, atoms, print_formula

logger = logging.getLogger(__name__)


def system_base(system: ClauseSystem) -> Base:
    """The base [-] image of an instantiated system"""
    if not system.is_instantiated:
        kinds = ", ".join(sorted(s.kind.value for s in system.schematics))
        raise SchematicClauseError(f"system still holds schematic families ({kinds}); instantiate it first")
    return Base(frozenset(clause_to_rule(c) for c in system.clauses))


def clause_derives(
    system: ClauseSystem, hyps: Iterable[Atom], goal: Atom
) -> Tuple[bool, Optional[Derivation]]:
    """Decide hyps, system |- goal"""
    return derives(system_base(system), hyps, goal)


def _split_conjunction(f: Formula) -> Iterator[Formula]:
    if isinstance(f, Conj):
        yield from _split_conjunction(f.left)
        yield from _split_conjunction(f.right)
    else:
        yield f


class _AssumptionClauses:
    """Clauses equivalent to an /\\, -> assumption, naming deep hypotheses with fresh atoms.

    A hypothesis e of a premise (E -> h) gets an atom n and the definition
    e -> n, with n new to the assumption.
    """

    def __init__(self, taken: FrozenSet[Atom]):
        self.taken = taken
        self.counter = itertools.count(1)
        self.clauses: List[GeneralClause] = []

    def fresh(self) -> Atom:
        while True:
            atom = Atom(f"{FRESH_PREFIX}g{next(self.counter)}")
            if atom not in self.taken:
                return atom

    def assume(self, f: Formula) -> None:
        match f:
            case Atomic(a):
                self.clauses.append(GeneralClause((), a))
            case Conj(left, right):
                self.assume(left)
                self.assume(right)
            case Impl(antecedent, Conj(left, right)):
                self.assume(Impl(antecedent, left))
                self.assume(Impl(antecedent, right))
            case Impl(antecedent, Impl(inner, consequent)):
                self.assume(Impl(Conj(antecedent, inner), consequent))
            case Impl(antecedent, Atomic(c)):
                premises = [p for part in _split_conjunction(antecedent) for p in self.premises(part)]
                self.clauses.append(GeneralClause(tuple(premises), c))
            case _:
                raise FragmentError(f"assumption '{print_formula(f)}' is outside the atom, /\\, -> fragment")

    def premises(self, f: Formula) -> List[ClausePremise]:
        match f:
            case Atomic(p):
                return [ClausePremise(frozenset(), p)]
            case Impl(hyps, Conj(left, right)):
                return self.premises(Impl(hyps, left)) + self.premises(Impl(hyps, right))
            case Impl(hyps, Impl(inner, head)):
                return self.premises(Impl(Conj(hyps, inner), head))
            case Impl(hyps, Atomic(head)):
                return [ClausePremise(frozenset(self.name(h) for h in _split_conjunction(hyps)), head)]
        raise FragmentError(f"premise '{print_formula(f)}' is outside the atom, /\\, -> fragment")

    def name(self, f: Formula) -> Atom:
        if isinstance(f, Atomic):
            return f.atom
        n = self.fresh()
        self.taken = self.taken | {n}
        self.assume(Impl(f, Atomic(n)))
        return n


def assumption_clauses(f: Formula, taken: Iterable[Atom] = ()) -> List[GeneralClause]:
    """Clauses whose addition to a system is equivalent to assuming f.

    Fresh atoms avoid every atom in taken and in f.
    """
    builder = _AssumptionClauses(frozenset(taken) | atoms(f))
    builder.assume(f)
    return builder.clauses


def decide_goal(system: ClauseSystem, hyps: Iterable[Atom], goal: Formula) -> bool:
    """Decide a goal built from atoms with /\\ and -> against the system.

    Implication goals move their antecedent conjuncts into the query (atoms as
    hypotheses, everything else as equivalent clauses); conjunction goals
    split; atomic goals go to clause_derives.
    """
    hyp_set: FrozenSet[Atom] = frozenset(hyps)
    match goal:
        case Atomic(a):
            return clause_derives(system, hyp_set, a)[0]
        case Conj(left, right):
            return decide_goal(system, hyp_set, left) and decide_goal(system, hyp_set, right)
        case Impl(antecedent, consequent):
            taken = system.atoms() | hyp_set | atoms(goal)
            extra_hyps = set()
            extra_clauses: List[GeneralClause] = []
            for part in _split_conjunction(antecedent):
                if isinstance(part, Atomic):
                    extra_hyps.add(part.atom)
                    continue
                added = assumption_clauses(part, taken)
                taken = taken.union(*(c.atoms() for c in added))
                extra_clauses.extend(added)
            if extra_clauses:
                logger.debug(f"goal {print_formula(goal)}: {len(extra_clauses)} assumption clauses")
            return decide_goal(system.with_clauses(extra_clauses), hyp_set | extra_hyps, consequent)
    raise FragmentError(f"goal '{print_formula(goal)}' is outside the atom, /\\, -> fragment")
