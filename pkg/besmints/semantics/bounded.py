"""
Bounded - direct evaluation of the support clauses over a finite family of bases
Extensions of the query base range over additions of at most max_rules rules
from a generated rule universe; quantified atoms range over the atom universe
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from besmints.exceptions import BoundsError
from besmints.logic.base import AtomicRule, Base, Premise, derives
from besmints.logic.syntax import Absurd, Atom, Atomic, Conj, Disj, Formula, Impl, atoms_of_all, print_formula
from besmints.semantics.support import SupportQuery
from besmints.utils.config import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bounds:
    atom_universe: FrozenSet[Atom]
    max_rules: int = settings.BOUNDED_MAX_RULES
    max_premises: int = settings.BOUNDED_MAX_PREMISES
    premise_depth: int = settings.BOUNDED_PREMISE_DEPTH

    @classmethod
    def over(cls, names: Iterable[str], **limits) -> "Bounds":
        return cls(frozenset(Atom(n) for n in names), **limits)

    def validate(self) -> None:
        if not self.atom_universe:
            raise BoundsError("atom universe is empty")
        if self.max_rules < 0 or self.max_premises < 0:
            raise BoundsError("rule and premise limits must be non-negative")
        if self.premise_depth not in (0, 1):
            raise BoundsError(f"premise depth must be 0 or 1, got {self.premise_depth}")


def _premises(bounds: Bounds) -> List[Premise]:
    universe = sorted(bounds.atom_universe)
    result = [Premise(frozenset(), head) for head in universe]
    if bounds.premise_depth == 1:
        for size in range(1, len(universe)):
            for hyps in itertools.combinations(universe, size):
                # a premise whose head is among its hypotheses is always met
                result.extend(Premise(frozenset(hyps), head) for head in universe if head not in hyps)
    return result


def rule_universe(bounds: Bounds) -> List[AtomicRule]:
    """Every non-trivial rule over the atom universe within the premise limits"""
    bounds.validate()
    premises = _premises(bounds)
    rules = []
    for conclusion in sorted(bounds.atom_universe):
        for k in range(0, bounds.max_premises + 1):
            for chosen in itertools.combinations(premises, k):
                # c => c and its weakenings add nothing
                if Premise(frozenset(), conclusion) in chosen:
                    continue
                rules.append(AtomicRule(tuple(chosen), conclusion))
    return rules


class _Evaluator:
    """Memoized evaluation for one query; bases are identified by their rule sets"""

    def __init__(self, root: Base, bounds: Bounds):
        self.universe = sorted(bounds.atom_universe)
        extra = [r for r in rule_universe(bounds) if r not in root]
        family = []
        for k in range(0, bounds.max_rules + 1):
            for chosen in itertools.combinations(extra, k):
                family.append(root.rules | frozenset(chosen))
        self.family: List[FrozenSet[AtomicRule]] = family
        self.derived: Dict[Tuple[FrozenSet[AtomicRule], Atom], bool] = {}
        self.memo: Dict[Tuple[FrozenSet[AtomicRule], FrozenSet[Formula], Formula], bool] = {}
        self.extension_memo: Dict[FrozenSet[AtomicRule], List[FrozenSet[AtomicRule]]] = {}

    def extensions(self, rules: FrozenSet[AtomicRule]) -> List[FrozenSet[AtomicRule]]:
        found = self.extension_memo.get(rules)
        if found is None:
            found = [c for c in self.family if rules <= c]
            self.extension_memo[rules] = found
        return found

    def atomic(self, rules: FrozenSet[AtomicRule], p: Atom) -> bool:
        key = (rules, p)
        if key not in self.derived:
            self.derived[key] = derives(Base(rules), (), p)[0]
        return self.derived[key]

    def holds(self, rules: FrozenSet[AtomicRule], context: FrozenSet[Formula], f: Formula) -> bool:
        key = (rules, context, f)
        cached = self.memo.get(key)
        if cached is None:
            cached = self._holds(rules, context, f)
            self.memo[key] = cached
        return cached

    def _holds(self, rules: FrozenSet[AtomicRule], context: FrozenSet[Formula], f: Formula) -> bool:
        if context:
            return all(
                self.holds(c, frozenset(), f)
                for c in self.extensions(rules)
                if all(self.holds(c, frozenset(), g) for g in context)
            )
        match f:
            case Atomic(p):
                return self.atomic(rules, p)
            case Absurd():
                return all(self.atomic(rules, p) for p in self.universe)
            case Conj(left, right):
                return self.holds(rules, frozenset(), left) and self.holds(rules, frozenset(), right)
            case Impl(left, right):
                return self.holds(rules, frozenset([left]), right)
            case Disj(left, right):
                for c in self.extensions(rules):
                    for p in self.universe:
                        target = Atomic(p)
                        if (
                            self.holds(c, frozenset([left]), target)
                            and self.holds(c, frozenset([right]), target)
                            and not self.atomic(c, p)
                        ):
                            return False
                return True
        raise TypeError(f"not a formula: {f!r}")


def bounded_eval(q: SupportQuery, bounds: Bounds) -> bool:
    """Evaluate Gamma ||-_B phi literally, relativized to the bounded family"""
    bounds.validate()
    mentioned = atoms_of_all(list(q.context) + [q.formula]) | q.base.atoms()
    stray = mentioned - bounds.atom_universe
    if stray:
        names = ", ".join(a.name for a in sorted(stray))
        raise BoundsError(f"query atoms outside the bounded universe: {names}")
    evaluator = _Evaluator(q.base, bounds)
    verdict = evaluator.holds(q.base.rules, q.context, q.formula)
    logger.debug(
        f"bounded {print_formula(q.formula)}: {verdict} over {len(evaluator.family)} bases, "
        f"{len(evaluator.memo)} judgments"
    )
    return verdict
