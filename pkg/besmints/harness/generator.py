"""
Generator - seed-reproducible random formulas, rules, bases and clause systems
Formula skeletons are drawn uniformly among binary trees of a given size
"""

import logging
import random
from functools import lru_cache
from typing import List, Optional, Sequence

from besmints.logic.base import AtomicRule, Base, Premise
from besmints.logic.clauses import ClauseSystem, GeneralClause, rule_to_clause
from besmints.logic.syntax import ABSURD, Atom, Atomic, Conj, Disj, Formula, Impl
from besmints.utils.config import settings

logger = logging.getLogger(__name__)

# z is the absurdity normalizer; the pool skips it
ATOM_POOL = ("p", "q", "r", "s", "t", "u", "v", "w", "a", "b", "c", "d")


def atom_pool(count: int) -> List[Atom]:
    if not 1 <= count <= len(ATOM_POOL):
        raise ValueError(f"atom count must be between 1 and {len(ATOM_POOL)}")
    return [Atom(n) for n in ATOM_POOL[:count]]


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n == 0:
        return 1
    return sum(catalan(k) * catalan(n - 1 - k) for k in range(n))


class FormulaGenerator:
    """Random formulas over a fixed atom pool"""

    CONNECTIVES = (Conj, Disj, Impl)

    def __init__(self, rng: random.Random, atoms: Sequence[Atom], bot_weight: float = settings.BOT_WEIGHT):
        self.rng = rng
        self.atoms = list(atoms)
        self.bot_weight = bot_weight

    def leaf(self) -> Formula:
        if self.rng.random() < self.bot_weight:
            return ABSURD
        return Atomic(self.rng.choice(self.atoms))

    def formula(self, connectives: int) -> Formula:
        """Uniform skeleton with exactly the given number of binary connectives"""
        if connectives == 0:
            return self.leaf()
        # left subtree size k has weight C(k) * C(n-1-k)
        n = connectives
        weights = [catalan(k) * catalan(n - 1 - k) for k in range(n)]
        k = self.rng.choices(range(n), weights=weights)[0]
        connective = self.rng.choice(self.CONNECTIVES)
        return connective(self.formula(k), self.formula(n - 1 - k))

    def corpus(self, count: int, max_size: int) -> List[Formula]:
        result = [self.formula(self.rng.randint(0, max_size)) for _ in range(count)]
        logger.info(f"Generated {len(result)} random formulas (max size {max_size})")
        return result


def random_formula(
    rng: random.Random, size: int, atoms: Sequence[Atom], bot_weight: float = settings.BOT_WEIGHT
) -> Formula:
    return FormulaGenerator(rng, atoms, bot_weight).formula(size)


def random_corpus(
    count: int,
    seed: int = settings.RANDOM_SEED,
    max_size: int = settings.RANDOM_MAX_SIZE,
    atoms: int = settings.RANDOM_ATOMS,
    bot_weight: float = settings.BOT_WEIGHT,
) -> List[Formula]:
    return FormulaGenerator(random.Random(seed), atom_pool(atoms), bot_weight).corpus(count, max_size)


def random_premise(rng: random.Random, atoms: Sequence[Atom], depth: int) -> Premise:
    head = rng.choice(list(atoms))
    if depth == 0:
        return Premise(frozenset(), head)
    hyps = frozenset(a for a in atoms if rng.random() < 0.3)
    return Premise(hyps, head)


def random_rule(rng: random.Random, atoms: Sequence[Atom], max_premises: int = 2, depth: int = 1) -> AtomicRule:
    count = rng.randint(0, max_premises)
    premises = tuple(random_premise(rng, atoms, depth) for _ in range(count))
    return AtomicRule(premises, rng.choice(list(atoms)))


def random_base(
    rng: random.Random,
    atoms: Sequence[Atom],
    max_rules: int = 2,
    max_premises: int = 2,
    depth: int = 1,
) -> Base:
    count = rng.randint(0, max_rules)
    return Base.of(random_rule(rng, atoms, max_premises, depth) for _ in range(count))


def random_clause(rng: random.Random, atoms: Sequence[Atom], max_premises: int = 2) -> GeneralClause:
    return rule_to_clause(random_rule(rng, atoms, max_premises, depth=1))


def random_clause_system(
    rng: random.Random,
    atoms: Sequence[Atom],
    max_clauses: int = 3,
    max_premises: int = 2,
    extra: Optional[Sequence[GeneralClause]] = None,
) -> ClauseSystem:
    count = rng.randint(0, max_clauses)
    clauses = [random_clause(rng, atoms, max_premises) for _ in range(count)]
    return ClauseSystem.of(clauses + list(extra or ()))
