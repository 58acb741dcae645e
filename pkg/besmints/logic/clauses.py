"""
Clauses - Mints-style clausal systems and their correspondence with bases
Flattening of subformulas to fresh atoms, the systems M_X and N, and the rule/clause bijection
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from besmints.exceptions import (
    EmptyUniverseError,
    FragmentError,
    NotNormalizedError,
    OutsideDomainError,
)
from besmints.logic.base import AtomicRule, Base, Premise
from besmints.logic.syntax import (
    Absurd,
    Atom,
    Atomic,
    Conj,
    Disj,
    Formula,
    Impl,
    conjoin,
    is_composite,
    is_bot_normal,
    print_formula,
    subformulas,
)
from besmints.schemas import (
    ClauseExport,
    ClausePremiseExport,
    ClauseSystemExport,
    FlatMapEntry,
    FlatMapExport,
    SchematicExport,
)

logger = logging.getLogger(__name__)

FRESH_PREFIX = "#"
UNIVERSE_ATOM = Atom("#u")


@dataclass(frozen=True)
class ClausePremise:
    """A conjunct (/\\P -> p) of a clause body; empty P is the bare atom p"""
    hypotheses: FrozenSet[Atom]
    head: Atom


@dataclass(frozen=True)
class GeneralClause:
    """(/\\P1 -> p1) /\\ ... /\\ (/\\Pn -> pn) -> c; no premises is the bare atom c"""
    premises: Tuple[ClausePremise, ...]
    conclusion: Atom

    def atoms(self) -> FrozenSet[Atom]:
        result = {self.conclusion}
        for p in self.premises:
            result.add(p.head)
            result.update(p.hypotheses)
        return frozenset(result)

    def __str__(self) -> str:
        return print_formula(as_formula(self))


def clause(premises: Iterable[Tuple[Iterable[Atom], Atom]], conclusion: Atom) -> GeneralClause:
    return GeneralClause(
        tuple(ClausePremise(frozenset(hyps), head) for hyps, head in premises), conclusion
    )


def horn(body: Iterable[Atom], head: Atom) -> GeneralClause:
    """p1 /\\ ... /\\ pn -> head"""
    return GeneralClause(tuple(ClausePremise(frozenset(), b) for b in body), head)


class SchematicKind(str, Enum):
    DISJUNCTION_ELIM = "disjunction-elim"
    EXPLOSION = "explosion"


@dataclass(frozen=True)
class Schematic:
    """A clause template whose atom slot is filled by each universe element.

    Two families exist: disjunction elimination for a flattened disjunction
    (``disjunction`` holds the atoms of the disjunction and its two disjuncts)
    and explosion from the absurdity atom (``bot`` holds that atom).
    """
    kind: SchematicKind
    disjunction: Optional[Tuple[Atom, Atom, Atom]] = None
    bot: Optional[Atom] = None

    def instantiate(self, x: Atom) -> GeneralClause:
        if self.kind is SchematicKind.DISJUNCTION_ELIM:
            whole, left, right = self.disjunction
            return clause((((), whole), ((left,), x), ((right,), x)), x)
        if self.kind is SchematicKind.EXPLOSION:
            return clause((((), self.bot),), x)
        raise ValueError(f"unknown schematic kind '{self.kind}'")

    def __str__(self) -> str:
        if self.kind is SchematicKind.DISJUNCTION_ELIM:
            whole, left, right = self.disjunction
            return f"{whole} /\\ ({left} -> x) /\\ ({right} -> x) -> x"
        return f"{self.bot} -> x"


@dataclass(frozen=True)
class ClauseSystem:
    clauses: FrozenSet[GeneralClause] = field(default_factory=frozenset)
    schematics: FrozenSet[Schematic] = field(default_factory=frozenset)

    @classmethod
    def of(cls, clauses: Iterable[GeneralClause], schematics: Iterable[Schematic] = ()) -> "ClauseSystem":
        return cls(frozenset(clauses), frozenset(schematics))

    @property
    def is_instantiated(self) -> bool:
        return not self.schematics

    def __iter__(self) -> Iterator[GeneralClause]:
        return iter(sorted(self.clauses, key=clause_sort_key))

    def __len__(self) -> int:
        return len(self.clauses)

    def union(self, other: "ClauseSystem") -> "ClauseSystem":
        return ClauseSystem(self.clauses | other.clauses, self.schematics | other.schematics)

    def with_clauses(self, extra: Iterable[GeneralClause]) -> "ClauseSystem":
        return ClauseSystem(self.clauses | frozenset(extra), self.schematics)

    def atoms(self) -> FrozenSet[Atom]:
        result: FrozenSet[Atom] = frozenset()
        for c in self.clauses:
            result |= c.atoms()
        return result

    def formulas(self) -> List[Formula]:
        return [as_formula(c) for c in self]


def clause_sort_key(c: GeneralClause) -> str:
    return print_formula(as_formula(c))


class MintsClassification(str, Enum):
    """Mints' intuitionistic clause shapes"""
    IMPLICATION_NESTED = "implication-nested"  # (p -> q*) -> r
    DISJUNCTIVE_HEAD = "disjunctive-head"  # p -> (q \/ r)
    HORN = "horn"  # p1 /\ ... /\ pn -> q*
    GENERAL = "general"


# Formula view


def _premise_formula(p: ClausePremise) -> Formula:
    head = Atomic(p.head)
    if not p.hypotheses:
        return head
    return Impl(conjoin(Atomic(h) for h in sorted(p.hypotheses)), head)


def as_formula(c: GeneralClause) -> Formula:
    if not c.premises:
        return Atomic(c.conclusion)
    return Impl(conjoin(_premise_formula(p) for p in c.premises), Atomic(c.conclusion))


def _conjuncts(f: Formula) -> List[Formula]:
    if isinstance(f, Conj):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _atom_of(f: Formula, role: str) -> Atom:
    if isinstance(f, Atomic):
        return f.atom
    raise FragmentError(f"{role} '{print_formula(f)}' is not a basic sentence")


def _uncurry(f: Formula) -> Formula:
    """a -> (b -> c) as a /\\ b -> c"""
    while isinstance(f, Impl) and isinstance(f.right, Impl):
        f = Impl(Conj(f.left, f.right.left), f.right.right)
    return f


def formula_to_clause(f: Formula) -> GeneralClause:
    """Read a clause-shaped formula back as a GeneralClause; curried implications are accepted"""
    f = _uncurry(f)
    if isinstance(f, Atomic):
        return GeneralClause((), f.atom)
    if not isinstance(f, Impl):
        raise FragmentError(f"'{print_formula(f)}' is not clause-shaped")
    premises = []
    for conjunct in _conjuncts(f.left):
        conjunct = _uncurry(conjunct)
        if isinstance(conjunct, Impl):
            hyps = frozenset(_atom_of(h, "hypothesis") for h in _conjuncts(conjunct.left))
            premises.append(ClausePremise(hyps, _atom_of(conjunct.right, "premise head")))
        else:
            premises.append(ClausePremise(frozenset(), _atom_of(conjunct, "premise")))
    return GeneralClause(tuple(premises), _atom_of(f.right, "clause conclusion"))


# Bijection with atomic rules


def rule_to_clause(r: AtomicRule) -> GeneralClause:
    return GeneralClause(tuple(ClausePremise(p.hypotheses, p.head) for p in r.premises), r.conclusion)


def clause_to_rule(c: GeneralClause) -> AtomicRule:
    return AtomicRule(tuple(Premise(p.hypotheses, p.head) for p in c.premises), c.conclusion)


def base_to_clauses(b: Base) -> ClauseSystem:
    return ClauseSystem(frozenset(rule_to_clause(r) for r in b.rules))


def clauses_to_base(system: ClauseSystem) -> Base:
    return Base(frozenset(clause_to_rule(c) for c in system.clauses))


def classify(c: GeneralClause) -> MintsClassification:
    """Tag c with the Mints clause shape it has, if any.

    GeneralClause carries no disjunction, so the disjunctive-head shape never
    comes out of here. The absurdity atom fills q* slots like any other atom.
    """
    if all(not p.hypotheses for p in c.premises):
        return MintsClassification.HORN
    if len(c.premises) == 1 and len(c.premises[0].hypotheses) == 1:
        return MintsClassification.IMPLICATION_NESTED
    return MintsClassification.GENERAL


# Flattening


@dataclass(frozen=True)
class FlatMap:
    """Injection from the subformulas of a formula to atoms"""
    mapping: Tuple[Tuple[Formula, Atom], ...]
    bot_atom: Atom
    fresh_y: Atom
    _index: Dict[Formula, Atom] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", dict(self.mapping))

    @property
    def table(self) -> Dict[Formula, Atom]:
        return dict(self._index)

    @property
    def domain(self) -> List[Formula]:
        return [f for f, _ in self.mapping]

    @property
    def range(self) -> FrozenSet[Atom]:
        return frozenset(a for _, a in self.mapping)

    def __getitem__(self, f: Formula) -> Atom:
        found = self._index.get(f)
        if found is not None:
            return found
        raise OutsideDomainError(f"'{print_formula(f)}' is not a flattened subformula")

    def get(self, f: Formula) -> Optional[Atom]:
        return self._index.get(f)

    def composites(self) -> List[Formula]:
        return [f for f in self.domain if is_composite(f)]


def flatten(f: Formula) -> FlatMap:
    return flatten_all([f])


def flatten_all(formulas: Iterable[Formula]) -> FlatMap:
    """Flatten several formulas jointly; subformula order follows the input order.

    Composite subformulas get "#1", "#2", ... in subformula order; the
    absurdity atom and the fresh y come next, so both always exist.
    """
    order: List[Formula] = []
    seen = set()
    for f in formulas:
        if not is_bot_normal(f):
            raise NotNormalizedError(f"'{print_formula(f)}' has absurdity outside implication-conclusion position")
        for g in subformulas(f):
            if g not in seen:
                seen.add(g)
                order.append(g)

    counter = 0

    def fresh() -> Atom:
        nonlocal counter
        counter += 1
        return Atom(f"{FRESH_PREFIX}{counter}")

    mapping: List[Tuple[Formula, Atom]] = []
    absurd_present = False
    for g in order:
        if isinstance(g, Atomic):
            mapping.append((g, g.atom))
        elif isinstance(g, Absurd):
            absurd_present = True
        else:
            mapping.append((g, fresh()))
    bot_atom = fresh()
    fresh_y = fresh()
    if absurd_present:
        # absurdity keeps its subformula position in the table
        position = order.index(Absurd())
        preceding = sum(1 for g in order[:position] if not isinstance(g, Absurd))
        mapping.insert(preceding, (Absurd(), bot_atom))
    flat = FlatMap(tuple(mapping), bot_atom, fresh_y)
    logger.debug(f"flattened {len(order)} subformulas, {counter} fresh atoms")
    return flat


# Clause generators


def _check_composite(chi: Formula, m: FlatMap) -> None:
    if not is_composite(chi):
        raise OutsideDomainError(f"'{print_formula(chi)}' is not a composite subformula")
    if m.get(chi) is None:
        raise OutsideDomainError(f"'{print_formula(chi)}' is outside the flattening domain")


def _concrete_clauses(chi: Formula, m: FlatMap) -> List[GeneralClause]:
    whole = m[chi]
    left, right = m[chi.left], m[chi.right]
    if isinstance(chi, Conj):
        return [horn([whole], left), horn([whole], right), horn([left, right], whole)]
    if isinstance(chi, Disj):
        return [horn([left], whole), horn([right], whole)]
    # implication: elimination and introduction
    return [horn([whole, left], right), clause([((left,), right)], whole)]


def _disjunction_schematic(chi: Formula, m: FlatMap) -> Schematic:
    return Schematic(SchematicKind.DISJUNCTION_ELIM, disjunction=(m[chi], m[chi.left], m[chi.right]))


def clauses_for(chi: Formula, m: FlatMap, inst: Iterable[Atom]) -> FrozenSet[GeneralClause]:
    """The clauses pinning the flattened atom of composite chi to its meaning"""
    _check_composite(chi, m)
    universe = sorted(set(inst))
    if not universe:
        raise EmptyUniverseError("clause instantiation needs a nonempty atom set")
    result = set(_concrete_clauses(chi, m))
    if isinstance(chi, Disj):
        template = _disjunction_schematic(chi, m)
        result.update(template.instantiate(x) for x in universe)
    return frozenset(result)


def mints_system(f: Formula) -> Tuple[ClauseSystem, Atom]:
    """M_X for f with X the range of the flattening; the goal is the atom of f"""
    m = flatten(f)
    x_atoms = sorted(m.range)
    clauses = set()
    for chi in m.composites():
        clauses.update(clauses_for(chi, m, x_atoms))
    clauses.add(horn(x_atoms + [m.fresh_y], m.bot_atom))
    clauses.add(horn([m.bot_atom], m.fresh_y))
    clauses.update(horn([m.bot_atom], x) for x in x_atoms)
    return ClauseSystem(frozenset(clauses)), m[f]


def modified_system(f: Formula) -> ClauseSystem:
    return modified_system_for(flatten(f))


def modified_system_for(m: FlatMap) -> ClauseSystem:
    """N over a given flattening, with the x-families kept schematic"""
    clauses = set()
    schematics = {Schematic(SchematicKind.EXPLOSION, bot=m.bot_atom)}
    for chi in m.composites():
        clauses.update(_concrete_clauses(chi, m))
        if isinstance(chi, Disj):
            schematics.add(_disjunction_schematic(chi, m))
    return ClauseSystem(frozenset(clauses), frozenset(schematics))


def instantiate_system(c: ClauseSystem, universe: Iterable[Atom]) -> ClauseSystem:
    atoms = sorted(set(universe))
    if not atoms:
        raise EmptyUniverseError("instantiation universe is empty")
    clauses = set(c.clauses)
    for template in c.schematics:
        clauses.update(template.instantiate(x) for x in atoms)
    return ClauseSystem(frozenset(clauses))


def reserved_universe_atoms(count: int) -> List[Atom]:
    """Extra fresh atoms for N-instantiation universes, disjoint from flattening names"""
    return [UNIVERSE_ATOM] + [Atom(f"{UNIVERSE_ATOM.name}{k}") for k in range(1, count)]


# Rendering


def print_system(system: ClauseSystem) -> str:
    lines = [str(c) for c in system]
    lines.extend(f"schematic: {s}" for s in sorted(system.schematics, key=str))
    return "".join(f"{line}\n" for line in lines)


def print_flatmap(m: FlatMap) -> str:
    width = max((len(print_formula(f)) for f in m.domain), default=0)
    lines = [f"{print_formula(f):<{width}}  {a}" for f, a in m.mapping]
    lines.append(f"{'y':<{width}}  {m.fresh_y}")
    if m.get(Absurd()) is None:
        lines.append(f"{'(bot)':<{width}}  {m.bot_atom}")
    return "".join(f"{line}\n" for line in lines)


def clause_export(c: GeneralClause) -> ClauseExport:
    return ClauseExport(
        premises=[
            ClausePremiseExport(hyps=sorted(h.name for h in p.hypotheses), head=p.head.name) for p in c.premises
        ],
        conclusion=c.conclusion.name,
        formula=str(c),
        shape=classify(c).value,
    )


def _schematic_export(s: Schematic) -> SchematicExport:
    return SchematicExport(
        kind=s.kind.value,
        template=str(s),
        disjunction=[a.name for a in s.disjunction] if s.disjunction else None,
        bot=s.bot.name if s.bot else None,
    )


def system_export(
    system: ClauseSystem,
    goal: Optional[Atom] = None,
    universe: Optional[Iterable[Atom]] = None,
) -> ClauseSystemExport:
    return ClauseSystemExport(
        clauses=[clause_export(c) for c in system],
        schematics=[_schematic_export(s) for s in sorted(system.schematics, key=str)],
        goal=goal.name if goal else None,
        universe=sorted(a.name for a in universe) if universe is not None else None,
    )


def flatmap_export(m: FlatMap) -> FlatMapExport:
    return FlatMapExport(
        entries=[FlatMapEntry(formula=print_formula(f), atom=a.name) for f, a in m.mapping],
        bot_atom=m.bot_atom.name,
        fresh_y=m.fresh_y.name,
    )
