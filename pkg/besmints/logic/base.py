"""
Base - atomic rules, bases and derivability in a base
Derivability is decided by saturating one assumption set at a time and returns replayable derivations
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from besmints.exceptions import MalformedDerivationError, ReservedTokenError
from besmints.logic.grammar import parse_rule_line
from besmints.logic.syntax import ABSURD_TOKEN, Atom, surface_atom
from besmints.schemas import DerivationTrace, TraceNode, dump_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Premise:
    """One hypothetical premise P => p of a general rule"""
    hypotheses: FrozenSet[Atom]
    head: Atom

    @classmethod
    def of(cls, hypotheses: Iterable[str], head: str) -> "Premise":
        return cls(frozenset(Atom(h) for h in hypotheses), Atom(head))


@dataclass(frozen=True)
class AtomicRule:
    """(P1 => p1), ..., (Pn => pn) => c; no premises is the nullary rule => c"""
    premises: Tuple[Premise, ...]
    conclusion: Atom

    @property
    def is_nullary(self) -> bool:
        return not self.premises

    def atoms(self) -> FrozenSet[Atom]:
        result = {self.conclusion}
        for p in self.premises:
            result.add(p.head)
            result.update(p.hypotheses)
        return frozenset(result)

    def __str__(self) -> str:
        return print_rule(self)


@dataclass(frozen=True)
class Base:
    """A finite set of atomic rules"""
    rules: FrozenSet[AtomicRule] = field(default_factory=frozenset)

    @classmethod
    def of(cls, rules: Iterable[AtomicRule]) -> "Base":
        return cls(frozenset(rules))

    def __iter__(self) -> Iterator[AtomicRule]:
        return iter(sorted(self.rules, key=print_rule))

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, rule: AtomicRule) -> bool:
        return rule in self.rules

    def __le__(self, other: "Base") -> bool:
        return self.rules <= other.rules

    def union(self, other: Union["Base", Iterable[AtomicRule]]) -> "Base":
        extra = other.rules if isinstance(other, Base) else frozenset(other)
        return Base(self.rules | extra)

    def atoms(self) -> FrozenSet[Atom]:
        result: FrozenSet[Atom] = frozenset()
        for r in self.rules:
            result |= r.atoms()
        return result


EMPTY_BASE = Base()


# Derivations


@dataclass(frozen=True)
class Hypothesis:
    atom: Atom

    @property
    def conclusion(self) -> Atom:
        return self.atom


@dataclass(frozen=True)
class Nullary:
    rule: AtomicRule

    @property
    def conclusion(self) -> Atom:
        return self.rule.conclusion


@dataclass(frozen=True)
class Apply:
    rule: AtomicRule
    subderivations: Tuple["Derivation", ...]
    discharged: Tuple[FrozenSet[Atom], ...]

    @property
    def conclusion(self) -> Atom:
        return self.rule.conclusion


Derivation = Union[Hypothesis, Nullary, Apply]


def derivation_size(d: Derivation) -> int:
    if isinstance(d, Apply):
        return 1 + sum(derivation_size(s) for s in d.subderivations)
    return 1


def replay(
    d: Derivation,
    base: Optional[Base] = None,
    assumptions: Optional[Iterable[Atom]] = None,
) -> Tuple[Atom, FrozenSet[Atom]]:
    """Re-check d against the three clauses of derivability in a base.

    Returns the root conclusion and the open (undischarged) hypotheses.
    Raises MalformedDerivationError when a step does not match its rule,
    a rule is missing from ``base``, or an open hypothesis is not among
    ``assumptions``.
    """
    open_hyps: set = set()

    def check(node: Derivation, discharged: FrozenSet[Atom]) -> Atom:
        if isinstance(node, Hypothesis):
            if node.atom not in discharged:
                open_hyps.add(node.atom)
            return node.atom
        if isinstance(node, Nullary):
            if not node.rule.is_nullary:
                raise MalformedDerivationError(f"rule '{print_rule(node.rule)}' is not nullary")
            _check_membership(node.rule)
            return node.rule.conclusion
        if isinstance(node, Apply):
            rule = node.rule
            _check_membership(rule)
            if rule.is_nullary:
                raise MalformedDerivationError(f"nullary rule '{print_rule(rule)}' applied to premises")
            if len(node.subderivations) != len(rule.premises) or len(node.discharged) != len(rule.premises):
                raise MalformedDerivationError(
                    f"rule '{print_rule(rule)}' has {len(rule.premises)} premises, "
                    f"derivation supplies {len(node.subderivations)}"
                )
            for premise, sub, hyps in zip(rule.premises, node.subderivations, node.discharged):
                if hyps != premise.hypotheses:
                    raise MalformedDerivationError(
                        f"premise of '{print_rule(rule)}' discharges {_names(hyps)}, rule says {_names(premise.hypotheses)}"
                    )
                got = check(sub, discharged | hyps)
                if got != premise.head:
                    raise MalformedDerivationError(
                        f"premise of '{print_rule(rule)}' needs {premise.head}, subderivation concludes {got}"
                    )
            return rule.conclusion
        raise MalformedDerivationError(f"not a derivation step: {node!r}")

    def _check_membership(rule: AtomicRule) -> None:
        if base is not None and rule not in base:
            raise MalformedDerivationError(f"rule '{print_rule(rule)}' is not in the base")

    conclusion = check(d, frozenset())
    opened = frozenset(open_hyps)
    if assumptions is not None:
        stray = opened - frozenset(assumptions)
        if stray:
            raise MalformedDerivationError(f"open hypotheses {_names(stray)} are not assumptions")
    return conclusion, opened


class _Saturator:
    """Least-fixpoint closure per assumption set; memo lives for one query"""

    def __init__(self, base: Base):
        self.rules: List[AtomicRule] = list(base)
        self.memo: Dict[FrozenSet[Atom], Dict[Atom, Derivation]] = {}

    def closure(self, hyps: FrozenSet[Atom], seed: Optional[Dict[Atom, Derivation]] = None) -> Dict[Atom, Derivation]:
        cached = self.memo.get(hyps)
        if cached is not None:
            return cached

        derived: Dict[Atom, Derivation] = {a: Hypothesis(a) for a in sorted(hyps)}
        if seed:
            # anything derivable from a subset is derivable here
            for a, d in seed.items():
                derived.setdefault(a, d)

        changed = True
        while changed:
            changed = False
            for rule in self.rules:
                if rule.conclusion in derived:
                    continue
                subs: List[Derivation] = []
                for premise in rule.premises:
                    if premise.hypotheses <= hyps:
                        sub = derived.get(premise.head)
                    else:
                        sub = self.closure(hyps | premise.hypotheses, derived).get(premise.head)
                    if sub is None:
                        break
                    subs.append(sub)
                else:
                    if rule.is_nullary:
                        derived[rule.conclusion] = Nullary(rule)
                    else:
                        derived[rule.conclusion] = Apply(
                            rule, tuple(subs), tuple(p.hypotheses for p in rule.premises)
                        )
                    changed = True

        self.memo[hyps] = derived
        return derived


def derives(b: Base, assumptions: Iterable[Atom], goal: Atom) -> Tuple[bool, Optional[Derivation]]:
    """Decide assumptions |-_b goal; on success also return a derivation"""
    saturator = _Saturator(b)
    found = saturator.closure(frozenset(assumptions)).get(goal)
    logger.debug(f"derives {goal}: {len(saturator.memo)} assumption sets saturated over {len(b)} rules")
    return found is not None, found


def derivable_atoms(b: Base, assumptions: Iterable[Atom] = ()) -> FrozenSet[Atom]:
    """Every atom derivable from the assumptions in b"""
    return frozenset(_Saturator(b).closure(frozenset(assumptions)))


# Traces


def _trace_node(d: Derivation) -> TraceNode:
    if isinstance(d, Hypothesis):
        return TraceNode(step="hypothesis", conclusion=d.atom.name)
    if isinstance(d, Nullary):
        return TraceNode(step="nullary", conclusion=d.conclusion.name, rule=print_rule(d.rule))
    return TraceNode(
        step="apply",
        conclusion=d.conclusion.name,
        rule=print_rule(d.rule),
        discharged=[sorted(a.name for a in hyps) for hyps in d.discharged],
        children=[_trace_node(s) for s in d.subderivations],
    )


def build_trace(
    d: Derivation,
    base: Optional[Base] = None,
    assumptions: Optional[Iterable[Atom]] = None,
) -> DerivationTrace:
    """Replay d, then describe it; MalformedDerivationError if the replay fails"""
    conclusion, open_hyps = replay(d, base, assumptions)
    return DerivationTrace(
        conclusion=conclusion.name,
        open_hypotheses=sorted(a.name for a in open_hyps),
        rule_applications=derivation_size(d) - _hypothesis_leaves(d),
        replayed=True,
        root=_trace_node(d),
    )


def _hypothesis_leaves(d: Derivation) -> int:
    if isinstance(d, Hypothesis):
        return 1
    if isinstance(d, Apply):
        return sum(_hypothesis_leaves(s) for s in d.subderivations)
    return 0


def _render(node: TraceNode, depth: int, discharged: List[str], out: List[str]) -> None:
    pad = "  " * depth
    note = f"[{', '.join(discharged)}] " if discharged else ""
    how = "hypothesis" if node.step == "hypothesis" else f"by {node.rule}"
    out.append(f"{pad}{note}{node.conclusion}    ({how})")
    hyps = node.discharged or [[] for _ in node.children]
    for child, closed in zip(node.children, hyps):
        _render(child, depth + 1, closed, out)


def derivation_trace(
    d: Derivation,
    base: Optional[Base] = None,
    assumptions: Optional[Iterable[Atom]] = None,
    as_json: bool = False,
) -> str:
    """Render a replay-checked derivation as an indented tree or as JSON.

    Premises that discharge hypotheses show them in brackets before the
    premise conclusion; the last text line reports the replay result.
    """
    trace = build_trace(d, base, assumptions)
    if as_json:
        return dump_json(trace)
    lines: List[str] = []
    _render(trace.root, 0, [], lines)
    opened = ", ".join(trace.open_hypotheses) or "none"
    lines.append(f"replayed: {trace.conclusion} from {opened} ({trace.rule_applications} rule applications)")
    return "\n".join(lines) + "\n"


# Text format


def _names(atoms: Iterable[Atom]) -> str:
    return ", ".join(a.name for a in sorted(atoms))


def print_premise(p: Premise) -> str:
    if not p.hypotheses:
        return p.head.name
    return f"({_names(p.hypotheses)} => {p.head.name})"


def print_rule(r: AtomicRule) -> str:
    if r.is_nullary:
        return f"=> {r.conclusion.name}"
    return f"{', '.join(print_premise(p) for p in r.premises)} => {r.conclusion.name}"


def print_base(b: Base) -> str:
    return "".join(f"{print_rule(r)}\n" for r in b)


def _basic(name: str, line_no: int) -> Atom:
    if name == ABSURD_TOKEN:
        raise ReservedTokenError(f"line {line_no}: '{ABSURD_TOKEN}' is absurdity and cannot occur in an atomic rule")
    return surface_atom(name)


def parse_rule(text: str, line_no: int = 1) -> AtomicRule:
    raw_premises, conclusion = parse_rule_line(text, line_no)
    premises = tuple(
        Premise(frozenset(_basic(h, line_no) for h in hyps), _basic(head, line_no))
        for hyps, head in raw_premises
    )
    return AtomicRule(premises, _basic(conclusion, line_no))


def parse_base(text: str) -> Base:
    """One rule per line; '#' starts a comment; blank lines are skipped"""
    rules = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        rules.append(parse_rule(body, line_no))
    return Base.of(rules)
