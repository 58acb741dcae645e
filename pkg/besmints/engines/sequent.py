"""
Sequent - contraction-free sequent calculus (G4ip) for intuitionistic propositional logic
Serves as the independent oracle for provability; every success carries a proof tree
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from besmints.logic.syntax import (
    Absurd,
    Atomic,
    Conj,
    Disj,
    Formula,
    Impl,
    print_formula,
)
from besmints.schemas import SequentTrace
from besmints.utils.config import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sequent:
    assumptions: FrozenSet[Formula]
    goal: Formula

    @classmethod
    def of(cls, assumptions: Iterable[Formula], goal: Formula) -> "Sequent":
        return cls(frozenset(assumptions), goal)

    def __str__(self) -> str:
        left = ", ".join(sorted(print_formula(f) for f in self.assumptions))
        return f"{left} |- {print_formula(self.goal)}" if left else f"|- {print_formula(self.goal)}"


@dataclass(frozen=True)
class SequentProof:
    rule: str
    sequent: Sequent
    premises: Tuple["SequentProof", ...] = ()


def proof_size(p: SequentProof) -> int:
    return 1 + sum(proof_size(q) for q in p.premises)


def sequent_trace(p: SequentProof) -> SequentTrace:
    return SequentTrace(rule=p.rule, sequent=str(p.sequent), premises=[sequent_trace(q) for q in p.premises])


def check_proof(p: SequentProof) -> bool:
    """Structural replay of a G4ip proof: every step is a rule instance"""
    s = p.sequent
    kids = [q.sequent for q in p.premises]
    g = s.goal
    gamma = s.assumptions

    def ok_kids() -> bool:
        return all(check_proof(q) for q in p.premises)

    rule = p.rule
    if rule == "Ax":
        return not kids and g in gamma
    if rule == "L-bot":
        return not kids and Absurd() in gamma
    if rule == "R-and":
        return isinstance(g, Conj) and kids == [Sequent(gamma, g.left), Sequent(gamma, g.right)] and ok_kids()
    if rule == "R-imp":
        return isinstance(g, Impl) and kids == [Sequent(gamma | {g.left}, g.right)] and ok_kids()
    if rule in ("R-or1", "R-or2"):
        side = None if not isinstance(g, Disj) else (g.left if rule == "R-or1" else g.right)
        return side is not None and kids == [Sequent(gamma, side)] and ok_kids()
    if len(kids) == 0:
        return False
    # left rules: find the principal formula consistent with the first premise
    for principal in gamma:
        rest = gamma - {principal}
        expected = _left_premises(rule, principal, rest, g)
        if expected is not None and expected == kids:
            return ok_kids()
    return False


def _left_premises(rule: str, a: Formula, rest: FrozenSet[Formula], g: Formula) -> Optional[List[Sequent]]:
    match rule, a:
        case "L-and", Conj(x, y):
            return [Sequent(rest | {x, y}, g)]
        case "L-or", Disj(x, y):
            return [Sequent(rest | {x}, g), Sequent(rest | {y}, g)]
        case "L-imp-atom", Impl(Atomic() as x, y) if x in rest:
            return [Sequent(rest | {y}, g)]
        case "L-imp-bot", Impl(Absurd(), _):
            return [Sequent(rest, g)]
        case "L-imp-and", Impl(Conj(c, d), b):
            return [Sequent(rest | {Impl(c, Impl(d, b))}, g)]
        case "L-imp-or", Impl(Disj(c, d), b):
            return [Sequent(rest | {Impl(c, b), Impl(d, b)}, g)]
        case "L-imp-imp", Impl(Impl(c, d), b):
            return [Sequent(rest | {Impl(d, b)}, Impl(c, d)), Sequent(rest | {b}, g)]
    return None


# Termination measure


def _dyckhoff_weight(f: Formula) -> int:
    match f:
        case Conj(x, y):
            return _dyckhoff_weight(x) + _dyckhoff_weight(y) + 2
        case Disj(x, y) | Impl(x, y):
            return _dyckhoff_weight(x) + _dyckhoff_weight(y) + 1
        case _:
            return 1


def _measure(s: Sequent) -> Counter:
    return Counter(_dyckhoff_weight(f) for f in list(s.assumptions) + [s.goal])


def _descends(parent: Sequent, child: Sequent) -> bool:
    """Multiset-order decrease of formula weights (Dershowitz-Manna)"""
    m, n = _measure(parent), _measure(child)
    removed, added = m - n, n - m
    if not removed:
        return False
    top = max(removed)
    return all(w < top for w in added)


class _Search:
    """One oracle query; the memo is local to the query"""

    def __init__(self, check_descent: bool):
        self.check_descent = check_descent
        self.memo: Dict[Sequent, Optional[SequentProof]] = {}
        self.visited = 0

    def prove(self, s: Sequent) -> Optional[SequentProof]:
        if s in self.memo:
            return self.memo[s]
        self.visited += 1
        result = self._prove(s)
        self.memo[s] = result
        return result

    def _step(self, rule: str, s: Sequent, premises: List[Sequent]) -> Optional[SequentProof]:
        proofs = []
        for p in premises:
            if self.check_descent:
                assert _descends(s, p), f"{rule}: {p} does not descend from {s}"
            proof = self.prove(p)
            if proof is None:
                return None
            proofs.append(proof)
        return SequentProof(rule, s, tuple(proofs))

    def _prove(self, s: Sequent) -> Optional[SequentProof]:
        gamma, g = s.assumptions, s.goal
        if g in gamma:
            return SequentProof("Ax", s)
        if Absurd() in gamma:
            return SequentProof("L-bot", s)

        ordered = sorted(gamma, key=print_formula)

        # invertible left rules
        for a in ordered:
            rest = gamma - {a}
            match a:
                case Conj(x, y):
                    return self._step("L-and", s, [Sequent(rest | {x, y}, g)])
                case Disj(x, y):
                    return self._step("L-or", s, [Sequent(rest | {x}, g), Sequent(rest | {y}, g)])
                case Impl(Atomic() as x, y) if x in rest:
                    return self._step("L-imp-atom", s, [Sequent(rest | {y}, g)])
                case Impl(Absurd(), _):
                    return self._step("L-imp-bot", s, [Sequent(rest, g)])
                case Impl(Conj(c, d), b):
                    return self._step("L-imp-and", s, [Sequent(rest | {Impl(c, Impl(d, b))}, g)])
                case Impl(Disj(c, d), b):
                    return self._step("L-imp-or", s, [Sequent(rest | {Impl(c, b), Impl(d, b)}, g)])

        # invertible right rules
        match g:
            case Impl(x, y):
                return self._step("R-imp", s, [Sequent(gamma | {x}, y)])
            case Conj(x, y):
                return self._step("R-and", s, [Sequent(gamma, x), Sequent(gamma, y)])

        # non-invertible choices
        if isinstance(g, Disj):
            for rule, side in (("R-or1", g.left), ("R-or2", g.right)):
                found = self._step(rule, s, [Sequent(gamma, side)])
                if found is not None:
                    return found
        for a in ordered:
            if isinstance(a, Impl) and isinstance(a.left, Impl):
                c, d, b = a.left.left, a.left.right, a.right
                rest = gamma - {a}
                found = self._step(
                    "L-imp-imp", s, [Sequent(rest | {Impl(d, b)}, Impl(c, d)), Sequent(rest | {b}, g)]
                )
                if found is not None:
                    return found
        return None


def oracle_prove(s: Sequent) -> Tuple[bool, Optional[SequentProof]]:
    """Decide intuitionistic derivability of s"""
    search = _Search(check_descent=settings.DEBUG and __debug__)
    proof = search.prove(s)
    logger.debug(f"oracle {s}: {'proved' if proof else 'unprovable'} after {search.visited} sequents")
    return proof is not None, proof


def provable(assumptions: Iterable[Formula], goal: Formula) -> bool:
    return oracle_prove(Sequent.of(assumptions, goal))[0]
