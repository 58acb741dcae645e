"""
Kripke - finite intuitionistic Kripke models and exhaustive countermodel search
Used only as a third-party refutation check; returned models are replayed by the forcing checker
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from besmints.logic.syntax import Absurd, Atom, Atomic, Conj, Disj, Formula, Impl, atoms, print_formula

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KripkeModel:
    """Worlds 0..n-1 with world 0 as root; order holds every pair (u, v) with u <= v"""
    worlds: Tuple[int, ...]
    order: FrozenSet[Tuple[int, int]]
    valuation: Tuple[FrozenSet[Atom], ...]

    def above(self, w: int) -> List[int]:
        return [v for v in self.worlds if (w, v) in self.order]

    def is_preorder(self) -> bool:
        reflexive = all((w, w) in self.order for w in self.worlds)
        transitive = all(
            (u, x) in self.order
            for (u, v) in self.order
            for (y, x) in self.order
            if v == y
        )
        return reflexive and transitive

    def is_persistent(self) -> bool:
        return all(self.valuation[u] <= self.valuation[v] for (u, v) in self.order)

    def forces(self, w: int, f: Formula) -> bool:
        match f:
            case Atomic(a):
                return a in self.valuation[w]
            case Absurd():
                return False
            case Conj(x, y):
                return self.forces(w, x) and self.forces(w, y)
            case Disj(x, y):
                return self.forces(w, x) or self.forces(w, y)
            case Impl(x, y):
                return all(not self.forces(v, x) or self.forces(v, y) for v in self.above(w))
        raise TypeError(f"not a formula: {f!r}")

    def refutes(self, f: Formula) -> bool:
        """Valid model whose root does not force f"""
        return self.is_preorder() and self.is_persistent() and not self.forces(0, f)

    def to_dict(self) -> Dict:
        return {
            "worlds": list(self.worlds),
            "order": sorted([u, v] for (u, v) in self.order if u != v),
            "valuation": {str(w): sorted(a.name for a in self.valuation[w]) for w in self.worlds},
        }


def _rooted_orders(n: int) -> Iterator[FrozenSet[Tuple[int, int]]]:
    """Partial orders on 0..n-1 with 0 least, labelled so u <= v implies u <= v numerically"""
    candidates = [(u, v) for u in range(1, n) for v in range(u + 1, n)]
    seen: Set[FrozenSet[Tuple[int, int]]] = set()
    for k in range(len(candidates) + 1):
        for chosen in itertools.combinations(candidates, k):
            pairs = {(w, w) for w in range(n)} | {(0, w) for w in range(n)} | set(chosen)
            # transitive closure
            changed = True
            while changed:
                changed = False
                for (a, b) in list(pairs):
                    for (c, d) in list(pairs):
                        if b == c and (a, d) not in pairs:
                            pairs.add((a, d))
                            changed = True
            frozen = frozenset(pairs)
            if frozen not in seen:
                seen.add(frozen)
                yield frozen


def _up_sets(n: int, order: FrozenSet[Tuple[int, int]]) -> List[FrozenSet[int]]:
    result = []
    for mask in range(1 << n):
        members = frozenset(w for w in range(n) if mask >> w & 1)
        if all(v in members for (u, v) in order if u in members):
            result.append(members)
    return result


def kripke_refute(f: Formula, max_worlds: int) -> Optional[KripkeModel]:
    """Smallest countermodel to f with at most max_worlds worlds, or None"""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    letters = sorted(atoms(f))
    tried = 0
    for n in range(1, max_worlds + 1):
        worlds = tuple(range(n))
        for order in _rooted_orders(n):
            ups = _up_sets(n, order)
            for choice in itertools.product(ups, repeat=len(letters)):
                tried += 1
                valuation = tuple(
                    frozenset(a for a, up in zip(letters, choice) if w in up) for w in worlds
                )
                model = KripkeModel(worlds, order, valuation)
                # refutes() replays order, persistence and forcing
                if model.refutes(f):
                    logger.debug(f"countermodel for {print_formula(f)} after {tried} models")
                    return model
    logger.debug(f"no countermodel for {print_formula(f)} within {max_worlds} worlds ({tried} models)")
    return None
