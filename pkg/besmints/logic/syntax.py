"""
Syntax - intuitionistic propositional formulas
AST, canonical printing, subformula enumeration, logical weight and absurdity placement
"""

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

ABSURD_TOKEN = "bot"
NORMALIZER_ATOM = "z"

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, order=True)
class Atom:
    """A basic sentence, identified by its name"""
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be nonempty")
        if self.name == ABSURD_TOKEN:
            raise ValueError(f"'{ABSURD_TOKEN}' is reserved for absurdity")

    def __str__(self) -> str:
        return self.name

    @property
    def is_surface(self) -> bool:
        """True when the name is writable in formula text (fresh names are not)"""
        return bool(_NAME_RE.match(self.name))


def surface_atom(name: str) -> Atom:
    """An atom named in user input; fresh and malformed names are rejected"""
    atom = Atom(name)
    if not atom.is_surface:
        raise ValueError(f"'{name}' is not an atom name (a letter followed by letters, digits or _)")
    return atom


class Formula:
    """Common base of the five formula constructors"""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Atomic(Formula):
    atom: Atom

    @classmethod
    def of(cls, name: str) -> "Atomic":
        return cls(Atom(name))


@dataclass(frozen=True)
class Absurd(Formula):
    pass


@dataclass(frozen=True)
class Conj(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Disj(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula


ABSURD = Absurd()

# A finite, duplicate-insensitive set of assumptions.
Context = FrozenSet[Formula]


def make_context(formulas: Iterable[Formula] = ()) -> Context:
    return frozenset(formulas)


def neg(f: Formula) -> Formula:
    return Impl(f, ABSURD)


def is_composite(f: Formula) -> bool:
    return isinstance(f, (Conj, Disj, Impl))


# Binding strength used by the printer: higher binds tighter.
_PREC_IMPL, _PREC_DISJ, _PREC_CONJ, _PREC_NEG, _PREC_ATOM = 1, 2, 3, 4, 5


def _precedence(f: Formula) -> int:
    match f:
        case Impl(_, Absurd()):
            return _PREC_NEG
        case Impl():
            return _PREC_IMPL
        case Disj():
            return _PREC_DISJ
        case Conj():
            return _PREC_CONJ
        case _:
            return _PREC_ATOM


def _wrap(f: Formula, needs_parens: bool) -> str:
    text = print_formula(f)
    return f"({text})" if needs_parens else text


def print_formula(f: Formula) -> str:
    """Canonical text with minimal parentheses; reparses to the same AST"""
    match f:
        case Atomic(atom):
            return atom.name
        case Absurd():
            return ABSURD_TOKEN
        case Impl(left, Absurd()):
            return "~" + _wrap(left, _precedence(left) < _PREC_NEG)
        case Impl(left, right):
            # right-associative
            return f"{_wrap(left, _precedence(left) <= _PREC_IMPL)} -> {print_formula(right)}"
        case Disj(left, right):
            return (
                f"{_wrap(left, _precedence(left) < _PREC_DISJ)} \\/ "
                f"{_wrap(right, _precedence(right) <= _PREC_DISJ)}"
            )
        case Conj(left, right):
            return (
                f"{_wrap(left, _precedence(left) < _PREC_CONJ)} /\\ "
                f"{_wrap(right, _precedence(right) <= _PREC_CONJ)}"
            )
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> List[Formula]:
    """All subformulas of f, deduplicated, leftmost-innermost first, ending with f"""
    seen = set()
    order: List[Formula] = []

    def visit(g: Formula) -> None:
        if is_composite(g):
            visit(g.left)
            visit(g.right)
        if g not in seen:
            seen.add(g)
            order.append(g)

    visit(f)
    return order


def node_count(f: Formula) -> int:
    if is_composite(f):
        return 1 + node_count(f.left) + node_count(f.right)
    return 1


def connective_count(f: Formula) -> int:
    if is_composite(f):
        return 1 + connective_count(f.left) + connective_count(f.right)
    return 0


def weight(f: Formula) -> int:
    """Logical weight: 0 for basic sentences, 1 for absurdity, sum plus one for connectives"""
    match f:
        case Atomic():
            return 0
        case Absurd():
            return 1
        case Conj(left, right) | Disj(left, right) | Impl(left, right):
            return weight(left) + weight(right) + 1
    raise TypeError(f"not a formula: {f!r}")


def atoms(f: Formula) -> FrozenSet[Atom]:
    match f:
        case Atomic(atom):
            return frozenset((atom,))
        case Absurd():
            return frozenset()
        case Conj(left, right) | Disj(left, right) | Impl(left, right):
            return atoms(left) | atoms(right)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of_all(formulas: Iterable[Formula]) -> FrozenSet[Atom]:
    result: FrozenSet[Atom] = frozenset()
    for f in formulas:
        result |= atoms(f)
    return result


def contains_absurd(f: Formula) -> bool:
    return any(isinstance(g, Absurd) for g in subformulas(f))


def is_bot_normal(f: Formula) -> bool:
    """True iff absurdity occurs only as the conclusion of an implication"""

    def scan(g: Formula, conclusion_slot: bool) -> bool:
        match g:
            case Absurd():
                return conclusion_slot
            case Impl(left, right):
                return scan(left, False) and scan(right, True)
            case Conj(left, right) | Disj(left, right):
                return scan(left, False) and scan(right, False)
            case _:
                return True

    return scan(f, False)


_BOT_REPLACEMENT = Impl(Impl(Atomic.of(NORMALIZER_ATOM), Atomic.of(NORMALIZER_ATOM)), ABSURD)


def normalize_bot(f: Formula) -> Formula:
    """Rewrite each misplaced absurdity to (z -> z) -> bot; idempotent"""

    def rewrite(g: Formula, conclusion_slot: bool) -> Formula:
        match g:
            case Absurd():
                return g if conclusion_slot else _BOT_REPLACEMENT
            case Impl(left, right):
                return Impl(rewrite(left, False), rewrite(right, True))
            case Conj(left, right):
                return Conj(rewrite(left, False), rewrite(right, False))
            case Disj(left, right):
                return Disj(rewrite(left, False), rewrite(right, False))
            case _:
                return g

    return rewrite(f, False)


def substitute_bot(f: Formula, a: Atom) -> Formula:
    """f[a/bot]: every absurdity leaf becomes the atom a"""
    match f:
        case Absurd():
            return Atomic(a)
        case Conj(left, right):
            return Conj(substitute_bot(left, a), substitute_bot(right, a))
        case Disj(left, right):
            return Disj(substitute_bot(left, a), substitute_bot(right, a))
        case Impl(left, right):
            return Impl(substitute_bot(left, a), substitute_bot(right, a))
        case _:
            return f


def exfalso_guards(over: Iterable[Atom], bot: Atom) -> Tuple[Formula, ...]:
    """The implications bot -> a for each a, making the atom bot behave as absurdity"""
    return tuple(Impl(Atomic(bot), Atomic(a)) for a in sorted(set(over)) if a != bot)


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-associated conjunction of a nonempty sequence"""
    items = list(formulas)
    if not items:
        raise ValueError("cannot conjoin an empty sequence")
    result = items[0]
    for item in items[1:]:
        result = Conj(result, item)
    return result


def sort_formulas(formulas: Iterable[Formula]) -> List[Formula]:
    """Deterministic order by canonical text"""
    return sorted(formulas, key=print_formula)
