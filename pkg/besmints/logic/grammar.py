r"""
Grammar - lark parsers for formula text and base-file rule lines
Precedence (tightest first): ~, /\, \/, ->; -> is right-associative, /\ and \/ left-associative
"""

import logging
from typing import List, Optional, Tuple

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from besmints.exceptions import BaseSyntaxError, FormulaSyntaxError
from besmints.logic.syntax import ABSURD, ABSURD_TOKEN, Atom, Atomic, Conj, Disj, Formula, Impl

logger = logging.getLogger(__name__)

FORMULA_GRAMMAR = r"""
?start: impl

?impl: disj "->" impl       -> implication
     | disj

?disj: disj "\\/" conj      -> disjunction
     | conj

?conj: conj "/\\" unary     -> conjunction
     | unary

?unary: "~" unary           -> negation
      | primary

?primary: NAME              -> name
        | "(" impl ")"

NAME: /[A-Za-z][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""

RULE_GRAMMAR = r"""
start: [premises] "=>" NAME

premises: premise ("," premise)*

premise: NAME                         -> bare_premise
       | "(" [hyps] "=>" NAME ")"     -> hyp_premise

hyps: NAME ("," NAME)*

NAME: /[A-Za-z][A-Za-z0-9_]*/

%import common.WS_INLINE
%ignore WS_INLINE
"""

# (hypothesis names, head name) per premise, then the conclusion name
RawRule = Tuple[List[Tuple[List[str], str]], str]


class _FormulaBuilder(Transformer):
    def implication(self, items):
        return Impl(items[0], items[1])

    def disjunction(self, items):
        return Disj(items[0], items[1])

    def conjunction(self, items):
        return Conj(items[0], items[1])

    def negation(self, items):
        return Impl(items[0], ABSURD)

    def name(self, items):
        text = str(items[0])
        if text == ABSURD_TOKEN:
            return ABSURD
        return Atomic(Atom(text))


class _RuleBuilder(Transformer):
    def start(self, items):
        premises, conclusion = items
        return (premises or [], str(conclusion))

    def premises(self, items):
        return list(items)

    def bare_premise(self, items):
        return ([], str(items[0]))

    def hyp_premise(self, items):
        hyps, head = items
        return (hyps or [], str(head))

    def hyps(self, items):
        return [str(t) for t in items]


_formula_parser = Lark(FORMULA_GRAMMAR, parser="lalr", transformer=_FormulaBuilder())
_rule_parser = Lark(RULE_GRAMMAR, parser="lalr", transformer=_RuleBuilder())


def _byte_offset(text: str, char_pos: Optional[int]) -> int:
    if char_pos is None or char_pos < 0:
        return len(text.encode("utf-8"))
    return len(text[:char_pos].encode("utf-8"))


def _terminal_text(parser: Lark, name: str) -> str:
    if name == "NAME":
        return "atom name"
    if name == "$END":
        return "end of input"
    try:
        return repr(parser.get_terminal(name).pattern.value)
    except KeyError:
        return name


def _describe_expected(e: UnexpectedInput, parser: Lark) -> Optional[str]:
    if isinstance(e, UnexpectedCharacters):
        names = e.allowed
    elif isinstance(e, (UnexpectedToken, UnexpectedEOF)):
        names = e.expected
    else:
        names = None
    if not names:
        return None
    return " or ".join(sorted(_terminal_text(parser, str(n)) for n in names))


def _found(e: UnexpectedInput, text: str) -> Tuple[Optional[int], str]:
    if isinstance(e, UnexpectedToken):
        token: Token = e.token
        if token.type == "$END":
            return None, "unexpected end of input"
        return token.start_pos, f"unexpected token {str(token)!r}"
    if isinstance(e, UnexpectedCharacters):
        return e.pos_in_stream, f"unexpected character {text[e.pos_in_stream]!r}"
    return None, "unexpected end of input"


def parse_formula(text: str) -> Formula:
    """Parse formula text into its unique AST"""
    try:
        return _formula_parser.parse(text)
    except UnexpectedInput as e:
        pos, what = _found(e, text)
        raise FormulaSyntaxError(what, _byte_offset(text, pos), _describe_expected(e, _formula_parser)) from None


def parse_rule_line(text: str, line_no: int = 1) -> RawRule:
    """Parse one base-file rule line into raw names; atom validation is the caller's"""
    try:
        return _rule_parser.parse(text)
    except UnexpectedInput as e:
        pos, what = _found(e, text)
        column = (pos if pos is not None else len(text)) + 1
        expected = _describe_expected(e, _rule_parser)
        message = f"{what} (expected {expected})" if expected else what
        raise BaseSyntaxError(message, line_no, column) from None
