"""Text to expression trees and formulas."""
import lark
from lark import Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from .exceptions import ParseError
from .expressions import Complement, Intersect, Join, Project, RelRef, Select, Union
from .formulas import FALSE, TRUE, And, Atom, Const, Name, Not, Or, scope_formula
from .grammar import QUERY_GRAMMAR

_parser = lark.Lark(
    QUERY_GRAMMAR,
    parser='lalr',
    lexer='contextual',
    start=['query', 'formula'],
)


@v_args(inline=True)
class _ToTree(Transformer):
    def relref(self, token):
        return RelRef(str(token), token.line, token.column)

    def select(self, formula, operand):
        return Select(formula, operand)

    def attributes(self, *tokens):
        return tuple(str(t) for t in tokens)

    def project(self, attributes, operand):
        return Project(attributes, operand)

    def union(self, left, right):
        return Union(left, right)

    def intersect(self, left, right):
        return Intersect(left, right)

    def join(self, left, right):
        return Join(left, right)

    def complement(self, operand):
        return Complement(operand)

    def or_formula(self, left, right):
        return Or(left, right)

    def and_formula(self, left, right):
        return And(left, right)

    def not_formula(self, operand):
        return Not(operand)

    def always(self):
        return TRUE

    def never(self):
        return FALSE

    def equal(self, left, right):
        return Atom(left, right)

    def not_equal(self, left, right):
        return Not(Atom(left, right))

    def name(self, token):
        return Name(str(token), token.line, token.column)

    def const(self, token):
        return Const(str(token)[1:-1], token.line, token.column)


def describe_terminal(parser, name):
    """How an expected terminal is shown to the user: keywords quoted, patterns by kind."""
    if name == '$END':
        return 'end of input'
    try:
        pattern = parser.get_terminal(name).pattern
    except KeyError:
        return name.lower()
    if pattern.type == 'str':
        return f"'{pattern.value}'"
    return {'WORD': 'word', 'QUOTED': 'quoted value'}.get(name, name.lower())


def raise_parse_error(exc, parser, text):
    """Re-raise a lark error as ``ParseError`` with a 1-based position."""
    if isinstance(exc, UnexpectedToken):
        expected = {describe_terminal(parser, n) for n in exc.expected}
        if exc.token.type == '$END':
            line, column = _end_position(text)
            raise ParseError("unexpected end of input", line, column, expected) from None
        raise ParseError(f"unexpected '{exc.token}'", exc.line, exc.column, expected) from None
    if isinstance(exc, UnexpectedCharacters):
        expected = {describe_terminal(parser, n) for n in exc.allowed or ()}
        raise ParseError(f"unexpected character '{exc.char}'", exc.line, exc.column, expected) from None
    if isinstance(exc, UnexpectedEOF):
        line, column = _end_position(text)
        expected = {describe_terminal(parser, n) for n in exc.expected}
        raise ParseError("unexpected end of input", line, column, expected) from None
    raise ParseError(str(exc), getattr(exc, 'line', None), getattr(exc, 'column', None)) from None


def _end_position(text):
    lines = text.split('\n')
    return len(lines), len(lines[-1]) + 1


def _parse(text, start):
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as exc:
        raise_parse_error(exc, _parser, text)
    return _ToTree().transform(tree)


def parse_query(text):
    """Parse an algebra expression such as ``project[SNUM](select[PNUM=p1](supply))``."""
    return _parse(text, 'query')


def parse_formula(text, scheme=None):
    """
    Parse a selection formula.

    With a ``scheme`` the result is scoped: bare words naming an attribute
    become attribute references, the rest become constants checked against
    the compared attribute's domain.
    """
    formula = _parse(text, 'formula')
    if scheme is None:
        return formula
    return scope_formula(formula, scheme)
