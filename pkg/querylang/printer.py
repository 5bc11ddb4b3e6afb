"""
Deterministic printing of expressions and formulas.

The output parses back to an equal tree: constants are always quoted,
unresolved names and attributes are printed bare, and parentheses are added
wherever precedence or left-associativity would otherwise regroup operands.
"""
from .expressions import Complement, Intersect, Join, Project, RelRef, Select, Union
from .formulas import And, Atom, Attr, Const, Name, Not, Or, Truth

_OR, _AND, _NOT, _ATOM = 1, 2, 3, 4


def _level(formula):
    match formula:
        case Or():
            return _OR
        case And():
            return _AND
        case Not(operand=Atom()):
            return _ATOM
        case Not():
            return _NOT
    return _ATOM


def format_operand(operand):
    match operand:
        case Name(text=text):
            return text
        case Attr(name=name):
            return name
        case Const(value=value):
            return f"'{value}'"
    raise TypeError(f"not a formula operand: {operand!r}")


def _wrap(formula, parenthesize):
    text = format_formula(formula)
    return f"({text})" if parenthesize else text


def format_formula(formula):
    match formula:
        case Truth(value=value):
            return 'true' if value else 'false'
        case Atom(left=left, right=right):
            return f"{format_operand(left)}={format_operand(right)}"
        case Not(operand=Atom(left=left, right=right)):
            return f"{format_operand(left)}!={format_operand(right)}"
        case Not(operand=operand):
            return '!' + _wrap(operand, _level(operand) < _NOT)
        case And(left=left, right=right):
            return f"{_wrap(left, _level(left) < _AND)} & {_wrap(right, _level(right) <= _AND)}"
        case Or(left=left, right=right):
            return f"{_wrap(left, _level(left) < _OR)} | {_wrap(right, _level(right) <= _OR)}"
    raise TypeError(f"not a formula: {formula!r}")


def format_query(expr):
    match expr:
        case RelRef(name=name):
            return name
        case Select(formula=formula, operand=operand):
            return f"select[{format_formula(formula)}]({format_query(operand)})"
        case Project(attributes=attributes, operand=operand):
            return f"project[{','.join(attributes)}]({format_query(operand)})"
        case Union(left=left, right=right):
            return f"union({format_query(left)},{format_query(right)})"
        case Intersect(left=left, right=right):
            return f"intersect({format_query(left)},{format_query(right)})"
        case Join(left=left, right=right):
            return f"join({format_query(left)},{format_query(right)})"
        case Complement(operand=operand):
            return f"not({format_query(operand)})"
    raise TypeError(f"not a query expression: {expr!r}")
