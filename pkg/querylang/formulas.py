"""
Selection formulas: equality atoms combined with negation, conjunction and disjunction.

The parser produces ``Name`` operands for bare words because it cannot tell
attributes from constants without a scheme; ``scope_formula`` resolves them.
Source positions are carried for error messages and ignored by equality.
"""
from dataclasses import dataclass, field

from .exceptions import FormulaError, ScopeError


@dataclass(frozen=True)
class Name:
    """A bare word, not yet resolved against a scheme."""
    text: str
    line: int | None = field(default=None, compare=False, repr=False)
    column: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Attr:
    name: str
    line: int | None = field(default=None, compare=False, repr=False)
    column: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Const:
    value: str
    line: int | None = field(default=None, compare=False, repr=False)
    column: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Atom:
    """``left = right``; ``!=`` is parsed as ``Not(Atom(...))``."""
    left: Name | Attr | Const
    right: Name | Attr | Const


@dataclass(frozen=True)
class Not:
    operand: 'Formula'


@dataclass(frozen=True)
class And:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Or:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Truth:
    value: bool


Formula = Atom | Not | And | Or | Truth

TRUE = Truth(True)
FALSE = Truth(False)


def _where(operand):
    if operand.line is None:
        return ''
    return f" at {operand.line}:{operand.column}"


def _resolve(operand, scheme):
    match operand:
        case Name(text=text):
            if scheme.has_attribute(text):
                return Attr(text, operand.line, operand.column)
            return Const(text, operand.line, operand.column)
        case Attr(name=name):
            if not scheme.has_attribute(name):
                raise ScopeError(f"scheme '{scheme.name}' has no attribute '{name}'{_where(operand)}")
            return operand
        case _:
            return operand


def _scope_atom(atom, scheme):
    left, right = _resolve(atom.left, scheme), _resolve(atom.right, scheme)
    attrs = [o for o in (left, right) if isinstance(o, Attr)]
    consts = [o for o in (left, right) if isinstance(o, Const)]
    if not attrs:
        raise ScopeError(
            f"'{left.value}' and '{right.value}' are not attributes of '{scheme.name}'{_where(left)}"
        )
    if len(attrs) == 2:
        first, second = (scheme.attribute(a.name) for a in attrs)
        if first.values != second.values:
            raise ScopeError(
                f"attributes '{first.name}' and '{second.name}' have different domains{_where(left)}"
            )
    else:
        attribute = scheme.attribute(attrs[0].name)
        if consts[0].value not in attribute.values:
            raise ScopeError(
                f"'{consts[0].value}' is not in the domain of '{attribute.name}'{_where(consts[0])}"
            )
    return Atom(left, right)


def scope_formula(formula, scheme):
    """Resolve bare words against ``scheme`` and check every atom can be evaluated on it."""
    match formula:
        case Truth():
            return formula
        case Atom():
            return _scope_atom(formula, scheme)
        case Not(operand=operand):
            return Not(scope_formula(operand, scheme))
        case And(left=left, right=right):
            return And(scope_formula(left, scheme), scope_formula(right, scheme))
        case Or(left=left, right=right):
            return Or(scope_formula(left, scheme), scope_formula(right, scheme))
    raise FormulaError(f"not a formula: {formula!r}")


def _value(operand, t):
    match operand:
        case Attr(name=name):
            return t[name]
        case Const(value=value):
            return value
    raise FormulaError(f"unresolved operand {operand!r}; scope the formula first")


def eval_formula(formula, t):
    """Two-valued evaluation of a scoped formula on one tuple."""
    match formula:
        case Truth(value=value):
            return value
        case Atom(left=left, right=right):
            return _value(left, t) == _value(right, t)
        case Not(operand=operand):
            return not eval_formula(operand, t)
        case And(left=left, right=right):
            return eval_formula(left, t) and eval_formula(right, t)
        case Or(left=left, right=right):
            return eval_formula(left, t) or eval_formula(right, t)
    raise FormulaError(f"not a formula: {formula!r}")
