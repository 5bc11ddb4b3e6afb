"""
Scheme inference and bottom-up evaluation of expression trees over a database.

Stored relations are read through ``g_norm`` and ``g_reduce``; the database
itself is never modified.
"""
import logging

from algebra.gdp import (
    g_complement,
    g_intersect,
    g_join,
    g_norm,
    g_project,
    g_reduce,
    g_select,
    g_union,
)
from relations.exceptions import SchemeMismatch
from relations.limits import resolve_cap

from .expressions import Complement, Intersect, Join, Project, RelRef, Select, Union
from .formulas import scope_formula

logger = logging.getLogger(__name__)


def infer_scheme(expr, db):
    """The scheme ``expr`` evaluates to; raises the errors evaluation would raise for bad schemes."""
    match expr:
        case RelRef(name=name):
            return db.relation(name).scheme
        case Select(formula=formula, operand=operand):
            scheme = infer_scheme(operand, db)
            scope_formula(formula, scheme)
            return scheme
        case Project(attributes=attributes, operand=operand):
            return infer_scheme(operand, db).restrict(attributes)
        case Union(left=left, right=right) | Intersect(left=left, right=right):
            left_scheme, right_scheme = infer_scheme(left, db), infer_scheme(right, db)
            if left_scheme != right_scheme:
                raise SchemeMismatch(
                    f"operands are on different schemes '{left_scheme.name}' and '{right_scheme.name}'"
                )
            return left_scheme
        case Join(left=left, right=right):
            return infer_scheme(left, db).join(infer_scheme(right, db))
        case Complement(operand=operand):
            return infer_scheme(operand, db)
    raise TypeError(f"not a query expression: {expr!r}")


def _evaluate(expr, db, cap):
    match expr:
        case RelRef(name=name):
            return g_reduce(g_norm(db.relation(name)))
        case Select(formula=formula, operand=operand):
            return g_select(_evaluate(operand, db, cap), formula, cap)
        case Project(attributes=attributes, operand=operand):
            return g_project(_evaluate(operand, db, cap), attributes, cap)
        case Union(left=left, right=right):
            return g_union(_evaluate(left, db, cap), _evaluate(right, db, cap), cap)
        case Intersect(left=left, right=right):
            return g_intersect(_evaluate(left, db, cap), _evaluate(right, db, cap), cap)
        case Join(left=left, right=right):
            return g_join(_evaluate(left, db, cap), _evaluate(right, db, cap), cap)
        case Complement(operand=operand):
            return g_complement(_evaluate(operand, db, cap))
    raise TypeError(f"not a query expression: {expr!r}")


def eval_query(expr, db, cap=None):
    """Evaluate ``expr`` against ``db`` and return a normalized, reduced generalized relation."""
    scheme = infer_scheme(expr, db)
    logger.debug("evaluating on scheme '%s'", scheme.name)
    return _evaluate(expr, db, resolve_cap(cap))
