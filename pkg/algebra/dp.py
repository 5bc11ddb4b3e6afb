"""
Operators on disjunctive paraconsistent relations.

Positive facts are tuple sets (exclusive disjunctions), negative facts are
definite tuples. Every operator reduces its inputs first and returns a
reduced result.
"""
import logging

from querylang.formulas import eval_formula, scope_formula
from relations.exceptions import InconsistentInput, SchemeMismatch
from relations.limits import resolve_cap
from relations.models import DisjParaRelation, ParaRelation, Scheme
from relations.tuplespace import (
    enumerate_tuple_space,
    extend_tuple,
    extend_tuples,
    join_tuples,
    project_tuples,
)

from .choices import choices, minimal_sets, pairwise, transversal_component

logger = logging.getLogger(__name__)


def is_dp_normalized(relation):
    return not any(w <= relation.negative_set for w in relation.positive)


def dp_norm(relation):
    """Drop positive sets wholly negated, together with the negative tuples that negate them."""
    negative = relation.negative_set
    contradicted = [w for w in relation.positive if w <= negative]
    if not contradicted:
        return relation
    witnesses = frozenset().union(*contradicted)
    return DisjParaRelation(
        relation.scheme,
        [w for w in relation.positive if not w <= negative],
        negative - witnesses,
    )


def dp_reduce(relation):
    """Remove negated tuples from positive sets and keep the subset-minimal results."""
    negative = relation.negative_set
    trimmed = set()
    for w in relation.positive:
        rest = w - negative
        if not rest:
            raise InconsistentInput(f"positive set {w!r} is wholly negated; normalize first")
        trimmed.add(rest)
    return DisjParaRelation(relation.scheme, minimal_sets(trimmed), relation.negative)


def dp_normrep(members):
    """Paraconsistent relations whose positive and negative parts are disjoint."""
    return frozenset(m for m in members if m.is_consistent())


def dp_reducerep(members):
    """Paraconsistent relations not strictly subsumed, componentwise, by another member."""
    parts = {m: (frozenset(m.positive), frozenset(m.negative)) for m in set(members)}
    return frozenset(
        m for m, (pos, neg) in parts.items()
        if not any(
            other != m and other_pos <= pos and other_neg <= neg
            for other, (other_pos, other_neg) in parts.items()
        )
    )


def dp_expand(relation, cap=None):
    """One paraconsistent relation per way of picking a tuple from every positive set."""
    return frozenset(
        ParaRelation(relation.scheme, selection, relation.negative)
        for selection in choices(relation.positive, resolve_cap(cap))
    )


def dp_rep(relation, cap=None):
    """
    Information content: the consistent, minimal picks paired with the negatives.

    Only subset-minimal picks are enumerated. A subset of a consistent pick is
    consistent, so the consistent minimal picks are exactly what normrep
    followed by reducerep keeps from the full expansion.
    """
    if not is_dp_normalized(relation):
        raise InconsistentInput("information content is defined for normalized relations only")
    candidates = frozenset(
        ParaRelation(relation.scheme, selection, relation.negative)
        for selection in choices(relation.positive, resolve_cap(cap), minimal=True)
    )
    return dp_reducerep(dp_normrep(candidates))


def _finish(relation, operator):
    normalized = dp_norm(relation)
    if normalized != relation:
        logger.info("%s: normalization changed the intermediate result", operator)
    return dp_reduce(normalized)


def _check_same_scheme(left, right):
    if left.scheme != right.scheme:
        raise SchemeMismatch(
            f"operands are on different schemes '{left.scheme.name}' and '{right.scheme.name}'"
        )


def target_scheme(scheme, attributes):
    if isinstance(attributes, Scheme):
        if not attributes.is_subscheme_of(scheme):
            raise SchemeMismatch(f"'{attributes.name}' is not a sub-scheme of '{scheme.name}'")
        return attributes
    return scheme.restrict(attributes)


def dp_union(left, right, cap=None):
    _check_same_scheme(left, right)
    r, s = dp_reduce(left), dp_reduce(right)
    union = DisjParaRelation(
        left.scheme,
        r.positive + s.positive,
        r.negative_set & s.negative_set,
    )
    return _finish(union, 'dp_union')


def dp_intersect(left, right, cap=None):
    _check_same_scheme(left, right)
    cap = resolve_cap(cap)
    r, s = dp_reduce(left), dp_reduce(right)
    intersections = pairwise(
        frozenset.intersection,
        choices(r.positive, cap),
        choices(s.positive, cap),
        cap,
    )
    result = DisjParaRelation(
        left.scheme,
        transversal_component(intersections, cap),
        r.negative_set | s.negative_set,
    )
    return _finish(result, 'dp_intersect')


def dp_select(relation, formula, cap=None):
    cap = resolve_cap(cap)
    formula = scope_formula(formula, relation.scheme)
    r = dp_reduce(relation)
    kept = [w for w in r.positive if all(eval_formula(formula, t) for t in w)]
    failing = {
        t for t in enumerate_tuple_space(relation.scheme, cap)
        if not eval_formula(formula, t)
    }
    result = DisjParaRelation(relation.scheme, kept, r.negative_set | failing)
    return _finish(result, 'dp_select')


def dp_project(relation, attributes, cap=None):
    cap = resolve_cap(cap)
    target = target_scheme(relation.scheme, attributes)
    r = dp_reduce(relation)
    negative = r.negative_set
    result = DisjParaRelation(
        target,
        [project_tuples(w, target) for w in r.positive],
        [
            t for t in enumerate_tuple_space(target, cap)
            if extend_tuple(t, relation.scheme, cap) <= negative
        ],
    )
    return _finish(result, 'dp_project')


def dp_join(left, right, cap=None):
    cap = resolve_cap(cap)
    target = left.scheme.join(right.scheme)
    r, s = dp_reduce(left), dp_reduce(right)
    joins = pairwise(
        lambda e, f: join_tuples(e, f, target),
        choices(r.positive, cap),
        choices(s.positive, cap),
        cap,
    )
    result = DisjParaRelation(
        target,
        transversal_component(joins, cap),
        extend_tuples(r.negative, target, cap) | extend_tuples(s.negative, target, cap),
    )
    return _finish(result, 'dp_join')
