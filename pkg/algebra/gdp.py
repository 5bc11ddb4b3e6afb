"""
Operators on generalized disjunctive paraconsistent relations.

Both components hold tuple sets. Normalization removes contradictions
between a tuple set and the singletons on the opposite side; reduction
removes the four kinds of redundancy. Operators are defined through the
choice selections of their inputs and reassemble results with transversals.
"""
import logging
from dataclasses import dataclass
from itertools import count, product

from querylang.formulas import eval_formula, scope_formula
from relations.exceptions import InconsistentInput, SchemeMismatch
from relations.limits import guard, resolve_cap
from relations.models import DisjParaRelation, GenDisjParaRelation, TupleSet
from relations.tuplespace import (
    enumerate_tuple_space,
    extend_tuple,
    extend_tuples,
    join_tuples,
    project_tuples,
)

from .choices import choices, minimal_sets, pairwise, transversal_component
from .dp import target_scheme

logger = logging.getLogger(__name__)


def _singleton_union(sets):
    return frozenset(t for s in sets if len(s) == 1 for t in s)


def is_g_normalized(relation):
    return g_norm(relation) == relation


def g_norm(relation):
    """
    Remove contradicting tuple sets together with the singletons that contradict them.

    A positive set is contradicted when every one of its tuples is negated by a
    negative singleton, and symmetrically for negative sets. Both directions
    are computed against the input and applied at once.
    """
    negated = _singleton_union(relation.negative)
    asserted = _singleton_union(relation.positive)
    bad_positive = {w for w in relation.positive if w <= negated}
    bad_negative = {u for u in relation.negative if u <= asserted}
    if not bad_positive and not bad_negative:
        return relation
    contradicted_positive = frozenset().union(*bad_positive)
    contradicted_negative = frozenset().union(*bad_negative)
    return GenDisjParaRelation(
        relation.scheme,
        [
            w for w in relation.positive
            if w not in bad_positive and not (len(w) == 1 and w <= contradicted_negative)
        ],
        [
            u for u in relation.negative
            if u not in bad_negative and not (len(u) == 1 and u <= contradicted_positive)
        ],
    )


def _absorb(sets, singletons, side):
    trimmed = set()
    for s in sets:
        rest = s - singletons
        if not rest:
            raise InconsistentInput(f"{side} tuple set {s!r} is wholly contradicted; normalize first")
        trimmed.add(rest)
    return minimal_sets(trimmed)


def g_reduce(relation):
    """
    Remove redundancies until nothing changes.

    Each round subtracts the opposite-side singletons from every tuple set,
    keeps the subset-minimal sets on each side and normalizes again. A round
    can create new singletons, which the next round propagates.
    """
    current = g_norm(relation)
    for rounds in count(1):
        negated = _singleton_union(current.negative)
        asserted = _singleton_union(current.positive)
        candidate = g_norm(GenDisjParaRelation(
            current.scheme,
            _absorb(current.positive, negated, 'positive'),
            _absorb(current.negative, asserted, 'negative'),
        ))
        if candidate == current:
            logger.debug("g_reduce on '%s' reached a fixpoint after %d round(s)", relation.scheme.name, rounds)
            return current
        current = candidate


def g_expand(relation, cap=None):
    """One disjunctive relation per way of picking a tuple from every negative set."""
    return frozenset(
        DisjParaRelation(relation.scheme, relation.positive, selection)
        for selection in choices(relation.negative, resolve_cap(cap))
    )


def g_normrep(members):
    """Disjunctive relations none of whose positive sets is wholly negated."""
    return frozenset(m for m in members if not any(w <= m.negative_set for w in m.positive))


def g_reducerep(members):
    """Disjunctive relations not strictly subsumed, componentwise, by another member."""
    parts = {m: (frozenset(m.positive), m.negative_set) for m in set(members)}
    return frozenset(
        m for m, (pos, neg) in parts.items()
        if not any(
            other != m and other_pos <= pos and other_neg <= neg
            for other, (other_pos, other_neg) in parts.items()
        )
    )


def g_rep(relation, cap=None):
    """
    Information content as a set of disjunctive paraconsistent relations.

    Equal to ``g_reducerep(g_normrep(g_expand(relation)))``. Only the
    subset-minimal negative picks are enumerated: dropping negated tuples
    never makes a member inconsistent, so no consistent minimal member is lost.
    """
    if not is_g_normalized(relation):
        raise InconsistentInput("information content is defined for normalized relations only")
    candidates = frozenset(
        DisjParaRelation(relation.scheme, relation.positive, selection)
        for selection in choices(relation.negative, resolve_cap(cap), minimal=True)
    )
    return g_reducerep(g_normrep(candidates))


def _check_same_scheme(left, right):
    if left.scheme != right.scheme:
        raise SchemeMismatch(
            f"operands are on different schemes '{left.scheme.name}' and '{right.scheme.name}'"
        )


def g_union(left, right, cap=None):
    _check_same_scheme(left, right)
    cap = resolve_cap(cap)
    r, s = g_reduce(left), g_reduce(right)
    intersections = pairwise(
        frozenset.intersection,
        choices(r.negative, cap),
        choices(s.negative, cap),
        cap,
    )
    return g_reduce(GenDisjParaRelation(
        left.scheme,
        r.positive + s.positive,
        transversal_component(intersections, cap),
    ))


def g_intersect(left, right, cap=None):
    _check_same_scheme(left, right)
    cap = resolve_cap(cap)
    r, s = g_reduce(left), g_reduce(right)
    intersections = pairwise(
        frozenset.intersection,
        choices(r.positive, cap),
        choices(s.positive, cap),
        cap,
    )
    return g_reduce(GenDisjParaRelation(
        left.scheme,
        transversal_component(intersections, cap),
        r.negative + s.negative,
    ))


def g_complement(relation, cap=None):
    """Swap the components. This is explicit negation, not closed-world complement."""
    r = g_reduce(relation)
    return GenDisjParaRelation(r.scheme, r.negative, r.positive)


def g_select(relation, formula, cap=None):
    cap = resolve_cap(cap)
    formula = scope_formula(formula, relation.scheme)
    r = g_reduce(relation)
    failing = [
        TupleSet([t]) for t in enumerate_tuple_space(relation.scheme, cap)
        if not eval_formula(formula, t)
    ]
    return g_reduce(GenDisjParaRelation(
        relation.scheme,
        [w for w in r.positive if all(eval_formula(formula, t) for t in w)],
        r.negative + tuple(failing),
    ))


def g_project(relation, attributes, cap=None):
    cap = resolve_cap(cap)
    target = target_scheme(relation.scheme, attributes)
    r = g_reduce(relation)
    extensions = {
        t: extend_tuple(t, relation.scheme, cap)
        for t in enumerate_tuple_space(target, cap)
    }
    covered = frozenset(
        frozenset(t for t, extended in extensions.items() if extended <= selection)
        for selection in choices(r.negative, cap)
    )
    return g_reduce(GenDisjParaRelation(
        target,
        [project_tuples(w, target) for w in r.positive],
        transversal_component(covered, cap),
    ))


def g_join(left, right, cap=None):
    cap = resolve_cap(cap)
    target = left.scheme.join(right.scheme)
    r, s = g_reduce(left), g_reduce(right)
    joins = pairwise(
        lambda e, f: join_tuples(e, f, target),
        choices(r.positive, cap),
        choices(s.positive, cap),
        cap,
    )
    left_extended = [extend_tuples(g, target, cap) for g in choices(r.negative, cap)]
    right_extended = [extend_tuples(h, target, cap) for h in choices(s.negative, cap)]
    unions = pairwise(frozenset.union, left_extended, right_extended, cap)
    return g_reduce(GenDisjParaRelation(
        target,
        transversal_component(joins, cap),
        transversal_component(unions, cap),
    ))


def lift_operator(operator, *argument_sets, cap=None):
    """
    Apply a disjunctive-level operator to every combination of arguments.

    ``operator`` takes one relation per argument set; bind formulas or
    attribute lists with ``functools.partial``.
    """
    cap = resolve_cap(cap)
    combinations = 1
    for members in argument_sets:
        combinations *= len(members)
    guard('lifted operator applications', combinations, cap)
    return frozenset(operator(*arguments) for arguments in product(*argument_sets))


@dataclass(frozen=True)
class Redundancy:
    """One inconsistency or redundancy found in a generalized relation."""
    kind: str
    side: str
    tuple_set: TupleSet
    witness: frozenset

    def describe(self):
        return f"{self.kind}: {self.side} {self.tuple_set!r} because of {_show(self.witness)}"


def _show(tuples):
    return '{' + ' | '.join(repr(t) for t in sorted(tuples)) + '}'


def redundancies(relation):
    """
    Everything ``g_norm`` and ``g_reduce`` would act on, in a stable order.

    Kinds are ``inconsistent`` (a set wholly contradicted by opposite-side
    singletons), ``subsumed`` (a strict superset of another set on its side)
    and ``absorbable`` (a set that loses tuples to opposite-side singletons).
    """
    found = []
    sides = (
        ('positive', relation.positive, _singleton_union(relation.negative)),
        ('negative', relation.negative, _singleton_union(relation.positive)),
    )
    for side, sets, opposite in sides:
        for s in sets:
            if s <= opposite:
                found.append(Redundancy('inconsistent', side, s, frozenset(s)))
                continue
            smaller = [other for other in sets if other < s]
            if smaller:
                found.append(Redundancy('subsumed', side, s, smaller[0]))
            if len(s) > 1 and s & opposite:
                found.append(Redundancy('absorbable', side, s, s & opposite))
    return found
