"""
Brute-force reference evaluators.

Nothing here calls the algebra package: information content is computed by
enumerating every pick with ``itertools.product`` and filtering, and the
classical evaluators work on plain sets of definite tuples. Only the value
types and the cap guard are shared with the code under test.
"""
from itertools import product

from querylang.formulas import eval_formula, scope_formula
from relations.canonical import canonical_family
from relations.limits import guard, resolve_cap
from relations.models import DisjParaRelation, ParaRelation, Tuple


def _picks(family, cap):
    family = list(family)
    total = 1
    for member in family:
        total *= len(member)
    guard('brute-force picks', total, cap)
    return {frozenset(pick) for pick in product(*(sorted(m) for m in family))}


def _minimal_members(members, parts):
    split = {m: parts(m) for m in set(members)}
    return frozenset(
        m for m, (pos, neg) in split.items()
        if not any(
            o != m and o_pos <= pos and o_neg <= neg
            for o, (o_pos, o_neg) in split.items()
        )
    )


def disjunctive_members(relation, cap=None):
    """Every consistent, componentwise-minimal way to resolve the negative tuple sets."""
    cap = resolve_cap(cap)
    candidates = [
        DisjParaRelation(relation.scheme, relation.positive, pick)
        for pick in _picks(relation.negative, cap)
    ]
    consistent = [m for m in candidates if not any(w <= m.negative_set for w in m.positive)]
    return _minimal_members(consistent, lambda m: (frozenset(m.positive), m.negative_set))


def _definite_members(member, cap):
    negative = member.negative_set
    kept = [w for w in member.positive if not w <= negative]
    removed = frozenset().union(*(w for w in member.positive if w <= negative))
    negative = negative - removed
    candidates = [
        ParaRelation(member.scheme, pick, negative)
        for pick in _picks(kept, cap)
    ]
    consistent = [p for p in candidates if not set(p.positive) & negative]
    return _minimal_members(consistent, lambda p: (frozenset(p.positive), frozenset(p.negative)))


def flatten_worlds(relation, cap=None):
    """All definite paraconsistent relations a generalized relation stands for."""
    cap = resolve_cap(cap)
    worlds = set()
    for member in disjunctive_members(relation, cap):
        worlds |= _definite_members(member, cap)
    return frozenset(worlds)


def _reduced(member):
    negative = member.negative_set
    trimmed = {w - negative for w in member.positive if not w <= negative}
    minimal = [w for w in trimmed if not any(o < w for o in trimmed)]
    return DisjParaRelation(member.scheme, minimal, member.negative)


def closure(members):
    """
    Normal form used to compare two sets of disjunctive relations.

    Inconsistent members are dropped, each remaining member loses negated
    tuples and subsumed tuple sets, then only componentwise-minimal members
    are kept and the result is put in canonical order.
    """
    consistent = [m for m in members if not any(w <= m.negative_set for w in m.positive)]
    reduced = {_reduced(m) for m in consistent}
    return canonical_family(
        _minimal_members(reduced, lambda m: (frozenset(m.positive), m.negative_set))
    )


def definite_tuples(component):
    """The tuples of a component made of singleton tuple sets."""
    return frozenset(t for s in component for t in s)


def classical_union(left, right):
    return left | right


def classical_intersect(left, right):
    return left & right


def classical_select(tuples, formula, scheme):
    formula = scope_formula(formula, scheme)
    return frozenset(t for t in tuples if eval_formula(formula, t))


def classical_project(tuples, target):
    return frozenset(
        Tuple(target, tuple(t[name] for name in target.attribute_names))
        for t in tuples
    )


def classical_join(left, right, target):
    joined = set()
    for r in left:
        for s in right:
            if all(r[n] == s[n] for n in r.scheme.attribute_names if s.scheme.has_attribute(n)):
                values = {**r.as_dict(), **s.as_dict()}
                joined.add(Tuple(target, tuple(values[n] for n in target.attribute_names)))
    return frozenset(joined)
