"""Tuple-space enumeration, extension and projection primitives."""
from itertools import product

from .exceptions import SchemeMismatch
from .limits import guard, resolve_cap
from .models import Tuple


def enumerate_tuple_space(scheme, cap=None):
    """Every tuple on ``scheme``: the cartesian product of its attribute domains."""
    guard(f"tuple space of '{scheme.name}'", scheme.size, resolve_cap(cap))
    return frozenset(
        Tuple(scheme, values)
        for values in product(*(attribute.domain for attribute in scheme.attributes))
    )


def _check_extension(source, target):
    if not source.is_subscheme_of(target):
        raise SchemeMismatch(
            f"scheme '{source.name}' is not contained in '{target.name}' with identical domains"
        )


def extend_tuple(t, target, cap=None):
    """All tuples on ``target`` that agree with ``t`` on the attributes of ``t``."""
    _check_extension(t.scheme, target)
    fixed = t.as_dict()
    free = [a for a in target.attributes if a.name not in fixed]
    count = 1
    for attribute in free:
        count *= len(attribute.domain)
    guard(f"extension of {t!r} to '{target.name}'", count, resolve_cap(cap))
    extensions = set()
    for picked in product(*(attribute.domain for attribute in free)):
        values = dict(fixed)
        values.update(zip((a.name for a in free), picked))
        extensions.add(Tuple.from_mapping(target, values))
    return frozenset(extensions)


def extend_tuples(tuples, target, cap=None):
    """Union of the extensions of every member of ``tuples``."""
    cap = resolve_cap(cap)
    result = set()
    for t in tuples:
        result |= extend_tuple(t, target, cap)
        guard(f"extension to '{target.name}'", len(result), cap)
    return frozenset(result)


def project_tuple(t, target):
    """Restriction of ``t`` to the attributes of ``target``."""
    if not target.is_subscheme_of(t.scheme):
        raise SchemeMismatch(f"cannot project a tuple on '{t.scheme.name}' onto '{target.name}'")
    return Tuple(target, tuple(t[name] for name in target.attribute_names))


def project_tuples(tuples, target):
    return frozenset(project_tuple(t, target) for t in tuples)


def join_tuples(left, right, target):
    """Natural join of two tuple sets onto ``target``, the union of their schemes."""
    joined = set()
    for r in left:
        for s in right:
            shared = set(r.scheme.attribute_names) & set(s.scheme.attribute_names)
            if all(r[name] == s[name] for name in shared):
                values = r.as_dict()
                values.update(s.as_dict())
                joined.add(Tuple.from_mapping(target, values))
    return frozenset(joined)
