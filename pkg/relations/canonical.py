"""
Canonical forms.

Relations already keep their components sorted; ``canonicalize`` rebuilds a
value so that the ordering is re-established for anything assembled by hand,
and ``canonical_family`` gives sets of relations a deterministic order.
"""
from dataclasses import replace
from functools import singledispatch

from .models import Database, DisjParaRelation, GenDisjParaRelation, ParaRelation


@singledispatch
def canonicalize(value):
    raise TypeError(f"cannot canonicalize {type(value).__name__}")


@canonicalize.register
def _(value: ParaRelation):
    return replace(value)


@canonicalize.register
def _(value: DisjParaRelation):
    return replace(value)


@canonicalize.register
def _(value: GenDisjParaRelation):
    return replace(value)


@canonicalize.register
def _(value: Database):
    return Database(
        {name: scheme for name, scheme in value.schemes.items()},
        {name: canonicalize(relation) for name, relation in value.relations.items()},
    )


def relation_key(relation):
    return (type(relation).__name__, relation.scheme.signature, relation.key)


def canonical_family(relations):
    """A set of relations as a duplicate-free tuple in canonical order."""
    return tuple(sorted({canonicalize(r) for r in relations}, key=relation_key))
