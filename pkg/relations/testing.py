"""
Shorthand for building relations in tests.

Components are written as whitespace-separated tuple sets, disjuncts joined
by ``|`` and values within a tuple by ``,``::

    gen(LETTERS, 'a b|c', 'b')      # + {a} {b|c}   - {b}
    gen(SUPPLY, 's2,p1|s2,p2')      # + {(s2,p1)|(s2,p2)}
"""
from .models import DisjParaRelation, GenDisjParaRelation, ParaRelation, Scheme, Tuple, TupleSet

LETTERS = Scheme.of('letters', X=list('abcdefghi'))
SUPPLY = Scheme.of('supply', SNUM=['s1', 's2', 's3'], PNUM=['p1', 'p2', 'p3', 'p4'])


def tup(scheme, text):
    return Tuple(scheme, tuple(text.split(',')))


def tuple_sets(scheme, text):
    return [TupleSet(tup(scheme, t) for t in chunk.split('|')) for chunk in text.split()]


def tuples(scheme, text):
    return [tup(scheme, t) for t in text.split()]


def gen(scheme, positive='', negative=''):
    return GenDisjParaRelation(scheme, tuple_sets(scheme, positive), tuple_sets(scheme, negative))


def disj(scheme, positive='', negative=''):
    return DisjParaRelation(scheme, tuple_sets(scheme, positive), tuples(scheme, negative))


def para(scheme, positive='', negative=''):
    return ParaRelation(scheme, tuples(scheme, positive), tuples(scheme, negative))
