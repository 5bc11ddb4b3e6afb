"""
Random schemes, relations and formulas for the differential checks.

Every trial draws from its own ``random.Random`` seeded with
``"<seed>:<trial>"``, so a trial reproduces on its own, in any order and in
any worker process.
"""
import random
from dataclasses import dataclass

from algebra.gdp import g_norm, g_reduce
from querylang.formulas import FALSE, TRUE, And, Atom, Attr, Const, Not, Or
from relations.exceptions import ValidationError
from relations.limits import FALLBACK_CAP
from relations.models import Attribute, GenDisjParaRelation, Scheme, TupleSet
from relations.tuplespace import enumerate_tuple_space

ATTRIBUTE_POOL = ('A', 'B', 'C')


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    max_attributes: int = 2
    max_domain: int = 4
    max_sets: int = 3
    max_set_size: int = 3
    trials: int = 200
    cap: int = FALLBACK_CAP
    # Negative tuple sets of size one only.
    singleton_negatives: bool = False

    def __post_init__(self):
        bounds = (
            ('max_attributes', 1, 2),
            ('max_domain', 2, 4),
            ('max_sets', 0, 3),
            ('max_set_size', 1, 3),
        )
        for name, low, high in bounds:
            value = getattr(self, name)
            if not low <= value <= high:
                raise ValidationError(f"{name} must be between {low} and {high}, got {value}")
        if self.trials < 0:
            raise ValidationError("trials must not be negative")
        if self.cap < 1:
            raise ValidationError("cap must be a positive integer")
        if not -2**63 <= self.seed < 2**63:
            raise ValidationError("seed must fit in 64 bits")

    def rng(self, trial):
        return random.Random(f"{self.seed}:{trial}")


def _attribute(rng, cfg, name):
    size = rng.randint(2, cfg.max_domain)
    return Attribute(name, tuple(f"v{i}" for i in range(1, size + 1)))


def gen_scheme(rng, cfg, name='r'):
    count = rng.randint(1, cfg.max_attributes)
    return Scheme(name, tuple(_attribute(rng, cfg, a) for a in ATTRIBUTE_POOL[:count]))


def gen_join_schemes(rng, cfg):
    """Two schemes that may share attribute ``B`` (with the same domain) and nothing else."""
    pool = {name: _attribute(rng, cfg, name) for name in ATTRIBUTE_POOL}
    left = rng.choice([('A',), ('A', 'B'), ('B',)])
    right = rng.choice([('B',), ('B', 'C'), ('C',)])
    left = left[:cfg.max_attributes]
    right = right[:cfg.max_attributes]
    return (
        Scheme('r', tuple(pool[n] for n in left)),
        Scheme('s', tuple(pool[n] for n in right)),
    )


def _tuple_sets(rng, cfg, space, max_size):
    sets = []
    for _ in range(rng.randint(0, cfg.max_sets)):
        size = rng.randint(1, min(max_size, len(space)))
        sets.append(TupleSet(rng.sample(space, size)))
    return sets


def gen_raw_relation(rng, cfg, scheme):
    """Random components within the configured bounds, neither normalized nor reduced."""
    space = sorted(enumerate_tuple_space(scheme, cfg.cap))
    negative_size = 1 if cfg.singleton_negatives else cfg.max_set_size
    return GenDisjParaRelation(
        scheme,
        _tuple_sets(rng, cfg, space, cfg.max_set_size),
        _tuple_sets(rng, cfg, space, negative_size),
    )


def gen_normalized_relation(cfg, scheme, rng=None):
    """A random normalized relation on ``scheme``; redundancies are left in place."""
    rng = rng or random.Random(cfg.seed)
    return g_norm(gen_raw_relation(rng, cfg, scheme))


def gen_relation(cfg, scheme, rng=None):
    """A random normalized, reduced relation on ``scheme``."""
    rng = rng or random.Random(cfg.seed)
    return g_reduce(gen_normalized_relation(cfg, scheme, rng))


def gen_definite_relation(rng, cfg, scheme):
    """Singleton tuple sets only, with no tuple both asserted and negated."""
    space = sorted(enumerate_tuple_space(scheme, cfg.cap))
    positive = rng.sample(space, rng.randint(0, min(cfg.max_sets, len(space))))
    rest = [t for t in space if t not in positive]
    negative = rng.sample(rest, rng.randint(0, min(cfg.max_sets, len(rest))))
    return GenDisjParaRelation(
        scheme,
        [TupleSet([t]) for t in positive],
        [TupleSet([t]) for t in negative],
    )


def _gen_atom(rng, scheme):
    attribute = rng.choice(scheme.attributes)
    partners = [
        a for a in scheme.attributes
        if a.name != attribute.name and a.values == attribute.values
    ]
    if partners and rng.random() < 0.2:
        return Atom(Attr(attribute.name), Attr(rng.choice(partners).name))
    return Atom(Attr(attribute.name), Const(rng.choice(attribute.domain)))


def gen_formula(rng, scheme, depth=3):
    """A scoped formula of nesting depth at most ``depth`` over ``scheme``."""
    roll = rng.random()
    if depth == 0 or roll < 0.4:
        if rng.random() < 0.1:
            return rng.choice([TRUE, FALSE])
        return _gen_atom(rng, scheme)
    if roll < 0.6:
        return Not(gen_formula(rng, scheme, depth - 1))
    if roll < 0.8:
        return And(gen_formula(rng, scheme, depth - 1), gen_formula(rng, scheme, depth - 1))
    return Or(gen_formula(rng, scheme, depth - 1), gen_formula(rng, scheme, depth - 1))


def gen_projection(rng, scheme):
    """A nonempty subset of the scheme's attribute names, in scheme order."""
    names = list(scheme.attribute_names)
    kept = rng.sample(names, rng.randint(1, len(names)))
    return tuple(n for n in names if n in kept)
