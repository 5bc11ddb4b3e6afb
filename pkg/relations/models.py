"""
Value types for schemes, tuples, tuple sets and the three relation levels.

Nothing here is an ORM model: relations are immutable values. Components are
stored deduplicated and in canonical order, so dataclass equality is set
equality and two relations built from permuted inputs compare (and hash)
equal.
"""
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain

from .exceptions import SchemeMismatch, UnknownRelation, ValidationError


@dataclass(frozen=True, eq=False)
class Attribute:
    """An attribute name with its declared, finite domain."""
    name: str
    domain: tuple[str, ...]

    def __post_init__(self):
        domain = tuple(self.domain)
        if not domain:
            raise ValidationError(f"attribute '{self.name}' has an empty domain")
        if len(set(domain)) != len(domain):
            raise ValidationError(f"attribute '{self.name}' lists a domain value twice")
        object.__setattr__(self, 'domain', domain)

    @cached_property
    def values(self):
        return frozenset(self.domain)

    def __eq__(self, other):
        if not isinstance(other, Attribute):
            return NotImplemented
        return self.name == other.name and self.values == other.values

    def __hash__(self):
        return hash((self.name, self.values))


@dataclass(frozen=True, eq=False)
class Scheme:
    """
    A named, ordered list of attributes.

    Two schemes are equal when they have the same attributes with the same
    domains; the name and the attribute order only affect display.
    """
    name: str
    attributes: tuple[Attribute, ...]

    def __post_init__(self):
        attributes = tuple(self.attributes)
        if not attributes:
            raise ValidationError(f"scheme '{self.name}' declares no attributes")
        names = [attribute.name for attribute in attributes]
        if len(set(names)) != len(names):
            raise ValidationError(f"scheme '{self.name}' declares an attribute twice")
        object.__setattr__(self, 'attributes', attributes)

    @classmethod
    def of(cls, name, **domains):
        """Shorthand: ``Scheme.of('r', A=['a1', 'a2'], B=['b1'])``."""
        return cls(name, tuple(Attribute(attr, tuple(values)) for attr, values in domains.items()))

    @cached_property
    def attribute_names(self):
        return tuple(attribute.name for attribute in self.attributes)

    @cached_property
    def signature(self):
        return tuple(sorted((a.name, tuple(sorted(a.domain))) for a in self.attributes))

    @cached_property
    def _by_name(self):
        return {attribute.name: attribute for attribute in self.attributes}

    @cached_property
    def _positions(self):
        return {name: index for index, name in enumerate(self.attribute_names)}

    def __eq__(self, other):
        if not isinstance(other, Scheme):
            return NotImplemented
        return self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __str__(self):
        return self.name

    def has_attribute(self, name):
        return name in self._by_name

    def attribute(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise SchemeMismatch(f"scheme '{self.name}' has no attribute '{name}'") from None

    def position(self, name):
        return self._positions[name]

    @property
    def size(self):
        """Number of tuples in the tuple space of this scheme."""
        return math.prod(len(attribute.domain) for attribute in self.attributes)

    def is_subscheme_of(self, other):
        return all(
            other.has_attribute(a.name) and other.attribute(a.name) == a
            for a in self.attributes
        )

    def restrict(self, names, name=None):
        """The sub-scheme on ``names``, kept in this scheme's attribute order."""
        wanted = set(names)
        for attr in wanted:
            self.attribute(attr)
        if not wanted:
            raise SchemeMismatch("a projection must keep at least one attribute")
        return Scheme(name or self.name, tuple(a for a in self.attributes if a.name in wanted))

    def join(self, other, name=None):
        """The union scheme; shared attributes must carry identical domains."""
        extra = []
        for attribute in other.attributes:
            if self.has_attribute(attribute.name):
                if self.attribute(attribute.name) != attribute:
                    raise SchemeMismatch(
                        f"attribute '{attribute.name}' has different domains "
                        f"in '{self.name}' and '{other.name}'"
                    )
            else:
                extra.append(attribute)
        return Scheme(name or f"{self.name}_{other.name}", self.attributes + tuple(extra))


@dataclass(frozen=True, eq=False)
class Tuple:
    """A total assignment of domain values to the attributes of a scheme."""
    scheme: Scheme
    values: tuple[str, ...]
    key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != len(self.scheme.attributes):
            raise ValidationError(
                f"tuple {values} has {len(values)} values but scheme "
                f"'{self.scheme.name}' has {len(self.scheme.attributes)} attributes"
            )
        for attribute, value in zip(self.scheme.attributes, values):
            if value not in attribute.values:
                raise ValidationError(
                    f"value '{value}' is not in the domain of attribute '{attribute.name}'"
                )
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'key', tuple(sorted(zip(self.scheme.attribute_names, values))))

    @classmethod
    def from_mapping(cls, scheme, mapping):
        missing = [name for name in scheme.attribute_names if name not in mapping]
        if missing:
            raise ValidationError(f"no value given for attribute(s) {', '.join(missing)}")
        return cls(scheme, tuple(mapping[name] for name in scheme.attribute_names))

    def __getitem__(self, attribute):
        return self.values[self.scheme.position(attribute)]

    def as_dict(self):
        return dict(zip(self.scheme.attribute_names, self.values))

    def __eq__(self, other):
        if not isinstance(other, Tuple):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"({', '.join(self.values)})"


class TupleSet(frozenset):
    """
    A nonempty set of tuples read as an exclusive disjunction.

    Set operations return plain ``frozenset`` objects, so intermediate
    results may be empty; only stored components must be ``TupleSet``.
    """

    def __new__(cls, tuples=()):
        self = super().__new__(cls, tuples)
        if not self:
            raise ValidationError("a tuple set must contain at least one tuple")
        return self

    @cached_property
    def key(self):
        return tuple(sorted(t.key for t in self))

    def __repr__(self):
        return '{' + ' | '.join(repr(t) for t in sorted(self)) + '}'


def set_key(tuples):
    if isinstance(tuples, TupleSet):
        return tuples.key
    return tuple(sorted(t.key for t in tuples))


def canonical_tuples(tuples):
    return tuple(sorted(set(tuples)))


def canonical_sets(sets):
    unique = {s if isinstance(s, TupleSet) else TupleSet(s) for s in sets}
    return tuple(sorted(unique, key=set_key))


def _check_on_scheme(scheme, tuples):
    for t in tuples:
        if t.scheme is not scheme and t.scheme != scheme:
            raise ValidationError(f"tuple {t!r} is not on scheme '{scheme.name}'")


@dataclass(frozen=True)
class ParaRelation:
    """Definite positive and negative tuples (the most definite level)."""
    scheme: Scheme
    positive: tuple[Tuple, ...] = ()
    negative: tuple[Tuple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'positive', canonical_tuples(self.positive))
        object.__setattr__(self, 'negative', canonical_tuples(self.negative))
        _check_on_scheme(self.scheme, chain(self.positive, self.negative))

    @property
    def key(self):
        return (tuple(t.key for t in self.positive), tuple(t.key for t in self.negative))

    def is_consistent(self):
        return not set(self.positive) & set(self.negative)

    def as_disjunctive(self):
        return DisjParaRelation(self.scheme, [TupleSet([t]) for t in self.positive], self.negative)


@dataclass(frozen=True)
class DisjParaRelation:
    """Disjunctive positive tuple sets with definite negative tuples."""
    scheme: Scheme
    positive: tuple[TupleSet, ...] = ()
    negative: tuple[Tuple, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'positive', canonical_sets(self.positive))
        object.__setattr__(self, 'negative', canonical_tuples(self.negative))
        _check_on_scheme(self.scheme, chain(chain.from_iterable(self.positive), self.negative))

    @property
    def key(self):
        return (tuple(w.key for w in self.positive), tuple(t.key for t in self.negative))

    @cached_property
    def negative_set(self):
        return frozenset(self.negative)

    def as_generalized(self):
        """The generalized relation with the same information content."""
        return GenDisjParaRelation(self.scheme, self.positive, [TupleSet([t]) for t in self.negative])


@dataclass(frozen=True)
class GenDisjParaRelation:
    """Disjunctive positive and disjunctive negative tuple sets."""
    scheme: Scheme
    positive: tuple[TupleSet, ...] = ()
    negative: tuple[TupleSet, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'positive', canonical_sets(self.positive))
        object.__setattr__(self, 'negative', canonical_sets(self.negative))
        _check_on_scheme(
            self.scheme,
            chain(chain.from_iterable(self.positive), chain.from_iterable(self.negative)),
        )

    @property
    def key(self):
        return (tuple(w.key for w in self.positive), tuple(u.key for u in self.negative))

    def is_definite(self):
        return all(len(s) == 1 for s in chain(self.positive, self.negative))


@dataclass(frozen=True)
class Database:
    """Named schemes and named generalized relations bound to them."""
    schemes: dict = field(default_factory=dict)
    relations: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'schemes', dict(sorted(self.schemes.items())))
        object.__setattr__(self, 'relations', dict(sorted(self.relations.items())))
        for name, relation in self.relations.items():
            registered = self.schemes.get(relation.scheme.name)
            if registered is None or registered != relation.scheme:
                raise ValidationError(
                    f"relation '{name}' is bound to unregistered scheme '{relation.scheme.name}'"
                )

    __hash__ = None

    def relation(self, name):
        try:
            return self.relations[name]
        except KeyError:
            raise UnknownRelation(name) from None

    def with_relation(self, name, relation):
        return Database(self.schemes, {**self.relations, name: relation})
