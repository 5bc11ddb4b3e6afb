"""Algebra expression trees. Formulas inside ``Select`` stay unscoped until evaluation."""
from dataclasses import dataclass, field

from .formulas import Formula


@dataclass(frozen=True)
class RelRef:
    name: str
    line: int | None = field(default=None, compare=False, repr=False)
    column: int | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Select:
    formula: Formula
    operand: 'QueryExpr'


@dataclass(frozen=True)
class Project:
    attributes: tuple[str, ...]
    operand: 'QueryExpr'

    def __post_init__(self):
        object.__setattr__(self, 'attributes', tuple(self.attributes))


@dataclass(frozen=True)
class Union:
    left: 'QueryExpr'
    right: 'QueryExpr'


@dataclass(frozen=True)
class Intersect:
    left: 'QueryExpr'
    right: 'QueryExpr'


@dataclass(frozen=True)
class Join:
    left: 'QueryExpr'
    right: 'QueryExpr'


@dataclass(frozen=True)
class Complement:
    """Explicit negation: swaps what is known true with what is known false."""
    operand: 'QueryExpr'


QueryExpr = RelRef | Select | Project | Union | Intersect | Join | Complement
