"""Choice selections, transversals and subset-minimization over tuple sets."""
from dataclasses import dataclass

from relations.limits import guard, resolve_cap


@dataclass(frozen=True)
class ChoiceFamily:
    """The sets one tuple is picked from; members may repeat."""
    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'members', tuple(frozenset(m) for m in self.members))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def minimal_sets(sets):
    """The subset-minimal members of a collection of sets."""
    kept = []
    for candidate in sorted(set(sets), key=len):
        if not any(k < candidate for k in kept):
            kept.append(candidate)
    return frozenset(kept)


def choices(family, cap=None, minimal=False):
    """
    Every set formed by picking one tuple from each member of ``family``.

    Picks from different members may coincide, so selections can be smaller
    than the family. The empty family has exactly one selection, the empty
    set. With ``minimal=True`` only the subset-minimal selections are
    produced; non-minimal partial selections are pruned as they appear, since
    every completion of a pruned partial contains a completion of a kept one.
    """
    cap = resolve_cap(cap)
    selections = {frozenset()}
    for member in family:
        guard('choice selections', len(selections) * max(len(member), 1), cap)
        step = set()
        for selection in selections:
            if minimal and not selection.isdisjoint(member):
                step.add(selection)
                continue
            for t in member:
                step.add(selection | {t})
        selections = minimal_sets(step) if minimal else step
        if not selections:
            break
    return frozenset(selections)


def transversal_component(distinct_sets, cap=None, minimal=False):
    """
    All sets ``{t_1..t_g}`` with ``t_i`` drawn from the i-th distinct set.

    An empty member blocks every pick, and so does an empty family: the
    resulting component asserts nothing.
    """
    distinct = set(frozenset(s) for s in distinct_sets)
    if not distinct or any(not s for s in distinct):
        return frozenset()
    ordered = sorted(distinct, key=lambda s: (len(s), sorted(t.key for t in s)))
    return choices(ordered, cap, minimal=minimal)


def pairwise(combine, left, right, cap=None):
    """The distinct results of ``combine(a, b)`` over ``left x right``."""
    guard('pairwise combinations', len(left) * len(right), resolve_cap(cap))
    return frozenset(combine(a, b) for a in left for b in right)
