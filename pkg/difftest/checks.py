"""
Executable checks of the information-content laws.

Each check runs ``cfg.trials`` independent trials. A trial compares the
information content of an operator's result with the lifted image of the
matching disjunctive-level operator, both brought to the ``closure`` normal
form. Trials that hit the combinatorial cap are counted as skipped.

The reduction check draws normalized relations that still carry their
redundancies; the operator checks draw reduced ones.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

from algebra.dp import dp_intersect, dp_join, dp_project, dp_select, dp_union
from algebra.gdp import (
    g_intersect,
    g_join,
    g_norm,
    g_project,
    g_reduce,
    g_rep,
    g_select,
    g_union,
    lift_operator,
)
from querylang.printer import format_formula
from relations.canonical import canonical_family
from relations.exceptions import AlgebraError, CombinatorialLimit

from .generators import (
    gen_definite_relation,
    gen_formula,
    gen_join_schemes,
    gen_normalized_relation,
    gen_projection,
    gen_relation,
    gen_scheme,
)
from .oracle import (
    classical_intersect,
    classical_join,
    classical_project,
    classical_select,
    classical_union,
    closure,
    definite_tuples,
    flatten_worlds,
)

logger = logging.getLogger(__name__)


@dataclass
class Violation:
    trial: int
    operator: str
    seed: str
    inputs: list
    detail: str
    only_left: list = field(default_factory=list)
    only_right: list = field(default_factory=list)


@dataclass
class TrialOutcome:
    trial: int
    skipped: bool = False
    violations: list = field(default_factory=list)
    closure_only: list = field(default_factory=list)
    literal_union_agrees: bool | None = None


@dataclass
class CheckReport:
    theorem: str
    trials: int
    completed: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    closure_only: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    @classmethod
    def aggregate(cls, theorem, trials, outcomes):
        report = cls(theorem, trials)
        literal = []
        for outcome in sorted(outcomes, key=lambda o: o.trial):
            if outcome.skipped:
                report.skipped += 1
                continue
            report.completed += 1
            report.violations.extend(outcome.violations)
            report.closure_only.extend(outcome.closure_only)
            if outcome.literal_union_agrees is not None:
                literal.append(outcome.literal_union_agrees)
        if literal:
            report.notes.append(
                f"intersection compared with the lifted union instead: "
                f"agreed in {sum(literal)} of {len(literal)} trial(s)"
            )
        return report


def describe(relation):
    """One-line rendering used in reports."""
    positive = ' '.join(repr(item) for item in relation.positive) or '-'
    negative = ' '.join(repr(item) for item in relation.negative) or '-'
    return f"{relation.scheme.name}[{','.join(relation.scheme.attribute_names)}] + {positive} ; - {negative}"


def _seed(cfg, trial):
    return f"{cfg.seed}:{trial}"


def _compare(outcome, cfg, operator, inputs, left, right,
             detail="information content of the result differs from the lifted operator image"):
    """Record a violation or a closure-only mismatch between two sets of disjunctive relations."""
    left_closure, right_closure = closure(left), closure(right)
    if left_closure == right_closure:
        if canonical_family(left) != canonical_family(right):
            outcome.closure_only.append(f"trial {outcome.trial} [{operator}]")
        return True
    violation = Violation(
        outcome.trial,
        operator,
        _seed(cfg, outcome.trial),
        [describe(r) if not isinstance(r, str) else r for r in inputs],
        detail,
        [describe(m) for m in left_closure if m not in right_closure],
        [describe(m) for m in right_closure if m not in left_closure],
    )
    logger.warning("violation in trial %d [%s] seed %s", outcome.trial, operator, violation.seed)
    outcome.violations.append(violation)
    return False


def _check_normalized(outcome, cfg, operator, inputs, result):
    if g_norm(result) != result:
        outcome.violations.append(Violation(
            outcome.trial,
            operator,
            _seed(cfg, outcome.trial),
            [describe(r) if not isinstance(r, str) else r for r in inputs],
            f"result is not normalized: {describe(result)}",
        ))


def _run_trial(body, cfg, trial):
    outcome = TrialOutcome(trial)
    try:
        body(outcome, cfg, cfg.rng(trial))
    except CombinatorialLimit as exc:
        logger.info("trial %d skipped: %s", trial, exc)
        return TrialOutcome(trial, skipped=True)
    except AlgebraError as exc:
        logger.warning("trial %d raised %s", trial, exc)
        outcome.violations.append(Violation(
            trial, 'error', _seed(cfg, trial), [], f"{type(exc).__name__}: {exc}",
        ))
    return outcome


def _reduction_trial(outcome, cfg, rng):
    relation = gen_normalized_relation(cfg, gen_scheme(rng, cfg), rng)
    reduced = g_reduce(relation)
    _compare(
        outcome, cfg, 'reduce', [relation],
        g_rep(reduced, cfg.cap), g_rep(relation, cfg.cap),
        "information content changes under reduction",
    )
    if flatten_worlds(reduced, cfg.cap) != flatten_worlds(relation, cfg.cap):
        outcome.violations.append(Violation(
            outcome.trial, 'reduce:worlds', _seed(cfg, outcome.trial), [describe(relation)],
            "definite information content changes under reduction",
        ))


def _set_operator_trial(outcome, cfg, rng):
    scheme = gen_scheme(rng, cfg)
    left, right = gen_relation(cfg, scheme, rng), gen_relation(cfg, scheme, rng)
    left_rep, right_rep = g_rep(left, cfg.cap), g_rep(right, cfg.cap)
    for name, operator, lifted in (
        ('union', g_union, dp_union),
        ('intersect', g_intersect, dp_intersect),
    ):
        result = operator(left, right, cfg.cap)
        _check_normalized(outcome, cfg, name, [left, right], result)
        rep = g_rep(result, cfg.cap)
        image = lift_operator(partial(lifted, cap=cfg.cap), left_rep, right_rep, cap=cfg.cap)
        _compare(outcome, cfg, name, [left, right], rep, image)
        if name == 'intersect':
            union_image = lift_operator(partial(dp_union, cap=cfg.cap), left_rep, right_rep, cap=cfg.cap)
            outcome.literal_union_agrees = closure(rep) == closure(union_image)


def _select_project_join_trial(outcome, cfg, rng):
    scheme = gen_scheme(rng, cfg)
    relation = gen_relation(cfg, scheme, rng)
    rep = g_rep(relation, cfg.cap)

    formula = gen_formula(rng, scheme)
    inputs = [relation, f"formula {format_formula(formula)}"]
    result = g_select(relation, formula, cfg.cap)
    _check_normalized(outcome, cfg, 'select', inputs, result)
    image = lift_operator(partial(dp_select, formula=formula, cap=cfg.cap), rep, cap=cfg.cap)
    _compare(outcome, cfg, 'select', inputs, g_rep(result, cfg.cap), image)

    attributes = gen_projection(rng, scheme)
    inputs = [relation, f"attributes {','.join(attributes)}"]
    result = g_project(relation, attributes, cfg.cap)
    _check_normalized(outcome, cfg, 'project', inputs, result)
    image = lift_operator(partial(dp_project, attributes=attributes, cap=cfg.cap), rep, cap=cfg.cap)
    _compare(outcome, cfg, 'project', inputs, g_rep(result, cfg.cap), image)

    left_scheme, right_scheme = gen_join_schemes(rng, cfg)
    left, right = gen_relation(cfg, left_scheme, rng), gen_relation(cfg, right_scheme, rng)
    result = g_join(left, right, cfg.cap)
    _check_normalized(outcome, cfg, 'join', [left, right], result)
    image = lift_operator(
        partial(dp_join, cap=cfg.cap), g_rep(left, cfg.cap), g_rep(right, cfg.cap), cap=cfg.cap,
    )
    _compare(outcome, cfg, 'join', [left, right], g_rep(result, cfg.cap), image)


def _classical_trial(outcome, cfg, rng):
    scheme = gen_scheme(rng, cfg)
    left, right = gen_definite_relation(rng, cfg, scheme), gen_definite_relation(rng, cfg, scheme)
    left_tuples, right_tuples = definite_tuples(left.positive), definite_tuples(right.positive)
    formula = gen_formula(rng, scheme)
    attributes = gen_projection(rng, scheme)
    target = scheme.restrict(attributes)
    join_left, join_right = gen_join_schemes(rng, cfg)
    join_left = gen_definite_relation(rng, cfg, join_left)
    join_right = gen_definite_relation(rng, cfg, join_right)
    join_target = join_left.scheme.join(join_right.scheme)

    cases = (
        ('union', [left, right], g_union(left, right, cfg.cap),
         classical_union(left_tuples, right_tuples)),
        ('intersect', [left, right], g_intersect(left, right, cfg.cap),
         classical_intersect(left_tuples, right_tuples)),
        ('select', [left, f"formula {format_formula(formula)}"], g_select(left, formula, cfg.cap),
         classical_select(left_tuples, formula, scheme)),
        ('project', [left, f"attributes {','.join(attributes)}"], g_project(left, attributes, cfg.cap),
         classical_project(left_tuples, target)),
        ('join', [join_left, join_right], g_join(join_left, join_right, cfg.cap),
         classical_join(definite_tuples(join_left.positive), definite_tuples(join_right.positive), join_target)),
    )
    for name, inputs, result, expected in cases:
        singletons = all(len(w) == 1 for w in result.positive)
        if not singletons or definite_tuples(result.positive) != expected:
            outcome.violations.append(Violation(
                outcome.trial,
                name,
                _seed(cfg, outcome.trial),
                [describe(r) if not isinstance(r, str) else r for r in inputs],
                f"positive component {describe(result)} is not the classical result",
                [],
                [repr(t) for t in sorted(expected)],
            ))


TRIALS = {
    '1': _reduction_trial,
    '2': _set_operator_trial,
    '3': _select_project_join_trial,
    'classical': _classical_trial,
}


def replay(theorem, cfg, trial):
    """Run one trial again; the outcome is identical to the one inside a full check."""
    return _run_trial(TRIALS[theorem], cfg, trial)


def run_check(theorem, cfg, workers=1):
    runner = partial(_run_trial, TRIALS[theorem], cfg)
    trials = range(cfg.trials)
    if workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(runner, trials, chunksize=max(1, cfg.trials // (workers * 4))))
    else:
        outcomes = [runner(trial) for trial in trials]
    report = CheckReport.aggregate(theorem, cfg.trials, outcomes)
    logger.info(
        "theorem %s: %d completed, %d skipped, %d violation(s)",
        theorem, report.completed, report.skipped, len(report.violations),
    )
    return report


def check_theorem1(cfg, workers=1):
    return run_check('1', cfg, workers)


def check_theorem2(cfg, workers=1):
    return run_check('2', cfg, workers)


def check_theorem3(cfg, workers=1):
    return run_check('3', cfg, workers)


def classical_degeneration_check(cfg, workers=1):
    return run_check('classical', cfg, workers)
