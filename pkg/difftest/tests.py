from pathlib import Path
from unittest import mock

from django.test import SimpleTestCase

from algebra.dp import dp_norm, dp_rep
from algebra.gdp import g_intersect, g_join, g_norm, g_project, g_reduce, g_rep, g_select, g_union
from querylang.formulas import Atom, Attr, Const, scope_formula
from querylang.parser import parse_formula
from relations.exceptions import ValidationError
from relations.models import GenDisjParaRelation, Scheme
from relations.testing import LETTERS, SUPPLY, disj, gen, para, tuples
from storage.dbfile import load_db

from .checks import (
    CheckReport,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    classical_degeneration_check,
    replay,
    run_check,
)
from .generators import (
    GenConfig,
    gen_definite_relation,
    gen_formula,
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
    disjunctive_members,
    flatten_worlds,
)

ABCD = Scheme.of('r', X=list('abcd'))
SHIPMENTS = frozenset(tuples(SUPPLY, 's1,p1 s1,p3 s2,p2 s3,p4'))
EXAMPLE2 = gen(LETTERS, 'a b|c c|d a|e f|g', 'b c|e i d|e|f')
EXAMPLE3 = gen(LETTERS, 'b|e c|d e|g', 'b c|e c|d|g')
FIXTURE = Path(__file__).resolve().parent.parent / 'storage' / 'fixtures' / 'supply.gdp'


def drop_first_positive(relation):
    return GenDisjParaRelation(relation.scheme, relation.positive[1:], relation.negative)


class GeneratorTests(SimpleTestCase):
    def test_no_tuple_sets(self):
        cfg = GenConfig(max_sets=0)
        self.assertEqual(gen_relation(cfg, ABCD), gen(ABCD))

    def test_same_seed_same_relation(self):
        cfg = GenConfig(seed=7)
        self.assertEqual(gen_relation(cfg, LETTERS), gen_relation(cfg, LETTERS))

    def test_trial_rng_is_reproducible(self):
        cfg = GenConfig()
        first = gen_scheme(cfg.rng(5), cfg)
        self.assertEqual(gen_scheme(cfg.rng(5), cfg), first)

    def test_bounds_are_validated(self):
        with self.assertRaises(ValidationError):
            GenConfig(max_sets=9)
        with self.assertRaises(ValidationError):
            GenConfig(max_domain=1)
        with self.assertRaises(ValidationError):
            GenConfig(trials=-1)

    def test_relations_are_normalized_and_reduced(self):
        cfg = GenConfig()
        for trial in range(50):
            rng = cfg.rng(trial)
            relation = gen_relation(cfg, gen_scheme(rng, cfg), rng)
            self.assertEqual(g_norm(relation), relation)
            self.assertEqual(g_reduce(relation), relation)

    def test_formulas_are_scoped(self):
        cfg = GenConfig()
        for trial in range(50):
            rng = cfg.rng(trial)
            scheme = gen_scheme(rng, cfg)
            formula = gen_formula(rng, scheme)
            self.assertEqual(scope_formula(formula, scheme), formula)
            self.assertTrue(set(gen_projection(rng, scheme)) <= set(scheme.attribute_names))

    def test_definite_relations(self):
        cfg = GenConfig()
        for trial in range(20):
            rng = cfg.rng(trial)
            relation = gen_definite_relation(rng, cfg, gen_scheme(rng, cfg))
            self.assertTrue(relation.is_definite())
            self.assertFalse(definite_tuples(relation.positive) & definite_tuples(relation.negative))

    def test_normalized_relations(self):
        cfg = GenConfig()
        for trial in range(50):
            rng = cfg.rng(trial)
            relation = gen_normalized_relation(cfg, gen_scheme(rng, cfg), rng)
            self.assertEqual(g_norm(relation), relation)

    def test_singleton_negatives(self):
        cfg = GenConfig(singleton_negatives=True)
        for trial in range(50):
            rng = cfg.rng(trial)
            relation = gen_normalized_relation(cfg, gen_scheme(rng, cfg), rng)
            self.assertTrue(all(len(u) == 1 for u in relation.negative))


class OracleTests(SimpleTestCase):
    def test_definite_relation_has_one_world(self):
        self.assertEqual(flatten_worlds(gen(LETTERS, 'a b', 'c')), {para(LETTERS, 'a b', 'c')})

    def test_example3(self):
        self.assertEqual(flatten_worlds(EXAMPLE3), {para(LETTERS, 'd e', 'b c')})

    def test_wholly_negated_member_is_dropped(self):
        relation = gen(ABCD, 'a|b', 'a|c b')
        self.assertEqual(disjunctive_members(relation), {disj(ABCD, 'a|b', 'b c')})
        self.assertEqual(flatten_worlds(relation), {para(ABCD, 'a', 'b c')})

    def test_members_agree_with_information_content(self):
        self.assertEqual(disjunctive_members(EXAMPLE3), g_rep(EXAMPLE3))

    def test_worlds_compose_member_content(self):
        for relation in (EXAMPLE2, EXAMPLE3):
            composed = frozenset().union(*(dp_rep(dp_norm(m)) for m in g_rep(relation)))
            self.assertEqual(flatten_worlds(relation), composed)

    def test_empty_relation(self):
        self.assertEqual(flatten_worlds(gen(ABCD)), {para(ABCD)})

    def test_closure(self):
        members = [
            disj(ABCD, 'a', 'a'),
            disj(ABCD, 'a|b', 'b'),
            disj(ABCD, 'a', 'b'),
            disj(ABCD, 'a', 'b c'),
        ]
        self.assertEqual(closure(members), (disj(ABCD, 'a', 'b'),))

    def test_reduction_keeps_information_content_of_example2(self):
        reduced = g_reduce(EXAMPLE2)
        self.assertEqual(closure(g_rep(EXAMPLE2)), closure(g_rep(reduced)))
        self.assertEqual(flatten_worlds(EXAMPLE2), flatten_worlds(reduced))

    def test_reduction_can_resolve_an_inconsistent_relation(self):
        relation = gen(LETTERS, 'a b|c', 'c a|b')
        reduced = g_reduce(relation)
        self.assertEqual(g_norm(relation), relation)
        self.assertEqual(reduced, gen(LETTERS, 'a', 'c'))
        self.assertEqual(closure(g_rep(relation)), ())
        self.assertEqual(closure(g_rep(reduced)), (disj(LETTERS, 'a', 'c'),))
        self.assertEqual(flatten_worlds(relation), frozenset())
        self.assertEqual(flatten_worlds(reduced), {para(LETTERS, 'a', 'c')})

    def test_classical_select_on_shipments(self):
        formula = Atom(Attr('PNUM'), Const('p1'))
        self.assertEqual(classical_select(SHIPMENTS, formula, SUPPLY), frozenset(tuples(SUPPLY, 's1,p1')))

    def test_classical_project_on_shipments(self):
        target = SUPPLY.restrict(['SNUM'])
        self.assertEqual(classical_project(SHIPMENTS, target), frozenset(tuples(target, 's1 s2 s3')))

    def test_classical_join(self):
        parts = Scheme.of('parts', PNUM=['p1', 'p2', 'p3', 'p4'], PNAME=['nut', 'cam'])
        target = SUPPLY.join(parts)
        joined = classical_join(SHIPMENTS, frozenset(tuples(parts, 'p1,nut p2,cam')), target)
        self.assertEqual(joined, frozenset(tuples(target, 's1,p1,nut s2,p2,cam')))


class CheckTests(SimpleTestCase):
    def test_reduction_law_with_singleton_negatives(self):
        report = check_theorem1(GenConfig(trials=40, singleton_negatives=True))
        self.assertTrue(report.ok)
        self.assertEqual(report.completed + report.skipped, 40)

    def test_reduction_check_runs_on_unreduced_inputs(self):
        cfg = GenConfig(trials=40)
        unreduced = 0
        for trial in range(cfg.trials):
            rng = cfg.rng(trial)
            relation = gen_normalized_relation(cfg, gen_scheme(rng, cfg), rng)
            unreduced += g_reduce(relation) != relation
        self.assertGreater(unreduced, 0)

    def test_broken_reduction_is_caught(self):
        with mock.patch('difftest.checks.g_reduce', drop_first_positive):
            report = check_theorem1(GenConfig(trials=40, singleton_negatives=True))
        self.assertFalse(report.ok)
        self.assertIn('reduce', {v.operator for v in report.violations})

    def test_operator_laws_with_singleton_negatives(self):
        cfg = GenConfig(trials=40, singleton_negatives=True)
        for report in (check_theorem2(cfg), check_theorem3(cfg)):
            self.assertEqual(report.violations, [])
            self.assertGreater(report.completed, 0)

    def test_broken_union_is_caught(self):
        with mock.patch('difftest.checks.g_union', g_intersect):
            report = check_theorem2(GenConfig(trials=20, singleton_negatives=True))
        self.assertIn('union', {v.operator for v in report.violations})

    def test_broken_select_is_caught(self):
        def ignore_formula(relation, formula, cap=None):
            return g_reduce(relation)

        with mock.patch('difftest.checks.g_select', ignore_formula):
            report = check_theorem3(GenConfig(trials=20, singleton_negatives=True))
        self.assertEqual({v.operator for v in report.violations}, {'select'})

    def test_classical_degeneration(self):
        report = classical_degeneration_check(GenConfig(trials=40))
        self.assertTrue(report.ok)

    def test_results_stay_normalized(self):
        cfg = GenConfig(trials=20)
        for report in (check_theorem2(cfg), check_theorem3(cfg)):
            self.assertFalse([v for v in report.violations if v.detail.startswith('result is not normalized')])
            self.assertFalse([v for v in report.violations if v.operator == 'error'])

    def test_intersection_note(self):
        report = check_theorem2(GenConfig(trials=5))
        self.assertTrue(any('lifted union' in note for note in report.notes))

    def test_same_seed_same_report(self):
        cfg = GenConfig(seed=3, trials=10)
        self.assertEqual(check_theorem2(cfg), check_theorem2(cfg))

    def test_replay_matches_full_run(self):
        cfg = GenConfig(seed=11, trials=8)
        report = run_check('3', cfg)
        replayed = [replay('3', cfg, trial) for trial in range(cfg.trials)]
        self.assertEqual(CheckReport.aggregate('3', cfg.trials, replayed), report)

    def test_no_trials(self):
        report = check_theorem1(GenConfig(trials=0))
        self.assertEqual((report.completed, report.skipped, report.violations), (0, 0, []))

    def test_cap_skips_trials(self):
        report = check_theorem3(GenConfig(trials=5, cap=1))
        self.assertEqual(report.skipped, 5)
        self.assertTrue(report.ok)

    def test_mutated_operator_is_caught(self):
        with mock.patch('difftest.checks.g_union', g_intersect):
            report = classical_degeneration_check(GenConfig(trials=20))
        self.assertFalse(report.ok)
        self.assertIn('union', {v.operator for v in report.violations})
        self.assertTrue(all(v.seed.startswith('42:') for v in report.violations))

    def test_workers_give_the_same_report(self):
        cfg = GenConfig(trials=6)
        self.assertEqual(run_check('classical', cfg, workers=2), run_check('classical', cfg))


class FixtureDegenerationTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        db = load_db(FIXTURE)
        cls.shipments = db.relation('shipments')
        cls.parts = db.relation('parts')
        cls.scheme = cls.shipments.scheme

    def select(self, text):
        return g_select(self.shipments, parse_formula(text, self.scheme))

    def assertClassical(self, result, expected):
        self.assertTrue(all(len(w) == 1 for w in result.positive))
        self.assertEqual(definite_tuples(result.positive), expected)

    def test_shipments_are_definite(self):
        self.assertTrue(self.shipments.is_definite())
        self.assertEqual(definite_tuples(self.shipments.positive), SHIPMENTS)

    def test_select(self):
        formula = parse_formula('PNUM=p1', self.scheme)
        expected = classical_select(SHIPMENTS, formula, self.scheme)
        self.assertEqual(expected, frozenset(tuples(SUPPLY, 's1,p1')))
        self.assertClassical(self.select('PNUM=p1'), expected)

    def test_project(self):
        target = self.scheme.restrict(['SNUM'])
        expected = classical_project(SHIPMENTS, target)
        self.assertEqual(expected, frozenset(tuples(target, 's1 s2 s3')))
        self.assertClassical(g_project(self.shipments, ['SNUM']), expected)

    def test_union(self):
        by_p1, by_s2 = self.select('PNUM=p1'), self.select('SNUM=s2')
        expected = classical_union(definite_tuples(by_p1.positive), definite_tuples(by_s2.positive))
        self.assertEqual(expected, frozenset(tuples(SUPPLY, 's1,p1 s2,p2')))
        self.assertClassical(g_union(by_p1, by_s2), expected)

    def test_intersect(self):
        by_s1 = self.select('SNUM=s1')
        expected = classical_intersect(definite_tuples(by_s1.positive), SHIPMENTS)
        self.assertEqual(expected, frozenset(tuples(SUPPLY, 's1,p1 s1,p3')))
        self.assertClassical(g_intersect(by_s1, self.shipments), expected)

    def test_join(self):
        target = self.scheme.join(self.parts.scheme)
        expected = classical_join(SHIPMENTS, definite_tuples(self.parts.positive), target)
        self.assertEqual(expected, frozenset(tuples(target, 's1,p1,nut s1,p3,bolt s2,p2,cam s3,p4,wheel')))
        self.assertClassical(g_join(self.shipments, self.parts), expected)
