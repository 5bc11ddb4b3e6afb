from functools import partial

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from querylang.formulas import FALSE, TRUE, Atom, Attr, Const
from relations.canonical import canonical_family
from relations.exceptions import CombinatorialLimit, InconsistentInput, SchemeMismatch
from relations.models import DisjParaRelation, GenDisjParaRelation, Scheme, Tuple, TupleSet
from relations.testing import LETTERS, SUPPLY, disj, gen, para, tup, tuple_sets, tuples
from relations.tuplespace import enumerate_tuple_space

from .choices import ChoiceFamily, choices, minimal_sets, transversal_component
from .dp import (
    dp_expand,
    dp_intersect,
    dp_join,
    dp_norm,
    dp_normrep,
    dp_project,
    dp_reduce,
    dp_reducerep,
    dp_rep,
    dp_select,
    dp_union,
)
from .gdp import (
    g_complement,
    g_expand,
    g_intersect,
    g_join,
    g_norm,
    g_normrep,
    g_project,
    g_reduce,
    g_reducerep,
    g_rep,
    g_select,
    g_union,
    is_g_normalized,
    lift_operator,
    redundancies,
)

ABCD = Scheme.of('r', X=list('abcd'))
AB = Scheme.of('ab', A=['a1', 'a2'], B=['b1', 'b2'])
BC = Scheme.of('bc', B=['b1', 'b2'], C=['c1'])
ABC = AB.join(BC)

EXAMPLE2 = gen(LETTERS, 'a b|c c|d a|e f|g', 'b c|e i d|e|f')
EXAMPLE2_REDUCED = gen(LETTERS, 'a c f|g', 'b e i')
EXAMPLE3 = gen(LETTERS, 'b|e c|d e|g', 'b c|e c|d|g')
SUPPLY_RELATION = gen(SUPPLY, 's1,p1 s2,p1|s2,p2 s3,p3|s3,p4', 's1,p2 s1,p3 s2,p3|s2,p4')


def letters(text):
    return frozenset(tuples(LETTERS, text))


def x_equals(value):
    return Atom(Attr('X'), Const(value))


SMALL = Scheme.of('small', X=list('abcde'))
small_sets = st.lists(
    st.frozensets(st.sampled_from('abcde'), min_size=1, max_size=3),
    max_size=4,
)


def _small_sets(sets):
    return [TupleSet(Tuple(SMALL, (v,)) for v in s) for s in sets]


small_generalized = st.builds(
    lambda pos, neg: GenDisjParaRelation(SMALL, _small_sets(pos), _small_sets(neg)),
    small_sets,
    small_sets,
)
small_disjunctive = st.builds(
    lambda pos, neg: DisjParaRelation(SMALL, _small_sets(pos), [Tuple(SMALL, (v,)) for v in neg]),
    small_sets,
    st.frozensets(st.sampled_from('abcde'), max_size=3),
)


class ChoiceTests(SimpleTestCase):
    def test_product_of_members(self):
        family = ChoiceFamily([letters('a b'), letters('c')])
        self.assertEqual(choices(family), {letters('a c'), letters('b c')})

    def test_coinciding_picks_collapse(self):
        self.assertEqual(choices([letters('a'), letters('a')]), {letters('a')})

    def test_negatives_of_example3(self):
        self.assertEqual(
            choices([letters('b'), letters('c e'), letters('c d g')]),
            {
                letters('b c'), letters('b c d'), letters('b c g'),
                letters('b c e'), letters('b d e'), letters('b e g'),
            },
        )

    def test_minimal_selections_only(self):
        selections = choices([letters('b'), letters('c e'), letters('c d g')], minimal=True)
        self.assertEqual(selections, {letters('b c'), letters('b d e'), letters('b e g')})

    def test_empty_family_has_one_empty_selection(self):
        self.assertEqual(choices([]), {frozenset()})

    def test_cap(self):
        with self.assertRaises(CombinatorialLimit):
            choices([letters('a b c')] * 4, cap=10)

    def test_minimal_sets(self):
        self.assertEqual(
            minimal_sets([letters('a b'), letters('a'), letters('c d'), letters('a')]),
            {letters('a'), letters('c d')},
        )


class TransversalTests(SimpleTestCase):
    def test_single_singleton(self):
        self.assertEqual(transversal_component({letters('b')}), {letters('b')})

    def test_two_distinct_sets(self):
        self.assertEqual(
            transversal_component({letters('a b'), letters('c')}),
            {letters('a c'), letters('b c')},
        )

    def test_empty_member_blocks_every_pick(self):
        self.assertEqual(transversal_component({frozenset(), letters('b')}), frozenset())

    def test_empty_family_asserts_nothing(self):
        self.assertEqual(transversal_component(set()), frozenset())


class DpNormalizationTests(SimpleTestCase):
    def test_partially_negated_set_is_kept(self):
        relation = disj(ABCD, 'a|c', 'c')
        self.assertEqual(dp_norm(relation), relation)

    def test_wholly_negated_set_takes_its_witnesses(self):
        self.assertEqual(dp_norm(disj(LETTERS, 'b|c', 'b c e')), disj(LETTERS, '', 'e'))

    def test_no_negatives(self):
        relation = disj(ABCD, 'a|b c')
        self.assertEqual(dp_norm(relation), relation)

    def test_reduce_removes_negated_tuples(self):
        self.assertEqual(dp_reduce(disj(ABCD, 'a|b c', 'b')), disj(ABCD, 'a c', 'b'))

    def test_reduce_keeps_minimal_sets(self):
        self.assertEqual(dp_reduce(disj(ABCD, 'a a|b')), disj(ABCD, 'a'))

    def test_reduce_is_idempotent_on_reduced(self):
        relation = disj(ABCD, 'a c|d', 'b')
        self.assertEqual(dp_reduce(relation), relation)

    def test_reduce_rejects_unnormalized(self):
        with self.assertRaises(InconsistentInput):
            dp_reduce(disj(ABCD, 'a|b', 'a b'))


class DpRepresentationTests(SimpleTestCase):
    def test_normrep(self):
        self.assertEqual(dp_normrep({para(ABCD, 'a', 'a')}), frozenset())
        self.assertEqual(
            dp_normrep({para(ABCD, 'a', 'c'), para(ABCD, 'c', 'c')}),
            {para(ABCD, 'a', 'c')},
        )
        self.assertEqual(dp_normrep(set()), frozenset())

    def test_reducerep(self):
        self.assertEqual(
            dp_reducerep({para(LETTERS, 'b c', 'a'), para(LETTERS, 'b c g', 'a')}),
            {para(LETTERS, 'b c', 'a')},
        )
        antichain = {para(ABCD, 'a', 'c'), para(ABCD, 'b', 'c')}
        self.assertEqual(dp_reducerep(antichain), antichain)
        self.assertEqual(dp_reducerep([para(ABCD, 'a'), para(ABCD, 'a')]), {para(ABCD, 'a')})

    def test_rep_of_one_disjunction(self):
        self.assertEqual(
            dp_rep(disj(ABCD, 'a|b', 'c')),
            {para(ABCD, 'a', 'c'), para(ABCD, 'b', 'c')},
        )

    def test_rep_drops_inconsistent_choice(self):
        self.assertEqual(dp_rep(disj(ABCD, 'a|c', 'c')), {para(ABCD, 'a', 'c')})

    def test_rep_without_positive_sets(self):
        self.assertEqual(dp_rep(disj(ABCD, '', 'c')), {para(ABCD, '', 'c')})

    def test_rep_requires_normalized_input(self):
        with self.assertRaises(InconsistentInput):
            dp_rep(disj(ABCD, 'a', 'a'))

    def test_expand_keeps_non_minimal_choices(self):
        self.assertEqual(len(dp_expand(disj(ABCD, 'a|b b|c'))), 4)

    @given(small_disjunctive)
    @settings(max_examples=100, deadline=None)
    def test_rep_matches_full_expansion(self, relation):
        relation = dp_norm(relation)
        self.assertEqual(dp_rep(relation), dp_reducerep(dp_normrep(dp_expand(relation))))

    @given(small_disjunctive)
    @settings(max_examples=100, deadline=None)
    def test_reduction_keeps_information_content(self, relation):
        relation = dp_norm(relation)
        self.assertEqual(dp_rep(dp_reduce(relation)), dp_rep(relation))


class DpOperatorTests(SimpleTestCase):
    def test_union(self):
        self.assertEqual(
            dp_union(disj(ABCD, 'a', 'b c'), disj(ABCD, 'b', 'c d')),
            disj(ABCD, 'a b', 'c'),
        )

    def test_union_with_empty_relation_drops_negatives(self):
        relation = disj(ABCD, 'a|b c', 'd')
        self.assertEqual(dp_union(relation, disj(ABCD)), disj(ABCD, 'a|b c'))

    def test_union_with_itself(self):
        relation = disj(ABCD, 'a|b c', 'd')
        self.assertEqual(dp_union(relation, relation), dp_reduce(relation))

    def test_union_requires_same_scheme(self):
        with self.assertRaises(SchemeMismatch):
            dp_union(disj(ABCD, 'a'), disj(LETTERS, 'a'))

    def test_intersect_blocked_by_empty_choice_intersection(self):
        self.assertEqual(dp_intersect(disj(ABCD, 'a|b'), disj(ABCD, 'b|c')), disj(ABCD))

    def test_intersect_definite_fact(self):
        self.assertEqual(dp_intersect(disj(ABCD, 'b'), disj(ABCD, 'b')), disj(ABCD, 'b'))

    def test_intersect_unites_negatives(self):
        self.assertEqual(dp_intersect(disj(ABCD, '', 'a'), disj(ABCD, '', 'b')), disj(ABCD, '', 'a b'))

    def test_select(self):
        self.assertEqual(
            dp_select(disj(ABCD, 'a|b', 'c'), x_equals('a')),
            disj(ABCD, '', 'b c d'),
        )

    def test_select_true_and_false(self):
        relation = disj(ABCD, 'a|b', 'c')
        self.assertEqual(dp_select(relation, TRUE), relation)
        self.assertEqual(dp_select(relation, FALSE), disj(ABCD, '', 'a b c d'))

    def test_project(self):
        relation = disj(AB, 'a2,b1', 'a1,b1 a1,b2')
        target = AB.restrict(['A'])
        self.assertEqual(dp_project(relation, ['A']), disj(target, 'a2', 'a1'))

    def test_project_without_covered_extension(self):
        relation = disj(AB, 'a2,b1', 'a1,b1')
        self.assertEqual(dp_project(relation, ['A']).negative, ())

    def test_project_onto_whole_scheme(self):
        relation = disj(AB, 'a2,b1|a2,b2', 'a1,b1')
        self.assertEqual(dp_project(relation, ['A', 'B']), relation)

    def test_join_of_definite_relations(self):
        self.assertEqual(
            dp_join(disj(AB, 'a1,b1'), disj(BC, 'b1,c1')),
            disj(ABC, 'a1,b1,c1'),
        )

    def test_join_blocked_by_empty_choice_join(self):
        self.assertEqual(dp_join(disj(AB, 'a1,b1|a1,b2'), disj(BC, 'b1,c1')).positive, ())

    def test_join_extends_negatives(self):
        result = dp_join(disj(AB, '', 'a1,b1'), disj(BC))
        self.assertIn(tup(ABC, 'a1,b1,c1'), result.negative)


class GNormTests(SimpleTestCase):
    def test_negative_set_covered_by_positive_singletons(self):
        self.assertEqual(g_norm(gen(ABCD, 'b c a|d', 'b|c')), gen(ABCD, 'a|d'))

    def test_positive_set_covered_by_negative_singletons(self):
        self.assertEqual(g_norm(gen(LETTERS, 'b|c', 'b c e')), gen(LETTERS, '', 'e'))

    def test_consistent_supply_is_unchanged(self):
        self.assertEqual(g_norm(SUPPLY_RELATION), SUPPLY_RELATION)
        self.assertTrue(is_g_normalized(SUPPLY_RELATION))

    @given(small_generalized)
    @settings(max_examples=100, deadline=None)
    def test_idempotent(self, relation):
        once = g_norm(relation)
        self.assertEqual(g_norm(once), once)


class GReduceTests(SimpleTestCase):
    def test_example2(self):
        self.assertEqual(g_reduce(EXAMPLE2), EXAMPLE2_REDUCED)

    def test_antichains_without_cross_singletons(self):
        relation = gen(ABCD, 'a|b c|d', 'a|c')
        self.assertEqual(g_reduce(relation), relation)

    def test_cascade_resolves_late_inconsistency(self):
        self.assertEqual(g_reduce(gen(ABCD, 'b|c d', 'b c|d')), gen(ABCD, 'd', 'b'))

    def test_logs_rounds(self):
        with self.assertLogs('algebra.gdp', level='DEBUG') as logs:
            g_reduce(EXAMPLE2)
        self.assertIn('fixpoint', logs.output[0])

    @given(small_generalized)
    @settings(max_examples=200, deadline=None)
    def test_result_is_reduced(self, relation):
        reduced = g_reduce(relation)
        self.assertEqual(g_reduce(reduced), reduced)
        self.assertEqual(g_norm(reduced), reduced)
        for side, opposite in ((reduced.positive, reduced.negative), (reduced.negative, reduced.positive)):
            singletons = frozenset(t for s in opposite if len(s) == 1 for t in s)
            self.assertEqual(minimal_sets(side), frozenset(side))
            for s in side:
                if len(s) > 1:
                    self.assertFalse(s & singletons)


class GRepresentationTests(SimpleTestCase):
    def test_example3_step_by_step(self):
        expanded = g_expand(EXAMPLE3)
        self.assertEqual(len(expanded), 6)
        normalized = g_normrep(expanded)
        self.assertEqual({m.negative_set for m in normalized}, {letters('b c'), letters('b c g')})
        self.assertEqual(g_reducerep(normalized), {disj(LETTERS, 'b|e c|d e|g', 'b c')})

    def test_example3(self):
        self.assertEqual(g_rep(EXAMPLE3), {disj(LETTERS, 'b|e c|d e|g', 'b c')})

    def test_normrep_drops_wholly_negated_positive_set(self):
        member = disj(LETTERS, 'b|e', 'b d e')
        self.assertEqual(g_normrep({member}), frozenset())
        self.assertEqual(g_normrep(set()), frozenset())

    def test_reducerep_collapses_duplicates(self):
        member = disj(LETTERS, 'a|b', 'c')
        self.assertEqual(g_reducerep([member, member]), {member})

    def test_without_negatives(self):
        relation = gen(ABCD, 'a|b c')
        self.assertEqual(g_rep(relation), {disj(ABCD, 'a|b c')})

    def test_negative_disjunction_only(self):
        self.assertEqual(g_rep(gen(ABCD, '', 'a|b')), {disj(ABCD, '', 'a'), disj(ABCD, '', 'b')})

    def test_rep_requires_normalized_input(self):
        with self.assertRaises(InconsistentInput):
            g_rep(gen(ABCD, 'a|b', 'a b'))

    def test_lifted_relations_keep_their_content(self):
        relation = disj(ABCD, 'a|b c', 'd')
        self.assertEqual(g_rep(relation.as_generalized()), {relation})
        definite = para(ABCD, 'a b', 'c')
        self.assertEqual(dp_rep(definite.as_disjunctive()), {definite})

    @given(small_generalized)
    @settings(max_examples=100, deadline=None)
    def test_rep_matches_full_expansion(self, relation):
        relation = g_norm(relation)
        self.assertEqual(g_rep(relation), g_reducerep(g_normrep(g_expand(relation))))


class GOperatorTests(SimpleTestCase):
    def test_union(self):
        self.assertEqual(
            g_union(gen(ABCD, 'a', 'b c'), gen(ABCD, 'b', 'c d')),
            gen(ABCD, 'a b', 'c'),
        )

    def test_union_with_empty_relation_blanks_negatives(self):
        relation = gen(ABCD, 'a|b c', 'd a|c')
        self.assertEqual(
            g_union(relation, gen(ABCD)),
            GenDisjParaRelation(ABCD, g_reduce(relation).positive, []),
        )

    def test_union_with_itself_matches_lifted_union(self):
        relation = g_reduce(EXAMPLE2)
        rep = g_rep(relation)
        self.assertEqual(
            canonical_family(g_rep(g_union(relation, relation))),
            canonical_family(lift_operator(dp_union, rep, rep)),
        )

    def test_intersect_blocked(self):
        self.assertEqual(g_intersect(gen(ABCD, 'a|b'), gen(ABCD, 'b|c')), gen(ABCD))

    def test_intersect_unites_negatives(self):
        self.assertEqual(
            g_intersect(gen(LETTERS, 'b', 'a'), gen(LETTERS, 'b', 'c')),
            gen(LETTERS, 'b', 'a c'),
        )

    def test_intersect_idempotent_on_definite(self):
        relation = gen(ABCD, 'a b', 'c')
        self.assertEqual(g_intersect(relation, relation), relation)

    def test_complement_swaps_components(self):
        self.assertEqual(g_complement(gen(ABCD, 'a', 'b')), gen(ABCD, 'b', 'a'))
        self.assertEqual(g_complement(EXAMPLE2), gen(LETTERS, 'b e i', 'a c f|g'))

    def test_select_on_supply(self):
        result = g_select(SUPPLY_RELATION, Atom(Attr('PNUM'), Const('p1')))
        self.assertEqual(result.positive, tuple(tuple_sets(SUPPLY, 's1,p1')))
        failing = {TupleSet([t]) for t in enumerate_tuple_space(SUPPLY) if t['PNUM'] != 'p1'}
        self.assertEqual(set(result.negative), failing)

    def test_select_true_and_false(self):
        self.assertEqual(g_select(EXAMPLE2, TRUE), g_reduce(EXAMPLE2))
        everything = [TupleSet([t]) for t in enumerate_tuple_space(SUPPLY)]
        self.assertEqual(g_select(SUPPLY_RELATION, FALSE), GenDisjParaRelation(SUPPLY, [], everything))

    def test_project(self):
        relation = gen(AB, 'a2,b1', 'a1,b1 a1,b2')
        self.assertEqual(g_project(relation, ['A']), gen(AB.restrict(['A']), 'a2', 'a1'))

    def test_project_without_covered_tuple(self):
        self.assertEqual(g_project(gen(AB, 'a2,b1', 'a1,b1'), ['A']).negative, ())

    def test_join_of_definite_relations(self):
        self.assertEqual(g_join(gen(AB, 'a1,b1'), gen(BC, 'b1,c1')), gen(ABC, 'a1,b1,c1'))

    def test_join_blocked(self):
        self.assertEqual(g_join(gen(AB, 'a1,b1|a1,b2'), gen(BC, 'b1,c1')).positive, ())

    def test_join_extends_negatives(self):
        self.assertEqual(g_join(gen(AB, '', 'a1,b1'), gen(BC)), gen(ABC, '', 'a1,b1,c1'))

    def test_join_cap(self):
        with self.assertRaises(CombinatorialLimit):
            g_join(SUPPLY_RELATION, SUPPLY_RELATION, cap=1)


class LiftTests(SimpleTestCase):
    def test_binary_lift_pairs_every_member(self):
        left = {disj(ABCD, 'a'), disj(ABCD, 'b')}
        right = {disj(ABCD, 'c')}
        self.assertEqual(
            lift_operator(dp_union, left, right),
            {disj(ABCD, 'a c'), disj(ABCD, 'b c')},
        )

    def test_select_over_example3(self):
        lifted = lift_operator(partial(dp_select, formula=x_equals('e')), g_rep(EXAMPLE3))
        self.assertEqual(lifted, {dp_select(disj(LETTERS, 'b|e c|d e|g', 'b c'), x_equals('e'))})

    def test_empty_argument_set(self):
        self.assertEqual(lift_operator(dp_union, set(), {disj(ABCD, 'a')}), frozenset())

    def test_cap(self):
        members = {disj(ABCD, v) for v in 'abcd'}
        with self.assertRaises(CombinatorialLimit):
            lift_operator(dp_union, members, members, cap=15)


class LiftedImageMismatchTests(SimpleTestCase):
    """Smallest known inputs whose result content differs from the lifted operator image."""

    def test_union_ignores_inconsistent_negative_choice(self):
        left, right = gen(ABCD, 'a|b', 'a|c b|c'), gen(ABCD, '', 'c')
        self.assertEqual(g_rep(g_union(left, right)), {disj(ABCD, 'a|b')})
        self.assertEqual(lift_operator(dp_union, g_rep(left), g_rep(right)), {disj(ABCD, 'a|b', 'c')})

    def test_intersect_keeps_inconsistent_negative_choice(self):
        left, right = gen(ABCD, 'a|b', 'a|c b|d'), gen(ABCD, 'a|b')
        self.assertEqual(
            g_rep(g_intersect(left, right)),
            {disj(ABCD, '', 'a b'), disj(ABCD, '', 'a d'), disj(ABCD, '', 'b c'), disj(ABCD, '', 'c d')},
        )
        self.assertEqual(
            lift_operator(dp_intersect, g_rep(left), g_rep(right)),
            {disj(ABCD, '', 'a d'), disj(ABCD, '', 'b c'), disj(ABCD, '', 'c d')},
        )

    def test_select_takes_tuple_sets_whole(self):
        values = Scheme.of('v', X=['v1', 'v2'])
        relation = gen(values, 'v1|v2', 'v1|v2')
        self.assertEqual(g_rep(g_select(relation, x_equals('v1'))), {disj(values, '', 'v2')})
        self.assertEqual(
            lift_operator(partial(dp_select, formula=x_equals('v1')), g_rep(relation)),
            {disj(values, '', 'v1 v2'), disj(values, 'v1', 'v2')},
        )

    def test_project_before_negatives_are_chosen(self):
        relation = gen(AB, 'a1,b1|a2,b1', 'a1,b1|a1,b2')
        target = AB.restrict(['A'])
        self.assertEqual(g_rep(g_project(relation, ['A'])), {disj(target, 'a1|a2')})
        self.assertEqual(
            lift_operator(partial(dp_project, attributes=['A']), g_rep(relation)),
            {disj(target, 'a2'), disj(target, 'a1|a2')},
        )

    def test_join_blocked_by_one_pick(self):
        left, right = gen(AB, 'a1,b1|a2,b2', 'a1,b1|a2,b2'), gen(Scheme.of('b', B=['b1', 'b2']), 'b1')
        self.assertEqual(
            g_rep(g_join(left, right)),
            {disj(AB, '', 'a1,b1'), disj(AB, '', 'a2,b2')},
        )
        self.assertEqual(
            lift_operator(dp_join, g_rep(left), g_rep(right)),
            {disj(AB, '', 'a1,b1'), disj(AB, 'a1,b1', 'a2,b2')},
        )


class RedundancyTests(SimpleTestCase):
    def test_example2(self):
        kinds = {(r.kind, r.side, r.tuple_set) for r in redundancies(EXAMPLE2)}
        self.assertIn(('absorbable', 'positive', TupleSet(tuples(LETTERS, 'b c'))), kinds)
        self.assertIn(('subsumed', 'positive', TupleSet(tuples(LETTERS, 'a e'))), kinds)
        self.assertFalse([kind for kind in kinds if kind[1] == 'negative'])

    def test_inconsistent_set(self):
        found = redundancies(gen(ABCD, 'b|c', 'b c'))
        self.assertEqual([(r.kind, r.side) for r in found], [('inconsistent', 'positive')])
        self.assertIn('inconsistent: positive', found[0].describe())

    def test_reduced_relation_has_none(self):
        self.assertEqual(redundancies(EXAMPLE2_REDUCED), [])
