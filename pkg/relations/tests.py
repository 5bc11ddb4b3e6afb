from itertools import permutations

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from .canonical import canonical_family, canonicalize
from .exceptions import CombinatorialLimit, SchemeMismatch, UnknownRelation, ValidationError
from .limits import default_cap, guard
from .models import Attribute, Database, GenDisjParaRelation, Scheme, Tuple, TupleSet
from .testing import LETTERS, SUPPLY, disj, gen, para, tup, tuple_sets
from .tuplespace import enumerate_tuple_space, extend_tuple, extend_tuples, project_tuple

AB = Scheme.of('ab', A=['a1', 'a2'], B=['b1', 'b2'])
A_ONLY = Scheme.of('a', A=['a1', 'a2'])


class SchemeTests(SimpleTestCase):
    def test_duplicate_attribute_is_rejected(self):
        with self.assertRaises(ValidationError):
            Scheme('r', (Attribute('A', ('x',)), Attribute('A', ('y',))))

    def test_empty_domain_is_rejected(self):
        with self.assertRaises(ValidationError):
            Attribute('A', ())

    def test_equality_ignores_name_and_attribute_order(self):
        left = Scheme.of('left', A=['1', '2'], B=['x'])
        right = Scheme.of('right', B=['x'], A=['2', '1'])
        self.assertEqual(left, right)
        self.assertEqual(hash(left), hash(right))

    def test_restrict_keeps_scheme_order(self):
        self.assertEqual(SUPPLY.restrict(['PNUM', 'SNUM']).attribute_names, ('SNUM', 'PNUM'))

    def test_restrict_unknown_attribute(self):
        with self.assertRaises(SchemeMismatch):
            SUPPLY.restrict(['QTY'])

    def test_join_requires_identical_shared_domains(self):
        other = Scheme.of('other', SNUM=['s1', 's2'], CITY=['paris'])
        with self.assertRaises(SchemeMismatch):
            SUPPLY.join(other)

    def test_join_appends_new_attributes(self):
        parts = Scheme.of('parts', PNUM=['p1', 'p2', 'p3', 'p4'], PNAME=['nut', 'cam', 'bolt', 'wheel'])
        self.assertEqual(SUPPLY.join(parts).attribute_names, ('SNUM', 'PNUM', 'PNAME'))


class TupleTests(SimpleTestCase):
    def test_out_of_domain_value(self):
        with self.assertRaises(ValidationError):
            Tuple(SUPPLY, ('s9', 'p1'))

    def test_wrong_arity(self):
        with self.assertRaises(ValidationError):
            Tuple(SUPPLY, ('s1',))

    def test_from_mapping_follows_scheme_order(self):
        t = Tuple.from_mapping(SUPPLY, {'PNUM': 'p2', 'SNUM': 's1'})
        self.assertEqual(t.values, ('s1', 'p2'))
        self.assertEqual(t['PNUM'], 'p2')

    def test_empty_tuple_set_is_rejected(self):
        with self.assertRaises(ValidationError):
            TupleSet([])


class TupleSpaceTests(SimpleTestCase):
    def test_cartesian_product(self):
        scheme = Scheme.of('r', A=['a1', 'a2'], B=['b1'])
        self.assertEqual(
            enumerate_tuple_space(scheme),
            {Tuple(scheme, ('a1', 'b1')), Tuple(scheme, ('a2', 'b1'))},
        )

    def test_singleton_domain(self):
        scheme = Scheme.of('r', A=['a1'])
        self.assertEqual(enumerate_tuple_space(scheme), {Tuple(scheme, ('a1',))})

    def test_supply_space_size(self):
        self.assertEqual(len(enumerate_tuple_space(SUPPLY)), 12)
        self.assertEqual(SUPPLY.size, 12)

    def test_cap(self):
        with self.assertRaises(CombinatorialLimit) as raised:
            enumerate_tuple_space(SUPPLY, cap=11)
        self.assertEqual(raised.exception.produced, 12)

    def test_extend_to_two_free_values(self):
        self.assertEqual(
            extend_tuple(Tuple(A_ONLY, ('a1',)), AB),
            {Tuple(AB, ('a1', 'b1')), Tuple(AB, ('a1', 'b2'))},
        )

    def test_extend_to_own_scheme(self):
        t = Tuple(AB, ('a2', 'b1'))
        self.assertEqual(extend_tuple(t, AB), {t})

    def test_extend_set_is_union_of_extensions(self):
        target = Scheme.of('t', A=['a1', 'a2'], B=['b1'])
        extended = extend_tuples([Tuple(A_ONLY, ('a1',)), Tuple(A_ONLY, ('a2',))], target)
        self.assertEqual(extended, {Tuple(target, ('a1', 'b1')), Tuple(target, ('a2', 'b1'))})

    def test_extend_needs_subscheme(self):
        with self.assertRaises(SchemeMismatch):
            extend_tuple(Tuple(AB, ('a1', 'b1')), A_ONLY)

    def test_project_supply_tuple(self):
        snum = SUPPLY.restrict(['SNUM'])
        self.assertEqual(project_tuple(tup(SUPPLY, 's1,p1'), snum), Tuple(snum, ('s1',)))

    def test_project_onto_own_scheme(self):
        t = tup(SUPPLY, 's2,p3')
        self.assertEqual(project_tuple(t, SUPPLY), t)

    def test_extend_then_project_recovers_tuple(self):
        for t in enumerate_tuple_space(A_ONLY):
            for extended in extend_tuple(t, AB):
                self.assertEqual(project_tuple(extended, A_ONLY), t)


EXAMPLE2_POSITIVE = ['a', 'b|c', 'c|d', 'a|e', 'f|g']
EXAMPLE2_NEGATIVE = ['b', 'c|e', 'i', 'd|e|f']


class CanonicalTests(SimpleTestCase):
    def test_components_are_sorted(self):
        relation = gen(LETTERS, 'b a')
        self.assertEqual(relation.positive, tuple(tuple_sets(LETTERS, 'a b')))

    def test_permutations_of_example2_are_equal(self):
        forms = {
            canonicalize(gen(LETTERS, ' '.join(positive), ' '.join(reversed(EXAMPLE2_NEGATIVE))))
            for positive in permutations(EXAMPLE2_POSITIVE)
        }
        self.assertEqual(len(forms), 1)

    def test_disjunct_order_does_not_matter(self):
        self.assertEqual(gen(LETTERS, 'c|b'), gen(LETTERS, 'b|c'))

    def test_family_is_deduplicated(self):
        family = canonical_family([para(LETTERS, 'a'), para(LETTERS, 'a'), para(LETTERS, 'b')])
        self.assertEqual(family, (para(LETTERS, 'a'), para(LETTERS, 'b')))

    @given(st.lists(st.lists(st.sampled_from('abcdefghi'), min_size=1, max_size=3), max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_canonicalize_is_idempotent(self, sets):
        relation = GenDisjParaRelation(
            LETTERS,
            [TupleSet(Tuple(LETTERS, (v,)) for v in s) for s in sets],
            [],
        )
        once = canonicalize(relation)
        self.assertEqual(canonicalize(once), once)
        self.assertEqual(once.key, canonicalize(once).key)


class LevelTests(SimpleTestCase):
    def test_disjunctive_lifts_with_singleton_negatives(self):
        lifted = disj(LETTERS, 'a|b', 'c d').as_generalized()
        self.assertEqual(lifted, gen(LETTERS, 'a|b', 'c d'))
        self.assertTrue(gen(LETTERS, 'a', 'c d').is_definite())

    def test_definite_lifts_with_singleton_positives(self):
        self.assertEqual(para(LETTERS, 'a b', 'c').as_disjunctive(), disj(LETTERS, 'a b', 'c'))

    def test_consistency(self):
        self.assertTrue(para(LETTERS, 'a', 'b').is_consistent())
        self.assertFalse(para(LETTERS, 'a', 'a').is_consistent())

    def test_tuples_must_be_on_the_relation_scheme(self):
        with self.assertRaises(ValidationError):
            GenDisjParaRelation(LETTERS, [TupleSet([tup(SUPPLY, 's1,p1')])], [])


class DatabaseTests(SimpleTestCase):
    def test_unknown_relation(self):
        db = Database({'letters': LETTERS}, {'r': gen(LETTERS, 'a')})
        with self.assertRaises(UnknownRelation):
            db.relation('nosuchrel')

    def test_relation_scheme_must_be_registered(self):
        with self.assertRaises(ValidationError):
            Database({}, {'r': gen(LETTERS, 'a')})

    def test_with_relation_keeps_original(self):
        db = Database({'letters': LETTERS}, {'r': gen(LETTERS, 'a')})
        updated = db.with_relation('s', gen(LETTERS, 'b'))
        self.assertEqual(list(db.relations), ['r'])
        self.assertEqual(list(updated.relations), ['r', 's'])


class LimitTests(SimpleTestCase):
    @override_settings(GDPR_MAX_WORLDS=5)
    def test_default_cap_reads_settings(self):
        self.assertEqual(default_cap(), 5)
        with self.assertRaises(CombinatorialLimit):
            enumerate_tuple_space(SUPPLY)

    def test_guard_allows_exact_cap(self):
        guard('things', 3, 3)
        with self.assertRaises(CombinatorialLimit):
            guard('things', 4, 3)
