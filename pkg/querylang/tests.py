from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.gdp import g_complement, g_reduce
from relations.exceptions import SchemeMismatch, UnknownRelation
from relations.models import Database, Scheme
from relations.testing import SUPPLY, gen, tup

from .evaluator import eval_query, infer_scheme
from .exceptions import FormulaError, ParseError, ScopeError
from .expressions import Complement, Intersect, Join, Project, RelRef, Select, Union
from .formulas import FALSE, TRUE, And, Atom, Attr, Const, Name, Not, Or, eval_formula
from .grammar import RESERVED_WORDS
from .parser import parse_formula, parse_query
from .printer import format_formula, format_query

PARTS = Scheme.of('parts', PNUM=['p1', 'p2', 'p3', 'p4'], PNAME=['nut', 'cam', 'bolt', 'wheel'])
SUPPLY_RELATION = gen(SUPPLY, 's1,p1 s2,p1|s2,p2 s3,p3|s3,p4', 's1,p2 s1,p3 s2,p3|s2,p4')
DB = Database(
    {'supply': SUPPLY, 'parts': PARTS},
    {'supply': SUPPLY_RELATION, 'parts': gen(PARTS, 'p1,nut p2,cam|p2,bolt')},
)

words = st.from_regex(r'[A-Za-z0-9_]{1,6}', fullmatch=True).filter(lambda w: w not in RESERVED_WORDS)
operands = st.one_of(
    st.builds(Name, words),
    st.builds(Const, st.text(alphabet='abcXYZ019 _-.', max_size=5)),
)
formulas = st.recursive(
    st.one_of(st.builds(Atom, operands, operands), st.sampled_from([TRUE, FALSE])),
    lambda children: st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
    ),
    max_leaves=8,
)
queries = st.recursive(
    st.builds(RelRef, words),
    lambda children: st.one_of(
        st.builds(Select, formulas, children),
        st.builds(Project, st.lists(words, min_size=1, max_size=3).map(tuple), children),
        st.builds(Union, children, children),
        st.builds(Intersect, children, children),
        st.builds(Join, children, children),
        st.builds(Complement, children),
    ),
    max_leaves=6,
)


class ParseQueryTests(SimpleTestCase):
    def test_select(self):
        self.assertEqual(
            parse_query('select[PNUM=p1](supply)'),
            Select(Atom(Name('PNUM'), Name('p1')), RelRef('supply')),
        )

    def test_nested(self):
        self.assertEqual(
            parse_query('project[SNUM](join(supply, parts))'),
            Project(('SNUM',), Join(RelRef('supply'), RelRef('parts'))),
        )

    def test_keyword_prefix_is_a_relation_name(self):
        self.assertEqual(parse_query('selection'), RelRef('selection'))

    def test_positions_are_recorded(self):
        tree = parse_query('union(supply,\n  parts)')
        self.assertEqual((tree.right.line, tree.right.column), (2, 3))

    def test_missing_operand(self):
        with self.assertRaises(ParseError) as raised:
            parse_query('union(supply)')
        self.assertEqual((raised.exception.line, raised.exception.column), (1, 13))
        self.assertIn("','", raised.exception.expected)

    def test_unexpected_end(self):
        with self.assertRaises(ParseError) as raised:
            parse_query('select[PNUM=p1](')
        self.assertIn('end of input', str(raised.exception))

    def test_unexpected_character(self):
        with self.assertRaises(ParseError) as raised:
            parse_query('supply @')
        self.assertEqual(raised.exception.column, 8)

    def test_comments_are_ignored(self):
        self.assertEqual(parse_query('not(supply)  # explicit negation'), Complement(RelRef('supply')))


class ParseFormulaTests(SimpleTestCase):
    def test_conjunction_with_negation(self):
        self.assertEqual(
            parse_formula('PNUM=p1 & !(SNUM=s2)'),
            And(Atom(Name('PNUM'), Name('p1')), Not(Atom(Name('SNUM'), Name('s2')))),
        )

    def test_not_equal(self):
        self.assertEqual(parse_formula('a != b'), Not(Atom(Name('a'), Name('b'))))

    def test_conjunction_binds_tighter(self):
        self.assertEqual(
            parse_formula('a=b | c=d & e=f'),
            Or(Atom(Name('a'), Name('b')), And(Atom(Name('c'), Name('d')), Atom(Name('e'), Name('f')))),
        )

    def test_quoted_constant(self):
        self.assertEqual(parse_formula("PNAME='nut'"), Atom(Name('PNAME'), Const('nut')))

    def test_scoped(self):
        self.assertEqual(parse_formula('PNUM=p1', SUPPLY), Atom(Attr('PNUM'), Const('p1')))
        self.assertEqual(parse_formula('p1=PNUM', SUPPLY), Atom(Const('p1'), Attr('PNUM')))

    def test_value_outside_domain(self):
        with self.assertRaises(ScopeError):
            parse_formula('PNUM=p9', SUPPLY)

    def test_attributes_with_different_domains(self):
        with self.assertRaises(ScopeError):
            parse_formula('SNUM=PNUM', SUPPLY)

    def test_no_attribute(self):
        with self.assertRaises(ScopeError):
            parse_formula('QTY=3', SUPPLY)

    def test_scope_error_position(self):
        with self.assertRaises(ScopeError) as raised:
            parse_formula('SNUM=s1 & PNUM=p9', SUPPLY)
        self.assertIn('1:16', str(raised.exception))


class EvalFormulaTests(SimpleTestCase):
    def test_atom(self):
        self.assertTrue(eval_formula(parse_formula('PNUM=p1', SUPPLY), tup(SUPPLY, 's1,p1')))
        self.assertFalse(eval_formula(parse_formula('PNUM=p1', SUPPLY), tup(SUPPLY, 's1,p2')))

    def test_truth_values(self):
        self.assertTrue(eval_formula(TRUE, tup(SUPPLY, 's3,p4')))
        self.assertFalse(eval_formula(FALSE, tup(SUPPLY, 's3,p4')))

    def test_negation(self):
        letters = Scheme.of('letters', X=['a', 'b'])
        self.assertFalse(eval_formula(parse_formula('!(X=a)', letters), tup(letters, 'a')))

    def test_unscoped_formula_is_rejected(self):
        with self.assertRaises(FormulaError):
            eval_formula(parse_formula('PNUM=p1'), tup(SUPPLY, 's1,p1'))


class PrinterTests(SimpleTestCase):
    def test_compact_query(self):
        text = "project[SNUM](select[PNUM=p1 & SNUM!='s2'](union(supply,not(supply))))"
        self.assertEqual(format_query(parse_query(text)), text)

    def test_parenthesizes_lower_precedence(self):
        formula = And(Or(TRUE, FALSE), Not(And(TRUE, TRUE)))
        self.assertEqual(format_formula(formula), '(true | false) & !(true & true)')

    def test_right_nested_operands_keep_grouping(self):
        formula = Or(TRUE, Or(FALSE, TRUE))
        self.assertEqual(format_formula(formula), 'true | (false | true)')

    @given(formulas)
    @settings(max_examples=1000, deadline=None)
    def test_formula_round_trip(self, formula):
        self.assertEqual(parse_formula(format_formula(formula)), formula)

    @given(queries)
    @settings(max_examples=1000, deadline=None)
    def test_query_round_trip(self, query):
        self.assertEqual(parse_query(format_query(query)), query)


class EvalQueryTests(SimpleTestCase):
    def test_stored_relation_is_reduced(self):
        self.assertEqual(eval_query(parse_query('supply'), DB), g_reduce(SUPPLY_RELATION))

    def test_select_true(self):
        self.assertEqual(eval_query(parse_query('select[true](supply)'), DB), g_reduce(SUPPLY_RELATION))

    def test_project_after_select(self):
        result = eval_query(parse_query('project[SNUM](select[PNUM=p1](supply))'), DB)
        self.assertEqual(result, gen(SUPPLY.restrict(['SNUM']), 's1'))

    def test_complement(self):
        self.assertEqual(eval_query(parse_query('not(supply)'), DB), g_complement(SUPPLY_RELATION))

    def test_unknown_relation(self):
        with self.assertRaises(UnknownRelation):
            eval_query(parse_query('union(supply, nosuchrel)'), DB)

    def test_scheme_mismatch_is_found_before_evaluation(self):
        with self.assertRaises(SchemeMismatch):
            infer_scheme(parse_query('union(supply, parts)'), DB)

    def test_formula_is_scoped_against_operand(self):
        with self.assertRaises(ScopeError):
            eval_query(parse_query('select[PNAME=nut](supply)'), DB)

    def test_inferred_join_scheme(self):
        scheme = infer_scheme(parse_query('join(supply, parts)'), DB)
        self.assertEqual(scheme.attribute_names, ('SNUM', 'PNUM', 'PNAME'))

    def test_inferred_scheme_matches_result(self):
        query = parse_query('project[SNUM](supply)')
        self.assertEqual(eval_query(query, DB).scheme, infer_scheme(query, DB))
