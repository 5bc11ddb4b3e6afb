import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.apps import apps
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from algebra.gdp import g_intersect
from querylang.evaluator import eval_query
from querylang.exceptions import ParseError
from querylang.parser import parse_query
from relations.exceptions import ValidationError
from relations.testing import LETTERS, gen

from .cli import EXIT_ERROR, EXIT_LIMIT, EXIT_VIOLATION
from .dbfile import dumps_db, format_value, load_db, loads_db, write_db

FIXTURES = Path(__file__).resolve().parent / 'fixtures'
SUPPLY = str(FIXTURES / 'supply.gdp')
EXAMPLE2 = str(FIXTURES / 'example2.gdp')
EXAMPLE3 = str(FIXTURES / 'example3.gdp')


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


class LoadTests(SimpleTestCase):
    def test_supply(self):
        db = load_db(SUPPLY)
        self.assertEqual(list(db.schemes), ['parts', 'suppliers', 'supply'])
        self.assertEqual(list(db.relations), ['parts', 'shipments', 'suppliers', 'supply'])
        supply = db.relation('supply')
        self.assertEqual((len(supply.positive), len(supply.negative)), (3, 3))

    def test_relations_are_kept_as_written(self):
        relation = load_db(EXAMPLE2).relation('r')
        self.assertEqual(len(relation.positive), 5)
        self.assertEqual(len(relation.negative), 4)

    def test_empty_tuple_set(self):
        text = "scheme s { X: a b; }\nrelation r : s {\n  + ;\n}\n"
        with self.assertRaises(ValidationError) as raised:
            loads_db(text)
        self.assertEqual(raised.exception.line, 3)

    def test_undeclared_scheme(self):
        with self.assertRaises(ValidationError) as raised:
            loads_db("scheme s { X: a; }\n\nrelation r : t { + (a); }\n")
        self.assertIn("'t' is not declared", str(raised.exception))
        self.assertEqual(raised.exception.line, 3)

    def test_value_outside_domain(self):
        with self.assertRaises(ValidationError) as raised:
            loads_db("scheme s { X: a b; }\nrelation r : s { + (a) | (z); }\n")
        self.assertIn("'z'", str(raised.exception))

    def test_wrong_arity(self):
        with self.assertRaises(ValidationError):
            loads_db("scheme s { X: a; Y: b; }\nrelation r : s { - (a); }\n")

    def test_duplicate_domain_value(self):
        with self.assertRaises(ValidationError) as raised:
            loads_db("scheme s {\n  X: a b;\n  Y: c c;\n}\n")
        self.assertEqual(raised.exception.line, 3)

    def test_duplicate_declarations(self):
        with self.assertRaises(ValidationError):
            loads_db("scheme s { X: a; }\nscheme s { X: b; }\n")
        with self.assertRaises(ValidationError) as raised:
            loads_db("scheme s { X: a; }\nrelation r : s { }\nrelation r : s { + (a); }\n")
        self.assertEqual(raised.exception.line, 3)

    def test_syntax_error(self):
        with self.assertRaises(ParseError) as raised:
            loads_db("scheme s { X: a; }\nrelation r : s { + (a) }\n")
        self.assertEqual(raised.exception.line, 2)

    def test_quoted_values(self):
        db = loads_db("scheme city { NAME: 'New York' 'select' Paris; }\nrelation c : city { + ('New York'); }\n")
        self.assertEqual(db.schemes['city'].attribute('NAME').domain, ('New York', 'select', 'Paris'))

    def test_query_keywords_are_not_names(self):
        with self.assertRaises(ValidationError) as raised:
            loads_db("scheme s { X: a; }\nrelation select : s { + (a); }\n")
        self.assertIn('query keyword', str(raised.exception))
        self.assertEqual(raised.exception.line, 2)
        with self.assertRaises(ValidationError) as raised:
            loads_db("scheme s {\n  X: a;\n  true: b;\n}\n")
        self.assertIn("'true'", str(raised.exception))
        self.assertEqual(raised.exception.line, 3)


class WriteTests(SimpleTestCase):
    def test_round_trip(self):
        db = load_db(SUPPLY)
        self.assertEqual(loads_db(dumps_db(db)), db)

    def test_writes_are_byte_stable(self):
        db = load_db(SUPPLY)
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp) / 'first.gdp', Path(tmp) / 'second.gdp'
            write_db(db, first)
            write_db(load_db(first), second)
            self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_canonical_order_of_example2(self):
        golden = (FIXTURES / 'example2.canonical.gdp').read_text(encoding='utf-8')
        self.assertEqual(dumps_db(load_db(EXAMPLE2)), golden)

    def test_format_value(self):
        self.assertEqual(format_value('p1'), 'p1')
        self.assertEqual(format_value('union'), "'union'")
        self.assertEqual(format_value('relation'), "'relation'")
        self.assertEqual(format_value('New York'), "'New York'")

    def test_quoted_values_survive_round_trip(self):
        db = loads_db("scheme city { NAME: 'New York' 'true' Paris; }\nrelation c : city { - ('true'); }\n")
        self.assertEqual(loads_db(dumps_db(db)), db)


class EvalCommandTests(SimpleTestCase):
    def test_select(self):
        query = 'select[PNUM=p1](supply)'
        out = run('eval', SUPPLY, query)
        self.assertIn('  + (s1, p1);', out)
        self.assertEqual(out.count('  + '), 1)
        self.assertEqual(loads_db(out).relation('result'), eval_query(parse_query(query), load_db(SUPPLY)))

    def test_json(self):
        data = json.loads(run('eval', SUPPLY, 'select[PNUM=p1](supply)', '--format', 'json'))
        self.assertEqual(data['scheme']['name'], 'supply')
        self.assertEqual(data['positive'], [[{'SNUM': 's1', 'PNUM': 'p1'}]])
        self.assertEqual(len(data['negative']), 9)

    def test_unknown_relation(self):
        with self.assertRaises(CommandError) as raised:
            run('eval', SUPPLY, 'nosuchrel')
        self.assertEqual(raised.exception.returncode, EXIT_ERROR)
        self.assertIn('nosuchrel', str(raised.exception))

    def test_parse_error(self):
        with self.assertRaises(CommandError) as raised:
            run('eval', SUPPLY, 'union(supply)')
        self.assertEqual(raised.exception.returncode, EXIT_ERROR)

    def test_missing_file(self):
        with self.assertRaises(CommandError) as raised:
            run('eval', str(FIXTURES / 'missing.gdp'), 'supply')
        self.assertEqual(raised.exception.returncode, EXIT_ERROR)

    def test_cap(self):
        with self.assertRaises(CommandError) as raised:
            run('eval', SUPPLY, 'join(supply, parts)', '--cap', '1')
        self.assertEqual(raised.exception.returncode, EXIT_LIMIT)


class RepCommandTests(SimpleTestCase):
    def test_generalized_level(self):
        out = run('rep', EXAMPLE3, 'r')
        member = loads_db(out).relation('member_1')
        self.assertEqual(member, gen(member.scheme, 'b|e c|d e|g', 'b c'))
        self.assertNotIn('member_2', out)

    def test_expanded(self):
        out = run('rep', EXAMPLE3, 'r', '--expand')
        self.assertEqual(len(loads_db(out).relations), 6)

    def test_definite_level(self):
        out = run('rep', EXAMPLE3, 'r', '--level', 'para')
        world = loads_db(out).relation('member_1')
        self.assertEqual(world, gen(world.scheme, 'd e', 'b c'))
        self.assertNotIn('member_2', out)

    def test_per_member_level(self):
        out = run('rep', EXAMPLE3, 'r', '--level', 'dp')
        self.assertEqual(list(loads_db(out).relations), ['world_1_1'])

    def test_json(self):
        data = json.loads(run('rep', EXAMPLE3, 'r', '--format', 'json'))
        self.assertEqual((data['relation'], data['level']), ('r', 'gdp'))
        self.assertEqual(data['members'][0]['negative'], [{'X': 'b'}, {'X': 'c'}])

    def test_expand_needs_a_disjunctive_level(self):
        with self.assertRaises(CommandError) as raised:
            run('rep', EXAMPLE3, 'r', '--level', 'para', '--expand')
        self.assertEqual(raised.exception.returncode, EXIT_ERROR)


class NormalizeCommandTests(SimpleTestCase):
    def test_example2(self):
        relation = loads_db(run('normalize', EXAMPLE2)).relation('r')
        self.assertEqual(relation, gen(LETTERS, 'a c f|g', 'b e i'))

    def test_explain(self):
        out = run('normalize', EXAMPLE2, '--explain')
        self.assertTrue(out.startswith('# r: '))
        self.assertIn('subsumed: positive', out)
        self.assertEqual(loads_db(out).relation('r'), gen(LETTERS, 'a c f|g', 'b e i'))

    def test_only_named_relation(self):
        db = loads_db(run('normalize', SUPPLY, '--relation', 'supply'))
        self.assertEqual(db, load_db(SUPPLY))

    def test_output_is_stable(self):
        with tempfile.TemporaryDirectory() as tmp:
            first, second = Path(tmp) / 'first.gdp', Path(tmp) / 'second.gdp'
            run('normalize', EXAMPLE2, '--output', str(first))
            run('normalize', str(first), '--output', str(second))
            self.assertEqual(first.read_bytes(), second.read_bytes())


class FuzzCommandTests(SimpleTestCase):
    def test_classical(self):
        out = run('fuzz', '--theorem', 'classical', '--trials', '5')
        self.assertIn('theorem classical:', out)
        self.assertIn('0 violation(s)', out)

    def test_json(self):
        data = json.loads(run(
            'fuzz', '--theorem', '1', '--trials', '3', '--singleton-negatives', '--format', 'json',
        ))
        self.assertEqual([report['theorem'] for report in data], ['1'])
        self.assertEqual(data[0]['violations'], [])

    def test_violation_exit_code(self):
        with mock.patch('difftest.checks.g_union', g_intersect):
            with self.assertRaises(CommandError) as raised:
                run('fuzz', '--theorem', 'classical', '--trials', '20')
        self.assertEqual(raised.exception.returncode, EXIT_VIOLATION)


class ReplCommandTests(SimpleTestCase):
    def session(self, text):
        out, err = StringIO(), StringIO()
        call_command('repl', SUPPLY, stdin=StringIO(text), stdout=out, stderr=err)
        return out.getvalue(), err.getvalue()

    def test_evaluates_lines(self):
        out, err = self.session('select[PNUM=p1](supply)\n')
        self.assertIn('  + (s1, p1);', out)
        self.assertEqual(err, '')

    def test_errors_do_not_end_the_session(self):
        out, err = self.session('nosuchrel\nsupply\n')
        self.assertIn('error: ', err)
        self.assertIn('relation result : supply', out)

    def test_commands(self):
        out, _ = self.session(':help\n:rep supply\n:bogus\n:quit\nsupply\n')
        self.assertIn(':normalize NAME', out)
        self.assertIn('relation member_1 : supply', out)
        self.assertIn('unknown command :bogus', out)
        self.assertNotIn('relation result', out)

    def test_normalize_updates_session(self):
        out, _ = self.session(':normalize shipments\n')
        self.assertIn('relation shipments : supply', out)


class ProjectSettingsTests(SimpleTestCase):
    def test_no_orm_apps(self):
        self.assertFalse(apps.is_installed('django.contrib.auth'))
        self.assertFalse(apps.is_installed('django.contrib.contenttypes'))
        self.assertEqual(apps.get_models(), [])
