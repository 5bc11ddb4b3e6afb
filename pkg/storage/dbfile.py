"""
The text database format.

    # comment
    scheme supply { SNUM: s1 s2 s3; PNUM: p1 p2 p3 p4; }
    relation supply : supply {
      + (s2, p1) | (s2, p2);
      - (s1, p2);
    }

One tuple set per ``+``/``-`` statement, disjuncts separated by ``|``.
Loading validates but does not normalize; writing is canonical, so a
written file loads and writes back byte for byte.
"""
import logging
import re
from pathlib import Path

import lark
from lark import Transformer, v_args
from lark.exceptions import UnexpectedInput

from querylang.grammar import RESERVED_WORDS
from querylang.parser import raise_parse_error
from relations.exceptions import ValidationError
from relations.models import Database, Tuple

from .api.serializers import RelationDeclarationSerializer, SchemeSerializer

logger = logging.getLogger(__name__)

DB_GRAMMAR = r"""
start: declaration*

?declaration: scheme_decl | relation_decl

scheme_decl: "scheme" WORD "{" attribute_decl* "}"
attribute_decl: WORD ":" value* ";"

relation_decl: "relation" WORD ":" WORD "{" statement* "}"
statement: SIGN [tuple ("|" tuple)*] ";"
tuple: "(" [value ("," value)*] ")"

?value: WORD -> word
      | QUOTED -> quoted

SIGN: "+" | "-"
WORD: /[A-Za-z0-9_]+/
QUOTED: /'[^'\n]*'/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = lark.Lark(DB_GRAMMAR, parser='lalr', lexer='contextual', propagate_positions=True)

_WORD = re.compile(r'[A-Za-z0-9_]+')
_DB_KEYWORDS = frozenset({'scheme', 'relation'})


class _Declarations(Transformer):
    """Parse tree to plain declaration dicts, each carrying its source line."""

    @v_args(inline=True)
    def word(self, token):
        return str(token)

    @v_args(inline=True)
    def quoted(self, token):
        return str(token)[1:-1]

    def tuple(self, children):
        return [c for c in children if c is not None]

    @v_args(meta=True)
    def statement(self, meta, children):
        sign, *tuples = children
        return {'sign': str(sign), 'tuples': [t for t in tuples if t is not None], 'line': meta.line}

    @v_args(meta=True)
    def attribute_decl(self, meta, children):
        name, *domain = children
        return {'name': str(name), 'domain': domain, 'line': meta.line}

    @v_args(meta=True)
    def scheme_decl(self, meta, children):
        name, *attributes = children
        return {'kind': 'scheme', 'name': str(name), 'attributes': attributes, 'line': meta.line}

    @v_args(meta=True)
    def relation_decl(self, meta, children):
        name, scheme, *statements = children
        return {
            'kind': 'relation',
            'name': str(name),
            'scheme': str(scheme),
            'statements': statements,
            'line': meta.line,
        }

    def start(self, children):
        return children


def _first_error(errors):
    if isinstance(errors, dict):
        for key, value in errors.items():
            message = _first_error(value)
            if message:
                return message if key == 'non_field_errors' else f"{key}: {message}"
    elif isinstance(errors, list):
        for value in errors:
            message = _first_error(value)
            if message:
                return message
    elif errors:
        return str(errors)
    return None


def _error_line(declaration, errors):
    """The line of the offending attribute or statement when the error points at one."""
    detail = errors.get('attributes') if isinstance(errors, dict) else None
    if isinstance(detail, list):
        for item, item_errors in zip(declaration.get('attributes', []), detail):
            if item_errors:
                return item['line']
    return declaration['line']


def _save(serializer, declaration):
    if not serializer.is_valid():
        raise ValidationError(
            _first_error(serializer.errors),
            _error_line(declaration, serializer.errors),
        )
    return serializer.save()


def _load_scheme(declaration):
    data = {
        'name': declaration['name'],
        'attributes': [{'name': a['name'], 'domain': a['domain']} for a in declaration['attributes']],
    }
    return _save(SchemeSerializer(data=data), declaration)


def _load_relation(declaration, schemes):
    for statement in declaration['statements']:
        if not statement['tuples']:
            raise ValidationError(f"empty tuple set in a '{statement['sign']}' statement", statement['line'])
    data = {
        'name': declaration['name'],
        'scheme': declaration['scheme'],
        'positive': [s['tuples'] for s in declaration['statements'] if s['sign'] == '+'],
        'negative': [s['tuples'] for s in declaration['statements'] if s['sign'] == '-'],
    }
    serializer = RelationDeclarationSerializer(data=data, context={'schemes': schemes})
    return _save(serializer, declaration)


def loads_db(text):
    """Parse and validate database text. Stored relations are kept as written."""
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as exc:
        raise_parse_error(exc, _parser, text)
    declarations = _Declarations().transform(tree)

    schemes = {}
    for declaration in (d for d in declarations if d['kind'] == 'scheme'):
        if declaration['name'] in schemes:
            raise ValidationError(f"scheme '{declaration['name']}' is declared twice", declaration['line'])
        schemes[declaration['name']] = _load_scheme(declaration)

    relations = {}
    for declaration in (d for d in declarations if d['kind'] == 'relation'):
        if declaration['name'] in relations:
            raise ValidationError(f"relation '{declaration['name']}' is declared twice", declaration['line'])
        relations[declaration['name']] = _load_relation(declaration, schemes)

    db = Database(schemes, relations)
    logger.debug("loaded %d scheme(s) and %d relation(s)", len(schemes), len(relations))
    return db


def load_db(path):
    return loads_db(Path(path).read_text(encoding='utf-8'))


def format_value(value):
    """A domain value as it must appear in the file: bare when it lexes as a word, quoted otherwise."""
    if _WORD.fullmatch(value) and value not in RESERVED_WORDS | _DB_KEYWORDS:
        return value
    return f"'{value}'"


def format_tuple(t, scheme):
    return '(' + ', '.join(format_value(t[name]) for name in scheme.attribute_names) + ')'


def format_statement(sign, item, scheme):
    tuples = [item] if isinstance(item, Tuple) else sorted(item)
    return f"  {sign} " + ' | '.join(format_tuple(t, scheme) for t in tuples) + ';'


def format_scheme(scheme):
    lines = [f"scheme {scheme.name} {{"]
    for attribute in scheme.attributes:
        lines.append(f"  {attribute.name}: {' '.join(format_value(v) for v in attribute.domain)};")
    lines.append('}')
    return '\n'.join(lines)


def format_relation(name, relation):
    """A relation of any level as a ``relation`` block; definite tuples print as one-tuple statements."""
    lines = [f"relation {name} : {relation.scheme.name} {{"]
    lines.extend(format_statement('+', item, relation.scheme) for item in relation.positive)
    lines.extend(format_statement('-', item, relation.scheme) for item in relation.negative)
    lines.append('}')
    return '\n'.join(lines)


def dumps_db(db):
    """Canonical text: schemes, then relations, each alphabetical, blank line between blocks."""
    blocks = [format_scheme(scheme) for scheme in db.schemes.values()]
    blocks.extend(format_relation(name, relation) for name, relation in db.relations.items())
    return '\n\n'.join(blocks) + '\n'


def write_db(db, path):
    Path(path).write_text(dumps_db(db), encoding='utf-8')
