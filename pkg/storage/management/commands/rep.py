from django.core.management.base import CommandError

from algebra.dp import dp_expand, dp_norm, dp_rep
from algebra.gdp import g_expand, g_norm, g_rep
from difftest.oracle import flatten_worlds
from relations.canonical import canonical_family
from storage.cli import EXIT_ERROR, EngineCommand, exit_codes
from storage.rendering import (
    grouped_members_json,
    grouped_members_text,
    members_json,
    members_text,
)


class Command(EngineCommand):
    help = (
        "Print the information content of a stored relation: its disjunctive members (gdp), "
        "the definite relations of each member (dp), or all definite relations together (para)."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('relation', help="Name of the stored relation.")
        parser.add_argument('--level', choices=['gdp', 'dp', 'para'], default='gdp')
        parser.add_argument(
            '--expand', action='store_true',
            help="Show every member before inconsistent and non-minimal ones are removed.",
        )
        parser.add_argument('--format', choices=['text', 'json'], default='text')

    def handle(self, *args, **options):
        level, name, expand = options['level'], options['relation'], options['expand']
        if expand and level == 'para':
            raise CommandError("--expand applies to --level gdp or dp", returncode=EXIT_ERROR)
        as_json = options['format'] == 'json'

        with exit_codes():
            cap = self.cap(options)
            relation = g_norm(self.load(options).relation(name))
            if level == 'dp':
                expand_member = dp_expand if expand else dp_rep
                groups = [
                    expand_member(dp_norm(member), cap)
                    for member in canonical_family(g_rep(relation, cap))
                ]
            elif level == 'gdp':
                members = g_expand(relation, cap) if expand else g_rep(relation, cap)
            else:
                members = flatten_worlds(relation, cap)

        if level == 'dp':
            rendered = grouped_members_json(name, groups) if as_json else grouped_members_text(relation.scheme, groups)
        elif as_json:
            rendered = members_json(name, level, members)
        else:
            rendered = members_text(relation.scheme, members)
        self.stdout.write(rendered, ending='')
