import sys

from algebra.gdp import g_norm, g_reduce, g_rep
from querylang.evaluator import eval_query
from querylang.parser import parse_query
from relations.exceptions import AlgebraError
from storage.cli import EngineCommand, exit_codes
from storage.rendering import members_text, relation_text

PROMPT = 'gdpr> '
HELP = """\
Enter an expression to evaluate it, for example select[PNUM=p1](supply).
  :rep NAME         information content of a relation
  :normalize NAME   normalize and reduce a relation for the rest of the session
  :help             this text
  :quit             leave
"""


class Command(EngineCommand):
    help = "Evaluate expressions against a database file interactively, one per line."
    stealth_options = ('stdin',)

    def handle(self, *args, **options):
        stdin = options.get('stdin') or sys.stdin
        with exit_codes():
            self.db = self.load(options)
        self.cap_value = self.cap(options)
        interactive = hasattr(stdin, 'isatty') and stdin.isatty()

        while True:
            if interactive:
                self.stdout.write(PROMPT, ending='')
                self.stdout.flush()
            line = stdin.readline()
            if not line:
                break
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            if line == ':quit':
                break
            try:
                self.stdout.write(self.respond(line), ending='')
            except AlgebraError as exc:
                self.stderr.write(f"error: {exc}")

    def respond(self, line):
        command, _, argument = line.partition(' ')
        argument = argument.strip()
        if command == ':help':
            return HELP
        if command == ':rep':
            relation = g_norm(self.db.relation(argument))
            return members_text(relation.scheme, g_rep(relation, self.cap_value))
        if command == ':normalize':
            relation = g_reduce(g_norm(self.db.relation(argument)))
            self.db = self.db.with_relation(argument, relation)
            return relation_text(relation, argument)
        if command.startswith(':'):
            return f"unknown command {command}; try :help\n"
        return relation_text(eval_query(parse_query(line), self.db, self.cap_value))
