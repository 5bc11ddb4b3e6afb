from querylang.evaluator import eval_query
from querylang.parser import parse_query
from storage.cli import EngineCommand, exit_codes
from storage.rendering import relation_json, relation_text


class Command(EngineCommand):
    help = "Evaluate an algebra expression against a database file and print the resulting relation."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('query', help="Expression, e.g. \"select[PNUM=p1](supply)\".")
        parser.add_argument('--format', choices=['text', 'json'], default='text')

    def handle(self, *args, **options):
        with exit_codes():
            db = self.load(options)
            result = eval_query(parse_query(options['query']), db, self.cap(options))
        if options['format'] == 'json':
            self.stdout.write(relation_json(result), ending='')
        else:
            self.stdout.write(relation_text(result), ending='')
