from algebra.gdp import g_norm, g_reduce, redundancies
from storage.cli import EngineCommand, exit_codes
from storage.dbfile import dumps_db, write_db


class Command(EngineCommand):
    help = (
        "Replace stored relations by their normalized, reduced form. "
        "Prints the database unless --output is given."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--relation', help="Only normalize this relation.")
        parser.add_argument('--output', help="Write the database to this path instead of printing it.")
        parser.add_argument(
            '--explain', action='store_true',
            help="List the inconsistencies and redundancies found, as comment lines.",
        )

    def handle(self, *args, **options):
        with exit_codes():
            db = self.load(options)
            names = [options['relation']] if options['relation'] else list(db.relations)
            for name in names:
                relation = db.relation(name)
                if options['explain']:
                    for found in redundancies(relation):
                        self.stdout.write(f"# {name}: {found.describe()}")
                db = db.with_relation(name, g_reduce(g_norm(relation)))
            if options['output']:
                write_db(db, options['output'])
            else:
                self.stdout.write(dumps_db(db), ending='')
