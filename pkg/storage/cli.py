"""Shared plumbing for the management commands: arguments, loading and exit codes."""
from argparse import ArgumentTypeError
from contextlib import contextmanager

from django.core.management.base import BaseCommand, CommandError

from relations.exceptions import AlgebraError, CombinatorialLimit
from relations.limits import default_cap

from .dbfile import load_db

EXIT_ERROR = 1
EXIT_LIMIT = 2
EXIT_VIOLATION = 3


def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise ArgumentTypeError(f"'{text}' is not an integer") from None
    if value < 1:
        raise ArgumentTypeError("must be a positive integer")
    return value


@contextmanager
def exit_codes():
    """Map engine errors to ``CommandError``: 2 for the combinatorial cap, 1 for everything else."""
    try:
        yield
    except CombinatorialLimit as exc:
        raise CommandError(str(exc), returncode=EXIT_LIMIT) from exc
    except (AlgebraError, OSError, UnicodeDecodeError) as exc:
        raise CommandError(str(exc), returncode=EXIT_ERROR) from exc


class EngineCommand(BaseCommand):
    """Base for commands that read a database file and honour ``--cap``."""
    requires_system_checks = []
    takes_database = True

    def add_arguments(self, parser):
        if self.takes_database:
            parser.add_argument('database', help="Path of the database file.")
        parser.add_argument(
            '--cap', type=positive_int, default=None,
            help="Largest number of objects one enumeration step may generate "
                 "(default: GDPR_MAX_WORLDS).",
        )

    def cap(self, options):
        return options['cap'] if options['cap'] is not None else default_cap()

    def load(self, options):
        return load_db(options['database'])
