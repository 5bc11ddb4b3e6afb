from django.conf import settings
from django.core.management.base import CommandError

from difftest.checks import run_check
from difftest.generators import GenConfig
from storage.cli import EXIT_VIOLATION, EngineCommand, exit_codes, positive_int
from storage.rendering import report_text, reports_json

THEOREMS = ('1', '2', '3', 'classical')


def trial_count(text):
    value = int(text)
    if value < 0:
        raise ValueError(text)
    return value


class Command(EngineCommand):
    help = (
        "Check the information-content laws on random relations: 1 for reduction, 2 for union and "
        "intersection, 3 for selection, projection and join, classical for definite inputs. "
        "Exits with status 3 when a violation is found."
    )
    takes_database = False

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--theorem', choices=THEOREMS + ('all',), default='all')
        parser.add_argument('--seed', type=int, default=settings.GDPR_FUZZ_SEED)
        parser.add_argument('--trials', type=trial_count, default=settings.GDPR_FUZZ_TRIALS)
        parser.add_argument('--workers', type=positive_int, default=1,
                            help="Run trials on this many processes.")
        parser.add_argument('--singleton-negatives', action='store_true',
                            help="Generate negative tuple sets of size one only.")
        parser.add_argument('--format', choices=['text', 'json'], default='text')

    def handle(self, *args, **options):
        theorems = THEOREMS if options['theorem'] == 'all' else (options['theorem'],)
        with exit_codes():
            cfg = GenConfig(
                seed=options['seed'],
                trials=options['trials'],
                cap=self.cap(options),
                singleton_negatives=options['singleton_negatives'],
            )
            reports = [run_check(theorem, cfg, options['workers']) for theorem in theorems]

        if options['format'] == 'json':
            self.stdout.write(reports_json(reports), ending='')
        else:
            for report in reports:
                self.stdout.write(report_text(report), ending='')

        violations = sum(len(report.violations) for report in reports)
        if violations:
            raise CommandError(f"{violations} violation(s) found", returncode=EXIT_VIOLATION)
