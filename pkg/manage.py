#!/usr/bin/env python
"""Command-line entry point: eval, rep, normalize, fuzz and repl, plus Django's own commands."""
import os
import sys


def main():
    """Run a management command."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'core.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment? "
            "(pip install -r requirements.txt)"
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
