#!/usr/bin/env python
"""
Точка входу: python -m apps.toolkit.cli <eq|green|comb|remez|rate|verify|dichotomy> [прапорці]

Коди виходу: 0 - успіх, 2 - неправильні аргументи, 3 - числова помилка,
4 - доведена оцінка не виконалась.
"""
import os
import re
import sys

import django

SUBCOMMANDS = ("eq", "green", "comb", "remez", "rate", "verify", "dichotomy")
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VIOLATION = 0, 2, 3, 4

# "-1,1", "-0.5+1j", "-2" - значення, а не прапорці
_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def join_negative_values(args):
    """["--set", "-1,1"] -> ["--set=-1,1"], бо argparse приймає "-1,1" за прапорець."""
    out = []
    i = 0
    while i < len(args):
        token = args[i]
        if (token.startswith("--") and "=" not in token and i + 1 < len(args)
                and _NEGATIVE_VALUE.match(args[i + 1])):
            out.append(f"{token}={args[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def usage(stream):
    stream.write(f"usage: potentia {{{','.join(SUBCOMMANDS)}}} [options]\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "Potentia.settings")
    django.setup()

    from django.core.management import call_command
    from django.core.management.base import CommandError
    from Potentia.exceptions import InputError, NumericalError, ProvedBoundViolation

    if not argv or argv[0] not in SUBCOMMANDS:
        usage(sys.stderr)
        return EXIT_USAGE

    try:
        call_command(argv[0], *join_negative_values(argv[1:]))
    except ProvedBoundViolation as exc:
        sys.stderr.write(f"proved bound violated: {exc}\n")
        return EXIT_VIOLATION
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure ({type(exc).__name__}): {exc}\n")
        return EXIT_NUMERIC
    except (InputError, CommandError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
