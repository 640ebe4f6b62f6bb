"""Console entry point: ``qbg-mobius <command> ...``.

Runs the Django management utility against the bundled standalone settings. Dashes in the
command name are accepted, so ``verify-theorem`` runs ``verify_theorem``.
"""

import os
import sys

from django.core.management import execute_from_command_line


def main(argv=None):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "qbg_mobius.settings")
    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1 and not argv[1].startswith("-"):
        argv[1] = argv[1].replace("-", "_")
    execute_from_command_line(argv)


if __name__ == "__main__":
    main()
