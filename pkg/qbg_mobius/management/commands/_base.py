"""Shared plumbing for the qbg-mobius management commands.

Exit codes: 0 success, 1 disagreement found, 2 usage or input error, 3 regularity refusal.
"""

import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from qbg_mobius import __version__
from qbg_mobius.affine import AffineWeylGroup, Convention
from qbg_mobius.cartan import load_cartan_file, root_system
from qbg_mobius.conf import get_config
from qbg_mobius.exceptions import (
    InvalidInputError,
    PreconditionError,
    RegularityError,
    UnsupportedProfileError,
    UnsupportedTypeError,
)
from qbg_mobius.regularity import RegularityConfig, RegularityProfile, RegularityScope
from qbg_mobius.serializers import parse_element

EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2
EXIT_REGULARITY = 3


class QBGCommand(BaseCommand):
    requires_system_checks = []

    def add_type_arguments(self, parser):
        parser.add_argument("--type", dest="type_label", help="Root system type, e.g. A2, C3, G2")
        parser.add_argument(
            "--cartan-file",
            help='JSON file {"cartan": [[...]], "label": "..."} with a custom Cartan matrix',
        )
        parser.add_argument("--convention", choices=Convention.values, help="QBG/affine convention")

    def add_regularity_arguments(self, parser):
        parser.add_argument("--regularity-profile", choices=RegularityProfile.values)
        parser.add_argument("--regularity-scope", choices=RegularityScope.values)

    def get_group(self, options):
        config = get_config()
        if options.get("cartan_file"):
            path = Path(options["cartan_file"])
            try:
                data = json.loads(path.read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise CommandError(f"Cannot read {path}: {exc}", returncode=EXIT_USAGE) from exc
            system = load_cartan_file(data)
        else:
            system = root_system(options.get("type_label") or config["default_type"])
        convention = options.get("convention") or config["default_convention"]
        return AffineWeylGroup(system, convention, cover_window_slack=config["cover_window_slack"])

    def get_regularity(self, group, options):
        config = get_config()
        return RegularityConfig.for_system(
            group.system,
            profile=options.get("regularity_profile") or config["regularity_profile"],
            scope=options.get("regularity_scope") or config["regularity_scope"],
        )

    def get_element(self, group, options, name):
        text = options.get(name)
        if not text:
            raise CommandError(f"--{name} is required", returncode=EXIT_USAGE)
        return parse_element(group, text)

    def envelope(self, group, payload, regularity=None):
        payload = {
            "version": __version__,
            "type": group.type_label,
            "convention": str(group.convention),
            **payload,
        }
        if regularity is not None:
            payload["regularity"] = regularity.to_dict()
        return payload

    def write_json(self, payload):
        self.stdout.write(json.dumps(payload, indent=2, sort_keys=True, default=str))

    def handle(self, *args, **options):
        try:
            result = self.run(**options)
        except RegularityError as exc:
            raise CommandError(str(exc), returncode=EXIT_REGULARITY) from exc
        except (InvalidInputError, PreconditionError, UnsupportedTypeError, UnsupportedProfileError) as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE) from exc

        if isinstance(result, str):
            self.stdout.write(result, ending="")
        elif result is not None:
            self.write_json(result)

    def run(self, **options):
        raise NotImplementedError
