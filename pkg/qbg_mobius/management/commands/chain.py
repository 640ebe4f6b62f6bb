"""
Management command decomposing a saturated chain into near and far paths.

The chain file is a JSON list of element encodings, bottom first:

    [
        {"w": [2], "t": [3, 2]},
        "w=[1,2] t=[-3,-4]",
        "w=[1,2,1] t=[-4,-4]",
        "w=[1,2] t=[-4,-4]"
    ]

Usage:
    qbg-mobius chain decompose --type A2 --chain-file chain.json
"""

import json
from pathlib import Path

from django.core.management.base import CommandError

from qbg_mobius.chains import decompose_chain, reconstruct_bottom
from qbg_mobius.serializers import element_to_dict, load_chain

from ._base import EXIT_USAGE, QBGCommand


class Command(QBGCommand):
    help = "Decompose a saturated chain into near/far products and paths in the quantum Bruhat graph"

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["decompose"])
        self.add_type_arguments(parser)
        self.add_regularity_arguments(parser)
        parser.add_argument("--chain-file", required=True, help="JSON list of elements, bottom first")
        parser.add_argument(
            "--certify",
            action="store_true",
            help="Refuse chains whose top is not superregular for the chain length",
        )

    def run(self, **options):
        group = self.get_group(options)
        path = Path(options["chain_file"])
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"Cannot read {path}: {exc}", returncode=EXIT_USAGE) from exc

        chain = load_chain(group, data)
        regularity = self.get_regularity(group, options) if options["certify"] else None
        decomposition = decompose_chain(group, chain, regularity)
        return self.envelope(
            group,
            {
                "chain": [element_to_dict(group, element) for element in chain],
                **decomposition.to_dict(),
                "bottom": element_to_dict(group, reconstruct_bottom(decomposition)),
            },
            regularity,
        )
