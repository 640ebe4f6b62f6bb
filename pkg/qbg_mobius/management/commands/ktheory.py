"""
Management command for basis changes between structure and ideal sheaf classes.

Usage:
    qbg-mobius ktheory ideal-expansion --type A2 --y "w=[1,2] t=[-10,-10]"
    qbg-mobius ktheory structure-expansion --type A2 --y "w=[1,2] t=[-4,-4]"
    qbg-mobius ktheory round-trip --type A2 --y "w=[1,2] t=[-10,-10]"
"""

from qbg_mobius.conf import get_config
from qbg_mobius.ktheory import ideal_in_structure, round_trip, structure_in_ideal
from qbg_mobius.serializers import element_to_dict

from ._base import QBGCommand


class Command(QBGCommand):
    help = "Expand I_y in structure sheaf classes, O_y in ideal sheaf classes, or check the round trip"

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["ideal-expansion", "structure-expansion", "round-trip"])
        self.add_type_arguments(parser)
        self.add_regularity_arguments(parser)
        parser.add_argument("--y", help='Element, e.g. "w=[1,2] t=[-10,-10]"')
        parser.add_argument("--floor", type=int, help="Minimum length kept in lower sets")

    def run(self, **options):
        group = self.get_group(options)
        y = self.get_element(group, options, "y")
        floor = options["floor"] if options["floor"] is not None else get_config("ktheory")["truncation_floor"]

        def encode(element):
            return element_to_dict(group, element)

        action = options["action"]
        if action == "structure-expansion":
            expansion = structure_in_ideal(group, y, floor)
            return self.envelope(
                group, {"y": encode(y), "basis": expansion.basis, "floor": floor, "terms": expansion.to_list(encode)}
            )

        regularity = self.get_regularity(group, options)
        if action == "ideal-expansion":
            expansion = ideal_in_structure(group, y, regularity)
            return self.envelope(
                group, {"y": encode(y), "basis": expansion.basis, "terms": expansion.to_list(encode)}, regularity
            )

        result = round_trip(group, y, floor, regularity)
        return self.envelope(
            group,
            {
                "y": encode(y),
                "floor": result.floor,
                "exact": result.exact,
                "terms": result.collapsed.to_list(encode),
            },
            regularity,
        )
