"""
Management command computing the Möbius function of W⁰.

Usage:
    qbg-mobius mobius --type A2 --x "w=[1] t=[-10,-9]" --y "w=[1,2] t=[-10,-10]" --method all
    qbg-mobius mobius --type A2 --y "w=[1,2] t=[-10,-10]" --support
"""

from qbg_mobius.mobius import (
    MobiusMethod,
    below_map,
    mobius_all,
    mobius_deodhar,
    mobius_oracle,
    mobius_superregular,
    tilted_order_report,
)
from qbg_mobius.serializers import element_to_dict

from ._base import QBGCommand


class Command(QBGCommand):
    help = "Compute μ̃(x, y) by the oracle, Deodhar's criterion and the superregular closed form"

    def add_arguments(self, parser):
        self.add_type_arguments(parser)
        self.add_regularity_arguments(parser)
        parser.add_argument("--x", help='Lower element, e.g. "w=[1] t=[-10,-9]"')
        parser.add_argument("--y", help='Upper element, e.g. "w=[1,2] t=[-10,-10]"')
        parser.add_argument("--method", choices=[*MobiusMethod.values, "all"], default="all")
        parser.add_argument(
            "--support",
            action="store_true",
            help="List the elements x with μ̃(x, y) ≠ 0 and the tilted order report instead",
        )

    def run(self, **options):
        group = self.get_group(options)
        regularity = self.get_regularity(group, options)
        y = self.get_element(group, options, "y")

        if options["support"]:
            members = below_map(group, y, regularity)
            return self.envelope(
                group,
                {
                    "y": element_to_dict(group, y),
                    "support": [
                        {"u": u.reduced_word(), "element": element_to_dict(group, element)}
                        for u, element in members.items()
                    ],
                    "tilted_order": tilted_order_report(group, y, regularity),
                },
                regularity,
            )

        x = self.get_element(group, options, "x")
        method = options["method"]
        if method == "all":
            record = mobius_all(group, x, y, regularity)
        elif method == MobiusMethod.ORACLE:
            record = {"oracle": mobius_oracle(group, x, y)}
        elif method == MobiusMethod.DEODHAR:
            record = {"deodhar": mobius_deodhar(group, x, y).to_dict()}
        else:
            record = {"superregular": mobius_superregular(group, x, y, regularity).to_dict()}

        return self.envelope(
            group,
            {"x": element_to_dict(group, x), "y": element_to_dict(group, y), **record},
            regularity,
        )
