"""
Management command reporting superregularity bounds.

Usage:
    qbg-mobius regularity report --type G2
    qbg-mobius regularity check --type A2 --y "w=[1,2] t=[-10,-10]" --regularity-profile welch --gap 3
"""

from qbg_mobius.regularity import chain_bound, is_superregular, regularity_margin, report, required_bound
from qbg_mobius.serializers import element_to_dict

from ._base import QBGCommand


class Command(QBGCommand):
    help = "Report the regularity bounds of every profile, or check one element against them"

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["report", "check"])
        self.add_type_arguments(parser)
        self.add_regularity_arguments(parser)
        parser.add_argument("--y", help="Element to check")
        parser.add_argument("--gap", type=int, default=1, help="Length gap m of the chains below y")

    def run(self, **options):
        group = self.get_group(options)
        if options["action"] == "report":
            return self.envelope(group, {"profiles": report(group.system)})

        regularity = self.get_regularity(group, options)
        y = self.get_element(group, options, "y")
        gap = options["gap"]
        return self.envelope(
            group,
            {
                "y": element_to_dict(group, y),
                "gap": gap,
                "margin": regularity_margin(group.system, y.lam),
                "chain_bound": chain_bound(group.system, regularity, gap),
                "required_bound": required_bound(group.system, regularity, gap),
                "superregular": is_superregular(y, regularity, gap),
            },
            regularity,
        )
