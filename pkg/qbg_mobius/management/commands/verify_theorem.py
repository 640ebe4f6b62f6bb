"""
Management command sweeping the closed-form Möbius function against the oracle.

Every antidominant λ in the box and every classical w give a top y = w t_λ. The box bounds the
simple-coroot coordinates of λ, or the simple pairings <λ, α_i> with --box-mode pairings. Every
W⁰ element x with ℓ(x) ≤ ℓ(y) and translation in λ + [0, window]^rank is checked.

Usage:
    qbg-mobius verify-theorem --type A2 --box -12 -8 --window 4
    qbg-mobius verify-theorem --type C2 --box -16 -12 --sample 3 --seed 7
    qbg-mobius verify-theorem --type A2 --box -12 -8 --box-mode pairings

Configuration in settings.py:
    QBG_MOBIUS = {
        "verify": {
            "box": [-12, -8],
            "box_mode": "coordinates",
            "window": 4,
            "sample": None,
            "seed": 0,
            "check_intervals": False,
        },
    }
"""

from django.core.management.base import CommandError

from qbg_mobius.conf import get_config
from qbg_mobius.verification import BoxMode, verify_theorem

from ._base import EXIT_DISAGREEMENT, QBGCommand


class Command(QBGCommand):
    help = "Verify the superregular Möbius formula against the poset oracle and Deodhar's criterion"

    def add_arguments(self, parser):
        self.add_type_arguments(parser)
        self.add_regularity_arguments(parser)
        parser.add_argument("--box", nargs=2, type=int, metavar=("LOW", "HIGH"), help="Range for the coordinates of λ")
        parser.add_argument(
            "--box-mode",
            choices=BoxMode.values,
            help="Bound the simple-coroot coordinates of λ or its simple pairings <λ, α_i>",
        )
        parser.add_argument("--window", type=int, help="Translation window above λ for the lower element")
        parser.add_argument("--sample", type=int, help="Number of classical w sampled per λ (default: all)")
        parser.add_argument("--seed", type=int, help="Seed for --sample")
        parser.add_argument(
            "--check-intervals",
            action="store_true",
            default=None,
            help="Also compare Deodhar's criterion with a full interval enumeration",
        )
        parser.add_argument("--threads", type=int, help="Worker processes (default: QBG_THREADS)")

    def run(self, **options):
        verify = get_config("verify")
        group = self.get_group(options)
        regularity = self.get_regularity(group, options)

        def option(name):
            return verify[name] if options.get(name) is None else options[name]

        report = verify_theorem(
            group,
            box=tuple(option("box")),
            window=option("window"),
            regularity=regularity,
            sample=option("sample"),
            seed=option("seed"),
            check_intervals=option("check_intervals"),
            threads=options.get("threads") or get_config("threads"),
            box_mode=option("box_mode"),
        )
        self.write_json(report.to_dict())

        if not report.passed:
            raise CommandError(
                f"{len(report.disagreements)} disagreement(s) in {report.pairs_checked} pairs",
                returncode=EXIT_DISAGREEMENT,
            )
        self.stderr.write(
            self.style.SUCCESS(f"{report.pairs_checked} pairs over {report.tops_checked} tops agree")
        )
