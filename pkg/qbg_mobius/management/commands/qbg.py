"""
Management command exporting the quantum Bruhat graph.

Usage:
    qbg-mobius qbg export --type A2 --convention untwisted --format dot
    qbg-mobius qbg export --type C3 --convention dual --format json
    qbg-mobius qbg paths --type A2 --source "[1,2,1]" --target "[1]"
"""

from qbg_mobius.qbg import build_qbg, default_ordering, min_weight, reflection_ordering, shortest_paths
from qbg_mobius.serializers import parse_int_list
from qbg_mobius.weyl import from_word

from ._base import QBGCommand


class Command(QBGCommand):
    help = "Export the quantum Bruhat graph or list the shortest paths between two vertices"

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["export", "paths"])
        self.add_type_arguments(parser)
        parser.add_argument("--format", choices=["dot", "json"], default="json")
        parser.add_argument("--ordering", help="Reduced word of w0 defining the reflection ordering, e.g. [1,2,1]")
        parser.add_argument("--source", help="Source vertex as a reduced word, e.g. [1,2,1]")
        parser.add_argument("--target", help="Target vertex as a reduced word")

    def run(self, **options):
        group = self.get_group(options)
        graph = build_qbg(group.root_system, group.convention)

        if options["ordering"]:
            ordering = reflection_ordering(graph.system, parse_int_list(options["ordering"], "ordering"))
        else:
            ordering = default_ordering(graph.system)

        if options["action"] == "paths":
            source = from_word(graph.system, parse_int_list(options["source"] or "[]", "source"))
            target = from_word(graph.system, parse_int_list(options["target"] or "[]", "target"))
            weight, hops = min_weight(graph, source, target)
            return self.envelope(
                group,
                {
                    "source": source.reduced_word(),
                    "target": target.reduced_word(),
                    "hops": hops,
                    "weight": weight.to_list(),
                    "paths": [path.to_dict() for path in shortest_paths(graph, source, target)],
                },
            )

        if options["format"] == "dot":
            return graph.to_dot()
        return self.envelope(group, graph.to_dict(ordering))
