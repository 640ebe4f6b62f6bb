"""The quantum Bruhat graph Γ on W₀.

Edges ``w → w r_α`` are Bruhat edges when ``ℓ(w r_α) = ℓ(w) + 1`` (weight 0) and quantum
edges when the length drops by ``<α∨, 2ρ> - 1`` (weight α∨). With the dual convention the
roles of roots and coroots are exchanged: the drop is ``<2ρ∨, α> - 1`` and the weight is α.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cache

import networkx as nx
from django.db.models import TextChoices

from qbg_mobius.affine import Convention
from qbg_mobius.cartan import CorootVector, RootVector
from qbg_mobius.exceptions import InvalidInputError, InvariantViolationError, PreconditionError
from qbg_mobius.weyl import enumerate_group, identity, longest_element, reflection, simple_reflection

logger = logging.getLogger(__name__)

MAX_SORTING_SWAPS = 10_000


class EdgeKind(TextChoices):
    BRUHAT = "bruhat", "Bruhat"
    QUANTUM = "quantum", "Quantum"


class SwapDirection(TextChoices):
    ASCENT = "ascent", "Ascent"
    DESCENT = "descent", "Descent"


@dataclass(frozen=True)
class QBGEdge:
    source: object
    target: object
    label: RootVector
    kind: str
    weight: object

    @property
    def is_quantum(self):
        return self.kind == EdgeKind.QUANTUM

    def to_dict(self):
        return {
            "source": self.source.reduced_word(),
            "target": self.target.reduced_word(),
            "label": self.label.to_list(),
            "kind": str(self.kind),
            "weight": self.weight.to_list(),
        }


@dataclass(frozen=True)
class QBGPath:
    """A directed path; ``edges[i]`` runs from ``vertices[i]`` to ``vertices[i + 1]``."""

    vertices: tuple
    edges: tuple = ()
    convention: str = Convention.UNTWISTED

    def __post_init__(self):
        if not self.vertices:
            raise InvalidInputError({"vertices": "A path needs at least one vertex"})
        if len(self.edges) != len(self.vertices) - 1:
            raise InvalidInputError({"edges": "A path needs exactly one edge per step"})
        for index, edge in enumerate(self.edges):
            if edge.source != self.vertices[index] or edge.target != self.vertices[index + 1]:
                raise InvalidInputError({"edges": f"Edge {index} does not continue the path"})

    @classmethod
    def trivial(cls, vertex, convention=Convention.UNTWISTED):
        return cls((vertex,), (), str(convention))

    @classmethod
    def from_edges(cls, start, edges, convention=Convention.UNTWISTED):
        vertices = [start]
        for edge in edges:
            vertices.append(edge.target)
        return cls(tuple(vertices), tuple(edges), str(convention))

    @property
    def source(self):
        return self.vertices[0]

    @property
    def target(self):
        return self.vertices[-1]

    @property
    def hops(self):
        return len(self.edges)

    @property
    def labels(self):
        return [edge.label for edge in self.edges]

    @property
    def is_two_loop(self):
        return self.hops == 2 and self.source == self.target

    def has_two_loop(self):
        return any(
            self.vertices[index] == self.vertices[index + 2] for index in range(len(self.vertices) - 2)
        )

    def to_dict(self):
        return {
            "vertices": [vertex.reduced_word() for vertex in self.vertices],
            "labels": [label.to_list() for label in self.labels],
            "weights": [edge.weight.to_list() for edge in self.edges],
            "weight": path_weight(self).to_list(),
        }


def zero_weight(system, convention):
    return (CorootVector if convention == Convention.UNTWISTED else RootVector).zero(system.rank)


class ReflectionOrdering:
    """A total order on the positive roots, read off a reduced word of w₀."""

    def __init__(self, roots, word=None):
        self.roots = tuple(roots)
        self.word = list(word) if word is not None else None
        self._rank = {alpha: index for index, alpha in enumerate(self.roots)}

    def __repr__(self):
        return f"<ReflectionOrdering {[root.to_list() for root in self.roots]}>"

    def position(self, alpha):
        try:
            return self._rank[alpha]
        except KeyError:
            raise InvalidInputError({"alpha": f"{alpha} is not ordered by {self!r}"}) from None

    def less(self, alpha, beta):
        return self.position(alpha) < self.position(beta)

    def reversed(self):
        return ReflectionOrdering(reversed(self.roots))

    def is_reflection_ordering(self, system):
        """α < α+β < β or β < α+β < α whenever all three are positive roots."""
        positive = set(system.positive_roots)
        for alpha in self.roots:
            for beta in self.roots:
                total = alpha + beta
                if total not in positive or not self.less(alpha, beta):
                    continue
                if not (self.less(alpha, total) and self.less(total, beta)):
                    return False
        return True

    def to_dict(self):
        return {"word": self.word, "roots": [root.to_list() for root in self.roots]}


def reflection_ordering(system, word):
    """``β_k = s_{i1} ... s_{i(k-1)}(α_{ik})`` for a reduced word of the longest element."""
    w0 = longest_element(system)
    if len(word) != w0.length:
        raise InvalidInputError({"ordering": f"Expected a reduced word of w0 of length {w0.length}"})
    prefix = identity(system)
    roots = []
    for i in word:
        roots.append(prefix.act_on_root(system.simple_roots[i - 1]))
        prefix = prefix * simple_reflection(system, i)
    if prefix != w0 or len(set(roots)) != len(roots) or not all(root.is_positive() for root in roots):
        raise InvalidInputError({"ordering": f"{word} is not a reduced word of the longest element"})
    return ReflectionOrdering(roots, word)


def default_ordering(system):
    return reflection_ordering(system, longest_element(system).reduced_word())


class QBGraph:
    """Γ over a root system; immutable once built."""

    def __init__(self, system, convention=Convention.UNTWISTED):
        self.system = system
        self.convention = Convention(convention)
        self.vertices = enumerate_group(system)
        self.graph = nx.DiGraph()
        self._shortest = {}
        self._build()

    def __repr__(self):
        return f"<QBGraph {self.system.type_label} {self.convention}>"

    def _drop(self, alpha):
        if self.convention == Convention.UNTWISTED:
            return self.system.pair(self.system.coroot(alpha), self.system.two_rho)
        return self.system.pair(self.system.two_rho_check, alpha)

    def _quantum_weight(self, alpha):
        if self.convention == Convention.UNTWISTED:
            return self.system.coroot(alpha)
        return alpha

    def _build(self):
        zero = zero_weight(self.system, self.convention)
        self.graph.add_nodes_from(self.vertices)
        for w in self.vertices:
            for alpha in self.system.positive_roots:
                target = w * reflection(self.system, alpha)
                bruhat = target.length == w.length + 1
                quantum = target.length == w.length - self._drop(alpha) + 1
                if bruhat and quantum:
                    raise InvariantViolationError(f"Edge {w} -> {target} satisfies both edge conditions")
                if bruhat:
                    edge = QBGEdge(w, target, alpha, EdgeKind.BRUHAT, zero)
                elif quantum:
                    edge = QBGEdge(w, target, alpha, EdgeKind.QUANTUM, self._quantum_weight(alpha))
                else:
                    continue
                self.graph.add_edge(w, target, edge=edge)
        logger.debug("Built %r with %d edges", self, self.graph.number_of_edges())

    @property
    def edges(self):
        return [data["edge"] for _u, _v, data in self.graph.edges(data=True)]

    def out_edges(self, w):
        return [data["edge"] for _u, _v, data in self.graph.out_edges(w, data=True)]

    def edge(self, source, target):
        data = self.graph.get_edge_data(source, target)
        return data["edge"] if data else None

    def zero(self):
        return zero_weight(self.system, self.convention)

    def shortest_from(self, source):
        """``(distance, weight)`` maps from ``source``, checking every shortest path agrees."""
        if source not in self._shortest:
            predecessors, distances = nx.predecessor(self.graph, source, return_seen=True)
            weights = {source: self.zero()}
            for vertex in sorted(distances, key=distances.get):
                if vertex == source:
                    continue
                candidates = {weights[p] + self.edge(p, vertex).weight for p in predecessors[vertex]}
                if len(candidates) != 1:
                    raise InvariantViolationError(
                        f"Shortest paths {source} -> {vertex} have different weights: {sorted(map(str, candidates))}"
                    )
                weights[vertex] = candidates.pop()
            self._shortest[source] = (distances, weights)
        return self._shortest[source]

    def distance(self, u, v):
        return self.shortest_from(u)[0][v]

    def path(self, vertices):
        """The path through the given vertices; raises when a step is not an edge."""
        edges = []
        for source, target in zip(vertices, vertices[1:]):
            edge = self.edge(source, target)
            if edge is None:
                raise InvalidInputError({"path": f"{source} -> {target} is not an edge of {self!r}"})
            edges.append(edge)
        return QBGPath(tuple(vertices), tuple(edges), str(self.convention))

    def to_dict(self, ordering=None):
        vertices = sorted(self.vertices, key=lambda w: (w.length, w.reduced_word()))
        index = {w: position for position, w in enumerate(vertices)}
        edges = sorted(self.edges, key=lambda e: (index[e.source], index[e.target]))
        payload = {
            "type": self.system.type_label,
            "convention": str(self.convention),
            "vertices": [w.reduced_word() for w in vertices],
            "edges": [edge.to_dict() for edge in edges],
        }
        if ordering is not None:
            payload["ordering"] = ordering.to_dict()
        return payload

    def to_dot(self):
        vertices = sorted(self.vertices, key=lambda w: (w.length, w.reduced_word()))
        index = {w: position for position, w in enumerate(vertices)}
        lines = [f'digraph "QBG {self.system.type_label} {self.convention}" {{']
        for w in vertices:
            lines.append(f'  "{w}" [length={w.length}];')
        for edge in sorted(self.edges, key=lambda e: (index[e.source], index[e.target])):
            attributes = [f'label="{edge.label}"']
            if edge.is_quantum:
                attributes += ['kind="quantum"', f'weight="{edge.weight}"', "style=dashed"]
            else:
                attributes += ['kind="bruhat"', "style=solid"]
            lines.append(f'  "{edge.source}" -> "{edge.target}" [{", ".join(attributes)}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@cache
def build_qbg(system, convention=Convention.UNTWISTED):
    return QBGraph(system, str(convention))


def min_weight(g, u, v):
    """``(M(u, v), distance)`` for the shortest paths u → v."""
    distances, weights = g.shortest_from(u)
    return weights[v], distances[v]


def shortest_paths(g, u, v):
    return [g.path(vertices) for vertices in nx.all_shortest_paths(g.graph, u, v)]


def path_weight(p):
    if not p.edges:
        return zero_weight(p.source.system, p.convention)
    for edge in p.edges:
        if reflection(edge.source.system, edge.label) != edge.source.inverse() * edge.target:
            raise InvalidInputError({"path": f"Edge {edge.source} -> {edge.target} is not labelled by {edge.label}"})
    total = p.edges[0].weight
    for edge in p.edges[1:]:
        total = total + edge.weight
    return total


def iter_paths(g, length, source=None):
    """Every directed path with ``length`` edges, optionally from one source."""
    sources = [source] if source is not None else g.vertices
    stack = [(w,) for w in sources]
    while stack:
        vertices = stack.pop()
        if len(vertices) == length + 1:
            yield g.path(vertices)
            continue
        for edge in g.out_edges(vertices[-1]):
            stack.append((*vertices, edge.target))


def _replace_pair(p, i, first, second):
    edges = list(p.edges)
    edges[i : i + 2] = [first, second]
    return QBGPath.from_edges(p.source, edges, p.convention)


def diamond_swap(g, p, i, ordering, direction=SwapDirection.ASCENT):
    """Replace edges i, i+1 of ``p`` by the unique pair with the same endpoints in the requested order.

    ``ascent`` turns a descent of labels into an ascent; ``descent`` the reverse.
    """
    if not 0 <= i < p.hops - 1:
        raise InvalidInputError({"i": f"No edge pair at position {i} of a path with {p.hops} edges"})
    first, second = p.edges[i], p.edges[i + 1]
    ascending = direction == SwapDirection.ASCENT
    if first.label == second.label or ordering.less(first.label, second.label) == ascending:
        raise PreconditionError({"i": f"Labels at position {i} are not a {'descent' if ascending else 'ascent'}"})

    start, end = first.source, second.target
    replacements = []
    for candidate in g.out_edges(start):
        closing = g.edge(candidate.target, end)
        if closing is None or candidate.label == closing.label:
            continue
        if ordering.less(candidate.label, closing.label) == ascending:
            replacements.append((candidate, closing))

    if not replacements:
        raise PreconditionError({"i": f"No {direction} replacement for the pair at position {i}"})
    if len(replacements) > 1:
        raise InvariantViolationError(f"{len(replacements)} {direction} replacements for {start} -> {end}")

    swapped = _replace_pair(p, i, *replacements[0])
    if path_weight(swapped) != path_weight(p):
        raise InvariantViolationError("Diamond swap changed the path weight")
    return swapped


def find_two_loop_equivalent(g, p, ordering=None):
    """An interval-equivalent path containing a 2-loop, or ``None`` when p is minimal.

    Sorts the label sequence into increasing order by diamond swaps; a non-minimal path
    meets a 2-loop before it is sorted.
    """
    if p.hops == g.distance(p.source, p.target):
        return None
    ordering = ordering or default_ordering(g.system)

    path = p
    for _ in range(MAX_SORTING_SWAPS):
        if path.has_two_loop():
            return path
        descent = next(
            (
                index
                for index in range(path.hops - 1)
                if not ordering.less(path.edges[index].label, path.edges[index + 1].label)
            ),
            None,
        )
        if descent is None:
            raise InvariantViolationError(f"Non-minimal path {p.to_dict()} sorted without meeting a 2-loop")
        path = diamond_swap(g, path, descent, ordering, SwapDirection.ASCENT)
    raise InvariantViolationError("Sorting by diamond swaps did not terminate")


def interval_equivalence_class(g, p, ordering=None, limit=100_000):
    """All paths reachable from ``p`` by diamond swaps in either direction."""
    ordering = ordering or default_ordering(g.system)
    seen = {p}
    queue = deque([p])
    while queue:
        path = queue.popleft()
        for index in range(path.hops - 1):
            first, second = path.edges[index], path.edges[index + 1]
            if first.label == second.label:
                continue
            direction = (
                SwapDirection.DESCENT if ordering.less(first.label, second.label) else SwapDirection.ASCENT
            )
            try:
                swapped = diamond_swap(g, path, index, ordering, direction)
            except PreconditionError:
                continue
            if swapped not in seen:
                seen.add(swapped)
                queue.append(swapped)
                if len(seen) > limit:
                    raise InvariantViolationError("Interval equivalence class exceeded its size limit")
    return seen


def interval_equivalent(g, p, q, ordering=None):
    if (p.source, p.target, p.hops) != (q.source, q.target, q.hops):
        return False
    return q in interval_equivalence_class(g, p, ordering)


def excess_weight(g, p):
    """``wt(p) - M(source, target)``, which has non-negative coordinates."""
    weight, _hops = min_weight(g, p.source, p.target)
    excess = path_weight(p) - weight
    if any(c < 0 for c in excess.coords):
        raise InvariantViolationError(f"Path weight falls below M: excess {excess}")
    return excess


def tilted_leq(g, w, u, v):
    """u ⪯_w v: u lies on a shortest path from w to v."""
    weight_wu, hops_wu = min_weight(g, w, u)
    weight_uv, hops_uv = min_weight(g, u, v)
    weight_wv, hops_wv = min_weight(g, w, v)
    return hops_wu + hops_uv == hops_wv and weight_wu + weight_uv == weight_wv
