"""The Möbius function μ̃ of the Bruhat order on W⁰, computed three ways.

* ``oracle``: the defining recursion over the W⁰ part of the interval.
* ``deodhar``: ``(-1)^{ℓ(v)-ℓ(u)}`` when no classical ``u s_i ≤ v``, else 0.
* ``superregular``: for ``y = w t_λ`` deep in the antidominant chamber and ``x = w' t_λ'``,
  nonzero exactly when ``λ' = λ + M(w, w')``.
"""

import logging
from dataclasses import dataclass

import networkx as nx
from django.db.models import TextChoices

from qbg_mobius.affine import AffineElement, Convention
from qbg_mobius.exceptions import InvariantViolationError, PreconditionError, RegularityError
from qbg_mobius.qbg import build_qbg, min_weight, tilted_leq
from qbg_mobius.regularity import certify, default_config

logger = logging.getLogger(__name__)


class MobiusMethod(TextChoices):
    ORACLE = "oracle", "Poset recursion"
    DEODHAR = "deodhar", "Deodhar's criterion"
    SUPERREGULAR = "superregular", "Superregular closed form"


@dataclass(frozen=True)
class MobiusResult:
    value: int
    method: str
    witness: object = None

    def to_dict(self):
        return {"value": self.value, "method": str(self.method), "witness": self.witness}


def _require_grassmannian(group, **elements):
    for name, element in elements.items():
        group.check(element)
        if not group.is_affine_grassmannian(element):
            raise PreconditionError({name: f"{element} is not affine Grassmannian"})


def _sign(gap):
    return -1 if gap % 2 else 1


def mobius_oracle(group, x, y):
    """μ̃(x, y) by the recursion ``μ̃(x, z) = -Σ_{x ≤ z' < z} μ̃(x, z')`` in increasing length."""
    _require_grassmannian(group, x=x, y=y)
    graph = group.lower_graph(y, floor=x.length, grassmannian=True)
    if x not in graph:
        raise PreconditionError({"x": f"{x} is not below {y} in the Bruhat order"})

    # Edges point downwards: ancestors are above, descendants below.
    interval = nx.ancestors(graph, x) | {x}
    values = {x: 1}
    for z in sorted(interval - {x}, key=lambda element: element.length):
        values[z] = -sum(values[lower] for lower in nx.descendants(graph, z) & interval)
    return values[y]


def mobius_column(group, y, floor):
    """``{z: μ̃(z, y)}`` for every W⁰ element ``z ≤ y`` with ``ℓ(z) ≥ floor``.

    Uses the dual recursion ``μ̃(z, y) = -Σ_{z < z' ≤ y} μ̃(z', y)`` over one downward search.
    """
    _require_grassmannian(group, y=y)
    graph = group.lower_graph(y, floor=floor, grassmannian=True)
    values = {y: 1}
    for z in sorted(graph.nodes, key=lambda element: -element.length):
        if z == y:
            continue
        values[z] = -sum(values[upper] for upper in nx.ancestors(graph, z))
    return values


def mobius_deodhar(group, u, v):
    _require_grassmannian(group, u=u, v=v)
    memo = {}
    if not group.bruhat_leq(u, v, memo):
        raise PreconditionError({"u": f"{u} is not below {v} in the Bruhat order"})
    for i in range(1, group.rank + 1):
        if group.bruhat_leq(u * group.simple_reflection(i), v, memo):
            return MobiusResult(0, MobiusMethod.DEODHAR, witness=i)
    return MobiusResult(_sign(v.length - u.length), MobiusMethod.DEODHAR)


def _quantum_graph(group):
    return build_qbg(group.system, Convention.UNTWISTED)


def _resolve_regularity(group, regularity):
    return regularity or default_config(group.system)


def predicted_value(group, x, y):
    """The closed-form value without any regularity check or order test."""
    g = _quantum_graph(group)
    weight, _hops = min_weight(g, y.w, x.w)
    if x.lam == y.lam + weight:
        return _sign(y.length - x.length)
    return 0


def mobius_superregular(group, x, y, regularity=None, check_order=True):
    """μ̃(x, y) from ``M(w, w')``; refuses when y is not certified superregular."""
    _require_grassmannian(group, x=x, y=y)
    certify(group, y, _resolve_regularity(group, regularity))
    if check_order and not group.bruhat_leq(x, y):
        raise PreconditionError({"x": f"{x} is not below {y} in the Bruhat order"})
    return MobiusResult(predicted_value(group, x, y), MobiusMethod.SUPERREGULAR)


def below_map(group, y, regularity=None):
    """``{u: u t_{λ + M(w, u)}}`` over W₀."""
    _require_grassmannian(group, y=y)
    certify(group, y, _resolve_regularity(group, regularity))
    g = _quantum_graph(group)
    result = {}
    for u in group.finite_elements():
        weight, _hops = min_weight(g, y.w, u)
        element = AffineElement(u, y.lam + weight)
        if not group.is_affine_grassmannian(element):
            raise InvariantViolationError(f"{element} lies outside W⁰")
        result[u] = element
    return result


def elements_below(group, y, regularity=None):
    """The support ``{x : μ̃(x, y) ≠ 0}``, one element per u ∈ W₀."""
    return set(below_map(group, y, regularity).values())


def mobius_all(group, x, y, regularity=None):
    """All three values and whether they agree; the superregular one is ``None`` when refused."""
    oracle = mobius_oracle(group, x, y)
    deodhar = mobius_deodhar(group, x, y)
    record = {
        "oracle": oracle,
        "deodhar": deodhar.value,
        "deodhar_witness": deodhar.witness,
        "superregular": None,
        "refused": None,
    }
    try:
        record["superregular"] = mobius_superregular(group, x, y, regularity, check_order=False).value
    except RegularityError as exc:
        record["refused"] = str(exc)
    values = {record["oracle"], record["deodhar"]}
    if record["superregular"] is not None:
        values.add(record["superregular"])
    record["agree"] = len(values) == 1
    return record


def tilted_order_report(group, y, regularity=None):
    """Cover relations of B(y) against ⪯_w covers, pulled back to W₀.

    Reported, not asserted: the two relations are listed side by side.
    """
    members = below_map(group, y, regularity)
    g = _quantum_graph(group)
    w = y.w
    memo = {}

    bruhat_covers = []
    tilted_covers = []
    for u, lower in members.items():
        for u_prime, upper in members.items():
            if u == u_prime:
                continue
            if upper.length == lower.length + 1 and group.bruhat_leq(lower, upper, memo):
                bruhat_covers.append((u_prime, u))
            if g.distance(w, u) == g.distance(w, u_prime) + 1 and tilted_leq(g, w, u_prime, u):
                tilted_covers.append((u_prime, u))

    def encode(pairs):
        return sorted([a.reduced_word(), b.reduced_word()] for a, b in pairs)

    bruhat = encode(bruhat_covers)
    tilted = encode(tilted_covers)
    return {
        "type": group.type_label,
        "w": w.reduced_word(),
        "lambda": y.lam.to_list(),
        "bruhat_covers": bruhat,
        "tilted_covers": tilted,
        "agree": bruhat == tilted,
    }
