"""Near and far coverings of superregular elements and the paths they trace in Γ.

Write ``y = w t_{vλ}`` with λ antidominant. A cover ``x = y r_{vα+nδ} ⋖ y`` falls in one
of four cases:

1. ``ℓ(wv r_α) = ℓ(wv) + 1``, ``n = <λ, α>``: ``x = w r_{vα} t_{vλ}``
2. ``ℓ(wv r_α) = ℓ(wv) - <α∨, 2ρ> + 1``, ``n = <λ, α> + 1``: ``x = w r_{vα} t_{v(λ + α∨)}``
3. ``v r_α → v`` is a Bruhat edge, ``n = 0``: ``x = w r_{vα} t_{v r_α λ}``
4. ``v r_α → v`` is a quantum edge, ``n = -1``: ``x = w r_{vα} t_{v r_α(λ + α∨)}``

Cases 1 and 2 are near coverings (edge ``wv → wv r_α``), cases 3 and 4 far coverings
(edge ``v r_α → v``). Chains are lists ordered bottom-to-top.
"""

import logging
from dataclasses import dataclass

from django.db.models import TextChoices

from qbg_mobius.affine import AffineElement, AffineRoot, Convention
from qbg_mobius.exceptions import (
    InvalidInputError,
    InvariantViolationError,
    PreconditionError,
    RegularityError,
)
from qbg_mobius.qbg import QBGPath, build_qbg, interval_equivalent, path_weight
from qbg_mobius.regularity import certify
from qbg_mobius.weyl import identity, reflection, reflection_root

logger = logging.getLogger(__name__)


class CoverKind(TextChoices):
    NEAR = "near", "Near"
    FAR = "far", "Far"


NEAR_CASES = (1, 2)
FAR_CASES = (3, 4)


@dataclass(frozen=True)
class CoverClass:
    kind: str
    edge: object
    case_index: int
    root: AffineRoot
    lower: AffineElement
    upper: AffineElement

    def __post_init__(self):
        expected = CoverKind.NEAR if self.case_index in NEAR_CASES else CoverKind.FAR
        if self.kind != expected:
            raise InvariantViolationError(f"Case {self.case_index} is a {expected} covering, not {self.kind}")

    def to_dict(self):
        return {
            "kind": str(self.kind),
            "case": self.case_index,
            "alpha": self.root.alpha.to_list(),
            "n": self.root.n,
            "edge": self.edge.to_dict(),
        }


@dataclass(frozen=True)
class ChainDecomposition:
    """Near and far data of a saturated chain below ``top = w t_{vλ}``."""

    top: AffineElement
    w: object
    v: object
    lam: object
    r_near: object
    r_far: object
    near_path: QBGPath
    far_path: QBGPath
    covers: tuple = ()
    chain: tuple = ()

    def to_dict(self):
        return {
            "top": {"w": self.w.reduced_word(), "v": self.v.reduced_word(), "lambda": self.lam.to_list()},
            "r_n": self.r_near.reduced_word(),
            "r_f": self.r_far.reduced_word(),
            "P_n": self.near_path.to_dict(),
            "P_f": self.far_path.to_dict(),
            "covers": [cover.to_dict() for cover in self.covers],
        }


def _untwisted_graph(group):
    return build_qbg(group.system, Convention.UNTWISTED)


def _as_coroot_multiple(group, nu, gamma):
    """m with ``nu = m γ∨``, or ``None``."""
    coroot = group.system.coroot(gamma)
    pivot = next(index for index, c in enumerate(coroot.coords) if c)
    m, remainder = divmod(nu.coords[pivot], coroot.coords[pivot])
    if remainder or m * coroot != nu:
        return None
    return m


def classify_cover(group, x, y, regularity=None):
    """Which of the four cases the cover ``x ⋖ y`` falls in.

    Raises:
        InvalidInputError: x is not covered by y.
        RegularityError: no case, or more than one, matches.
    """
    group.check(x)
    group.check(y)
    if regularity is not None:
        certify(group, y, regularity)

    difference = y.inverse() * x
    gamma = reflection_root(difference.w)
    m = _as_coroot_multiple(group, difference.lam, gamma) if gamma is not None else None
    if m is None or x.length != y.length - 1:
        raise InvalidInputError({"chain": f"{x} is not covered by {y}"})

    system = group.system
    w = y.w
    v, lam = group.chamber(y.lam)
    if any(value == 0 for value in system.simple_pairings(lam)):
        raise RegularityError(f"Translation of {y} is not regular", bound=1, pairing=0)

    # y⁻¹x = r_γ t_{mγ∨} = r_{vα+nδ} with vα = ±γ
    beta = v.inverse().act_on_root(gamma)
    alpha, n = (beta, m) if beta.is_positive() else (-beta, -m)

    r_alpha = reflection(system, alpha)
    pairing = system.pair(lam, alpha)
    drop = group.quantum_drop[alpha]
    wv = w * v
    vr = v * r_alpha

    matches = []
    if (wv * r_alpha).length == wv.length + 1 and n == pairing:
        matches.append(1)
    if (wv * r_alpha).length == wv.length - drop + 1 and n == pairing + 1:
        matches.append(2)
    if v.length == vr.length + 1 and n == 0:
        matches.append(3)
    if v.length == vr.length - drop + 1 and n == -1:
        matches.append(4)

    if not matches:
        raise RegularityError(f"The cover {x} ⋖ {y} matches none of the four cases")
    if len(matches) > 1:
        raise RegularityError(f"The cover {x} ⋖ {y} matches cases {matches}")

    case = matches[0]
    g = _untwisted_graph(group)
    edge = g.edge(wv, wv * r_alpha) if case in NEAR_CASES else g.edge(vr, v)
    if edge is None:
        raise InvariantViolationError(f"Case {case} for {x} ⋖ {y} has no edge in the quantum Bruhat graph")

    r_v_alpha = reflection(system, v.act_on_root(alpha))
    if case in NEAR_CASES:
        predicted = AffineElement(w * r_v_alpha, v.act_on_coroot(lam + edge.weight))
    else:
        predicted = AffineElement(w * r_v_alpha, vr.act_on_coroot(lam + edge.weight))
    if predicted != x:
        raise InvariantViolationError(f"Case {case} predicts {predicted}, not {x}")

    return CoverClass(
        kind=CoverKind.NEAR if case in NEAR_CASES else CoverKind.FAR,
        edge=edge,
        case_index=case,
        root=AffineRoot(alpha, n),
        lower=x,
        upper=y,
    )


def _product(system, labels):
    element = identity(system)
    for alpha in labels:
        element = element * reflection(system, alpha)
    return element


def decompose_chain(group, chain, regularity=None):
    """Near/far products and paths of a saturated chain given bottom-to-top.

    ``r_n`` and ``r_f`` multiply the near and far labels starting from the cover at the top;
    ``P_n`` runs ``wv → wv r_n`` through the near edges in that order and ``P_f`` runs
    ``v r_f → v`` through the far edges from the bottom-most one up.
    """
    if not chain:
        raise InvalidInputError({"chain": "A chain needs at least one element"})
    chain = list(chain)
    top = chain[-1]
    group.check(top)
    if regularity is not None and len(chain) > 1:
        certify(group, top, regularity, m=len(chain) - 1)

    covers = [classify_cover(group, chain[k - 1], chain[k]) for k in range(len(chain) - 1, 0, -1)]
    near = [cover for cover in covers if cover.kind == CoverKind.NEAR]
    far = [cover for cover in covers if cover.kind == CoverKind.FAR]

    system = group.system
    w = top.w
    v, lam = group.chamber(top.lam)
    r_near = _product(system, [cover.root.alpha for cover in near])
    r_far = _product(system, [cover.root.alpha for cover in far])

    try:
        near_path = QBGPath.from_edges(w * v, [cover.edge for cover in near])
        far_path = QBGPath.from_edges(v * r_far, [cover.edge for cover in reversed(far)])
    except InvalidInputError as exc:
        raise InvariantViolationError(f"Near/far edges do not form paths: {exc}") from exc

    decomposition = ChainDecomposition(
        top=top,
        w=w,
        v=v,
        lam=lam,
        r_near=r_near,
        r_far=r_far,
        near_path=near_path,
        far_path=far_path,
        covers=tuple(covers),
        chain=tuple(chain),
    )
    logger.debug("Decomposed a chain of length %d: %d near, %d far", len(chain) - 1, len(near), len(far))
    return decomposition


def reconstruct_bottom(d):
    """``x = wv r_n (v r_f)⁻¹ t_{v r_f(λ + wt(P_n) + wt(P_f))}``."""
    wv = d.w * d.v
    vr_far = d.v * d.r_far
    if d.near_path.source != wv or d.near_path.target != wv * d.r_near:
        raise InvalidInputError({"P_n": f"Near path must run from {wv} to {wv * d.r_near}"})
    if d.far_path.source != vr_far or d.far_path.target != d.v:
        raise InvalidInputError({"P_f": f"Far path must run from {vr_far} to {d.v}"})
    shift = d.lam + path_weight(d.near_path) + path_weight(d.far_path)
    return AffineElement(wv * d.r_near * vr_far.inverse(), vr_far.act_on_coroot(shift))


def _near_cover(group, z, edge):
    v, lam = group.chamber(z.lam)
    if z.w * v != edge.source:
        raise PreconditionError({"P_n": f"Near edge {edge.source} -> {edge.target} does not start at {z.w * v}"})
    r_v_alpha = reflection(group.system, v.act_on_root(edge.label))
    return AffineElement(z.w * r_v_alpha, v.act_on_coroot(lam + edge.weight))


def _far_cover(group, z, edge):
    v, lam = group.chamber(z.lam)
    if edge.target != v:
        raise PreconditionError({"P_f": f"Far edge {edge.source} -> {edge.target} does not end at {v}"})
    r_v_alpha = reflection(group.system, v.act_on_root(edge.label))
    return AffineElement(z.w * r_v_alpha, edge.source.act_on_coroot(lam + edge.weight))


def transport_chain(group, d, near_path, far_path, far_first=False):
    """A saturated chain from the bottom of ``d`` to its top realizing the given paths.

    Covers for ``near_path`` are emitted from the top first, then those for ``far_path``
    (its last edge first); ``far_first`` swaps the two blocks. Every emitted step is checked
    against the generic cover search.
    """
    g = _untwisted_graph(group)
    if not interval_equivalent(g, d.near_path, near_path):
        raise PreconditionError({"P_n": "The near path is not interval equivalent to the chain's near path"})
    if not interval_equivalent(g, d.far_path, far_path):
        raise PreconditionError({"P_f": "The far path is not interval equivalent to the chain's far path"})

    steps = [(_near_cover, edge) for edge in near_path.edges]
    far_steps = [(_far_cover, edge) for edge in reversed(far_path.edges)]
    steps = far_steps + steps if far_first else steps + far_steps

    descending = [d.top]
    for make_cover, edge in steps:
        z = descending[-1]
        x = make_cover(group, z, edge)
        if x not in {c for c, _root in group.covers_below(z)}:
            raise RegularityError(f"Transport step {x} ⋖ {z} is not a Bruhat cover")
        descending.append(x)

    bottom = reconstruct_bottom(d)
    if descending[-1] != bottom:
        raise InvariantViolationError(f"Transported chain ends at {descending[-1]}, not {bottom}")
    return list(reversed(descending))


def detect_boundary_violation(group, x, z, y, regularity=None):
    """Whether ``[x, y]`` leaves W⁰, read off the near path of ``x ⋖ z ⋖ y``.

    The interval leaves W⁰ exactly when that near path is a 2-loop.
    """
    if y.length - x.length != 2:
        raise PreconditionError({"x": "x and y must differ in length by exactly 2"})
    for element in (x, z, y):
        if not group.is_affine_grassmannian(element):
            raise PreconditionError({"chain": f"{element} is not affine Grassmannian"})
    if regularity is not None:
        certify(group, y, regularity, m=2)
    try:
        d = decompose_chain(group, [x, z, y])
    except InvalidInputError as exc:
        raise PreconditionError({"chain": f"{x} ⋖ {z} ⋖ {y} is not a saturated chain"}) from exc
    return d.near_path.is_two_loop