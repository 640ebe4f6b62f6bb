"""Basis changes between structure-sheaf classes O_x and boundary ideal-sheaf classes I_x.

Only the formal bookkeeping is implemented: ``O_y = Σ_{x ∈ W⁰, x ≤ y} I_x`` and, for
superregular y, its inverse ``I_y = Σ_u (-1)^{ℓ(w,u)} O_{u t_{λ+M(w,u)}}``.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from django.db.models import TextChoices

from qbg_mobius.affine import Convention
from qbg_mobius.exceptions import InvalidInputError, PreconditionError
from qbg_mobius.mobius import below_map
from qbg_mobius.qbg import build_qbg, min_weight

logger = logging.getLogger(__name__)


class Basis(TextChoices):
    STRUCTURE = "O", "Structure sheaves"
    IDEAL = "I", "Boundary ideal sheaves"


@dataclass(frozen=True)
class FormalSum:
    """Integer combination of basis classes indexed by W⁰ elements; zero terms are dropped."""

    basis: str
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in Basis.values:
            raise InvalidInputError({"basis": f"Unknown basis {self.basis!r}"})
        object.__setattr__(self, "terms", {key: value for key, value in self.terms.items() if value})

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, element):
        return self.terms.get(element, 0)

    def __add__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        if other.basis != self.basis:
            raise InvalidInputError("Cannot add formal sums in different bases")
        total = Counter(self.terms)
        total.update(other.terms)
        return FormalSum(self.basis, dict(total))

    def scaled(self, factor):
        return FormalSum(self.basis, {key: factor * value for key, value in self.terms.items()})

    def validate(self, group):
        for element in self.terms:
            if not group.is_affine_grassmannian(element):
                raise InvalidInputError({"terms": f"{element} is not affine Grassmannian"})

    def items(self):
        return sorted(
            self.terms.items(),
            key=lambda item: (-item[0].length, item[0].w.reduced_word(), item[0].lam.coords),
        )

    def to_list(self, encode):
        return [{"coeff": coefficient, "element": encode(element)} for element, coefficient in self.items()]


@dataclass(frozen=True)
class RoundTrip:
    collapsed: FormalSum
    floor: int
    exact: bool


def structure_in_ideal(group, y, floor=None):
    """``O_y`` in the I basis: coefficient 1 on every W⁰ element below y (above ``floor`` if given)."""
    group.check(y)
    if not group.is_affine_grassmannian(y):
        raise PreconditionError({"y": f"{y} is not affine Grassmannian"})
    floor = floor or 0
    graph = group.lower_graph(y, floor=floor, grassmannian=True)
    return FormalSum(Basis.IDEAL, {element: 1 for element in graph.nodes if element.length >= floor})


def ideal_in_structure(group, y, regularity=None):
    """``I_y`` in the O basis for superregular y."""
    members = below_map(group, y, regularity)
    g = build_qbg(group.system, Convention.UNTWISTED)
    terms = {}
    for u, element in members.items():
        _weight, hops = min_weight(g, y.w, u)
        terms[element] = -1 if hops % 2 else 1
    return FormalSum(Basis.STRUCTURE, terms)


def round_trip(group, y, floor=None, regularity=None):
    """Expand ``I_y`` into O classes and each O class back into I classes.

    Lower sets are truncated at ``floor`` (default: the shortest O term), so only the
    coefficients of elements of length at least ``floor`` are meaningful.
    """
    expansion = ideal_in_structure(group, y, regularity)
    if floor is None:
        floor = min(element.length for element in expansion.terms)

    collapsed = FormalSum(Basis.IDEAL)
    for element, coefficient in expansion.items():
        collapsed = collapsed + structure_in_ideal(group, element, floor).scaled(coefficient)

    exact = collapsed.terms == {y: 1}
    logger.debug("Round trip for %s above length %d: %d surviving terms", y, floor, len(collapsed))
    return RoundTrip(collapsed=collapsed, floor=floor, exact=exact)
