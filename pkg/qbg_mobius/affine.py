"""The affine Weyl group W = W₀ ⋉ Q∨.

An element ``x = w t_λ`` is the pair ``(w, λ)``. Translations act on affine roots by
``t_λ(α + nδ) = α + (n - <λ, α>)δ``, which gives

* product: ``(w t_λ)(v t_μ) = wv t_{v⁻¹λ + μ}``
* length: ``ℓ(w t_λ) = Σ_{α > 0} |<λ, α> + χ(w(α) < 0)|``
* affine reflection: ``r_{α + nδ} = r_α t_{nα∨}``

With the dual convention the group is built over the dual root system, so the affine
simple reflection is ``s₀ = t_φ s_φ`` for the short dominant root φ.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cache, cached_property

import networkx as nx
import numpy as np
from django.db.models import TextChoices

from qbg_mobius.cartan import CorootVector, RootVector
from qbg_mobius.exceptions import InvalidInputError, InvariantViolationError, PreconditionError
from qbg_mobius.weyl import (
    WeylElement,
    chamber,
    enumerate_group,
    from_word,
    identity,
    longest_element,
    reflection,
    simple_reflection,
)

logger = logging.getLogger(__name__)


class Convention(TextChoices):
    UNTWISTED = "untwisted", "Untwisted"
    DUAL = "dual", "Dual untwisted"


class CoverMode(TextChoices):
    GENERIC = "generic", "Generic"
    SUPERREGULAR = "superregular", "Superregular"


@dataclass(frozen=True)
class AffineRoot:
    """The real affine root α + nδ, with α a positive classical root."""

    alpha: RootVector
    n: int

    def __str__(self):
        return f"{self.alpha}+{self.n}δ"


@dataclass(frozen=True)
class AffineElement:
    """``w t_λ``; equality is componentwise."""

    w: WeylElement
    lam: CorootVector

    def __post_init__(self):
        self.w.system.check_vector(self.lam)

    @property
    def system(self):
        return self.w.system

    @cached_property
    def length(self):
        pairings = self.system.pairing_rows @ self.lam.as_array()
        return int(np.abs(pairings + self.w.inversion_mask).sum())

    def __mul__(self, other):
        if not isinstance(other, AffineElement):
            return NotImplemented
        return AffineElement(self.w * other.w, other.w.inverse().act_on_coroot(self.lam) + other.lam)

    def inverse(self):
        # (w t_λ)⁻¹ = w⁻¹ t_{-wλ}
        return AffineElement(self.w.inverse(), -self.w.act_on_coroot(self.lam))

    @property
    def is_identity(self):
        return self.w.is_identity and self.lam.is_zero()

    def act_on_affine_root(self, alpha, n):
        """Image of α + nδ as a (root, δ-coefficient) pair."""
        return self.w.act_on_root(alpha), n - self.system.pair(self.lam, alpha)

    def __str__(self):
        return f"w={self.w} t={self.lam}"


class AffineWeylGroup:
    """The affine Weyl group over a finite root system, in one of the two conventions."""

    def __init__(self, root_system, convention=Convention.UNTWISTED, cover_window_slack=None):
        if convention not in Convention.values:
            raise InvalidInputError({"convention": f"Unknown convention {convention!r}"})
        if cover_window_slack is None:
            from qbg_mobius.conf import get_config

            cover_window_slack = get_config("cover_window_slack")

        self.root_system = root_system
        self.convention = Convention(convention)
        self.system = root_system if self.convention == Convention.UNTWISTED else root_system.dual()
        self.rank = self.system.rank
        self.cover_window_slack = cover_window_slack
        self.identity = AffineElement(identity(self.system), CorootVector.zero(self.rank))
        # q(α) = <α∨, 2ρ>; quantum edges drop length by q(α) - 1
        self.quantum_drop = {
            alpha: self.system.pair(self.system.coroot(alpha), self.system.two_rho)
            for alpha in self.system.positive_roots
        }

    def __repr__(self):
        return f"<AffineWeylGroup {self.root_system.type_label} {self.convention}>"

    @property
    def type_label(self):
        return self.root_system.type_label

    @property
    def nodes(self):
        return range(0, self.rank + 1)

    @property
    def affine_root(self):
        """θ for the untwisted convention; over the dual system this is φ of the original."""
        return self.system.highest_root

    def classical(self, word):
        return from_word(self.system, word)

    def element(self, word, translation):
        return AffineElement(from_word(self.system, word), CorootVector(translation))

    def translation(self, lam):
        return AffineElement(self.identity.w, lam)

    def from_weyl(self, w):
        return AffineElement(w, CorootVector.zero(self.rank))

    def simple_reflection(self, i):
        """s_i for i in 1..rank, and s₀ = r_θ t_{-θ∨} = t_{θ∨} r_θ."""
        if i == 0:
            theta = self.affine_root
            return AffineElement(reflection(self.system, theta), -self.system.coroot(theta))
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise InvalidInputError({"node": f"Node {i!r} is outside 0..{self.rank}"})
        return self.from_weyl(simple_reflection(self.system, i))

    def affine_reflection(self, root):
        if not root.alpha.is_positive() or not self.system.is_root(root.alpha):
            raise InvalidInputError({"alpha": f"{root.alpha} is not a positive root of {self.system.type_label}"})
        return AffineElement(reflection(self.system, root.alpha), root.n * self.system.coroot(root.alpha))

    def check(self, x):
        if not (x.system is self.system or x.system == self.system):
            raise InvalidInputError(f"Element of {x.system.type_label} used with {self!r}")

    # Descents and W⁰

    def has_right_descent(self, x, i):
        if i == 0:
            return (x * self.simple_reflection(0)).length < x.length
        # x(α_i) < 0
        pairing = self.system.simple_pairings(x.lam)[i - 1]
        return pairing > 0 or (pairing == 0 and x.w.has_right_descent(i))

    def right_descents(self, x, affine=True):
        nodes = self.nodes if affine else range(1, self.rank + 1)
        return [i for i in nodes if self.has_right_descent(x, i)]

    def left_descents(self, x):
        return [i for i in self.nodes if (self.simple_reflection(i) * x).length < x.length]

    def is_affine_grassmannian(self, x):
        """True iff ℓ(x s_i) > ℓ(x) for every classical node i."""
        self.check(x)
        return not self.right_descents(x, affine=False)

    def reduced_word(self, x):
        """A reduced word of x in the nodes 0..rank, by greedy right descent."""
        word = []
        while x.length:
            i = self.right_descents(x)[0]
            word.append(i)
            x = x * self.simple_reflection(i)
        return list(reversed(word))

    def chamber(self, mu):
        return chamber(self.system, mu)

    # Bruhat order

    def bruhat_leq(self, x, y, cache=None):
        """Bruhat order by descent recursion.

        Pick a left descent s of y. Then x ≤ y iff min(x, sx) ≤ sy.
        """
        if cache is not None and (x, y) in cache:
            return cache[(x, y)]

        start = (x, y)
        bound = y.length
        steps = 0
        while True:
            if x.length > y.length:
                result = False
                break
            if x.length == y.length:
                result = x == y
                break
            if x.length == 0:
                result = True
                break
            s = self.simple_reflection(self.left_descents(y)[0])
            sx = s * x
            if sx.length < x.length:
                x = sx
            y = s * y
            steps += 1
            if steps > bound:
                raise InvariantViolationError("Bruhat recursion exceeded the length of its argument")

        if cache is not None:
            cache[start] = result
        return result

    def is_cover(self, x, y):
        return x.length == y.length - 1 and self.bruhat_leq(x, y)

    # Covers

    def covers_below(self, y, mode=CoverMode.GENERIC, regularity=None):
        """All x ⋖ y as ``(x, AffineRoot)`` pairs with ``x = y r_{α+nδ}``."""
        self.check(y)
        if mode == CoverMode.SUPERREGULAR:
            return self._superregular_covers(y, regularity)
        if mode != CoverMode.GENERIC:
            raise InvalidInputError({"mode": f"Unknown cover mode {mode!r}"})

        covers = []
        target = y.length - 1
        pairings = self.system.pairing_rows @ y.lam.as_array()
        for index, alpha in enumerate(self.system.positive_roots):
            m = int(pairings[index])
            w_negative = bool(y.w.inversion_mask[index])
            window = abs(m) + self.cover_window_slack
            for n in range(-window, window + 1):
                # y r_{α+nδ} < y iff y sends the positive one of ±(α + nδ) to a negative root
                if n >= 0:
                    descends = n < m or (n == m and w_negative)
                else:
                    descends = n > m or (n == m and not w_negative)
                if not descends:
                    continue
                x = AffineElement(
                    y.w * reflection(self.system, alpha),
                    y.lam + (n - m) * self.system.coroot(alpha),
                )
                if x.length == target:
                    covers.append((x, AffineRoot(alpha, n)))
        return covers

    def _superregular_covers(self, y, regularity):
        from qbg_mobius.regularity import certify, default_config

        cfg = regularity or default_config(self.system)
        certify(self, y, cfg)

        w = y.w
        v, lam = self.chamber(y.lam)
        wv = w * v
        covers = []
        for alpha in self.system.positive_roots:
            r_alpha = reflection(self.system, alpha)
            coroot = self.system.coroot(alpha)
            pairing = self.system.pair(lam, alpha)
            drop = self.quantum_drop[alpha]
            v_alpha = v.act_on_root(alpha)
            r_v_alpha = reflection(self.system, v_alpha)
            vr = v * r_alpha

            candidates = []
            if (wv * r_alpha).length == wv.length + 1:
                candidates.append((1, pairing, AffineElement(w * r_v_alpha, v.act_on_coroot(lam))))
            if (wv * r_alpha).length == wv.length - drop + 1:
                candidates.append((2, pairing + 1, AffineElement(w * r_v_alpha, v.act_on_coroot(lam + coroot))))
            if v.length == vr.length + 1:
                candidates.append((3, 0, AffineElement(w * r_v_alpha, vr.act_on_coroot(lam))))
            if v.length == vr.length - drop + 1:
                candidates.append((4, -1, AffineElement(w * r_v_alpha, vr.act_on_coroot(lam + coroot))))

            for case, n, x in candidates:
                label = AffineRoot(v_alpha, n) if v_alpha.is_positive() else AffineRoot(-v_alpha, -n)
                if y * self.affine_reflection(label) != x or x.length != y.length - 1:
                    raise InvariantViolationError(f"Cover case {case} for {alpha} does not reproduce y·r")
                covers.append((x, label))
        return covers

    def covers_above(self, x, limit_length=None):
        """All z with x ⋖ z, found among x r_{α+nδ}; used by upward searches in tests."""
        covers = []
        pairings = self.system.pairing_rows @ x.lam.as_array()
        for index, alpha in enumerate(self.system.positive_roots):
            m = int(pairings[index])
            window = abs(m) + self.cover_window_slack
            for n in range(-window, window + 1):
                z = AffineElement(
                    x.w * reflection(self.system, alpha),
                    x.lam + (n - m) * self.system.coroot(alpha),
                )
                if z.length == x.length + 1:
                    covers.append((z, AffineRoot(alpha, n)))
        return covers

    # Intervals

    def lower_graph(self, y, floor=0, grassmannian=False, lower=None):
        """Cover graph of ``{z ≤ y : ℓ(z) ≥ floor}``, edges pointing downwards.

        With ``grassmannian=True`` only W⁰ covers are followed; by the Chain Property the result
        is then exactly the W⁰ part of the lower set. With ``lower`` given, only elements above
        it are kept.
        """
        self.check(y)
        if grassmannian and not self.is_affine_grassmannian(y):
            raise PreconditionError({"y": f"{y} is not affine Grassmannian"})

        memo = {}
        graph = nx.DiGraph()
        graph.add_node(y)
        queue = deque([y])
        while queue:
            z = queue.popleft()
            if z.length <= floor:
                continue
            for c, _root in self.covers_below(z):
                if c.length < floor:
                    continue
                if grassmannian and not self.is_affine_grassmannian(c):
                    continue
                if lower is not None and not self.bruhat_leq(lower, c, memo):
                    continue
                if c not in graph:
                    queue.append(c)
                graph.add_edge(z, c)
        return graph

    def interval_graph(self, x, y, grassmannian=False):
        if not self.bruhat_leq(x, y):
            raise PreconditionError({"x": f"{x} is not below {y} in the Bruhat order"})
        return self.lower_graph(y, floor=x.length, grassmannian=grassmannian, lower=x)

    def interval(self, x, y, grassmannian=False):
        """The Bruhat interval [x, y], or its W⁰ part when ``grassmannian`` is set."""
        return set(self.interval_graph(x, y, grassmannian=grassmannian).nodes)

    def saturated_chains(self, top, length, grassmannian=False):
        """Saturated chains descending ``length`` steps from ``top``, listed bottom-to-top."""
        chains = [[top]]
        for _ in range(length):
            extended = []
            for chain in chains:
                for c, _root in self.covers_below(chain[0]):
                    if grassmannian and not self.is_affine_grassmannian(c):
                        continue
                    extended.append([c, *chain])
            chains = extended
        return chains

    # Length oracle

    def word_metric_ball(self, radius):
        """Breadth-first search from the identity: element → word length, up to ``radius``."""
        depths = {self.identity: 0}
        queue = deque([self.identity])
        generators = [self.simple_reflection(i) for i in self.nodes]
        while queue:
            x = queue.popleft()
            if depths[x] == radius:
                continue
            for s in generators:
                neighbour = x * s
                if neighbour not in depths:
                    depths[neighbour] = depths[x] + 1
                    queue.append(neighbour)
        return depths

    def finite_elements(self):
        return enumerate_group(self.system)

    def longest_element(self):
        return longest_element(self.system)


@cache
def affine_weyl_group(root_system, convention=Convention.UNTWISTED):
    return AffineWeylGroup(root_system, convention=str(convention))
