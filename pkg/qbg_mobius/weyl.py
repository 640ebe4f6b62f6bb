"""The finite Weyl group W₀.

Elements are stored as integer matrices acting on simple-coroot coordinates, with the
matching action on simple-root coordinates kept alongside. Simple reflections are
indexed ``1..rank``; index 0 is reserved for the affine node.
"""

import logging
from collections import deque
from functools import cache, cached_property

import numpy as np

from qbg_mobius.cartan import CorootVector, RootVector
from qbg_mobius.exceptions import InvalidInputError, InvariantViolationError

logger = logging.getLogger(__name__)


class WeylElement:
    """An element of W₀, hashable by its coroot action."""

    __slots__ = ("system", "coroot_action", "root_action", "key", "_hash", "__dict__")

    def __init__(self, system, coroot_action, root_action):
        coroot_action = np.asarray(coroot_action, dtype=np.int64)
        root_action = np.asarray(root_action, dtype=np.int64)
        coroot_action.setflags(write=False)
        root_action.setflags(write=False)
        self.system = system
        self.coroot_action = coroot_action
        self.root_action = root_action
        self.key = coroot_action.tobytes()
        self._hash = hash(self.key)

    def __repr__(self):
        return f"<WeylElement {self.system.type_label} {self.reduced_word()}>"

    def __str__(self):
        return word_to_string(self.reduced_word())

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.key == other.key and (self.system is other.system or self.system == other.system)

    def __hash__(self):
        return self._hash

    def _check_system(self, other):
        if not (self.system is other.system or self.system == other.system):
            raise InvalidInputError(
                f"Cannot combine elements of {self.system.type_label} and {other.system.type_label}"
            )

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check_system(other)
        return WeylElement(
            self.system,
            self.coroot_action @ other.coroot_action,
            self.root_action @ other.root_action,
        )

    @cached_property
    def inversion_mask(self):
        """0/1 vector over ``system.positive_roots``: 1 where w(α) is negative."""
        images = self.root_action @ self.system.root_matrix
        mask = (images < 0).any(axis=0).astype(np.int64)
        mask.setflags(write=False)
        return mask

    @cached_property
    def length(self):
        return int(self.inversion_mask.sum())

    @property
    def is_identity(self):
        return self.length == 0

    def inversions(self):
        """Positive roots α with w(α) < 0."""
        return [alpha for alpha, flag in zip(self.system.positive_roots, self.inversion_mask) if flag]

    def act_on_coroot(self, lam):
        self.system.check_vector(lam)
        return CorootVector(self.coroot_action @ lam.as_array())

    def act_on_root(self, alpha):
        self.system.check_vector(alpha)
        return RootVector(self.root_action @ alpha.as_array())

    def has_right_descent(self, i):
        """ℓ(w s_i) < ℓ(w), i.e. w(α_i) < 0."""
        return bool((self.root_action[:, i - 1] < 0).any())

    def has_left_descent(self, i):
        return self.inverse().has_right_descent(i)

    def right_descents(self):
        return [i for i in range(1, self.system.rank + 1) if self.has_right_descent(i)]

    def reduced_word(self):
        """Reduced word as a list of 1-based indices, found by greedy right descent."""
        if "_word" not in self.__dict__:
            word = []
            element = self
            while not element.is_identity:
                i = element.right_descents()[0]
                word.append(i)
                element = element * simple_reflection(self.system, i)
            self.__dict__["_word"] = tuple(reversed(word))
        return list(self.__dict__["_word"])

    def inverse(self):
        if "_inverse" not in self.__dict__:
            self.__dict__["_inverse"] = from_word(self.system, list(reversed(self.reduced_word())))
        return self.__dict__["_inverse"]

    def dualize(self, dual_system):
        """The same group element viewed in the dual root system."""
        return WeylElement(dual_system, self.root_action, self.coroot_action)

    def to_list(self):
        return self.reduced_word()


def word_to_string(word):
    return "[" + ",".join(str(i) for i in word) + "]"


def _check_index(system, i):
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= system.rank:
        raise InvalidInputError({"word": f"Simple reflection index {i!r} is outside 1..{system.rank}"})


@cache
def identity(system):
    eye = np.eye(system.rank, dtype=np.int64)
    return WeylElement(system, eye, eye)


@cache
def simple_reflection(system, i):
    """s_i acting by λ ↦ λ - <λ, α_i> α_i∨ and β ↦ β - <α_i∨, β> α_i."""
    _check_index(system, i)
    eye = np.eye(system.rank, dtype=np.int64)
    coroot_action = eye - np.outer(eye[i - 1], system.cartan[i - 1, :])
    root_action = eye - np.outer(eye[i - 1], system.cartan[:, i - 1])
    element = WeylElement(system, coroot_action, root_action)
    element.__dict__["_word"] = (i,)
    return element


def from_word(system, word):
    """The product s_{i1} s_{i2} ... of a word (not necessarily reduced)."""
    element = identity(system)
    for i in word:
        _check_index(system, i)
        element = element * simple_reflection(system, int(i))
    return element


@cache
def reflection(system, alpha):
    """The reflection r_α for a root α."""
    coroot = system.coroot(alpha)
    eye = np.eye(system.rank, dtype=np.int64)
    # λ ↦ λ - <λ, α> α∨ and β ↦ β - <α∨, β> α
    coroot_action = eye - np.outer(coroot.as_array(), alpha.as_array() @ system.cartan)
    root_action = eye - np.outer(alpha.as_array(), system.cartan @ coroot.as_array())
    return WeylElement(system, coroot_action, root_action)


@cache
def _reflection_roots(system):
    return {reflection(system, alpha): alpha for alpha in system.positive_roots}


def reflection_root(w):
    """The positive root γ with r_γ = w, or ``None`` when w is not a reflection."""
    return _reflection_roots(w.system).get(w)


@cache
def enumerate_group(system):
    """All of W₀, ordered by length then reduced word.

    Breadth-first search over right multiplication by simple reflections; the search depth
    of every element is checked against its inversion count.
    """
    start = identity(system)
    words = {start: ()}
    queue = deque([start])
    while queue:
        element = queue.popleft()
        for i in range(1, system.rank + 1):
            neighbour = element * simple_reflection(system, i)
            if neighbour in words:
                continue
            words[neighbour] = words[element] + (i,)
            queue.append(neighbour)

    for element, word in words.items():
        if len(word) != element.length:
            raise InvariantViolationError(f"BFS depth {len(word)} disagrees with length {element.length}")

    logger.debug("Enumerated W0(%s): %d elements", system.type_label, len(words))
    return tuple(sorted(words, key=lambda element: (element.length, element.reduced_word())))


@cache
def longest_element(system):
    return max(enumerate_group(system), key=lambda element: element.length)


def chamber(system, mu):
    """Factor a coroot vector as ``mu = v λ`` with λ antidominant.

    Returns:
        (v, λ) where v is the product of the simple reflections applied, in order.
    """
    system.check_vector(mu)
    word = []
    lam = mu
    while True:
        pairings = system.simple_pairings(lam)
        positive = [i for i, value in enumerate(pairings, start=1) if value > 0]
        if not positive:
            break
        i = positive[0]
        lam = simple_reflection(system, i).act_on_coroot(lam)
        word.append(i)
    return from_word(system, word), lam
