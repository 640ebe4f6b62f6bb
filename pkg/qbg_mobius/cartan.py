"""Finite root systems built from a Cartan matrix.

Orientation: ``cartan_matrix[i][j] = <α_i, α_j∨>``. Roots are stored in simple-root
coordinates and coroots in simple-coroot coordinates, so for ``α = Σ a_i α_i`` and
``λ = Σ c_j α_j∨`` the pairing is ``<λ, α> = aᵀ A c``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from qbg_mobius.exceptions import InvalidInputError, UnsupportedTypeError

logger = logging.getLogger(__name__)

CARTAN_MATRICES = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "C2": [[2, -1], [-2, 2]],
    "B3": [[2, -1, 0], [-1, 2, -2], [0, -1, 2]],
    "C3": [[2, -1, 0], [-1, 2, -1], [0, -2, 2]],
    "D4": [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    "G2": [[2, -1], [-3, 2]],
}

DUAL_PREFIX = "dual:"


@dataclass(frozen=True)
class _LatticeVector:
    coords: tuple

    def __post_init__(self):
        try:
            coords = tuple(int(c) for c in self.coords)
        except (TypeError, ValueError) as exc:
            raise InvalidInputError({"coords": f"Coordinates must be integers, got {self.coords!r}"}) from exc
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, rank):
        return cls((0,) * rank)

    @property
    def rank(self):
        return len(self.coords)

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise InvalidInputError(
                f"Cannot combine a {type(self).__name__} with a {type(other).__name__}"
            )
        if other.rank != self.rank:
            raise InvalidInputError(f"Rank mismatch: {self.rank} != {other.rank}")

    def __add__(self, other):
        self._check_compatible(other)
        return type(self)(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check_compatible(other)
        return type(self)(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-a for a in self.coords)

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return type(self)(scalar * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def is_positive(self):
        return all(c >= 0 for c in self.coords) and any(self.coords)

    def is_negative(self):
        return all(c <= 0 for c in self.coords) and any(self.coords)

    @property
    def height(self):
        return sum(self.coords)

    def to_list(self):
        return list(self.coords)

    def as_array(self):
        return np.array(self.coords, dtype=np.int64)

    def __str__(self):
        return "[" + ",".join(str(c) for c in self.coords) + "]"


class RootVector(_LatticeVector):
    """Element of the root lattice in the simple-root basis."""


class CorootVector(_LatticeVector):
    """Element of the coroot lattice Q∨ in the simple-coroot basis."""


def validate_cartan_matrix(cartan_matrix):
    """Check the shape and sign pattern of a Cartan matrix; return it as a tuple of tuples."""
    try:
        rows = tuple(tuple(int(entry) for entry in row) for row in cartan_matrix)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError({"cartan_matrix": "Cartan matrix must be a square matrix of integers"}) from exc

    rank = len(rows)
    if rank == 0 or any(len(row) != rank for row in rows):
        raise InvalidInputError({"cartan_matrix": "Cartan matrix must be a non-empty square matrix"})

    for i in range(rank):
        if rows[i][i] != 2:
            raise InvalidInputError({"cartan_matrix": f"Diagonal entry ({i}, {i}) must be 2, got {rows[i][i]}"})
        for j in range(rank):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise InvalidInputError(
                    {"cartan_matrix": f"Off-diagonal entry ({i}, {j}) must be non-positive, got {rows[i][j]}"}
                )
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise InvalidInputError(
                    {"cartan_matrix": f"Entries ({i}, {j}) and ({j}, {i}) must vanish together"}
                )
    return rows


def symmetrizer(rows):
    """Half squared lengths ``e_j = (α_j, α_j) / 2`` making ``A · diag(e)`` symmetric.

    Each connected component of the Dynkin diagram is normalised so its first node has ``e = 1``.
    """
    rank = len(rows)
    factors = [None] * rank
    for start in range(rank):
        if factors[start] is not None:
            continue
        factors[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(rank):
                if i == j or rows[i][j] == 0:
                    continue
                # A[i][j] e_j = A[j][i] e_i
                candidate = Fraction(rows[j][i]) * factors[i] / rows[i][j]
                if factors[j] is None:
                    factors[j] = candidate
                    stack.append(j)
                elif factors[j] != candidate:
                    raise UnsupportedTypeError({"cartan_matrix": "Cartan matrix is not symmetrizable"})
    return tuple(factors)


class RootSystem:
    """A finite crystallographic root system.

    Instances are immutable and hashable; build them with :func:`build_root_system`
    or :func:`root_system`.
    """

    def __init__(self, cartan_matrix, type_label, positive_roots, positive_coroots, root_norms):
        self.cartan_matrix = cartan_matrix
        self.type_label = type_label
        self.rank = len(cartan_matrix)
        self.positive_roots = tuple(positive_roots)
        self.positive_coroots = tuple(positive_coroots)
        self.root_norms = dict(root_norms)

        self.cartan = np.array(cartan_matrix, dtype=np.int64)
        self.cartan.setflags(write=False)
        # Columns are positive roots; rows of pairing_rows give λ ↦ <λ, α>.
        self.root_matrix = np.array([alpha.coords for alpha in self.positive_roots], dtype=np.int64).T
        self.pairing_rows = self.root_matrix.T @ self.cartan
        for array in (self.root_matrix, self.pairing_rows):
            array.setflags(write=False)

        self._coroot_of = dict(zip(self.positive_roots, self.positive_coroots))
        self._root_index = {alpha: index for index, alpha in enumerate(self.positive_roots)}

        self.two_rho = sum(self.positive_roots, RootVector.zero(self.rank))
        self.two_rho_check = sum(self.positive_coroots, CorootVector.zero(self.rank))
        self.highest_root = max(self.positive_roots, key=lambda alpha: alpha.height)

        shortest = min(self.root_norms.values())
        self.highest_short_root = next(
            alpha
            for alpha in reversed(self.positive_roots)
            if self.root_norms[alpha] == shortest and self.is_dominant_root(alpha)
        )

    def __repr__(self):
        return f"<RootSystem {self.type_label}>"

    def __str__(self):
        return self.type_label

    def __eq__(self, other):
        if not isinstance(other, RootSystem):
            return NotImplemented
        return self.type_label == other.type_label and self.cartan_matrix == other.cartan_matrix

    def __hash__(self):
        return hash((self.type_label, self.cartan_matrix))

    @property
    def simple_roots(self):
        return tuple(RootVector(row) for row in np.eye(self.rank, dtype=np.int64))

    @property
    def simple_coroots(self):
        return tuple(CorootVector(row) for row in np.eye(self.rank, dtype=np.int64))

    @property
    def is_simply_laced(self):
        return len(set(self.root_norms.values())) == 1

    def is_dominant_root(self, alpha):
        return all(self.pair(coroot, alpha) >= 0 for coroot in self.simple_coroots)

    def is_root(self, alpha):
        return alpha in self._coroot_of or -alpha in self._coroot_of

    def root_index(self, alpha):
        """Position of a positive root in ``positive_roots``."""
        try:
            return self._root_index[alpha]
        except KeyError:
            raise InvalidInputError({"alpha": f"{alpha} is not a positive root of {self.type_label}"}) from None

    def coroot(self, alpha):
        """The coroot α∨ of a (positive or negative) root α."""
        if alpha in self._coroot_of:
            return self._coroot_of[alpha]
        if -alpha in self._coroot_of:
            return -self._coroot_of[-alpha]
        raise InvalidInputError({"alpha": f"{alpha} is not a root of {self.type_label}"})

    def check_vector(self, vector):
        if vector.rank != self.rank:
            raise InvalidInputError(f"Rank mismatch: {vector.rank} != {self.rank} ({self.type_label})")

    def dual(self):
        """The dual root system, with transposed Cartan matrix (roots and coroots exchanged)."""
        return _dual_system(self)

    def is_antidominant(self, lam):
        return all(self.pair(lam, alpha) <= 0 for alpha in self.simple_roots)

    def simple_pairings(self, lam):
        """``(<λ, α_1>, ..., <λ, α_r>)``."""
        self.check_vector(lam)
        return tuple(int(value) for value in self.cartan @ lam.as_array())

    def pair(self, lam, alpha):
        """The pairing ``<λ, α>`` of a coroot vector with a root vector."""
        if not isinstance(lam, CorootVector) or not isinstance(alpha, RootVector):
            raise InvalidInputError("pair() expects a CorootVector and a RootVector")
        if lam.rank != alpha.rank:
            raise InvalidInputError(f"Rank mismatch: {lam.rank} != {alpha.rank}")
        self.check_vector(lam)
        return int(alpha.as_array() @ self.cartan @ lam.as_array())

    def reflect(self, alpha, vector):
        """Apply the reflection r_α to a root or coroot vector; ``alpha`` must be a root."""
        coroot = self.coroot(alpha)
        self.check_vector(vector)
        if isinstance(vector, RootVector):
            return vector - self.pair(coroot, vector) * alpha
        if isinstance(vector, CorootVector):
            return vector - self.pair(vector, alpha) * coroot
        raise InvalidInputError(f"Cannot reflect a {type(vector).__name__}")


def _generate_roots(rows, max_roots):
    """Close the simple (root, coroot) pairs under the simple reflections."""
    rank = len(rows)
    cartan = np.array(rows, dtype=np.int64)
    identity = np.eye(rank, dtype=np.int64)

    seen = {}
    queue = []
    for i in range(rank):
        key = tuple(int(c) for c in identity[i])
        seen[key] = key
        queue.append(key)

    while queue:
        root = queue.pop()
        coroot = seen[root]
        root_array = np.array(root, dtype=np.int64)
        coroot_array = np.array(coroot, dtype=np.int64)
        for j in range(rank):
            # s_j(β) = β - <α_j∨, β> α_j ; s_j(β∨) = β∨ - <β∨, α_j> α_j∨
            image = root_array - int(root_array @ cartan[:, j]) * identity[j]
            image_coroot = coroot_array - int(cartan[j] @ coroot_array) * identity[j]
            key = tuple(int(c) for c in image)
            if key in seen:
                continue
            if not (all(c >= 0 for c in key) or all(c <= 0 for c in key)):
                raise UnsupportedTypeError({"cartan_matrix": "Root closure produced a vector of mixed sign"})
            seen[key] = tuple(int(c) for c in image_coroot)
            queue.append(key)
            if len(seen) > max_roots:
                raise UnsupportedTypeError(
                    {"cartan_matrix": f"Root generation exceeded {max_roots} roots; the matrix is not of finite type"},
                )
    return seen


def build_root_system(cartan_matrix, type_label, max_roots=None):
    """Build a finite root system from a Cartan matrix.

    Raises:
        InvalidInputError: the matrix is not a Cartan matrix.
        UnsupportedTypeError: the matrix is not of finite type.
    """
    rows = validate_cartan_matrix(cartan_matrix)
    if max_roots is None:
        from qbg_mobius.conf import get_config

        max_roots = get_config("max_roots")

    factors = symmetrizer(rows)
    symmetric = np.array(
        [[float(rows[i][j] * factors[j]) for j in range(len(rows))] for i in range(len(rows))], dtype=float
    )
    if np.min(np.linalg.eigvalsh(symmetric)) <= 1e-9:
        raise UnsupportedTypeError(
            {"cartan_matrix": f"{type_label}: symmetrized Cartan matrix is not positive definite"},
        )

    closure = _generate_roots(rows, max_roots)
    positive = sorted(
        (root for root in closure if all(c >= 0 for c in root)),
        key=lambda root: (sum(root), tuple(-c for c in root)),
    )
    positive_roots = [RootVector(root) for root in positive]
    positive_coroots = [CorootVector(closure[root]) for root in positive]

    rank = len(rows)
    norms = {}
    for alpha in positive_roots:
        norms[alpha] = sum(
            alpha.coords[i] * alpha.coords[j] * rows[i][j] * factors[j] for i in range(rank) for j in range(rank)
        )

    system = RootSystem(rows, type_label, positive_roots, positive_coroots, norms)
    logger.debug("Built root system %s with %d positive roots", type_label, len(positive_roots))
    return system


@cache
def root_system(type_label):
    """Named root system, e.g. ``root_system("C3")``."""
    if type_label.startswith(DUAL_PREFIX):
        return root_system(type_label[len(DUAL_PREFIX) :]).dual()
    try:
        matrix = CARTAN_MATRICES[type_label]
    except KeyError:
        raise UnsupportedTypeError(
            {"type": f"Unknown root system type {type_label!r}; choose from {', '.join(CARTAN_MATRICES)}"},
        ) from None
    return build_root_system(matrix, type_label)


@cache
def _dual_system(system):
    transposed = tuple(zip(*system.cartan_matrix))
    if system.type_label.startswith(DUAL_PREFIX):
        label = system.type_label[len(DUAL_PREFIX) :]
    else:
        label = DUAL_PREFIX + system.type_label
    return build_root_system(transposed, label)


def load_cartan_file(data):
    """Build a root system from the decoded ``{"cartan": [[...]], "label": "..."}`` JSON document."""
    if not isinstance(data, dict) or "cartan" not in data:
        raise InvalidInputError({"cartan_file": 'Expected a JSON object with a "cartan" key'})
    return build_root_system(data["cartan"], str(data.get("label", "custom")))
