"""Tests for root systems built from Cartan matrices."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbg_mobius.cartan import (
    CARTAN_MATRICES,
    CorootVector,
    RootVector,
    build_root_system,
    load_cartan_file,
    root_system,
    symmetrizer,
    validate_cartan_matrix,
)
from qbg_mobius.exceptions import InvalidInputError, UnsupportedTypeError

POSITIVE_ROOT_COUNTS = {
    "A1": 1,
    "A2": 3,
    "A3": 6,
    "A4": 10,
    "B2": 4,
    "C2": 4,
    "B3": 9,
    "C3": 9,
    "D4": 12,
    "G2": 6,
}


class TestRootSystem:
    """Tests for RootSystem and build_root_system."""

    def test_a2_positive_roots(self, a2):
        """A2 has the three positive roots α₁, α₂, α₁+α₂."""
        assert set(a2.positive_roots) == {RootVector((1, 0)), RootVector((0, 1)), RootVector((1, 1))}
        assert a2.highest_root == RootVector((1, 1))

    @pytest.mark.parametrize("label", sorted(CARTAN_MATRICES))
    def test_positive_root_counts(self, label):
        """Every shipped type has the expected number of positive roots and matching coroots."""
        system = root_system(label)
        assert len(system.positive_roots) == POSITIVE_ROOT_COUNTS[label]
        assert len(system.positive_coroots) == len(system.positive_roots)
        for alpha in system.positive_roots:
            assert system.pair(system.coroot(alpha), alpha) == 2

    def test_simple_pairing(self, a2):
        """<α₁∨, α₁> = 2 in A2."""
        assert a2.pair(a2.simple_coroots[0], a2.simple_roots[0]) == 2

    def test_coroot_sum_against_two_rho(self, a2):
        """<α₁∨ + α₂∨, 2ρ> = 4 in A2."""
        assert a2.pair(CorootVector((1, 1)), a2.two_rho) == 4

    @pytest.mark.parametrize("label, expected", [("C3", 8), ("B3", 6)])
    def test_two_rho_check_on_short_dominant_root(self, label, expected):
        """<2ρ∨, φ> is 8 in C3 and 6 in B3."""
        system = root_system(label)
        assert system.pair(system.two_rho_check, system.highest_short_root) == expected

    def test_simply_laced(self):
        """Types A and D are simply laced, B, C and G are not."""
        assert root_system("A3").is_simply_laced
        assert root_system("D4").is_simply_laced
        assert not root_system("B2").is_simply_laced
        assert not root_system("G2").is_simply_laced

    def test_coroot_of_negative_root(self, a2):
        """The coroot of -α is -α∨."""
        assert a2.coroot(RootVector((-1, -1))) == CorootVector((-1, -1))

    def test_coroot_of_non_root_raises(self, a2):
        """Vectors that are not roots have no coroot."""
        with pytest.raises(InvalidInputError):
            a2.coroot(RootVector((2, 1)))

    def test_reflect_root_and_coroot(self, a2):
        """r_α₁ swaps α₁ with -α₁ and sends α₂ to α₁+α₂."""
        alpha1, alpha2 = a2.simple_roots
        assert a2.reflect(alpha1, alpha1) == -alpha1
        assert a2.reflect(alpha1, alpha2) == RootVector((1, 1))
        assert a2.reflect(alpha1, CorootVector((0, 1))) == CorootVector((1, 1))

    def test_antidominant(self, a2):
        """(-4,-4) is antidominant; (3,3) is not."""
        assert a2.is_antidominant(CorootVector((-4, -4)))
        assert not a2.is_antidominant(CorootVector((3, 3)))

    def test_dual_transposes_the_matrix(self):
        """The dual of B3 has the Cartan matrix of C3 and the dual of the dual is the original."""
        b3 = root_system("B3")
        dual = b3.dual()
        assert dual.cartan_matrix == tuple(zip(*b3.cartan_matrix))
        assert dual.type_label == "dual:B3"
        assert dual.dual() == b3
        assert root_system("dual:B3") == dual

    def test_g2_root_lengths(self):
        """G2 has three short and three long positive roots."""
        norms = sorted(root_system("G2").root_norms.values())
        assert norms[0] * 3 == norms[-1]
        assert norms.count(norms[0]) == 3


class TestVectors:
    """Tests for the lattice vector types."""

    def test_arithmetic(self):
        """Vectors add, subtract, negate and scale componentwise."""
        lam = CorootVector((1, -2))
        assert lam + CorootVector((1, 1)) == CorootVector((2, -1))
        assert lam - CorootVector((1, 1)) == CorootVector((0, -3))
        assert -lam == CorootVector((-1, 2))
        assert 3 * lam == CorootVector((3, -6))
        assert str(lam) == "[1,-2]"

    def test_mixing_roots_and_coroots_raises(self):
        """Roots and coroots live in different lattices."""
        with pytest.raises(InvalidInputError):
            RootVector((1, 0)) + CorootVector((1, 0))

    def test_rank_mismatch_raises(self):
        """Vectors of different rank cannot be combined."""
        with pytest.raises(InvalidInputError):
            CorootVector((1, 0)) + CorootVector((1, 0, 0))

    def test_non_integer_coordinates_raise(self):
        """Coordinates must be integers."""
        with pytest.raises(InvalidInputError):
            CorootVector(("a", 1))


class TestValidation:
    """Tests for Cartan matrix validation."""

    @pytest.mark.parametrize(
        "matrix",
        [
            [],
            [[2, -1]],
            [[1, -1], [-1, 2]],
            [[2, 1], [-1, 2]],
            [[2, -1], [0, 2]],
        ],
    )
    def test_malformed_matrices(self, matrix):
        """Non-square matrices, bad diagonals and bad sign patterns are rejected."""
        with pytest.raises(InvalidInputError):
            validate_cartan_matrix(matrix)

    def test_affine_matrix_is_not_finite(self):
        """The affine A1 matrix is not positive definite."""
        with pytest.raises(UnsupportedTypeError):
            build_root_system([[2, -2], [-2, 2]], "A1~")

    def test_hyperbolic_matrix_is_not_finite(self):
        """A rank 2 matrix with product of off-diagonal entries above 3 is rejected."""
        with pytest.raises(UnsupportedTypeError):
            build_root_system([[2, -1], [-4, 2]], "hyperbolic")

    def test_symmetrizer_for_b2(self):
        """A · diag(e) is symmetric."""
        rows = validate_cartan_matrix(CARTAN_MATRICES["B2"])
        factors = symmetrizer(rows)
        assert rows[0][1] * factors[1] == rows[1][0] * factors[0]

    def test_unknown_type(self):
        """Unknown type labels raise UnsupportedTypeError."""
        with pytest.raises(UnsupportedTypeError):
            root_system("E9")

    def test_load_cartan_file(self):
        """A custom Cartan matrix is loaded from its JSON document."""
        system = load_cartan_file({"cartan": [[2, -1], [-1, 2]], "label": "mine"})
        assert system.type_label == "mine"
        assert len(system.positive_roots) == 3

    def test_load_cartan_file_without_matrix(self):
        """Documents without a "cartan" key are rejected."""
        with pytest.raises(InvalidInputError):
            load_cartan_file({"label": "mine"})


class TestRootSystemIdentities:
    """Identities that hold in every shipped type."""

    def test_c3_two_rho_check(self):
        """2ρ∨ of C3 is (5, 8, 9) in simple coroots, that is (5, 3, 1) in ε-coordinates."""
        c1, c2, c3 = root_system("C3").two_rho_check.coords
        assert (c1, c2, c3) == (5, 8, 9)
        # α₁∨ = ε₁ - ε₂, α₂∨ = ε₂ - ε₃, α₃∨ = ε₃
        assert (c1, c2 - c1, c3 - c2) == (5, 3, 1)

    @given(
        label=st.sampled_from(sorted(CARTAN_MATRICES)),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_reflections_preserve_the_pairing(self, label, data):
        """<r_β λ, r_β α> = <λ, α> for every root β and α."""
        system = root_system(label)
        lam = CorootVector(data.draw(st.lists(st.integers(-6, 6), min_size=system.rank, max_size=system.rank)))
        beta = data.draw(st.sampled_from(system.positive_roots))
        for alpha in system.positive_roots:
            assert system.pair(system.reflect(beta, lam), system.reflect(beta, alpha)) == system.pair(lam, alpha)

    @pytest.mark.parametrize("label", sorted(CARTAN_MATRICES))
    def test_roots_are_closed_under_simple_reflections(self, label):
        """s_i permutes the positive roots other than α_i and sends α_i to -α_i."""
        system = root_system(label)
        positive = set(system.positive_roots)
        for alpha_i in system.simple_roots:
            images = {system.reflect(alpha_i, beta) for beta in positive}
            assert images == (positive - {alpha_i}) | {-alpha_i}
            for beta in positive:
                assert system.is_root(system.reflect(alpha_i, beta))

    @pytest.mark.parametrize("label", sorted(CARTAN_MATRICES))
    def test_coroots_are_closed_under_simple_reflections(self, label):
        system = root_system(label)
        coroots = set(system.positive_coroots) | {-coroot for coroot in system.positive_coroots}
        for alpha_i in system.simple_roots:
            assert {system.reflect(alpha_i, coroot) for coroot in coroots} == coroots
