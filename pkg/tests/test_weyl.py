"""Tests for the finite Weyl group."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbg_mobius.cartan import CARTAN_MATRICES, CorootVector, RootVector, root_system
from qbg_mobius.exceptions import InvalidInputError
from qbg_mobius.weyl import (
    chamber,
    enumerate_group,
    from_word,
    identity,
    longest_element,
    reflection,
    reflection_root,
    simple_reflection,
)

words = st.lists(st.integers(min_value=1, max_value=2), max_size=8)


class TestWeylElement:
    """Tests for products, lengths and reduced words."""

    def test_identity_has_length_zero(self, a2):
        assert identity(a2).length == 0
        assert identity(a2).is_identity

    @pytest.mark.parametrize("label, order", [("A2", 6), ("C2", 8), ("G2", 12), ("A3", 24), ("B3", 48)])
    def test_group_order(self, label, order):
        """|W₀| for the small types."""
        assert len(enumerate_group(root_system(label))) == order

    def test_group_is_sorted_by_length(self, a2):
        lengths = [w.length for w in enumerate_group(a2)]
        assert lengths == sorted(lengths)
        assert enumerate_group(a2)[0] == identity(a2)

    def test_longest_element(self, a2):
        """w₀ = s₁s₂s₁ = s₂s₁s₂ has length 3 and reverses every positive root."""
        w0 = longest_element(a2)
        assert w0 == from_word(a2, [1, 2, 1]) == from_word(a2, [2, 1, 2])
        assert w0.length == 3
        assert len(w0.inversions()) == 3

    def test_reflection_of_highest_short_root_in_c3(self):
        """s_φ = s₂s₁s₃s₂s₁s₃s₂ has length 7 in C3."""
        c3 = root_system("C3")
        s_phi = from_word(c3, [2, 1, 3, 2, 1, 3, 2])
        assert s_phi == reflection(c3, c3.highest_short_root)
        assert s_phi.length == 7

    def test_reflection_of_highest_short_root_in_b3(self):
        """s_φ = s₁s₂s₃s₂s₁ has length 5 in B3."""
        b3 = root_system("B3")
        s_phi = from_word(b3, [1, 2, 3, 2, 1])
        assert s_phi == reflection(b3, b3.highest_short_root)
        assert s_phi.length == 5

    def test_simple_reflection_is_an_involution(self, a2):
        s1 = simple_reflection(a2, 1)
        assert (s1 * s1).is_identity
        assert s1.act_on_root(RootVector((1, 0))) == RootVector((-1, 0))

    def test_reflection_root(self, a2):
        """The reflection through α₁+α₂ is recognised; s₁s₂ is not a reflection."""
        assert reflection_root(from_word(a2, [1, 2, 1])) == RootVector((1, 1))
        assert reflection_root(from_word(a2, [1, 2])) is None

    def test_descents(self, a2):
        """s₁s₂ has right descent 2 and left descent 1."""
        w = from_word(a2, [1, 2])
        assert w.right_descents() == [2]
        assert w.has_left_descent(1)
        assert not w.has_left_descent(2)

    def test_bad_index_raises(self, a2):
        with pytest.raises(InvalidInputError):
            from_word(a2, [3])
        with pytest.raises(InvalidInputError):
            simple_reflection(a2, 0)

    def test_mixing_systems_raises(self, a2):
        with pytest.raises(InvalidInputError):
            simple_reflection(a2, 1) * simple_reflection(root_system("C2"), 1)

    def test_dualize_preserves_length(self):
        """The same element read in the dual system has the same length."""
        b3 = root_system("B3")
        for w in enumerate_group(b3):
            assert w.dualize(b3.dual()).length == w.length

    @given(words)
    def test_reduced_word_reproduces_element(self, word):
        """The greedy reduced word multiplies back to the element and has length ℓ(w)."""
        a2 = root_system("A2")
        w = from_word(a2, word)
        reduced = w.reduced_word()
        assert len(reduced) == w.length
        assert from_word(a2, reduced) == w

    @given(words, words)
    def test_inverse_and_length(self, first, second):
        """ℓ(w⁻¹) = ℓ(w) and ℓ(uv) ≤ ℓ(u) + ℓ(v)."""
        a2 = root_system("A2")
        u, v = from_word(a2, first), from_word(a2, second)
        assert (u * u.inverse()).is_identity
        assert u.inverse().length == u.length
        assert (u * v).length <= u.length + v.length


class TestChamber:
    """Tests for moving a coroot vector into the antidominant chamber."""

    def test_antidominant_vector_is_fixed(self, a2):
        v, lam = chamber(a2, CorootVector((-4, -4)))
        assert v.is_identity
        assert lam == CorootVector((-4, -4))

    def test_dominant_vector(self, a2):
        """(3,3) = w₀(-3,-3)."""
        v, lam = chamber(a2, CorootVector((3, 3)))
        assert lam == CorootVector((-3, -3))
        assert v == longest_element(a2)

    @given(st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
    def test_factorisation(self, coords):
        """mu = v λ with λ antidominant."""
        a2 = root_system("A2")
        mu = CorootVector(coords)
        v, lam = chamber(a2, mu)
        assert a2.is_antidominant(lam)
        assert v.act_on_coroot(lam) == mu


GROUP_ORDERS = {
    "A1": 2,
    "A2": 6,
    "A3": 24,
    "A4": 120,
    "B2": 8,
    "C2": 8,
    "B3": 48,
    "C3": 48,
    "D4": 192,
    "G2": 12,
}


class TestGroupStructure:
    """Tests for the action on coroots and the group axioms in every shipped type."""

    def test_longest_element_on_a_coroot(self, a2):
        """s₁s₂s₁ (-2, -3) = (3, 2)."""
        assert from_word(a2, [1, 2, 1]).act_on_coroot(CorootVector((-2, -3))) == CorootVector((3, 2))

    def test_simple_reflection_on_a_coroot(self, a2):
        """s₁ (-3, -4) = (-3, -4) - <λ, α₁> α₁∨ = (-1, -4)."""
        assert simple_reflection(a2, 1).act_on_coroot(CorootVector((-3, -4))) == CorootVector((-1, -4))

    def test_action_is_a_homomorphism(self, a2):
        lam = CorootVector((-2, -3))
        s1, s2 = simple_reflection(a2, 1), simple_reflection(a2, 2)
        assert (s1 * s2).act_on_coroot(lam) == s1.act_on_coroot(s2.act_on_coroot(lam))

    @given(label=st.sampled_from(sorted(CARTAN_MATRICES)), data=st.data())
    @settings(max_examples=80, deadline=None)
    def test_length_changes_by_one_under_a_simple_reflection(self, label, data):
        """ℓ(w s_i) = ℓ(w) - 1 exactly when i is a right descent of w, and ℓ(w) + 1 otherwise."""
        system = root_system(label)
        w = data.draw(st.sampled_from(enumerate_group(system)))
        i = data.draw(st.integers(min_value=1, max_value=system.rank))
        expected = w.length - 1 if w.has_right_descent(i) else w.length + 1
        assert (w * simple_reflection(system, i)).length == expected

    @pytest.mark.parametrize("label", sorted(CARTAN_MATRICES))
    def test_group_size(self, label):
        group = enumerate_group(root_system(label))
        assert len(group) == len(set(group)) == GROUP_ORDERS[label]

    @given(label=st.sampled_from(sorted(CARTAN_MATRICES)), data=st.data())
    @settings(max_examples=80, deadline=None)
    def test_group_is_closed_under_products_and_inverses(self, label, data):
        system = root_system(label)
        group = enumerate_group(system)
        elements = set(group)
        u = data.draw(st.sampled_from(group))
        v = data.draw(st.sampled_from(group))
        assert u * v in elements
        assert u.inverse() in elements
        assert (u * u.inverse()).is_identity
        assert (u * v).inverse() == v.inverse() * u.inverse()
