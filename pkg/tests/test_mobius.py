"""Tests for the Möbius function of the Bruhat order on W⁰."""

import pytest

from qbg_mobius.exceptions import PreconditionError, RegularityError
from qbg_mobius.mobius import (
    MobiusMethod,
    below_map,
    elements_below,
    mobius_all,
    mobius_column,
    mobius_deodhar,
    mobius_oracle,
    mobius_superregular,
    predicted_value,
    tilted_order_report,
)
from qbg_mobius.regularity import RegularityConfig

from .conftest import group_for


class TestOracle:
    """Tests for the poset recursion."""

    def test_diagonal(self, example, a2_group):
        assert mobius_oracle(a2_group, example.y, example.y) == 1

    def test_cover(self, example, a2_group):
        """A two-element interval gives -1."""
        assert mobius_oracle(a2_group, example.z1, example.y) == -1

    def test_interval_leaving_w0(self, example, a2_group):
        """[z₂, y] ∩ W⁰ is a chain of three elements, so μ̃(z₂, y) = 0."""
        assert mobius_oracle(a2_group, example.z2, example.y) == 0

    def test_non_grassmannian_input(self, example, a2_group):
        with pytest.raises(PreconditionError):
            mobius_oracle(a2_group, example.x, example.y)

    def test_unrelated_elements(self, example, a2_group):
        with pytest.raises(PreconditionError):
            mobius_oracle(a2_group, example.y, example.z1)

    def test_column_matches_oracle(self, example, a2_group):
        """The top-down column agrees with the bottom-up recursion."""
        column = mobius_column(a2_group, example.y, floor=example.y.length - 3)
        assert column[example.y] == 1
        for z, value in column.items():
            assert mobius_oracle(a2_group, z, example.y) == value

    def test_defining_identity(self, example, a2_group):
        """Σ_{z ≤ z' ≤ y} μ̃(z', y) vanishes for every z < y."""
        graph = a2_group.lower_graph(example.y, floor=example.y.length - 3, grassmannian=True)
        column = mobius_column(a2_group, example.y, floor=example.y.length - 3)
        for z in graph.nodes:
            if z == example.y:
                continue
            above = {z} | {element for element in graph.nodes if a2_group.bruhat_leq(z, element)}
            assert sum(column[element] for element in above) == 0


class TestDeodhar:
    """Tests for Deodhar's criterion."""

    def test_diagonal(self, example, a2_group):
        result = mobius_deodhar(a2_group, example.y, example.y)
        assert result.value == 1
        assert result.method == MobiusMethod.DEODHAR

    def test_cover(self, example, a2_group):
        result = mobius_deodhar(a2_group, example.z1, example.y)
        assert result.value == -1
        assert result.witness is None

    def test_witness(self, example, a2_group):
        """z₂ s₁ = u ≤ y, so the criterion fires with witness 1."""
        result = mobius_deodhar(a2_group, example.z2, example.y)
        assert result.value == 0
        assert result.witness == 1
        assert example.z2 * a2_group.simple_reflection(1) == example.u

    def test_agrees_with_oracle_below_example_top(self, example, a2_group):
        column = mobius_column(a2_group, example.y, floor=example.y.length - 3)
        for z, value in column.items():
            result = mobius_deodhar(a2_group, z, example.y)
            assert result.value in (-1, 0, 1)
            assert result.value == value

    def test_nonzero_value_means_interval_inside_w0(self, example, a2_group):
        column = mobius_column(a2_group, example.y, floor=example.y.length - 2)
        for z in column:
            inside = all(a2_group.is_affine_grassmannian(e) for e in a2_group.interval(z, example.y))
            assert inside == bool(mobius_deodhar(a2_group, z, example.y).value)


class TestSuperregular:
    """Tests for the closed form on superregular tops."""

    def test_diagonal(self, deep_top, a2_group):
        assert mobius_superregular(a2_group, deep_top, deep_top).value == 1

    def test_quantum_edge_shift(self, deep_top, a2_group):
        """M(s₁s₂, s₁) = α₂∨, so s₁ t(-10,-9) carries the sign of a one-step gap."""
        x = a2_group.element([1], [-10, -9])
        result = mobius_superregular(a2_group, x, deep_top)
        assert result.value == -1
        assert result.method == MobiusMethod.SUPERREGULAR
        assert mobius_oracle(a2_group, x, deep_top) == -1

    def test_off_locus_is_zero(self, deep_top, a2_group):
        x = a2_group.element([1], [-10, -10])
        assert predicted_value(a2_group, x, deep_top) == 0
        assert mobius_superregular(a2_group, x, deep_top, check_order=False).value == 0

    def test_order_is_checked(self, deep_top, a2_group):
        """s₁ t(-10,-10) is longer than y and cannot lie below it."""
        with pytest.raises(PreconditionError):
            mobius_superregular(a2_group, a2_group.element([1], [-10, -10]), deep_top)

    def test_refuses_shallow_tops(self, example, a2_group):
        with pytest.raises(RegularityError) as exc_info:
            mobius_superregular(a2_group, example.z2, example.y)
        assert exc_info.value.bound == 6
        assert exc_info.value.pairing == 4

    def test_welch_profile_accepts_shallow_tops(self, example, a2_group):
        welch = RegularityConfig.for_system(a2_group.system, "welch")
        assert mobius_superregular(a2_group, example.z2, example.y, welch).value == 0
        assert mobius_superregular(a2_group, example.z1, example.y, welch).value == -1


class TestSupport:
    """Tests for B(y) = {x : μ̃(x, y) ≠ 0}."""

    def test_size_and_membership(self, deep_top, a2_group):
        support = elements_below(a2_group, deep_top)
        assert len(support) == 6
        assert deep_top in support
        for x in support:
            assert a2_group.is_affine_grassmannian(x)
            assert a2_group.bruhat_leq(x, deep_top)

    def test_matches_oracle_support(self, deep_top, a2_group):
        support = elements_below(a2_group, deep_top)
        column = mobius_column(a2_group, deep_top, floor=min(x.length for x in support))
        assert {z for z, value in column.items() if value} == support

    def test_below_map_is_indexed_by_w0(self, deep_top, a2_group):
        members = below_map(a2_group, deep_top)
        assert set(members) == set(a2_group.finite_elements())
        for u, x in members.items():
            assert x.w == u

    @pytest.mark.slow
    @pytest.mark.parametrize("label, coords", [("C2", [-12, -16]), ("G2", [-54, -90])])
    def test_matches_oracle_in_other_types(self, label, coords):
        group = group_for(label)
        y = group.element([1], coords)
        support = elements_below(group, y)
        assert len(support) == len(group.finite_elements())
        for x in support:
            assert mobius_oracle(group, x, y) == predicted_value(group, x, y) != 0


class TestAll:
    """Tests for mobius_all and the tilted order report."""

    def test_refusal_is_reported(self, example, a2_group):
        record = mobius_all(a2_group, example.z2, example.y)
        assert record["oracle"] == record["deodhar"] == 0
        assert record["superregular"] is None
        assert "not superregular" in record["refused"]
        assert record["agree"]

    def test_three_methods_agree(self, deep_top, a2_group):
        record = mobius_all(a2_group, a2_group.element([1], [-10, -9]), deep_top)
        assert record == {
            "oracle": -1,
            "deodhar": -1,
            "deodhar_witness": None,
            "superregular": -1,
            "refused": None,
            "agree": True,
        }

    def test_tilted_order_report(self, deep_top, a2_group):
        report = tilted_order_report(a2_group, deep_top)
        assert report["w"] == [1, 2]
        assert report["lambda"] == [-10, -10]
        assert isinstance(report["agree"], bool)
        assert len(report["bruhat_covers"]) > 0
