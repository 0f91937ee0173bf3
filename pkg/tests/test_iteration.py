"""Tests for Morse index iteration."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from geodkit.errors import ModelError
from geodkit.iteration import (
    GeodesicModel,
    IndexSequence,
    SymplecticPathModel,
    index_iterate_elliptic,
    index_iterate_general,
    iterate_bound,
    mean_index,
    mean_index_enclosure,
    parity_gap,
    rotation_model,
)
from geodkit.numerics import decimal, quadratic, rational
from geodkit.symplectic import HBlock, N1Block, N2Block, NormalFormData, RBlock

HALF_ROOT_TWO = quadratic(0, 1, 2, 2)
ROOT_TWO_MINUS_ONE = quadratic(-1, 1, 2)
ROOT_THREE_MINUS_ONE = quadratic(-1, 1, 3)

IRRATIONAL_TURNS = [
    (0, 1, 2, 4),
    (-1, 1, 2, 1),
    (0, 1, 3, 3),
    (3, -1, 3, 2),
    (-1, 1, 5, 2),
    (0, 1, 2, 2),
    (-2, 1, 7, 1),
    (0, 1, 5, 4),
]


@st.composite
def geodesic_models(draw, distinguished=False):
    n = draw(st.integers(2, 5))
    angles = tuple(quadratic(*draw(st.sampled_from(IRRATIONAL_TURNS))) for _ in range(n - 1))
    extra = 0 if distinguished else 2 * draw(st.integers(0, 3))
    return GeodesicModel(n=n, initial_index=n - 1 + extra, angles=angles)


class TestGeodesicModel:
    """Test validation of geodesic models."""

    def test_valid_model(self):
        """Test a model on S^2."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        assert g.is_distinguished
        assert g.name == "c(i=1)"
        assert GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO], label="c1").name == "c1"

    def test_angle_count(self):
        """Test that n - 1 angles are required."""
        with pytest.raises(ValidationError, match="expected 2 rotation angles"):
            GeodesicModel(n=3, initial_index=2, angles=[HALF_ROOT_TWO])

    def test_wrong_parity(self):
        """Test that i(c) must have the parity of n - 1."""
        with pytest.raises(ValidationError, match="wrong parity"):
            GeodesicModel(n=2, initial_index=2, angles=[HALF_ROOT_TWO])

    def test_rational_angle_rejected(self):
        """Test that rational angles are rejected."""
        with pytest.raises(ValidationError, match="must be irrational"):
            GeodesicModel(n=2, initial_index=1, angles=[rational(1, 3)])

    def test_unmarked_decimal_rejected(self):
        """Test that decimals need an irrationality assertion."""
        with pytest.raises(ValidationError, match="irrational: true"):
            GeodesicModel(n=2, initial_index=1, angles=[decimal("0.3183", 4)])
        g = GeodesicModel(
            n=2, initial_index=1, angles=[decimal("0.318309886", 9, expr="1/pi", irrational=True)]
        )
        assert index_iterate_elliptic(g, 22) == 2 * 7 + 1

    def test_angle_outside_unit_interval(self):
        """Test that θ/2π must lie in (0, 1)."""
        with pytest.raises(ValidationError, match=r"must lie in \(0, 1\)"):
            GeodesicModel(n=2, initial_index=1, angles=[quadratic(0, 1, 2)])

    def test_literal_angles(self):
        """Test that angles are parsed from literals."""
        g = GeodesicModel.model_validate(
            {
                "n": 2,
                "initial_index": 1,
                "angles": [{"kind": "quadratic", "p": 0, "q": 1, "d": 2, "r": 2}],
            }
        )
        assert g.angles == (HALF_ROOT_TWO,)


class TestEllipticIteration:
    """Test i(c^m) for irrationally elliptic geodesics."""

    def test_sphere_two_sequence(self):
        """Test the first iterates of i = 1, θ/2π = √2/2 on S^2."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        values = [index_iterate_elliptic(g, m) for m in range(1, 9)]
        assert values == [1, 3, 5, 5, 7, 9, 9, 11]

    def test_partner_sequence(self):
        """Test i = 3, θ/2π = √2 - 1 on S^2."""
        g = GeodesicModel(n=2, initial_index=3, angles=[ROOT_TWO_MINUS_ONE])
        assert [index_iterate_elliptic(g, m) for m in range(1, 6)] == [3, 5, 9, 11, 15]

    def test_iterate_must_be_positive(self):
        """Test that m = 0 is rejected."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        with pytest.raises(ValueError):
            index_iterate_elliptic(g, 0)

    def test_mean_index(self):
        """Test exact and certified mean indices."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        assert mean_index(g) == quadratic(0, 1, 2)
        g = GeodesicModel(n=2, initial_index=1, angles=[ROOT_TWO_MINUS_ONE])
        assert mean_index(g) == quadratic(-2, 2, 2)
        g = GeodesicModel(n=3, initial_index=2, angles=[ROOT_TWO_MINUS_ONE, ROOT_THREE_MINUS_ONE])
        assert float(mean_index(g)) == pytest.approx(2 * 2**0.5 + 2 * 3**0.5 - 4)

    def test_non_positive_mean_index(self):
        """Test that a non-positive mean index is a model error."""
        small = quadratic(0, 1, 2, 4)
        g = GeodesicModel(n=3, initial_index=0, angles=[small, small])
        with pytest.raises(ModelError, match="not positive"):
            mean_index_enclosure(g)
        with pytest.raises(ModelError):
            iterate_bound(g, 10)

    def test_iterate_bound_covers_all_low_indices(self):
        """Test that no iterate beyond the bound has index at most the degree."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        bound = iterate_bound(g, 5)
        assert bound >= 4
        assert all(index_iterate_elliptic(g, m) > 5 for m in range(bound + 1, bound + 30))

    def test_index_sequence(self):
        """Test the tabulated sequence with running averages."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        seq = IndexSequence.evaluate(g, 5)
        assert seq.values == [1, 3, 5, 5, 7]
        assert seq.nullities == [0] * 5
        assert seq.averages[3] == pytest.approx(5 / 4)
        assert seq.index(2) == 3
        assert seq.mean == quadratic(0, 1, 2)
        assert IndexSequence.evaluate(g, 5, general=True).values == seq.values

    def test_single_iterate(self):
        """Test max_m = 1."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO])
        assert IndexSequence.evaluate(g, 1).values == [1]

    def test_sequence_round_trip(self):
        """Test that a sequence re-parses from JSON."""
        g = GeodesicModel(n=2, initial_index=1, angles=[HALF_ROOT_TWO], label="c1")
        seq = IndexSequence.evaluate(g, 4)
        assert IndexSequence.from_json(seq.to_json()) == seq


class TestGeneralIteration:
    """Test the iteration formula in terms of splitting numbers."""

    def test_n1_block(self):
        """Test N1(1, 1) with i = 0."""
        path = SymplecticPathModel(
            initial_index=0, endpoint=NormalFormData.of(N1Block(lam=1, a=1.0))
        )
        assert index_iterate_general(path, 3) == 2

    def test_two_rotations(self):
        """Test rotations √2 - 1 and √3 - 1 with i = 2."""
        path = SymplecticPathModel(
            initial_index=2,
            endpoint=NormalFormData.of(
                RBlock(turn=ROOT_TWO_MINUS_ONE), RBlock(turn=ROOT_THREE_MINUS_ONE)
            ),
        )
        assert index_iterate_general(path, 2) == 4

    def test_minus_identity_on_even_iterates(self):
        """Test that -I_2 lowers even iterates only."""
        path = SymplecticPathModel(
            initial_index=1, endpoint=NormalFormData.of(N1Block(lam=-1, a=0.0))
        )
        assert [index_iterate_general(path, m) for m in (1, 2, 3)] == [1, 1, 3]

    def test_nontrivial_n2(self):
        """Test a nontrivial N2 block."""
        block = N2Block.build(quadratic(0, 1, 2, 4), 0.0, 1.0)
        assert block.trivial is False
        path = SymplecticPathModel(initial_index=2, endpoint=NormalFormData.of(block))
        assert [index_iterate_general(path, m) for m in (1, 2)] == [2, 4]

    def test_rotation_model(self):
        """Test the rotation-only path model of a geodesic."""
        g = GeodesicModel(n=3, initial_index=2, angles=[ROOT_TWO_MINUS_ONE, ROOT_THREE_MINUS_ONE])
        path = rotation_model(g)
        assert path.endpoint.r == 2
        assert path.initial_index == 2


@settings(max_examples=1000, deadline=None)
@given(g=geodesic_models(), m=st.integers(1, 200))
def test_general_formula_specializes(g, m):
    """Test that both formulas agree on rotation-only models."""
    assert index_iterate_general(rotation_model(g), m) == index_iterate_elliptic(g, m)


@settings(max_examples=1000, deadline=None)
@given(g=geodesic_models(), m=st.integers(1, 500))
def test_index_parity(g, m):
    """Test that i(c^m) - i(c) is even and consecutive gaps are even."""
    assert (index_iterate_elliptic(g, m) - g.initial_index) % 2 == 0
    assert parity_gap(g, m) % 2 == 0


@settings(max_examples=100, deadline=None)
@given(g=geodesic_models(distinguished=True), m=st.integers(1, 500))
def test_distinguished_index_is_nondecreasing(g, m):
    """Test that i(c^m) never decreases when i(c) = n - 1."""
    assert parity_gap(g, m) >= 0


@settings(max_examples=1000, deadline=None)
@given(
    initial=st.integers(0, 6),
    n1=st.lists(
        st.tuples(st.sampled_from([1, -1]), st.sampled_from([1.0, 0.0, -1.0])), max_size=3
    ),
    rotations=st.lists(
        st.sampled_from(IRRATIONAL_TURNS + [(1, 0, 2, 3), (1, 0, 2, 5)]), max_size=3
    ),
    n2=st.lists(st.tuples(st.sampled_from(IRRATIONAL_TURNS), st.booleans()), max_size=2),
    hyperbolic=st.integers(0, 2),
)
def test_first_iterate_is_initial_index(initial, n1, rotations, n2, hyperbolic):
    """Test i(γ^1) = i(γ) for arbitrary normal forms."""
    blocks = [N1Block(lam=lam, a=a) for lam, a in n1]
    blocks += [RBlock(turn=quadratic(*t)) for t in rotations]
    blocks += [
        N2Block.build(quadratic(*t), *((1.0, 0.0) if first else (0.0, 1.0)))
        for t, first in n2
    ]
    blocks += [HBlock(b=2.0)] * hyperbolic
    if not blocks:
        blocks = [HBlock(b=3.0)]
    path = SymplecticPathModel(initial_index=initial, endpoint=NormalFormData.of(*blocks))
    assert index_iterate_general(path, 1) == initial
