"""Tests for Betti numbers and window sums."""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from geodkit.topology import (
    BettiTable,
    betti,
    betti_table,
    betti_window,
    betti_window_sum,
    expected_window_sum,
)


class TestBetti:
    """Test b_j for small spheres."""

    def test_sphere_two(self):
        """Test S^2: 1 in degree 1, 2 from degree 3 on odd degrees."""
        assert [betti(2, j) for j in range(8)] == [0, 1, 0, 2, 0, 2, 0, 2]

    def test_sphere_three(self):
        """Test S^3: 1 in degree 2, 2 from degree 4 on even degrees."""
        assert [betti(3, j) for j in range(8)] == [0, 0, 1, 0, 2, 0, 2, 0]

    def test_sphere_four(self):
        """Test S^4, where only odd multiples of 3 beyond 9 are doubled."""
        assert betti(4, 3) == 1
        assert betti(4, 5) == 1
        assert betti(4, 7) == 1
        assert betti(4, 9) == 2
        assert betti(4, 6) == 0
        assert betti(4, 15) == 2
        assert betti(4, 18) == 0

    def test_invalid_dimension(self):
        """Test that n < 2 is rejected."""
        with pytest.raises(ValueError):
            betti(1, 3)

    def test_table(self):
        """Test the tabulated values and out-of-range access."""
        table = betti_table(2, 5)
        assert table.values == [0, 1, 0, 2, 0, 2]
        assert table[-1] == 0
        assert table[3] == 2
        with pytest.raises(IndexError):
            table[6]

    def test_table_validation(self):
        """Test that malformed tables are rejected."""
        with pytest.raises(ValidationError):
            BettiTable(n=2, max_degree=3, values=[0, 1])
        with pytest.raises(ValidationError):
            BettiTable(n=2, max_degree=1, values=[0, 3])


class TestWindowSums:
    """Test Σ b_p over the window around 2N."""

    @pytest.mark.parametrize("n,N,expected", [(2, 3, 4), (3, 4, 6), (4, 9, 6), (5, 12, 8)])
    def test_known_sums(self, n, N, expected):
        """Test the window sums used by the consistency check."""
        assert betti_window_sum(n, N) == expected
        assert expected_window_sum(n) == expected

    def test_window_bounds(self):
        """Test the window record."""
        window = betti_window(2, 3)
        assert (window.lower, window.upper) == (5, 7)
        assert window.canonical

    def test_non_canonical_window_is_flagged(self):
        """Test that N not divisible by n - 1 still sums but is flagged."""
        window = betti_window(3, 3)
        assert not window.canonical
        assert window.total == 6


@given(n=st.integers(2, 9), k=st.integers(2, 40))
def test_canonical_window_sum(n, k):
    """Test the closed form n + 2 (even n) or n + 3 (odd n)."""
    window = betti_window(n, k * (n - 1))
    assert window.canonical
    assert window.total == expected_window_sum(n)


def membership_oracle(n, j):
    doubled = {k * (n - 1) for k in range(2, 400) if n % 2 or k % 2}
    doubled.discard(n - 1)
    if n % 2 == 0:
        doubled.discard(2 * (n - 1))
    single = set(range(n - 1, 401, 2)) - doubled
    return 2 if j in doubled else 1 if j in single else 0


@pytest.mark.parametrize("n", range(2, 10))
def test_betti_matches_membership_oracle(n):
    """Test b_j for every degree up to 200 against the degree sets."""
    assert [betti(n, j) for j in range(201)] == [membership_oracle(n, j) for j in range(201)]


@pytest.mark.parametrize("n", range(2, 10))
def test_every_canonical_window(n):
    """Test the window sum for every canonical N up to 100(n - 1)."""
    sums = {betti_window_sum(n, k * (n - 1)) for k in range(2, 101)}
    assert sums == {expected_window_sum(n)}
