"""Rational Betti numbers of the pair ``(ΛS^n/S^1, Λ^0 S^n/S^1)`` and their window sums."""

import logging
from typing import List

from pydantic import Field, model_validator

from .base import Record
from .errors import ModelError

logger = logging.getLogger(__name__)


def _doubled(n: int, j: int) -> bool:
    """True when ``j`` lies in the set of degrees where ``b_j = 2``."""
    if j % (n - 1):
        return False
    k = j // (n - 1)
    if n % 2:
        return k >= 2
    return k >= 3 and k % 2 == 1


def betti(n: int, j: int) -> int:
    """Return ``b_j`` for the sphere ``S^n``.

    ``b_j`` is 2 on the multiples ``k(n - 1)`` (``k >= 2`` for odd ``n``, odd ``k >= 3`` for
    even ``n``), 1 on the other degrees ``n - 1 + 2k``, and 0 elsewhere.
    """
    if n < 2:
        raise ValueError(f"sphere dimension must be at least 2, got {n}")
    if j < n - 1 or (j - (n - 1)) % 2:
        return 0
    return 2 if _doubled(n, j) else 1


class BettiTable(Record):
    """``b_0 .. b_D`` for ``S^n``."""

    n: int = Field(..., ge=2)
    max_degree: int = Field(..., ge=0)
    values: List[int]

    @model_validator(mode="after")
    def _check_values(self) -> "BettiTable":
        if len(self.values) != self.max_degree + 1:
            raise ValueError("values must cover degrees 0..max_degree")
        if any(v not in (0, 1, 2) for v in self.values):
            raise ValueError("Betti numbers of the pair lie in {0, 1, 2}")
        return self

    def __getitem__(self, p: int) -> int:
        if p < 0:
            return 0
        if p > self.max_degree:
            raise IndexError(f"degree {p} beyond table bound {self.max_degree}")
        return self.values[p]


def betti_table(n: int, max_degree: int) -> BettiTable:
    """Tabulate ``b_j`` for ``0 <= j <= max_degree``.

    Raises:
        ModelError: If a degree below ``n - 1`` or of parity ``n`` has a non-zero entry
    """
    values = [betti(n, j) for j in range(max_degree + 1)]
    low = [j for j, b in enumerate(values) if b and (j < n - 1 or (j - n + 1) % 2)]
    if low:
        raise ModelError(f"non-zero Betti numbers in forbidden degrees {low} for n={n}")
    return BettiTable(n=n, max_degree=max_degree, values=values)


def expected_window_sum(n: int) -> int:
    """Closed form of the window sum: ``n + 2`` for even ``n``, ``n + 3`` for odd ``n``."""
    return n + 2 if n % 2 == 0 else n + 3


class BettiWindow(Record):
    """Σ b_p over ``[2N - (n - 1), 2N + n - 1]``."""

    n: int
    N: int
    lower: int
    upper: int
    total: int
    canonical: bool = Field(
        ..., description="(n-1) | N and the window lies beyond degree 2(n-1)"
    )


def betti_window(n: int, N: int) -> BettiWindow:
    """Sum the Betti numbers over the index window centred at ``2N``.

    The sum is computed even when the window is not canonical; the record flags it.
    """
    lower, upper = 2 * N - (n - 1), 2 * N + n - 1
    canonical = N % (n - 1) == 0 and lower > 2 * (n - 1)
    if not canonical:
        logger.warning("window sum for n=%d, N=%d is outside the canonical range", n, N)
    total = sum(betti(n, p) for p in range(max(lower, 0), upper + 1))
    return BettiWindow(n=n, N=N, lower=lower, upper=upper, total=total, canonical=canonical)


def betti_window_sum(n: int, N: int) -> int:
    """Return Σ_{p=2N-(n-1)}^{2N+n-1} b_p."""
    return betti_window(n, N).total
