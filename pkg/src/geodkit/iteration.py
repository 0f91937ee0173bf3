"""Index iteration for symplectic paths and irrationally elliptic closed geodesics.

Two formulas are provided. :func:`index_iterate_general` evaluates the iteration formula in
terms of the ten splitting numbers of the endpoint's normal form. For an irrationally
elliptic geodesic on ``S^n`` the endpoint is a ⋄-sum of ``n - 1`` rotations and the formula
specializes to::

    i(c^m) = m(i(c) - n + 1) + 2 Σ_k [m θ_k / 2π] + n - 1

which :func:`index_iterate_elliptic` evaluates with exact floors. Angles are always stored as
``θ/2π``.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import Field, computed_field, model_validator

from .base import Real, Record
from .errors import BracketError, ModelError
from .numerics import ExactReal, Rational, ceil_of, floor_of_multiple, varphi_of
from .symplectic import NormalFormData, RBlock

logger = logging.getLogger(__name__)


class SymplecticPathModel(Record):
    """A symplectic path reduced to its index and the normal form of its endpoint."""

    initial_index: int = Field(..., description="Maslov-type index i(γ)")
    endpoint: NormalFormData = Field(..., description="Normal-form data of γ(τ)")


class GeodesicModel(Record):
    """Index data of an irrationally elliptic prime closed geodesic on ``S^n``.

    Example:
        >>> from geodkit.numerics import quadratic
        >>> g = GeodesicModel(n=2, initial_index=1, angles=[quadratic(0, 1, 2, 2)])
        >>> index_iterate_elliptic(g, 2)
        3
    """

    n: int = Field(..., ge=2, description="Dimension of the sphere S^n")
    initial_index: int = Field(..., ge=0, description="Morse index i(c)")
    angles: Tuple[Real, ...] = Field(..., description="θ_k/2π of the n-1 rotations")
    label: Optional[str] = Field(default=None, description="Display name")

    @model_validator(mode="after")
    def _check_model(self) -> "GeodesicModel":
        if len(self.angles) != self.n - 1:
            raise ValueError(
                f"expected {self.n - 1} rotation angles for n={self.n}, got {len(self.angles)}"
            )
        if (self.initial_index - (self.n - 1)) % 2:
            raise ValueError(
                f"initial index {self.initial_index} has the wrong parity: "
                f"i(c) must be congruent to n-1 = {self.n - 1} mod 2"
            )
        for k, turn in enumerate(self.angles, start=1):
            if turn.is_rational is not False:
                state = "rational" if turn.is_rational else "of unknown rationality"
                raise ValueError(
                    f"angle {k} ({turn}) is {state}; θ/2π must be irrational "
                    "(mark decimal literals with irrational: true)"
                )
            try:
                inside = Rational(Fraction(0)) < turn < Rational(Fraction(1))
            except BracketError as e:
                raise ValueError(f"angle {k}: {e}") from e
            if not inside:
                raise ValueError(f"angle {k} ({turn}): θ/2π must lie in (0, 1)")
        return self

    @property
    def name(self) -> str:
        return self.label or f"c(i={self.initial_index})"

    @property
    def is_distinguished(self) -> bool:
        """True when ``i(c) = n - 1``."""
        return self.initial_index == self.n - 1


def index_iterate_general(path: SymplecticPathModel, m: int) -> int:
    """Evaluate the iteration formula ``i(γ^m)`` from the splitting numbers of γ(τ).

    Args:
        path: Path model
        m: Iterate, at least 1

    Raises:
        BracketError: If a ceiling of ``m θ_j / 2π`` cannot be decided
    """
    if m < 1:
        raise ValueError(f"iterate must be positive, got {m}")
    nf = path.endpoint
    p_sum = nf.p_minus + nf.p_zero
    value = m * (path.initial_index + p_sum - nf.r)
    value += 2 * sum(ceil_of(turn * m) for turn in nf.rotation_turns)
    value -= nf.r + p_sum
    if m % 2 == 0:
        value -= nf.q_zero + nf.q_plus
    value += 2 * sum(varphi_of(turn * m) for turn in nf.nontrivial_turns)
    value -= 2 * nf.r_star
    return value


def index_iterate_elliptic(g: GeodesicModel, m: int) -> int:
    """Return ``i(c^m)``; the nullity ``ν(c^m)`` is always 0.

    Raises:
        BracketError: If a floor of ``m θ_k / 2π`` cannot be decided
    """
    if m < 1:
        raise ValueError(f"iterate must be positive, got {m}")
    floors = sum(floor_of_multiple(turn, m) for turn in g.angles)
    return m * (g.initial_index - g.n + 1) + 2 * floors + g.n - 1


def mean_index(g: GeodesicModel) -> ExactReal:
    """Return ``î(c) = i(c) - (n - 1) + Σ_k θ_k / π``, exact when the angles are."""
    total: ExactReal = Rational(Fraction(g.initial_index - (g.n - 1)))
    for turn in g.angles:
        total = total + turn * 2
    return total


def parity_gap(g: GeodesicModel, m: int) -> int:
    """Return ``i(c^{m+1}) - i(c^m)``, always even."""
    return index_iterate_elliptic(g, m + 1) - index_iterate_elliptic(g, m)


def mean_index_enclosure(g: GeodesicModel, digits: int = 40) -> Tuple[Fraction, Fraction]:
    """Return rational bounds ``(lo, hi)`` on the mean index with ``lo > 0``.

    Raises:
        ModelError: If the mean index is not positive
    """
    value = mean_index(g)
    lo, hi = value.enclosure(digits)
    if lo <= 0:
        raise ModelError(f"mean index {value} of {g.name} is not positive")
    return lo, hi


def iterate_bound(g: GeodesicModel, degree: int) -> int:
    """Largest iterate that can have index at most ``degree``.

    Every ``m`` with ``i(c^m) <= degree`` satisfies ``m <= iterate_bound(g, degree)``.

    Raises:
        ModelError: If the mean index is not positive
    """
    mean, _ = mean_index_enclosure(g)
    slack = degree + 2 * (g.n - 1) + abs(g.initial_index - g.n + 1)
    return max(1, math.ceil(Fraction(max(slack, 0)) / mean) + 1)


def rotation_model(g: GeodesicModel) -> SymplecticPathModel:
    """Return the rotation-only path model with the same index and angles as ``g``."""
    return SymplecticPathModel(
        initial_index=g.initial_index,
        endpoint=NormalFormData.of(*(RBlock(turn=turn) for turn in g.angles)),
    )


class IndexSequence(Record):
    """``i(c^m)`` and ``ν(c^m)`` for ``m = 1..max_m``."""

    model: GeodesicModel
    max_m: int = Field(..., ge=1)
    values: List[int]
    nullities: List[int]
    mean: Real = Field(..., description="Mean index î(c)")

    @classmethod
    def evaluate(cls, g: GeodesicModel, max_m: int, general: bool = False) -> "IndexSequence":
        """Tabulate the first ``max_m`` iterates.

        Args:
            g: Geodesic model
            max_m: Number of iterates
            general: Evaluate the general formula on :func:`rotation_model` instead
        """
        if general:
            path = rotation_model(g)
            values = [index_iterate_general(path, m) for m in range(1, max_m + 1)]
        else:
            values = [index_iterate_elliptic(g, m) for m in range(1, max_m + 1)]
        logger.debug("evaluated %d iterates of %s", max_m, g.name)
        return cls(
            model=g, max_m=max_m, values=values, nullities=[0] * max_m, mean=mean_index(g)
        )

    @computed_field  # type: ignore[misc]
    @property
    def averages(self) -> List[float]:
        """Running ``i(c^m) / m``."""
        return [value / m for m, value in enumerate(self.values, start=1)]

    def index(self, m: int) -> int:
        return self.values[m - 1]
