"""Synthetic irrationally elliptic model sets with a known common index jump.

The distinguished geodesic has ``i = n - 1`` and every angle ``√2/2``; partner ``j`` has
``i = 3(n - 1)`` and every angle equal to one irrational ``β_j`` in ``(1/3, 2/3)``. For such a
set ``N = 3(n - 1)`` with ``m_1 = 2`` and ``m_j = 1`` is the minimal certificate, no other
iterate enters the window, and the window Morse count is ``3 + (q - 1)``. The set is
therefore consistent exactly when ``q = 2[(n + 1)/2]``.
"""

from typing import List, Tuple

from .iteration import GeodesicModel
from .numerics import ExactReal, quadratic

# (p, q, d, r) for (p + q*sqrt(d)) / r, all in (1/3, 2/3)
PARTNER_ANGLES: Tuple[Tuple[int, int, int, int], ...] = (
    (-1, 1, 2, 1),
    (-1, 1, 5, 2),
    (3, -1, 3, 2),
    (-2, 1, 7, 1),
    (0, 1, 3, 3),
    (0, 1, 2, 3),
    (-1, 1, 6, 3),
)

DISTINGUISHED_ANGLE = (0, 1, 2, 2)


def partner_angle(k: int) -> ExactReal:
    """The ``k``-th partner angle ``β``, counting from 0."""
    return quadratic(*PARTNER_ANGLES[k])


def distinguished_model(n: int) -> GeodesicModel:
    """``i = n - 1`` with all angles ``√2/2``."""
    angle = quadratic(*DISTINGUISHED_ANGLE)
    return GeodesicModel(n=n, initial_index=n - 1, angles=(angle,) * (n - 1), label="c1")


def partner_model(n: int, k: int) -> GeodesicModel:
    """``i = 3(n - 1)`` with all angles equal to :func:`partner_angle` ``k``."""
    return GeodesicModel(
        n=n,
        initial_index=3 * (n - 1),
        angles=(partner_angle(k),) * (n - 1),
        label=f"c{k + 2}",
    )


def synthetic_model_set(n: int, q: int) -> List[GeodesicModel]:
    """Build a model set of ``q`` geodesics on ``S^n``.

    Raises:
        ValueError: If ``q`` is not between 1 and ``len(PARTNER_ANGLES) + 1``
    """
    if not 1 <= q <= len(PARTNER_ANGLES) + 1:
        raise ValueError(f"q must lie in [1, {len(PARTNER_ANGLES) + 1}], got {q}")
    return [distinguished_model(n)] + [partner_model(n, k) for k in range(q - 1)]
