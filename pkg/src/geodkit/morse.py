"""Morse counts of iterated closed geodesics and the Morse inequalities against Betti numbers.

For a non-degenerate iterate the critical module is ``Q`` in degree ``i(c^m)`` when
``i(c^m) - i(c)`` is even and vanishes otherwise, so ``M_p`` counts the iterates of index
``p``. Iterates are enumerated exhaustively up to :func:`~geodkit.iteration.iterate_bound`.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import Field, model_validator

from .base import Record
from .errors import ModelError
from .iteration import GeodesicModel, index_iterate_elliptic, iterate_bound
from .topology import BettiTable

logger = logging.getLogger(__name__)


def critical_module_rank(g: GeodesicModel, m: int, p: int) -> int:
    """Rank of the local critical module of ``c^m`` in degree ``p``: 0 or 1."""
    index = index_iterate_elliptic(g, m)
    return int((index - g.initial_index) % 2 == 0 and p == index)


class MorseTable(Record):
    """``M_p`` for ``0 <= p <= max_degree``, with per-geodesic contributions."""

    n: Optional[int] = Field(default=None, description="Sphere dimension; None when empty")
    max_degree: int = Field(..., ge=0)
    counts: List[int]
    per_geodesic: List[List[int]] = Field(default_factory=list)
    bounds: List[int] = Field(default_factory=list, description="Iterates enumerated")
    labels: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_counts(self) -> "MorseTable":
        if len(self.counts) != self.max_degree + 1:
            raise ValueError("counts must cover degrees 0..max_degree")
        if self.per_geodesic:
            if any(len(row) != len(self.counts) for row in self.per_geodesic):
                raise ValueError("per-geodesic rows must cover degrees 0..max_degree")
            summed = [sum(column) for column in zip(*self.per_geodesic)]
            if summed != self.counts:
                raise ValueError("M_p must equal the sum of the per-geodesic counts")
        return self

    def __getitem__(self, p: int) -> int:
        if p < 0:
            return 0
        if p > self.max_degree:
            raise IndexError(f"degree {p} beyond table bound {self.max_degree}")
        return self.counts[p]

    def window(self, lower: int, upper: int, j: Optional[int] = None) -> int:
        """Σ M_p (or Σ M_p(j)) over ``lower <= p <= upper``, clipped to the table."""
        row = self.counts if j is None else self.per_geodesic[j]
        return sum(row[max(lower, 0):min(upper, self.max_degree) + 1])


def _geodesic_counts(g: GeodesicModel, degree: int) -> Tuple[List[int], int]:
    bound = iterate_bound(g, degree)
    row = [0] * (degree + 1)
    for m in range(1, bound + 1):
        index = index_iterate_elliptic(g, m)
        if 0 <= index <= degree:
            row[index] += 1
    logger.debug("enumerated %d iterates of %s below degree %d", bound, g.name, degree)
    return row, bound


def morse_counts(
    models: Sequence[GeodesicModel], max_degree: int, workers: int = 1
) -> MorseTable:
    """Count ``M_p(j) = #{m >= 1 : i(c_j^m) = p}`` for every ``p <= max_degree``.

    Args:
        models: Geodesic models sharing the same ``n``
        max_degree: Degree bound D
        workers: Threads used to enumerate the geodesics

    Raises:
        ModelError: If the models disagree on ``n`` or a mean index is not positive
    """
    dims = {g.n for g in models}
    if len(dims) > 1:
        raise ModelError(f"models live on spheres of different dimensions {sorted(dims)}")
    results: Dict[int, Tuple[List[int], int]] = {}
    if workers > 1 and len(models) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(_geodesic_counts, g, max_degree): j for j, g in enumerate(models)
            }
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    else:
        results = {j: _geodesic_counts(g, max_degree) for j, g in enumerate(models)}

    rows = [results[j][0] for j in range(len(models))]
    counts = [sum(column) for column in zip(*rows)] if rows else [0] * (max_degree + 1)
    return MorseTable(
        n=dims.pop() if dims else None,
        max_degree=max_degree,
        counts=counts,
        per_geodesic=rows,
        bounds=[results[j][1] for j in range(len(models))],
        labels=[g.name for g in models],
    )


def _alternating(values: Sequence[int], p: int) -> int:
    return sum((-1) ** (p - k) * values[k] for k in range(p + 1))


class MorseRow(Record):
    """One degree of a Morse inequality report."""

    degree: int
    morse: int
    betti: int
    morse_alternating: int
    betti_alternating: int
    status: str = Field(..., description="ok, weak (M_p < b_p) or alternating")


class MorseInequalityReport(Record):
    """``M_p >= b_p`` and the alternating-sum inequalities up to ``max_degree``."""

    max_degree: int
    rows: List[MorseRow]
    first_violation: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.first_violation is None

    def row(self, p: int) -> MorseRow:
        return self.rows[p]


def _check_bounds(morse: MorseTable, betti: BettiTable, max_degree: Optional[int]) -> int:
    bound = min(morse.max_degree, betti.max_degree) if max_degree is None else max_degree
    if bound > morse.max_degree or bound > betti.max_degree:
        raise ModelError(f"degree bound {bound} exceeds the tables' bounds")
    return bound


def check_morse_inequalities(
    morse: MorseTable, betti: BettiTable, max_degree: Optional[int] = None
) -> MorseInequalityReport:
    """Check the weak and alternating Morse inequalities degree by degree.

    The alternating inequality at ``p`` is
    ``Σ_{k<=p} (-1)^{p-k} M_k >= Σ_{k<=p} (-1)^{p-k} b_k``. Violations are report content.
    """
    bound = _check_bounds(morse, betti, max_degree)
    m_values = morse.counts[: bound + 1]
    b_values = betti.values[: bound + 1]
    rows = []
    first: Optional[int] = None
    for p in range(bound + 1):
        lhs, rhs = _alternating(m_values, p), _alternating(b_values, p)
        if m_values[p] < b_values[p]:
            status = "weak"
        elif lhs < rhs:
            status = "alternating"
        else:
            status = "ok"
        if status != "ok" and first is None:
            first = p
            logger.info("Morse inequality fails at degree %d (%s)", p, status)
        rows.append(
            MorseRow(
                degree=p,
                morse=m_values[p],
                betti=b_values[p],
                morse_alternating=lhs,
                betti_alternating=rhs,
                status=status,
            )
        )
    return MorseInequalityReport(max_degree=bound, rows=rows, first_violation=first)


class ParityReport(Record):
    """Vanishing in degrees ``p ≡ n`` and equality ``M_p = b_p`` in degrees ``p ≡ n - 1``."""

    n: int
    max_degree: int
    vanishing_failures: List[int] = Field(default_factory=list)
    equality_failures: List[int] = Field(default_factory=list)

    @property
    def vanishing_holds(self) -> bool:
        return not self.vanishing_failures

    @property
    def equality_holds(self) -> bool:
        return not self.equality_failures


def check_parity_vanishing(
    morse: MorseTable, betti: BettiTable, n: int, max_degree: Optional[int] = None
) -> ParityReport:
    """Check ``M_p = b_p = 0`` for ``p ≡ n (mod 2)`` and report where ``M_p != b_p`` otherwise.

    The vanishing half always holds for irrationally elliptic model sets; the equality half
    holds for realizable ones, so its failures certify an inconsistent set.
    """
    bound = _check_bounds(morse, betti, max_degree)
    vanishing, equality = [], []
    for p in range(bound + 1):
        if (p - n) % 2 == 0:
            if morse[p] or betti[p]:
                vanishing.append(p)
        elif morse[p] != betti[p]:
            equality.append(p)
    if vanishing:
        logger.warning("wrong-parity degrees with non-zero counts: %s", vanishing)
    return ParityReport(
        n=n, max_degree=bound, vanishing_failures=vanishing, equality_failures=equality
    )
