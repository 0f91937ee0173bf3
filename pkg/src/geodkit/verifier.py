"""Consistency pipeline for finite sets of irrationally elliptic closed geodesics on ``S^n``.

If every prime closed geodesic of a bumpy Finsler ``S^n`` is irrationally elliptic and there
are finitely many, their number is ``2[(n + 1)/2]``. The pipeline checks the index-level
bookkeeping behind that count for a given model set:

1. parity of the initial indices and of the Morse counts;
2. initial indices: every ``i(c_j) >= n - 1`` with exactly one equality;
3. a common index jump certificate with ``(n - 1) | N``;
4. index gaps of the distinguished geodesic next to its jump;
5. the Morse counts in the window ``[2N - (n - 1), 2N + n - 1]`` against the Betti sum.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

from pydantic import Field, computed_field

from .base import Record
from .config import Options, using_precision
from .errors import ModelError, PreconditionError, WindowIntrusionError
from .iteration import GeodesicModel, index_iterate_elliptic, iterate_bound, mean_index
from .jump import (
    GapReport,
    JumpCertificate,
    check_iterate_gaps,
    find_common_jump,
    verify_certificate,
    witness_angles,
)
from .morse import (
    ParityReport,
    check_morse_inequalities,
    check_parity_vanishing,
    morse_counts,
)
from .topology import BettiWindow, betti_table, betti_window

logger = logging.getLogger(__name__)

SCOPE = (
    "Checks necessary conditions computable from index data alone; it cannot certify that "
    "the model set is realized by a Finsler metric."
)
INFINITE_CASE = (
    "The alternative of infinitely many closed geodesics is not a computable object; only "
    "the finite-case bookkeeping is checked."
)

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
UNDETERMINED = "undetermined"


def conclude_multiplicity(n: int) -> int:
    """Return ``2[(n + 1)/2]``: ``n`` for even ``n``, ``n + 1`` for odd ``n``."""
    if n < 2:
        raise ValueError(f"sphere dimension must be at least 2, got {n}")
    return 2 * ((n + 1) // 2)


def _shared_dimension(models: Sequence[GeodesicModel]) -> int:
    if not models:
        raise PreconditionError("no geodesic models given")
    dims = sorted({g.n for g in models})
    if len(dims) > 1:
        raise PreconditionError(f"models live on spheres of different dimensions {dims}")
    return dims[0]


class Contradiction(Record):
    """An alternating Morse inequality ``lhs >= rhs`` that fails."""

    degree: int
    lhs: int
    rhs: int

    def __str__(self) -> str:
        return f"{self.lhs} >= {self.rhs} fails at degree {self.degree}"


class InitialIndexReport(Record):
    """Structure of the initial indices ``i(c_j)``."""

    n: int
    indices: List[int]
    distinguished: Optional[int] = Field(default=None, description="Position with i = n-1")
    below: List[int] = Field(default_factory=list, description="Positions with i < n-1")
    duplicates: List[int] = Field(default_factory=list, description="Positions with i = n-1")
    contradiction: Optional[Contradiction] = None
    messages: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.below and len(self.duplicates) == 1


def check_initial_indices(models: Sequence[GeodesicModel]) -> InitialIndexReport:
    """Check ``i(c_j) >= n - 1`` for all ``j`` with equality for exactly one geodesic.

    When some ``i(c_j) < n - 1`` the Morse inequalities are evaluated up to degree
    ``min i(c_j) + 1``, where the alternating sum yields ``-1 >= 0``.
    """
    n = _shared_dimension(models)
    indices = [g.initial_index for g in models]
    below = [j for j, i in enumerate(indices) if i < n - 1]
    duplicates = [j for j, i in enumerate(indices) if i == n - 1]
    messages = []
    contradiction = None
    if below:
        lowest = min(indices[j] for j in below)
        degree = lowest + 1
        messages.append(f"models {below} have i(c) < n-1 = {n - 1}")
        try:
            report = check_morse_inequalities(
                morse_counts(models, degree), betti_table(n, degree), degree
            )
        except ModelError as e:
            messages.append(f"Morse counts unavailable: {e}")
        else:
            if report.first_violation is not None:
                row = report.row(report.first_violation)
                contradiction = Contradiction(
                    degree=row.degree, lhs=row.morse_alternating, rhs=row.betti_alternating
                )
                messages.append(f"Morse inequality {contradiction}")
    if not duplicates:
        messages.append(f"no geodesic with i(c) = n-1 = {n - 1}, but M_{n - 1} = b_{n - 1} = 1")
    elif len(duplicates) > 1:
        messages.append(
            f"{len(duplicates)} geodesics with i(c) = n-1 = {n - 1}, "
            f"but M_{n - 1} = b_{n - 1} = 1"
        )
    return InitialIndexReport(
        n=n,
        indices=indices,
        distinguished=duplicates[0] if len(duplicates) == 1 else None,
        below=below,
        duplicates=duplicates,
        contradiction=contradiction,
        messages=messages,
    )


class WindowCount(Record):
    """Iterates of each geodesic with index in ``[lower, upper]``."""

    N: int
    lower: int
    upper: int
    iterates: List[List[int]] = Field(..., description="Per geodesic, iterates in the window")
    intrusions: List[str] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def per_geodesic(self) -> List[int]:
        return [len(found) for found in self.iterates]

    @computed_field  # type: ignore[misc]
    @property
    def total(self) -> int:
        return sum(self.per_geodesic)


def window_count(models: Sequence[GeodesicModel], certificate: JumpCertificate) -> WindowCount:
    """Sum ``M_p(j)`` over ``2N - (n - 1) <= p <= 2N + n - 1`` for each geodesic.

    Only the iterates ``2m_j - 1, 2m_j, 2m_j + 1`` may land in the window; the distinguished
    geodesic then contributes 3 and every other one 1.

    Raises:
        WindowIntrusionError: If another iterate lands in the window
    """
    N = certificate.N
    if not models:
        return WindowCount(N=N, lower=2 * N, upper=2 * N, iterates=[])
    n = _shared_dimension(models)
    lower, upper = 2 * N - (n - 1), 2 * N + n - 1
    iterates, intrusions = [], []
    for j, (g, m_j) in enumerate(zip(models, certificate.iterates)):
        allowed = {2 * m_j - 1, 2 * m_j, 2 * m_j + 1}
        found = [
            m
            for m in range(1, iterate_bound(g, upper) + 1)
            if lower <= index_iterate_elliptic(g, m) <= upper
        ]
        intrusions.extend(
            f"model {j}: iterate {m} has index {index_iterate_elliptic(g, m)}"
            for m in found
            if m not in allowed
        )
        iterates.append(found)
    counts = WindowCount(N=N, lower=lower, upper=upper, iterates=iterates, intrusions=intrusions)
    if intrusions:
        raise WindowIntrusionError(counts)
    return counts


class ModelSummary(Record):
    label: str
    initial_index: int
    angles: List[str]
    mean_index: float


class VerificationReport(Record):
    """Outcome of :func:`verify_model_set`."""

    n: int
    q: int
    models: List[ModelSummary]
    parity_ok: bool
    parity: Optional[ParityReport] = None
    initial: InitialIndexReport
    certificate: Optional[JumpCertificate] = None
    gaps: Optional[GapReport] = None
    window: Optional[WindowCount] = None
    betti: Optional[BettiWindow] = None
    escalations: int = 0
    verdict: str = Field(..., description="consistent, inconsistent or undetermined")
    forced_multiplicity: int
    reasons: List[str] = Field(default_factory=list)
    scope: str = SCOPE
    infinite_case: str = INFINITE_CASE

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


def _summaries(models: Sequence[GeodesicModel]) -> List[ModelSummary]:
    return [
        ModelSummary(
            label=g.name,
            initial_index=g.initial_index,
            angles=[str(turn) for turn in g.angles],
            mean_index=float(mean_index(g)),
        )
        for g in models
    ]


def verify_model_set(
    models: Sequence[GeodesicModel], options: Optional[Options] = None
) -> VerificationReport:
    """Run the full consistency pipeline on a model set.

    ``options.precision`` is installed as the process-wide precision policy while the
    pipeline runs and the previous policy is restored afterwards.

    Args:
        models: Geodesic models sharing ``n``
        options: Divisor policy, search bounds, escalation budget, degree bound and precision

    Returns:
        The report; ``verdict`` is consistent iff every check passed and the window Morse
        count equals the window Betti sum, which forces ``q = 2[(n + 1)/2]``.

    Raises:
        PreconditionError: If the models are empty or on different spheres
        JumpSearchError: If no certificate exists below ``options.n_max``
    """
    options = options or Options()
    with using_precision(options.precision):
        return _verify_model_set(models, options)


def _verify_model_set(models: Sequence[GeodesicModel], options: Options) -> VerificationReport:
    n = _shared_dimension(models)
    base: Dict[str, Any] = {
        "n": n,
        "q": len(models),
        "models": _summaries(models),
        "forced_multiplicity": conclude_multiplicity(n),
    }
    parity_ok = all((g.initial_index - (n - 1)) % 2 == 0 for g in models)
    parity = None
    reasons: List[str] = []
    try:
        degree = options.max_degree
        parity = check_parity_vanishing(
            morse_counts(models, degree, options.workers), betti_table(n, degree), n
        )
        parity_ok = parity_ok and parity.vanishing_holds
    except ModelError as e:
        reasons.append(f"Morse counts unavailable: {e}")

    initial = check_initial_indices(models)
    if not parity_ok or not initial.passed:
        if not parity_ok:
            reasons.append("parity of the indices fails")
        reasons.extend(initial.messages)
        return VerificationReport(
            **base, parity_ok=parity_ok, parity=parity, initial=initial,
            verdict=INCONSISTENT, reasons=reasons,
        )
    star = initial.distinguished
    assert star is not None
    if not witness_angles(models[star]):
        reasons.append("the geodesic with i = n-1 has no rotation angle with θ/π in (1, 2)")
        return VerificationReport(
            **base, parity_ok=parity_ok, parity=parity, initial=initial,
            verdict=INCONSISTENT, reasons=reasons,
        )

    m0 = options.resolve_m0(n)
    n_min = options.n_min
    escalations = 0
    while True:
        certificate = find_common_jump(
            models, m0, options.n_max, n_min=n_min, window=options.window,
            workers=options.workers,
        )
        try:
            counts = window_count(models, certificate)
            break
        except WindowIntrusionError as e:
            if escalations >= options.escalations:
                reasons.append(f"window still intruded after {escalations} escalations: {e}")
                return VerificationReport(
                    **base, parity_ok=parity_ok, parity=parity, initial=initial,
                    certificate=certificate, window=e.counts, escalations=escalations,
                    verdict=UNDETERMINED, reasons=reasons,
                )
            escalations += 1
            n_min = certificate.N + 1
            logger.warning("window intruded at N=%d, retrying from N=%d", certificate.N, n_min)

    report = verify_certificate(models, certificate)
    gaps = check_iterate_gaps(models[star], certificate, options.m_range)
    betti = betti_window(n, certificate.N)
    if not report.passed:
        reasons.append(f"certificate fails {report.failed()}")
    if not gaps.passed:
        reasons.append(
            f"index gaps fail: upper {gaps.upper_failures}, lower {gaps.lower_failures}"
        )
    if counts.total != betti.total:
        reasons.append(
            f"window Morse count {counts.total} != window Betti sum {betti.total}"
        )
    verdict = CONSISTENT if report.passed and gaps.passed and counts.total == betti.total else (
        INCONSISTENT
    )
    if verdict == CONSISTENT:
        reasons.append(f"window identity {counts.total} = {betti.total}; q = {len(models)}")
    logger.info("model set on S^%d with q=%d is %s", n, len(models), verdict)
    return VerificationReport(
        **base,
        parity_ok=parity_ok,
        parity=parity,
        initial=initial,
        certificate=certificate,
        gaps=gaps,
        window=counts,
        betti=betti,
        escalations=escalations,
        verdict=verdict,
        reasons=reasons,
    )


class S3Report(Record):
    """Two irrationally elliptic geodesics on ``S^3`` force a third one."""

    preconditions: List[str] = Field(default_factory=list, description="Violated hypotheses")
    verification: Optional[VerificationReport] = None
    forced_multiplicity: int = 4

    @property
    def third_geodesic_required(self) -> bool:
        return (
            not self.preconditions
            and self.verification is not None
            and self.verification.q == 2
            and not self.verification.consistent
        )


def check_s3_multiplicity(
    models: Sequence[GeodesicModel], options: Optional[Options] = None
) -> S3Report:
    """Run :func:`verify_model_set` on a model set for ``S^3`` with non-zero indices."""
    problems = []
    if any(g.n != 3 for g in models):
        problems.append("all geodesics must live on S^3")
    problems.extend(
        f"model {j} has Morse index zero" for j, g in enumerate(models) if g.initial_index == 0
    )
    if len(models) != 2:
        logger.info("S^3 check run with q=%d geodesics", len(models))
    if problems:
        return S3Report(preconditions=problems, forced_multiplicity=conclude_multiplicity(3))
    return S3Report(
        verification=verify_model_set(models, options),
        forced_multiplicity=conclude_multiplicity(3),
    )
