"""Common index jump certificates.

A certificate ``(N, m_1, ..., m_q)`` places every geodesic's index interval symmetrically
around ``2N``: for each geodesic ``c_j``

* ``i(c_j^{2m_j - 1}) = 2N - i(c_j)`` (``lower_jump``),
* ``i(c_j^{2m_j + 1}) = 2N + i(c_j)`` (``upper_jump``),
* ``2N - (n - 1) <= i(c_j^{2m_j}) <= 2N + (n - 1)`` (``middle_window``),

and for the distinguished geodesic (``i = n - 1``) some witness angle ``a = θ/2π`` in
``(1/2, 1)`` satisfies ``{2a m_1} > max(1 - {2a}, 1 - a)`` (``fraction_upper``) and
``{2a m_1} > max({2a}, a)`` (``fraction_lower``). Finally ``M_0 | N`` (``divisibility``).

The search scans ``N`` upwards and, per geodesic, only the iterates ``m`` with
``(N - (n - 1)) / î <= m <= (N + (n - 1)) / î`` widened by ``window``: outside that range
``i(c^{2m})`` cannot reach the window around ``2N``.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import Field

from .base import Record
from .errors import JumpSearchError, ModelError, PreconditionError
from .iteration import GeodesicModel, index_iterate_elliptic, mean_index_enclosure
from .numerics import ExactReal, Rational, frac_of

logger = logging.getLogger(__name__)

CONDITIONS = (
    "lower_jump",
    "upper_jump",
    "middle_window",
    "fraction_upper",
    "fraction_lower",
    "divisibility",
)

ProgressCallback = Callable[[int, int], None]

_HALF = Rational(Fraction(1, 2))


class JumpCertificate(Record):
    """A common index jump ``(N, m_1, ..., m_q)`` with ``M_0 | N``."""

    N: int = Field(..., ge=1)
    iterates: List[int] = Field(..., description="m_j per geodesic, in model order")
    m0: int = Field(..., ge=1, description="Divisor M_0 required of N")
    distinguished: int = Field(..., ge=0, description="Position of the model with i = n-1")
    witness: Optional[int] = Field(default=None, description="Witness angle position")
    conditions: Dict[str, bool] = Field(default_factory=dict)

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """Ordering used to pick the minimal certificate."""
        return self.N, tuple(self.iterates)


class ConditionResult(Record):
    """One evaluated condition for one geodesic (``geodesic`` is None for divisibility)."""

    name: str
    geodesic: Optional[int] = None
    passed: bool
    detail: str = ""


class CertificateReport(Record):
    """Independent re-evaluation of every condition of a certificate."""

    certificate: JumpCertificate
    results: List[ConditionResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> List[str]:
        """Names of the conditions with at least one failure, in canonical order."""
        names = {r.name for r in self.results if not r.passed}
        return [name for name in CONDITIONS if name in names]

    def flags(self) -> Dict[str, bool]:
        return {name: name not in self.failed() for name in CONDITIONS}


# Preconditions


def witness_angles(g: GeodesicModel) -> List[int]:
    """Positions of the angles with ``θ/π`` in ``(1, 2)``."""
    return [k for k, turn in enumerate(g.angles) if turn > _HALF]


def distinguished_index(models: Sequence[GeodesicModel]) -> int:
    """Check the search preconditions and return the position of the model with ``i = n - 1``.

    Raises:
        PreconditionError: Naming the first failing model
    """
    if not models:
        raise PreconditionError("no geodesic models given")
    n = models[0].n
    found: Optional[int] = None
    for j, g in enumerate(models):
        if g.n != n:
            raise PreconditionError(f"lives on S^{g.n}, expected S^{n}", j)
        if g.initial_index == n - 1:
            if found is not None:
                raise PreconditionError(
                    f"second geodesic with i = n-1 = {n - 1} (first is model {found})", j
                )
            found = j
        elif g.initial_index < n + 1:
            raise PreconditionError(f"initial index {g.initial_index} is below n+1 = {n + 1}", j)
        try:
            mean_index_enclosure(g)
        except ModelError as e:
            raise PreconditionError(str(e), j) from e
    if found is None:
        raise PreconditionError(f"no geodesic has initial index n-1 = {n - 1}")
    if not witness_angles(models[found]):
        raise PreconditionError("no rotation angle with θ/π in (1, 2)", found)
    return found


# Condition evaluation


def _fraction_checks(turn: ExactReal, m1: int) -> Tuple[bool, bool]:
    frac = frac_of(turn * (2 * m1))
    doubled = frac_of(turn * 2)
    upper = frac > 1 - doubled and frac > 1 - turn
    lower = frac > doubled and frac > turn
    return upper, lower


def _jump_checks(
    index: Callable[[int], int], initial: int, n: int, m: int, N: int
) -> Dict[str, bool]:
    middle = index(2 * m)
    return {
        "lower_jump": index(2 * m - 1) == 2 * N - initial,
        "upper_jump": index(2 * m + 1) == 2 * N + initial,
        "middle_window": 2 * N - (n - 1) <= middle <= 2 * N + (n - 1),
    }


class _Search:
    """Shared state of one certificate search; the index cache is safe to share."""

    def __init__(self, models: Sequence[GeodesicModel], m0: int, window: int) -> None:
        self.models = list(models)
        self.m0 = m0
        self.window = window
        self.n = models[0].n
        self.star = distinguished_index(models)
        self.witnesses = witness_angles(models[self.star])
        self.means = [mean_index_enclosure(g) for g in models]
        self._cache: List[Dict[int, int]] = [{} for _ in models]

    def index(self, j: int, m: int) -> int:
        cache = self._cache[j]
        if m not in cache:
            cache[m] = index_iterate_elliptic(self.models[j], m)
        return cache[m]

    def candidates(self, j: int, N: int) -> range:
        lo, hi = self.means[j]
        slack = self.n - 1
        first = max(1, math.floor(Fraction(N - slack) / hi) - self.window)
        last = math.ceil(Fraction(N + slack) / lo) + self.window
        return range(first, last + 1)

    def witness_for(self, m1: int) -> Optional[int]:
        g = self.models[self.star]
        for k in self.witnesses:
            if all(_fraction_checks(g.angles[k], m1)):
                return k
        return None

    def fits(self, j: int, m: int, N: int) -> bool:
        g = self.models[j]
        checks = _jump_checks(lambda k: self.index(j, k), g.initial_index, self.n, m, N)
        if not all(checks.values()):
            return False
        return j != self.star or self.witness_for(m) is not None

    def certificate_at(self, N: int) -> Optional[JumpCertificate]:
        if N % self.m0:
            return None
        iterates = []
        for j in range(len(self.models)):
            m = next((m for m in self.candidates(j, N) if self.fits(j, m, N)), None)
            if m is None:
                return None
            iterates.append(m)
        return JumpCertificate(
            N=N,
            iterates=iterates,
            m0=self.m0,
            distinguished=self.star,
            witness=self.witness_for(iterates[self.star]),
        )

    def scan(self, values: Sequence[int]) -> Optional[JumpCertificate]:
        for N in values:
            certificate = self.certificate_at(N)
            if certificate is not None:
                return certificate
            logger.debug("no certificate at N=%d", N)
        return None


def _chunks(values: List[int], size: int) -> List[List[int]]:
    return [values[k:k + size] for k in range(0, len(values), size)]


def find_common_jump(
    models: Sequence[GeodesicModel],
    m0: int,
    n_max: int,
    *,
    n_min: int = 1,
    window: int = 2,
    workers: int = 1,
    chunk_size: int = 32,
    on_progress: Optional[ProgressCallback] = None,
) -> JumpCertificate:
    """Find the certificate with the smallest ``N`` in ``[n_min, n_max]``.

    Ties in ``N`` are broken by the lexicographically smallest iterate tuple. With
    ``workers > 1`` the candidate ``N`` are split into chunks scanned by a thread pool, one
    batch of ``workers`` chunks at a time; the answer does not depend on scheduling.

    Args:
        models: Geodesic models; exactly one has ``i = n - 1``
        m0: Required divisor of ``N``
        n_max: Largest ``N`` tried
        n_min: Smallest ``N`` tried
        window: Extra iterates tried on each side of the mean-index estimate
        workers: Threads
        chunk_size: Candidate ``N`` per work item
        on_progress: Called with ``(done, total)`` candidate counts

    Raises:
        PreconditionError: If the models do not meet the search preconditions
        JumpSearchError: If no certificate exists in the range
    """
    if m0 < 1:
        raise ValueError(f"M0 must be positive, got {m0}")
    search = _Search(models, m0, window)
    start = max(n_min, 1)
    values = list(range(start + (-start) % m0, n_max + 1, m0))
    chunks = _chunks(values, chunk_size)
    done = 0
    found: Optional[JumpCertificate] = None

    if workers <= 1:
        for chunk in chunks:
            found = search.scan(chunk)
            done += len(chunk)
            if on_progress:
                on_progress(done, len(values))
            if found is not None:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            for start_chunk in range(0, len(chunks), workers):
                batch = chunks[start_chunk:start_chunk + workers]
                futures = {executor.submit(search.scan, chunk): chunk for chunk in batch}
                hits = []
                for future in as_completed(futures):
                    result = future.result()
                    done += len(futures[future])
                    if on_progress:
                        on_progress(done, len(values))
                    if result is not None:
                        hits.append(result)
                if hits:
                    found = min(hits, key=lambda c: c.key)
                    break

    if found is None:
        raise JumpSearchError(n_min, n_max, m0)
    report = verify_certificate(models, found)
    if not report.passed:
        raise AssertionError(f"search produced a certificate failing {report.failed()}")
    found = found.model_copy(update={"conditions": report.flags()})
    logger.info("certificate N=%d, iterates=%s", found.N, found.iterates)
    return found


def sample_certificates(
    models: Sequence[GeodesicModel],
    count: int,
    m0: int,
    n_max: int,
    *,
    n_min: int = 1,
    window: int = 2,
    workers: int = 1,
) -> List[JumpCertificate]:
    """Return up to ``count`` certificates with strictly increasing ``N``.

    Fewer are returned when the range ``[n_min, n_max]`` runs out.
    """
    found: List[JumpCertificate] = []
    lower = n_min
    while len(found) < count:
        try:
            certificate = find_common_jump(
                models, m0, n_max, n_min=lower, window=window, workers=workers
            )
        except JumpSearchError:
            logger.warning("found %d of %d certificates below N=%d", len(found), count, n_max)
            break
        found.append(certificate)
        lower = certificate.N + 1
    return found


def verify_certificate(
    models: Sequence[GeodesicModel], certificate: JumpCertificate
) -> CertificateReport:
    """Re-evaluate every condition by direct index evaluation, without the search's cache."""
    if len(certificate.iterates) != len(models):
        raise ValueError(
            f"certificate has {len(certificate.iterates)} iterates for {len(models)} models"
        )
    if not 0 <= certificate.distinguished < len(models):
        raise ValueError(f"distinguished position {certificate.distinguished} out of range")
    N = certificate.N
    results: List[ConditionResult] = []
    for j, (g, m) in enumerate(zip(models, certificate.iterates)):
        if m < 1:
            raise ValueError(f"iterate m_{j} must be positive, got {m}")
        checks = _jump_checks(
            lambda k, g=g: index_iterate_elliptic(g, k), g.initial_index, g.n, m, N
        )
        for name, passed in checks.items():
            results.append(ConditionResult(name=name, geodesic=j, passed=passed))
    star = models[certificate.distinguished]
    m1 = certificate.iterates[certificate.distinguished]
    outcomes = {k: _fraction_checks(star.angles[k], m1) for k in witness_angles(star)}
    # both fraction conditions must hold for one and the same witness angle
    chosen = certificate.witness if certificate.witness in outcomes else next(
        (k for k, pair in outcomes.items() if all(pair)), next(iter(outcomes), None)
    )
    pair = outcomes[chosen] if chosen is not None else (False, False)
    detail = f"angle {chosen}" if chosen is not None else "no angle with θ/π in (1, 2)"
    for name, passed in zip(("fraction_upper", "fraction_lower"), pair):
        results.append(
            ConditionResult(
                name=name, geodesic=certificate.distinguished, passed=passed, detail=detail
            )
        )
    results.append(
        ConditionResult(
            name="divisibility",
            passed=N % certificate.m0 == 0,
            detail=f"{certificate.m0} | {N}",
        )
    )
    return CertificateReport(certificate=certificate, results=results)


class GapReport(Record):
    """Index gaps of the distinguished geodesic around its jump iterate ``2 m_1``."""

    N: int
    m1: int
    m_range: int
    upper_failures: List[int] = Field(default_factory=list, description="m with i too small")
    lower_failures: List[int] = Field(default_factory=list, description="m with i too large")
    upper_gap: int = Field(..., description="i(c^{2m_1+2}) - i(c^{2m_1+1})")
    lower_gap: Optional[int] = Field(
        default=None, description="i(c^{2m_1-1}) - i(c^{2m_1-2}); None when 2m_1 - 2 < 1"
    )

    @property
    def passed(self) -> bool:
        lower_ok = self.lower_gap is None or self.lower_gap >= 2
        return (
            not self.upper_failures
            and not self.lower_failures
            and self.upper_gap >= 2
            and lower_ok
        )


def check_iterate_gaps(g: GeodesicModel, certificate: JumpCertificate, m_range: int) -> GapReport:
    """Check ``i(c^{2m_1+m}) >= 2N + n + 1`` and ``i(c^{2m_1-m}) <= 2N - n - 1``.

    Both are checked for ``2 <= m <= m_range`` (lower iterates below 1 are skipped), together
    with the two gaps next to the jump.
    """
    N = certificate.N
    m1 = certificate.iterates[certificate.distinguished]
    n = g.n
    upper_failures, lower_failures = [], []
    for m in range(2, m_range + 1):
        if index_iterate_elliptic(g, 2 * m1 + m) < 2 * N + n + 1:
            upper_failures.append(m)
        if 2 * m1 - m >= 1 and index_iterate_elliptic(g, 2 * m1 - m) > 2 * N - n - 1:
            lower_failures.append(m)
    upper_gap = index_iterate_elliptic(g, 2 * m1 + 2) - index_iterate_elliptic(g, 2 * m1 + 1)
    lower_gap = None
    if 2 * m1 - 2 >= 1:
        lower_gap = index_iterate_elliptic(g, 2 * m1 - 1) - index_iterate_elliptic(g, 2 * m1 - 2)
    return GapReport(
        N=N,
        m1=m1,
        m_range=m_range,
        upper_failures=upper_failures,
        lower_failures=lower_failures,
        upper_gap=upper_gap,
        lower_gap=lower_gap,
    )
