"""Symplectic matrices, basic normal-form blocks, ⋄-sums and normal-form extraction.

Coordinates are ``(q_1..q_k, p_1..p_k)`` with the standard form ``J = [[0, -I], [I, 0]]``.
A ⋄-sum interleaves the four ``k x k`` blocks of its operands so that each operand keeps
acting on its own symplectic coordinate pairs.

Normal-form extraction (:func:`decompose`) works from the spectrum:

* eigenvalues off the unit circle give hyperbolic ``H(b)`` blocks;
* eigenvalues ``±1`` give ``N1(±1, a)`` blocks, the sign of ``a`` being the sign of the
  quadratic form ``w -> w^T J (M - λ) w`` on the generalized eigenspace;
* other unit eigenvalues ``ω = e^{iθ}``, ``θ ∈ (0, π)``, give rotations whose branch is the
  sign of the Krein form ``ξ -> -i ξ^H J ξ`` on ``ker(M - ω)`` (positive: ``R(θ)``, negative:
  ``R(2π - θ)``), and ``N2`` blocks for their Jordan chains, trivial when the transported form
  ``w -> -w^H J ω̄(M - ω) w`` is positive.
"""

import logging
import math
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import Field, computed_field, field_validator, model_validator

from .base import Real, Record
from .errors import BracketError, ClassificationError
from .numerics import ExactReal, Rational, decimal

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9

# Fixed decimal places used for angles recovered from floating point eigenvalues.
_RECOVERED_PLACES = 12


def standard_j(k: int) -> np.ndarray:
    """Return the standard symplectic form of dimension ``2k``."""
    zero, eye = np.zeros((k, k)), np.eye(k)
    return np.block([[zero, -eye], [eye, zero]])


def _diamond(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    i, j = a.shape[0] // 2, b.shape[0] // 2
    out = np.zeros((2 * (i + j), 2 * (i + j)), dtype=np.result_type(a, b))
    rows_a = list(range(i)) + list(range(i + j, 2 * i + j))
    rows_b = list(range(i, i + j)) + list(range(2 * i + j, 2 * (i + j)))
    out[np.ix_(rows_a, rows_a)] = a
    out[np.ix_(rows_b, rows_b)] = b
    return out


def diamond_array(*matrices: np.ndarray) -> np.ndarray:
    """⋄-sum of any number of even-dimensional square arrays, left to right."""
    if not matrices:
        raise ValueError("diamond sum of nothing")
    result = np.asarray(matrices[0], dtype=float)
    for matrix in matrices[1:]:
        result = _diamond(result, np.asarray(matrix, dtype=float))
    return result


class SymplecticMatrix(Record):
    """A real ``2k x 2k`` matrix with ``||M^T J M - J||_inf <= tolerance``."""

    entries: Tuple[Tuple[float, ...], ...] = Field(..., description="Row-major entries")
    tolerance: float = Field(default=DEFAULT_TOL, gt=0, description="Symplectic defect bound")

    @model_validator(mode="after")
    def _check_symplectic(self) -> "SymplecticMatrix":
        size = len(self.entries)
        if size == 0 or size % 2:
            raise ValueError(f"dimension must be even and positive, got {size}")
        if any(len(row) != size for row in self.entries):
            raise ValueError("matrix must be square")
        defect = self.defect()
        if defect > self.tolerance:
            raise ValueError(f"The input matrix is not symplectic (defect {defect:.3e})")
        return self

    @classmethod
    def from_array(cls, array: Any, tolerance: float = DEFAULT_TOL) -> "SymplecticMatrix":
        """Build from anything ``numpy.asarray`` accepts."""
        values = np.asarray(array, dtype=float)
        return cls(entries=tuple(tuple(float(x) for x in row) for row in values),
                   tolerance=tolerance)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def half_dimension(self) -> int:
        return len(self.entries) // 2

    def defect(self) -> float:
        m = self.array
        j = standard_j(self.half_dimension)
        return float(np.max(np.abs(m.T @ j @ m - j)))


def diamond_sum(a: SymplecticMatrix, b: SymplecticMatrix) -> SymplecticMatrix:
    """Return ``a ⋄ b``."""
    return SymplecticMatrix.from_array(
        _diamond(a.array, b.array), tolerance=max(a.tolerance, b.tolerance)
    )


# Basic normal-form blocks


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _validate_turn(turn: ExactReal) -> ExactReal:
    try:
        if not (Rational(Fraction(0)) < turn < Rational(Fraction(1))):
            raise ValueError(f"θ/2π must lie in (0, 1), got {turn}")
        if not (turn < Rational(Fraction(1, 2)) or turn > Rational(Fraction(1, 2))):
            raise ValueError("θ = π is not a rotation block angle")
    except BracketError as e:
        raise ValueError(str(e)) from e
    return turn


class N1Block(Record):
    """``N1(λ, a) = [[λ, a], [0, λ]]`` with ``λ = ±1``; ``a = 0`` is ``±I_2``."""

    kind: Literal["N1"] = "N1"
    lam: Literal[1, -1] = Field(..., description="Eigenvalue ±1")
    a: float = Field(..., description="Off-diagonal entry; only its sign matters")

    @property
    def half_dim(self) -> int:
        return 1

    def matrix(self) -> np.ndarray:
        return np.array([[self.lam, self.a], [0.0, self.lam]], dtype=float)


class HBlock(Record):
    """``H(b) = diag(b, 1/b)``."""

    kind: Literal["H"] = "H"
    b: float = Field(..., description="Hyperbolic eigenvalue, not 0 or ±1")

    @field_validator("b")
    @classmethod
    def _check_b(cls, b: float) -> float:
        if b == 0 or abs(b) == 1:
            raise ValueError("H(b) needs b outside {0, 1, -1}")
        return b

    @property
    def half_dim(self) -> int:
        return 1

    def matrix(self) -> np.ndarray:
        return np.diag([self.b, 1.0 / self.b])


class RBlock(Record):
    """Rotation ``R(θ)`` with ``θ/2π`` stored exactly as ``turn``."""

    kind: Literal["R"] = "R"
    turn: Real = Field(..., description="θ/2π in (0, 1/2) ∪ (1/2, 1)")

    @field_validator("turn")
    @classmethod
    def _check_turn(cls, turn: ExactReal) -> ExactReal:
        return _validate_turn(turn)

    @property
    def half_dim(self) -> int:
        return 1

    @property
    def theta(self) -> float:
        return 2 * math.pi * float(self.turn)

    @property
    def rational(self) -> Optional[bool]:
        return self.turn.is_rational

    def matrix(self) -> np.ndarray:
        return _rotation(self.theta)


class N2Block(Record):
    """``N2(e^{iθ}, B) = [[R(θ), B], [0, R(θ)]]`` with ``B = [[b1, b2], [b3, b4]]``.

    Trivial when ``(b2 - b3) sin θ > 0``, nontrivial when negative.
    """

    kind: Literal["N2"] = "N2"
    turn: Real = Field(..., description="θ/2π in (0, 1/2) ∪ (1/2, 1)")
    b: Tuple[float, float, float, float] = Field(..., description="(b1, b2, b3, b4)")

    @field_validator("turn")
    @classmethod
    def _check_turn(cls, turn: ExactReal) -> ExactReal:
        return _validate_turn(turn)

    @model_validator(mode="after")
    def _check_b(self) -> "N2Block":
        b1, b2, b3, b4 = self.b
        if b2 == b3:
            raise ValueError("N2 block needs b2 != b3")
        # [[R, B], [0, R]] is symplectic iff R^T B is symmetric
        c, s = math.cos(self.theta), math.sin(self.theta)
        skew = (c * b2 + s * b4) - (-s * b1 + c * b3)
        if abs(skew) > 1e-9 * max(1.0, *map(abs, self.b)):
            raise ValueError("N2 block is not symplectic: R(θ)^T B must be symmetric")
        return self

    @classmethod
    def build(cls, turn: ExactReal, b2: float, b3: float) -> "N2Block":
        """Complete ``B`` with ``b1 = b4`` chosen so that the block is symplectic."""
        theta = 2 * math.pi * float(turn)
        b1 = -(b2 - b3) / math.tan(theta) / 2
        return cls(turn=turn, b=(b1, b2, b3, b1))

    @computed_field  # type: ignore[misc]
    @property
    def trivial(self) -> bool:
        return (self.b[1] - self.b[2]) * math.sin(self.theta) > 0

    @property
    def half_dim(self) -> int:
        return 2

    @property
    def theta(self) -> float:
        return 2 * math.pi * float(self.turn)

    @property
    def rational(self) -> Optional[bool]:
        return self.turn.is_rational

    def matrix(self) -> np.ndarray:
        r = _rotation(self.theta)
        b1, b2, b3, b4 = self.b
        return np.block([[r, np.array([[b1, b2], [b3, b4]])], [np.zeros((2, 2)), r]])


NormalFormBlock = Annotated[
    Union[N1Block, HBlock, RBlock, N2Block], Field(discriminator="kind")
]


def _block_rank(block: Any) -> int:
    if isinstance(block, N1Block):
        offset = 0 if block.lam == 1 else 3
        return offset + (0 if block.a > 0 else 1 if block.a == 0 else 2)
    if isinstance(block, N2Block):
        return 7 if block.trivial else 6
    if isinstance(block, RBlock):
        return 8
    return 9


def _rotation_rank(block: RBlock) -> int:
    rational = block.rational
    return 0 if rational is False else 1 if rational is None else 2


class NormalFormData(Record):
    """Endpoint data of the normal-form decomposition.

    Blocks are kept in the canonical order ``N1(1,+)``, ``I_2``, ``N1(1,-)``, ``N1(-1,+)``,
    ``-I_2``, ``N1(-1,-)``, nontrivial ``N2``, trivial ``N2``, rotations (irrational θ/2π
    first, rational last), ``H``.
    """

    dimension: int = Field(..., ge=1, description="Half-dimension k of Sp(2k)")
    blocks: List[NormalFormBlock] = Field(..., description="Blocks in canonical order")

    @field_validator("blocks")
    @classmethod
    def _order_blocks(cls, blocks: List[Any]) -> List[Any]:
        return sorted(
            blocks,
            key=lambda b: (_block_rank(b), _rotation_rank(b) if isinstance(b, RBlock) else 0),
        )

    @model_validator(mode="after")
    def _check_dimension(self) -> "NormalFormData":
        total = sum(block.half_dim for block in self.blocks)
        if total != self.dimension:
            raise ValueError(
                f"blocks span half-dimension {total}, expected {self.dimension}"
            )
        return self

    @classmethod
    def of(cls, *blocks: Any) -> "NormalFormData":
        """Build from blocks, inferring the dimension."""
        return cls(dimension=sum(b.half_dim for b in blocks), blocks=list(blocks))

    def _n1(self, lam: int, sign: int) -> int:
        return sum(
            1
            for b in self.blocks
            if isinstance(b, N1Block) and b.lam == lam and (b.a > 0) - (b.a < 0) == sign
        )

    def _n2(self, trivial: bool) -> int:
        return sum(1 for b in self.blocks if isinstance(b, N2Block) and b.trivial == trivial)

    @property
    def p_minus(self) -> int:
        return self._n1(1, 1)

    @property
    def p_zero(self) -> int:
        return self._n1(1, 0)

    @property
    def p_plus(self) -> int:
        return self._n1(1, -1)

    @property
    def q_minus(self) -> int:
        return self._n1(-1, 1)

    @property
    def q_zero(self) -> int:
        return self._n1(-1, 0)

    @property
    def q_plus(self) -> int:
        return self._n1(-1, -1)

    @property
    def r(self) -> int:
        return sum(1 for b in self.blocks if isinstance(b, RBlock))

    @property
    def r_star(self) -> int:
        return self._n2(trivial=False)

    @property
    def r_zero(self) -> int:
        return self._n2(trivial=True)

    @property
    def h(self) -> int:
        return sum(1 for b in self.blocks if isinstance(b, HBlock))

    @computed_field  # type: ignore[misc]
    @property
    def splitting(self) -> Dict[str, int]:
        return {
            "p_minus": self.p_minus,
            "p_zero": self.p_zero,
            "p_plus": self.p_plus,
            "q_minus": self.q_minus,
            "q_zero": self.q_zero,
            "q_plus": self.q_plus,
            "r": self.r,
            "r_star": self.r_star,
            "r_zero": self.r_zero,
            "h": self.h,
        }

    @property
    def rotation_turns(self) -> List[ExactReal]:
        """θ_j/2π of the rotations, irrational first."""
        return [b.turn for b in self.blocks if isinstance(b, RBlock)]

    @property
    def nontrivial_turns(self) -> List[ExactReal]:
        """α_j/2π of the nontrivial N2 blocks."""
        return [b.turn for b in self.blocks if isinstance(b, N2Block) and not b.trivial]

    @property
    def trivial_turns(self) -> List[ExactReal]:
        """β_j/2π of the trivial N2 blocks."""
        return [b.turn for b in self.blocks if isinstance(b, N2Block) and b.trivial]


def assemble(nf: NormalFormData, tolerance: float = DEFAULT_TOL) -> SymplecticMatrix:
    """⋄-sum the blocks of ``nf`` in canonical order."""
    return SymplecticMatrix.from_array(
        diamond_array(*(block.matrix() for block in nf.blocks)), tolerance=tolerance
    )


# Spectra


class EigenCluster(Record):
    """Eigenvalues grouped within the cluster radius, represented by their mean."""

    real: float
    imag: float
    multiplicity: int
    on_circle: bool
    nullity: Optional[int] = Field(default=None, description="ν_ω for unit eigenvalues")

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


class Spectrum(Record):
    """Clustered spectrum of a symplectic matrix."""

    dimension: int
    clusters: List[EigenCluster]
    warnings: List[str] = Field(default_factory=list)

    def nullity(self, omega: complex, tol: float = DEFAULT_TOL) -> int:
        """Return ν_ω, zero when ω is not an eigenvalue."""
        radius = math.sqrt(tol)
        for cluster in self.clusters:
            if abs(cluster.value - omega) <= radius and cluster.nullity is not None:
                return cluster.nullity
        return 0

    @property
    def elliptic_height(self) -> int:
        return sum(c.multiplicity for c in self.clusters if c.on_circle)


def _cluster(values: np.ndarray, radius: float) -> List[List[complex]]:
    # single linkage; desk-scale dimensions keep this quadratic loop cheap
    groups: List[List[complex]] = []
    for value in sorted(values, key=lambda z: (z.real, z.imag)):
        joined = [g for g in groups if min(abs(value - w) for w in g) <= radius]
        merged = [value]
        for g in joined:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _nullity(a: np.ndarray, tol: float, warnings: List[str], label: str) -> int:
    singular = np.linalg.svd(a, compute_uv=False)
    threshold = tol * max(1.0, float(singular[0]))
    straddling = [s for s in singular if threshold < s <= 1e3 * threshold]
    if straddling:
        message = f"ill-conditioned kernel at {label}: singular values {straddling}"
        logger.warning(message)
        warnings.append(message)
    return int(np.sum(singular <= threshold))


def spectrum_of(m: SymplecticMatrix, tol: float = DEFAULT_TOL) -> Spectrum:
    """Cluster the eigenvalues of ``m`` and compute ν_ω on the unit circle.

    Eigenvalues within ``sqrt(tol)`` of each other are grouped: a Jordan chain of length two
    splits its eigenvalue by about the square root of the rounding error.
    """
    a = m.array
    radius = math.sqrt(tol)
    warnings: List[str] = []
    clusters = []
    for group in _cluster(np.linalg.eigvals(a), radius):
        mean = complex(np.mean(group))
        on_circle = abs(abs(mean) - 1.0) <= max(tol, radius * radius)
        nullity = None
        if on_circle:
            label = f"ω = {mean:.6g}"
            nullity = _nullity(a - mean * np.eye(len(a)), tol, warnings, label)
        clusters.append(
            EigenCluster(
                real=mean.real,
                imag=mean.imag,
                multiplicity=len(group),
                on_circle=on_circle,
                nullity=nullity,
            )
        )
    spectrum = Spectrum(dimension=len(a), clusters=clusters, warnings=warnings)
    for message in _symmetry_violations(spectrum, radius):
        logger.warning(message)
        warnings.append(message)
    return spectrum


def _symmetry_violations(spectrum: Spectrum, radius: float) -> List[str]:
    problems = []
    for cluster in spectrum.clusters:
        z = cluster.value
        for partner, name in ((1 / z, "1/λ"), (z.conjugate(), "conj(λ)")):
            match = [
                c for c in spectrum.clusters
                if abs(c.value - partner) <= 10 * radius and c.multiplicity == cluster.multiplicity
            ]
            if not match:
                problems.append(f"spectrum not symmetric: {name} missing for λ = {z:.6g}")
    return problems


def elliptic_height(m: SymplecticMatrix, tol: float = DEFAULT_TOL) -> int:
    """Total algebraic multiplicity of the unit-circle eigenvalues."""
    return spectrum_of(m, tol).elliptic_height


# Decomposition


def _kernel(a: np.ndarray, dim: int, label: str) -> np.ndarray:
    """Orthonormal basis (columns) of the ``dim`` smallest right singular directions."""
    _, singular, vh = np.linalg.svd(a)
    if dim < len(singular) and singular[-dim - 1] <= 1e3 * max(singular[-dim], 1e-300):
        raise ClassificationError(
            f"cannot separate a {dim}-dimensional invariant subspace at {label}"
        )
    return vh[-dim:].conj().T


def _signature(form: np.ndarray, scale: float, tol: float) -> Tuple[int, int, int]:
    """Return (positive, negative, zero) eigenvalue counts of a Hermitian form."""
    hermitian = (form + form.conj().T) / 2
    values = np.linalg.eigvalsh(hermitian)
    threshold = math.sqrt(tol) * max(1.0, scale)
    return (
        int(np.sum(values > threshold)),
        int(np.sum(values < -threshold)),
        int(np.sum(np.abs(values) <= threshold)),
    )


def _recovered_turn(turn: float, exact: Sequence[ExactReal], tol: float) -> ExactReal:
    near = max(1e-6, 1e3 * tol)
    for candidate in exact:
        if abs(float(candidate) - turn) <= near:
            return candidate
        # conjugate eigenvalue, seen from the upper half plane
        if abs(1 - float(candidate) - turn) <= near:
            return 1 - candidate
    places = max(1, int(-math.log10(tol)) - 1)
    return decimal(f"{turn:.{_RECOVERED_PLACES}f}", places)


def decompose(
    m: SymplecticMatrix,
    tol: float = DEFAULT_TOL,
    exact_turns: Optional[Sequence[ExactReal]] = None,
) -> NormalFormData:
    """Extract the normal-form endpoint data of ``m``.

    Args:
        m: Symplectic matrix
        tol: Tolerance for unit-circle membership and kernel ranks
        exact_turns: Exact θ/2π values; a recovered rotation or N2 angle within 1e-6 of some
            ``t`` among them, or of ``1 - t``, adopts that exact value and its rationality.
            Other angles keep unknown rationality.

    Returns:
        The normal-form data; blocks ⋄-sum to a matrix in the same homotopy component.

    Raises:
        ClassificationError: If clusters, kernels or Jordan structure cannot be separated
    """
    a = m.array
    k = m.half_dimension
    j = standard_j(k)
    eye = np.eye(2 * k)
    radius = math.sqrt(tol)
    exact = list(exact_turns or [])
    spectrum = spectrum_of(m, tol)
    if any(w.startswith("spectrum not symmetric") for w in spectrum.warnings):
        raise ClassificationError("eigenvalues are not symplectically paired", spectrum.warnings)
    _check_separation(spectrum, radius)

    blocks: List[Any] = []
    for cluster in spectrum.clusters:
        z, mult = cluster.value, cluster.multiplicity
        label = f"λ = {z:.6g}"
        if not cluster.on_circle:
            if abs(z) > 1 and abs(z.imag) <= radius:
                blocks.extend(HBlock(b=z.real) for _ in range(mult))
            elif abs(z) > 1 and z.imag > radius:
                # a quadruple λ, λ̄, 1/λ, 1/λ̄ deforms off the circle onto two H blocks
                blocks.extend(HBlock(b=abs(z)) for _ in range(2 * mult))
            continue
        if abs(z.imag) <= radius:
            lam = 1 if z.real > 0 else -1
            blocks.extend(_real_unit_blocks(a, j, eye, lam, mult, tol, label))
        elif z.imag > 0:
            blocks.extend(_complex_unit_blocks(a, j, eye, z, mult, tol, exact, label))

    total = sum(b.half_dim for b in blocks)
    if total != k:
        raise ClassificationError(f"blocks cover half-dimension {total} of {k}", spectrum.warnings)
    for block in blocks:
        logger.debug("assigned block %s", block)
    return NormalFormData(dimension=k, blocks=blocks)


def _check_separation(spectrum: Spectrum, radius: float) -> None:
    values = [c.value for c in spectrum.clusters]
    for i, x in enumerate(values):
        for y in values[i + 1:]:
            if abs(x - y) <= 10 * radius:
                raise ClassificationError(
                    f"eigenvalue clusters {x:.6g} and {y:.6g} cannot be separated",
                    spectrum.warnings,
                )


def _real_unit_blocks(
    a: np.ndarray, j: np.ndarray, eye: np.ndarray, lam: int, mult: int, tol: float, label: str
) -> List[N1Block]:
    if mult % 2:
        raise ClassificationError(f"odd algebraic multiplicity {mult} at {label}")
    shifted = a - lam * eye
    nullity = _nullity(shifted, tol, [], label)
    pairs = mult // 2
    identity = nullity - pairs
    if identity < 0:
        raise ClassificationError(f"Jordan chains longer than two at {label}")
    basis = _kernel(np.linalg.matrix_power(shifted, mult), mult, label).real
    form = basis.T @ (j @ shifted) @ basis
    positive, negative, _ = _signature(form, float(np.linalg.norm(shifted, 2)), tol)
    if positive + negative != mult - nullity:
        raise ClassificationError(f"cannot resolve N1 signs at {label}")
    return (
        [N1Block(lam=lam, a=1.0)] * positive
        + [N1Block(lam=lam, a=0.0)] * identity
        + [N1Block(lam=lam, a=-1.0)] * negative
    )


def _complex_unit_blocks(
    a: np.ndarray,
    j: np.ndarray,
    eye: np.ndarray,
    omega: complex,
    mult: int,
    tol: float,
    exact: Sequence[ExactReal],
    label: str,
) -> List[Any]:
    omega = omega / abs(omega)
    turn = math.atan2(omega.imag, omega.real) / (2 * math.pi)
    shifted = a - omega * eye
    nullity = _nullity(shifted, tol, [], label)
    chains = mult - nullity
    if chains < 0 or nullity < chains:
        raise ClassificationError(f"Jordan chains longer than two at {label}")
    scale = float(np.linalg.norm(a, 2))

    kernel = _kernel(shifted, nullity, label)
    positive, negative, zero = _signature(-1j * kernel.conj().T @ j @ kernel, scale, tol)
    if zero != chains or positive + negative != nullity - chains:
        raise ClassificationError(f"Krein form degenerate at {label}")

    blocks: List[Any] = []
    blocks += [RBlock(turn=_recovered_turn(turn, exact, tol)) for _ in range(positive)]
    blocks += [RBlock(turn=_recovered_turn(1 - turn, exact, tol)) for _ in range(negative)]
    if chains:
        generalized = _kernel(shifted @ shifted, mult, label)
        transported = -(generalized.conj().T @ j @ (omega.conjugate() * shifted) @ generalized)
        trivial, nontrivial, flat = _signature(transported, scale, tol)
        if trivial + nontrivial != chains or flat != nullity:
            raise ClassificationError(f"cannot resolve N2 triviality at {label}")
        exact_turn = _recovered_turn(turn, exact, tol)
        # sin θ > 0 on this branch, so b2 - b3 carries the sign of the invariant
        blocks += [N2Block.build(exact_turn, 1.0, 0.0) for _ in range(trivial)]
        blocks += [N2Block.build(exact_turn, 0.0, 1.0) for _ in range(nontrivial)]
    return blocks


def is_irrationally_elliptic(nf: NormalFormData) -> Optional[bool]:
    """True iff ``nf`` is made of rotations only, all with irrational θ/2π.

    Returns None when no other block disqualifies ``nf`` but some angle has unknown
    rationality (numerically recovered angles).
    """
    if any(not isinstance(b, RBlock) for b in nf.blocks):
        return False
    flags = [b.rational for b in nf.blocks]
    if any(flag is True for flag in flags):
        return False
    if any(flag is None for flag in flags):
        return None
    return True
