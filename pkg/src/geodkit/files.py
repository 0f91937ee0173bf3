"""Model and matrix files.

Both formats are YAML (JSON is accepted as YAML). Files are loaded through OmegaConf, so
values may use interpolation such as ``${oc.env:GEODKIT_N,2}`` or ``${geodesics.0.angles}``.

A model file::

    n: 2
    geodesics:
      - label: c1
        initial_index: 1
        angles:
          - {kind: quadratic, p: 0, q: 1, d: 2, r: 2}
    options:
      n_max: 200

A matrix file::

    dimension: 2
    entries: [0.5403023058681398, -0.8414709848078965, 0.8414709848078965, 0.5403023058681398]
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import yaml
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException
from pydantic import Field, ValidationError, model_validator

from .base import Real, Record
from .config import Options
from .errors import InputFileError
from .iteration import GeodesicModel
from .numerics import ExactReal
from .symplectic import DEFAULT_TOL, SymplecticMatrix

logger = logging.getLogger(__name__)


class GeodesicEntry(Record):
    """One geodesic of a model file."""

    label: Optional[str] = Field(default=None, description="Display name")
    initial_index: int = Field(..., description="Morse index i(c)")
    angles: List[Real] = Field(..., description="θ_k/2π literals, n-1 of them")


class ModelFile(Record):
    """Sphere dimension, geodesic entries and an optional options block."""

    n: int = Field(..., ge=2, description="Dimension of the sphere S^n")
    geodesics: List[GeodesicEntry] = Field(default_factory=list)
    options: Optional[Options] = Field(default=None, description="Run options for this file")

    def models(self, source: str = "") -> List[GeodesicModel]:
        """Build the geodesic models.

        Raises:
            InputFileError: Located at ``geodesics.<j>.<field>`` for an invalid entry
        """
        models = []
        for j, entry in enumerate(self.geodesics):
            try:
                models.append(
                    GeodesicModel(
                        n=self.n,
                        initial_index=entry.initial_index,
                        angles=tuple(entry.angles),
                        label=entry.label or f"c{j + 1}",
                    )
                )
            except ValidationError as e:
                raise InputFileError.from_validation(e, source, ("geodesics", j)) from e
        return models

    def file_options(self) -> Dict[str, Any]:
        """Options explicitly set in the file."""
        if self.options is None:
            return {}
        return self.options.model_dump(exclude_unset=True)

    @classmethod
    def from_models(
        cls, models: Sequence[GeodesicModel], options: Optional[Options] = None
    ) -> "ModelFile":
        if not models:
            raise ValueError("a model file needs at least one geodesic to fix n")
        return cls(
            n=models[0].n,
            geodesics=[
                GeodesicEntry(
                    label=g.label, initial_index=g.initial_index, angles=list(g.angles)
                )
                for g in models
            ],
            options=options,
        )


class MatrixFile(Record):
    """A real ``dimension x dimension`` matrix, row-major, with optional exact angles."""

    dimension: int = Field(..., ge=2, description="Matrix size 2k")
    entries: List[float] = Field(..., description="Row-major entries")
    angles: List[Real] = Field(
        default_factory=list, description="Exact θ/2π values adopted by recovered angles"
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixFile":
        if self.dimension % 2:
            raise ValueError(f"dimension must be even, got {self.dimension}")
        if len(self.entries) != self.dimension**2:
            raise ValueError(
                f"expected {self.dimension**2} entries for dimension {self.dimension}, "
                f"got {len(self.entries)}"
            )
        return self

    def to_matrix(self, tol: float = DEFAULT_TOL) -> SymplecticMatrix:
        """Return the symplectic matrix, checked with defect bound ``tol``."""
        array = np.array(self.entries, dtype=float).reshape(self.dimension, self.dimension)
        return SymplecticMatrix.from_array(array, tolerance=tol)

    @property
    def exact_turns(self) -> List[ExactReal]:
        return list(self.angles)

    @classmethod
    def from_matrix(
        cls, matrix: SymplecticMatrix, angles: Optional[Sequence[ExactReal]] = None
    ) -> "MatrixFile":
        return cls(
            dimension=matrix.dimension,
            entries=[x for row in matrix.entries for x in row],
            angles=list(angles or []),
        )


def _load_mapping(text: str, source: str) -> Dict[str, Any]:
    try:
        omega_conf = OmegaConf.create(text)
        data = OmegaConf.to_container(omega_conf, resolve=True)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        location = f"line {mark.line + 1}, column {mark.column + 1}" if mark else None
        problem = getattr(e, "problem", None) or str(e)
        raise InputFileError(f"invalid YAML: {problem}", location, source) from e
    except OmegaConfBaseException as e:
        key = getattr(e, "full_key", None)
        raise InputFileError(f"cannot resolve value: {e}", key or None, source) from e
    except AssertionError as e:
        # OmegaConf.create asserts on a scalar document
        raise InputFileError("file must contain a mapping at the top level", None, source) from e
    if not isinstance(data, dict):
        raise InputFileError("file must contain a mapping at the top level", None, source)
    return {str(k): v for k, v in data.items()}


def parse_model_file(text: str, source: str = "") -> ModelFile:
    """Parse and validate model-file text.

    Raises:
        InputFileError: With the line/column of a syntax error or the path of a bad field
    """
    data = _load_mapping(text, source)
    try:
        model_file = ModelFile.model_validate(data)
    except ValidationError as e:
        raise InputFileError.from_validation(e, source) from e
    model_file.models(source)
    return model_file


def parse_matrix_file(text: str, source: str = "") -> MatrixFile:
    """Parse and validate matrix-file text."""
    data = _load_mapping(text, source)
    try:
        return MatrixFile.model_validate(data)
    except ValidationError as e:
        raise InputFileError.from_validation(e, source) from e


def _read(path: str) -> str:
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    with open(file_path, "r") as f:
        return f.read()


def load_model_file(path: str) -> ModelFile:
    """Load a model file from disk."""
    model_file = parse_model_file(_read(path), source=path)
    logger.debug("loaded %d geodesics from %s", len(model_file.geodesics), path)
    return model_file


def load_matrix_file(path: str) -> MatrixFile:
    """Load a matrix file from disk."""
    return parse_matrix_file(_read(path), source=path)


def model_file_schema() -> Dict[str, Any]:
    """JSON Schema of the model-file format."""
    return ModelFile.json_schema(title="geodkit model file")


def matrix_file_schema() -> Dict[str, Any]:
    """JSON Schema of the matrix-file format."""
    return MatrixFile.json_schema(title="geodkit matrix file")
