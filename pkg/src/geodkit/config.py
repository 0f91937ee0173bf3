"""Run options and the arithmetic precision policy.

Options are resolved with the precedence CLI flag > model-file ``options`` block >
environment (``GEODKIT_*``, optionally from a ``.env`` file) > built-in default.
"""

import os
import threading
from contextlib import contextmanager
from typing import Any, Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PrecisionPolicy(BaseModel):
    """Digits used by certified decimals: start here, double until the cap."""

    model_config = ConfigDict(frozen=True)

    start_digits: int = Field(default=64, ge=16, description="Initial working precision")
    max_digits: int = Field(default=4096, ge=16, description="Escalation cap")

    @model_validator(mode="after")
    def _check_order(self) -> "PrecisionPolicy":
        if self.start_digits > self.max_digits:
            raise ValueError("start_digits must not exceed max_digits")
        return self

    def schedule(self) -> list:
        """Return the escalation schedule, e.g. ``[64, 128, ..., 4096]``."""
        steps = []
        digits = self.start_digits
        while digits < self.max_digits:
            steps.append(digits)
            digits *= 2
        steps.append(self.max_digits)
        return steps


_policy_lock = threading.Lock()
_policy = PrecisionPolicy()


def precision_policy() -> PrecisionPolicy:
    """Return the process-wide precision policy."""
    return _policy


def set_precision_policy(policy: PrecisionPolicy) -> PrecisionPolicy:
    """Install a process-wide precision policy and return the previous one."""
    global _policy
    with _policy_lock:
        previous, _policy = _policy, policy
    return previous


@contextmanager
def using_precision(policy: PrecisionPolicy) -> Iterator[PrecisionPolicy]:
    """Install ``policy`` for the duration of a block, then restore the previous one."""
    previous = set_precision_policy(policy)
    try:
        yield policy
    finally:
        set_precision_policy(previous)


class Options(BaseModel):
    """Tunable parameters shared by the library entry points and the CLI."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tol: float = Field(default=1e-9, gt=0, description="Symplectic classification tolerance")
    m0: Optional[int] = Field(
        default=None, ge=1, description="Divisor M0 required of N (default: n - 1)"
    )
    n_min: int = Field(default=1, ge=1, description="Smallest N tried by the jump search")
    n_max: int = Field(default=500, ge=1, description="Largest N tried by the jump search")
    max_degree: int = Field(default=20, ge=0, description="Degree bound D for tables")
    max_m: int = Field(default=20, ge=1, description="Number of iterates to tabulate")
    window: int = Field(default=2, ge=0, description="Slack around N / mean index")
    workers: int = Field(default=1, ge=1, description="Threads for the jump search")
    m_range: int = Field(default=10, ge=2, description="Range of m in the gap check")
    escalations: int = Field(default=8, ge=0, description="Retries after window intrusion")
    precision: PrecisionPolicy = Field(default_factory=PrecisionPolicy)

    def with_overrides(self, **overrides: Any) -> "Options":
        """Return a copy with the given fields replaced; ``None`` values are ignored."""
        update = {key: value for key, value in overrides.items() if value is not None}
        return self.model_validate({**self.model_dump(), **update})

    def resolve_m0(self, n: int) -> int:
        """Return the divisor policy for ambient dimension ``n``."""
        return self.m0 if self.m0 is not None else max(n - 1, 1)


_ENV_FIELDS = {
    "GEODKIT_TOL": ("tol", float),
    "GEODKIT_N_MAX": ("n_max", int),
    "GEODKIT_MAX_DEGREE": ("max_degree", int),
    "GEODKIT_WORKERS": ("workers", int),
}


def default_options() -> Options:
    """Build options from the environment on top of the built-in defaults."""
    values: dict = {}
    for variable, (name, cast) in _ENV_FIELDS.items():
        raw = os.environ.get(variable)
        if raw:
            values[name] = cast(raw)
    start = os.environ.get("GEODKIT_START_DIGITS")
    cap = os.environ.get("GEODKIT_MAX_DIGITS")
    if start or cap:
        policy = PrecisionPolicy()
        values["precision"] = PrecisionPolicy(
            start_digits=int(start) if start else policy.start_digits,
            max_digits=int(cap) if cap else policy.max_digits,
        )
    return Options(**values)
