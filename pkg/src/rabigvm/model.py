"""Parameter set of the quantum Rabi model and transformed-frame basis labels.

The Hamiltonian is

    H = omega (a^dag a + 1/2) + (atom_freq / 2) sigma_z + coupling (sigma_+ + sigma_-)(a^dag + a)

Every solver accepts dimensionful parameters and works internally in units of
``omega``.
"""
from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["ModelParams", "Branch", "BasisLabel", "validate"]


@dataclass(frozen=True)
class ModelParams:
    """Photon frequency, atomic splitting and coupling strength (same energy units)."""

    omega: float
    atom_freq: float
    coupling: float

    @property
    def atom_ratio(self) -> float:
        return self.atom_freq / self.omega

    @property
    def coupling_ratio(self) -> float:
        return self.coupling / self.omega

    def scaled(self, s: float) -> "ModelParams":
        return ModelParams(s * self.omega, s * self.atom_freq, s * self.coupling)


class Branch(enum.Enum):
    """Atomic state (|e> +/- |g>)/sqrt(2) of a transformed-frame basis vector."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1

    @property
    def flipped(self) -> "Branch":
        return Branch.MINUS if self is Branch.PLUS else Branch.PLUS


@dataclass(frozen=True, order=False)
class BasisLabel:
    branch: Branch
    photon_n: int

    def __post_init__(self):
        if self.photon_n < 0:
            raise DomainError(f"photon_n must be non-negative, got {self.photon_n}")

    def __str__(self) -> str:
        return f"|{'+' if self.branch is Branch.PLUS else '-'},{self.photon_n}>"


def validate(params: ModelParams) -> ModelParams:
    """Return ``params`` unchanged if every invariant holds, else raise DomainError."""
    for name in ("omega", "atom_freq", "coupling"):
        value = getattr(params, name)
        if not isinstance(value, numbers.Real) or not math.isfinite(value):
            raise DomainError(f"{name} must be a finite number, got {value!r}")
    if params.omega <= 0:
        raise DomainError("omega must be positive")
    if params.atom_freq < 0:
        raise DomainError("atom_freq must be non-negative")
    if params.coupling < 0:
        raise DomainError("coupling must be non-negative")
    return params
