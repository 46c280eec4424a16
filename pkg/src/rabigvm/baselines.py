"""Generalized rotating-wave approximation (GRWA) reference formulas."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams, validate

__all__ = ["BaselineResult", "energy_grwa", "mean_photon_grwa", "grwa"]


@dataclass(frozen=True)
class BaselineResult:
    e0_grwa: float
    mean_photon_grwa: float


def energy_grwa(params: ModelParams) -> float:
    """omega/2 - g^2/omega - (atom/2) exp[-2 (g/omega)^2]."""
    validate(params)
    w = params.atom_freq / params.omega
    g = params.coupling / params.omega
    return params.omega * (0.5 - g * g - 0.5 * w * math.exp(-2.0 * g * g))


def mean_photon_grwa(params: ModelParams) -> float:
    """g^2/omega^2; independent of the atomic frequency."""
    validate(params)
    g = params.coupling / params.omega
    return g * g


def grwa(params: ModelParams) -> BaselineResult:
    return BaselineResult(energy_grwa(params), mean_photon_grwa(params))
