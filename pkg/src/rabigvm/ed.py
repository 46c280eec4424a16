"""Exact diagonalization of the truncated Rabi Hamiltonian.

The parity ``-sigma_z (-1)^{a^dag a}`` is conserved, so the Hamiltonian
splits into two tridiagonal chains over ``|g,0>, |e,1>, |g,2>, ...`` (even)
and ``|e,0>, |g,1>, |e,2>, ...`` (odd):

    d_n = omega (n + 1/2) -+ (atom/2) (-1)^n,    o_n = g sqrt(n + 1)

Each chain is solved by Sturm bisection plus inverse iteration
(``rabigvm.kernels``). A dense spin x Fock build is kept as a cross-check.
"""
from __future__ import annotations

import enum
import os
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError
from .model import ModelParams, validate

__all__ = [
    "Parity",
    "EdConfig",
    "EdResult",
    "TridiagonalMatrix",
    "build_parity_chain",
    "ground_eigenpair",
    "dense_hamiltonian",
    "exact_ground",
    "default_n_fock",
]

_SEED = 20110318


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"


def default_n_fock() -> int:
    """Default truncation, overridable through ``RABI_NFOCK``."""
    raw = os.environ.get("RABI_NFOCK")
    if raw is None or raw.strip() == "":
        return 200
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"RABI_NFOCK must be an integer, got {raw!r}") from exc
    return value


@dataclass(frozen=True)
class EdConfig:
    n_fock: int = 200
    convergence_tol: float = 1e-10
    use_parity_chains: bool = True

    def __post_init__(self):
        if self.n_fock < 8:
            raise DomainError("n_fock must be at least 8")
        if not self.convergence_tol > 0:
            raise DomainError("convergence_tol must be positive")

    @classmethod
    def from_env(cls, **kwargs) -> "EdConfig":
        kwargs.setdefault("n_fock", default_n_fock())
        return cls(**kwargs)


@dataclass
class EdResult:
    energy: float
    eigenvector: np.ndarray
    mean_photon: float
    parity: Parity
    converged: bool
    n_fock: int


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _chain(w: float, g: float, parity: Parity, n_fock: int) -> TridiagonalMatrix:
    n = np.arange(n_fock + 1, dtype=float)
    sign = -1.0 if parity is Parity.EVEN else 1.0
    alternating = np.where(np.arange(n_fock + 1) % 2 == 0, 1.0, -1.0)
    diag = n + 0.5 + sign * 0.5 * w * alternating
    offdiag = g * np.sqrt(n[1:])
    return TridiagonalMatrix(diag, offdiag)


def build_parity_chain(params: ModelParams, parity: Parity | str, n_fock: int) -> TridiagonalMatrix:
    """Tridiagonal block of the Hamiltonian in the given parity sector (energy units)."""
    validate(params)
    w = params.atom_freq / params.omega
    g = params.coupling / params.omega
    chain = _chain(w, g, Parity(parity), n_fock)
    return TridiagonalMatrix(params.omega * chain.diag, params.omega * chain.offdiag)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # largest component positive; near-ties go to the lowest index so the
    # result does not depend on rounding in the backend
    mag = np.abs(v)
    k = int(np.argmax(mag >= (1.0 - 1e-10) * mag.max()))
    return -v if v[k] < 0 else v


def ground_eigenpair(matrix: TridiagonalMatrix, rtol: float = 1e-14, backend: str | None = None):
    """Lowest eigenvalue and unit eigenvector of a symmetric tridiagonal matrix.

    The bisection estimate is replaced by the Rayleigh quotient of the
    inverse-iteration vector, which is accurate to the square of the
    residual. The eigenvector's largest-magnitude component is made positive
    (lowest index on a tie).
    """
    d = np.asarray(matrix.diag, dtype=float)
    e = np.asarray(matrix.offdiag, dtype=float)
    if len(d) < 2 or len(e) != len(d) - 1:
        raise DomainError("need a tridiagonal matrix of dimension >= 2")
    if not np.any(e):
        k = int(np.argmin(d))
        v = np.zeros_like(d)
        v[k] = 1.0
        return float(d[k]), v
    theta = kernels.lowest_eigenvalue(d, e, rtol=rtol, backend=backend)
    v0 = np.random.default_rng(_SEED).uniform(0.5, 1.5, len(d))
    v, residual, _ = kernels.inverse_iteration(d, e, theta, v0, max_iter=5, tol=1e-10, backend=backend)
    if not residual <= 1e-10:
        raise ConvergenceError(f"inverse iteration residual {residual:.3e} > 1e-10")
    v = _fix_sign(v)
    av = d * v
    av[:-1] += e * v[1:]
    av[1:] += e * v[:-1]
    rayleigh = float(np.dot(v, av))
    return rayleigh, v


def dense_hamiltonian(params: ModelParams, n_fock: int) -> np.ndarray:
    """Full spin x Fock matrix, basis index ``2 n + s`` with s = 0 (g), 1 (e); units of omega."""
    w = params.atom_freq / params.omega
    g = params.coupling / params.omega
    dim = 2 * (n_fock + 1)
    h = np.zeros((dim, dim))
    for n in range(n_fock + 1):
        h[2 * n, 2 * n] = n + 0.5 - 0.5 * w
        h[2 * n + 1, 2 * n + 1] = n + 0.5 + 0.5 * w
        if n < n_fock:
            c = g * np.sqrt(n + 1.0)
            # sigma_x (a + a^dag) flips the atom and moves one photon
            h[2 * n, 2 * (n + 1) + 1] = h[2 * (n + 1) + 1, 2 * n] = c
            h[2 * n + 1, 2 * (n + 1)] = h[2 * (n + 1), 2 * n + 1] = c
    return h


def _solve_chains(w, g, n_fock, backend=None):
    best = None
    for parity in (Parity.EVEN, Parity.ODD):
        energy, vec = ground_eigenpair(_chain(w, g, parity, n_fock), backend=backend)
        if best is None or energy < best[0]:
            best = (energy, vec, parity)
    energy, vec, parity = best
    photons = float(np.sum(np.arange(len(vec)) * vec * vec))
    return energy, vec, photons, parity


def _solve_dense(w, g, n_fock):
    h = dense_hamiltonian(ModelParams(1.0, w, g), n_fock)
    vals, vecs = np.linalg.eigh(h)
    vec = _fix_sign(vecs[:, 0])
    n = np.repeat(np.arange(n_fock + 1), 2)
    photons = float(np.sum(n * vec * vec))
    # parity -sigma_z (-1)^n, sigma_z = -1 on g
    spin = np.tile([-1.0, 1.0], n_fock + 1)
    parity_value = float(np.sum(-spin * (-1.0) ** n * vec * vec))
    parity = Parity.EVEN if parity_value >= 0 else Parity.ODD
    return float(vals[0]), vec, photons, parity


def exact_ground(params: ModelParams, cfg: EdConfig = EdConfig(), backend: str | None = None) -> EdResult:
    """Ground energy (including the omega/2 zero point), state and photon number."""
    validate(params)
    w = params.atom_freq / params.omega
    g = params.coupling / params.omega
    if cfg.use_parity_chains:
        energy, vec, photons, parity = _solve_chains(w, g, cfg.n_fock, backend)
        half, *_ = _solve_chains(w, g, cfg.n_fock // 2, backend)
    else:
        energy, vec, photons, parity = _solve_dense(w, g, cfg.n_fock)
        half, *_ = _solve_dense(w, g, cfg.n_fock // 2)
    converged = params.omega * abs(energy - half) <= cfg.convergence_tol
    if not converged:
        warnings.warn(
            f"ED not converged at n_fock={cfg.n_fock}: |dE|={params.omega * abs(energy - half):.2e}",
            RuntimeWarning,
            stacklevel=2,
        )
    return EdResult(
        energy=params.omega * energy,
        eigenvector=vec,
        mean_photon=photons,
        parity=parity,
        converged=converged,
        n_fock=cfg.n_fock,
    )
