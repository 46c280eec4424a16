"""Generalized variational method for the ground state of the Rabi model.

The Hamiltonian is rotated to ``omega(a^dag a + 1/2) + (atom/2) sigma_x
- g sigma_z (a^dag + a)`` and displaced by ``U = exp[lam sigma_z (a^dag - a)]``.
In the displaced frame the states ``|+-, N>`` (sigma_x eigenstates times Fock
states) diagonalize everything except a residual coupling, which is treated
to second order in the energy and first order in the state.

Everything is evaluated in units of ``omega``: inputs are divided by
``omega`` on entry and energies multiplied back on exit, which makes every
result exactly homogeneous under a common rescaling of the parameters.

Phase convention: ``sigma_z |+-, N> = |-+, N>``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DegenerateDenominatorError, DomainError
from .model import BasisLabel, Branch, ModelParams, validate
from .specfun import displacement_factor, laguerre_assoc

__all__ = [
    "Method",
    "VariationalSolution",
    "PerturbationConfig",
    "WavefunctionExpansion",
    "GroundStateResult",
    "dressed_splitting",
    "stationarity_residual",
    "solve_lambda_exact",
    "lambda_closed_form",
    "unperturbed_energy",
    "offdiag_homega",
    "offdiag_hg",
    "transformed_hamiltonian",
    "second_order_energy",
    "first_order_wavefunction",
    "energy_explicit",
    "ground_state",
    "mean_photon_full",
    "mean_photon_approx",
    "mean_photon_approx_shifted",
    "mean_photon_weak_atom",
]

GROUND = BasisLabel(Branch.MINUS, 0)


class Method(str, enum.Enum):
    EXACT_ROOT = "exact_root"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class PerturbationConfig:
    """Truncation of the infinite perturbative sums and the root tolerance."""

    n_max: int = 60
    term_tol: float = 1e-16
    root_tol: float = 1e-13

    def __post_init__(self):
        if self.n_max < 2:
            raise DomainError("n_max must be at least 2")
        if not (self.term_tol > 0 and self.root_tol > 0):
            raise DomainError("tolerances must be positive")


@dataclass(frozen=True)
class VariationalSolution:
    lam: float
    f_lam: float
    e0_unperturbed: float
    stationarity_residual: float
    method: Method


@dataclass
class WavefunctionExpansion:
    """Ground state in the displaced frame as a map ``BasisLabel -> coefficient``."""

    lam: float
    coeffs: dict[BasisLabel, float]
    normalized: bool = False

    def norm_squared(self) -> float:
        return math.fsum(c * c for c in self.coeffs.values())

    def normalize(self) -> "WavefunctionExpansion":
        scale = 1.0 / math.sqrt(self.norm_squared())
        return WavefunctionExpansion(self.lam, {k: c * scale for k, c in self.coeffs.items()}, True)

    def corrections(self) -> dict[BasisLabel, float]:
        return {k: c for k, c in self.coeffs.items() if k != GROUND}

    def as_arrays(self, n_max: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Dense ``(minus, plus)`` coefficient vectors indexed by photon number."""
        top = max((k.photon_n for k in self.coeffs), default=0)
        n_max = top if n_max is None else n_max
        minus = np.zeros(n_max + 1)
        plus = np.zeros(n_max + 1)
        for k, c in self.coeffs.items():
            if k.photon_n <= n_max:
                (plus if k.branch is Branch.PLUS else minus)[k.photon_n] = c
        return minus, plus


@dataclass
class GroundStateResult:
    solution: VariationalSolution
    e0_order2: float
    e0_total: float
    wavefunction: WavefunctionExpansion
    mean_photon_full: float = field(default=float("nan"))
    mean_photon_approx: float = field(default=float("nan"))


def _reduced(params: ModelParams) -> tuple[float, float]:
    return params.atom_freq / params.omega, params.coupling / params.omega


def dressed_splitting(lam: float, params: ModelParams) -> float:
    """F(lam) = -(atom/2) exp(-2 lam^2)."""
    return -0.5 * params.atom_freq * math.exp(-2.0 * lam * lam)


def stationarity_residual(lam: float, params: ModelParams) -> float:
    """|lam [omega + atom exp(-2 lam^2)] + g| in energy units."""
    w, g = _reduced(params)
    return params.omega * abs(lam * (1.0 + w * math.exp(-2.0 * lam * lam)) + g)


def _e00(lam: float, w: float, g: float) -> float:
    # E_{-,0} in units of omega
    return 0.5 + lam * lam + 2.0 * lam * g - 0.5 * w * math.exp(-2.0 * lam * lam)


def _solution(lam: float, params: ModelParams, method: Method) -> VariationalSolution:
    w, g = _reduced(params)
    return VariationalSolution(
        lam=lam,
        f_lam=dressed_splitting(lam, params),
        e0_unperturbed=params.omega * _e00(lam, w, g),
        stationarity_residual=stationarity_residual(lam, params),
        method=method,
    )


def solve_lambda_exact(params: ModelParams, cfg: PerturbationConfig = PerturbationConfig()) -> VariationalSolution:
    """Displacement minimizing the unperturbed ground energy.

    Solves ``lam (omega + atom exp(-2 lam^2)) + g = 0`` on
    ``[-g/omega - eps, 0]``. Every sign change on a 64-cell grid is refined
    with Brent's method plus Newton polishing, and the root with the lowest
    energy is returned.
    """
    validate(params)
    w, g = _reduced(params)
    if g == 0.0:
        return _solution(0.0, params, Method.EXACT_ROOT)
    if w == 0.0:
        return _solution(-g, params, Method.EXACT_ROOT)

    def f(lam):
        return lam * (1.0 + w * math.exp(-2.0 * lam * lam)) + g

    def fprime(lam):
        x = math.exp(-2.0 * lam * lam)
        return 1.0 + w * x * (1.0 - 4.0 * lam * lam)

    left = -g * (1.0 + 1e-6) - 1e-12
    grid = np.linspace(left, 0.0, 65)
    vals = [f(x) for x in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            roots.append(float(a))
        elif (fa < 0.0) != (fb < 0.0) and fb != 0.0:  # the product can underflow
            r = brentq(f, a, b, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)
            roots.append(r)
    if not roots:
        raise ConvergenceError(f"no sign change of the stationarity condition in [{left}, 0]")

    polished = []
    for r in roots:
        for _ in range(4):
            d = fprime(r)
            if d == 0.0:
                break
            step = f(r) / d
            r_new = r - step
            if abs(r_new - r) <= 2 * np.finfo(float).eps * abs(r):
                r = r_new
                break
            r = r_new
        polished.append(r)

    lam = min(polished, key=lambda r: _e00(r, w, g))
    if fprime(lam) <= 0.0:
        raise ConvergenceError(f"stationary point lam={lam} is not a minimum")
    sol = _solution(lam, params, Method.EXACT_ROOT)
    if sol.stationarity_residual > cfg.root_tol * params.omega:
        raise ConvergenceError(
            f"stationarity residual {sol.stationarity_residual:.3e} exceeds root_tol {cfg.root_tol:.1e}"
        )
    return sol


def lambda_closed_form(params: ModelParams) -> VariationalSolution:
    """lam = -g / (omega + atom), the small-displacement approximation."""
    validate(params)
    w, g = _reduced(params)
    return _solution(-g / (1.0 + w), params, Method.CLOSED_FORM)


def _unperturbed(lam: float, w: float, g: float, sign: int, n: int) -> float:
    # E_{+-,N} in units of omega; sign = +1 for plus
    f = -0.5 * w * math.exp(-2.0 * lam * lam)
    return lam * lam + 2.0 * lam * g + n + 0.5 - sign * f * laguerre_assoc(n, 0, 4.0 * lam * lam)


def unperturbed_energy(lam: float, params: ModelParams, label: BasisLabel = GROUND) -> float:
    """Diagonal element E_{+-,N} of the displaced Hamiltonian."""
    w, g = _reduced(params)
    return params.omega * _unperturbed(lam, w, g, label.branch.sign, label.photon_n)


def offdiag_homega(lam: float, params: ModelParams, n: int, m: int) -> float:
    """Unsigned atomic-term element F(lam) (2 lam)^(n-m) sqrt(m!/n!) L_m^(n-m)(4 lam^2).

    Requires ``n > m``. Callers apply the branch sign (see
    ``transformed_hamiltonian``).
    """
    if n <= m or m < 0:
        raise DomainError(f"offdiag_homega needs n > m >= 0 (got n={n}, m={m})")
    f = dressed_splitting(lam, params)
    if f == 0.0:
        return 0.0
    return f * displacement_factor(n, m, 2.0 * lam) * laguerre_assoc(m, n - m, 4.0 * lam * lam)


def offdiag_hg(lam: float, params: ModelParams, n: int, m: int) -> float:
    """Residual linear-coupling element <N,+-|H_g|-+,M> = -sqrt(N) (g + omega lam) delta_{N,M+1}."""
    if n < 0 or m < 0:
        raise DomainError("photon numbers must be non-negative")
    if n != m + 1:
        return 0.0
    return -math.sqrt(n) * (params.coupling + params.omega * lam)


def _index(label: BasisLabel, n_max: int) -> int:
    return label.photon_n + (n_max + 1 if label.branch is Branch.PLUS else 0)


def transformed_hamiltonian(lam: float, params: ModelParams, n_max: int) -> np.ndarray:
    """Dense displaced Hamiltonian on ``{|-,0..n_max>, |+,0..n_max>}`` (in that order).

    Same-branch elements (even N - M) carry ``-sign(bra) * offdiag_homega``;
    opposite-branch elements (odd N - M) carry ``+sign(bra) * offdiag_homega``
    plus the linear residual ``offdiag_hg``.
    """
    dim = 2 * (n_max + 1)
    h = np.zeros((dim, dim))
    for branch in Branch:
        for n in range(n_max + 1):
            bra = BasisLabel(branch, n)
            i = _index(bra, n_max)
            h[i, i] = unperturbed_energy(lam, params, bra)
            for m in range(n):
                s = branch.sign
                if (n - m) % 2 == 0:
                    val = -s * offdiag_homega(lam, params, n, m)
                    j = _index(BasisLabel(branch, m), n_max)
                else:
                    val = s * offdiag_homega(lam, params, n, m) + offdiag_hg(lam, params, n, m)
                    j = _index(BasisLabel(branch.flipped, m), n_max)
                h[i, j] = val
                h[j, i] = val
    return h


def _first_coupling(lam: float, w: float, g: float) -> tuple[float, float]:
    """Coupling <+,1|H_r|-,0> and gap E_{+,1} - E_{-,0} in units of omega."""
    f = -0.5 * w * math.exp(-2.0 * lam * lam)
    coupling = -(g + lam) + 2.0 * lam * f
    gap = 1.0 - 2.0 * f * (1.0 - 2.0 * lam * lam)
    return coupling, gap


def _series(sol: VariationalSolution, params: ModelParams, cfg: PerturbationConfig):
    """Yield ``(label, amplitude, gap)`` for the first-order admixtures, in units of omega.

    ``amplitude`` is <label|H_r|-,0> and ``gap`` is E_label - E_{-,0}.
    Stops at ``n_max``, or once both the energy term and the state
    coefficient fall below ``term_tol`` relative to the largest seen so far
    (energy terms are squares of amplitudes, so the energy criterion alone
    would cut the state too early).
    """
    w, g = _reduced(params)
    lam = sol.lam
    coupling, gap = _first_coupling(lam, w, g)
    if gap <= 0.0:
        raise DegenerateDenominatorError(f"gap to |+,1> is {gap * params.omega:.3e} <= 0")
    yield BasisLabel(Branch.PLUS, 1), coupling, gap

    f = -0.5 * w * math.exp(-2.0 * lam * lam)
    if f == 0.0 or lam == 0.0:
        return
    e00 = _e00(lam, w, g)
    two_lam = 2.0 * lam
    amp = two_lam  # (2 lam)^N / sqrt(N!) at N = 1
    total = coupling * coupling / gap
    largest = abs(coupling / gap)
    for n in range(2, cfg.n_max + 1):
        amp *= two_lam / math.sqrt(n)
        branch = Branch.PLUS if n % 2 else Branch.MINUS
        gap_n = _unperturbed(lam, w, g, branch.sign, n) - e00
        if gap_n <= 0.0:
            raise DegenerateDenominatorError(
                f"gap to |{'+' if n % 2 else '-'},{n}> is {gap_n * params.omega:.3e} <= 0"
            )
        a = f * amp
        yield BasisLabel(branch, n), a, gap_n
        term = a * a / gap_n
        total += term
        coeff = abs(a / gap_n)
        largest = max(largest, coeff)
        if term < cfg.term_tol * total and coeff < cfg.term_tol * largest:
            return


def second_order_energy(
    sol: VariationalSolution, params: ModelParams, cfg: PerturbationConfig = PerturbationConfig()
) -> float:
    """Second-order energy shift: -sum_k |<k|H_r|-,0>|^2 / (E_k - E_{-,0}).

    The ``|+,1>`` numerator is ``-(g + omega lam) + 2 lam F``, which is
    what the matrix elements give; it vanishes at the exact root.
    """
    terms = [a * a / gap for _, a, gap in _series(sol, params, cfg)]
    # 0.0 - x keeps an empty or all-zero sum at +0.0
    return 0.0 - params.omega * math.fsum(terms)


def first_order_wavefunction(
    sol: VariationalSolution, params: ModelParams, cfg: PerturbationConfig = PerturbationConfig()
) -> WavefunctionExpansion:
    coeffs = {GROUND: 1.0}
    for label, a, gap in _series(sol, params, cfg):
        if a != 0.0:
            coeffs[label] = -a / gap
    return WavefunctionExpansion(sol.lam, coeffs, normalized=False)


def energy_explicit(params: ModelParams) -> float:
    """Closed-form ground energy omega/2 - g^2(omega+2 atom)/(omega+atom)^2 - (atom/2) exp[-2 (g/(omega+atom))^2]."""
    validate(params)
    w, g = _reduced(params)
    r = g / (1.0 + w)
    return params.omega * (0.5 - g * g * (1.0 + 2.0 * w) / (1.0 + w) ** 2 - 0.5 * w * math.exp(-2.0 * r * r))


def mean_photon_full(result: GroundStateResult | WavefunctionExpansion, params: ModelParams) -> float:
    """Photon number <a^dag a + lam^2 - lam sigma_z (a^dag + a)> on the normalized state."""
    wf = result.wavefunction if isinstance(result, GroundStateResult) else result
    if not wf.coeffs:
        raise DomainError("empty wavefunction")
    wf = wf if wf.normalized else wf.normalize()
    minus, plus = wf.as_arrays()
    n = np.arange(len(minus))
    occupation = float(np.sum(n * (minus * minus + plus * plus)))
    # sigma_z (a + a^dag) links (+-, N) with (-+, N + 1)
    root = np.sqrt(n[1:])
    cross = 2.0 * float(np.sum(root * (plus[1:] * minus[:-1] + minus[1:] * plus[:-1])))
    lam = wf.lam
    return max(occupation + lam * lam - lam * cross, 0.0)


def mean_photon_approx(params: ModelParams) -> float:
    """g^2 / [omega + atom exp(-2 g^2/omega^2)]^2."""
    validate(params)
    w, g = _reduced(params)
    return g * g / (1.0 + w * math.exp(-2.0 * g * g)) ** 2


def mean_photon_approx_shifted(params: ModelParams) -> float:
    """Diagnostic variant of ``mean_photon_approx`` with (omega + atom)^2 in the exponent."""
    validate(params)
    w, g = _reduced(params)
    r = g / (1.0 + w)
    return g * g / (1.0 + w * math.exp(-2.0 * r * r)) ** 2


def mean_photon_weak_atom(params: ModelParams) -> float:
    """First order in atom/omega: g^2/omega^2 - 2 g^2 atom exp(-2 g^2/omega^2) / omega^3."""
    validate(params)
    w, g = _reduced(params)
    return g * g - 2.0 * g * g * w * math.exp(-2.0 * g * g)


def ground_state(
    params: ModelParams,
    cfg: PerturbationConfig = PerturbationConfig(),
    mode: Method | str = Method.EXACT_ROOT,
) -> GroundStateResult:
    """Energy through second order and state through first order."""
    validate(params)
    mode = Method(mode)
    sol = solve_lambda_exact(params, cfg) if mode is Method.EXACT_ROOT else lambda_closed_form(params)
    e2 = second_order_energy(sol, params, cfg)
    wf = first_order_wavefunction(sol, params, cfg)
    result = GroundStateResult(
        solution=sol,
        e0_order2=e2,
        e0_total=sol.e0_unperturbed + e2,
        wavefunction=wf,
    )
    result.mean_photon_full = mean_photon_full(result, params)
    result.mean_photon_approx = mean_photon_approx(params)
    return result
