"""Two electrons in a harmonic trap (Hooke's-law atom).

The Hamiltonian -(1/2)(lap_1 + lap_2) + (omega^2/2)(r_1^2 + r_2^2)
+ lambda/r_12 separates exactly into center-of-mass and relative
motion.  The CM factor is a harmonic oscillator ground state at every
omega; the relative s-wave radial equation

    -u'' + (omega^2/4) s^2 u + (lambda/s) u = eps u       (mu = 1/2)

is solved here by Numerov integration with outward/inward matching.
For omega = 1/2 the interacting ground state is known in closed form,
which provides both an exact density (with four analytic derivatives)
and an end-to-end check on the numerical route.

The kinetic reference attached to solutions is the *non-interacting*
(Kohn-Sham) kinetic energy of the ground-state density: for a
two-electron singlet the exact KS orbital is sqrt(rho/2), so

    T_s = (1/8) int (grad rho)^2 / rho d^3r,

which is what gradient-expansion functionals approximate.  The full
wavefunction expectation <T> = T_cm + T_rel is kept alongside as a
diagnostic; the two coincide only when the interaction is switched off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import InterpolatedUnivariateSpline
from scipy.optimize import brentq

from . import jets
from .radial import (DensityModel, RadialGrid, grid_for_density,
                     integrate_radial)


class SolverError(RuntimeError):
    """Eigenvalue search or density reconstruction failed."""


@dataclass(frozen=True)
class HookeParams:
    omega: float
    interacting: bool = True

    def __post_init__(self):
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive, got {self.omega!r}")


@dataclass(frozen=True)
class HookeSolution:
    """Ground state summary: density plus energy bookkeeping."""

    params: HookeParams
    density: DensityModel
    T_exact: float              # KS kinetic energy of the density
    E_total: float              # eps_cm + eps_rel
    eps_cm: float
    eps_rel: float
    kinetic_expectation: float  # <T> of the correlated wavefunction


def kinetic_exact(sol: HookeSolution) -> float:
    """Reference kinetic energy used in the accuracy tables.

    This is the non-interacting (KS) kinetic energy of the solution's
    density, not the wavefunction expectation; for two-electron singlet
    ground states the two differ by the (positive) correlation kinetic
    energy whenever the Coulomb term is on.
    """

    return sol.T_exact


def singlet_ks_kinetic(model: DensityModel, grid: RadialGrid) -> float:
    """(1/8) int (grad rho)^2 / rho: exact T_s for a 2e singlet."""

    def integrand(r: float) -> float:
        d = model.eval(r)
        if d.rho <= 0.0:
            return 0.0
        return d.d1 * d.d1 / (8.0 * d.rho)

    return integrate_radial(integrand, grid)


# ---------------------------------------------------------------------------
# Analytic omega = 1/2 density.
#
# The closed-form ground state Psi = N0 (1 + r12/2) exp(-(r1^2+r2^2)/4),
# N0^2 = [4 pi^(5/2) (8 + 5 sqrt(pi))]^(-1), integrates to the density
#
#   rho(r) propto exp(-r^2/2) { sqrt(pi/2) [7/4 + r^2/4
#                + (r + 1/r) erf(r/sqrt(2))] + exp(-r^2/2) }
#
# The proportionality constant is fixed numerically by the N = 2 sum
# rule rather than trusted from transcription.
# ---------------------------------------------------------------------------

_SQRT_PI_HALF = math.sqrt(math.pi / 2.0)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_N0_SQUARED = 1.0 / (4.0 * math.pi ** 2.5 * (8.0 + 5.0 * math.sqrt(math.pi)))

# Small-r series of the bracket: sqrt(pi/2)(7/4 + r^2/4) plus the even
# power series of sqrt(pi/2)(r + 1/r) erf(r/sqrt(2)), which is
# sum_k (-1)^k (r^(2k) + r^(2k+2)) / (2^k k! (2k+1)).  Converges to
# machine precision for r < 1/2 with ~20 terms.
_SERIES_SWITCH = 0.5


def _bracket_series_coeffs(n_terms: int = 22) -> np.ndarray:
    coeffs = np.zeros(2 * n_terms + 4)
    coeffs[0] += _SQRT_PI_HALF * 7.0 / 4.0
    coeffs[2] += _SQRT_PI_HALF / 4.0
    term = 1.0
    for k in range(n_terms):
        coeffs[2 * k] += term
        coeffs[2 * k + 2] += term
        term *= -1.0 / (2.0 * (k + 1.0) * (2.0 * k + 3.0) / (2.0 * k + 1.0))
    return coeffs


_BRACKET_COEFFS = _bracket_series_coeffs()


def _bracket_jet(r: float) -> np.ndarray:
    """Jet of the curly bracket, exact-arithmetic safe near r = 0."""
    if r < _SERIES_SWITCH:
        poly = jets.polynomial(r, _BRACKET_COEFFS)
    else:
        q = jets.power(r, 1) + jets.power(r, -1)
        poly = _SQRT_PI_HALF * (
            jets.polynomial(r, (1.75, 0.0, 0.25))
            + jets.multiply(q, jets.erf_scaled(r, _INV_SQRT2)))
    return poly + jets.gaussian(r, 0.5)


def _display_profile(r: float) -> np.ndarray:
    return _N0_SQUARED * jets.multiply(jets.gaussian(r, 0.5),
                                       _bracket_jet(r))


_ANALYTIC_CACHE: dict[str, DensityModel] = {}


def analytic_density_omega_half() -> DensityModel:
    """The exact omega = 1/2 density, rescaled onto the N = 2 sum rule."""
    cached = _ANALYTIC_CACHE.get("model")
    if cached is not None:
        return cached
    raw = DensityModel(profile=_display_profile, electron_count=2.0,
                       label="hooke(omega=0.5, analytic)")
    grid = grid_for_density(raw)
    measured = integrate_radial(raw.rho, grid)
    scale = 2.0 / measured

    def profile(r: float) -> np.ndarray:
        return scale * _display_profile(r)

    model = DensityModel(profile=profile, electron_count=2.0,
                         label="hooke(omega=0.5, analytic)")
    _ANALYTIC_CACHE["model"] = model
    return model


def density_omega_half(r: float):
    """Density derivatives of the exact omega = 1/2 ground state."""
    if r < 0.0:
        raise ValueError(f"radius must be non-negative, got {r}")
    return analytic_density_omega_half().eval(r)


# ---------------------------------------------------------------------------
# Numerov solver for the relative motion.
# ---------------------------------------------------------------------------

def _series_start(s: np.ndarray, eps: float, omega: float,
                  lam: float) -> np.ndarray:
    """Five-term small-s series u = s + a2 s^2 + ... for the start-up."""
    a2 = lam / 2.0
    b3 = (lam * lam / 2.0 - eps) / 6.0
    b4 = lam * (b3 - eps / 2.0) / 12.0
    b5 = (lam * b4 - eps * b3 + omega * omega / 4.0) / 20.0
    return s * (1.0 + s * (a2 + s * (b3 + s * (b4 + s * b5))))


def _numerov_sweeps(eps: float, omega: float, lam: float,
                    s: np.ndarray):
    """Outward and inward Numerov solutions and the matching index."""
    h = s[1] - s[0]
    n = s.size
    w = np.empty(n)
    w[0] = 0.0  # never used: u(0) = 0 kills the first coefficient
    w[1:] = 0.25 * omega * omega * s[1:] ** 2 - eps
    if lam != 0.0:
        w[1:] += lam / s[1:]
    c = 1.0 - (h * h / 12.0) * w

    turning = 2.0 * math.sqrt(max(eps, 1e-12)) / omega
    m = int(np.clip(turning / h, 0.15 * n, 0.70 * n))

    u_out = np.zeros(n)
    u_out[1:3] = _series_start(s[1:3], eps, omega, lam)
    for k in range(2, m + 2):
        u_out[k + 1] = ((12.0 - 10.0 * c[k]) * u_out[k]
                        - c[k - 1] * u_out[k - 1]) / c[k + 1]
        if abs(u_out[k + 1]) > 1e280:
            u_out[:k + 2] /= 1e280
    u_in = np.zeros(n)
    u_in[n - 1] = 1e-18
    u_in[n - 2] = 1e-18 * math.exp(omega * (2.0 * s[-1] * h - h * h) / 4.0)
    for k in range(n - 2, m - 2, -1):
        u_in[k - 1] = ((12.0 - 10.0 * c[k]) * u_in[k]
                       - c[k + 1] * u_in[k + 1]) / c[k - 1]
        if abs(u_in[k - 1]) > 1e280:
            u_in[k - 1:] /= 1e280
    return u_out, u_in, m, h


def _wronskian(eps: float, omega: float, lam: float, s: np.ndarray) -> float:
    """Matching determinant W = u_out' u_in - u_in' u_out at the seam.

    Unlike a log-derivative mismatch, W is a smooth function of eps with
    zeros exactly at the eigenvalues and no poles (a log-derivative has
    one wherever u_out vanishes at the matching node, typically just
    above each eigenvalue, which can hide the sign change from a coarse
    scan).  Each sweep is normalized by its own peak near the seam so
    the scan sees O(1) numbers; positive scalings do not move zeros.
    """

    u_out, u_in, m, h = _numerov_sweeps(eps, omega, lam, s)
    scale_out = float(np.max(np.abs(u_out[m - 1:m + 2])))
    scale_in = float(np.max(np.abs(u_in[m - 1:m + 2])))
    if scale_out == 0.0 or scale_in == 0.0:
        raise SolverError(
            f"dead matching window at eps={eps:g}: sweep vanished")
    w = ((u_out[m + 1] - u_out[m - 1]) * u_in[m]
         - (u_in[m + 1] - u_in[m - 1]) * u_out[m])
    return w / (2.0 * h * scale_out * scale_in)


def _solve_relative(omega: float, lam: float, n_points: int,
                    s_max: float):
    """Ground-state eigenvalue and normalized u(s) on a uniform grid."""
    s = np.linspace(0.0, s_max, n_points)
    lo = 1.45 * omega
    hi = 1.5 * omega + 4.0 * math.sqrt(omega) + 4.0
    scan = np.linspace(lo, hi, 90)
    bracket = None
    prev_eps, prev_w = scan[0], _wronskian(scan[0], omega, lam, s)
    for eps in scan[1:]:
        cur = _wronskian(eps, omega, lam, s)
        if prev_w * cur <= 0.0:
            bracket = (prev_eps, eps)
            break
        prev_eps, prev_w = eps, cur
    if bracket is None:
        raise SolverError(
            f"no ground-state bracket for omega={omega:g}, lambda={lam:g} "
            f"in [{lo:g}, {hi:g}]")
    eps = brentq(_wronskian, bracket[0], bracket[1],
                 args=(omega, lam, s), xtol=1e-13, rtol=8.9e-16)

    u_out, u_in, m, h = _numerov_sweeps(eps, omega, lam, s)
    u = np.empty_like(s)
    u[:m + 1] = u_out[:m + 1]
    u[m:] = u_in[m:] * (u_out[m] / u_in[m])
    norm = simpson(u * u, x=s)
    u /= math.sqrt(norm)
    if u[np.argmax(np.abs(u))] < 0.0:
        u = -u
    nodes = int(np.count_nonzero(u[1:-1] * u[2:] < 0.0))
    if nodes != 0:
        raise SolverError(
            f"matched state at eps={eps:.10g} has {nodes} interior nodes; "
            "expected the nodeless ground state")
    return float(eps), s, u


# ---------------------------------------------------------------------------
# Density reconstruction.
#
# With |Phi_cm|^2 = (2 omega/pi)^(3/2) exp(-2 omega R^2) and
# |phi_rel|^2 = u(s)^2/(4 pi s^2), the angular integral in
# rho(r) = 2 int |Phi_cm(r - s/2)|^2 |phi_rel(s)|^2 d^3s is elementary:
#
#   rho(r) = C/r * int_0^inf (u^2/s)
#              [exp(-2w(r - s/2)^2) - exp(-2w(r + s/2)^2)] ds,
#   C = (2 omega/pi)^(3/2) / (2 omega).
#
# The r-dependence sits in shifted Gaussians, so four derivatives come
# from Hermite polynomials under the (fixed-node) quadrature sum, and a
# short odd Taylor series in r keeps the 1/r division stable near the
# origin.  The closed form integrates to exactly 2 electrons, which is
# verified after reconstruction.
# ---------------------------------------------------------------------------

def _gauss_panels(s_max: float, n_panels: int, order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, s_max, n_panels + 1)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        nodes.append(half * (x + 1.0) + a)
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _reconstruct_density(omega: float, s: np.ndarray, u: np.ndarray,
                         label: str, quad_panels: int = 72,
                         panel_order: int = 12) -> DensityModel:
    c = 2.0 * omega
    sqrt_c = math.sqrt(c)
    pref = (2.0 * omega / math.pi) ** 1.5 / (2.0 * omega)

    u_spline = InterpolatedUnivariateSpline(s, u, k=5)
    nodes, weights = _gauss_panels(float(s[-1]), quad_panels, panel_order)
    w_of_s = weights * u_spline(nodes) ** 2 / nodes
    half_nodes = 0.5 * nodes

    # Odd moments J_k(0) for the near-origin series of rho = C J(r)/r.
    x0 = sqrt_c * half_nodes
    herm0 = jets.hermite_values(x0, 9)
    gauss0 = np.exp(-x0 * x0)
    series_coeffs = np.zeros(9)
    for k_odd in (1, 3, 5, 7, 9):
        j_k = 2.0 * sqrt_c ** k_odd * float(
            np.sum(w_of_s * herm0[k_odd] * gauss0))
        series_coeffs[k_odd - 1] = pref * j_k / math.factorial(k_odd)
    switch = 0.2 / sqrt_c

    def profile(r: float) -> np.ndarray:
        if r < switch:
            return jets.polynomial(r, series_coeffs)
        x_minus = sqrt_c * (r - half_nodes)
        x_plus = sqrt_c * (r + half_nodes)
        g_minus = np.exp(-x_minus * x_minus)
        g_plus = np.exp(-x_plus * x_plus)
        h_minus = jets.hermite_values(x_minus, 4)
        h_plus = jets.hermite_values(x_plus, 4)
        j_jet = np.empty(jets.ORDERS)
        sign = 1.0
        for k in range(jets.ORDERS):
            j_jet[k] = sign * float(
                np.sum(w_of_s * (h_minus[k] * g_minus - h_plus[k] * g_plus)))
            sign *= -sqrt_c
        return pref * jets.multiply(jets.power(r, -1), j_jet)

    # Beyond s_max/2 plus the representable width of exp(-c t^2) every
    # kernel underflows to zero; stop trusting the profile well before.
    support = 0.5 * float(s[-1]) + 0.8 * math.sqrt(708.0 / c)
    return DensityModel(profile=profile, electron_count=2.0, label=label,
                        r_support=support)


def solve_general(params: HookeParams, n_points: int = 8001,
                  s_max: float | None = None, quad_panels: int = 72,
                  panel_order: int = 12) -> HookeSolution:
    """Solve the ground state at any omega and rebuild the density.

    The relative equation is integrated by Numerov sweeps matched at the
    classical turning point; the eigenvalue is bracketed by a mismatch
    scan filtered to zero interior nodes, then polished by Brent.  The
    reconstructed density must pass the N = 2 sum rule to 1e-6 or the
    solve is rejected.
    """

    omega = params.omega
    lam = 1.0 if params.interacting else 0.0
    if s_max is None:
        s_max = 12.0 / math.sqrt(omega)
    eps_rel, s, u = _solve_relative(omega, lam, n_points, s_max)

    # <T_rel> = eps_rel - <V_rel>, avoiding numerical differentiation.
    v_pot = 0.25 * omega * omega * s ** 2
    pot_density = v_pot * u * u
    if lam != 0.0:
        coulomb = np.zeros_like(s)
        coulomb[1:] = lam * u[1:] ** 2 / s[1:]
        pot_density = pot_density + coulomb
    t_rel = eps_rel - simpson(pot_density, x=s)

    eps_cm = 1.5 * omega
    label = (f"hooke(omega={omega:g}, "
             f"{'interacting' if params.interacting else 'non-interacting'})")
    density = _reconstruct_density(omega, s, u, label,
                                   quad_panels=quad_panels,
                                   panel_order=panel_order)

    grid = grid_for_density(density)
    count = integrate_radial(density.rho, grid)
    if abs(count - 2.0) > 1e-6:
        raise SolverError(
            f"reconstructed density integrates to {count:.10f}, not 2")

    t_s = singlet_ks_kinetic(density, grid)
    return HookeSolution(
        params=params,
        density=density,
        T_exact=t_s,
        E_total=eps_cm + eps_rel,
        eps_cm=eps_cm,
        eps_rel=float(eps_rel),
        kinetic_expectation=0.75 * omega + float(t_rel),
    )
