"""Radial grids, density models, quadrature and principal-value integrals.

Everything in this package lives on spherically symmetric densities, so
the only geometry is the radial half-line.  This module owns:

* ``DensityDerivatives`` / ``DensityModel`` -- a density profile carried
  together with its first four radial derivatives,
* ``RadialGrid`` -- scan nodes plus the integration cutoff,
* ``integrate_radial`` -- adaptive quadrature of ``4 pi r^2 f(r)``,
* ``find_poles`` / ``principal_value_integrate`` -- Cauchy principal
  values across simple poles of resummed integrands,
* ``tabulated_derivatives`` -- smoothing-spline densities built from
  ``(r, rho)`` samples, differentiated through ``log rho``.

Quadrature is delegated to QUADPACK (``scipy.integrate.quad``, adaptive
Gauss-Kronrod); splines to FITPACK.  Both sit behind the interfaces
above so callers never touch scipy directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import UnivariateSpline

from . import jets

FOUR_PI = 4.0 * math.pi

# Relative accuracy asked of every radial integral.
QUAD_RELTOL = 1e-10
QUAD_ABSTOL = 1e-13
QUAD_LIMIT = 400

# Tail rule: r_max is grown until the integrand weight
# 4 pi r^2 (tau0 + tau2 + |tau4|) drops below this.  Bounding the
# Thomas-Fermi weight alone is not enough: the bare fourth-order term
# decays like r^6 rho^(1/3), orders of magnitude more slowly than
# rho^(5/3), and truncating its tail visibly shifts the fourth-order
# rows of the accuracy tables.
TAIL_TOLERANCE = 3e-13

# Principal-value window: delta = min(PV_WINDOW_FRACTION * r_pole,
# half the distance to the nearest pole or domain endpoint).
PV_WINDOW_FRACTION = 0.05
# Poles separated by less than twice this floor abort the run.
PV_SEPARATION_FLOOR = 1e-7

_PV_GAUSS_NODES, _PV_GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(64)


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed; carries the best estimate seen."""

    def __init__(self, message: str, best_estimate: float = math.nan,
                 achieved_error: float = math.inf):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.achieved_error = achieved_error


class PrincipalValueError(RuntimeError):
    """Pole layout or residue estimation made the PV integral unsafe."""


@dataclass(frozen=True)
class DensityDerivatives:
    """One density sample: rho and d^k rho/dr^k for k = 1..4."""

    rho: float
    d1: float
    d2: float
    d3: float
    d4: float

    @classmethod
    def from_jet(cls, jet) -> "DensityDerivatives":
        return cls(float(jet[0]), float(jet[1]), float(jet[2]),
                   float(jet[3]), float(jet[4]))

    def as_jet(self) -> np.ndarray:
        return np.array([self.rho, self.d1, self.d2, self.d3, self.d4])

    def scaled(self, g: float) -> "DensityDerivatives":
        return DensityDerivatives(g * self.rho, g * self.d1, g * self.d2,
                                  g * self.d3, g * self.d4)


@dataclass(frozen=True)
class DensityModel:
    """A radial density with four derivatives available at any r > 0.

    ``profile`` maps a radius to a derivative jet (see ``jets``).
    ``electron_count`` is the analytic or measured value of
    ``4 pi int r^2 rho dr``; shipped models must satisfy it to 1e-8
    relative.  ``r_support`` bounds the trustworthy domain for models
    that only exist on a finite table.
    """

    profile: Callable[[float], np.ndarray]
    electron_count: float
    kind: str = "analytic"
    label: str = ""
    r_support: float | None = None

    def eval(self, r: float) -> DensityDerivatives:
        return DensityDerivatives.from_jet(self.profile(r))

    def rho(self, r: float) -> float:
        return float(self.profile(r)[0])


@dataclass(frozen=True)
class RadialGrid:
    """Strictly increasing scan nodes; the last node is the cutoff."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ValueError("grid needs at least two nodes")
        if nodes[0] < 0.0:
            raise ValueError("grid nodes must be nonnegative")
        if np.any(np.diff(nodes) <= 0.0):
            raise ValueError("grid nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)

    @property
    def r_max(self) -> float:
        return float(self.nodes[-1])

    @classmethod
    def power_spaced(cls, r_min: float, r_max: float, n: int,
                     exponent: float = 2.5) -> "RadialGrid":
        """Nodes clustered toward r_min as t**exponent, t in (0, 1]."""
        if not (0.0 <= r_min < r_max):
            raise ValueError("need 0 <= r_min < r_max")
        t = np.linspace(0.0, 1.0, n)
        return cls(r_min + (r_max - r_min) * t ** exponent)


def grid_for_density(model: DensityModel, n: int = 1600,
                     exponent: float = 2.5,
                     tail_tolerance: float = TAIL_TOLERANCE) -> RadialGrid:
    """Pick a cutoff by the tail rule and lay power-spaced nodes.

    r_max is grown geometrically until the integrand weight
    4 pi r^2 (tau0 + tau2 + |tau4|) falls below ``tail_tolerance``
    (capped at the model's support when finite).  The fourth-order term
    has the slowest-decaying tail of any integrand this package sums,
    so everything beyond the cutoff is negligible against the table
    precision targeted here; the Thomas-Fermi weight alone is smaller
    still, which keeps the grid invariant satisfied with a wide margin.
    """

    # Imported here: kedf depends on this module for DensityDerivatives.
    from .kedf import tau0, tau2, tau4, contractions

    cap = model.r_support
    r = 1.0 if cap is None else min(1.0, cap)

    def tail_weight(radius: float) -> float:
        d = model.eval(radius)
        if d.rho <= 0.0:
            return 0.0
        c = contractions(d, radius)
        weight = tau0(d.rho) + tau2(d.rho, c.g2) + abs(tau4(c, d.rho))
        return FOUR_PI * radius * radius * weight

    while tail_weight(r) > tail_tolerance:
        r *= 1.25
        if cap is not None and r >= cap:
            r = cap
            break
        if r > 1e4:
            raise ValueError("tail rule did not terminate; density does "
                             "not decay")
    r_min = r * 1e-5
    return RadialGrid.power_spaced(r_min, r, n, exponent)


def _quad_segment(g: Callable[[float], float], lo: float, hi: float) -> float:
    value, abserr, info = quad(g, lo, hi, epsabs=QUAD_ABSTOL,
                               epsrel=QUAD_RELTOL, limit=QUAD_LIMIT,
                               full_output=True)[:3]
    # QUADPACK flags trouble through the ier field of the info dict.
    # full_output=True suppresses the warning and lets us raise with the
    # best estimate attached.
    if isinstance(info, dict) and info.get("ier", 0) not in (0,):
        # ier == 2 is roundoff-limited refinement; accept it when the
        # reported error is already tiny relative to the value.
        ier = info["ier"]
        scale = max(abs(value), 1.0)
        if not (ier == 2 and abserr <= 1e-9 * scale):
            raise QuadratureError(
                f"quadrature on [{lo:g}, {hi:g}] did not converge "
                f"(QUADPACK ier={ier}, estimate {value:.12g}, "
                f"error {abserr:.3g})",
                best_estimate=value, achieved_error=abserr)
    return value


def integrate_radial(f: Callable[[float], float], grid: RadialGrid) -> float:
    """Adaptive estimate of ``4 pi int_0^rmax r^2 f(r) dr``.

    f is checked for finiteness on the grid nodes first, so a broken
    integrand fails loudly with the offending radius instead of
    poisoning the quadrature.
    """

    for r in grid.nodes:
        if r == 0.0:
            continue
        val = f(r)
        if not math.isfinite(val):
            raise QuadratureError(
                f"integrand is not finite at node r={r:.12g} (got {val})")

    def weighted(r: float) -> float:
        if r <= 0.0:
            return 0.0
        return FOUR_PI * r * r * f(r)

    return _quad_segment(weighted, 0.0, grid.r_max)


def find_poles(denominator: Callable[[float], float],
               grid: RadialGrid) -> list[float]:
    """Locate sign changes of ``denominator`` between adjacent nodes.

    Each bracket is narrowed by bisection until its width drops below
    1e-12 * r_max.  Only odd-order (sign-changing) roots are seen, which
    is what the principal-value machinery can handle anyway.
    """

    nodes = grid.nodes[grid.nodes > 0.0]
    values = np.array([denominator(r) for r in nodes])
    if not np.all(np.isfinite(values)):
        bad = nodes[~np.isfinite(values)][0]
        raise ValueError(f"denominator is not finite at r={bad:.12g}")

    width_target = 1e-12 * grid.r_max
    poles: list[float] = []
    for i in range(len(nodes) - 1):
        a, b = float(nodes[i]), float(nodes[i + 1])
        fa, fb = float(values[i]), float(values[i + 1])
        if fa == 0.0:
            poles.append(a)
            continue
        if fa * fb >= 0.0:
            continue
        while b - a > width_target:
            mid = 0.5 * (a + b)
            fm = denominator(mid)
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0.0:
                b = mid
            else:
                a, fa = mid, fm
        poles.append(0.5 * (a + b))
    if values[-1] == 0.0:
        poles.append(float(nodes[-1]))
    return sorted(poles)


def _pole_windows(poles: Sequence[float], r_max: float) -> list[float]:
    """Symmetric half-widths delta for each pole, per the window rule."""
    deltas = []
    for i, pole in enumerate(poles):
        delta = PV_WINDOW_FRACTION * pole
        if i > 0:
            delta = min(delta, 0.5 * (pole - poles[i - 1]))
        if i + 1 < len(poles):
            delta = min(delta, 0.5 * (poles[i + 1] - pole))
        delta = min(delta, 0.5 * pole, 0.5 * (r_max - pole))
        deltas.append(delta)
    return deltas


def _residue(g: Callable[[float], float], pole: float, delta: float) -> float:
    """Estimate A = lim (r - r*) g(r) by two-sided Richardson steps.

    The symmetric average kills the odd error terms, so the ladder
    converges as h^2, h^4, ...  A ladder that does not settle flags a
    pole that is not simple, and the PV prescription does not apply.
    """

    steps = [delta / 2.0, delta / 4.0, delta / 8.0, delta / 16.0]
    averages = []
    for h in steps:
        averages.append(0.5 * (h * g(pole + h) - h * g(pole - h)))
    # One Richardson sweep in h^2, then another in h^4.
    first = [(4.0 * averages[i + 1] - averages[i]) / 3.0
             for i in range(len(averages) - 1)]
    second = [(16.0 * first[i + 1] - first[i]) / 15.0
              for i in range(len(first) - 1)]
    best, previous = second[-1], second[-2]
    edge_scale = delta * max(abs(g(pole + delta)), abs(g(pole - delta)))
    scale = max(abs(best), edge_scale, 1e-30)
    # Deliberately coarse test: an odd-order pole makes the ladder grow
    # by factors of four per step, so the mismatch lands at order one,
    # while spline-backed densities merely stall at a small smoothness
    # floor that a tight tolerance would misread as a bad pole.
    if abs(best - previous) > 1e-2 * scale:
        raise PrincipalValueError(
            f"residue estimate did not converge at r={pole:.8g} "
            f"(ladder {averages} -> {best:.6g}); pole does not look simple")
    return best


def _window_integral(g: Callable[[float], float], pole: float,
                     delta: float) -> float:
    """Integral of g - A/(r - r*) over the symmetric window.

    Evaluated as int_0^delta [g(r*+t) + g(r*-t)] dt: mirrored nodes make
    the subtracted 1/(r - r*) term cancel pairwise, so its symmetric
    principal value is zero exactly by construction.  The folded
    integrand is smooth, so a fixed Gauss-Legendre rule suffices.
    """

    t = 0.5 * delta * (_PV_GAUSS_NODES + 1.0)
    w = 0.5 * delta * _PV_GAUSS_WEIGHTS
    total = 0.0
    for ti, wi in zip(t, w):
        total += wi * (g(pole + ti) + g(pole - ti))
    return total


def principal_value_integrate(f: Callable[[float], float],
                              poles: Sequence[float],
                              grid: RadialGrid) -> float:
    """Cauchy principal value of ``4 pi int r^2 f dr`` across simple poles.

    With no poles this is exactly ``integrate_radial``.  Otherwise the
    domain is split into plain segments plus a symmetric window around
    each pole; the window uses pole subtraction (see _window_integral)
    and the residue ladder doubles as a simple-pole sanity check.
    """

    poles = sorted(float(p) for p in poles)
    if not poles:
        return integrate_radial(f, grid)

    r_max = grid.r_max
    for pole in poles:
        if not (0.0 < pole < r_max):
            raise PrincipalValueError(
                f"pole at r={pole:.8g} lies outside (0, r_max)")
    floor = PV_SEPARATION_FLOOR * r_max
    for left, right in zip(poles, poles[1:]):
        if right - left < 2.0 * floor:
            raise PrincipalValueError(
                f"poles at r={left:.8g} and r={right:.8g} are too close "
                "to separate with symmetric windows")

    def weighted(r: float) -> float:
        if r <= 0.0:
            return 0.0
        return FOUR_PI * r * r * f(r)

    deltas = _pole_windows(poles, r_max)
    total = 0.0
    cursor = 0.0
    for pole, delta in zip(poles, deltas):
        if pole - delta > cursor:
            total += _quad_segment(weighted, cursor, pole - delta)
        _residue(weighted, pole, delta)
        total += _window_integral(weighted, pole, delta)
        cursor = pole + delta
    if cursor < r_max:
        total += _quad_segment(weighted, cursor, r_max)
    return total


def load_density_table(path) -> tuple[np.ndarray, np.ndarray]:
    """Read (r, rho) samples from a text table.

    Two formats are accepted: a plain two-column ``r rho`` file ('#'
    starts a comment), or a CSV with a header row naming ``r`` and
    ``rho`` columns, which is what the dump command writes, so its
    output can be fed straight back in.
    """

    with open(path, "r", encoding="utf-8") as fh:
        first = ""
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                first = line
                break
    if any(ch.isalpha() for ch in first):
        names = [c.strip() for c in first.split(",")]
        if "r" not in names or "rho" not in names:
            raise ValueError(
                f"{path}: header row lacks 'r' and 'rho' columns: {first!r}")
        try:
            data = np.loadtxt(path, comments="#", delimiter=",",
                              skiprows=1, usecols=(names.index("r"),
                                                   names.index("rho")),
                              ndmin=2)
        except ValueError as exc:
            raise ValueError(f"{path}: could not parse density CSV: {exc}")
        return data[:, 0].copy(), data[:, 1].copy()
    try:
        data = np.loadtxt(path, comments="#", ndmin=2)
    except ValueError as exc:
        raise ValueError(f"{path}: could not parse density table: {exc}")
    if data.shape[1] != 2:
        raise ValueError(
            f"{path}: expected two columns (r rho), got {data.shape[1]}")
    return data[:, 0].copy(), data[:, 1].copy()


def tabulated_derivatives(r: np.ndarray, rho: np.ndarray,
                          smoothing: float = 0.0,
                          label: str = "tabulated") -> DensityModel:
    """Density model from samples, differentiated through ``log rho``.

    A degree-5 smoothing spline is fitted to log(rho); rho and its four
    derivatives follow from the chain rule.  Working in log space keeps
    the model positive and tames the dynamic range of atomic tails.
    """

    r = np.asarray(r, dtype=float)
    rho = np.asarray(rho, dtype=float)
    if r.ndim != 1 or r.shape != rho.shape:
        raise ValueError("r and rho must be matching 1-d arrays")
    if r.size < 12:
        raise ValueError(
            f"insufficient samples for a quintic fit: got {r.size}, "
            "need at least 12")
    if np.any(np.diff(r) <= 0.0):
        raise ValueError("radii must be strictly increasing")
    if np.any(rho < 0.0):
        bad = r[rho < 0.0][0]
        raise ValueError(f"negative density sample at r={bad:.8g}")
    if np.any(rho == 0.0):
        bad = r[rho == 0.0][0]
        raise ValueError(
            f"zero density sample at r={bad:.8g}; log-space fit needs "
            "strictly positive samples")

    spline = UnivariateSpline(r, np.log(rho), k=5, s=smoothing)
    dsplines = [spline.derivative(k) for k in range(1, 5)]

    def profile(radius: float) -> np.ndarray:
        y1 = float(dsplines[0](radius))
        y2 = float(dsplines[1](radius))
        y3 = float(dsplines[2](radius))
        y4 = float(dsplines[3](radius))
        value = math.exp(float(spline(radius)))
        # Faa di Bruno for exp(y(r)).
        return np.array([
            value,
            value * y1,
            value * (y2 + y1 * y1),
            value * (y3 + 3.0 * y1 * y2 + y1 ** 3),
            value * (y4 + 4.0 * y1 * y3 + 3.0 * y2 * y2
                     + 6.0 * y1 * y1 * y2 + y1 ** 4),
        ])

    model = DensityModel(profile=profile, electron_count=math.nan,
                         kind="tabulated", label=label,
                         r_support=float(r[-1]))
    count = integrate_radial(model.rho, RadialGrid(r if r[0] > 0.0
                                                   else r[1:]))
    return DensityModel(profile=profile, electron_count=count,
                        kind="tabulated", label=label,
                        r_support=float(r[-1]))
