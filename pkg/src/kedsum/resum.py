"""Pointwise resummation of the gradient expansion and total energies.

The expansion tau0 + tau2 + tau4 + tau6 is asymptotic: for real
densities the sixth-order term diverges in nuclear cusps and in the
exponential tail, so summing more terms does not converge.  The cure
examined here is a pointwise Pade approximant in the order-counting
variable x (tau_n carries x^(n/2), x = 1 physically):

    [1/1]:  tau0 + tau2^2 / (tau2 - tau4)
    [2/1]:  tau0 + tau2 + tau4^2 / (tau4 - tau6)

Both match the series through their construction order and stay
integrable where the raw sixth-order term blows up.  The price is a
simple pole wherever the denominator crosses zero; the radial integral
is then taken as a Cauchy principal value (see ``radial``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .kedf import TauPoint, tau_point
from .radial import (DensityModel, RadialGrid, find_poles,
                     integrate_radial, principal_value_integrate)


class PadePole(ArithmeticError):
    """A Pade evaluation landed exactly on its denominator zero.

    Raised instead of returning a sentinel so callers cannot mistake a
    pole for a value; integration routes around poles via the
    principal-value machinery instead of catching this.
    """


class ResumMethod(enum.Enum):
    """The five ways this package turns tau terms into an energy."""

    T0 = "t0"
    T02 = "t02"
    T024 = "t024"
    PADE11 = "pade11"
    PADE21 = "pade21"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def is_pade(self) -> bool:
        return self in (ResumMethod.PADE11, ResumMethod.PADE21)

    @classmethod
    def parse(cls, token: str) -> "ResumMethod":
        key = token.strip().lower().replace("+", "").replace("/", "")
        key = key.replace("[", "").replace("]", "")
        aliases = {
            "t0": cls.T0,
            "t02": cls.T02,
            "t0t2": cls.T02,
            "t024": cls.T024,
            "t0t2t4": cls.T024,
            "pade11": cls.PADE11,
            "11": cls.PADE11,
            "pade21": cls.PADE21,
            "21": cls.PADE21,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown method {token!r}; choose from "
                             f"{', '.join(m.value for m in cls)}") from None


_LABELS = {
    ResumMethod.T0: "T0",
    ResumMethod.T02: "T0+T2",
    ResumMethod.T024: "T0+T2+T4",
    ResumMethod.PADE11: "T[1/1]",
    ResumMethod.PADE21: "T[2/1]",
}

ALL_METHODS = (ResumMethod.T0, ResumMethod.T02, ResumMethod.T024,
               ResumMethod.PADE11, ResumMethod.PADE21)


@dataclass(frozen=True)
class KineticReport:
    """Result of integrating one method over one density."""

    method: ResumMethod
    T: float
    t_ref: float | None = None
    poles: tuple[float, ...] = ()

    @property
    def percent_error(self) -> float:
        if self.t_ref is None:
            raise ValueError("report has no reference energy")
        return percent_error(self.T, self.t_ref)

    def with_reference(self, t_ref: float) -> "KineticReport":
        return replace(self, t_ref=t_ref)


def percent_error(t: float, t_ref: float) -> float:
    """100 (T - T_ref) / T_ref; negative means underestimation."""
    if t_ref == 0.0:
        raise ValueError("reference energy is zero")
    return 100.0 * (t - t_ref) / t_ref


def partial_sum(p: TauPoint, order: int) -> float:
    """Sum of the expansion through the given (even) order."""
    if order == 0:
        return p.tau0
    if order == 2:
        return p.tau0 + p.tau2
    if order == 4:
        return p.tau0 + p.tau2 + p.tau4
    if order == 6:
        return p.tau0 + p.tau2 + p.tau4 + p.tau6
    raise ValueError(f"order must be 0, 2, 4 or 6, got {order!r}")


def pade11(p: TauPoint) -> float:
    """[1/1] resummation tau0 + tau2^2 / (tau2 - tau4).

    When tau2 == tau4 == 0 the correction is removable and the value is
    the zeroth partial sum; when only the denominator vanishes the point
    is a genuine pole and PadePole is raised.
    """

    den = p.tau2 - p.tau4
    if den == 0.0:
        if p.tau2 == 0.0:
            return p.tau0
        raise PadePole(f"[1/1] pole: tau2 == tau4 == {p.tau2!r}")
    return p.tau0 + p.tau2 * p.tau2 / den


def pade21(p: TauPoint) -> float:
    """[2/1] resummation tau0 + tau2 + tau4^2 / (tau4 - tau6)."""
    den = p.tau4 - p.tau6
    if den == 0.0:
        if p.tau4 == 0.0:
            return p.tau0 + p.tau2
        raise PadePole(f"[2/1] pole: tau4 == tau6 == {p.tau4!r}")
    return p.tau0 + p.tau2 + p.tau4 * p.tau4 / den


def pade21_of_x(p: TauPoint, x: float) -> float:
    """[2/1] approximant in the order-counting variable x.

    f(x) = tau0 + tau2 x + tau4^2 x^2 / (tau4 - tau6 x); f(1) = pade21.
    Matches the series tau0 + tau2 x + tau4 x^2 + tau6 x^3 through x^3,
    with remainder tau6^2 x^4 / (tau4 - tau6 x).
    """

    den = p.tau4 - p.tau6 * x
    if den == 0.0:
        if p.tau4 == 0.0:
            return p.tau0 + p.tau2 * x
        raise PadePole(f"[2/1](x={x!r}) pole: tau4 == tau6 x")
    return p.tau0 + p.tau2 * x + p.tau4 * p.tau4 * x * x / den


def _evaluator(method: ResumMethod) -> Callable[[TauPoint], float]:
    return {
        ResumMethod.T0: lambda p: partial_sum(p, 0),
        ResumMethod.T02: lambda p: partial_sum(p, 2),
        ResumMethod.T024: lambda p: partial_sum(p, 4),
        ResumMethod.PADE11: pade11,
        ResumMethod.PADE21: pade21,
    }[method]


def _denominator(method: ResumMethod) -> Callable[[TauPoint], float] | None:
    if method is ResumMethod.PADE11:
        return lambda p: p.tau2 - p.tau4
    if method is ResumMethod.PADE21:
        return lambda p: p.tau4 - p.tau6
    return None


def integrate_method(model: DensityModel, method: ResumMethod,
                     grid: RadialGrid,
                     t_ref: float | None = None) -> KineticReport:
    """Total kinetic energy of one method over one density.

    Partial sums integrate directly.  Pade methods first scan the grid
    for sign changes of their denominator; any poles found switch the
    integral over to the principal-value route and are recorded in the
    report.
    """

    evaluate = _evaluator(method)

    def integrand(r: float) -> float:
        return evaluate(tau_point(model.eval(r), r))

    denom = _denominator(method)
    if denom is None:
        value = integrate_radial(integrand, grid)
        return KineticReport(method=method, T=value, t_ref=t_ref)

    def denominator(r: float) -> float:
        return denom(tau_point(model.eval(r), r))

    poles = find_poles(denominator, grid)
    value = principal_value_integrate(integrand, poles, grid)
    return KineticReport(method=method, T=value, t_ref=t_ref,
                         poles=tuple(poles))


def run_methods(model: DensityModel, methods, grid: RadialGrid,
                t_ref: float) -> list[KineticReport]:
    """Convenience: integrate several methods against one reference."""
    return [integrate_method(model, m, grid, t_ref=t_ref) for m in methods]


def pade11_tail_exponent(model: DensityModel, grid: RadialGrid,
                         rho_window: tuple[float, float] = (1e-11, 1e-5),
                         ) -> float:
    """Diagnostic: log-log slope of the [1/1] correction against rho.

    The correction tau2^2/(tau2 - tau4) should fade like a positive
    power of rho (dimensional counting suggests roughly rho^(7/3) once
    tau4 dominates), so the integral gains no spurious tail weight.
    Returns the fitted slope over the tail window; purely informative,
    nothing asserts a particular value.
    """

    lo, hi = rho_window
    radii, corr = [], []
    for r in grid.nodes:
        if r <= 0.0:
            continue
        d = model.eval(r)
        if not (lo <= d.rho <= hi):
            continue
        p = tau_point(d, r)
        den = p.tau2 - p.tau4
        if den == 0.0:
            continue
        c = p.tau2 * p.tau2 / den
        if c != 0.0 and math.isfinite(c):
            radii.append(d.rho)
            corr.append(abs(c))
    if len(radii) < 4:
        raise ValueError("tail window contains too few usable nodes")
    slope = np.polyfit(np.log(radii), np.log(corr), 1)[0]
    return float(slope)
