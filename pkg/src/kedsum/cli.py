"""Command-line front end: accuracy tables and per-radius diagnostics.

Three subcommands: ``hooke`` prints one table row for a harmonically
confined electron pair, ``atom`` does the same for a Slater-basis
atomic density, and ``dump`` writes the raw tau terms radius by radius
to CSV for plotting.  Exit codes: 0 success, 2 usage, 3 bad data,
4 numerical failure.
"""

from __future__ import annotations

import csv
import math
import sys
from pathlib import Path

import click
import numpy as np

from .atoms import BasisError, STOBasisSet, bundled_basis, density_model, \
    hf_kinetic, list_bundled, parse_sto
from .hooke import HookeParams, SolverError, analytic_density_omega_half, \
    singlet_ks_kinetic, solve_general
from .kedf import tau_point
from .radial import PV_WINDOW_FRACTION, DensityModel, PrincipalValueError, \
    QuadratureError, find_poles, grid_for_density, load_density_table, \
    tabulated_derivatives
from .resum import ALL_METHODS, PadePole, ResumMethod, pade11, pade21, \
    run_methods

EXIT_DATA = 3
EXIT_NUMERICAL = 4


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_methods(spec: str) -> tuple[ResumMethod, ...]:
    if spec.strip().lower() == "all":
        return ALL_METHODS
    methods = []
    for token in spec.split(","):
        if not token.strip():
            continue
        try:
            methods.append(ResumMethod.parse(token))
        except ValueError as exc:
            raise click.BadParameter(str(exc))
    if not methods:
        raise click.BadParameter("no methods given")
    return tuple(methods)


def _emit_row(headers, row, csv_path):
    """Print an aligned row; mirror it to CSV when asked."""
    widths = [max(len(h), len(v)) for h, v in zip(headers, row)]
    click.echo("  ".join(h.rjust(w) for h, w in zip(headers, widths)))
    click.echo("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    if csv_path:
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(headers)
            writer.writerow(row)
        click.echo(f"wrote {csv_path}")


def _error_columns(model, t_ref, methods):
    grid = grid_for_density(model)
    reports = run_methods(model, methods, grid, t_ref)
    return [f"{rep.percent_error:+.2f}" for rep in reports]


@click.group()
@click.version_option(package_name="kedsum")
def main():
    """Gradient-expansion kinetic energies on spherical densities."""


@main.command()
@click.option("--omega", type=float, required=True,
              help="Confinement frequency (hartree).")
@click.option("--non-interacting", is_flag=True, default=False,
              help="Drop the electron-electron repulsion.")
@click.option("--methods", default="all", show_default=True,
              help="Comma-separated subset of t0,t02,t024,pade11,pade21.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False),
              default=None, help="Also write the row to this CSV file.")
def hooke(omega, non_interacting, methods, csv_path):
    """One accuracy-table row for a harmonically confined pair."""
    if not (omega > 0.0 and math.isfinite(omega)):
        raise click.BadParameter("--omega must be positive")
    method_list = _parse_methods(methods)
    try:
        if (not non_interacting) and omega == 0.5:
            model = analytic_density_omega_half()
            grid = grid_for_density(model)
            t_ref = singlet_ks_kinetic(model, grid)
        else:
            params = HookeParams(omega=omega,
                                 interacting=not non_interacting)
            solution = solve_general(params)
            model, t_ref = solution.density, solution.T_exact
        errors = _error_columns(model, t_ref, method_list)
    except SolverError as exc:
        _fail(EXIT_NUMERICAL, f"solver failed: {exc}")
    except (QuadratureError, PrincipalValueError, PadePole) as exc:
        _fail(EXIT_NUMERICAL, str(exc))
    headers = ["omega", "T_s"] + [f"err%[{m.label}]" for m in method_list]
    row = [f"{omega:g}", f"{t_ref:.6g}"] + errors
    _emit_row(headers, row, csv_path)


def _load_basis(spec: str) -> STOBasisSet:
    path = Path(spec)
    if path.is_file():
        return parse_sto(path)
    key = spec.strip().lower()
    if key in list_bundled():
        return bundled_basis(key)
    raise BasisError(f"{spec!r} is neither a file nor a bundled basis "
                     f"({', '.join(list_bundled())})")


@main.command()
@click.option("--basis", required=True,
              help="Basis JSON path, or a bundled element key (e.g. ne).")
@click.option("--methods", default="all", show_default=True,
              help="Comma-separated subset of t0,t02,t024,pade11,pade21.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False),
              default=None, help="Also write the row to this CSV file.")
def atom(basis, methods, csv_path):
    """One accuracy-table row for a Slater-basis atomic density."""
    method_list = _parse_methods(methods)
    try:
        basis_set = _load_basis(basis)
    except BasisError as exc:
        _fail(EXIT_DATA, str(exc))
    try:
        model = density_model(basis_set)
        t_ref = hf_kinetic(basis_set)
        errors = _error_columns(model, t_ref, method_list)
    except (QuadratureError, PrincipalValueError, PadePole) as exc:
        _fail(EXIT_NUMERICAL, str(exc))
    headers = (["element", "T_HF"]
               + [f"err%[{m.label}]" for m in method_list])
    row = [basis_set.element, f"{t_ref:.6g}"] + errors
    _emit_row(headers, row, csv_path)


DUMP_COLUMNS = ["r", "rho", "tau0", "tau2", "tau4", "tau6",
                "sum2", "sum4", "pade11", "pade21", "flags"]


def _dump_model(omega, basis, table) -> tuple[DensityModel, np.ndarray | None]:
    sources = sum(x is not None for x in (omega, basis, table))
    if sources != 1:
        raise click.UsageError(
            "pick exactly one of --omega, --basis, --table")
    if omega is not None:
        if not (omega > 0.0 and math.isfinite(omega)):
            raise click.BadParameter("--omega must be positive")
        if omega == 0.5:
            return analytic_density_omega_half(), None
        return solve_general(HookeParams(omega=omega)).density, None
    if basis is not None:
        return density_model(_load_basis(basis)), None
    r, rho = load_density_table(table)
    return tabulated_derivatives(r, rho, label=str(table)), r


@main.command()
@click.option("--omega", type=float, default=None,
              help="Harmonic pair density at this frequency.")
@click.option("--basis", default=None,
              help="Atomic density from this basis file or element key.")
@click.option("--table", type=click.Path(exists=False), default=None,
              help="Tabulated density (r rho file, or a previous dump).")
@click.option("--rmax", type=float, default=None,
              help="Largest radius [default: the tail-rule radius].")
@click.option("--points", type=int, default=400, show_default=True,
              help="Number of radii (log-spaced).")
@click.option("--csv", "csv_path", required=True,
              type=click.Path(dir_okay=False),
              help="Destination CSV file.")
def dump(omega, basis, table, rmax, points, csv_path):
    """Write per-radius tau terms and resummations to CSV."""
    if points < 2:
        raise click.BadParameter("--points must be at least 2")
    try:
        model, native_r = _dump_model(omega, basis, table)
    except (BasisError, ValueError, OSError) as exc:
        _fail(EXIT_DATA, str(exc))
    except SolverError as exc:
        _fail(EXIT_NUMERICAL, f"solver failed: {exc}")

    try:
        if native_r is not None and rmax is None:
            radii = native_r
        else:
            if rmax is None:
                rmax = grid_for_density(model).r_max
            elif not (rmax > 0.0):
                raise click.BadParameter("--rmax must be positive")
            radii = np.geomspace(rmax * 1e-4, rmax, points)

        grid = grid_for_density(model)
        pole_marks = []
        for name, evaluator in (("pade11", pade11), ("pade21", pade21)):
            for pole in _denominator_poles(model, name, grid):
                pole_marks.append((name, pole))

        rows = []
        for r in radii:
            d = model.eval(float(r))
            p = tau_point(d, float(r))
            cells = [d.rho, p.tau0, p.tau2, p.tau4, p.tau6,
                     p.tau0 + p.tau2, p.tau0 + p.tau2 + p.tau4]
            flags = []
            for name, fn in (("pade11", pade11), ("pade21", pade21)):
                try:
                    cells.append(fn(p))
                except PadePole:
                    cells.append(float("nan"))
                    flags.append(f"{name}-pole")
            for name, pole in pole_marks:
                if abs(r - pole) < PV_WINDOW_FRACTION * pole:
                    mark = f"{name}-pole"
                    if mark not in flags:
                        flags.append(mark)
            rows.append([f"{r:.12g}"] + [f"{c:.12g}" for c in cells]
                        + [" ".join(flags)])
    except (QuadratureError, PrincipalValueError) as exc:
        _fail(EXIT_NUMERICAL, str(exc))

    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DUMP_COLUMNS)
        writer.writerows(rows)
    click.echo(f"wrote {len(rows)} rows to {csv_path}")


def _denominator_poles(model, name, grid):
    from .resum import _denominator
    method = ResumMethod.PADE11 if name == "pade11" else ResumMethod.PADE21
    denominator = _denominator(method)

    def den(r):
        return denominator(tau_point(model.eval(r), r))

    try:
        return find_poles(den, grid)
    except Exception:
        return []


if __name__ == "__main__":
    main()
