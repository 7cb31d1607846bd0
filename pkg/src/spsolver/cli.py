"""Command-line front end.

Three study modes over one plain-text ``key = value`` configuration:

    groundstate   compute the ground state (spectral or finite-difference)
    evolve        propagate the unit-mass Gaussian and record observables
    sweep         mesh-refinement study of the ground state against a
                  designated benchmark

Flags override file values:  --mode, --config FILE, --set key=value
(repeatable), --out-dir, --prefix, --no-plot.  Outputs are deterministic
CSV files plus a human-readable summary and, unless disabled, PNG figures.

Exit codes: 0 success, 2 configuration error, 3 solver non-convergence,
4 numerical failure.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import plots
from .befd import befd_ground_state
from .dynamics import TsspConfig, evolve
from .errors import ConfigError, ConvergenceError, NumericalError
from .grid import RadialGrid
from .ground_state import GfdnConfig, compute_ground_state
from .model import (
    TWO_SQRT_PI,
    HarmonicPotential,
    PhysicsParams,
    TabulatedPotential,
    ZeroPotential,
    gaussian_initial,
    mass,
)
from .output import (
    write_observables_csv,
    write_phi_csv,
    write_snapshot_csv,
    write_summary,
    write_sweep_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NO_CONVERGENCE = 3
EXIT_NUMERICAL = 4


def _number(text):
    """Float with a/b fraction support, so meshes like 1/64 stay exact."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return float(num) / float(den)
    return float(text)


def _parse_mode(v):
    if v not in ("groundstate", "evolve", "sweep"):
        raise ValueError(f"must be groundstate, evolve or sweep, got '{v}'")
    return v


def _parse_method(v):
    if v not in ("besp", "befd"):
        raise ValueError(f"must be besp or befd, got '{v}'")
    return v


def _parse_benchmark_method(v):
    if v not in ("besp", "befd", "harmonic"):
        raise ValueError(f"must be besp, befd or harmonic, got '{v}'")
    return v


def _parse_R(v):
    x = _number(v)
    if not np.isfinite(x) or x <= 0:
        raise ValueError(f"must be positive and finite, got {v}")
    return x


def _parse_J(v):
    x = int(v)
    if x < 4:
        raise ValueError(f"must be at least 4, got {x}")
    if x % 2 != 0:
        raise ValueError(f"must be even, got {x}")
    return x


def _parse_float(v):
    x = _number(v)
    if not np.isfinite(x):
        raise ValueError(f"must be finite, got {v}")
    return x


def _parse_positive(v):
    x = _number(v)
    if not np.isfinite(x) or x <= 0:
        raise ValueError(f"must be positive, got {v}")
    return x


def _parse_nonnegative(v):
    x = _number(v)
    if not np.isfinite(x) or x < 0:
        raise ValueError(f"must be nonnegative, got {v}")
    return x


def _parse_tolerance(v):
    x = _number(v)
    if not (0.0 < x < 1.0):
        raise ValueError(f"must lie in (0, 1), got {v}")
    return x


def _parse_cap(v):
    x = int(v)
    if x < 1:
        raise ValueError(f"must be a positive integer, got {v}")
    return x


def _parse_bool(v):
    low = v.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"must be a boolean, got '{v}'")


def _parse_number_list(v):
    items = [s for s in (piece.strip() for piece in v.split(",")) if s]
    return tuple(_number(s) for s in items)


def _parse_string(v):
    return v


# key -> (parser, default as text)
_KEYS = {
    "mode": (_parse_mode, "groundstate"),
    "R": (_parse_R, "8"),
    "J": (_parse_J, "128"),
    "c_p": (_parse_float, "100"),
    "alpha": (_parse_float, "1"),
    "potential": (_parse_string, "harmonic:1"),
    "dt": (_parse_positive, "0.01"),
    "tol_outer": (_parse_tolerance, "1e-10"),
    "tol_inner": (_parse_tolerance, "1e-12"),
    "max_outer": (_parse_cap, "50000"),
    "max_inner": (_parse_cap, "500"),
    "method": (_parse_method, "besp"),
    "t_final": (_parse_nonnegative, "10"),
    "record_every": (_parse_cap, "10"),
    "snapshot_times": (_parse_number_list, ""),
    "sweep_h_r": (_parse_number_list, "1, 1/2, 1/4"),
    "benchmark_method": (_parse_benchmark_method, "befd"),
    "benchmark_h_r": (_parse_positive, "1/64"),
    "out_dir": (_parse_string, "."),
    "prefix": (_parse_string, "run"),
    "plot": (_parse_bool, "true"),
}


def _parse_value(key, text, where):
    if key not in _KEYS:
        raise ConfigError(f"{where}: unknown key '{key}'")
    parser, _ = _KEYS[key]
    try:
        return parser(text)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: key '{key}': {exc}") from None


def read_config_file(path):
    """Parse a key = value file; '#' starts a comment, blank lines allowed."""
    entries = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file '{path}': {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{path}:{lineno}: malformed line (expected key = value): '{raw.strip()}'"
            )
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        entries[key] = (_parse_value(key, value, f"{path}:{lineno}"), f"{path}:{lineno}")
    return entries


def resolve_settings(args):
    """Merge defaults, config file, and command-line overrides."""
    settings = {}
    for key, (parser, default) in _KEYS.items():
        settings[key] = (parser(default), "default")
    if args.config:
        settings.update(read_config_file(args.config))
    for item in args.set or []:
        if "=" not in item:
            raise ConfigError(f"--set '{item}': expected key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        settings[key] = (_parse_value(key, value.strip(), f"--set {key}"), "flag")
    if args.mode:
        settings["mode"] = (_parse_value("mode", args.mode, "--mode"), "flag")
    if args.out_dir:
        settings["out_dir"] = (args.out_dir, "flag")
    if args.prefix:
        settings["prefix"] = (args.prefix, "flag")
    if args.no_plot:
        settings["plot"] = (False, "flag")
    return settings


def _echo_lines(settings):
    lines = []
    for key in _KEYS:
        value, source = settings[key]
        if isinstance(value, tuple):
            shown = ", ".join(f"{x:g}" for x in value)
        else:
            shown = f"{value}"
        lines.append(f"{key} = {shown}  [{source}]")
    return lines


def _build_potential(spec_text, grid):
    kind, _, arg = spec_text.partition(":")
    kind = kind.strip()
    if kind == "zero":
        return ZeroPotential()
    if kind == "harmonic":
        gamma = _number(arg) if arg else 1.0
        return HarmonicPotential(gamma)
    if kind == "file":
        if not arg:
            raise ConfigError("potential: file form needs a path, 'file:PATH'")
        try:
            values = np.loadtxt(arg)
        except OSError as exc:
            raise ConfigError(f"potential: cannot read '{arg}': {exc}") from None
        pot = TabulatedPotential(values)
        pot.values(grid)  # length check against the run grid
        return pot
    raise ConfigError(
        f"potential: unknown form '{spec_text}' (use zero, harmonic[:gamma], file:PATH)"
    )


def _val(settings, key):
    return settings[key][0]


def _gfdn_config(settings):
    return GfdnConfig(
        dt=_val(settings, "dt"),
        tol_outer=_val(settings, "tol_outer"),
        tol_inner=_val(settings, "tol_inner"),
        max_outer=_val(settings, "max_outer"),
        max_inner=_val(settings, "max_inner"),
    )


def _warn_tail_mass(grid, u, log):
    tail = grid.h_r * float(np.sum(np.abs(u[grid.r_interior > grid.R / 2]) ** 2))
    if tail > 1e-8:
        log(
            f"warning: density mass beyond R/2 is {tail:.3e}; "
            "the domain truncation may contaminate the Hartree field"
        )


def _solve_groundstate(settings, grid, params, log):
    method = _val(settings, "method")
    config = _gfdn_config(settings)
    t0 = time.perf_counter()
    if method == "besp":
        result = compute_ground_state(grid, params, config)
        phi_psi = result.phi_psi
        u_full = np.zeros(grid.J + 1)
        u_full[1:-1] = result.phi_u
    else:
        result = befd_ground_state(grid, params, config)
        phi_psi = result.phi
        u_full = TWO_SQRT_PI * grid.r * phi_psi
        u_full[-1] = 0.0
    seconds = time.perf_counter() - t0
    _warn_tail_mass(grid, u_full[1:-1], log)
    return result, phi_psi, u_full, seconds


def run_groundstate(settings, out_dir, prefix, echo, log):
    grid = RadialGrid(_val(settings, "R"), _val(settings, "J"))
    params = PhysicsParams(
        c_p=_val(settings, "c_p"),
        alpha=_val(settings, "alpha"),
        potential=_build_potential(_val(settings, "potential"), grid),
    )
    result, phi_psi, u_full, seconds = _solve_groundstate(settings, grid, params, log)

    phi_path = out_dir / f"{prefix}_phi.csv"
    write_phi_csv(phi_path, grid.r, np.real(phi_psi), np.real(u_full))
    summary = [
        f"mode = groundstate ({_val(settings, 'method')})",
        f"energy = {result.energy!r}",
        f"outer_iterations = {result.outer_iterations}",
        f"residual = {result.residual!r}",
        f"converged = {result.converged}",
        f"wall_seconds = {seconds:.3f}",
        "",
        "configuration:",
        *echo,
    ]
    write_summary(out_dir / f"{prefix}_summary.txt", summary)
    if _val(settings, "plot"):
        plots.save_groundstate_figure(
            out_dir / f"{prefix}_phi.png", grid.r, np.real(phi_psi), np.real(u_full)
        )
    log(
        f"groundstate: energy = {result.energy!r}, "
        f"iterations = {result.outer_iterations}, residual = {result.residual:.3e}"
    )
    if not result.converged:
        log(f"not converged within max_outer = {_val(settings, 'max_outer')}")
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _snapshot_name(prefix, t):
    return f"{prefix}_snapshot_{t:g}.csv"


def _write_evolve_outputs(out_dir, prefix, grid, trace, settings):
    write_observables_csv(out_dir / f"{prefix}_observables.csv", trace)
    for t, psi in trace.snapshots:
        write_snapshot_csv(out_dir / _snapshot_name(prefix, t), grid.r, psi)
    if _val(settings, "plot"):
        plots.save_observables_figure(
            out_dir / f"{prefix}_observables.png",
            trace.times,
            trace.masses,
            trace.energies,
            trace.psi_origin_abs,
        )
        if len(trace.snapshots) >= 2:
            plots.save_evolution_figure(
                out_dir / f"{prefix}_evolution.png", grid.r, trace.snapshots
            )


def run_evolve(settings, out_dir, prefix, echo, log):
    grid = RadialGrid(_val(settings, "R"), _val(settings, "J"))
    params = PhysicsParams(
        c_p=_val(settings, "c_p"),
        alpha=_val(settings, "alpha"),
        potential=_build_potential(_val(settings, "potential"), grid),
    )
    config = TsspConfig(
        dt=_val(settings, "dt"),
        t_final=_val(settings, "t_final"),
        record_every=_val(settings, "record_every"),
        snapshot_times=_val(settings, "snapshot_times"),
    )
    config.n_steps()  # validate divisibility before doing any work
    u0 = gaussian_initial(grid)
    _warn_tail_mass(grid, u0, log)

    t0 = time.perf_counter()
    try:
        trace = evolve(grid, u0, params, config)
    except NumericalError as exc:
        log(f"numerical failure at t = {exc.time!r}: {exc}")
        partial = getattr(exc, "partial", None)
        if partial is not None:
            _write_evolve_outputs(out_dir, prefix, grid, partial, settings)
            log("partial outputs written")
        return EXIT_NUMERICAL
    seconds = time.perf_counter() - t0

    _write_evolve_outputs(out_dir, prefix, grid, trace, settings)
    drift = float(np.max(np.abs(trace.masses - trace.masses[0])))
    summary = [
        "mode = evolve",
        f"steps = {config.n_steps()}",
        f"recorded = {len(trace.observables)}",
        f"snapshots = {len(trace.snapshots)}",
        f"max_mass_drift = {drift:.3e}",
        f"wall_seconds = {seconds:.3f}",
        "",
        "configuration:",
        *echo,
    ]
    write_summary(out_dir / f"{prefix}_summary.txt", summary)
    log(f"evolve: {config.n_steps()} steps, max mass drift {drift:.3e}")
    return EXIT_OK


def _grid_from_h(R, h, what):
    ratio = R / h
    J = int(round(ratio))
    if abs(ratio - J) > 1e-9 * max(1.0, ratio):
        raise ConfigError(f"{what}: h_r = {h!r} does not divide R = {R} evenly")
    try:
        return RadialGrid(R, J)
    except ConfigError as exc:
        raise ConfigError(f"{what}: {exc}") from None


def _benchmark_psi(settings, R, params_for, config, log):
    method = _val(settings, "benchmark_method")
    if method == "harmonic":
        return None, None  # closed form, evaluated per trial grid
    grid = _grid_from_h(R, _val(settings, "benchmark_h_r"), "benchmark")
    log(f"benchmark: {method} at h_r = {grid.h_r:g} (J = {grid.J})")
    if method == "besp":
        result = compute_ground_state(grid, params_for(grid), config)
        psi = result.phi_psi
    else:
        result = befd_ground_state(grid, params_for(grid), config)
        psi = result.phi
    if not result.converged:
        raise ConvergenceError(
            f"benchmark solve did not converge (residual {result.residual:.3e})",
            residual=result.residual,
        )
    return grid, np.real(psi)


def run_sweep(settings, out_dir, prefix, echo, log):
    R = _val(settings, "R")
    trials = _val(settings, "sweep_h_r")
    if not trials:
        raise ConfigError("sweep: sweep_h_r must list at least one mesh size")
    config = _gfdn_config(settings)

    def params_for(grid):
        return PhysicsParams(
            c_p=_val(settings, "c_p"),
            alpha=_val(settings, "alpha"),
            potential=_build_potential(_val(settings, "potential"), grid),
        )

    bench_grid, bench_psi = _benchmark_psi(settings, R, params_for, config, log)

    rows = []
    all_converged = True
    method = _val(settings, "method")
    for h in trials:
        grid = _grid_from_h(R, h, f"trial h_r = {h:g}")
        if bench_grid is not None:
            if bench_grid.J % grid.J != 0:
                raise ConfigError(
                    f"trial h_r = {h:g} does not nest into the benchmark mesh: "
                    f"trial nodes must coincide with benchmark nodes, so the "
                    f"benchmark J = {bench_grid.J} must be an integer multiple "
                    f"of the trial J = {grid.J}"
                )
            reference = bench_psi[:: bench_grid.J // grid.J]
        else:
            reference = np.pi**-0.75 * np.exp(-grid.r**2 / 2.0)
        t0 = time.perf_counter()
        if method == "besp":
            result = compute_ground_state(grid, params_for(grid), config)
            psi = np.real(result.phi_psi)
        else:
            result = befd_ground_state(grid, params_for(grid), config)
            psi = np.real(result.phi)
        seconds = time.perf_counter() - t0
        all_converged = all_converged and result.converged

        diff = psi - reference
        sup = float(np.max(np.abs(diff)))
        w = np.ones(grid.J + 1)
        w[0] = w[-1] = 0.5
        l2 = float(np.sqrt(grid.h_r * np.sum(w * diff**2)))
        rows.append((grid.h_r, sup, l2, result.energy, seconds))
        log(
            f"trial h_r = {grid.h_r:g}: sup_error = {sup:.6e}, "
            f"l2_error = {l2:.6e}, energy = {result.energy!r}"
        )

    write_sweep_csv(out_dir / f"{prefix}_sweep.csv", rows)
    if _val(settings, "plot"):
        plots.save_sweep_figure(
            out_dir / f"{prefix}_sweep.png",
            [row[0] for row in rows],
            [row[1] for row in rows],
            [row[2] for row in rows],
        )
    summary = [
        f"mode = sweep ({method} vs {_val(settings, 'benchmark_method')})",
        f"trials = {len(rows)}",
        f"converged = {all_converged}",
        "",
        "configuration:",
        *echo,
    ]
    write_summary(out_dir / f"{prefix}_summary.txt", summary)
    return EXIT_OK if all_converged else EXIT_NO_CONVERGENCE


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="spsolver",
        description="Ground states and dynamics of the spherically symmetric "
        "Schrodinger-Poisson-Slater system",
    )
    parser.add_argument("--mode", choices=("groundstate", "evolve", "sweep"))
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override one configuration key (repeatable)",
    )
    parser.add_argument("--out-dir", help="output directory (created if missing)")
    parser.add_argument("--prefix", help="output file prefix")
    parser.add_argument("--no-plot", action="store_true", help="skip PNG figures")
    args = parser.parse_args(argv)

    def log(message):
        print(message)

    try:
        settings = resolve_settings(args)
        echo = _echo_lines(settings)
        for line in echo:
            log(line)
        out_dir = Path(_val(settings, "out_dir"))
        out_dir.mkdir(parents=True, exist_ok=True)
        prefix = _val(settings, "prefix")
        mode = _val(settings, "mode")
        runner = {
            "groundstate": run_groundstate,
            "evolve": run_evolve,
            "sweep": run_sweep,
        }[mode]
        return runner(settings, out_dir, prefix, echo, log)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"solver did not converge: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
