"""Reproducible SE/EE sweeps and the exhaustive phase-search oracle.

Every sweep builds a deterministic list of evaluation points, derives one
seed per point from the master seed, and sorts the emitted rows, so the CSV
output is byte-identical for a fixed (config, seed) at any worker count.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .config import Angles, SystemConfig, validate_config
from .metrics import (PowerConstants, energy_efficiency, max_se_upper_bound,
                      monte_carlo_se, ris_power)
from .phases import PhaseAssignment, los_cascade_gain, optimal_phases, subarray_couplings

CSV_FIELDS = ("scheme", "var_name", "var_value", "se_mc", "se_mc_stderr",
              "se_ub", "ee")
DEFAULT_K_GRID = (0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)
DEFAULT_N_GRID = (16, 64, 256, 1024, 4096)

# Hard caps keeping the exhaustive search tractable (levels**Q grid points).
ORACLE_MAX_Q = 4
ORACLE_MAX_LEVELS = 32


@dataclass
class SweepResult:
    """One CSV row. Fields not computed by a sweep stay None."""

    scheme: str
    var_name: str
    var_value: float
    se_mc: float | None
    se_mc_stderr: float | None
    se_ub: float
    ee: float | None


def point_seed(master_seed: int, index: int) -> int:
    """Derived seed for sweep point number index, schedule-independent."""
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _run_tasks(fn, tasks, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _sorted_rows(rows: list[SweepResult]) -> list[SweepResult]:
    return sorted(rows, key=lambda r: (r.scheme, r.var_value))


def _rician_point(task) -> SweepResult:
    cfg_base, k, scheme, samples, seed = task
    cfg = replace(cfg_base, K1=k, K2=k)
    if scheme == "element":
        cfg = replace(cfg, Lx=1, Ly=1)
    cfg = validate_config(cfg)
    assignment = optimal_phases(cfg)
    mean, stderr = monte_carlo_se(cfg, assignment, samples, seed)
    return SweepResult(scheme=scheme, var_name="K", var_value=float(k),
                       se_mc=mean, se_mc_stderr=stderr,
                       se_ub=max_se_upper_bound(cfg), ee=None)


def sweep_rician_factor(cfg_base: SystemConfig, k_grid=DEFAULT_K_GRID,
                        samples: int = 10_000, seed: int = 0,
                        workers: int = 1) -> list[SweepResult]:
    """Monte Carlo SE and maximized SE bound versus the Rician factor.

    Both hops share the swept factor. The element scheme is the same
    computation on the Lx = Ly = 1 copy of the config, not a separate
    formula.
    """
    tasks = []
    for k in k_grid:
        for scheme in ("subarray", "element"):
            tasks.append((cfg_base, float(k), scheme, samples,
                          point_seed(seed, len(tasks))))
    return _sorted_rows(_run_tasks(_rician_point, tasks, workers))


def draw_angle_tuples(seed: int, count: int) -> np.ndarray:
    """count-by-5 i.i.d. uniform [0, 2*pi) angle tuples from a fixed stream."""
    rng = np.random.Generator(np.random.Philox(key=[int(seed), 0]))
    return rng.uniform(0.0, 2.0 * np.pi, size=(count, 5))


def _regional_point(task) -> SweepResult:
    cfg_base, scheme, var_name, var_value, lx, nx, ny, angle_tuples, power = task
    cfg = validate_config(replace(cfg_base, Nx=nx, Ny=ny, Lx=lx, Ly=lx))
    drivers = cfg.Q
    se_acc = np.empty(len(angle_tuples))
    ee_acc = np.empty(len(angle_tuples))
    for i, tup in enumerate(angle_tuples):
        cfg_i = replace(cfg, angles=Angles(*map(float, tup)))
        se_acc[i] = max_se_upper_bound(cfg_i)
        ee_acc[i] = energy_efficiency(se_acc[i], drivers, power)
    return SweepResult(scheme=scheme, var_name=var_name, var_value=var_value,
                       se_mc=None, se_mc_stderr=None,
                       se_ub=float(np.mean(se_acc)), ee=float(np.mean(ee_acc)))


def default_l0_grid(cfg: SystemConfig) -> tuple[int, ...]:
    """Every square subarray side dividing both surface sides."""
    side = min(cfg.Nx, cfg.Ny)
    return tuple(l0 for l0 in range(1, side + 1)
                 if cfg.Nx % l0 == 0 and cfg.Ny % l0 == 0)


def sweep_subarray_count(cfg_base: SystemConfig, l0_grid=None,
                         num_angle_draws: int = 100, seed: int = 0,
                         workers: int = 1,
                         power: PowerConstants = PowerConstants()
                         ) -> list[SweepResult]:
    """Regional (angle-averaged) SE bound and EE versus the subarray count.

    The surface size is fixed by cfg_base; each L0 in the grid gives
    Q = N / L0^2 subarrays. All points share the same seeded angle draws, and
    the L0 = 1 point is the element scheme, labeled as such.
    """
    if l0_grid is None:
        l0_grid = default_l0_grid(cfg_base)
    angle_tuples = draw_angle_tuples(seed, num_angle_draws)
    tasks = []
    for l0 in l0_grid:
        l0 = int(l0)
        q = (cfg_base.Nx // l0) * (cfg_base.Ny // l0)
        scheme = "element" if l0 == 1 else "subarray"
        tasks.append((cfg_base, scheme, "Q", float(q), l0, cfg_base.Nx,
                      cfg_base.Ny, angle_tuples, power))
    return _sorted_rows(_run_tasks(_regional_point, tasks, workers))


def sweep_ris_size(cfg_base: SystemConfig, n_grid=DEFAULT_N_GRID,
                   l0_set=(2, 4), num_angle_draws: int = 100, seed: int = 0,
                   workers: int = 1,
                   power: PowerConstants = PowerConstants()
                   ) -> list[SweepResult]:
    """Regional SE bound and EE versus surface size for several schemes.

    Each N in the grid must be a perfect square (the surface stays square).
    Every N gets an element row plus one row per compatible L0; rows for an
    L0 that does not divide sqrt(N) are skipped.
    """
    angle_tuples = draw_angle_tuples(seed, num_angle_draws)
    tasks = []
    for n in n_grid:
        nx = math.isqrt(int(n))
        if nx * nx != int(n):
            raise ValueError(f"surface size N={n} is not a perfect square")
        tasks.append((cfg_base, "element", "N", float(n), 1, nx, nx,
                      angle_tuples, power))
        for l0 in l0_set:
            if nx % int(l0) == 0:
                tasks.append((cfg_base, f"subarray_L{int(l0)}", "N", float(n),
                              int(l0), nx, nx, angle_tuples, power))
    return _sorted_rows(_run_tasks(_regional_point, tasks, workers))


def grid_resolution_slack(cfg: SystemConfig, grid_levels: int) -> float:
    """Worst-case LoS-gain shortfall of the best grid point vs the optimum."""
    return 2.0 * (1.0 - math.cos(math.pi / grid_levels)) * cfg.N ** 2 * cfg.M


def exhaustive_phase_search(cfg: SystemConfig, grid_levels: int = 16
                            ) -> tuple[PhaseAssignment, float]:
    """Maximize the LoS cascade gain over a uniform per-subarray phase grid.

    Evaluates all grid_levels**Q combinations; capped at Q <= 4 and
    grid_levels <= 32. Returns the best assignment and its gain.
    """
    if cfg.Q > ORACLE_MAX_Q:
        raise ValueError(
            f"exhaustive search supports Q <= {ORACLE_MAX_Q}, config has Q={cfg.Q}")
    if not 1 <= grid_levels <= ORACLE_MAX_LEVELS:
        raise ValueError(
            f"grid_levels must be in 1..{ORACLE_MAX_LEVELS}, got {grid_levels}")
    w = subarray_couplings(cfg)
    axis = np.exp(2j * np.pi * np.arange(grid_levels) / grid_levels)
    total = np.zeros((1,) * cfg.Q, dtype=complex)
    for q in range(cfg.Q):
        shape = [1] * cfg.Q
        shape[q] = grid_levels
        total = total + w[q] * axis.reshape(shape)
    gains = (total * total.conjugate()).real * cfg.M
    flat_best = int(np.argmax(gains))
    combo = np.unravel_index(flat_best, gains.shape)
    best = PhaseAssignment(2.0 * np.pi * np.asarray(combo, dtype=float)
                           / grid_levels)
    # Recompute through the public gain path so the reported value cannot
    # drift from what callers would measure for the returned assignment.
    return best, los_cascade_gain(cfg, best)


def write_csv(rows: list[SweepResult], fh) -> None:
    """Write rows (sorted by scheme, then value) in the fixed CSV schema."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in _sorted_rows(rows):
        writer.writerow([r.scheme, r.var_name, _fmt(r.var_value),
                         _fmt(r.se_mc), _fmt(r.se_mc_stderr), _fmt(r.se_ub),
                         _fmt(r.ee)])


def rows_to_csv(rows: list[SweepResult]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def _fmt(value) -> str:
    return "" if value is None else format(value, ".12g")
