"""Experiment drivers: cutoff verification, Taylor-remainder scaling,
uniform-in-alpha boundedness, and the non-convergence sweep, all emitting
deterministic CSV reports.

CSV format: ``#``-prefixed comment lines echo the generating configuration,
one header row names the columns, and numeric cells carry 17 significant
digits so reruns diff byte-for-byte.  Wall-clock timings are reported as
trailing comment lines, never as body columns, to keep bodies
reproducible.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .counterexample import (
    CounterexampleDatum,
    PACKET_CARRIER,
    PACKET_HALF_WIDTH,
    block_identity_error,
    block_product_lower_bound,
    e0_approximant,
    make_u0,
    max_packet_index,
    pointwise_floor,
    phi_profile,
)
from .grid import (
    Grid,
    RealField,
    Spectrum,
    edge_tail,
    make_grid,
    spectrum_l2_norm,
    transform,
)
from .littlewood_paley import (
    besov_norm,
    block_multiplier,
    build_cutoffs,
    grid_max_block,
)
from .solvers import (
    SolverConfig,
    SolverGuardError,
    integrate,
    shock_time_estimate,
)

#: Partition-of-unity residual tolerance (exact telescoping construction).
PARTITION_TOL = 1e-12
#: Squared-sum window tolerance around [1/2, 1].
SQUARE_SUM_TOL = 1e-9
#: Frozen uniform-boundedness constant: sup-in-time Besov norm over the
#: initial norm, calibrated at the default configuration (measured 1.003).
UNIFORM_BOUND_FACTOR = 1.5
#: Spread allowed between the per-alpha sups in the uniform experiment.
UNIFORM_SPREAD_FACTOR = 2.0


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 1)."""


class InvariantViolation(RuntimeError):
    """A verified tolerance was breached (CLI exit code 4)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Shared experiment parameters; see ``parse_config`` for the file
    format and defaults."""

    s: float = 2.0
    n_min: int = 3
    n_max: int = 8
    eps: float = 0.01
    grid_n_points: int = 2**15
    box_length: float = 32.0 * math.pi
    dt_divisor: int = 64
    output_path: str = ""

    def max_resolvable_index(self) -> int:
        """Largest packet index the grid resolves under the 2/3 rule."""
        cutoff = (2.0 / 3.0) * math.pi * self.grid_n_points / self.box_length
        n = -1
        while PACKET_CARRIER * 2.0 ** (n + 1) + PACKET_HALF_WIDTH <= cutoff:
            n += 1
        return n

    def validate(self) -> "ExperimentConfig":
        if not self.s > 1.5:
            raise ConfigError(f"s must exceed 3/2, got {self.s}")
        n = self.grid_n_points
        if n < 8 or (n & (n - 1)) != 0:
            raise ConfigError(
                f"grid_n_points must be a power of two >= 8, got {n}"
            )
        if not self.box_length > 0:
            raise ConfigError(f"box_length must be positive, got {self.box_length}")
        if 2.0 * math.pi / self.box_length > (1.0 / 16.0) * (1 + 1e-12):
            raise ConfigError(
                "box_length too small to resolve the bump profile: need "
                f"frequency spacing <= 1/16, i.e. box_length >= 32*pi, got "
                f"{self.box_length}"
            )
        if not self.eps > 0:
            raise ConfigError(f"eps must be positive, got {self.eps}")
        if self.dt_divisor < 1:
            raise ConfigError(f"dt_divisor must be >= 1, got {self.dt_divisor}")
        if self.n_min < 3:
            raise ConfigError(
                f"n_min must be >= 3 (exact packet localization), got {self.n_min}"
            )
        if self.n_max < self.n_min:
            raise ConfigError(
                f"n_max ({self.n_max}) must be >= n_min ({self.n_min})"
            )
        cap = self.max_resolvable_index()
        if self.n_max > cap:
            raise ConfigError(
                f"n_max ({self.n_max}) exceeds the largest index resolvable "
                f"on this grid under the 2/3 rule, which is {cap}"
            )
        return self


_INT_KEYS = {"n_min", "n_max", "grid_n_points", "dt_divisor"}
_FLOAT_KEYS = {"s", "eps", "box_length"}
_STR_KEYS = {"output_path"}
_ALL_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def parse_config(path: str | Path) -> ExperimentConfig:
    """Read ``key=value`` lines (``#`` comments allowed); unknown keys are
    rejected and missing keys take the documented defaults."""
    values: Dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: malformed line (expected key=value)")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _ALL_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
            if key in values:
                raise ConfigError(f"{path}:{lineno}: duplicate key '{key}'")
            try:
                if key in _INT_KEYS:
                    values[key] = int(value)
                elif key in _FLOAT_KEYS:
                    values[key] = float(value)
                else:
                    values[key] = value
            except ValueError as exc:
                raise ConfigError(
                    f"{path}:{lineno}: cannot parse value for '{key}': {exc}"
                ) from None
    return ExperimentConfig(**values).validate()


# ---------------------------------------------------------------------------
# CSV plumbing


def _fmt(value: object) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _config_comments(config: ExperimentConfig) -> List[str]:
    return [
        f"# {f.name}={_fmt(getattr(config, f.name))}"
        for f in fields(config)
    ]


def write_csv(
    path: str | Path,
    config: ExperimentConfig,
    columns: Sequence[str],
    rows: Sequence[Sequence[object]],
    footer_comments: Sequence[str] = (),
) -> None:
    lines = _config_comments(config)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    lines.extend(footer_comments)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def csv_body(path: str | Path) -> str:
    """The non-comment content of a report (header plus data rows)."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return "\n".join(line for line in lines if not line.startswith("#"))


# ---------------------------------------------------------------------------
# cutoff verification


def lp_sample(xi_max: float, n_samples: int) -> Dict[str, np.ndarray]:
    """Evaluate the cutoff identities on a dense symmetric frequency grid.

    Returns the sampled chi, the summed dyadic cutoffs, the
    partition-of-unity residual and the squared sum.
    """
    cutoffs = build_cutoffs()
    xi = np.linspace(-xi_max, xi_max, n_samples)
    chi = cutoffs.chi(xi)
    # enough blocks that the plateau covers xi_max: 2^-(J+1) xi_max <= 3/4
    j_top = max(0, int(math.ceil(math.log2(max(xi_max, 1.0) * 4.0 / 3.0))))
    sum_phi = np.zeros_like(xi)
    square_sum = chi**2
    for j in range(0, j_top + 1):
        phi_j = cutoffs.phi(xi / 2.0**j)
        sum_phi += phi_j
        square_sum += phi_j**2
    partition_err = np.abs(chi + sum_phi - 1.0)
    return {
        "xi": xi,
        "chi": chi,
        "sum_phi": sum_phi,
        "partition_err": partition_err,
        "square_sum": square_sum,
    }


def run_lp_report(
    config: ExperimentConfig,
    out_path: str | Path,
    n_samples: int = 100_001,
) -> Dict[str, np.ndarray]:
    """Verify the cutoff invariants over a dense sampling of the grid
    frequency range and write the per-sample report.

    Raises ``InvariantViolation`` (after writing) if the partition residual
    exceeds 1e-12 or the squared sum leaves [1/2, 1].
    """
    xi_max = math.pi * config.grid_n_points / config.box_length
    data = lp_sample(xi_max, n_samples)
    rows = np.column_stack(
        [data["xi"], data["chi"], data["sum_phi"], data["partition_err"], data["square_sum"]]
    )
    lines = _config_comments(config)
    lines.append("xi,chi,sum_phi,partition_err,square_sum")
    body = "\n".join(
        ",".join(format(v, ".17g") for v in row) for row in rows
    )
    lines.append(body)
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")

    max_partition = float(data["partition_err"].max())
    sq_min = float(data["square_sum"].min())
    sq_max = float(data["square_sum"].max())
    problems = []
    if max_partition > PARTITION_TOL:
        problems.append(
            f"partition-of-unity residual {max_partition:.3e} > {PARTITION_TOL}"
        )
    if sq_min < 0.5 - SQUARE_SUM_TOL or sq_max > 1.0 + SQUARE_SUM_TOL:
        problems.append(
            f"squared sum range [{sq_min:.12f}, {sq_max:.12f}] leaves [1/2, 1]"
        )
    if problems:
        raise InvariantViolation("; ".join(problems))
    return data


# ---------------------------------------------------------------------------
# shared experiment helpers


def build_grid(config: ExperimentConfig) -> Grid:
    return make_grid(config.grid_n_points, config.box_length)


def build_datum(config: ExperimentConfig, grid: Grid | None = None) -> CounterexampleDatum:
    grid = grid if grid is not None else build_grid(config)
    return make_u0(grid, config.s, config.n_max)


def _final_state(
    u0: RealField, alpha: float, t_end: float, dt: float
) -> RealField:
    n_steps = max(1, int(math.ceil(t_end / dt - 1e-9)))
    solver = SolverConfig(
        alpha=alpha, dt=dt, t_end=t_end, snapshot_stride=max(1, n_steps)
    )
    return integrate(u0, solver).fields[-1]


def _fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    return float(np.polyfit(np.log(np.asarray(xs)), np.log(np.asarray(ys)), 1)[0])


# ---------------------------------------------------------------------------
# Taylor remainder


def run_taylor(
    config: ExperimentConfig,
    alphas: Sequence[float],
    out_path: str | Path,
    times: Sequence[float] | None = None,
) -> Dict[float, float]:
    """Measure the first-order Taylor remainder
    ``r(t) = || S_t(u0) - u0 - t E0 ||_{B^{s-2}}`` over a geometric time
    ladder and fit its log-log slope per alpha (expected ~2).

    Returns ``{alpha: fitted slope}``; guard-tripped ladder points are
    reported as comments and excluded from the fit.
    """
    if times is None:
        times = [2.0 ** (-12 + i) for i in range(7)]
    grid = build_grid(config)
    datum = build_datum(config, grid)
    u0 = datum.field

    rows: List[Tuple[float, float, float]] = []
    footers: List[str] = []
    slopes: Dict[float, float] = {}
    for alpha in alphas:
        e0 = e0_approximant(u0, alpha)
        fitted_t: List[float] = []
        fitted_r: List[float] = []
        for t in times:
            dt = t / config.dt_divisor
            try:
                final = _final_state(u0, alpha, t, dt)
            except SolverGuardError as exc:
                footers.append(f"# guard alpha={_fmt(alpha)} t={_fmt(t)}: {exc}")
                continue
            remainder = RealField(
                grid, final.samples - u0.samples - t * e0.samples
            )
            r = besov_norm(remainder, config.s - 2.0)
            rows.append((alpha, t, r))
            fitted_t.append(t)
            fitted_r.append(r)
        if len(fitted_t) >= 2:
            slopes[alpha] = _fit_slope(fitted_t, fitted_r)
            footers.append(
                f"# fit_slope alpha={_fmt(alpha)}: {_fmt(slopes[alpha])}"
            )
    write_csv(
        out_path,
        config,
        ["alpha", "t", "remainder_norm"],
        rows,
        footer_comments=footers,
    )
    return slopes


# ---------------------------------------------------------------------------
# uniform boundedness


def run_uniform(
    config: ExperimentConfig,
    alphas: Sequence[float],
    t_end: float,
    out_path: str | Path,
) -> Dict[float, float]:
    """Track ``sup_{t <= T} ||S_t^alpha(u0)||_{B^s}`` for each alpha and
    assert the frozen uniformity bounds: every sup within
    ``UNIFORM_BOUND_FACTOR`` of the initial norm and the per-alpha sups
    within a factor ``UNIFORM_SPREAD_FACTOR`` of each other.
    """
    grid = build_grid(config)
    datum = build_datum(config, grid)
    u0 = datum.field
    base_norm = besov_norm(u0, config.s)

    dt = 0.5 * grid.dx / max(1.0, float(np.abs(u0.samples).max()))
    rows: List[Tuple[float, float]] = []
    footers: List[str] = []
    sups: Dict[float, float] = {}
    for alpha in alphas:
        solver = SolverConfig(alpha=alpha, dt=dt, t_end=t_end)
        try:
            trajectory = integrate(u0, solver)
        except SolverGuardError as exc:
            footers.append(f"# guard alpha={_fmt(alpha)}: {exc}")
            continue
        sup = max(besov_norm(f, config.s) for f in trajectory.fields)
        sups[alpha] = sup
        rows.append((alpha, sup))
    write_csv(
        out_path,
        config,
        ["alpha", "sup_t_besov_norm"],
        rows,
        footer_comments=footers,
    )

    if not sups:
        raise InvariantViolation("all uniform-bound runs tripped guards")
    worst = max(sups.values())
    if worst > UNIFORM_BOUND_FACTOR * base_norm:
        raise InvariantViolation(
            f"sup-in-time Besov norm {worst:.6g} exceeds "
            f"{UNIFORM_BOUND_FACTOR} * ||u0|| = {UNIFORM_BOUND_FACTOR * base_norm:.6g}"
        )
    spread = max(sups.values()) / min(sups.values())
    if spread > UNIFORM_SPREAD_FACTOR:
        raise InvariantViolation(
            f"per-alpha sups spread by a factor {spread:.4g} > "
            f"{UNIFORM_SPREAD_FACTOR}"
        )
    return sups


# ---------------------------------------------------------------------------
# non-convergence sweep


@dataclass(frozen=True)
class SweepRow:
    n: int
    alpha: float
    t: float
    diff_besov: float
    block_n_contrib: float
    product_floor: float
    runtime_s: float


def _sweep_row(
    datum: CounterexampleDatum, n: int, eps: float, dt_divisor: int
) -> SweepRow:
    grid = datum.grid
    s = datum.s
    alpha = 2.0**-n
    t_n = eps * 2.0**-n
    dt = t_n / dt_divisor
    started = time.perf_counter()
    filtered = _final_state(datum.field, alpha, t_n, dt)
    unfiltered = _final_state(datum.field, 0.0, t_n, dt)
    diff = RealField(grid, filtered.samples - unfiltered.samples)
    diff_besov = besov_norm(diff, s)
    block = block_multiplier(grid, n)
    block_contrib = 2.0 ** (n * s) * spectrum_l2_norm(
        Spectrum(grid, transform(diff).coeffs * block)
    )
    floor = block_product_lower_bound(datum, n)
    return SweepRow(
        n=n,
        alpha=alpha,
        t=t_n,
        diff_besov=diff_besov,
        block_n_contrib=block_contrib,
        product_floor=floor,
        runtime_s=time.perf_counter() - started,
    )


def contrast_path(out_path: str | Path) -> Path:
    """Sibling report holding the single-packet convergence contrast."""
    p = Path(out_path)
    return p.with_name(p.stem + ".contrast" + (p.suffix or ".csv"))


def run_sweep(
    config: ExperimentConfig,
    out_path: str | Path,
    contrast: bool = True,
    threads: int = 1,
) -> List[SweepRow]:
    """The zero-filter non-convergence experiment: for each n in
    ``[n_min, n_max]`` integrate the filtered (alpha_n = 2^-n) and
    unfiltered flows from the lacunary datum to ``t_n = eps 2^-n`` and
    record the Besov distance, its block-n contribution, and the
    product-block floor.

    With ``contrast=True`` a second report measures the same distance for
    the single low-frequency packet at fixed ``t = eps``, whose decay in
    alpha is the positive-convergence counterpart.
    """
    grid = build_grid(config)
    datum = build_datum(config, grid)

    horizon = shock_time_estimate(datum.field)
    if not config.eps * 2.0**-config.n_min < horizon:
        raise ConfigError(
            f"eps*2^-n_min = {config.eps * 2.0 ** -config.n_min:.3g} reaches "
            f"the datum shock-time estimate {horizon:.3g}"
        )

    indices = list(range(config.n_min, config.n_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(
                pool.map(
                    lambda n: _sweep_row(datum, n, config.eps, config.dt_divisor),
                    indices,
                )
            )
    else:
        rows = [_sweep_row(datum, n, config.eps, config.dt_divisor) for n in indices]

    eta0 = min(r.diff_besov for r in rows)
    ratios = [
        rows[i + 1].diff_besov / rows[i].diff_besov for i in range(len(rows) - 1)
    ]
    footers = [f"# runtime_s n={r.n}: {_fmt(r.runtime_s)}" for r in rows]
    footers.append(f"# eta0: {_fmt(eta0)}")
    if ratios:
        footers.append(
            f"# diff_besov_consecutive_ratios: "
            + ",".join(_fmt(r) for r in ratios)
        )
    write_csv(
        out_path,
        config,
        ["n", "alpha", "t", "diff_besov", "block_n_contrib", "product_floor"],
        [
            (r.n, r.alpha, r.t, r.diff_besov, r.block_n_contrib, r.product_floor)
            for r in rows
        ],
        footer_comments=footers,
    )

    if contrast:
        run_contrast(config, contrast_path(out_path), grid=grid)
    return rows


def run_contrast(
    config: ExperimentConfig,
    out_path: str | Path,
    grid: Grid | None = None,
) -> float:
    """Positive-convergence contrast: from the single packet n = 0, the
    Besov distance between filtered and unfiltered flows at fixed
    ``t = eps`` decays like alpha^2.  Returns the fitted slope."""
    grid = grid if grid is not None else build_grid(config)
    single = make_u0(grid, config.s, 0)
    dt = config.eps / config.dt_divisor
    reference = _final_state(single.field, 0.0, config.eps, dt)

    rows: List[Tuple[int, float, float, float]] = []
    alphas: List[float] = []
    diffs: List[float] = []
    for n in range(config.n_min, config.n_max + 1):
        alpha = 2.0**-n
        filtered = _final_state(single.field, alpha, config.eps, dt)
        diff = RealField(grid, filtered.samples - reference.samples)
        d = besov_norm(diff, config.s)
        rows.append((n, alpha, config.eps, d))
        alphas.append(alpha)
        diffs.append(d)
    slope = _fit_slope(alphas, diffs)
    write_csv(
        out_path,
        config,
        ["n", "alpha", "t", "diff_besov"],
        rows,
        footer_comments=[f"# fit_slope_vs_alpha: {_fmt(slope)}"],
    )
    return slope


# ---------------------------------------------------------------------------
# datum diagnostics


def u0_diagnostics(config: ExperimentConfig) -> List[Tuple[str, object]]:
    """Summary of the constructed datum: norms, localization quality,
    pointwise floor, tails, and margins."""
    grid = build_grid(config)
    datum = build_datum(config, grid)
    delta, floor = pointwise_floor(datum)
    center = datum.field.samples[grid.n_points // 2]
    entries: List[Tuple[str, object]] = [
        ("s", config.s),
        ("n_terms", config.n_max),
        ("besov_norm_s_inf", besov_norm(datum.field, config.s)),
        ("u0_at_origin", float(center)),
        ("phi_at_origin", float(phi_profile(grid).samples[grid.n_points // 2])),
        ("pointwise_floor_delta", delta),
        ("pointwise_floor_min_abs", floor),
        ("edge_tail", edge_tail(datum.field)),
        ("shock_time_estimate", shock_time_estimate(datum.field)),
        ("max_resolvable_index", max_packet_index(grid)),
        ("grid_max_block", grid_max_block(grid)),
    ]
    for n in range(config.n_min, config.n_max + 1):
        entries.append(
            (f"block_identity_error_n{n}", block_identity_error(datum, n))
        )
    return entries
