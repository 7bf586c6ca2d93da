"""Batch experiment engine: scenario catalogue, result rows, summaries.

Each scenario rebuilds one of the figure pipelines at configurable
scale: a diamond-block sweep over the coupling rho, Toeplitz solution
paths at three sparsity levels, heavy-tailed data with the robust
pilot, nonparanormal data with the rank pilots, and Kronecker matrix
data with the per-axis Gram pilots.  ``run_scenario`` produces plain
result rows; CSV and SVG serialization live next to it so the command
line stays a thin shell.

Replications split their random streams from the root seed by
replication index, so results are identical for any thread count and
may be compared row-for-row across runs.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import bounds, covariance, simulate, solver
from .linalg import invert_spd, kronecker

SCENARIO_NAMES = (
    "diamond_sweep",
    "toeplitz_path",
    "robust_t",
    "nonparanormal",
    "matrix_data",
    "custom",
)

#: Desk-scale defaults keep a full run in minutes; the figures in the
#: source material use p=100, m=80, f=40.
DESK_P, PAPER_P = 40, 100
DESK_M, PAPER_M = 16, 80
DESK_F, PAPER_F = 8, 40

LAMBDA_B_DEFAULT = 0.15


def diamond_rho_grid() -> Tuple[float, ...]:
    """The default coupling grid -0.65 .. 0.65 in steps of 0.05."""
    return tuple(np.round(np.arange(-13, 14) * 0.05, 10))


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to reproduce one experiment run."""

    scenario: str
    n: int = 200
    p: int = DESK_P
    m: int = DESK_M
    f: int = DESK_F
    rho: Optional[float] = None
    rho_list: Optional[Tuple[float, ...]] = None
    estimator: Optional[str] = None
    truth: str = "toeplitz"
    nu: float = 3.5
    k_const: float = covariance.HUBER_K_DEFAULT
    epsilon: float = covariance.EPSILON_DEFAULT
    mu_g0: float = simulate.MU_G0_DEFAULT
    sigma_g0: float = simulate.SIGMA_G0_DEFAULT
    q_list: Tuple[float, ...] = (0.5,)
    grid_count: int = 30
    grid_decades: float = 2.0
    lambda_b: float = LAMBDA_B_DEFAULT
    replications: int = 20
    seed: int = 0

    def validate(self) -> None:
        if self.scenario not in SCENARIO_NAMES:
            raise ValueError(
                f"unknown scenario {self.scenario!r}; expected one of {SCENARIO_NAMES}"
            )
        for name in ("n", "p", "m", "f", "replications", "grid_count"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        # matrix pilots use uncentered Grams, so a single sample is legal there
        if self.scenario != "matrix_data" and self.n < 2:
            raise ValueError("covariance pilots need n of at least 2")
        if self.grid_decades <= 0:
            raise ValueError("grid_decades must be positive")
        if not self.q_list:
            raise ValueError("q_list must not be empty")
        for q in self.q_list:
            if not 0.0 <= q < 1.0:
                raise ValueError(f"q must lie in [0, 1), got {q}")
        for est in self.estimators():
            if est not in ("sample", "huber", "spearman", "kendall", "gemini"):
                raise ValueError(f"unknown estimator {est!r}")

    def rhos(self) -> Tuple[float, ...]:
        if self.rho_list is not None:
            return tuple(float(r) for r in self.rho_list)
        if self.rho is not None:
            return (float(self.rho),)
        defaults = {
            "diamond_sweep": diamond_rho_grid(),
            "toeplitz_path": (0.2, 0.5, 0.8),
            "robust_t": (0.5,),
            "nonparanormal": (0.5,),
            "matrix_data": (),
            "custom": (0.5,),
        }
        return defaults[self.scenario]

    def estimators(self) -> Tuple[str, ...]:
        if self.estimator is not None:
            return (self.estimator,)
        defaults = {
            "diamond_sweep": ("sample",),
            "toeplitz_path": ("sample",),
            "robust_t": ("huber", "sample"),
            "nonparanormal": ("spearman", "kendall"),
            "matrix_data": ("gemini",),
            "custom": ("sample",),
        }
        return defaults[self.scenario]

    def lambda_grid(self) -> np.ndarray:
        return solver.default_lambda_grid(self.grid_count, self.grid_decades)


@dataclass(frozen=True)
class ResultRow:
    """One (replication, penalty, rho, q, estimator) cell of a run.

    ``wall_time_s`` is the elapsed time of the whole replication; it is
    excluded from results.csv so that byte-identical outputs survive
    timing jitter, and lands in timings.csv instead.
    """

    scenario: str
    replication: int
    rho: Optional[float]
    lam: float
    q: float
    estimator: str
    err_elementwise_inf: float
    err_spectral: float
    err_l1: float
    err_frobenius: float
    err_scaled_frobenius: float
    hypotheses_hold: Optional[bool]
    bounds_satisfied: Optional[bool]
    kkt_residual: float
    sweeps: int
    converged: bool
    wall_time_s: float


RESULT_COLUMNS = (
    "scenario",
    "replication",
    "rho",
    "lambda",
    "q",
    "estimator",
    "err_elementwise_inf",
    "err_spectral",
    "err_l1",
    "err_frobenius",
    "err_scaled_frobenius",
    "hypotheses_hold",
    "bounds_satisfied",
    "kkt_residual",
    "sweeps",
    "converged",
)


@dataclass(frozen=True)
class ScenarioResult:
    config: ScenarioConfig
    rows: Tuple[ResultRow, ...]
    rep_seconds: Tuple[float, ...]


def _truth_for(config: ScenarioConfig, rho: float):
    constructor = {
        "diamond_sweep": "diamond_block",
        "toeplitz_path": "toeplitz",
        "robust_t": "toeplitz",
        "nonparanormal": "correlation_of_inverse",
        "custom": config.truth,
    }[config.scenario]
    return simulate.TruthSpec(constructor=constructor, p=config.p, rho=rho).build()


def _sample_for(config: ScenarioConfig, sigma: np.ndarray, rng) -> np.ndarray:
    if config.scenario == "robust_t":
        return simulate.sample_mvt(config.n, sigma, config.nu, rng)
    if config.scenario == "nonparanormal":
        return simulate.sample_nonparanormal(
            config.n, sigma, config.mu_g0, config.sigma_g0, rng
        )
    return simulate.sample_gaussian(config.n, sigma, rng)


def _pilot_for(config: ScenarioConfig, estimator: str, data: np.ndarray):
    if estimator == "sample":
        return covariance.sample_covariance(data)
    if estimator == "huber":
        return covariance.huber_covariance(data, config.k_const, config.epsilon)
    if estimator in ("spearman", "kendall"):
        return covariance.rank_correlation_matrix(data, estimator, config.epsilon)
    raise ValueError(f"estimator {estimator!r} does not apply to vector data")


def _vector_replication(config: ScenarioConfig, rep: int) -> List[dict]:
    rng = simulate.replication_rng(config.seed, rep)
    grid = config.lambda_grid()
    cells: List[dict] = []
    for rho in config.rhos():
        omega, sigma = _truth_for(config, rho)
        data = _sample_for(config, sigma, rng)
        for estimator in config.estimators():
            pilot = _pilot_for(config, estimator, data)
            path = solver.scio_path(pilot.matrix, grid)
            for lam, est in zip(grid, path.estimates):
                report = bounds.error_report(est.omega_tilde, omega)
                kkt = max(c.kkt_residual for c in est.columns)
                for q in config.q_list:
                    check = bounds.evaluate_bounds(omega, pilot.matrix, sigma, est, q)
                    cells.append(
                        dict(
                            scenario=config.scenario,
                            replication=rep,
                            rho=rho,
                            lam=float(lam),
                            q=q,
                            estimator=estimator,
                            report=report,
                            hypotheses_hold=check.hypotheses_hold,
                            bounds_satisfied=check.all_satisfied,
                            kkt_residual=kkt,
                            sweeps=est.columns[0].sweeps,
                            converged=est.converged,
                        )
                    )
    return cells


def _matrix_replication(config: ScenarioConfig, rep: int) -> List[dict]:
    rng = simulate.replication_rng(config.seed, rep)
    a = simulate.correlation_of_inverse(simulate.make_toeplitz_precision(config.m, 0.5))
    b = simulate.correlation_of_inverse(simulate.make_toeplitz_precision(config.f, 0.2))
    omega_true = kronecker(invert_spd(a), invert_spd(b))
    samples = simulate.sample_matrix_normal(config.n, a, b, rng)
    pilot_a, pilot_b = covariance.gemini_covariances(samples)
    est_b = solver.scio_estimate(pilot_b.matrix, config.lambda_b)
    grid = config.lambda_grid()
    path_a = solver.scio_path(pilot_a.matrix, grid)
    cells: List[dict] = []
    for lam, est_a in zip(grid, path_a.estimates):
        assembled = kronecker(est_a.omega_tilde, est_b.omega_tilde)
        report = bounds.error_report(assembled, omega_true)
        kkt = max(
            max(c.kkt_residual for c in est_a.columns),
            max(c.kkt_residual for c in est_b.columns),
        )
        for q in config.q_list:
            cells.append(
                dict(
                    scenario=config.scenario,
                    replication=rep,
                    rho=None,
                    lam=float(lam),
                    q=q,
                    estimator="gemini",
                    report=report,
                    hypotheses_hold=None,
                    bounds_satisfied=None,
                    kkt_residual=kkt,
                    sweeps=est_a.columns[0].sweeps,
                    converged=est_a.converged and est_b.converged,
                )
            )
    return cells


def _run_replication(config: ScenarioConfig, rep: int) -> Tuple[List[ResultRow], float]:
    start = time.perf_counter()
    if config.scenario == "matrix_data":
        cells = _matrix_replication(config, rep)
    else:
        cells = _vector_replication(config, rep)
    elapsed = time.perf_counter() - start
    rows = []
    for cell in cells:
        report = cell.pop("report")
        rows.append(
            ResultRow(
                err_elementwise_inf=report.elementwise_inf,
                err_spectral=report.spectral,
                err_l1=report.l1,
                err_frobenius=report.frobenius,
                err_scaled_frobenius=report.scaled_frobenius,
                wall_time_s=elapsed,
                **cell,
            )
        )
    return rows, elapsed


def run_scenario(config: ScenarioConfig, threads: int = 1) -> ScenarioResult:
    """Run every replication and gather rows in a deterministic order.

    ``threads`` > 1 runs replications on a thread pool; each owns an
    independent random stream, so the rows are identical either way.
    """
    config.validate()
    reps = list(range(config.replications))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(lambda r: _run_replication(config, r), reps))
    else:
        outcomes = [_run_replication(config, r) for r in reps]
    rows = [row for rep_rows, _ in outcomes for row in rep_rows]
    seconds = tuple(elapsed for _, elapsed in outcomes)
    return ScenarioResult(config=config, rows=tuple(rows), rep_seconds=seconds)


def _csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _row_record(row: ResultRow) -> list:
    return [
        row.scenario,
        row.replication,
        row.rho,
        row.lam,
        row.q,
        row.estimator,
        row.err_elementwise_inf,
        row.err_spectral,
        row.err_l1,
        row.err_frobenius,
        row.err_scaled_frobenius,
        row.hypotheses_hold,
        row.bounds_satisfied,
        row.kkt_residual,
        row.sweeps,
        row.converged,
    ]


def _sort_key(row: ResultRow):
    return (
        row.replication,
        row.estimator,
        row.rho is None,
        row.rho if row.rho is not None else 0.0,
        row.q,
        -row.lam,
    )


def write_results_csv(rows: Sequence[ResultRow], path) -> None:
    """Deterministic RFC-4180 results table, 17 significant digits."""
    ordered = sorted(rows, key=_sort_key)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(RESULT_COLUMNS)
        for row in ordered:
            writer.writerow([_csv_value(v) for v in _row_record(row)])


def write_timings_csv(result: ScenarioResult, path) -> None:
    """Per-replication wall time; not deterministic, kept out of results.csv."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("replication", "wall_time_s"))
        for rep, seconds in enumerate(result.rep_seconds):
            writer.writerow((rep, format(seconds, ".6f")))


@dataclass(frozen=True)
class Series:
    """One labeled polyline of a summary chart."""

    label: str
    x: Tuple[float, ...]
    y: Tuple[float, ...]


def _norm_value(row: ResultRow, norm_kind: str) -> float:
    return getattr(row, f"err_{norm_kind}")


def oracle_errors_by_rep(
    rows: Sequence[ResultRow], norm_kind: str = "frobenius"
) -> dict:
    """Per (estimator, rho): the min-over-lambda error of each replication.

    This is the oracle-tuned figure statistic: each replication picks
    its own best penalty.
    """
    if not rows:
        return {}
    base_q = min(row.q for row in rows)
    best: dict = {}
    for row in rows:
        if row.q != base_q:
            continue
        key = (row.estimator, row.rho)
        per_rep = best.setdefault(key, {})
        value = _norm_value(row, norm_kind)
        if row.replication not in per_rep or value < per_rep[row.replication]:
            per_rep[row.replication] = value
    return {
        key: [per_rep[rep] for rep in sorted(per_rep)] for key, per_rep in best.items()
    }


def mean_curves(result: ScenarioResult, norm_kind: str = "frobenius") -> List[Series]:
    """Replication-averaged error curves for plotting.

    The diamond sweep is summarized as oracle-tuned error versus rho;
    every other scenario as mean error versus the penalty, one series
    per (estimator, rho) combination.
    """
    rows = result.rows
    if not rows:
        return []
    if result.config.scenario == "diamond_sweep":
        series = []
        for estimator in result.config.estimators():
            subset = [r for r in rows if r.estimator == estimator]
            oracle = oracle_errors_by_rep(subset, norm_kind)
            points = sorted(
                (rho, float(np.mean(values)))
                for (_, rho), values in oracle.items()
                if rho is not None
            )
            series.append(
                Series(
                    label=estimator,
                    x=tuple(p[0] for p in points),
                    y=tuple(p[1] for p in points),
                )
            )
        return series
    base_q = min(r.q for r in rows)
    series = []
    keys = sorted({(r.estimator, r.rho) for r in rows}, key=lambda k: (k[0], k[1] is None, k[1] or 0.0))
    for estimator, rho in keys:
        subset = [r for r in rows if r.estimator == estimator and r.rho == rho and r.q == base_q]
        lams = sorted({r.lam for r in subset})
        means = [
            float(np.mean([_norm_value(r, norm_kind) for r in subset if r.lam == lam]))
            for lam in lams
        ]
        label = estimator if rho is None else f"{estimator}, rho={rho:g}"
        series.append(Series(label=label, x=tuple(lams), y=tuple(means)))
    return series
