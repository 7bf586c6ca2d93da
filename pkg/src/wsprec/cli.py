"""Command-line front end: estimate, simulate, experiment, check-bounds.

Configuration can come from a JSON file (``--config``), with command
line flags taking precedence over file values and file values over
built-in defaults.  Exit codes: 0 success, 2 configuration or input
errors (with file:line when the problem is in a config file), 3
numerical failures (message names the failing module.operation).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import __version__, bounds, covariance, simulate, solver
from .exceptions import (
    BadDimension,
    ConvergenceFailure,
    DegenerateAxis,
    DegenerateColumn,
    DimensionMismatch,
    DimensionOverflow,
    EmptyPath,
    NonPositiveDiagonal,
    NotCorrelation,
    NotPositiveDefinite,
    NuTooSmall,
    RhoOutOfRange,
)
from .scenarios import (
    DESK_F,
    DESK_M,
    DESK_P,
    PAPER_F,
    PAPER_M,
    PAPER_P,
    ScenarioConfig,
    mean_curves,
    run_scenario,
    write_results_csv,
    write_timings_csv,
)
from .svgplot import write_chart

_NUMERIC_EXC = (
    ConvergenceFailure,
    NotPositiveDefinite,
    NonPositiveDiagonal,
    DegenerateColumn,
    DegenerateAxis,
    DimensionOverflow,
    DimensionMismatch,
    np.linalg.LinAlgError,
)
_PARAM_EXC = (RhoOutOfRange, BadDimension, NuTooSmall, NotCorrelation, EmptyPath)

_NORM_KINDS = ("elementwise_inf", "spectral", "l1", "frobenius", "scaled_frobenius")

_CONFIG_KEYS = {
    "scenario", "n", "p", "m", "f", "rho", "rho_list", "estimator", "truth",
    "nu", "k_const", "epsilon", "mu_g0", "sigma_g0", "q", "q_list",
    "grid_count", "grid_decades", "lambda", "lambda_list", "lambda_b",
    "replications", "seed", "threads", "out", "paper_scale", "data",
    "header", "dist",
}


class CliError(Exception):
    """Carries the exit code alongside the message."""

    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _origin_of(exc: BaseException) -> str:
    """module.function of the deepest package frame that raised."""
    best = "wsprec"
    best_public = None
    tb = exc.__traceback__
    while tb is not None:
        frame = tb.tb_frame
        mod = frame.f_globals.get("__name__", "")
        if mod.startswith("wsprec.") and not mod.endswith(".cli"):
            name = f"{mod.split('.', 1)[1]}.{frame.f_code.co_name}"
            best = name
            if not frame.f_code.co_name.startswith("_"):
                best_public = name
        tb = tb.tb_next
    return best_public or best


def _run_guarded(fn, *args, **kwargs):
    """Translate package exceptions into exit-coded CLI errors."""
    try:
        return fn(*args, **kwargs)
    except _PARAM_EXC as exc:
        raise CliError(2, str(exc)) from exc
    except _NUMERIC_EXC as exc:
        raise CliError(3, f"numerical failure in {_origin_of(exc)}: {exc}") from exc
    except ValueError as exc:
        raise CliError(2, str(exc)) from exc


def _key_line(text: str, key: str) -> int:
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    if match is None:
        return 1
    return text.count("\n", 0, match.start()) + 1


def _load_config_file(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CliError(2, f"cannot read config file {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(2, f"{path}:{exc.lineno}: {exc.msg}") from exc
    if not isinstance(cfg, dict):
        raise CliError(2, f"{path}:1: config must be a JSON object")
    for key in cfg:
        if key not in _CONFIG_KEYS:
            raise CliError(2, f"{path}:{_key_line(text, key)}: unknown config key {key!r}")
    return cfg


class Settings:
    """Merged view over CLI flags, config file values and defaults."""

    def __init__(self, ns: argparse.Namespace, cfg: dict, path: Optional[str]):
        self._ns = ns
        self._cfg = cfg
        self._path = path

    def pick(self, key: str, default=None, flag: Optional[str] = None):
        flag_value = getattr(self._ns, flag or key, None)
        if flag_value is not None:
            return flag_value
        if key in self._cfg:
            return self._cfg[key]
        return default

    def from_file(self, key: str) -> bool:
        return getattr(self._ns, key, None) is None and key in self._cfg

    def complain(self, key: str, message: str) -> CliError:
        if self._path and key in self._cfg:
            with open(self._path, "r", encoding="utf-8") as handle:
                line = _key_line(handle.read(), key)
            return CliError(2, f"{self._path}:{line}: {message}")
        return CliError(2, message)


def _parse_grid_spec(spec: str):
    parts = spec.split(",")
    if len(parts) != 2:
        raise CliError(2, f"--grid expects 'count,decades', got {spec!r}")
    try:
        count = int(parts[0])
        decades = float(parts[1])
    except ValueError as exc:
        raise CliError(2, f"--grid expects 'count,decades', got {spec!r}") from exc
    return count, decades


def _parse_float_list(text: str) -> List[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise CliError(2, f"expected comma-separated numbers, got {text!r}") from exc


def _resolve_threads(settings: Settings) -> int:
    value = settings.pick("threads")
    if value is None:
        env = os.environ.get("WSP_THREADS")
        if env is not None:
            try:
                value = int(env)
            except ValueError as exc:
                raise CliError(2, f"WSP_THREADS must be an integer, got {env!r}") from exc
    if value is None:
        value = 1
    value = int(value)
    if value < 1:
        raise CliError(2, "threads must be at least 1")
    return value


def _ensure_out_dir(path: str) -> str:
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise CliError(2, f"cannot create output directory {path}: {exc}") from exc
    return path


def read_data_csv(path: str, header: bool = False) -> np.ndarray:
    """Parse a numeric CSV; parse errors carry 1-based row,col position."""
    import csv as _csv

    rows: List[List[float]] = []
    try:
        handle = open(path, "r", newline="", encoding="utf-8")
    except OSError as exc:
        raise CliError(2, f"cannot read data file {path}: {exc}") from exc
    with handle:
        reader = _csv.reader(handle)
        for r, record in enumerate(reader, start=1):
            if header and r == 1:
                continue
            if not record or all(tok.strip() == "" for tok in record):
                continue
            parsed = []
            for c, tok in enumerate(record, start=1):
                try:
                    parsed.append(float(tok))
                except ValueError as exc:
                    raise CliError(
                        2, f"{path}:{r}: column {c}: cannot parse {tok.strip()!r} as a number"
                    ) from exc
            rows.append(parsed)
    if not rows:
        raise CliError(2, f"{path}: no numeric rows found")
    width = len(rows[0])
    for r, parsed in enumerate(rows, start=1):
        if len(parsed) != width:
            raise CliError(2, f"{path}:{r}: expected {width} columns, found {len(parsed)}")
    return np.asarray(rows, dtype=float)


def write_matrix_csv(matrix: np.ndarray, path: str, header: bool = False) -> None:
    import csv as _csv

    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = _csv.writer(handle)
        if header:
            writer.writerow([f"c{j}" for j in range(matrix.shape[1])])
        for row in np.atleast_2d(matrix):
            writer.writerow([format(float(v), ".17g") for v in row])


def _write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(obj, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _build_pilot(estimator: str, data: np.ndarray, k_const: float, epsilon: float):
    if estimator == "sample":
        return covariance.sample_covariance(data)
    if estimator == "huber":
        return covariance.huber_covariance(data, k_const, epsilon)
    if estimator in ("spearman", "kendall"):
        return covariance.rank_correlation_matrix(data, estimator, epsilon)
    raise CliError(2, f"unknown estimator {estimator!r}")


def cmd_estimate(settings: Settings) -> int:
    data_path = settings.pick("data")
    if data_path is None:
        raise CliError(2, "estimate needs --data <csv> (or 'data' in the config file)")
    header = bool(settings.pick("header", False))
    data = read_data_csv(data_path, header=header)
    estimator = settings.pick("estimator", "sample")
    k_const = float(settings.pick("k_const", covariance.HUBER_K_DEFAULT))
    epsilon = float(settings.pick("epsilon", covariance.EPSILON_DEFAULT))
    lam = settings.pick("lambda", flag="lam")
    grid_spec = settings.pick("grid")
    if lam is None and grid_spec is None:
        raise CliError(2, "estimate needs either --lambda <real> or --grid <count,decades>")
    if lam is not None and grid_spec is not None:
        raise CliError(2, "--lambda and --grid are mutually exclusive")
    out_dir = _ensure_out_dir(str(settings.pick("out", ".")))

    pilot = _run_guarded(_build_pilot, estimator, data, k_const, epsilon)
    meta = {
        "command": "estimate",
        "version": __version__,
        "estimator": estimator,
        "n": int(data.shape[0]),
        "p": int(data.shape[1]),
        "projected": pilot.projected,
        "epsilon": pilot.epsilon,
        "huber_H": pilot.huber_H,
    }
    if lam is not None:
        est = _run_guarded(solver.scio_estimate, pilot.matrix, float(lam))
        report = solver.kkt_report(pilot.matrix, est)
        out_path = os.path.join(out_dir, "omega.csv")
        write_matrix_csv(est.omega_tilde, out_path, header=header)
        meta.update(
            lambda_=float(lam),
            files=["omega.csv"],
            max_dual_violation=report.max_dual_violation,
            max_stationarity_violation=report.max_stationarity_violation,
            converged=est.converged,
        )
        meta["lambda"] = meta.pop("lambda_")
    else:
        count, decades = _parse_grid_spec(str(grid_spec))
        grid = _run_guarded(solver.default_lambda_grid, count, decades)
        path = _run_guarded(solver.scio_path, pilot.matrix, grid)
        files = []
        entries = []
        for k, est in enumerate(path.estimates):
            name = f"omega_{k:03d}.csv"
            write_matrix_csv(est.omega_tilde, os.path.join(out_dir, name), header=header)
            report = solver.kkt_report(pilot.matrix, est)
            files.append(name)
            entries.append(
                {
                    "lambda": float(path.grid[k]),
                    "file": name,
                    "max_dual_violation": report.max_dual_violation,
                    "max_stationarity_violation": report.max_stationarity_violation,
                    "converged": est.converged,
                }
            )
        meta.update(files=files, grid=entries)
    _write_json(meta, os.path.join(out_dir, "estimate_meta.json"))
    print(f"wrote {len(meta['files'])} matrix file(s) to {out_dir}")
    return 0


def cmd_simulate(settings: Settings) -> int:
    truth_name = settings.pick("truth", "toeplitz")
    rho = float(settings.pick("rho", 0.5))
    p = int(settings.pick("p", PAPER_P if settings.pick("paper_scale") else DESK_P))
    n = int(settings.pick("n", 200))
    dist = settings.pick("dist", "gaussian")
    seed = int(settings.pick("seed", 0))
    out_dir = _ensure_out_dir(str(settings.pick("out", ".")))

    spec = simulate.TruthSpec(constructor=truth_name, p=p, rho=rho)
    omega, sigma = _run_guarded(spec.build)
    rng = simulate.replication_rng(seed, 0)
    if dist == "gaussian":
        data = _run_guarded(simulate.sample_gaussian, n, sigma, rng)
    elif dist == "mvt":
        nu = float(settings.pick("nu", 3.5))
        data = _run_guarded(simulate.sample_mvt, n, sigma, nu, rng)
    elif dist == "nonparanormal":
        mu_g0 = float(settings.pick("mu_g0", simulate.MU_G0_DEFAULT))
        sigma_g0 = float(settings.pick("sigma_g0", simulate.SIGMA_G0_DEFAULT))
        data = _run_guarded(
            simulate.sample_nonparanormal, n, sigma, mu_g0, sigma_g0, rng
        )
    else:
        raise CliError(2, f"unknown dist {dist!r}; expected gaussian, mvt or nonparanormal")

    write_matrix_csv(data, os.path.join(out_dir, "data.csv"))
    write_matrix_csv(omega, os.path.join(out_dir, "omega_true.csv"))
    write_matrix_csv(sigma, os.path.join(out_dir, "sigma_true.csv"))
    _write_json(
        {
            "command": "simulate",
            "version": __version__,
            "truth": truth_name,
            "rho": rho,
            "p": p,
            "n": n,
            "dist": dist,
            "seed": seed,
            "rng": simulate.RNG_ALGORITHM,
            "files": ["data.csv", "omega_true.csv", "sigma_true.csv"],
        },
        os.path.join(out_dir, "simulate_meta.json"),
    )
    print(f"wrote data.csv ({n}x{p}) and truth matrices to {out_dir}")
    return 0


def _scenario_config(settings: Settings) -> ScenarioConfig:
    scenario = settings.pick("scenario")
    if scenario is None:
        raise CliError(2, "experiment needs --scenario (or 'scenario' in the config file)")
    paper = bool(settings.pick("paper_scale", False))
    rho_value = settings.pick("rho")
    rho = None
    rho_list = None
    if rho_value is not None:
        values = (
            _parse_float_list(rho_value) if isinstance(rho_value, str) else [float(rho_value)]
        )
        if len(values) == 1:
            rho = values[0]
        else:
            rho_list = tuple(values)
    cfg_rho_list = settings.pick("rho_list")
    if cfg_rho_list is not None:
        rho_list = tuple(float(v) for v in cfg_rho_list)
        rho = None
    q_value = settings.pick("q_list", settings.pick("q", (0.5,)))
    if isinstance(q_value, str):
        q_list = tuple(_parse_float_list(q_value))
    elif isinstance(q_value, (int, float)):
        q_list = (float(q_value),)
    else:
        q_list = tuple(float(v) for v in q_value)
    grid_spec = settings.pick("grid")
    if grid_spec is not None:
        grid_count, grid_decades = _parse_grid_spec(str(grid_spec))
    else:
        grid_count = int(settings.pick("grid_count", 30))
        grid_decades = float(settings.pick("grid_decades", 2.0))
    config = ScenarioConfig(
        scenario=str(scenario),
        n=int(settings.pick("n", 200)),
        p=int(settings.pick("p", PAPER_P if paper else DESK_P)),
        m=int(settings.pick("m", PAPER_M if paper else DESK_M)),
        f=int(settings.pick("f", PAPER_F if paper else DESK_F)),
        rho=rho,
        rho_list=rho_list,
        estimator=settings.pick("estimator"),
        truth=str(settings.pick("truth", "toeplitz")),
        nu=float(settings.pick("nu", 3.5)),
        k_const=float(settings.pick("k_const", covariance.HUBER_K_DEFAULT)),
        epsilon=float(settings.pick("epsilon", covariance.EPSILON_DEFAULT)),
        mu_g0=float(settings.pick("mu_g0", simulate.MU_G0_DEFAULT)),
        sigma_g0=float(settings.pick("sigma_g0", simulate.SIGMA_G0_DEFAULT)),
        q_list=q_list,
        grid_count=grid_count,
        grid_decades=grid_decades,
        lambda_b=float(settings.pick("lambda_b", 0.15)),
        replications=int(settings.pick("replications", 20)),
        seed=int(settings.pick("seed", 0)),
    )
    try:
        config.validate()
    except ValueError as exc:
        raise CliError(2, str(exc)) from exc
    return config


def cmd_experiment(settings: Settings) -> int:
    config = _scenario_config(settings)
    threads = _resolve_threads(settings)
    out_dir = _ensure_out_dir(str(settings.pick("out", f"results_{config.scenario}")))
    result = _run_guarded(run_scenario, config, threads)
    write_results_csv(result.rows, os.path.join(out_dir, "results.csv"))
    write_timings_csv(result, os.path.join(out_dir, "timings.csv"))
    x_label = "rho" if config.scenario == "diamond_sweep" else "lambda"
    for kind in _NORM_KINDS:
        series = mean_curves(result, kind)
        write_chart(
            series,
            title=f"{config.scenario}: mean {kind} error",
            x_label=x_label,
            y_label=f"{kind} error",
            path=os.path.join(out_dir, f"err_{kind}.svg"),
        )
    meta = {
        "command": "experiment",
        "version": __version__,
        "rng": simulate.RNG_ALGORITHM,
        "threads": threads,
        "config": {
            "scenario": config.scenario,
            "n": config.n,
            "p": config.p,
            "m": config.m,
            "f": config.f,
            "rho_list": list(config.rhos()),
            "estimators": list(config.estimators()),
            "truth": config.truth,
            "nu": config.nu,
            "k_const": config.k_const,
            "epsilon": config.epsilon,
            "mu_g0": config.mu_g0,
            "sigma_g0": config.sigma_g0,
            "q_list": list(config.q_list),
            "grid_count": config.grid_count,
            "grid_decades": config.grid_decades,
            "lambda_b": config.lambda_b,
            "replications": config.replications,
            "seed": config.seed,
        },
        "rows": len(result.rows),
        "files": ["results.csv", "timings.csv"] + [f"err_{k}.svg" for k in _NORM_KINDS],
    }
    _write_json(meta, os.path.join(out_dir, "experiment_meta.json"))
    print(f"wrote {len(result.rows)} rows to {os.path.join(out_dir, 'results.csv')}")
    return 0


def cmd_check_bounds(settings: Settings) -> int:
    truth_name = settings.pick("truth", "toeplitz")
    rho = float(settings.pick("rho", 0.3))
    p = int(settings.pick("p", 20))
    seed = int(settings.pick("seed", 0))
    n = settings.pick("n")
    q_value = settings.pick("q_list", settings.pick("q", (0.5,)))
    if isinstance(q_value, str):
        q_list = _parse_float_list(q_value)
    elif isinstance(q_value, (int, float)):
        q_list = [float(q_value)]
    else:
        q_list = [float(v) for v in q_value]
    lam_value = settings.pick("lambda_list", settings.pick("lambda", flag="lam"))
    if lam_value is None:
        grid_spec = settings.pick("grid", "10,2")
        count, decades = _parse_grid_spec(str(grid_spec))
        lambdas = list(solver.default_lambda_grid(count, decades))
    elif isinstance(lam_value, str):
        lambdas = _parse_float_list(lam_value)
    elif isinstance(lam_value, (int, float)):
        lambdas = [float(lam_value)]
    else:
        lambdas = [float(v) for v in lam_value]
    out_dir = _ensure_out_dir(str(settings.pick("out", ".")))

    spec = simulate.TruthSpec(constructor=str(truth_name), p=p, rho=rho)
    omega, sigma = _run_guarded(spec.build)
    if n is None:
        sigma_hat = sigma
        pilot_desc = "exact (sigma_hat = sigma)"
    else:
        data = _run_guarded(simulate.sample_gaussian, int(n), sigma, simulate.replication_rng(seed, 0))
        sigma_hat = covariance.sample_covariance(data).matrix
        pilot_desc = f"sample covariance from n={int(n)} gaussian draws"

    records = []
    print(f"truth: {truth_name}(rho={rho}, p={p}); pilot: {pilot_desc}")
    print(f"{'lambda':>12} {'q':>5} {'hyp_lam':>8} {'hyp_sparse':>10} {'bound':>12} "
          f"{'lhs':>12} {'rhs':>12} {'ok':>4}")
    for lam in lambdas:
        for q in q_list:
            check = _run_guarded(bounds.check_bounds, omega, sigma_hat, sigma, float(lam), float(q))
            for line in check.lines:
                print(
                    f"{lam:>12.6g} {q:>5.2g} {str(check.hypothesis_lambda):>8} "
                    f"{str(check.hypothesis_sparsity):>10} {line.name:>12} "
                    f"{line.lhs:>12.5g} {line.rhs:>12.5g} {'yes' if line.satisfied else 'NO':>4}"
                )
                records.append((lam, q, check, line))
    csv_path = os.path.join(out_dir, "bounds.csv")
    import csv as _csv

    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = _csv.writer(handle)
        writer.writerow(
            (
                "lambda", "q", "s_p", "M_p", "sigma_gap",
                "hypothesis_lambda", "hypothesis_sparsity", "hypotheses_hold",
                "bound", "lhs", "rhs", "satisfied",
            )
        )
        for lam, q, check, line in records:
            writer.writerow(
                [
                    format(float(lam), ".17g"),
                    format(float(q), ".17g"),
                    format(check.s_p, ".17g"),
                    format(check.M_p, ".17g"),
                    format(check.sigma_gap, ".17g"),
                    "true" if check.hypothesis_lambda else "false",
                    "true" if check.hypothesis_sparsity else "false",
                    "true" if check.hypotheses_hold else "false",
                    line.name,
                    format(line.lhs, ".17g"),
                    format(line.rhs, ".17g"),
                    "true" if line.satisfied else "false",
                ]
            )
    print(f"wrote {csv_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsprec",
        description="Precision matrix estimation via column-wise L1 solves, "
        "with robust, rank-based and Kronecker covariance pilots.",
    )
    parser.add_argument("--version", action="version", version=f"wsprec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(sp):
        sp.add_argument("--config", help="JSON config file; flags override its values")
        sp.add_argument("--seed", type=int, help="root RNG seed (default 0)")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--threads", type=int, help="worker threads (or WSP_THREADS env)")
        sp.add_argument(
            "--paper-scale",
            action="store_const",
            const=True,
            dest="paper_scale",
            help="use the full figure dimensions (p=100, m=80, f=40)",
        )

    sp_est = sub.add_parser("estimate", help="estimate a precision matrix from a data CSV")
    add_shared(sp_est)
    sp_est.add_argument("--data", help="input CSV, rows are observations")
    sp_est.add_argument(
        "--estimator", choices=("sample", "huber", "spearman", "kendall"),
        help="pilot covariance (default sample)",
    )
    sp_est.add_argument("--lambda", dest="lam", type=float, help="single penalty value")
    sp_est.add_argument("--grid", help="penalty grid as 'count,decades'")
    sp_est.add_argument("--k-const", dest="k_const", type=float, help="Huber truncation multiplier")
    sp_est.add_argument("--epsilon", type=float, help="projection eigenvalue floor")
    sp_est.add_argument("--header", action="store_const", const=True, help="data CSV has a header row")

    sp_sim = sub.add_parser("simulate", help="write synthetic data plus its truth matrices")
    add_shared(sp_sim)
    sp_sim.add_argument(
        "--truth", choices=("toeplitz", "diamond_block", "correlation_of_inverse"),
        help="truth constructor (default toeplitz)",
    )
    sp_sim.add_argument("--rho", type=float, help="decay / coupling parameter")
    sp_sim.add_argument("--p", type=int, help="dimension")
    sp_sim.add_argument("--n", type=int, help="sample count")
    sp_sim.add_argument(
        "--dist", choices=("gaussian", "mvt", "nonparanormal"), help="sampling distribution"
    )
    sp_sim.add_argument("--nu", type=float, help="t degrees of freedom (mvt)")
    sp_sim.add_argument("--mu-g0", dest="mu_g0", type=float, help="CDF transform location")
    sp_sim.add_argument("--sigma-g0", dest="sigma_g0", type=float, help="CDF transform scale")

    sp_exp = sub.add_parser("experiment", help="run a replicated scenario and write results")
    add_shared(sp_exp)
    sp_exp.add_argument("--scenario", help="diamond_sweep | toeplitz_path | robust_t | "
                        "nonparanormal | matrix_data | custom")
    sp_exp.add_argument("--n", type=int)
    sp_exp.add_argument("--p", type=int)
    sp_exp.add_argument("--m", type=int)
    sp_exp.add_argument("--f", type=int)
    sp_exp.add_argument("--rho", help="single value or comma list")
    sp_exp.add_argument(
        "--estimator", choices=("sample", "huber", "spearman", "kendall", "gemini"),
        help="override the scenario's default pilot set",
    )
    sp_exp.add_argument("--truth", choices=("toeplitz", "diamond_block", "correlation_of_inverse"))
    sp_exp.add_argument("--nu", type=float)
    sp_exp.add_argument("--k-const", dest="k_const", type=float)
    sp_exp.add_argument("--epsilon", type=float)
    sp_exp.add_argument("--mu-g0", dest="mu_g0", type=float)
    sp_exp.add_argument("--sigma-g0", dest="sigma_g0", type=float)
    sp_exp.add_argument("--q", help="sparsity exponent(s), comma list")
    sp_exp.add_argument("--grid", help="penalty grid as 'count,decades'")
    sp_exp.add_argument("--lambda-b", dest="lambda_b", type=float, help="fixed B-factor penalty")
    sp_exp.add_argument("--replications", type=int)

    sp_chk = sub.add_parser("check-bounds", help="evaluate the theorem hypotheses and bounds")
    add_shared(sp_chk)
    sp_chk.add_argument("--truth", choices=("toeplitz", "diamond_block", "correlation_of_inverse"))
    sp_chk.add_argument("--rho", type=float)
    sp_chk.add_argument("--p", type=int)
    sp_chk.add_argument("--n", type=int, help="sample a noisy pilot instead of sigma_hat = sigma")
    sp_chk.add_argument("--q", help="sparsity exponent(s), comma list")
    sp_chk.add_argument("--lambda", dest="lam", help="penalty value(s), comma list")
    sp_chk.add_argument("--grid", help="penalty grid as 'count,decades'")

    return parser


_HANDLERS = {
    "estimate": cmd_estimate,
    "simulate": cmd_simulate,
    "experiment": cmd_experiment,
    "check-bounds": cmd_check_bounds,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _load_config_file(ns.config)
        settings = Settings(ns, cfg, ns.config)
        return _HANDLERS[ns.command](settings)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
