"""End-to-end acceptance suite: one test per numbered release criterion.

Each test is self-contained and uses its own frozen seeds, so a failure
points at the criterion it certifies rather than at shared state.  The
statistical criteria run at the same scale as the narrative experiments
(p=40, n=200, 20 replications) and stay within the stated wall-clock
budgets on a single core.
"""
import time

import numpy as np
import scipy.stats

from wsprec import (
    ScenarioConfig,
    check_bounds,
    correlation_of_inverse,
    gemini_covariances,
    gemini_precision,
    huber_covariance,
    invert_spd,
    kkt_report,
    kronecker,
    make_toeplitz_precision,
    matrix_norm,
    oracle_tune,
    psd_project,
    rank_correlation_matrix,
    replication_rng,
    run_scenario,
    sample_covariance,
    sample_gaussian,
    sample_matrix_normal,
    sample_mvt,
    sample_nonparanormal,
    scio_estimate,
    scio_path,
    sparsity_summary,
)
from wsprec.cli import main as cli_main
from wsprec.scenarios import oracle_errors_by_rep


def test_criterion_01_kkt_certification():
    rng = np.random.default_rng(2024)
    start = time.time()
    worst_dual = 0.0
    worst_stat = 0.0
    for k in range(200):
        dim = int(rng.integers(5, 61))
        n = int(rng.integers(dim + 5, 2 * dim + 40))
        kind = ("sample", "huber", "spearman", "kendall")[k % 4]
        x = rng.standard_normal((n, dim))
        if kind == "sample":
            # small ridge keeps the pilot SPD at every drawn (n, dim)
            pilot = sample_covariance(x).matrix + 0.05 * np.eye(dim)
        elif kind == "huber":
            pilot = huber_covariance(x).matrix
        else:
            pilot = rank_correlation_matrix(x, kind).matrix
        lam = float(10.0 ** rng.uniform(-2.0, 0.0))
        est = scio_estimate(pilot, lam)
        assert est.converged
        report = kkt_report(pilot, est)
        worst_dual = max(worst_dual, report.max_dual_violation)
        worst_stat = max(worst_stat, report.max_stationarity_violation)
    elapsed = time.time() - start
    assert worst_dual <= 1e-6
    assert worst_stat <= 1e-6
    assert elapsed < 120.0


def test_criterion_02_closed_forms():
    sigma = np.array([[1.0, 0.5], [0.5, 1.0]])
    est = scio_estimate(sigma, 0.1)
    beta = est.beta_matrix()
    expected = np.array([17.0 / 15.0, -7.0 / 15.0])
    assert np.abs(beta[:, 0] - expected).max() <= 1e-8
    assert np.abs(beta[:, 1] - expected[::-1]).max() <= 1e-8

    eye = np.eye(7)
    for lam in (0.25, 0.8, 1.3):
        est = scio_estimate(eye, lam)
        target = max(1.0 - lam, 0.0) * eye
        assert np.abs(est.beta_matrix() - target).max() <= 1e-10


def test_criterion_03_theorem_backbone():
    start = time.time()
    for rho in (0.1, 0.3, 0.5):
        for p in (10, 30):
            omega = make_toeplitz_precision(p, rho)
            sigma = invert_spd(omega)
            for q in (0.0, 0.5, 0.9):
                summary = sparsity_summary(omega, q)
                # hypothesis cap: M^{-q} lam^{1-q} s_p <= 1/2
                cap = (summary.M_p**q / (2.0 * summary.s_p)) ** (1.0 / (1.0 - q))
                for frac in (0.999, 0.5, 0.1):
                    lam = frac * cap
                    report = check_bounds(omega, sigma, sigma, lam, q)
                    assert report.hypotheses_hold
                    assert report.all_satisfied, (rho, p, q, frac)
    assert time.time() - start < 120.0


def test_criterion_04_diamond_smoothness():
    # window brackets the |rho| = 0.5 boundary from both sides; the
    # outermost grid points (|rho| >= 0.6) are excluded because there the
    # truth norm itself roughly doubles per step (see decisions ledger)
    window = tuple(round(-0.55 + 0.05 * k, 2) for k in range(23))
    start = time.time()
    config = ScenarioConfig(
        scenario="diamond_sweep", rho_list=window, replications=20, seed=40
    )
    rows = run_scenario(config).rows
    elapsed = time.time() - start
    per = oracle_errors_by_rep(rows, "frobenius")
    rhos = sorted(r for (_, r) in per)
    assert min(rhos) < -0.5 and max(rhos) > 0.5
    curve = np.array([np.mean(per[("sample", r)]) for r in rhos])
    jumps = np.abs(np.diff(curve)) / np.maximum(curve[1:], curve[:-1])
    assert jumps.max() < 0.25
    assert elapsed < 600.0


def test_criterion_05_toeplitz_ordering():
    config = ScenarioConfig(scenario="toeplitz_path", replications=20, seed=50)
    rows = run_scenario(config).rows
    per = oracle_errors_by_rep(rows, "frobenius")
    e02 = np.array(per[("sample", 0.2)])
    e05 = np.array(per[("sample", 0.5)])
    e08 = np.array(per[("sample", 0.8)])
    assert e02.mean() < e05.mean() < e08.mean()
    wins = int(np.sum(e08 > e02))
    pval = scipy.stats.binomtest(wins, 20, alternative="greater").pvalue
    assert pval < 0.05


def test_criterion_06_rate_in_n():
    omega = make_toeplitz_precision(40, 0.5)
    sigma = invert_spd(omega)
    mean_err = {}
    for n in (200, 800):
        vals = []
        for rep in range(20):
            x = sample_gaussian(n, sigma, replication_rng(60 + n, rep))
            path = scio_path(sample_covariance(x).matrix)
            _, report = oracle_tune(path, omega, "elementwise_inf")
            vals.append(report.elementwise_inf)
        mean_err[n] = np.mean(vals)
    ratio = mean_err[200] / mean_err[800]
    assert 1.6 <= ratio <= 2.6


def test_criterion_07_heavy_tail_robustness():
    # unit-diagonal variant of the Toeplitz-precision truth: at p=40 the
    # un-standardized variant is ill-conditioned enough that directionally
    # uniform entrywise noise (any robust pilot) swamps the heavy-tail
    # advantage; see decisions ledger for the measured population rates
    sigma = correlation_of_inverse(make_toeplitz_precision(40, 0.2))
    omega = invert_spd(sigma)
    pilot_wins = 0
    scio_wins = 0
    for rep in range(20):
        x = sample_mvt(200, sigma, 3.5, replication_rng(71, rep))
        hub = huber_covariance(x, 2.0, 1e-3)
        sam = sample_covariance(x)
        err_h = np.abs(hub.matrix - sigma).max()
        err_s = np.abs(sam.matrix - sigma).max()
        pilot_wins += err_h <= err_s
        _, rep_h = oracle_tune(scio_path(hub.matrix), omega, "frobenius")
        _, rep_s = oracle_tune(scio_path(sam.matrix), omega, "frobenius")
        scio_wins += rep_h.frobenius <= rep_s.frobenius
    assert pilot_wins >= 14, pilot_wins
    assert scio_wins >= 12, scio_wins


def test_criterion_08_rank_invariance_and_rate():
    sigma = correlation_of_inverse(make_toeplitz_precision(40, 0.5))
    omega = invert_spd(sigma)

    # bit-identical pilots under strictly monotone marginal distortion
    x = sample_nonparanormal(200, sigma, seed=replication_rng(88, 0))
    distorted = x.copy()
    distorted[:, ::2] = np.exp(distorted[:, ::2])
    distorted[:, 1::2] = distorted[:, 1::2] ** 3
    for method in ("spearman", "kendall"):
        a = rank_correlation_matrix(x, method).matrix
        b = rank_correlation_matrix(distorted, method).matrix
        assert np.array_equal(a, b)

    ns = (100, 200, 400, 800)
    for method in ("spearman", "kendall"):
        means = []
        for n in ns:
            vals = []
            for rep in range(8):
                xd = sample_nonparanormal(n, sigma, seed=replication_rng(80 + n, rep))
                pilot = rank_correlation_matrix(xd, method)
                _, report = oracle_tune(scio_path(pilot.matrix), omega, "frobenius")
                vals.append(report.frobenius)
            means.append(np.mean(vals))
        corr = scipy.stats.spearmanr(ns, means).statistic
        assert corr <= -0.8, (method, means)


def test_criterion_09_projection_quality():
    import cvxpy as cp

    rng = np.random.default_rng(90)
    oracle_checked = 0
    for _ in range(100):
        dim = int(rng.integers(1, 13))
        raw = rng.standard_normal((dim, dim))
        s = 0.5 * (raw + raw.T)
        eps = float(10.0 ** rng.uniform(-3.0, -1.0))
        w, v = np.linalg.eigh(s)
        if w.min() >= eps:
            s = s - (w.min() + 0.5) * np.eye(dim)
            w, v = np.linalg.eigh(s)
        projected = psd_project(s, eps)
        assert np.linalg.eigvalsh(projected).min() >= eps - 1e-8
        obj = np.abs(projected - s).max()

        clip = v @ np.diag(np.maximum(w, eps)) @ v.T
        obj_clip = np.abs(clip - s).max()
        assert obj <= obj_clip + 1e-6

        if dim <= 3:
            z = cp.Variable((dim, dim), symmetric=True)
            problem = cp.Problem(
                cp.Minimize(cp.max(cp.abs(z - s))),
                [z >> eps * np.eye(dim)],
            )
            problem.solve(solver=cp.CLARABEL)
            assert obj <= problem.value * 1.01 + 1e-4
            oracle_checked += 1
    assert oracle_checked >= 20


def test_criterion_10_gemini_rate():
    a = correlation_of_inverse(make_toeplitz_precision(16, 0.5))
    b = correlation_of_inverse(make_toeplitz_precision(8, 0.2))
    truth = kronecker(invert_spd(a), invert_spd(b))
    means = []
    for n in (3, 10, 30):
        lam_a = np.sqrt(np.log(16.0) / (n * 8.0))
        lam_b = np.sqrt(np.log(16.0) / (n * 16.0))
        vals = []
        for rep in range(20):
            x = sample_matrix_normal(n, a, b, replication_rng(100 + n, rep))
            est_a, est_b = gemini_covariances(x)
            gem = gemini_precision(est_a, est_b, lam_a, lam_b)
            err = matrix_norm(gem.assembled - truth, "spectral")
            assert np.isfinite(err)
            vals.append(err)
            rebuilt = kronecker(gem.factor_A.omega_tilde, gem.factor_B.omega_tilde)
            assert np.abs(gem.assembled - rebuilt).max() <= 1e-10
        means.append(np.mean(vals))
    assert means[1] <= means[0] and means[2] <= means[1], means


def test_criterion_11_thread_reproducibility(tmp_path):
    outputs = []
    for threads in (1, 8):
        out = tmp_path / f"threads_{threads}"
        code = cli_main(
            [
                "experiment",
                "--scenario", "toeplitz_path",
                "--n", "60",
                "--p", "8",
                "--rho", "0.5",
                "--grid", "6,2",
                "--replications", "3",
                "--seed", "7",
                "--threads", str(threads),
                "--out", str(out),
            ]
        )
        assert code == 0
        outputs.append((out / "results.csv").read_bytes())
    assert outputs[0] == outputs[1]
