"""Finite-sample error bounds, checked numerically.

The estimator comes with explicit inequalities: when the penalty
dominates the pilot's elementwise error and the weak-sparsity mass is
small enough, the column L1 / sup-norm errors and the matrix L1 /
sup-norm errors are bounded by closed-form expressions in (lambda,
M_p, s_p, q).  With an exact pilot the hypotheses are easy to satisfy
and every bound must hold; this script evaluates both sides.
"""

import numpy as np

from wsprec import check_bounds, invert_spd, make_toeplitz_precision, sparsity_summary

p, rho = 20, 0.3
omega = make_toeplitz_precision(p, rho)
sigma = invert_spd(omega)

for q in (0.0, 0.5, 0.9):
    summary = sparsity_summary(omega, q, toeplitz_rho=rho)
    # the weak-sparsity hypothesis caps the penalty at
    # (M_p^q / (2 s_p))^(1/(1-q)); stay just inside it
    if q == 0.0:
        lam_cap = 1.0 / (2.0 * summary.s_p)
    else:
        lam_cap = (summary.M_p**q / (2.0 * summary.s_p)) ** (1.0 / (1.0 - q))
    lam = 0.9 * lam_cap

    check = check_bounds(omega, sigma, sigma, lam=lam, q=q)
    print(f"q={q}: s_p={summary.s_p:.3f} M_p={summary.M_p:.3f} "
          f"lambda={lam:.2e} hypotheses_hold={check.hypotheses_hold}")
    for line in check.lines:
        print(f"    {line.name:>10}: {line.lhs:10.3e} <= {line.rhs:10.3e}  "
              f"{'ok' if line.satisfied else 'VIOLATED'}")

# a deliberately bad penalty: hypotheses fail, bounds are reported but
# nothing is asserted
check = check_bounds(omega, sigma, sigma, lam=1.0, q=0.5)
print(f"\nlambda=1.0: hypotheses_hold={check.hypotheses_hold} "
      f"(all bounds satisfied anyway: {check.all_satisfied})")

# with a noisy pilot the first hypothesis needs lambda >= 3 M_p gap
noisy = sigma + 0.01
check = check_bounds(omega, noisy, sigma, lam=0.02, q=0.5)
print(f"noisy pilot, lambda=0.02: gap={check.sigma_gap:.3f} "
      f"lambda hypothesis={check.hypothesis_lambda}")
