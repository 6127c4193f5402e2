"""Randomized verification suites over seeded instances.

Each suite draws deterministic random instances, checks an inequality or
agreement bound per trial, and reports per-trial outcomes with the worst
observed slack. These back both the `verify` CLI command and the
acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import Channel, make_channel, cascade, Distribution
from .degradedness import eta_bounds_report, eta_ln, eta_ln_div_lower, eta_mc
from .infotheory import capacity_ba, mi_hessian, mutual_information
from .regions import bc_tightness_check, bdc_capacity, bdc_achievable
from .search import GridSpec

__all__ = ["SuiteResult", "run_suite", "SUITES", "random_channel", "random_degraded_pair"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    failures: int
    worst_slack: float
    lines: tuple

    @property
    def passed(self) -> bool:
        return self.failures == 0


def random_channel(rng, n: int, k: int, floor: float = 0.2) -> Channel:
    """Random channel with rows bounded away from zero (keeps divergences finite)."""
    rows = rng.dirichlet(np.ones(k), size=n)
    rows = (1.0 - floor) * rows + floor / k
    return make_channel(rows)


def random_distinct_channel(rng, n: int, k: int, floor: float = 0.2, min_gap: float = 1e-3) -> Channel:
    for _ in range(64):
        ch = random_channel(rng, n, k, floor)
        if np.max(np.abs(ch.rows - ch.rows[0])) > min_gap:
            return ch
    raise RuntimeError("could not draw a channel with distinct rows")


def random_degraded_pair(rng, n: int, k1: int, k2: int, floor: float = 0.2):
    """ch1 plus a random post-processing kernel; returns (ch1, kernel, ch2)."""
    ch1 = random_distinct_channel(rng, n, k1, floor)
    kernel = random_channel(rng, k1, k2, floor)
    return ch1, kernel, cascade(ch1, kernel)


def _fd_hessian_nats(rows: np.ndarray, p: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Central finite differences of the mutual-information formula in nats.

    The formula extends smoothly off the simplex, so plain coordinate
    differences are valid; only the output-entropy term curves.
    """

    def f(v):
        q = v @ rows
        ent = -(np.where(q > 0, q * np.log(np.where(q > 0, q, 1.0)), 0.0)).sum()
        row_ent = -(np.where(rows > 0, rows * np.log(np.where(rows > 0, rows, 1.0)), 0.0)).sum(axis=1)
        return ent - v @ row_ent

    n = p.size
    H = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h
            ej[j] = h
            val = (f(p + ei + ej) - f(p + ei - ej) - f(p - ei + ej) + f(p - ei - ej)) / (4.0 * h * h)
            H[i, j] = H[j, i] = val
    return H


def hessian_suite(trials: int = 200, seed: int = 0) -> SuiteResult:
    """Curvature matrix vs central finite differences, 1e-5 relative."""
    rng = np.random.default_rng(seed)
    lines = []
    failures = 0
    worst = math.inf
    for t in range(trials):
        n = int(rng.integers(2, 5))
        k = int(rng.integers(2, 5))
        ch = random_channel(rng, n, k)
        p = 0.2 * np.full(n, 1.0 / n) + 0.8 * rng.dirichlet(np.ones(n))
        H = mi_hessian(Distribution(p), ch).hessian
        H_fd = _fd_hessian_nats(ch.rows, p)
        scale = max(1.0, float(np.max(np.abs(H_fd))))
        rel = float(np.max(np.abs(H - H_fd))) / scale
        slack = 1e-5 - rel
        worst = min(worst, slack)
        ok = slack >= 0.0
        failures += (not ok)
        lines.append(f"trial {t}: rel dev {rel:.2e} {'ok' if ok else 'FAIL'}")
    return SuiteResult("hessian", trials, failures, worst, tuple(lines))


def dpi_suite(trials: int = 200, seed: int = 0) -> SuiteResult:
    """Mutual information never grows through a post-processing kernel."""
    rng = np.random.default_rng(seed)
    lines = []
    failures = 0
    worst = math.inf
    for t in range(trials):
        n = int(rng.integers(2, 5))
        k1 = int(rng.integers(2, 5))
        k2 = int(rng.integers(2, 5))
        ch = random_channel(rng, n, k1, floor=0.0)
        kern = random_channel(rng, k1, k2, floor=0.0)
        p = rng.dirichlet(np.ones(n))
        slack = mutual_information(p, ch) - mutual_information(p, cascade(ch, kern)) + 1e-12
        worst = min(worst, slack)
        ok = slack >= 0.0
        failures += (not ok)
        lines.append(f"trial {t}: slack {slack:.3e} {'ok' if ok else 'FAIL'}")
    return SuiteResult("dpi", trials, failures, worst, tuple(lines))


def eta_bounds_suite(trials: int = 100, seed: int = 0, div_trials: int = 10_000, budget: GridSpec | None = None) -> SuiteResult:
    """Contraction-constant bounds on eta_ln over random and degraded pairs.

    Random pairs: eta_ln >= eta_kl(ch2)/eta_kl(ch1) - 1e-6 and the
    divergence-ratio search never exceeds eta_ln + 1e-6. Degraded pairs:
    eta_ln <= eta_kl(kernel) + 1e-6.
    """
    rng = np.random.default_rng(seed)
    budget = budget or GridSpec(resolution=48, restarts=16)
    lines = []
    failures = 0
    worst = math.inf
    for t in range(trials):
        n = int(rng.integers(2, 5))
        k1 = int(rng.integers(2, 5))
        k2 = int(rng.integers(2, 5))
        ch1 = random_distinct_channel(rng, n, k1)
        ch2 = random_distinct_channel(rng, n, k2)
        rep = eta_bounds_report(ch1, ch2, budget)
        div = eta_ln_div_lower(ch1, ch2, trials=div_trials, seed=int(rng.integers(1 << 31)))
        div_slack = rep.eta_ln.value - div + 1e-6
        slack = min(rep.lower_slack + 1e-6, div_slack)
        worst = min(worst, slack)
        ok = slack >= 0.0
        failures += (not ok)
        lines.append(
            f"trial {t}: lower slack {rep.lower_slack:+.2e} div slack {div_slack - 1e-6:+.2e} {'ok' if ok else 'FAIL'}"
        )
    for t in range(trials):
        n = int(rng.integers(2, 5))
        k1 = int(rng.integers(2, 5))
        k2 = int(rng.integers(2, 5))
        ch1, kernel, ch2 = random_degraded_pair(rng, n, k1, k2)
        rep = eta_bounds_report(ch1, ch2, budget)
        if rep.upper_slack is None:
            lines.append(f"degraded trial {t}: factorization not recovered FAIL")
            failures += 1
            continue
        slack = rep.upper_slack + 1e-6
        worst = min(worst, slack)
        ok = slack >= 0.0
        failures += (not ok)
        lines.append(f"degraded trial {t}: upper slack {rep.upper_slack:+.2e} {'ok' if ok else 'FAIL'}")
    return SuiteResult("eta-bounds", 2 * trials, failures, worst, tuple(lines))


def bc_tightness_suite(trials: int = 20, seed: int = 0, budget: GridSpec | None = None) -> SuiteResult:
    """Inner/outer frontier agreement on random degraded binary-input pairs.

    The conference capacity is set to half its cap; requires frontier
    Hausdorff distance <= 5e-3 bits and dominance slack >= -1e-6.
    """
    rng = np.random.default_rng(seed)
    budget = budget or GridSpec(restarts=32)
    lines = []
    failures = 0
    worst = math.inf
    t = 0
    attempts = 0
    while t < trials and attempts < 20 * trials:
        attempts += 1
        k1 = int(rng.integers(2, 4))
        k2 = int(rng.integers(2, 4))
        ch1, kernel, ch2 = random_degraded_pair(rng, 2, k1, k2)
        eta = eta_ln(ch1, ch2, budget)
        if not eta.comparable or eta.value > 1.0 - 1e-3 or capacity_ba(ch2, tol=1e-11).capacity <= 1e-6:
            continue
        c2 = capacity_ba(ch2, tol=1e-11).capacity
        c12 = 0.5 * (1.0 - eta.value) / eta.value * c2
        rep = bc_tightness_check(ch1, ch2, c12, budget=GridSpec(restarts=budget.restarts, seed=seed + t))
        dh = rep.thresholds.get("hausdorff", math.inf)
        dom = rep.thresholds.get("dominance_slack", -math.inf)
        slack = min(5e-3 - dh, dom + 1e-6)
        worst = min(worst, slack)
        ok = rep.conditions_hold and slack >= 0.0
        failures += (not ok)
        lines.append(f"trial {t}: hausdorff {dh:.2e} dominance {dom:+.2e} {'ok' if ok else 'FAIL'}")
        t += 1
    if t < trials:
        failures += trials - t
        lines.append(f"only {t}/{trials} admissible pairs drawn")
    return SuiteResult("bc-tightness", trials, failures, worst, tuple(lines))


def bdc_suite(trials: int = 20, seed: int = 0, budget: GridSpec | None = None) -> SuiteResult:
    """Diamond-channel capacity consistency on constructed degraded triples.

    Links are set to half their caps so the closed form C3 + c13 + c23
    applies; checks that the single-input-law achievable rate matches it
    and that the reported value never exceeds the cut bound.
    """
    rng = np.random.default_rng(seed)
    budget = budget or GridSpec(restarts=16)
    lines = []
    failures = 0
    worst = math.inf
    t = 0
    attempts = 0
    while t < trials and attempts < 20 * trials:
        attempts += 1
        ch1 = random_distinct_channel(rng, 2, int(rng.integers(2, 4)))
        ch2 = cascade(ch1, random_channel(rng, ch1.output_size, int(rng.integers(2, 4))))
        ch3 = cascade(ch2, random_channel(rng, ch2.output_size, int(rng.integers(2, 4))))
        c3 = capacity_ba(ch3, tol=1e-11).capacity
        if c3 <= 1e-4:
            continue
        eta23 = eta_mc(ch2, ch3, budget)
        eta13 = eta_mc(ch1, ch3, budget)
        if not (eta23.comparable and eta13.comparable) or min(eta23.value, eta13.value) <= 1e-6:
            continue
        c23 = 0.5 * (1.0 - eta23.value) / eta23.value * c3
        room = (1.0 - eta13.value) / eta13.value * c3 - c23
        if room <= 1e-9:
            continue
        c13 = 0.5 * room
        rep = bdc_capacity(ch1, ch2, ch3, c13, c23, budget)
        if not rep.conditions_hold:
            failures += 1
            lines.append(f"trial {t}: conditions unexpectedly FAIL")
            t += 1
            continue
        cap = rep.capacity_or_region
        ach = bdc_achievable(ch1, ch2, ch3, c13, c23, None, GridSpec(restarts=8, seed=seed + t))
        slack = min(1e-6 - abs(ach.rate_u_eq_x - cap), rep.thresholds["cut_bound"] - cap + 1e-9)
        worst = min(worst, slack)
        ok = slack >= 0.0
        failures += (not ok)
        lines.append(f"trial {t}: |achievable - capacity| {abs(ach.rate_u_eq_x - cap):.2e} {'ok' if ok else 'FAIL'}")
        t += 1
    if t < trials:
        failures += trials - t
        lines.append(f"only {t}/{trials} admissible triples drawn")
    return SuiteResult("bdc", trials, failures, worst, tuple(lines))


SUITES = {
    "eta-bounds": eta_bounds_suite,
    "bc-tightness": bc_tightness_suite,
    "bdc": bdc_suite,
    "dpi": dpi_suite,
    "hessian": hessian_suite,
}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](trials=trials, seed=seed)
