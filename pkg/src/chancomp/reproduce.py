"""Reference tables: computed coefficients next to their closed forms.

Targets:
  bec-table    eta_ln / eta_mc for erasure-channel pairs vs (1-p2)/(1-p1)
  bsc-table    eta_ln vs ((1-2p2)/(1-2p1))^2 and eta_mc vs capacity ratio
  zbsc-table   eta_ln for (Z(0.3), BSC(p)) vs the 1-d curvature-condition
               maximum evaluated on a dense theta grid
  zbsc-sweep   p sweep at eps = 0.3: eta_ln, the contraction-constant
               ratio, and the comparability flag (eta_ln <= 1)
"""

from __future__ import annotations

import numpy as np

from .degradedness import eta_kl, eta_ln, eta_mc
from .channels import standard_channel
from .infotheory import binary_entropy
from .search import GridSpec

__all__ = ["TARGETS", "run_target", "zbsc_condition_max"]

PAIR_GRID = [round(0.05 * k, 2) for k in range(1, 10)]  # 0.05 .. 0.45
SWEEP_GRID = [round(0.005 * k, 3) for k in range(1, 101)]  # 0.005 .. 0.500
ZBSC_EPS = 0.3


def zbsc_condition_max(eps: float, p: float, grid_points: int = 10_001) -> float:
    """Least eta making the Z/BSC objective concave, from the 1-d condition.

    eta must dominate (1-2p)^2/(1-eps) * K(theta) over theta in [0, 1],
    with K(theta) = (1-theta)(theta(1-eps)+eps) / ((theta*p)(1-theta*p))
    and theta*p the binary convolution.
    """
    theta = np.linspace(0.0, 1.0, grid_points)
    conv = theta * (1.0 - p) + (1.0 - theta) * p
    k = (1.0 - theta) * (theta * (1.0 - eps) + eps) / (conv * (1.0 - conv))
    return float((1.0 - 2.0 * p) ** 2 / (1.0 - eps) * np.max(k))


def bec_table(budget: GridSpec):
    header = ["p1", "p2", "eta_ln", "eta_mc", "closed_form"]
    rows = []
    for p1 in PAIR_GRID:
        for p2 in PAIR_GRID:
            if p1 >= p2:
                continue
            ch1 = standard_channel("bec", p1)
            ch2 = standard_channel("bec", p2)
            closed = (1.0 - p2) / (1.0 - p1)
            rows.append([p1, p2, eta_ln(ch1, ch2, budget).value, eta_mc(ch1, ch2, budget).value, closed])
    return header, rows


def bsc_table(budget: GridSpec):
    header = ["p1", "p2", "eta_ln", "eta_ln_closed", "eta_mc", "eta_mc_closed"]
    rows = []
    for p1 in PAIR_GRID:
        for p2 in PAIR_GRID:
            if p1 >= p2:
                continue
            ch1 = standard_channel("bsc", p1)
            ch2 = standard_channel("bsc", p2)
            ln_closed = (1.0 - 2.0 * p2) ** 2 / (1.0 - 2.0 * p1) ** 2
            mc_closed = (1.0 - binary_entropy(p2)) / (1.0 - binary_entropy(p1))
            rows.append(
                [p1, p2, eta_ln(ch1, ch2, budget).value, ln_closed, eta_mc(ch1, ch2, budget).value, mc_closed]
            )
    return header, rows


def zbsc_table(budget: GridSpec):
    header = ["p", "eta_ln", "condition_max"]
    z = standard_channel("zchannel", ZBSC_EPS)
    rows = []
    for p in PAIR_GRID:
        bsc = standard_channel("bsc", p)
        rows.append([p, eta_ln(z, bsc, budget).value, zbsc_condition_max(ZBSC_EPS, p)])
    return header, rows


def zbsc_sweep(budget: GridSpec):
    header = ["p", "eta_ln", "eta_kl_ratio", "degraded_flag"]
    z = standard_channel("zchannel", ZBSC_EPS)
    kl_z = eta_kl(z, budget).value
    rows = []
    for p in SWEEP_GRID:
        bsc = standard_channel("bsc", p)
        value = eta_ln(z, bsc, budget).value
        if p < 0.5:
            ratio = eta_kl(bsc, budget).value / kl_z
        else:
            ratio = 0.0  # BSC(1/2) carries no information
        rows.append([p, value, ratio, value <= 1.0 + 1e-9])
    return header, rows


TARGETS = {
    "bec-table": bec_table,
    "bsc-table": bsc_table,
    "zbsc-table": zbsc_table,
    "zbsc-sweep": zbsc_sweep,
}


def run_target(name: str, budget: GridSpec | None = None):
    if name not in TARGETS:
        raise KeyError(f"unknown reproduce target {name!r}; choose from {sorted(TARGETS)}")
    return TARGETS[name](budget or GridSpec())
