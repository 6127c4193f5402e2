"""Quantified degradedness between pairs of discrete memoryless channels.

The central quantity is the least multiplier eta such that
eta * I(U;Y1) >= I(U;Y2) for every auxiliary U with U -> X -> (Y1, Y2).
That relation holds for a given eta exactly when
eta * I(X;Y1) - I(X;Y2) is concave over the input simplex, which turns the
auxiliary-variable supremum into a pointwise curvature comparison: at each
interior input law, maximize the ratio of the two (negated) mutual
information Hessians over the tangent space of the simplex. The inner
problem is a generalized symmetric eigenvalue maximization, solved by
Cholesky whitening of the denominator form; the outer supremum runs over a
simplex grid with golden-section / coordinate-transfer refinement and a
Richardson extrapolation toward non-evaluable boundary faces.

The single-channel contraction constant (eta_kl) is the same computation
against the identity channel. The more-capable coefficient (eta_mc) is a
direct supremum of the mutual-information ratio over input laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    Channel,
    DimensionMismatch,
    Distribution,
    PreconditionError,
    as_distribution,
    cascade,
    make_channel,
    standard_channel,
)
from .infotheory import _entropy_bits, _kl_bits, _mi_bits, _neg_hessian_nats
from .search import (
    GridSpec,
    boundary_probes,
    compass_refine,
    effective_resolution,
    golden_max,
    simplex_grid,
    tangent_basis,
)
from .simplex_lp import solve_feasibility

__all__ = [
    "EtaReport",
    "DegradednessCertificate",
    "EtaBoundsReport",
    "test_degraded",
    "eta_ln",
    "eta_mc",
    "eta_kl",
    "eta_ln_div_lower",
    "eta_bounds_report",
    "check_concavity",
]

COMPARABLE_TOL = 1e-9
RATIO_FLOOR = 1e-10  # bits; inputs with I(X;Y1) below this are excluded from ratio suprema


@dataclass(frozen=True)
class EtaReport:
    """A degradedness coefficient with the argument approaching its supremum.

    value may exceed 1 (comparable is False then) and may be +inf when the
    denominator curvature degenerates in a direction the numerator does not.
    certified_gap records the sensitivity of the value to doubling the
    search resolution, plus any boundary-extrapolation correction.
    """

    value: float
    comparable: bool
    witness: Distribution
    method: str
    certified_gap: float
    direction: np.ndarray | None = None


@dataclass(frozen=True)
class DegradednessCertificate:
    """Outcome of the exact stochastic-degradedness factorization test.

    When degraded, `intermediate` satisfies cascade(ch1, intermediate) == ch2
    up to `residual` in max-abs. Otherwise `dual_certificate` is a linear
    functional separating ch2 from the factorizable set, with margin
    `dual_margin` > 0. Status "indeterminate" is returned when the solver
    lands between the primal and dual tolerance bands.
    """

    degraded: bool
    status: str
    intermediate: Channel | None
    residual: float
    dual_certificate: np.ndarray | None
    dual_margin: float


def _require_same_input(ch1: Channel, ch2: Channel):
    if ch1.input_size != ch2.input_size:
        raise DimensionMismatch(
            f"channels have input alphabets of size {ch1.input_size} and {ch2.input_size}"
        )


def _has_positive_capacity(ch: Channel) -> bool:
    # Capacity is zero exactly when all rows coincide.
    return bool(np.max(np.abs(ch.rows - ch.rows[0])) > 1e-12)


def _require_positive_capacity(ch: Channel, which: str):
    if not _has_positive_capacity(ch):
        raise PreconditionError(f"{which} has zero capacity (all rows identical)")


# ---------------------------------------------------------------------------
# Stochastic degradedness: exact linear feasibility
# ---------------------------------------------------------------------------


def test_degraded(ch1: Channel, ch2: Channel, tol: float = 1e-9) -> DegradednessCertificate:
    """Decide whether ch2 = K o ch1 for some row-stochastic kernel K.

    The kernel entries are the LP variables; equality of the composed
    kernel with ch2 and row-stochasticity of K are the constraints. Solved
    by a phase-one simplex with Bland's rule.
    """
    _require_same_input(ch1, ch2)
    n = ch1.input_size
    k1 = ch1.output_size
    k2 = ch2.output_size
    nvars = k1 * k2
    rows_a = []
    rhs = []
    for x in range(n):
        for y2 in range(k2):
            row = np.zeros(nvars)
            for y1 in range(k1):
                row[y1 * k2 + y2] = ch1.rows[x, y1]
            rows_a.append(row)
            rhs.append(ch2.rows[x, y2])
    for y1 in range(k1):
        row = np.zeros(nvars)
        row[y1 * k2 : (y1 + 1) * k2] = 1.0
        rows_a.append(row)
        rhs.append(1.0)
    res = solve_feasibility(np.array(rows_a), np.array(rhs), tol=tol)

    if res.feasible:
        kernel = res.x.reshape(k1, k2)
        kernel = np.clip(kernel, 0.0, None)
        kernel /= kernel.sum(axis=1, keepdims=True)
        intermediate = make_channel(kernel)
        residual = float(np.max(np.abs(ch1.rows @ kernel - ch2.rows)))
        if residual <= 1e-7:
            return DegradednessCertificate(True, "degraded", intermediate, residual, None, 0.0)
        return DegradednessCertificate(False, "indeterminate", intermediate, residual, None, 0.0)
    if res.dual_margin >= tol:
        return DegradednessCertificate(False, "not_degraded", None, math.inf, res.dual, res.dual_margin)
    return DegradednessCertificate(False, "indeterminate", None, math.inf, res.dual, res.dual_margin)


test_degraded.__test__ = False  # not a pytest test


# ---------------------------------------------------------------------------
# Curvature machinery for eta_ln / eta_kl
# ---------------------------------------------------------------------------


def _max_generalized_eig(At: np.ndarray, Bt: np.ndarray):
    """Max of v'At v / v'Bt v with At, Bt symmetric PSD; returns (value, v, is_inf)."""
    scale_b = float(np.max(np.abs(Bt))) if Bt.size else 0.0
    scale_a = float(np.max(np.abs(At))) if At.size else 0.0
    if scale_b <= 0.0:
        if scale_a <= 0.0:
            return 0.0, np.zeros(Bt.shape[0]), False
        vals, vecs = np.linalg.eigh(At)
        return math.inf, vecs[:, -1], True
    use_chol = True
    L = None
    try:
        L = np.linalg.cholesky(Bt)
        if np.min(np.diag(L)) < math.sqrt(scale_b) * 1e-7:
            use_chol = False
    except np.linalg.LinAlgError:
        use_chol = False
    if use_chol:
        Y = np.linalg.solve(L, At)
        M = np.linalg.solve(L, Y.T).T
        M = 0.5 * (M + M.T)
        vals, vecs = np.linalg.eigh(M)
        v = np.linalg.solve(L.T, vecs[:, -1])
        return float(vals[-1]), v, False
    # Whitening failed: split the denominator eigenbasis into null and range parts.
    w, V = np.linalg.eigh(Bt)
    wmax = max(float(w[-1]), 0.0)
    null = w <= wmax * 1e-12
    for idx in np.nonzero(null)[0]:
        u = V[:, idx]
        if float(u @ At @ u) > 1e-11 * max(1.0, scale_a):
            return math.inf, u, True
    pos = ~null
    if not np.any(pos):
        return 0.0, V[:, 0], False
    C = V[:, pos] / np.sqrt(w[pos])
    M = C.T @ At @ C
    M = 0.5 * (M + M.T)
    vals, vecs = np.linalg.eigh(M)
    v = C @ vecs[:, -1]
    return float(vals[-1]), v, False


def _curvature_ratio_at(W1: np.ndarray, W2: np.ndarray, basis: np.ndarray, p: np.ndarray):
    """Largest tangent-space curvature ratio at input law p, or None if not evaluable."""
    q1 = p @ W1
    q2 = p @ W2
    if q1.min() <= 0.0 or q2.min() <= 0.0:
        return None
    B = _neg_hessian_nats(W1, p)
    A = _neg_hessian_nats(W2, p)
    Bt = basis.T @ B @ basis
    At = basis.T @ A @ basis
    val, v_t, is_inf = _max_generalized_eig(At, Bt)
    v = basis @ v_t
    nv = np.linalg.norm(v)
    if nv > 0:
        v = v / nv
    return val, v, is_inf


def _binary_ratio_grid(W1: np.ndarray, W2: np.ndarray, thetas: np.ndarray):
    """Vectorized curvature ratio for binary-input channels; NaN where not evaluable."""
    P = np.stack([1.0 - thetas, thetas], axis=1)
    Q1 = P @ W1
    Q2 = P @ W2
    ok = (Q1 > 0.0).all(axis=1) & (Q2 > 0.0).all(axis=1)
    d1 = W1[0] - W1[1]
    d2 = W2[0] - W2[1]
    qf1 = np.where(ok, (d1 * d1 / np.where(Q1 > 0, Q1, 1.0)).sum(axis=1), np.nan)
    qf2 = np.where(ok, (d2 * d2 / np.where(Q2 > 0, Q2, 1.0)).sum(axis=1), np.nan)
    return np.where(ok, qf2 / qf1, np.nan)


def _clamp_interior(p: np.ndarray, margin: float) -> np.ndarray:
    q = np.maximum(p, margin)
    return q / q.sum()


def _richardson_toward_boundary(eval_fn, p_near: np.ndarray, margin: float):
    """Extrapolate the ratio toward a non-evaluable boundary point.

    `p_near` sits at the interior margin; its near-zero coordinates are
    snapped to the boundary and re-approached at margins m, m/2, m/4.
    Returns (value, extra_gap, diverges). Divergence (a 1/margin blow-up)
    is flagged when the increments fail to halve as the margin halves.
    """
    p_raw = np.where(p_near <= margin * 1.5, 0.0, p_near)
    total = p_raw.sum()
    if total <= 0.0:
        return None, 0.0, False
    p_raw = p_raw / total
    f = []
    for m in (margin, margin / 2.0, margin / 4.0):
        val = eval_fn(_clamp_interior(p_raw, m))
        if val is None or not np.isfinite(val):
            return None, 0.0, val is not None
        f.append(val)
    d1 = f[1] - f[0]
    d2 = f[2] - f[1]
    if d2 <= 1e-15:
        return f[2], abs(d2), False
    if d1 > 0 and d2 >= 0.75 * d1:
        return None, 0.0, True
    extrapolated = f[2] + d2
    return extrapolated, abs(extrapolated - f[2]), False


def _sup_curvature_ratio(W1, W2, budget: GridSpec, seeds):
    """One search pass; returns (value, point, direction, is_inf, used_boundary_clamp)."""
    n = W1.shape[0]
    margin = budget.interior_margin
    basis = tangent_basis(n)

    def ratio_value(p):
        out = _curvature_ratio_at(W1, W2, basis, p)
        if out is None:
            return None
        return math.inf if out[2] else out[0]

    def ratio_for_refine(p):
        v = ratio_value(p)
        return -math.inf if v is None else v

    if n == 2:
        res = 4 * max(2, budget.resolution) + 1
        thetas = np.linspace(0.0, 1.0, res)
        vals = _binary_ratio_grid(W1, W2, thetas)
        clamped = np.isnan(vals)
        th = np.where(clamped, np.clip(thetas, margin, 1.0 - margin), thetas)
        vals = np.where(clamped, _binary_ratio_grid(W1, W2, th), vals)
        seed_thetas = np.array([float(np.asarray(s)[1]) for s in seeds]) if seeds else np.empty(0)
        probe = np.concatenate(
            [th, np.clip(seed_thetas, margin, 1.0 - margin), np.array([margin, 1.0 - margin])]
        )
        pv = _binary_ratio_grid(W1, W2, probe)
        best_idx = int(np.nanargmax(pv))
        best_theta = float(probe[best_idx])
        best_val = float(pv[best_idx])
        step = 1.0 / (res - 1)
        lo = max(0.0 if not np.isnan(_binary_ratio_grid(W1, W2, np.array([0.0]))[0]) else margin, best_theta - step)
        hi = min(1.0 if not np.isnan(_binary_ratio_grid(W1, W2, np.array([1.0]))[0]) else 1.0 - margin, best_theta + step)

        def f_theta(t):
            v = _binary_ratio_grid(W1, W2, np.array([t]))[0]
            return -math.inf if np.isnan(v) else float(v)

        t_ref, v_ref = golden_max(f_theta, lo, hi, budget.refine_iters)
        if v_ref > best_val:
            best_theta, best_val = t_ref, v_ref
        p_best = np.array([1.0 - best_theta, best_theta])
        out = _curvature_ratio_at(W1, W2, basis, _clamp_interior(p_best, 1e-15) if ratio_value(p_best) is None else p_best)
        direction = out[1] if out is not None else basis[:, 0]
        at_clamped_edge = (
            best_theta <= margin * 1.001 and np.isnan(_binary_ratio_grid(W1, W2, np.array([0.0]))[0])
        ) or (
            best_theta >= 1.0 - margin * 1.001 and np.isnan(_binary_ratio_grid(W1, W2, np.array([1.0]))[0])
        )
        return best_val, p_best, direction, False, at_clamped_edge

    eff = effective_resolution(budget.resolution, n)
    raw_pts = [simplex_grid(n, eff), boundary_probes(n), np.full((1, n), 1.0 / n)]
    if seeds:
        raw_pts.append(np.array([np.asarray(s, dtype=float) for s in seeds]))
    candidates = np.vstack(raw_pts)

    best_val = -math.inf
    best_p = None
    best_dir = None
    clamped_best = False
    for p in candidates:
        out = _curvature_ratio_at(W1, W2, basis, p)
        was_clamped = False
        if out is None:
            p = _clamp_interior(p, margin)
            out = _curvature_ratio_at(W1, W2, basis, p)
            was_clamped = True
            if out is None:
                continue
        val, v, is_inf = out
        if is_inf:
            return math.inf, p, v, True, False
        if val > best_val:
            best_val, best_p, best_dir, clamped_best = val, p, v, was_clamped
    if best_p is None:
        raise PreconditionError("no evaluable input law found for the curvature ratio")

    p_ref, v_ref = compass_refine(ratio_for_refine, best_p, margin, passes=2, iters=budget.refine_iters)
    if v_ref > best_val and np.isfinite(v_ref):
        best_val, best_p, clamped_best = v_ref, p_ref, True
        out = _curvature_ratio_at(W1, W2, basis, p_ref)
        if out is not None:
            best_dir = out[1]
    return best_val, best_p, best_dir, False, clamped_best or bool(best_p.min() <= margin * 1.001)


def eta_ln(ch1: Channel, ch2: Channel, budget: GridSpec | None = None, seeds=()) -> EtaReport:
    """Least eta with eta*I(U;Y1) >= I(U;Y2) for all U -> X -> (Y1, Y2).

    Computed as the supremum over input laws and tangent directions of the
    curvature ratio of the two mutual informations. `seeds` may carry
    additional input laws to include among the candidates.
    """
    _require_same_input(ch1, ch2)
    _require_positive_capacity(ch1, "first channel")
    budget = budget or GridSpec()
    W1, W2 = ch1.rows, ch2.rows
    seed_arrs = [as_distribution(s).probs for s in seeds]

    v1, p1, d1, inf1, clamped1 = _sup_curvature_ratio(W1, W2, budget, seed_arrs)
    if inf1:
        return EtaReport(math.inf, False, Distribution(_clamp_interior(p1, 1e-12)), "eigen-grid", math.inf, d1)
    v2, p2, d2, inf2, clamped2 = _sup_curvature_ratio(W1, W2, budget.doubled(), seed_arrs)
    if inf2:
        return EtaReport(math.inf, False, Distribution(_clamp_interior(p2, 1e-12)), "eigen-grid", math.inf, d2)
    gap = abs(v2 - v1)
    if v2 >= v1:
        value, point, direction, clamped = v2, p2, d2, clamped2
    else:
        value, point, direction, clamped = v1, p1, d1, clamped1

    extra_gap = 0.0
    if clamped:
        basis = tangent_basis(W1.shape[0])

        def eval_fn(p):
            out = _curvature_ratio_at(W1, W2, basis, p)
            if out is None:
                return None
            return math.inf if out[2] else out[0]

        extrapolated, e_gap, diverges = _richardson_toward_boundary(eval_fn, point, budget.interior_margin)
        if diverges:
            return EtaReport(math.inf, False, Distribution(_clamp_interior(point, 1e-12)), "eigen-grid", math.inf, direction)
        if extrapolated is not None and extrapolated > value:
            value = extrapolated
            extra_gap = e_gap

    witness = Distribution(_clamp_interior(point, 1e-12))
    return EtaReport(value, value <= 1.0 + COMPARABLE_TOL, witness, "eigen-grid", gap + extra_gap, direction)


def eta_kl(ch: Channel, budget: GridSpec | None = None, seeds=()) -> EtaReport:
    """Contraction constant of a single channel: eta_ln against the identity."""
    _require_positive_capacity(ch, "channel")
    return eta_ln(standard_channel("identity", ch.input_size), ch, budget, seeds)


# ---------------------------------------------------------------------------
# More-capable coefficient: direct mutual-information ratio
# ---------------------------------------------------------------------------


def _mi_ratio_grid_binary(W1, W2, thetas):
    P = np.stack([1.0 - thetas, thetas], axis=1)
    h1 = _entropy_bits(W1)
    h2 = _entropy_bits(W2)
    i1 = _entropy_bits(P @ W1) - P @ h1
    i2 = _entropy_bits(P @ W2) - P @ h2
    ok = i1 > RATIO_FLOOR
    return np.where(ok, i2 / np.where(ok, i1, 1.0), np.nan)


def _sup_mi_ratio(W1, W2, budget: GridSpec, seeds):
    n = W1.shape[0]

    def ratio(p):
        i1 = _mi_bits(p, W1)
        if i1 <= RATIO_FLOOR:
            return -math.inf
        return _mi_bits(p, W2) / i1

    if n == 2:
        res = 4 * max(2, budget.resolution) + 1
        thetas = np.linspace(0.0, 1.0, res)
        extra = np.concatenate(
            [
                np.array([s[1] for s in seeds]) if seeds else np.empty(0),
                np.geomspace(1e-9, 1e-2, 8),
                1.0 - np.geomspace(1e-9, 1e-2, 8),
            ]
        )
        grid = np.concatenate([thetas, np.clip(extra, 0.0, 1.0)])
        vals = _mi_ratio_grid_binary(W1, W2, grid)
        if np.all(np.isnan(vals)):
            raise PreconditionError("first channel has zero capacity on the whole grid")
        best = int(np.nanargmax(vals))
        best_theta, best_val = float(grid[best]), float(vals[best])
        step = 1.0 / (res - 1)

        def f_theta(t):
            return ratio(np.array([1.0 - t, t]))

        t_ref, v_ref = golden_max(f_theta, max(0.0, best_theta - step), min(1.0, best_theta + step), budget.refine_iters)
        if v_ref > best_val:
            best_theta, best_val = t_ref, v_ref
        return best_val, np.array([1.0 - best_theta, best_theta])

    eff = effective_resolution(budget.resolution, n)
    candidates = [simplex_grid(n, eff), boundary_probes(n), np.full((1, n), 1.0 / n)]
    if seeds:
        candidates.append(np.array([np.asarray(s, dtype=float) for s in seeds]))
    pts = np.vstack(candidates)
    vals = np.array([ratio(p) for p in pts])
    best = int(np.argmax(vals))
    best_p, best_val = pts[best], vals[best]
    p_ref, v_ref = compass_refine(ratio, best_p, 0.0, passes=2, iters=budget.refine_iters)
    if v_ref > best_val:
        best_p, best_val = p_ref, v_ref
    return best_val, best_p


def eta_mc(ch1: Channel, ch2: Channel, budget: GridSpec | None = None, seeds=()) -> EtaReport:
    """Least eta with eta*I(X;Y1) >= I(X;Y2) for every input law.

    Supremum of the mutual-information ratio over input laws with
    I(X;Y1) above a small floor; multi-start grid plus golden refinement.
    """
    _require_same_input(ch1, ch2)
    _require_positive_capacity(ch1, "first channel")
    budget = budget or GridSpec()
    seed_arrs = [as_distribution(s).probs for s in seeds]
    v1, p1 = _sup_mi_ratio(ch1.rows, ch2.rows, budget, seed_arrs)
    v2, p2 = _sup_mi_ratio(ch1.rows, ch2.rows, budget.doubled(), seed_arrs)
    value, point = (v2, p2) if v2 >= v1 else (v1, p1)
    witness = Distribution(_clamp_interior(point, 1e-12))
    return EtaReport(value, value <= 1.0 + COMPARABLE_TOL, witness, "ratio-grid", abs(v2 - v1), None)


# ---------------------------------------------------------------------------
# Divergence-ratio lower bound on eta_ln
# ---------------------------------------------------------------------------


DIV_FLOOR = 1e-6  # bits; quotients of vanishing divergences amplify rounding noise


def eta_ln_div_lower(ch1: Channel, ch2: Channel, trials: int = 10_000, seed: int = 0) -> float:
    """Best output-divergence ratio over random input pairs (P, Q).

    Each feasible pair (finite divergence through ch1, above a small
    floor) gives a lower bound on eta_ln; random sampling is refined by
    multiplicative coordinate ascent on the best candidates. The floor
    keeps the quotient numerically trustworthy; the supremum is still
    approached because the ratio extends continuously to coinciding
    arguments.
    """
    _require_same_input(ch1, ch2)
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    n = ch1.input_size
    if n < 2:
        raise PreconditionError("single-letter input alphabet admits no feasible (P, Q) pair")
    W1, W2 = ch1.rows, ch2.rows
    rng = np.random.default_rng(seed)

    def ratios(P, Q):
        d1 = _kl_bits(P @ W1, Q @ W1)
        d2 = _kl_bits(P @ W2, Q @ W2)
        ok = np.isfinite(d1) & (d1 > DIV_FLOOR) & np.isfinite(d2)
        return np.where(ok, d2 / np.where(ok, d1, 1.0), -np.inf)

    P = rng.dirichlet(np.ones(n), size=trials)
    Q = rng.dirichlet(np.ones(n), size=trials)
    r = ratios(P, Q)
    if not np.any(np.isfinite(r) & (r > -np.inf)):
        raise PreconditionError("no feasible (P, Q) pair found")
    order = np.argsort(r)[::-1][: min(5, trials)]
    best = float(r[order[0]])

    for idx in order:
        p = P[idx].copy()
        q = Q[idx].copy()
        cur = float(ratios(p[None, :], q[None, :])[0])
        step = 0.5
        for _ in range(160):
            improved = False
            for which in (0, 1):
                base = p if which == 0 else q
                for i in range(n):
                    for sgn in (1.0, -1.0):
                        trial = base * np.exp(sgn * step * (np.arange(n) == i))
                        trial = trial / trial.sum()
                        cand_p, cand_q = (trial, q) if which == 0 else (p, trial)
                        val = float(ratios(cand_p[None, :], cand_q[None, :])[0])
                        if val > cur + 1e-14:
                            cur = val
                            if which == 0:
                                p = trial
                            else:
                                q = trial
                            improved = True
            if not improved:
                step *= 0.5
                if step < 1e-4:
                    break
        best = max(best, cur)
    return best


# ---------------------------------------------------------------------------
# Concavity check and the bounds report
# ---------------------------------------------------------------------------


def check_concavity(ch1: Channel, ch2: Channel, eta: float, grid: GridSpec | None = None):
    """Is eta*I(X;Y1) - I(X;Y2) concave over the input simplex?

    True iff eta*(-H1) - (-H2) is positive semidefinite on the simplex
    tangent space at every grid point. The eigenvalue floor is scaled by
    the local curvature magnitude so that boundary-adjacent points (where
    the Hessians blow up like 1/margin) are judged at a consistent
    relative precision. Returns (ok, worst_point, worst_eigenvalue).
    """
    _require_same_input(ch1, ch2)
    if eta <= 0:
        raise PreconditionError("eta must be positive")
    grid = grid or GridSpec()
    n = ch1.input_size
    W1, W2 = ch1.rows, ch2.rows
    basis = tangent_basis(n)
    eff = effective_resolution(4 * grid.resolution if n == 2 else grid.resolution, n)
    pts = np.vstack([simplex_grid(n, eff), boundary_probes(n), np.full((1, n), 1.0 / n)])
    worst_val = math.inf
    worst_p = pts[0]
    for p in pts:
        q1 = p @ W1
        q2 = p @ W2
        if q1.min() <= 0.0 or q2.min() <= 0.0:
            p = _clamp_interior(p, grid.interior_margin)
        B = _neg_hessian_nats(W1, p)
        A = _neg_hessian_nats(W2, p)
        M = basis.T @ (eta * B - A) @ basis
        M = 0.5 * (M + M.T)
        scale = max(1.0, float(np.max(np.abs(basis.T @ (eta * B) @ basis))))
        lam = float(np.linalg.eigvalsh(M)[0]) / scale
        if lam < worst_val:
            worst_val = lam
            worst_p = p
    ok = worst_val >= -1e-9
    return ok, Distribution(_clamp_interior(worst_p, 1e-12)), worst_val


@dataclass(frozen=True)
class EtaBoundsReport:
    """Sandwich bounds relating eta_ln to single-channel contraction constants.

    lower bound: eta_kl(ch2) / eta_kl(ch1) <= eta_ln always; when the pair
    is stochastically degraded with intermediate K, eta_ln <= eta_kl(K).
    """

    eta_ln: EtaReport
    eta_kl_first: EtaReport
    eta_kl_second: EtaReport
    lower_bound: float
    lower_slack: float
    degraded: bool
    intermediate: Channel | None
    eta_kl_intermediate: EtaReport | None
    upper_bound: float | None
    upper_slack: float | None
    passed: bool


def eta_bounds_report(ch1: Channel, ch2: Channel, budget: GridSpec | None = None) -> EtaBoundsReport:
    """Evaluate the contraction-constant bounds on eta_ln for a channel pair.

    Witness input laws are forwarded between the three searches so the
    reported inequalities hold by construction up to floating-point error:
    the witness achieving eta_kl(ch2) is a candidate in both the eta_ln
    and the eta_kl(ch1) searches, and the eta_ln witness (pushed through
    ch1) is a candidate when bounding via the factorization kernel.
    """
    _require_same_input(ch1, ch2)
    _require_positive_capacity(ch1, "first channel")
    _require_positive_capacity(ch2, "second channel")
    budget = budget or GridSpec()

    kl2 = eta_kl(ch2, budget)
    kl1 = eta_kl(ch1, budget, seeds=(kl2.witness,))
    ln = eta_ln(ch1, ch2, budget, seeds=(kl2.witness,))
    lower = kl2.value / kl1.value if kl1.value > 0 else math.inf
    lower_slack = ln.value - lower

    cert = test_degraded(ch1, ch2)
    upper = None
    upper_slack = None
    kl_mid = None
    if cert.degraded and _has_positive_capacity(cert.intermediate):
        seed_q = Distribution(_clamp_interior(ln.witness.probs @ ch1.rows, 1e-12))
        kl_mid = eta_kl(cert.intermediate, budget, seeds=(seed_q,))
        upper = kl_mid.value
        upper_slack = upper - ln.value
    passed = lower_slack >= -1e-6 and (upper_slack is None or upper_slack >= -1e-6)
    return EtaBoundsReport(
        ln,
        kl1,
        kl2,
        lower,
        lower_slack,
        cert.degraded,
        cert.intermediate,
        kl_mid,
        upper,
        upper_slack,
        passed,
    )
