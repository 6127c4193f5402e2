"""Capacity regions and capacities for cooperative broadcast, primitive
relay, and broadcast-diamond channels.

Rate regions are represented by their upper-right frontier (down-closure
is implicit). Frontiers are traced by scalarizing the two rate coordinates
over a ladder of direction weights and maximizing each scalarization over
auxiliary joints with a batched multiplicative-weights ascent; every
frontier vertex keeps the auxiliary joint that generated it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    AuxiliaryJoint,
    Channel,
    DimensionMismatch,
    Distribution,
    PreconditionError,
)
from .degradedness import EtaReport, eta_ln, eta_mc
from .geometry import polyline_hausdorff, upper_right_hull
from .infotheory import _mi_bits, capacity_ba
from .search import GridSpec, compass_refine, golden_max

__all__ = [
    "RatePoint",
    "RateRegion",
    "ConditionReport",
    "BdcRate",
    "bc_inner_region",
    "bc_modified_regions",
    "bc_tightness_check",
    "prc_df_rate",
    "prc_capacity",
    "bdc_achievable",
    "bdc_capacity",
]

COND_TOL = 1e-7  # slack tolerance when checking threshold inequalities


@dataclass(frozen=True)
class RatePoint:
    r1: float
    r2: float


@dataclass(frozen=True)
class RateRegion:
    """Polygonal under-approximation of a two-user rate region.

    boundary: upper-right frontier, sorted by r1 ascending (r2 nonincreasing).
    generators: the auxiliary joint achieving each frontier vertex.
    """

    boundary: tuple
    generators: tuple
    coop_capacity: float
    r2_floor: float = 0.0

    def vertices(self) -> np.ndarray:
        return np.array([[pt.r1, pt.r2] for pt in self.boundary])


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a capacity-theorem condition check."""

    conditions_hold: bool
    thresholds: dict
    capacity_or_region: object
    notes: tuple = ()


# ---------------------------------------------------------------------------
# Batched evaluation of auxiliary joints
# ---------------------------------------------------------------------------


def _batch_entropy(q):
    safe = np.where(q > 0.0, q, 1.0)
    return -(np.where(q > 0.0, q * np.log2(safe), 0.0)).sum(axis=-1)


def _batch_kl(p, q):
    safe_p = np.where(p > 0.0, p, 1.0)
    safe_q = np.clip(q, 1e-300, None)
    return (np.where(p > 0.0, p * (np.log2(safe_p) - np.log2(safe_q)), 0.0)).sum(axis=-1)


def _pair_values(w, T, W1, W2):
    """Batched (a, b2, iuy1, s, p_bar) for joints (w, T) against channels W1, W2.

    a = I(X;Y1|U), b2 = I(U;Y2), iuy1 = I(U;Y1) = s - a, s = I(X;Y1).
    """
    h1_rows = _batch_entropy(W1)
    q1_T = T @ W1  # (B, m, k1)
    q2_T = T @ W2
    p_bar = np.einsum("bm,bmn->bn", w, T)
    q1_p = p_bar @ W1
    q2_p = p_bar @ W2
    i1_per_u = _batch_entropy(q1_T) - T @ h1_rows  # (B, m)
    a = (w * i1_per_u).sum(axis=1)
    s = _batch_entropy(q1_p) - p_bar @ h1_rows
    b2 = _batch_entropy(q2_p) - (w * _batch_entropy(q2_T)).sum(axis=1)
    iuy1 = s - a
    return a, b2, iuy1, s, p_bar


def _pair_gradients(w, T, W1, W2, mu_a, mu_b):
    """Value and supergradients of mu_a * I(X;Y1|U) + mu_b * I(U;Y2)."""
    a, b2, iuy1, s, p_bar = _pair_values(w, T, W1, W2)
    q1_T = T @ W1
    q2_T = T @ W2
    q2_p = p_bar @ W2
    logW1_sum = (W1 * np.where(W1 > 0.0, np.log2(np.where(W1 > 0.0, W1, 1.0)), 0.0)).sum(axis=1)
    # d a / d T[u, x] = w_u * D(W1_x || q1(T_u))
    ga_T = w[:, :, None] * (
        logW1_sum[None, None, :] - np.einsum("xy,bmy->bmx", W1, np.log2(np.clip(q1_T, 1e-300, None)))
    )
    h1_rows = _batch_entropy(W1)
    ga_w = _batch_entropy(q1_T) - T @ h1_rows
    # d b2 / d T[u, x] = w_u * sum_y W2[x, y] log2(q2(T_u)_y / q2(p)_y)
    gb_T = w[:, :, None] * np.einsum(
        "xy,bmy->bmx",
        W2,
        np.log2(np.clip(q2_T, 1e-300, None)) - np.log2(np.clip(q2_p, 1e-300, None))[:, None, :],
    )
    gb_w = _batch_kl(q2_T, q2_p[:, None, :])
    value = mu_a * a + mu_b * b2
    return value, mu_a * ga_w + mu_b * gb_w, mu_a * ga_T + mu_b * gb_T, a, b2, iuy1, s


def _marginal_mi_gradients(w, T, W):
    """Value and gradients of s = I(X;Y) at the induced marginal."""
    p_bar = np.einsum("bm,bmn->bn", w, T)
    q_p = p_bar @ W
    hW = _batch_entropy(W)
    s = _batch_entropy(q_p) - p_bar @ hW
    logW_sum = (W * np.where(W > 0.0, np.log2(np.where(W > 0.0, W, 1.0)), 0.0)).sum(axis=1)
    d = logW_sum[None, :] - np.log2(np.clip(q_p, 1e-300, None)) @ W.T  # (B, n)
    g_T = w[:, :, None] * d[:, None, :]
    g_w = np.einsum("bmx,bx->bm", T, d)
    return s, g_w, g_T


def _mirror_step(x, grad, lr):
    gmax = np.max(np.abs(grad), axis=-1, keepdims=True)
    z = np.log(np.clip(x, 1e-300, None)) + lr * grad / np.clip(gmax, 1e-12, None)
    z -= z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    out = e / e.sum(axis=-1, keepdims=True)
    out = np.clip(out, 1e-15, None)
    return out / out.sum(axis=-1, keepdims=True)


def _ascend(fn, w0, T0, steps=160, lr0=0.6):
    """Maximize fn over batches of joints by multiplicative-weights ascent.

    fn(w, T) -> (value, grad_w, grad_T); tracks the best iterate per batch
    element, so nonmonotone steps are harmless.
    """
    w, T = w0.copy(), T0.copy()
    val, _, _ = fn(w, T)
    best_val = val.copy()
    best_w = w.copy()
    best_T = T.copy()
    for t in range(steps):
        val, gw, gT = fn(w, T)
        better = val > best_val
        if np.any(better):
            best_val = np.where(better, val, best_val)
            best_w[better] = w[better]
            best_T[better] = T[better]
        lr = lr0 / math.sqrt(1.0 + t / 8.0)
        w = _mirror_step(w, gw, lr)
        T = _mirror_step(T, gT, lr)
    val, _, _ = fn(w, T)
    better = val > best_val
    if np.any(better):
        best_val = np.where(better, val, best_val)
        best_w[better] = w[better]
        best_T[better] = T[better]
    return best_val, best_w, best_T


def _initial_joints(rng, batch, m, n, canonical):
    """Random joints plus canonical seeds (padded to m atoms)."""
    w = rng.dirichlet(np.ones(m), size=batch)
    T = rng.dirichlet(np.ones(n), size=(batch, m))
    for i, (cw, cT) in enumerate(canonical[: min(len(canonical), batch)]):
        k = min(m, cw.shape[0])
        w[i] = 1e-9
        w[i, :k] = cw[:k]
        w[i] /= w[i].sum()
        T[i, :k] = cT[:k]
    w = np.clip(w, 1e-12, None)
    T = np.clip(T, 1e-12, None)
    return w / w.sum(axis=1, keepdims=True), T / T.sum(axis=-1, keepdims=True)


def _canonical_joints(ch1: Channel, ch2: Channel, m: int):
    n = ch1.input_size
    eye = np.eye(n)
    p1 = capacity_ba(ch1, tol=1e-11).argmax.probs
    p2 = capacity_ba(ch2, tol=1e-11).argmax.probs
    uniform = np.full(n, 1.0 / n)
    out = []
    for p in (p2, p1, uniform):
        if n <= m:
            out.append((p, eye))  # U = X
        out.append((np.ones(1), p[None, :]))  # constant U
    return out


@dataclass(frozen=True)
class _Generator:
    w: np.ndarray
    T: np.ndarray
    a: float
    b2: float
    iuy1: float
    s: float

    def joint(self) -> AuxiliaryJoint:
        return AuxiliaryJoint.from_arrays(self.w, self.T)


def _mu_ladder():
    return np.concatenate([[0.0], np.geomspace(1.0 / 64.0, 64.0, 33), [math.inf]])


def _binary_cloud(W1, W2, resolution=33):
    """Two-atom joint cloud for binary inputs: weights/conditionals plus values."""
    thetas = np.linspace(0.0, 1.0, resolution)
    lam = np.linspace(0.0, 1.0, resolution)
    TH0, TH1, L = np.meshgrid(thetas, thetas, lam, indexing="ij")
    Wc = np.stack([L, 1.0 - L], axis=-1).reshape(-1, 2)
    Tc = np.stack(
        [np.stack([1.0 - TH0, TH0], axis=-1), np.stack([1.0 - TH1, TH1], axis=-1)], axis=-2
    ).reshape(-1, 2, 2)
    a, b2, iuy1, s, _ = _pair_values(Wc, Tc, W1, W2)
    return Wc, Tc, a, b2, iuy1


def _build_family(ch1: Channel, ch2: Channel, aux_size: int, budget: GridSpec):
    """Generators tracing the (I(X;Y1|U), I(U;Y2)) and (I(X;Y1|U), I(U;Y1)) tradeoffs.

    A geometric direction ladder seeds the frontier; supporting-line
    refinement then bisects between adjacent exposed corners at the chord
    slope until no generator sticks out, which fills exposure windows the
    ladder skips. For binary inputs a coarse two-atom cloud seeds every
    ascent and its hull points join the family directly.
    """
    W1, W2 = ch1.rows, ch2.rows
    n = ch1.input_size
    rng = np.random.default_rng(budget.seed)
    canonical = _canonical_joints(ch1, ch2, aux_size)
    cloud = _binary_cloud(W1, W2) if n == 2 else None
    gens: list[_Generator] = []

    def record(w, T):
        a, b2, iuy1, s, _ = _pair_values(w[None], T[None], W1, W2)
        g = _Generator(w.copy(), T.copy(), float(a[0]), float(b2[0]), float(iuy1[0]), float(s[0]))
        gens.append(g)
        return g

    def cloud_seeds(mu, against_self):
        if cloud is None:
            return []
        Wc, Tc, a, b2, iuy1 = cloud
        second = iuy1 if against_self else b2
        score = second if math.isinf(mu) else a + mu * second
        k = max(4, budget.restarts // 3)
        idx = np.argsort(score)[::-1][:k]
        return [(Wc[i], Tc[i]) for i in idx]

    def optimize(mu, against_self):
        mu_a, mu_b = (0.0, 1.0) if math.isinf(mu) else (1.0, mu)
        Wb = W1 if against_self else W2

        def fn(w, T):
            value, gw, gT, *_ = _pair_gradients(w, T, W1, Wb, mu_a, mu_b)
            return value, gw, gT

        w0, T0 = _initial_joints(rng, budget.restarts, aux_size, n, cloud_seeds(mu, against_self) + canonical)
        val, w, T = _ascend(fn, w0, T0)
        best = int(np.argmax(val))
        return record(w[best], T[best])

    for against_self in (False, True):
        corners = []
        for mu in _mu_ladder():
            g = optimize(mu, against_self)
            y = g.iuy1 if against_self else g.b2
            corners.append((g.a, y))

        # Supporting-line refinement between adjacent exposed corners.
        pts = sorted(set(corners))
        work = [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
        steps = 0
        while work and steps < 48:
            (a1, y1), (a2, y2) = work.pop()
            if a2 - a1 <= 1e-9 or y1 - y2 <= 1e-9:
                continue
            mu = (a2 - a1) / (y1 - y2)
            steps += 1
            g = optimize(mu, against_self)
            y = g.iuy1 if against_self else g.b2
            reference = a1 + mu * y1
            if g.a + mu * y > reference + 1e-6 and a1 < g.a < a2:
                work.append(((a1, y1), (g.a, y)))
                work.append(((g.a, y), (a2, y2)))

    if cloud is not None:
        Wc, Tc, a, b2, iuy1 = cloud
        for second in (b2, iuy1):
            _, idx = upper_right_hull(np.column_stack([a, second]))
            for i in idx:
                record(Wc[i], Tc[i])
    for cw, cT in canonical:
        record(np.asarray(cw, float), np.asarray(cT, float))
    return gens


def _frontier_region(points, gens, c12, floor=0.0):
    verts, idx = upper_right_hull(np.asarray(points, dtype=float))
    boundary = tuple(RatePoint(float(x), float(y)) for x, y in verts)
    generators = tuple(gens[i].joint() for i in idx)
    return RateRegion(boundary, generators, c12, floor)


def _require_bc_inputs(ch1, ch2, c12):
    if ch1.input_size != ch2.input_size:
        raise DimensionMismatch(
            f"channels have input alphabets of size {ch1.input_size} and {ch2.input_size}"
        )
    if c12 < 0:
        raise PreconditionError("conference capacity must be nonnegative")


def bc_inner_region(
    ch1: Channel,
    ch2: Channel,
    c12: float,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
) -> RateRegion:
    """Achievable region of the cooperative broadcast channel.

    Per auxiliary joint the constraints are R1 <= I(X;Y1|U),
    R2 <= I(U;Y2) + c12, and R1 + R2 <= I(X;Y1); the frontier is the
    upper-right hull over the generator family (time sharing). The
    generator family does not depend on c12, so the region is pointwise
    monotone in the conference capacity.
    """
    _require_bc_inputs(ch1, ch2, c12)
    budget = budget or GridSpec()
    aux_size = aux_size or ch1.input_size + 1
    gens = _build_family(ch1, ch2, aux_size, budget)
    pts, tags = [], []
    for g in gens:
        r2_cap = min(g.b2 + c12, g.s)
        pts.append((g.a, min(g.b2 + c12, g.s - g.a)))
        tags.append(g)
        pts.append((min(g.a, g.s - r2_cap), r2_cap))
        tags.append(g)
    return _frontier_region(pts, tags, c12)


def _switch_generator(g: _Generator, lam: float) -> _Generator:
    """Mix a generator with a constant atom carrying the same input marginal.

    a -> a + (1 - lam) * iuy1, b2 -> lam * b2; the marginal (hence s) is
    unchanged, so the mixture is itself an achievable generator.
    """
    p_bar = g.w @ g.T
    w = np.concatenate([lam * g.w, [1.0 - lam]])
    w = np.clip(w, 0.0, None)
    w = w / w.sum()
    T = np.vstack([g.T, p_bar[None, :]])
    return _Generator(w, T, g.a + (1.0 - lam) * g.iuy1, lam * g.b2, lam * g.iuy1, g.s)


def bc_modified_regions(
    ch1: Channel,
    ch2: Channel,
    c12: float,
    eta: EtaReport,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
    r2_floor: float | None = None,
):
    """Inner and outer frontiers restricted to R2 >= c12 / (1 - eta_ln).

    The inner form keeps the individual rate constraints; the outer form
    uses the sum constraint R1 + R2 <= I(X;Y1|U) + I(U;Y2) + c12. Both are
    built from the same generator family, augmented with constant-atom
    mixtures that trace each generator's frontier segment down to the
    R2 floor. Returns (inner, outer).
    """
    _require_bc_inputs(ch1, ch2, c12)
    budget = budget or GridSpec()
    aux_size = aux_size or ch1.input_size + 1
    if r2_floor is None:
        if not eta.comparable:
            raise PreconditionError(
                f"pair is not eta-LN comparable (eta_ln = {eta.value:.6g} > 1); the restricted region is undefined"
            )
        c2 = capacity_ba(ch2, tol=1e-11).capacity
        cap = 0.0 if eta.value >= 1.0 - 1e-12 else (1.0 - eta.value) / eta.value * c2
        if c12 > cap + COND_TOL:
            raise PreconditionError(
                f"conference capacity violates c12 <= (1 - eta_ln)/eta_ln * C2: c12 = {c12:.6g}, cap = {cap:.6g}"
            )
        r2_floor = 0.0 if c12 == 0.0 else c12 / (1.0 - eta.value)

    gens = _build_family(ch1, ch2, aux_size, budget)
    inner_pts, inner_tags = [], []
    outer_pts, outer_tags = [], []
    for g in gens:
        if g.b2 + c12 < r2_floor - 1e-12:
            continue  # generator cannot meet the R2 floor
        corner = (g.a, g.b2 + c12)
        inner_pts.append(corner)
        inner_tags.append(g)
        outer_pts.append(corner)
        outer_tags.append(g)
        if g.b2 > 0.0:
            lam = min(1.0, max(0.0, (r2_floor - c12) / g.b2))
            sw = _switch_generator(g, lam)
            inner_pts.append((sw.a, sw.b2 + c12))
            inner_tags.append(sw)
        outer_pts.append((g.a + g.b2 + c12 - r2_floor, r2_floor))
        outer_tags.append(g)
    if not inner_pts:
        raise PreconditionError("no generator satisfies the R2 floor; the restricted region is empty")
    inner = _frontier_region(inner_pts, inner_tags, c12, r2_floor)
    outer = _frontier_region(outer_pts, outer_tags, c12, r2_floor)
    return inner, outer


def bc_tightness_check(
    ch1: Channel,
    ch2: Channel,
    c12: float,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
) -> ConditionReport:
    """Conditions under which decode-and-forward is optimal for the
    cooperative broadcast channel above the R2 floor.

    Verifies c12 <= (1 - eta_ln)/eta_ln * C2, builds the floor-restricted
    inner and outer regions, reports their frontier Hausdorff distance,
    and checks I(U;Y1) >= I(U;Y2) + c12 at every stored generator whose
    I(U;Y2) meets the floor requirement.
    """
    _require_bc_inputs(ch1, ch2, c12)
    budget = budget or GridSpec()
    notes = []
    thresholds = {}
    c2 = capacity_ba(ch2, tol=1e-11).capacity
    thresholds["C2"] = c2
    if c2 <= 1e-9:
        return ConditionReport(False, thresholds, None, ("second channel has zero capacity",))
    eta = eta_ln(ch1, ch2, budget)
    thresholds["eta_ln"] = eta.value
    if not eta.comparable:
        return ConditionReport(False, thresholds, None, ("pair is not eta-LN comparable",))
    cap = 0.0 if eta.value >= 1.0 - 1e-12 else (1.0 - eta.value) / eta.value * c2
    floor = 0.0 if c12 == 0.0 else (c12 / (1.0 - eta.value) if eta.value < 1.0 else math.inf)
    thresholds["c12_cap"] = cap
    thresholds["r2_floor"] = floor
    if c12 > cap + COND_TOL:
        notes.append(f"c12 = {c12:.6g} exceeds the cap {cap:.6g}")
        return ConditionReport(False, thresholds, None, tuple(notes))

    inner, outer = bc_modified_regions(ch1, ch2, c12, eta, aux_size, budget, r2_floor=floor)
    dh = polyline_hausdorff(inner.vertices(), outer.vertices())
    thresholds["hausdorff"] = dh

    qualify = eta.value / (1.0 - eta.value) * c12 if eta.value < 1.0 else 0.0
    worst = math.inf
    for region in (inner, outer):
        for joint in region.generators:
            w = joint.u_marginal.probs
            T = joint.conditional_matrix()
            _, b2, iuy1, _, _ = _pair_values(w[None], T[None], ch1.rows, ch2.rows)
            if b2[0] >= qualify - 1e-9:
                worst = min(worst, float(iuy1[0] - b2[0] - c12))
    thresholds["dominance_slack"] = worst
    ok = dh <= 5e-3 and worst >= -1e-6
    if not ok:
        notes.append("frontier mismatch or dominance violation at a qualifying generator")
    return ConditionReport(bool(ok), thresholds, (inner, outer), tuple(notes))


# ---------------------------------------------------------------------------
# Primitive relay channel
# ---------------------------------------------------------------------------


def prc_df_rate(ch1: Channel, ch2: Channel, c12: float, budget: GridSpec | None = None):
    """Decode-and-forward rate max_P min(I(X;Y1), I(X;Y2) + c12).

    The objective is concave in the input law. Binary inputs use a dense
    grid with golden refinement; larger alphabets use supergradient ascent
    driven by a bisection on the active-branch weight, with the grid of
    restarts as fallback. Returns (rate, achieving input law).
    """
    _require_bc_inputs(ch1, ch2, c12)
    budget = budget or GridSpec()
    W1, W2 = ch1.rows, ch2.rows
    n = ch1.input_size

    def objective(p):
        return min(_mi_bits(p, W1), _mi_bits(p, W2) + c12)

    best_p = np.full(n, 1.0 / n)
    best = objective(best_p)
    if n == 2:
        res = 8 * max(2, budget.resolution) + 1
        thetas = np.linspace(0.0, 1.0, res)
        P = np.stack([1.0 - thetas, thetas], axis=1)
        i1 = _batch_entropy(P @ W1) - P @ _batch_entropy(W1)
        i2 = _batch_entropy(P @ W2) - P @ _batch_entropy(W2)
        vals = np.minimum(i1, i2 + c12)
        k = int(np.argmax(vals))
        step = 1.0 / (res - 1)
        t_best, v_best = golden_max(
            lambda t: objective(np.array([1.0 - t, t])),
            max(0.0, thetas[k] - step),
            min(1.0, thetas[k] + step),
            budget.refine_iters,
        )
        if v_best > best:
            best, best_p = v_best, np.array([1.0 - t_best, t_best])
        return best, Distribution(best_p)

    rng = np.random.default_rng(budget.seed)

    def term_gradients(P):
        q1 = P @ W1
        q2 = P @ W2
        lw1 = (W1 * np.where(W1 > 0, np.log2(np.where(W1 > 0, W1, 1.0)), 0.0)).sum(1)
        lw2 = (W2 * np.where(W2 > 0, np.log2(np.where(W2 > 0, W2, 1.0)), 0.0)).sum(1)
        d1 = lw1[None, :] - np.log2(np.clip(q1, 1e-300, None)) @ W1.T
        d2 = lw2[None, :] - np.log2(np.clip(q2, 1e-300, None)) @ W2.T
        i1 = _batch_entropy(q1) - P @ _batch_entropy(W1)
        i2 = _batch_entropy(q2) - P @ _batch_entropy(W2)
        return i1, i2, d1, d2

    lo, hi = 0.0, 1.0
    for _ in range(20):
        lam = 0.5 * (lo + hi)
        P = np.vstack([rng.dirichlet(np.ones(n), size=max(8, budget.restarts // 2)), np.full((1, n), 1.0 / n)])
        for t in range(120):
            i1, i2, d1, d2 = term_gradients(P)
            P = _mirror_step(P, lam * d1 + (1.0 - lam) * d2, 0.5 / math.sqrt(1.0 + t / 8.0))
        i1, i2, _, _ = term_gradients(P)
        vals = np.minimum(i1, i2 + c12)
        k = int(np.argmax(vals))
        if vals[k] > best:
            best, best_p = float(vals[k]), P[k].copy()
        if i1[k] > i2[k] + c12:
            lo = lam
        else:
            hi = lam
    p_ref, v_ref = compass_refine(objective, best_p, 0.0, passes=2, iters=budget.refine_iters)
    if v_ref > best:
        best, best_p = v_ref, p_ref
    return best, Distribution(best_p)


def prc_capacity(ch1: Channel, ch2: Channel, c12: float, budget: GridSpec | None = None) -> ConditionReport:
    """Capacity of the primitive relay channel under the more-capable condition.

    When c12 <= (1 - eta_mc)/eta_mc * C2, decode-and-forward achieves
    C2 + c12 and the conferencing cut bound matches it. Otherwise the
    decode-and-forward rate and the cut bound are returned as an interval.
    """
    _require_bc_inputs(ch1, ch2, c12)
    budget = budget or GridSpec()
    cap2 = capacity_ba(ch2, tol=1e-11)
    if cap2.capacity <= 1e-9:
        raise PreconditionError("second channel has zero capacity")
    eta = eta_mc(ch1, ch2, budget)
    cap1 = capacity_ba(ch1, tol=1e-11)
    thresholds = {
        "eta_mc": eta.value,
        "C1": cap1.capacity,
        "C2": cap2.capacity,
        "c12_cap": (1.0 - eta.value) / eta.value * cap2.capacity if eta.value > 0 else math.inf,
        "cut_bound": cap2.capacity + c12,
        "df_witness_i1": _mi_bits(cap2.argmax.probs, ch1.rows),
    }
    notes = (
        "alternative closed form C1 + c12 = "
        f"{cap1.capacity + c12:.6f} exceeds the conferencing cut bound whenever C1 > C2; "
        "the returned value C2 + c12 matches both the decode-forward rate and the cut bound",
    )
    if eta.comparable and c12 <= thresholds["c12_cap"] + COND_TOL:
        return ConditionReport(True, thresholds, cap2.capacity + c12, notes)
    rate, _ = prc_df_rate(ch1, ch2, c12, budget)
    return ConditionReport(
        False,
        thresholds,
        (rate, thresholds["cut_bound"]),
        notes + ("condition failed; returning (decode-forward rate, cut bound) interval",),
    )


# ---------------------------------------------------------------------------
# Broadcast diamond channel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BdcRate:
    """Achievable rate of the two-relay broadcast diamond channel."""

    rate: float
    rate_u_eq_x: float
    witness: AuxiliaryJoint
    witness_u_eq_x: Distribution


def _require_bdc_inputs(ch1, ch2, ch3, c13, c23):
    if not (ch1.input_size == ch2.input_size == ch3.input_size):
        raise DimensionMismatch("the three channels must share the input alphabet")
    if c13 < 0 or c23 < 0:
        raise PreconditionError("link capacities must be nonnegative")


def bdc_achievable(
    ch1: Channel,
    ch2: Channel,
    ch3: Channel,
    c13: float,
    c23: float,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
) -> BdcRate:
    """Superposition/binning rate of the broadcast diamond channel.

    Maximizes min(I(X;Y1), I(X;Y3|U) + I(U;Y2) + c13, I(X;Y3) + c13 + c23)
    over auxiliary joints, and also reports the U = X specialization
    max_P min(I(X;Y1), I(X;Y2) + c13, I(X;Y3) + c13 + c23).
    """
    _require_bdc_inputs(ch1, ch2, ch3, c13, c23)
    budget = budget or GridSpec()
    n = ch1.input_size
    aux_size = aux_size or n + 1
    W1, W2, W3 = ch1.rows, ch2.rows, ch3.rows

    def u_eq_x_obj(p):
        return min(
            _mi_bits(p, W1),
            _mi_bits(p, W2) + c13,
            _mi_bits(p, W3) + c13 + c23,
        )

    rng = np.random.default_rng(budget.seed)
    cap_points = [capacity_ba(ch, tol=1e-11).argmax.probs for ch in (ch1, ch2, ch3)]
    best_px = np.full(n, 1.0 / n)
    best_x = u_eq_x_obj(best_px)
    for p0 in cap_points + [rng.dirichlet(np.ones(n)) for _ in range(max(4, budget.restarts // 8))]:
        p_ref, v_ref = compass_refine(u_eq_x_obj, np.asarray(p0, float), 0.0, passes=2, iters=budget.refine_iters)
        if v_ref > best_x:
            best_x, best_px = v_ref, p_ref

    def fn(w, T):
        _, b2v, _, _, _ = _pair_values(w, T, W1, W2)
        a3 = _pair_values(w, T, W3, W3)[0]
        s1, g1_w, g1_T = _marginal_mi_gradients(w, T, W1)
        s3, g3_w, g3_T = _marginal_mi_gradients(w, T, W3)
        _, ga3_w, ga3_T, *_ = _pair_gradients(w, T, W3, W2, 1.0, 0.0)
        _, gb2_w, gb2_T, *_ = _pair_gradients(w, T, W3, W2, 0.0, 1.0)
        t1 = s1
        t2 = a3 + b2v + c13
        t3 = s3 + c13 + c23
        stacked = np.stack([t1, t2, t3])
        active = np.argmin(stacked, axis=0)
        value = stacked[active, np.arange(w.shape[0])]
        g2_w = ga3_w + gb2_w
        g2_T = ga3_T + gb2_T
        gw = np.where((active == 0)[:, None], g1_w, np.where((active == 1)[:, None], g2_w, g3_w))
        gT = np.where(
            (active == 0)[:, None, None],
            g1_T,
            np.where((active == 1)[:, None, None], g2_T, g3_T),
        )
        return value, gw, gT

    canonical = [(np.ones(1), p[None, :]) for p in cap_points]
    if n <= aux_size:
        canonical += [(np.asarray(p, float), np.eye(n)) for p in cap_points]
    w0, T0 = _initial_joints(rng, budget.restarts, aux_size, n, canonical)
    val, w, T = _ascend(fn, w0, T0, steps=140)
    k = int(np.argmax(val))
    best_aux = float(val[k])
    if best_aux > best_x:
        return BdcRate(best_aux, best_x, AuxiliaryJoint.from_arrays(w[k], T[k]), Distribution(best_px))
    return BdcRate(best_x, best_x, AuxiliaryJoint.deterministic(best_px), Distribution(best_px))


def bdc_capacity(
    ch1: Channel,
    ch2: Channel,
    ch3: Channel,
    c13: float,
    c23: float,
    budget: GridSpec | None = None,
) -> ConditionReport:
    """Capacity of the broadcast diamond channel under more-capable conditions.

    With C3 > 0 and both relay channels more capable than the direct one,
    capacity is C3 + c13 + c23 when c23 and c13 + c23 stay below the
    contraction-scaled thresholds. With C3 = 0 the corresponding condition
    between the two relay channels gives min(C2, c23) + c13. Otherwise an
    achievability/cut-bound interval is reported.
    """
    _require_bdc_inputs(ch1, ch2, ch3, c13, c23)
    budget = budget or GridSpec()
    cap3 = capacity_ba(ch3, tol=1e-11)
    thresholds = {"C3": cap3.capacity, "c13": c13, "c23": c23}
    notes = []
    if cap3.capacity > 1e-9:
        eta13 = eta_mc(ch1, ch3, budget)
        eta23 = eta_mc(ch2, ch3, budget)
        thresholds["eta_mc_13"] = eta13.value
        thresholds["eta_mc_23"] = eta23.value
        thresholds["c23_cap"] = (1.0 - eta23.value) / eta23.value * cap3.capacity if eta23.value > 0 else math.inf
        thresholds["c13_plus_c23_cap"] = (
            (1.0 - eta13.value) / eta13.value * cap3.capacity if eta13.value > 0 else math.inf
        )
        thresholds["cut_bound"] = cap3.capacity + c13 + c23
        thresholds["eta_ordering_ok"] = bool(eta13.value < eta23.value)
        conditions = (
            eta13.comparable
            and eta23.comparable
            and c23 <= thresholds["c23_cap"] + COND_TOL
            and c13 + c23 <= thresholds["c13_plus_c23_cap"] + COND_TOL
        )
        if conditions:
            if not thresholds["eta_ordering_ok"]:
                notes.append("threshold conditions hold but the eta_mc ordering 13 < 23 fails")
            return ConditionReport(True, thresholds, cap3.capacity + c13 + c23, tuple(notes))
        ach = bdc_achievable(ch1, ch2, ch3, c13, c23, None, budget)
        notes.append("conditions failed; returning (achievable rate, cut bound) interval")
        return ConditionReport(False, thresholds, (ach.rate, thresholds["cut_bound"]), tuple(notes))

    cap2 = capacity_ba(ch2, tol=1e-11)
    thresholds["C2"] = cap2.capacity
    if cap2.capacity <= 1e-9:
        return ConditionReport(False, thresholds, None, ("direct channel and second relay channel are both useless",))
    eta12 = eta_mc(ch1, ch2, budget)
    thresholds["eta_mc_12"] = eta12.value
    thresholds["c13_cap"] = (1.0 - eta12.value) / eta12.value * cap2.capacity if eta12.value > 0 else math.inf
    thresholds["cut_bound"] = min(cap2.capacity + c13, c13 + c23)
    if eta12.comparable and c13 <= thresholds["c13_cap"] + COND_TOL:
        return ConditionReport(True, thresholds, min(cap2.capacity, c23) + c13, tuple(notes))
    ach = bdc_achievable(ch1, ch2, ch3, c13, c23, None, budget)
    notes.append("conditions failed; returning (achievable rate, cut bound) interval")
    return ConditionReport(False, thresholds, (ach.rate, thresholds["cut_bound"]), tuple(notes))
