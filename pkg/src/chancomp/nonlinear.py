"""Nonlinear degradation and domination profiles between channel pairs.

A degradation profile bounds I(U;Y2) above by a function of I(U;Y1); a
domination profile bounds I(U;Y1) below by a function of I(U;Y2). The
minimal degradation profile and the maximal domination profile are traced
pointwise by penalty-scalarized multi-start ascent over auxiliary joints;
their concave (resp. convex) envelopes are piecewise-linear hulls of the
samples. Profiles feed the floor computation of the nonlinear tightness
check for the cooperative broadcast channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import AuxiliaryJoint, Channel, PreconditionError
from .geometry import polyline_hausdorff, upper_function_hull
from .infotheory import capacity_ba
from .regions import (
    ConditionReport,
    _ascend,
    _initial_joints,
    _pair_gradients,
    _pair_values,
    bc_modified_regions,
    COND_TOL,
)
from .search import GridSpec

__all__ = [
    "ProfileCurve",
    "degradation_profile",
    "domination_profile",
    "envelope",
    "domination_excess",
    "domination_excess_inverse",
    "domination_tightness_check",
]

KIND_DEGRADATION = "degradation"
KIND_DOMINATION = "domination"
KIND_CONCAVE_ENV = "concave_envelope"
KIND_CONVEX_ENV = "convex_envelope"
_MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class ProfileCurve:
    """Sampled monotone profile with membership checks by kind.

    Degradation-style curves satisfy value(0) = 0 and value(t) <= t;
    domination-style curves satisfy value(0) = 0 and value(t) >= t.
    Samples are (t, value) pairs sorted by t. `witnesses` optionally maps
    sample index -> achieving AuxiliaryJoint.
    """

    samples: tuple
    kind: str
    domain: tuple
    witnesses: tuple = ()

    def __post_init__(self):
        samples = tuple((float(t), float(v)) for t, v in self.samples)
        if len(samples) < 1:
            raise PreconditionError("a profile needs at least one sample")
        ts = [t for t, _ in samples]
        if any(b < a for a, b in zip(ts, ts[1:])):
            raise PreconditionError("profile samples must be sorted by t")
        vs = [v for _, v in samples]
        if any(b < a - _MEMBERSHIP_TOL for a, b in zip(vs, vs[1:])):
            raise PreconditionError("profile values must be nondecreasing")
        if self.kind in (KIND_DEGRADATION, KIND_CONCAVE_ENV):
            if any(v > t + _MEMBERSHIP_TOL for t, v in samples):
                raise PreconditionError("degradation profile exceeds the identity line")
        elif self.kind in (KIND_DOMINATION, KIND_CONVEX_ENV):
            if any(v < t - _MEMBERSHIP_TOL for t, v in samples):
                raise PreconditionError("domination profile falls below the identity line")
        else:
            raise PreconditionError(f"unknown profile kind {self.kind!r}")
        for t, v in samples[:1]:
            if t <= _MEMBERSHIP_TOL and abs(v) > _MEMBERSHIP_TOL:
                raise PreconditionError("profile must vanish at t = 0")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "domain", (float(self.domain[0]), float(self.domain[1])))

    def t_values(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.samples])

    def value(self, t: float) -> float:
        """Linear interpolation on the samples, clamped to the sampled range."""
        ts = self.t_values()
        vs = self.values()
        return float(np.interp(t, ts, vs))


def _profile_point(W1, W2, t, mode, aux_size, budget, rng, seeds):
    """One constrained optimum: sup b2 s.t. b1 <= t, or inf b1 s.t. b2 >= t.

    Penalty-scalarized ascent with an increasing penalty ladder; among all
    iterates only feasible ones (up to 1e-9) are kept, so degradation
    values are under-estimates and domination values are over-estimates.
    """
    n = W1.shape[0]
    best_val = -math.inf if mode == "deg" else math.inf
    best_joint = None

    for rho in (16.0, 128.0, 1024.0):

        def fn(w, T, rho=rho):
            # b1 = I(U;Y1), b2 = I(U;Y2); gradients from the scalarized pieces
            _, g1_w, g1_T, _, b1, _, _ = _pair_gradients(w, T, W2, W1, 0.0, 1.0)
            _, g2_w, g2_T, _, b2, _, _ = _pair_gradients(w, T, W1, W2, 0.0, 1.0)
            if mode == "deg":
                viol = np.clip(b1 - t, 0.0, None)
                value = b2 - rho * viol
                gw = g2_w - rho * (viol > 0)[:, None] * g1_w
                gT = g2_T - rho * (viol > 0)[:, None, None] * g1_T
            else:
                viol = np.clip(t - b2, 0.0, None)
                value = -b1 - rho * viol
                gw = -g1_w + rho * (viol > 0)[:, None] * g2_w
                gT = -g1_T + rho * (viol > 0)[:, None, None] * g2_T
            return value, gw, gT

        w0, T0 = _initial_joints(rng, budget.restarts, aux_size, n, seeds)
        _, w, T = _ascend(fn, w0, T0, steps=140)
        _, b2, _, _, _ = _pair_values(w, T, W1, W2)
        b1 = _pair_values(w, T, W2, W1)[1]
        if mode == "deg":
            ok = b1 <= t + 1e-9
            if np.any(ok):
                vals = np.where(ok, b2, -math.inf)
                k = int(np.argmax(vals))
                if vals[k] > best_val:
                    best_val = float(vals[k])
                    best_joint = AuxiliaryJoint.from_arrays(w[k], T[k])
        else:
            ok = b2 >= t - 1e-9
            if np.any(ok):
                vals = np.where(ok, b1, math.inf)
                k = int(np.argmin(vals))
                if vals[k] < best_val:
                    best_val = float(vals[k])
                    best_joint = AuxiliaryJoint.from_arrays(w[k], T[k])
    return best_val, best_joint


def _binary_cloud_seeds(W1, W2, t, mode, resolution=65):
    """Feasible two-atom joints from a coarse grid, used as ascent seeds."""
    n = W1.shape[0]
    if n != 2:
        return []
    thetas = np.linspace(0.0, 1.0, resolution)
    lam = np.linspace(0.0, 1.0, resolution)
    TH0, TH1, L = np.meshgrid(thetas, thetas, lam, indexing="ij")
    W = np.stack([L, 1.0 - L], axis=-1).reshape(-1, 2)
    T = np.stack(
        [np.stack([1.0 - TH0, TH0], axis=-1), np.stack([1.0 - TH1, TH1], axis=-1)], axis=-2
    ).reshape(-1, 2, 2)
    _, b2, _, _, _ = _pair_values(W, T, W1, W2)
    b1 = _pair_values(W, T, W2, W1)[1]
    if mode == "deg":
        ok = b1 <= t + 1e-12
        score = np.where(ok, b2, -np.inf)
        idx = np.argsort(score)[::-1][:4]
    else:
        ok = b2 >= t - 1e-12
        score = np.where(ok, b1, np.inf)
        idx = np.argsort(score)[:4]
    return [(W[i], T[i]) for i in idx if np.isfinite(score[i])]


def degradation_profile(
    ch1: Channel,
    ch2: Channel,
    t_grid,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
) -> ProfileCurve:
    """Minimal degradation profile: t -> sup { I(U;Y2) : I(U;Y1) <= t }.

    Witnesses are feasible auxiliary joints, so the samples under-estimate
    the true profile one-sidedly. A running-max pass enforces monotonicity.
    """
    budget = budget or GridSpec()
    aux_size = aux_size or ch1.input_size + 1
    c1 = capacity_ba(ch1, tol=1e-11).capacity
    ts = sorted(float(t) for t in t_grid)
    if ts and (ts[0] < -1e-12 or ts[-1] > c1 + 1e-9):
        raise PreconditionError(f"t grid must lie in [0, C1 = {c1:.6g}]")
    rng = np.random.default_rng(budget.seed)
    cap2 = capacity_ba(ch2, tol=1e-11).argmax.probs
    values = []
    witnesses = []
    for t in ts:
        seeds = _binary_cloud_seeds(ch1.rows, ch2.rows, t, "deg")
        seeds.append((np.ones(1), np.full((1, ch1.input_size), 1.0 / ch1.input_size)))
        if ch1.input_size <= aux_size:
            seeds.append((cap2, np.eye(ch1.input_size)))
        val, joint = _profile_point(ch1.rows, ch2.rows, t, "deg", aux_size, budget, rng, seeds)
        values.append(max(val, 0.0))
        witnesses.append(joint)
    for i in range(1, len(values)):
        if values[i] < values[i - 1]:
            values[i] = values[i - 1]
            witnesses[i] = witnesses[i - 1]
    if ts and ts[0] <= _MEMBERSHIP_TOL:
        values[0] = 0.0
    return ProfileCurve(tuple(zip(ts, values)), KIND_DEGRADATION, (0.0, c1), tuple(witnesses))


def domination_profile(
    ch1: Channel,
    ch2: Channel,
    t_grid,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
) -> ProfileCurve:
    """Maximal domination profile: t -> inf { I(U;Y1) : I(U;Y2) >= t }.

    Samples over-estimate one-sidedly (witnesses are feasible); a backward
    running-min pass enforces monotonicity without spoiling that property.
    """
    budget = budget or GridSpec()
    aux_size = aux_size or ch1.input_size + 1
    c2 = capacity_ba(ch2, tol=1e-11).capacity
    ts = sorted(float(t) for t in t_grid)
    if ts and (ts[0] < -1e-12 or ts[-1] > c2 + 1e-9):
        raise PreconditionError(f"t grid must lie in [0, C2 = {c2:.6g}]")
    rng = np.random.default_rng(budget.seed)
    cap2 = capacity_ba(ch2, tol=1e-11).argmax.probs
    values = []
    witnesses = []
    for t in ts:
        seeds = _binary_cloud_seeds(ch1.rows, ch2.rows, t, "dom")
        seeds.append((np.ones(1), np.full((1, ch1.input_size), 1.0 / ch1.input_size)))
        if ch1.input_size <= aux_size:
            seeds.append((cap2, np.eye(ch1.input_size)))
        val, joint = _profile_point(ch1.rows, ch2.rows, t, "dom", aux_size, budget, rng, seeds)
        if not math.isfinite(val):
            raise PreconditionError(f"no auxiliary joint attains I(U;Y2) >= {t:.6g}")
        values.append(max(val, 0.0))
        witnesses.append(joint)
    for i in range(len(values) - 2, -1, -1):
        if values[i] > values[i + 1]:
            values[i] = values[i + 1]
            witnesses[i] = witnesses[i + 1]
    if ts and ts[0] <= _MEMBERSHIP_TOL:
        values[0] = 0.0
    c1 = capacity_ba(ch1, tol=1e-11).capacity
    return ProfileCurve(tuple(zip(ts, values)), KIND_DOMINATION, (0.0, c2), tuple(witnesses))


def envelope(curve: ProfileCurve) -> ProfileCurve:
    """Upper concave envelope of a degradation curve, or lower convex
    envelope of a domination curve, as a piecewise-linear hull of samples."""
    if len(curve.samples) < 2:
        raise PreconditionError("envelope needs at least two samples")
    ts = curve.t_values()
    vs = curve.values()
    if curve.kind in (KIND_DEGRADATION, KIND_CONCAVE_ENV):
        verts = upper_function_hull(np.column_stack([ts, vs]))
        return ProfileCurve(tuple(map(tuple, verts)), KIND_CONCAVE_ENV, curve.domain)
    if curve.kind in (KIND_DOMINATION, KIND_CONVEX_ENV):
        # Lower convex hull: reflect, take the concave majorant, reflect back.
        verts = upper_function_hull(np.column_stack([ts, -vs]))
        return ProfileCurve(tuple((x, -y) for x, y in verts), KIND_CONVEX_ENV, curve.domain)
    raise PreconditionError(f"cannot build an envelope for kind {curve.kind!r}")


def domination_excess(curve: ProfileCurve, t: float) -> float:
    """G(t) - t for a domination-style curve."""
    if curve.kind not in (KIND_DOMINATION, KIND_CONVEX_ENV):
        raise PreconditionError("excess is defined for domination-style curves")
    lo, hi = curve.samples[0][0], curve.samples[-1][0]
    if not lo - 1e-12 <= t <= hi + 1e-12:
        raise PreconditionError(f"t = {t:.6g} outside the sampled span [{lo:.6g}, {hi:.6g}]")
    return curve.value(t) - t


def domination_excess_inverse(curve: ProfileCurve, c: float) -> float:
    """Solve G(t) - t = c by monotone bisection on the sampled span.

    Fails when the sampled excess is flat across the requested level: the
    tightness floor is then undefined and the caller must refuse.
    """
    if curve.kind not in (KIND_DOMINATION, KIND_CONVEX_ENV):
        raise PreconditionError("excess is defined for domination-style curves")
    ts = curve.t_values()
    vs = curve.values()
    g0 = vs - ts
    dec = np.nonzero(g0[1:] < g0[:-1] - 1e-12)[0]
    if dec.size:
        i = int(dec[0])
        raise PreconditionError(
            f"excess decreases on [{ts[i]:.6g}, {ts[i + 1]:.6g}]; its inverse is not defined there"
        )
    if c < g0[0] - 1e-12 or c > g0[-1] + 1e-12:
        raise PreconditionError(f"excess level {c:.6g} outside sampled range [{g0[0]:.6g}, {g0[-1]:.6g}]")
    level = np.nonzero(np.abs(g0 - c) <= 1e-12)[0]
    if level.size >= 2 and ts[level[-1]] - ts[level[0]] > 1e-9:
        raise PreconditionError(
            f"excess is flat on [{ts[level[0]]:.6g}, {ts[level[-1]]:.6g}]; its inverse is not defined there"
        )
    lo, hi = float(ts[0]), float(ts[-1])
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if curve.value(mid) - mid < c:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def domination_tightness_check(
    ch1: Channel,
    ch2: Channel,
    c12: float,
    curve: ProfileCurve,
    aux_size: int | None = None,
    budget: GridSpec | None = None,
    spot_trials: int = 10_000,
) -> ConditionReport:
    """Tightness conditions for the cooperative broadcast channel under a
    nonlinear domination profile.

    Requires c12 <= G(C2) - C2; the R2 floor becomes
    inverse_excess(c12) + c12. The curve is spot-checked against random
    auxiliary joints before use; the floor-restricted regions and the
    per-generator dominance I(U;Y1) >= G(I(U;Y2)) are then reported.
    """
    budget = budget or GridSpec()
    if curve.kind not in (KIND_DOMINATION, KIND_CONVEX_ENV):
        raise PreconditionError("tightness check needs a domination-style curve")
    if c12 < 0:
        raise PreconditionError("conference capacity must be nonnegative")
    n = ch1.input_size
    rng = np.random.default_rng(budget.seed + 7)
    m = n + 1
    w = rng.dirichlet(np.ones(m), size=spot_trials)
    T = rng.dirichlet(np.ones(n), size=(spot_trials, m))
    _, b2, _, _, _ = _pair_values(w, T, ch1.rows, ch2.rows)
    b1 = _pair_values(w, T, ch2.rows, ch1.rows)[1]
    hi = curve.samples[-1][0]
    spot_slack = float(np.min(b1 - np.interp(np.clip(b2, 0.0, hi), curve.t_values(), curve.values())))
    if spot_slack < -1e-6:
        raise PreconditionError(
            f"curve fails the domination spot-check: I(U;Y1) - G(I(U;Y2)) = {spot_slack:.3g} at a sampled joint"
        )

    thresholds = {"spot_slack": spot_slack}
    notes = []
    c2 = capacity_ba(ch2, tol=1e-11).capacity
    thresholds["C2"] = c2
    g0_c2 = domination_excess(curve, min(c2, curve.samples[-1][0]))
    thresholds["c12_cap"] = g0_c2
    if c12 > g0_c2 + COND_TOL:
        notes.append(f"c12 = {c12:.6g} exceeds the excess at C2 ({g0_c2:.6g})")
        return ConditionReport(False, thresholds, None, tuple(notes))
    floor = c12 if c12 == 0.0 else domination_excess_inverse(curve, c12) + c12
    thresholds["r2_floor"] = floor

    # The floor is supplied explicitly, so no eta report is needed downstream.
    inner, outer = bc_modified_regions(ch1, ch2, c12, None, aux_size, budget, r2_floor=floor)
    dh = polyline_hausdorff(inner.vertices(), outer.vertices())
    thresholds["hausdorff"] = dh

    qualify = floor - c12
    worst = math.inf
    for region in (inner, outer):
        for joint in region.generators:
            wv = joint.u_marginal.probs
            Tv = joint.conditional_matrix()
            _, b2v, iuy1v, _, _ = _pair_values(wv[None], Tv[None], ch1.rows, ch2.rows)
            if b2v[0] >= qualify - 1e-9:
                g_at = float(np.interp(np.clip(b2v[0], 0.0, hi), curve.t_values(), curve.values()))
                worst = min(worst, float(iuy1v[0] - g_at))
    thresholds["dominance_slack"] = worst
    ok = dh <= 5e-3 and worst >= -1e-6
    if not ok:
        notes.append("frontier mismatch or domination violation at a qualifying generator")
    return ConditionReport(bool(ok), thresholds, (inner, outer), tuple(notes))
