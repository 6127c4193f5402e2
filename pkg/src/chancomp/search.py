"""Deterministic search utilities over probability simplices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

__all__ = ["GridSpec", "simplex_grid", "golden_max", "compass_refine", "tangent_basis"]

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Search budget shared by the optimization-backed operations.

    resolution: subdivisions of the simplex grid (1-d searches use a denser
        4*resolution+1 net). Grids are thinned for higher-dimensional
        inputs to keep point counts comparable.
    refine_iters: golden-section iterations per local line search.
    restarts: random restarts for nonconvex multi-start ascents.
    seed: base seed; all randomness is local and deterministic.
    interior_margin: clamp distance from the simplex boundary for points
        whose raw position is not evaluable.
    """

    resolution: int = 64
    refine_iters: int = 48
    restarts: int = 64
    seed: int = 0
    interior_margin: float = 1e-6

    def doubled(self) -> "GridSpec":
        return GridSpec(
            resolution=2 * self.resolution,
            refine_iters=self.refine_iters,
            restarts=self.restarts,
            seed=self.seed + 1,
            interior_margin=self.interior_margin,
        )


def effective_resolution(resolution: int, n: int) -> int:
    """Thin the per-axis resolution as dimension grows."""
    if n <= 2:
        return max(2, resolution)
    return max(4, resolution >> (n - 2))


def simplex_grid(n: int, resolution: int) -> np.ndarray:
    """All points of the n-simplex with coordinates that are multiples of 1/resolution."""
    if n == 1:
        return np.ones((1, 1))
    total = resolution + n - 1
    count = math.comb(total, n - 1)
    out = np.empty((count, n))
    for idx, bars in enumerate(combinations(range(total), n - 1)):
        prev = -1
        for j, b in enumerate(bars):
            out[idx, j] = b - prev - 1
            prev = b
        out[idx, n - 1] = total - 1 - prev
    return out / resolution


def golden_max(f, lo: float, hi: float, iters: int = 48):
    """Golden-section maximization of a unimodal scalar function on [lo, hi]."""
    if hi <= lo:
        return lo, f(lo)
    c = hi - INVPHI * (hi - lo)
    d = lo + INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INVPHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def compass_refine(f, p: np.ndarray, margin: float, passes: int = 3, iters: int = 32):
    """Coordinate-pair mass-transfer refinement on the simplex interior.

    For each ordered coordinate pair, golden-search the transfer amount
    that moves mass between the two coordinates while keeping every entry
    at least `margin`.
    """
    p = np.array(p, dtype=float)
    fp = f(p)
    n = p.size
    for _ in range(passes):
        improved = False
        for i in range(n):
            for j in range(i + 1, n):
                lo = -(p[i] - margin)
                hi = p[j] - margin
                if hi - lo < 1e-15:
                    continue

                def line(t, i=i, j=j):
                    q = p.copy()
                    q[i] += t
                    q[j] -= t
                    return f(q)

                t_best, ft = golden_max(line, lo, hi, iters)
                if ft > fp + 1e-15:
                    p[i] += t_best
                    p[j] -= t_best
                    fp = ft
                    improved = True
        if not improved:
            break
    return p, fp


def tangent_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the simplex tangent space {v : sum(v) = 0}."""
    basis = np.zeros((n, n - 1))
    for k in range(1, n):
        basis[:k, k - 1] = 1.0
        basis[k, k - 1] = -float(k)
        basis[:, k - 1] /= math.sqrt(k * (k + 1.0))
    return basis


def boundary_probes(n: int, scales=(1e-2, 1e-4, 1e-6)) -> np.ndarray:
    """Deterministic points approaching each vertex of the simplex."""
    probes = []
    uniform = np.full(n, 1.0 / n)
    for i in range(n):
        v = np.zeros(n)
        v[i] = 1.0
        for t in scales:
            probes.append((1.0 - t) * v + t * uniform)
    return np.array(probes)
