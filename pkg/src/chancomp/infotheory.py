"""Information measures, channel capacity, and mutual-information curvature.

All reported quantities are in bits. Curvature (Hessian) matrices are kept
in nats; every ratio of curvature quadratic forms consumed downstream is
base-invariant, so no conversion is needed at comparison points. The
convention 0*log(0) = 0 applies throughout, with support checks done on
exact zeros (construction-time canonicalization guarantees exact zeros).
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
    as_distribution,
)

__all__ = [
    "entropy",
    "binary_entropy",
    "kl_divergence",
    "mutual_information",
    "aux_decomposition",
    "CapacityResult",
    "ConvergenceError",
    "capacity_ba",
    "MutualInfoCurvature",
    "mi_hessian",
]

LN2 = math.log(2.0)


def _entropy_bits(q: np.ndarray) -> np.ndarray:
    """Shannon entropy along the last axis, in bits, with 0*log0 = 0."""
    safe = np.where(q > 0.0, q, 1.0)
    return -(np.where(q > 0.0, q * np.log2(safe), 0.0)).sum(axis=-1)


def _kl_bits(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """KL divergence along the last axis in bits; +inf on support violation."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    bad = np.any((p > 0.0) & (q <= 0.0), axis=-1)
    safe_p = np.where(p > 0.0, p, 1.0)
    safe_q = np.where(q > 0.0, q, 1.0)
    val = (np.where(p > 0.0, p * (np.log2(safe_p) - np.log2(safe_q)), 0.0)).sum(axis=-1)
    return np.where(bad, np.inf, val)


def _mi_bits(p: np.ndarray, rows: np.ndarray) -> float:
    """I(X;Y) in bits for input law p (1-d) and channel matrix rows."""
    q = p @ rows
    return float(_entropy_bits(q) - p @ _entropy_bits(rows))


def entropy(p) -> float:
    """Shannon entropy of a distribution, in bits."""
    return float(_entropy_bits(as_distribution(p).probs))


def binary_entropy(theta: float) -> float:
    """Entropy of a Bernoulli(theta) variable, in bits."""
    t = float(theta)
    if not 0.0 <= t <= 1.0:
        raise PreconditionError(f"binary_entropy requires theta in [0, 1], got {t!r}")
    return float(_entropy_bits(np.array([1.0 - t, t])))


def kl_divergence(p, q) -> float:
    """D(p || q) in bits; +inf when support(p) is not contained in support(q)."""
    p = as_distribution(p)
    q = as_distribution(q)
    if p.size != q.size:
        raise DimensionMismatch(f"distributions on alphabets of size {p.size} and {q.size}")
    return float(_kl_bits(p.probs, q.probs))


def mutual_information(p, ch: Channel) -> float:
    """I(X;Y) in bits for input law p through channel ch."""
    p = as_distribution(p)
    if p.size != ch.input_size:
        raise DimensionMismatch(f"input law has {p.size} symbols, channel expects {ch.input_size}")
    return _mi_bits(p.probs, ch.rows)


def aux_decomposition(joint: AuxiliaryJoint, ch: Channel):
    """For a chain U -> X -> Y, return (I(U;Y), I(X;Y|U)) in bits.

    The two terms always sum to I(X;Y) at the induced X marginal, and
    I(U;Y) never exceeds it (data processing on U -> X -> Y).
    """
    if joint.input_size != ch.input_size:
        raise DimensionMismatch(
            f"auxiliary joint is over {joint.input_size} input symbols, channel expects {ch.input_size}"
        )
    w = joint.u_marginal.probs
    T = joint.conditional_matrix()
    u_to_y = T @ ch.rows
    i_uy = _mi_bits(w, u_to_y)
    i_xy_given_u = float(w @ np.array([_mi_bits(T[u], ch.rows) for u in range(T.shape[0])]))
    return i_uy, i_xy_given_u


@dataclass(frozen=True)
class CapacityResult:
    """Channel capacity with the achieving input law and a certified gap."""

    capacity: float
    argmax: Distribution
    iterations: int
    gap: float


class ConvergenceError(RuntimeError):
    """Iteration cap reached; `best` carries the last certified iterate."""

    def __init__(self, message, best: CapacityResult):
        super().__init__(message)
        self.best = best


def capacity_ba(ch: Channel, tol: float = 1e-9, max_iterations: int = 100_000) -> CapacityResult:
    """Channel capacity by the Blahut-Arimoto iteration.

    The returned gap is the standard certificate max_x D(W_x || q) minus
    the current mutual information, evaluated at the returned input law;
    it bounds the distance to capacity from above.
    """
    if tol <= 0:
        raise PreconditionError("tolerance must be positive")
    rows = ch.rows
    n = ch.input_size
    log_rows = np.where(rows > 0.0, np.log(np.where(rows > 0.0, rows, 1.0)), 0.0)
    p = np.full(n, 1.0 / n)
    best = None
    for it in range(1, max_iterations + 1):
        q = p @ rows
        # D(W_x || q) in nats; q > 0 wherever any row is positive
        safe_q = np.where(q > 0.0, q, 1.0)
        d = (rows * (log_rows - np.log(safe_q))).sum(axis=1)
        lower = float(p @ d)
        upper = float(d.max())
        gap_bits = (upper - lower) / LN2
        cap_bits = lower / LN2
        if best is None or gap_bits < best[1]:
            best = (cap_bits, gap_bits, p.copy(), it)
        if gap_bits <= tol:
            return CapacityResult(cap_bits, Distribution(p), it, gap_bits)
        r = p * np.exp(d - d.max())
        p = r / r.sum()
    cap_bits, gap_bits, p_best, it = best
    result = CapacityResult(cap_bits, Distribution(p_best), it, gap_bits)
    raise ConvergenceError(
        f"Blahut-Arimoto did not certify gap <= {tol:g} within {max_iterations} iterations "
        f"(best gap {gap_bits:g})",
        result,
    )


@dataclass(frozen=True)
class MutualInfoCurvature:
    """Hessian of I(X;Y) with respect to the input law, in nats.

    Symmetric and negative semidefinite on the simplex tangent space
    {v : sum(v) = 0}; mutual information is concave in the input law.
    """

    hessian: np.ndarray


def _neg_hessian_nats(rows: np.ndarray, p: np.ndarray) -> np.ndarray:
    """-Hessian of I in nats: M[x,x'] = sum_y rows[x,y]*rows[x',y]/q[y].

    Requires q = p @ rows strictly positive.
    """
    q = p @ rows
    return (rows / q) @ rows.T


def mi_hessian(p, ch: Channel, interior_tol: float = 1e-9) -> MutualInfoCurvature:
    """Second derivative matrix of I(X;Y) in the input law, in nats.

    Only the output-entropy term contributes: the input-conditional term of
    mutual information is linear in the input law.
    """
    p = as_distribution(p)
    if p.size != ch.input_size:
        raise DimensionMismatch(f"input law has {p.size} symbols, channel expects {ch.input_size}")
    if p.probs.min() < interior_tol:
        raise PreconditionError(
            f"mi_hessian requires an interior input law (min entry {p.probs.min():g} < {interior_tol:g})"
        )
    h = -_neg_hessian_nats(ch.rows, p.probs)
    h = 0.5 * (h + h.T)
    h.setflags(write=False)
    return MutualInfoCurvature(h)
