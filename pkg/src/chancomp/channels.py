"""Finite discrete memoryless channels and input distributions.

A channel is a row-stochastic matrix: one row per input symbol, one column
per output symbol. Rows are renormalized once at construction and never
touched afterward. Output columns that are identically zero are pruned by
``make_channel`` so that every interior input distribution induces strictly
positive output masses; the pruned column indices are recorded on the
channel.

All objects are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelError",
    "DimensionMismatch",
    "PreconditionError",
    "Distribution",
    "Channel",
    "AuxiliaryJoint",
    "make_channel",
    "standard_channel",
    "push_forward",
    "cascade",
]

ROW_SUM_TOL = 1e-9
NEG_TOL = 1e-12


class ChannelError(ValueError):
    """Invalid probability data."""


class DimensionMismatch(ChannelError):
    """Operands defined on incompatible alphabets."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold for the given inputs."""


def _to_array(values, ndim, what):
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ChannelError(f"bad {what}: {exc}") from None
    if arr.ndim != ndim or arr.size == 0:
        raise ChannelError(f"{what} must be a nonempty {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ChannelError(f"{what} contains non-finite entries")
    return arr


@dataclass(frozen=True, eq=False)
class Distribution:
    """A point of the probability simplex over a finite alphabet."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _to_array(self.probs, 1, "probability vector")
        if arr.min() < -NEG_TOL:
            raise ChannelError(f"negative probability {arr.min():g}")
        total = float(arr.sum())
        if abs(total - 1.0) > ROW_SUM_TOL:
            raise ChannelError(f"probabilities sum to {total:.12g}, not 1")
        arr = np.clip(arr, 0.0, None)
        arr = arr / arr.sum()
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def size(self) -> int:
        return self.probs.size

    def __eq__(self, other):
        return isinstance(other, Distribution) and np.array_equal(self.probs, other.probs)

    def __repr__(self):
        return f"Distribution({self.probs.tolist()})"


def as_distribution(p) -> Distribution:
    """Coerce an array-like or Distribution to a Distribution."""
    return p if isinstance(p, Distribution) else Distribution(np.asarray(p, dtype=float))


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic transition kernel of a discrete memoryless channel.

    Direct construction requires data with no all-zero output column; use
    ``make_channel`` for raw data that may need pruning.
    """

    rows: np.ndarray
    pruned_outputs: tuple = ()

    def __post_init__(self):
        arr = _to_array(self.rows, 2, "channel matrix")
        if arr.min() < -NEG_TOL:
            raise ChannelError(f"negative transition probability {arr.min():g}")
        if arr.max() > 1.0 + ROW_SUM_TOL:
            raise ChannelError(f"transition probability {arr.max():g} exceeds 1")
        sums = arr.sum(axis=1)
        err = float(np.max(np.abs(sums - 1.0)))
        if err > ROW_SUM_TOL:
            raise ChannelError(f"channel row sums deviate from 1 by {err:g} (tolerance {ROW_SUM_TOL:g})")
        arr = np.clip(arr, 0.0, None)
        arr = arr / arr.sum(axis=1, keepdims=True)
        if np.any(~arr.any(axis=0)):
            raise ChannelError("all-zero output column; construct with make_channel to prune unused outputs")
        arr.setflags(write=False)
        object.__setattr__(self, "rows", arr)
        object.__setattr__(self, "pruned_outputs", tuple(int(i) for i in self.pruned_outputs))

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    def row(self, x: int) -> Distribution:
        return Distribution(self.rows[x])

    def __eq__(self, other):
        return isinstance(other, Channel) and np.array_equal(self.rows, other.rows)

    def __repr__(self):
        return f"Channel({self.rows.tolist()})"


def make_channel(rows) -> Channel:
    """Build a canonical Channel from raw row data.

    Rows are renormalized exactly; output columns that are identically zero
    are pruned, and the pruned original column indices are recorded on the
    resulting channel.
    """
    arr = _to_array(rows, 2, "channel matrix")
    if arr.min() < -NEG_TOL:
        raise ChannelError(f"negative transition probability {arr.min():g}")
    sums = arr.sum(axis=1)
    err = float(np.max(np.abs(sums - 1.0)))
    if err > ROW_SUM_TOL:
        raise ChannelError(f"channel row sums deviate from 1 by {err:g} (tolerance {ROW_SUM_TOL:g})")
    arr = np.clip(arr, 0.0, None)
    arr = arr / arr.sum(axis=1, keepdims=True)
    used = arr.any(axis=0)
    pruned = tuple(int(i) for i in np.nonzero(~used)[0])
    return Channel(arr[:, used], pruned)


def standard_channel(kind: str, param) -> Channel:
    """Construct a canonical channel.

    kind: "bsc" (crossover param), "bec" (erasure param, outputs ordered
    0/erasure/1), "zchannel" (crossover from input 0), or "identity"
    (param is the alphabet size).
    """
    kind = kind.lower()
    if kind == "identity":
        n = int(param)
        if n < 1 or n != param:
            raise ChannelError(f"identity size must be a positive integer, got {param!r}")
        return make_channel(np.eye(n))
    p = float(param)
    if not 0.0 <= p <= 1.0:
        raise ChannelError(f"{kind} parameter must lie in [0, 1], got {p!r}")
    if kind == "bsc":
        return make_channel([[1.0 - p, p], [p, 1.0 - p]])
    if kind == "bec":
        return make_channel([[1.0 - p, p, 0.0], [0.0, p, 1.0 - p]])
    if kind in ("zchannel", "z"):
        return make_channel([[1.0 - p, p], [0.0, 1.0]])
    raise ChannelError(f"unknown channel kind {kind!r}")


def push_forward(ch: Channel, p) -> Distribution:
    """Output distribution induced by input law p through the channel."""
    p = as_distribution(p)
    if p.size != ch.input_size:
        raise DimensionMismatch(f"input law has {p.size} symbols, channel expects {ch.input_size}")
    return Distribution(p.probs @ ch.rows)


def cascade(first: Channel, second: Channel) -> Channel:
    """Compose two channels: the output of `first` feeds `second`."""
    if first.output_size != second.input_size:
        raise DimensionMismatch(
            f"cannot cascade: first has {first.output_size} outputs, second expects {second.input_size} inputs"
        )
    return make_channel(first.rows @ second.rows)


@dataclass(frozen=True, eq=False)
class AuxiliaryJoint:
    """Joint law of an auxiliary variable U and a channel input X.

    Stored as the U marginal together with one conditional input law per
    value of U. The induced X marginal is the mixture of the conditionals.
    """

    u_marginal: Distribution
    conditionals: tuple

    def __post_init__(self):
        u = as_distribution(self.u_marginal)
        conds = tuple(as_distribution(c) for c in self.conditionals)
        if len(conds) != u.size:
            raise ChannelError(f"{len(conds)} conditionals for {u.size} auxiliary symbols")
        sizes = {c.size for c in conds}
        if len(sizes) != 1:
            raise ChannelError("conditionals defined on different alphabets")
        object.__setattr__(self, "u_marginal", u)
        object.__setattr__(self, "conditionals", conds)

    @property
    def aux_size(self) -> int:
        return self.u_marginal.size

    @property
    def input_size(self) -> int:
        return self.conditionals[0].size

    def conditional_matrix(self) -> np.ndarray:
        return np.stack([c.probs for c in self.conditionals])

    def x_marginal(self) -> Distribution:
        return Distribution(self.u_marginal.probs @ self.conditional_matrix())

    @staticmethod
    def from_arrays(weights, conditionals) -> "AuxiliaryJoint":
        return AuxiliaryJoint(Distribution(weights), tuple(Distribution(row) for row in conditionals))

    @staticmethod
    def deterministic(p) -> "AuxiliaryJoint":
        """U = X with marginal p (point-mass conditionals)."""
        p = as_distribution(p)
        return AuxiliaryJoint(p, tuple(Distribution(row) for row in np.eye(p.size)))

    @staticmethod
    def constant(p) -> "AuxiliaryJoint":
        """Degenerate single-valued U with X ~ p."""
        p = as_distribution(p)
        return AuxiliaryJoint(Distribution([1.0]), (p,))
