"""Exact 2-tuple linguistic arithmetic over multigranular term sets.

A linguistic term set with granularity ``n`` holds labels ``s_0 .. s_{n-1}``.
Computed values are carried as 2-tuples ``(s_i, alpha)`` where the symbolic
translation ``alpha`` in ``[-0.5, 0.5)`` records the offset of the underlying
numeric value ``beta = i + alpha`` from its nearest label.  This keeps
aggregation lossless: every operator works on beta and converts back.

Scales of different granularity are made commensurable through an extended
hierarchy whose unified level has ``delta = lcm`` of the member deltas, so
every label of every member scale lands exactly on a unified label.  For the
default family {3, 5, 7} the unified scale has 13 labels.

All types are immutable values and all operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "TermSet",
    "TwoTuple",
    "ExtendedHierarchy",
    "S3",
    "S5",
    "S7",
    "S13",
    "delta_of",
    "delta_inv",
    "from_label",
    "transform",
    "weighted_extended_mean",
    "unified_level",
]


@dataclass(frozen=True)
class TermSet:
    """An ordered set of `granularity` linguistic labels s_0 .. s_delta."""

    granularity: int

    def __post_init__(self) -> None:
        if not isinstance(self.granularity, int) or self.granularity < 2:
            raise ValueError(
                f"term set granularity must be an integer >= 2, got {self.granularity!r}"
            )

    @property
    def delta(self) -> int:
        """Largest label index (granularity - 1)."""
        return self.granularity - 1

    def label(self, index: int) -> "TwoTuple":
        """The pure label (s_index, 0) of this scale."""
        return from_label(index, self)

    def __repr__(self) -> str:
        return f"TermSet({self.granularity})"


S3 = TermSet(3)
S5 = TermSet(5)
S7 = TermSet(7)
S13 = TermSet(13)

# Slack for beta range checks: aggregation can overshoot the scale bounds by
# a few ulps; anything beyond this is a genuine domain error.
_BETA_SLACK = 1e-9


@dataclass(frozen=True)
class TwoTuple:
    """A linguistic 2-tuple (s_index, alpha) on a scale of `granularity` labels.

    ``beta = index + alpha`` is the numeric equivalent in [0, granularity-1].
    """

    index: int
    alpha: float
    granularity: int

    def __post_init__(self) -> None:
        g = self.granularity
        if not isinstance(g, int) or g < 2:
            raise ValueError(f"granularity must be an integer >= 2, got {g!r}")
        if not 0 <= self.index <= g - 1:
            raise ValueError(
                f"label index {self.index} out of range [0, {g - 1}] for granularity {g}"
            )
        if not -0.5 <= self.alpha < 0.5:
            raise ValueError(
                f"symbolic translation {self.alpha} outside [-0.5, 0.5)"
            )
        beta = self.index + self.alpha
        if beta < -_BETA_SLACK or beta > g - 1 + _BETA_SLACK:
            raise ValueError(
                f"beta {beta} outside [0, {g - 1}] for granularity {g}"
            )

    @property
    def beta(self) -> float:
        """Numeric equivalent index + alpha."""
        return self.index + self.alpha

    def round3(self) -> tuple[int, float]:
        """(index, alpha rounded to 3 decimals) for display."""
        return self.index, round(self.alpha, 3)

    def __str__(self) -> str:
        return f"(s{self.index}, {self.alpha:.3f})"


def delta_of(beta: float, termset: TermSet) -> TwoTuple:
    """Convert a numeric value beta in [0, delta] to its 2-tuple.

    The label is the nearest index; exact .5 ties round up so alpha stays in
    the half-open interval [-0.5, 0.5).

    Raises:
        ValueError: if beta lies outside [0, delta] (beyond float slack).
    """
    d = termset.delta
    if not -_BETA_SLACK <= beta <= d + _BETA_SLACK:
        raise ValueError(f"beta {beta} outside [0, {d}] for {termset}")
    beta = min(max(beta, 0.0), float(d))
    i = math.floor(beta + 0.5)
    # Guard the floor against rounding of beta + 0.5 itself.
    if beta - i >= 0.5:
        i += 1
    elif beta - i < -0.5:
        i -= 1
    i = min(max(i, 0), d)
    return TwoTuple(i, beta - i, termset.granularity)


def delta_inv(t: TwoTuple) -> float:
    """Numeric equivalent of a 2-tuple: index + alpha."""
    return t.index + t.alpha


def from_label(index: int, termset: TermSet) -> TwoTuple:
    """Promote a plain label to the 2-tuple (s_index, 0)."""
    if not isinstance(index, int) or not 0 <= index <= termset.delta:
        raise ValueError(
            f"label index {index!r} out of range [0, {termset.delta}] for {termset}"
        )
    return TwoTuple(index, 0.0, termset.granularity)


def transform(t: TwoTuple, source: TermSet, target: TermSet) -> TwoTuple:
    """Re-express a 2-tuple of `source` on the `target` scale.

    beta scales by target.delta / source.delta, which is exact on label
    positions whenever target.delta is a multiple of source.delta (the
    unified level of a hierarchy) and is likewise used for retranslation
    back to a coarser reporting scale.

    Raises:
        ValueError: if the tuple does not belong to `source`.
    """
    if t.granularity != source.granularity:
        raise ValueError(
            f"tuple granularity {t.granularity} does not match source {source}"
        )
    return delta_of(delta_inv(t) * target.delta / source.delta, target)


def weighted_extended_mean(
    values: Sequence[TwoTuple], weights: Sequence[float] | None = None
) -> TwoTuple:
    """Arithmetic weighted extended mean of same-scale 2-tuples.

    Computes Delta(sum(beta_i * w_i) / sum(w_i)); weights need not be
    normalized and default to uniform.

    Raises:
        ValueError: on empty input, mixed granularities, a negative weight,
            an all-zero weight vector, or a length mismatch.
    """
    if not values:
        raise ValueError("cannot aggregate an empty set of values")
    g = values[0].granularity
    if any(v.granularity != g for v in values):
        raise ValueError("values mix granularities; unify before aggregating")
    if weights is None:
        weights = [1.0] * len(values)
    if len(weights) != len(values):
        raise ValueError(
            f"{len(values)} values but {len(weights)} weights"
        )
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    total = math.fsum(weights)
    if total <= 0:
        raise ValueError("weights sum to zero; at least one must be positive")
    beta = math.fsum(v.beta * w for v, w in zip(values, weights)) / total
    return delta_of(beta, TermSet(g))


def unified_level(granularities: Iterable[int]) -> TermSet:
    """Smallest common scale embedding every given granularity exactly.

    Its delta is the lcm of the member deltas, e.g. {3, 5, 7} -> 13 labels.
    """
    deltas = [TermSet(g).delta for g in granularities]
    if not deltas:
        raise ValueError("need at least one granularity")
    return TermSet(math.lcm(*deltas) + 1)


@dataclass(frozen=True)
class ExtendedHierarchy:
    """A family of user scales plus the unified scale they all embed into."""

    levels: tuple[TermSet, ...]
    unified: TermSet

    @classmethod
    def of(cls, granularities: Iterable[int]) -> "ExtendedHierarchy":
        levels = tuple(TermSet(g) for g in sorted(set(granularities)))
        if not levels:
            raise ValueError("hierarchy needs at least one level")
        return cls(levels=levels, unified=unified_level(ts.granularity for ts in levels))

    def level(self, granularity: int) -> TermSet:
        for ts in self.levels:
            if ts.granularity == granularity:
                return ts
        raise ValueError(
            f"granularity {granularity} is not a level of this hierarchy "
            f"(levels: {[ts.granularity for ts in self.levels]})"
        )

    @property
    def reporting(self) -> TermSet:
        """The richest user scale, used to retranslate unified results."""
        return self.levels[-1]

    def unify(self, t: TwoTuple) -> TwoTuple:
        """Lift a 2-tuple from its user scale onto the unified scale."""
        return transform(t, self.level(t.granularity), self.unified)

    def retranslate(self, t: TwoTuple, target: TermSet | None = None) -> TwoTuple:
        """Project a unified 2-tuple back onto a coarser scale (default: reporting)."""
        target = target or self.reporting
        return transform(t, self.unified, target)


DEFAULT_HIERARCHY = ExtendedHierarchy.of((3, 5, 7))
