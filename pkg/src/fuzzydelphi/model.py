"""Domain model of one questionnaire evaluation round.

A questionnaire is an ordered list of items grouped into contiguous
dimensions; each dimension carries one expertise weight per judge.  Every
judge rates every item on four criteria (clarity, writing, presence,
answering scale) using a linguistic scale of their choice, plus a numeric
relevance in [0, 1].  All types are immutable once constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

__all__ = [
    "CRITERIA",
    "USER_SCALE_GRANULARITIES",
    "Item",
    "Dimension",
    "Questionnaire",
    "Assessment",
    "RoundInput",
]

CRITERIA = ("clarity", "writing", "presence", "answering_scale")
USER_SCALE_GRANULARITIES = (3, 5, 7)


@dataclass(frozen=True)
class Item:
    ordinal: int
    description: str

    def __post_init__(self) -> None:
        if self.ordinal < 1:
            raise ValueError(f"item ordinal must be >= 1, got {self.ordinal}")


@dataclass(frozen=True)
class Dimension:
    """A contiguous block of items [begin, end] with per-judge weights."""

    name: str
    begin: int
    end: int
    expert_weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.begin < 1 or self.end < self.begin:
            raise ValueError(
                f"dimension {self.name!r} has invalid range [{self.begin}, {self.end}]"
            )
        if any(w < 0 for w in self.expert_weights):
            raise ValueError(f"dimension {self.name!r} has a negative expert weight")
        if sum(self.expert_weights) <= 0:
            raise ValueError(f"dimension {self.name!r} has all-zero expert weights")

    def contains(self, ordinal: int) -> bool:
        return self.begin <= ordinal <= self.end


@dataclass(frozen=True)
class Questionnaire:
    """Items plus their dimension layout for one round."""

    items: tuple[Item, ...]
    dimensions: tuple[Dimension, ...]
    round_number: int = 0

    def __post_init__(self) -> None:
        n = len(self.items)
        if n < 1 or not self.dimensions:
            raise ValueError("questionnaire needs at least one item and one dimension")
        for i, item in enumerate(self.items, start=1):
            if item.ordinal != i:
                raise ValueError(
                    f"item ordinals must be dense 1..n; position {i} holds {item.ordinal}"
                )
        expected = 1
        for dim in self.dimensions:
            if dim.begin != expected:
                raise ValueError(
                    f"dimension {dim.name!r} begins at {dim.begin}, expected {expected}: "
                    "dimensions must partition the items contiguously and in order"
                )
            expected = dim.end + 1
        if expected != n + 1:
            raise ValueError(
                f"dimensions cover items 1..{expected - 1} but the questionnaire has {n}"
            )
        p = len(self.dimensions[0].expert_weights)
        if any(len(d.expert_weights) != p for d in self.dimensions):
            raise ValueError("all dimensions must carry the same number of expert weights")

    @property
    def item_count(self) -> int:
        return len(self.items)

    def dimension_of(self, ordinal: int) -> Dimension:
        """The unique dimension whose range contains the item ordinal."""
        if not 1 <= ordinal <= len(self.items):
            raise ValueError(
                f"item ordinal {ordinal} out of range [1, {len(self.items)}]"
            )
        for dim in self.dimensions:
            if dim.contains(ordinal):
                return dim
        raise AssertionError("partition invariant violated")  # unreachable


@dataclass(frozen=True)
class Assessment:
    """One judge's full rating of one item on their chosen scale."""

    judge: int
    item: int
    criteria_labels: tuple[int, int, int, int]
    relevance: float
    scale_granularity: int

    def __post_init__(self) -> None:
        if self.judge < 1 or self.item < 1:
            raise ValueError("judge and item ordinals are 1-based")
        if self.scale_granularity not in USER_SCALE_GRANULARITIES:
            raise ValueError(
                f"scale granularity {self.scale_granularity} not one of "
                f"{USER_SCALE_GRANULARITIES}"
            )
        if len(self.criteria_labels) != len(CRITERIA):
            raise ValueError(f"expected {len(CRITERIA)} criteria labels")
        top = self.scale_granularity - 1
        for name, label in zip(CRITERIA, self.criteria_labels):
            if not 0 <= label <= top:
                raise ValueError(
                    f"label {label} for {name} out of range for granularity "
                    f"{self.scale_granularity}"
                )
        if not 0.0 <= self.relevance <= 1.0:
            raise ValueError(f"relevance {self.relevance} outside [0, 1]")


@dataclass(frozen=True)
class RoundInput:
    """Everything needed to evaluate one round: layout, grid, and epsilon."""

    questionnaire: Questionnaire
    assessments: tuple[Assessment, ...]
    judge_count: int
    epsilon: float = 0.75
    judge_names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.judge_count < 1:
            raise ValueError("need at least one judge")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon {self.epsilon} outside [0, 1]")
        if not self.judge_names:
            object.__setattr__(
                self,
                "judge_names",
                tuple(f"J{i}" for i in range(1, self.judge_count + 1)),
            )
        if len(self.judge_names) != self.judge_count:
            raise ValueError("judge_names length must equal judge_count")
        n = self.questionnaire.item_count
        seen: dict[tuple[int, int], Assessment] = {}
        scales: dict[int, int] = {}
        for a in self.assessments:
            if not 1 <= a.judge <= self.judge_count:
                raise ValueError(f"assessment references unknown judge {a.judge}")
            if not 1 <= a.item <= n:
                raise ValueError(f"assessment references unknown item {a.item}")
            key = (a.judge, a.item)
            if key in seen:
                raise ValueError(f"duplicate assessment for judge {a.judge}, item {a.item}")
            seen[key] = a
            prior = scales.setdefault(a.judge, a.scale_granularity)
            if prior != a.scale_granularity:
                raise ValueError(
                    f"judge {a.judge} mixes scales {prior} and {a.scale_granularity} "
                    "within one round"
                )
        if len(seen) != self.judge_count * n:
            missing = [
                (j, r)
                for j in range(1, self.judge_count + 1)
                for r in range(1, n + 1)
                if (j, r) not in seen
            ]
            raise ValueError(
                f"incomplete assessment grid: {len(missing)} missing pairs, "
                f"first {missing[:5]}"
            )
        p = len(self.questionnaire.dimensions[0].expert_weights)
        if p != self.judge_count:
            raise ValueError(
                f"dimensions carry {p} expert weights but the round has "
                f"{self.judge_count} judges"
            )

    def assessments_for_item(self, ordinal: int) -> tuple[Assessment, ...]:
        """The p assessments of one item, ordered by judge."""
        rows = sorted(
            (a for a in self.assessments if a.item == ordinal), key=lambda a: a.judge
        )
        if len(rows) != self.judge_count:
            raise ValueError(f"item {ordinal} is missing assessments")
        return tuple(rows)
