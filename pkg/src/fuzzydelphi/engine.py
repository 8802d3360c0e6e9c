"""Round evaluation: unification, double aggregation, consensus and reliance.

Each item is scored as its own multi-expert multi-criteria problem:

1. every label is promoted to a 2-tuple and unified onto the common scale;
2. a first aggregation over judges (weighted by the item's dimension
   expertise vector) yields one collective 2-tuple per criterion;
3. a second, uniform aggregation over criteria yields the collective
   opinion, retranslated to the reporting scale as the item score;
4. per-judge Euclidean separations from the collective (in unified beta
   space) feed a consensus index, and the per-criterion collective levels
   feed a reliance index against the moderator's threshold epsilon.

Questionnaire-level scores aggregate the per-item results weighted by each
item's collective relevance.  All functions are pure; per-item evaluations
are independent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

from .linguistic import (
    DEFAULT_HIERARCHY,
    ExtendedHierarchy,
    TermSet,
    TwoTuple,
    delta_of,
    from_label,
    transform,
    weighted_extended_mean,
)
from .model import CRITERIA, Assessment, RoundInput

__all__ = [
    "CONSENSUS_THRESHOLD",
    "ItemResult",
    "RoundResult",
    "ItemComparison",
    "ComparisonReport",
    "StopDecision",
    "aggregate_item_criteria",
    "average_relevance",
    "collective_opinion",
    "item_score",
    "separations",
    "consensus_index",
    "reliance_index",
    "evaluate_item",
    "evaluate_round",
    "what_if_epsilon",
    "trim",
    "compare_rounds",
    "stop_decision",
]

# Consensus status flips true at this consensus-index level.
CONSENSUS_THRESHOLD = 0.5


@dataclass(frozen=True)
class ItemResult:
    """Everything computed for one item, retained for drill-down."""

    ordinal: int
    unified: tuple[tuple[TwoTuple, ...], ...]  # p judges x q criteria, unified scale
    y: tuple[TwoTuple, ...]                    # per-criterion collectives, unified scale
    z: TwoTuple                                # collective opinion, unified scale
    score: TwoTuple                            # item score, reporting scale
    w_avg: float                               # collective relevance
    rho: tuple[float, ...]                     # per-judge separations, unified beta units
    ci: float
    cs: bool
    ri: float
    rs: bool
    ci_clamped: bool = False


@dataclass(frozen=True)
class RoundResult:
    """All item results plus questionnaire-level collective scores."""

    round_number: int
    items: tuple[ItemResult, ...]
    cc: TwoTuple   # collective clarity, reporting scale
    cw: TwoTuple   # collective writing
    cp: TwoTuple   # collective presence
    cas: TwoTuple  # collective answering scale
    qs: TwoTuple   # questionnaire score
    epsilon: float
    all_consensual: bool
    average_relevance: float


class ConsensusOutcome(NamedTuple):
    ci: float
    cs: bool
    clamped: bool


class RelianceOutcome(NamedTuple):
    ri: float
    rs: bool


def _normalized(weights: Sequence[float]) -> list[float]:
    total = math.fsum(weights)
    if total <= 0:
        raise ValueError("weights must contain at least one positive entry")
    return [w / total for w in weights]


def aggregate_item_criteria(
    unified: Sequence[Sequence[TwoTuple]], dim_weights: Sequence[float]
) -> tuple[TwoTuple, ...]:
    """First aggregation: weighted mean over judges, column per criterion."""
    if not unified:
        raise ValueError("empty assessment matrix")
    if any(len(row) != len(unified[0]) for row in unified):
        raise ValueError("ragged assessment matrix")
    if len(unified) != len(dim_weights):
        raise ValueError(
            f"{len(unified)} judge rows but {len(dim_weights)} dimension weights"
        )
    q = len(unified[0])
    return tuple(
        weighted_extended_mean([row[j] for row in unified], dim_weights)
        for j in range(q)
    )


def average_relevance(
    relevances: Sequence[float], dim_weights: Sequence[float]
) -> float:
    """Collective relevance: dimension-weighted average of judge relevances."""
    if len(relevances) != len(dim_weights):
        raise ValueError(
            f"{len(relevances)} relevances but {len(dim_weights)} dimension weights"
        )
    w = _normalized(dim_weights)
    return math.fsum(r * wi for r, wi in zip(relevances, w))


def collective_opinion(y: Sequence[TwoTuple]) -> TwoTuple:
    """Second aggregation: uniform mean of the per-criterion collectives."""
    return weighted_extended_mean(list(y))


def item_score(
    z: TwoTuple, hierarchy: ExtendedHierarchy = DEFAULT_HIERARCHY
) -> TwoTuple:
    """Retranslate the unified collective opinion to the reporting scale."""
    return hierarchy.retranslate(z)


def separations(
    unified: Sequence[Sequence[TwoTuple]], y: Sequence[TwoTuple]
) -> tuple[float, ...]:
    """Per-judge Euclidean distance from the collective in unified beta space."""
    q = len(y)
    out = []
    for row in unified:
        if len(row) != q:
            raise ValueError("assessment row length does not match collective vector")
        out.append(
            math.sqrt(math.fsum((cell.beta - yj.beta) ** 2 for cell, yj in zip(row, y)))
        )
    return tuple(out)


def consensus_index(
    rho: Sequence[float], dim_weights: Sequence[float], unified_delta: int
) -> ConsensusOutcome:
    """Consensus index: 1 minus the weighted mean separation over the scale span.

    Separations can exceed the scale span (up to delta * sqrt(q)), so the
    index is clamped into [0, 1]; `clamped` reports when that happened.
    """
    if len(rho) != len(dim_weights):
        raise ValueError(f"{len(rho)} separations but {len(dim_weights)} weights")
    w = _normalized(dim_weights)
    raw = 1.0 - math.fsum(r * wi for r, wi in zip(rho, w)) / unified_delta
    clamped = raw < 0.0 or raw > 1.0
    ci = min(max(raw, 0.0), 1.0)
    return ConsensusOutcome(ci, ci >= CONSENSUS_THRESHOLD, clamped)


def reliance_index(
    y: Sequence[TwoTuple], epsilon: float, unified_delta: int
) -> RelianceOutcome:
    """Fraction of criteria whose collective level clears delta * epsilon."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon {epsilon} outside [0, 1]")
    q = len(y)
    if q == 0:
        raise ValueError("empty collective vector")
    hits = sum(1 for yj in y if yj.beta >= unified_delta * epsilon)
    ri = hits / q
    return RelianceOutcome(ri, ri >= epsilon)


def evaluate_item(
    assessments: Sequence[Assessment],
    dim_weights: Sequence[float],
    epsilon: float,
    hierarchy: ExtendedHierarchy = DEFAULT_HIERARCHY,
) -> ItemResult:
    """Full per-item pipeline from raw labels to scores and indices."""
    if not assessments:
        raise ValueError("no assessments for item")
    ordinal = assessments[0].item
    if any(a.item != ordinal for a in assessments):
        raise ValueError("assessments mix items")
    unified = tuple(
        tuple(
            hierarchy.unify(from_label(lbl, hierarchy.level(a.scale_granularity)))
            for lbl in a.criteria_labels
        )
        for a in assessments
    )
    y = aggregate_item_criteria(unified, dim_weights)
    z = collective_opinion(y)
    score = item_score(z, hierarchy)
    rho = separations(unified, y)
    ci, cs, clamped = consensus_index(rho, dim_weights, hierarchy.unified.delta)
    ri, rs = reliance_index(y, epsilon, hierarchy.unified.delta)
    w_avg = average_relevance([a.relevance for a in assessments], dim_weights)
    return ItemResult(
        ordinal=ordinal,
        unified=unified,
        y=y,
        z=z,
        score=score,
        w_avg=w_avg,
        rho=rho,
        ci=ci,
        cs=cs,
        ri=ri,
        rs=rs,
        ci_clamped=clamped,
    )


def evaluate_round(
    round_input: RoundInput, hierarchy: ExtendedHierarchy = DEFAULT_HIERARCHY
) -> RoundResult:
    """Evaluate every item, then the questionnaire-level collectives.

    The questionnaire collectives (per-criterion and overall score) are the
    extended means over items weighted by each item's collective relevance;
    per-criterion collectives are computed on the unified scale and
    retranslated to the reporting scale.
    """
    questionnaire = round_input.questionnaire
    results = []
    for item in questionnaire.items:
        dim = questionnaire.dimension_of(item.ordinal)
        results.append(
            evaluate_item(
                round_input.assessments_for_item(item.ordinal),
                dim.expert_weights,
                round_input.epsilon,
                hierarchy,
            )
        )
    relevances = [r.w_avg for r in results]
    collectives = []
    for j in range(len(CRITERIA)):
        unified_collective = weighted_extended_mean(
            [r.y[j] for r in results], relevances
        )
        collectives.append(hierarchy.retranslate(unified_collective))
    qs = weighted_extended_mean([r.score for r in results], relevances)
    return RoundResult(
        round_number=questionnaire.round_number,
        items=tuple(results),
        cc=collectives[0],
        cw=collectives[1],
        cp=collectives[2],
        cas=collectives[3],
        qs=qs,
        epsilon=round_input.epsilon,
        all_consensual=all(r.cs and r.rs for r in results),
        average_relevance=math.fsum(relevances) / len(relevances),
    )


def what_if_epsilon(result: RoundResult, epsilon_prime: float) -> RoundResult:
    """Recompute reliance under a different epsilon; nothing else moves.

    Scores, separations and consensus do not depend on epsilon, so they are
    carried over unchanged from the stored result.
    """
    unified_delta = result.items[0].y[0].granularity - 1 if result.items else 0
    new_items = []
    for item in result.items:
        ri, rs = reliance_index(item.y, epsilon_prime, unified_delta)
        new_items.append(replace(item, ri=ri, rs=rs))
    return replace(
        result,
        items=tuple(new_items),
        epsilon=epsilon_prime,
        all_consensual=all(r.cs and r.rs for r in new_items),
    )


def trim(
    result: RoundResult, threshold: TwoTuple | None = None
) -> tuple[list[ItemResult], int]:
    """Hide items whose score label falls below the threshold label.

    The threshold is a reporting-scale label; an item survives when its
    score's label index is at or above the threshold's.  Default s0 hides
    nothing.  Returns the visible items in original order plus the hidden
    count.
    """
    if threshold is not None and result.items:
        if threshold.granularity != result.items[0].score.granularity:
            raise ValueError(
                f"trim threshold granularity {threshold.granularity} does not match "
                f"the reporting scale {result.items[0].score.granularity}"
            )
    cut = threshold.index if threshold is not None else 0
    visible = [item for item in result.items if item.score.index >= cut]
    return visible, len(result.items) - len(visible)


@dataclass(frozen=True)
class ItemComparison:
    ordinal: int
    delta_score_beta: float
    delta_ci: float
    delta_ri: float
    cs_a: bool
    cs_b: bool
    rs_a: bool
    rs_b: bool

    @property
    def cs_flipped(self) -> bool:
        return self.cs_a != self.cs_b

    @property
    def rs_flipped(self) -> bool:
        return self.rs_a != self.rs_b


@dataclass(frozen=True)
class ComparisonReport:
    """Per-item and questionnaire-level deltas between two rounds (b - a)."""

    a_round: int
    b_round: int
    items: tuple[ItemComparison, ...]
    delta_cc: float
    delta_cw: float
    delta_cp: float
    delta_cas: float
    delta_qs: float
    still_failing: tuple[int, ...]  # items failing CS or RS in round b


def compare_rounds(a: RoundResult, b: RoundResult) -> ComparisonReport:
    """Delta report between two rounds of the same questionnaire."""
    if len(a.items) != len(b.items):
        raise ValueError(
            f"cannot compare rounds with {len(a.items)} and {len(b.items)} items"
        )
    comparisons = []
    for ia, ib in zip(a.items, b.items):
        if ia.ordinal != ib.ordinal:
            raise ValueError("rounds list items in different orders")
        comparisons.append(
            ItemComparison(
                ordinal=ia.ordinal,
                delta_score_beta=ib.score.beta - ia.score.beta,
                delta_ci=ib.ci - ia.ci,
                delta_ri=ib.ri - ia.ri,
                cs_a=ia.cs,
                cs_b=ib.cs,
                rs_a=ia.rs,
                rs_b=ib.rs,
            )
        )
    return ComparisonReport(
        a_round=a.round_number,
        b_round=b.round_number,
        items=tuple(comparisons),
        delta_cc=b.cc.beta - a.cc.beta,
        delta_cw=b.cw.beta - a.cw.beta,
        delta_cp=b.cp.beta - a.cp.beta,
        delta_cas=b.cas.beta - a.cas.beta,
        delta_qs=b.qs.beta - a.qs.beta,
        still_failing=tuple(c.ordinal for c in comparisons if not (c.cs_b and c.rs_b)),
    )


class StopDecision(enum.Enum):
    CONTINUE = "continue"
    STOP_CONSENSUS = "stop_consensus"
    STOP_BUDGET = "stop_budget"


def stop_decision(
    results: Sequence[RoundResult], max_iterations: int
) -> StopDecision:
    """Stop when the latest round is consensual or the budget is spent."""
    if not results:
        raise ValueError("need at least one evaluated round")
    if results[-1].all_consensual:
        return StopDecision.STOP_CONSENSUS
    if len(results) >= max_iterations:
        return StopDecision.STOP_BUDGET
    return StopDecision.CONTINUE
