"""Consensus content validation of questionnaires with 2-tuple fuzzy
linguistic computing.

Expert panels rate every questionnaire item on four criteria using
linguistic scales of their own choice; the library unifies the mixed
scales, aggregates per-item and questionnaire-level linguistic scores, and
measures consensus and reliance so a moderator can steer the iterative
validation rounds.
"""

from .linguistic import (
    DEFAULT_HIERARCHY,
    ExtendedHierarchy,
    S3,
    S5,
    S7,
    S13,
    TermSet,
    TwoTuple,
    delta_inv,
    delta_of,
    from_label,
    transform,
    unified_level,
    weighted_extended_mean,
)
from .model import (
    CRITERIA,
    Assessment,
    Dimension,
    Item,
    Questionnaire,
    RoundInput,
)
from .engine import (
    ComparisonReport,
    ItemResult,
    RoundResult,
    StopDecision,
    compare_rounds,
    evaluate_item,
    evaluate_round,
    stop_decision,
    trim,
    what_if_epsilon,
)
from .ingestion import (
    ValidationError,
    assemble_round,
    parse_descriptions,
    parse_dimensions,
    parse_responses,
    write_round,
)
from .report import (
    DEFAULT_SCORE_LABELS,
    build_report,
    round_result_from_report,
    score_label,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_HIERARCHY",
    "ExtendedHierarchy",
    "S3",
    "S5",
    "S7",
    "S13",
    "TermSet",
    "TwoTuple",
    "delta_inv",
    "delta_of",
    "from_label",
    "transform",
    "unified_level",
    "weighted_extended_mean",
    "CRITERIA",
    "Assessment",
    "Dimension",
    "Item",
    "Questionnaire",
    "RoundInput",
    "ComparisonReport",
    "ItemResult",
    "RoundResult",
    "StopDecision",
    "compare_rounds",
    "evaluate_item",
    "evaluate_round",
    "stop_decision",
    "trim",
    "what_if_epsilon",
    "ValidationError",
    "assemble_round",
    "parse_descriptions",
    "parse_dimensions",
    "parse_responses",
    "write_round",
    "DEFAULT_SCORE_LABELS",
    "build_report",
    "round_result_from_report",
    "score_label",
    "__version__",
]
