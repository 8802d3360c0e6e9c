"""Report serialization: canonical JSON, Markdown and CSV summaries.

JSON is the machine-readable source of truth (full float precision,
versioned schema); Markdown and CSV are derived human summaries with
values rounded to 3 decimals.  The reporting-scale score labels live here:
the engine deals in indices only, display names are a view concern and can
be overridden with a custom 7-name table.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Sequence

from .engine import ComparisonReport, ItemResult, RoundResult
from .linguistic import TwoTuple
from .model import RoundInput

__all__ = [
    "REPORT_SCHEMA",
    "COMPARE_SCHEMA",
    "DEFAULT_SCORE_LABELS",
    "score_label",
    "format_two_tuple",
    "two_tuple_to_json",
    "two_tuple_from_json",
    "build_report",
    "round_result_from_report",
    "report_to_markdown",
    "report_to_csv",
    "comparison_to_json",
    "dumps",
]

REPORT_SCHEMA = "delphi-report/1"
COMPARE_SCHEMA = "delphi-compare/1"

# Seven display names for the reporting scale s0..s6.
DEFAULT_SCORE_LABELS = (
    "Dreadful",
    "Incorrect",
    "Moderate",
    "Correct enough",
    "Correct",
    "Very correct",
    "Excellent",
)


def score_label(
    t: TwoTuple, labels: Sequence[str] = DEFAULT_SCORE_LABELS
) -> str:
    if len(labels) != t.granularity:
        raise ValueError(
            f"label table has {len(labels)} names for a {t.granularity}-label scale"
        )
    return labels[t.index]


def format_two_tuple(t: TwoTuple, decimals: int = 3) -> str:
    return f"(s{t.index}, {t.alpha:.{decimals}f})"


def two_tuple_to_json(t: TwoTuple) -> dict[str, Any]:
    return {
        "index": t.index,
        "alpha": t.alpha,
        "granularity": t.granularity,
        "beta": t.beta,
    }


def two_tuple_from_json(obj: Mapping[str, Any]) -> TwoTuple:
    return TwoTuple(int(obj["index"]), float(obj["alpha"]), int(obj["granularity"]))


def _item_to_json(
    result: ItemResult,
    description: str,
    dimension: str,
    labels: Sequence[str],
) -> dict[str, Any]:
    return {
        "ordinal": result.ordinal,
        "description": description,
        "dimension": dimension,
        "unified": [[two_tuple_to_json(t) for t in row] for row in result.unified],
        "y": [two_tuple_to_json(t) for t in result.y],
        "z": two_tuple_to_json(result.z),
        "score": two_tuple_to_json(result.score),
        "score_label": score_label(result.score, labels),
        "w_avg": result.w_avg,
        "rho": list(result.rho),
        "ci": result.ci,
        "cs": result.cs,
        "ri": result.ri,
        "rs": result.rs,
        "ci_clamped": result.ci_clamped,
    }


def build_report(
    round_input: RoundInput,
    result: RoundResult,
    labels: Sequence[str] = DEFAULT_SCORE_LABELS,
) -> dict[str, Any]:
    """Full-fidelity JSON report for one evaluated round."""
    q = round_input.questionnaire
    return {
        "schema": REPORT_SCHEMA,
        "round": result.round_number,
        "epsilon": result.epsilon,
        "all_consensual": result.all_consensual,
        "average_relevance": result.average_relevance,
        "judges": list(round_input.judge_names),
        "dimensions": [
            {
                "name": d.name,
                "begin": d.begin,
                "end": d.end,
                "expert_weights": list(d.expert_weights),
            }
            for d in q.dimensions
        ],
        "questionnaire": {
            "collective_clarity": two_tuple_to_json(result.cc),
            "collective_writing": two_tuple_to_json(result.cw),
            "collective_presence": two_tuple_to_json(result.cp),
            "collective_answering_scale": two_tuple_to_json(result.cas),
            "questionnaire_score": two_tuple_to_json(result.qs),
            "questionnaire_score_label": score_label(result.qs, labels),
        },
        "items": [
            _item_to_json(
                item,
                q.items[item.ordinal - 1].description,
                q.dimension_of(item.ordinal).name,
                labels,
            )
            for item in result.items
        ],
    }


def round_result_from_report(report: Mapping[str, Any]) -> RoundResult:
    """Rebuild the engine result from a JSON report, at full precision."""
    if report.get("schema") != REPORT_SCHEMA:
        raise ValueError(
            f"unsupported report schema {report.get('schema')!r}; "
            f"expected {REPORT_SCHEMA!r}"
        )
    items = []
    for obj in report["items"]:
        items.append(
            ItemResult(
                ordinal=int(obj["ordinal"]),
                unified=tuple(
                    tuple(two_tuple_from_json(t) for t in row)
                    for row in obj["unified"]
                ),
                y=tuple(two_tuple_from_json(t) for t in obj["y"]),
                z=two_tuple_from_json(obj["z"]),
                score=two_tuple_from_json(obj["score"]),
                w_avg=float(obj["w_avg"]),
                rho=tuple(float(r) for r in obj["rho"]),
                ci=float(obj["ci"]),
                cs=bool(obj["cs"]),
                ri=float(obj["ri"]),
                rs=bool(obj["rs"]),
                ci_clamped=bool(obj["ci_clamped"]),
            )
        )
    qlevel = report["questionnaire"]
    return RoundResult(
        round_number=int(report["round"]),
        items=tuple(items),
        cc=two_tuple_from_json(qlevel["collective_clarity"]),
        cw=two_tuple_from_json(qlevel["collective_writing"]),
        cp=two_tuple_from_json(qlevel["collective_presence"]),
        cas=two_tuple_from_json(qlevel["collective_answering_scale"]),
        qs=two_tuple_from_json(qlevel["questionnaire_score"]),
        epsilon=float(report["epsilon"]),
        all_consensual=bool(report["all_consensual"]),
        average_relevance=float(report["average_relevance"]),
    )


def _fmt(value: float, decimals: int = 3) -> str:
    return f"{value:.{decimals}f}"


def report_to_markdown(report: Mapping[str, Any]) -> str:
    """Human summary table: one row per item, questionnaire footer."""
    lines = [
        f"# Round {report['round']} evaluation",
        "",
        f"- epsilon: {_fmt(report['epsilon'], 2)}",
        f"- all consensual: {report['all_consensual']}",
        f"- average relevance: {_fmt(report['average_relevance'])}",
        "",
        "| Item | Description | IS | CS | CI | RS | RI |",
        "| --- | --- | --- | --- | --- | --- | --- |",
    ]
    for item in report["items"]:
        score = two_tuple_from_json(item["score"])
        desc = item["description"].replace("|", "\\|")
        if len(desc) > 60:
            desc = desc[:57] + "..."
        lines.append(
            f"| {item['ordinal']} | {desc} | {format_two_tuple(score)} "
            f"{item['score_label']} | {item['cs']} | {_fmt(item['ci'])} "
            f"| {item['rs']} | {_fmt(item['ri'], 2)} |"
        )
    qlevel = report["questionnaire"]
    lines += [
        "",
        "| CC | CW | CP | CAS | QS |",
        "| --- | --- | --- | --- | --- |",
        "| "
        + " | ".join(
            format_two_tuple(two_tuple_from_json(qlevel[key]))
            for key in (
                "collective_clarity",
                "collective_writing",
                "collective_presence",
                "collective_answering_scale",
                "questionnaire_score",
            )
        )
        + " |",
        "",
        f"Questionnaire score: {qlevel['questionnaire_score_label']}",
        "",
    ]
    return "\n".join(lines)


def report_to_csv(report: Mapping[str, Any]) -> str:
    """Per-item metrics as a flat CSV table, 3-decimal rounding."""
    lines = ["item,description,score_index,score_alpha,score_label,w_avg,ci,cs,ri,rs"]
    for item in report["items"]:
        score = two_tuple_from_json(item["score"])
        desc = item["description"].replace('"', '""')
        lines.append(
            ",".join(
                [
                    str(item["ordinal"]),
                    f'"{desc}"',
                    str(score.index),
                    _fmt(score.alpha),
                    item["score_label"],
                    _fmt(item["w_avg"]),
                    _fmt(item["ci"]),
                    str(item["cs"]).lower(),
                    _fmt(item["ri"], 2),
                    str(item["rs"]).lower(),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def comparison_to_json(cmp: ComparisonReport) -> dict[str, Any]:
    return {
        "schema": COMPARE_SCHEMA,
        "a_round": cmp.a_round,
        "b_round": cmp.b_round,
        "items": [
            {
                "ordinal": c.ordinal,
                "delta_score_beta": c.delta_score_beta,
                "delta_ci": c.delta_ci,
                "delta_ri": c.delta_ri,
                "cs_a": c.cs_a,
                "cs_b": c.cs_b,
                "rs_a": c.rs_a,
                "rs_b": c.rs_b,
                "cs_flipped": c.cs_flipped,
                "rs_flipped": c.rs_flipped,
            }
            for c in cmp.items
        ],
        "questionnaire": {
            "delta_collective_clarity": cmp.delta_cc,
            "delta_collective_writing": cmp.delta_cw,
            "delta_collective_presence": cmp.delta_cp,
            "delta_collective_answering_scale": cmp.delta_cas,
            "delta_questionnaire_score": cmp.delta_qs,
        },
        "still_failing": list(cmp.still_failing),
    }


def dumps(obj: Mapping[str, Any]) -> str:
    """Canonical JSON text: stable key order, full float precision."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"
