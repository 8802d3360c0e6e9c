"""Bundled sample data: the b-learning case study plus synthetic rounds.

The package ships transcriptions of the published 45-item b-learning
questionnaire validation: the dimension layout with judge expertise
weights, the item texts, the full two-round response grids for item 27,
and the published per-item outcome summary of both rounds.  The raw
response grids for the other 44 items were never published, so full-scale
workflows are exercised with deterministic synthetic rounds instead.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from importlib import resources

from .engine import ItemResult, RoundResult
from .ingestion import assemble_round, write_round
from .linguistic import S7, S13, TwoTuple, transform
from .model import RoundInput

__all__ = [
    "load_text",
    "load_item27_round",
    "PublishedItem",
    "published_summary",
    "published_questionnaire_scores",
    "published_round_result",
    "synthetic_round_input",
    "synthetic_round_csvs",
]


def load_text(name: str) -> str:
    """Raw text of a bundled data file."""
    return (resources.files("fuzzydelphi") / "data" / name).read_text("utf-8")


def load_item27_round(round_number: int, epsilon: float = 0.75) -> RoundInput:
    """The item-27 extract of the case study as a single-item round."""
    if round_number not in (1, 2):
        raise ValueError("the case study has rounds 1 and 2")
    return assemble_round(
        round_number,
        responses=load_text(f"item27_round{round_number}_responses.csv"),
        dimensions=load_text("item27_dimensions.csv"),
        descriptions=load_text(f"item27_round{round_number}_description.csv"),
        epsilon=epsilon,
    )


@dataclass(frozen=True)
class PublishedItem:
    """One row of the published per-item outcome summary."""

    ordinal: int
    score: TwoTuple  # reporting scale
    cs: bool
    ci: float
    rs: bool
    ri: float


def _read_rows(name: str) -> list[list[str]]:
    rows = list(csv.reader(io.StringIO(load_text(name))))
    return rows[1:]  # drop header


def published_summary(round_number: int) -> list[PublishedItem]:
    """Published score/consensus/reliance outcomes for all 45 items."""
    out = []
    for row in _read_rows(f"round{round_number}_published_summary.csv"):
        ordinal, si, sa, cs, ci, rs, ri = row
        out.append(
            PublishedItem(
                ordinal=int(ordinal),
                score=TwoTuple(int(si), float(sa), S7.granularity),
                cs=cs == "true",
                ci=float(ci),
                rs=rs == "true",
                ri=float(ri),
            )
        )
    return out


def published_questionnaire_scores(round_number: int) -> dict[str, TwoTuple]:
    """Published questionnaire-level collectives (CC, CW, CP, CAS, QS)."""
    out = {}
    for row in _read_rows("published_questionnaire_scores.csv"):
        rnd, metric, index, alpha = row
        if int(rnd) == round_number:
            out[metric] = TwoTuple(int(index), float(alpha), S7.granularity)
    return out


def published_round_result(round_number: int, epsilon: float = 0.75) -> RoundResult:
    """The published summary repackaged as a RoundResult for desk analysis.

    Only score, CS/CI and RS/RI were published per item; the unified
    matrices and separation vectors were not, so those fields are left
    empty and the per-criterion collectives are filled with the overall
    collective opinion.  Suitable for trimming and round comparison, not
    for re-running the pipeline.
    """
    items = []
    for row in published_summary(round_number):
        z = transform(row.score, S7, S13)
        items.append(
            ItemResult(
                ordinal=row.ordinal,
                unified=(),
                y=(z, z, z, z),
                z=z,
                score=row.score,
                w_avg=float("nan"),
                rho=(),
                ci=row.ci,
                cs=row.cs,
                ri=row.ri,
                rs=row.rs,
            )
        )
    scores = published_questionnaire_scores(round_number)
    return RoundResult(
        round_number=round_number,
        items=tuple(items),
        cc=scores["CC"],
        cw=scores["CW"],
        cp=scores["CP"],
        cas=scores["CAS"],
        qs=scores["QS"],
        epsilon=epsilon,
        all_consensual=all(i.cs and i.rs for i in items),
        average_relevance=float("nan"),
    )


def synthetic_round_input(
    round_number: int, seed: int = 20230407, epsilon: float = 0.75
) -> RoundInput:
    """A deterministic full-scale round over the b-learning layout.

    Round 1 mixes scales and spreads opinions; later rounds converge to
    high agreement on the 7-label scale, so round 2 comes out consensual
    at the default epsilon.  Same seed, same data.
    """
    rng = random.Random(seed * 1000 + round_number)
    judge_count = 9
    descriptions = load_text("blearning_descriptions.csv")
    dimensions = load_text("blearning_dimensions.csv")
    n = 45
    header = ["Judge", "Level"]
    for r in range(1, n + 1):
        header += [f"C1_{r}", f"C2_{r}", f"C3_{r}", f"C4_{r}", f"R_{r}"]
    rows = [header]
    for j in range(1, judge_count + 1):
        if round_number <= 1:
            level = rng.choice([3, 5, 7])
        else:
            level = 7
        row: list[str] = [f"J{j}", str(level)]
        top = level - 1
        for _ in range(n):
            for _ in range(4):
                if round_number <= 1:
                    label = rng.randint(max(0, top - 3), top)
                else:
                    label = rng.choice([top, top, top, top - 1])
                row.append(str(label))
            rel = 1.0 if rng.random() < 0.7 else round(rng.uniform(0.85, 1.0), 2)
            row.append(repr(rel))
        rows.append(row)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return assemble_round(
        round_number,
        responses=buf.getvalue(),
        dimensions=dimensions,
        descriptions=descriptions,
        epsilon=epsilon,
    )


def synthetic_round_csvs(round_number: int, seed: int = 20230407) -> dict[str, str]:
    """The synthetic round serialized to the three CSV sheets."""
    return write_round(synthetic_round_input(round_number, seed=seed))
