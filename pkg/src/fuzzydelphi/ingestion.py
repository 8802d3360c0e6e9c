"""Parse and validate the per-round CSV sheets into a RoundInput.

Three sheets feed a round: item descriptions (optional), the dimension
layout with per-judge expertise weights (optional), and the response grid
(mandatory).  Parsers are pure functions over in-memory text; callers own
file I/O.  Validation is exhaustive: every defect found in one pass is
reported, with row and column coordinates, before anything is rejected.

Grammar: comma-separated, RFC-4180 quoting, UTF-8 with optional BOM, LF or
CRLF line ends.  Header rows are optional and auto-detected.  Decimal
separator is '.'; a decimal comma in a numeric cell is a hard error.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from typing import Sequence

from .model import (
    USER_SCALE_GRANULARITIES,
    Assessment,
    Dimension,
    Item,
    Questionnaire,
    RoundInput,
)

__all__ = [
    "ValidationError",
    "ResponsesSheet",
    "parse_descriptions",
    "parse_dimensions",
    "parse_responses",
    "assemble_round",
    "write_round",
]

_CRITERIA_PER_ITEM = 5  # C1..C4 labels plus the relevance column
_DESCRIPTION_HEADER = re.compile(r"item|description", re.IGNORECASE)


class ValidationError(ValueError):
    """One or more input defects, all collected in a single pass."""

    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(self.diagnostics))


def _rows(data: str | bytes) -> list[list[str]]:
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    elif data.startswith("﻿"):
        data = data.lstrip("﻿")
    reader = csv.reader(io.StringIO(data, newline=""))
    return [row for row in reader if any(cell.strip() for cell in row)]


def _is_int(cell: str) -> bool:
    try:
        int(cell.strip())
        return True
    except ValueError:
        return False


def _parse_int(cell: str, where: str, errors: list[str]) -> int | None:
    try:
        return int(cell.strip())
    except ValueError:
        errors.append(f"{where}: expected an integer, got {cell.strip()!r}")
        return None


def _parse_float(cell: str, where: str, errors: list[str]) -> float | None:
    text = cell.strip()
    if "," in text:
        errors.append(
            f"{where}: decimal comma in numeric cell {text!r}; use '.' as the "
            "decimal separator"
        )
        return None
    try:
        return float(text)
    except ValueError:
        errors.append(f"{where}: expected a number, got {text!r}")
        return None


def _parse_label(cell: str, where: str, errors: list[str]) -> int | None:
    """A label index, given either as '4' or as the label name 's4'."""
    text = cell.strip()
    if text[:1] in ("s", "S") and _is_int(text[1:]):
        text = text[1:]
    if not _is_int(text):
        errors.append(f"{where}: expected a label index, got {cell.strip()!r}")
        return None
    return int(text)


def parse_descriptions(data: str | bytes) -> list[str]:
    """Item description texts, one row per item, in order.

    Rows may be bare text or (ordinal, text) pairs.  A first row whose first
    cell is non-numeric and mentions item/description is taken as a header.
    """
    rows = _rows(data)
    if rows and not _is_int(rows[0][0]) and _DESCRIPTION_HEADER.search(rows[0][0]):
        rows = rows[1:]
    if not rows:
        raise ValidationError(["descriptions sheet: no data rows"])
    out = []
    for row in rows:
        if len(row) >= 2 and _is_int(row[0]):
            out.append(row[1].strip())
        else:
            out.append(row[0].strip())
    return out


def parse_dimensions(data: str | bytes, judge_count: int) -> list[Dimension]:
    """Dimension rows: name, begin, end, then one weight column per judge.

    Ranges must be contiguous and start at item 1.  Each weight row is
    renormalized to sum exactly 1 when its raw sum is within [0.98, 1.02];
    anything further off is rejected.
    """
    rows = _rows(data)
    if rows and (len(rows[0]) < 3 or not _is_int(rows[0][1])):
        rows = rows[1:]
    if not rows:
        raise ValidationError(["dimensions sheet: no data rows"])
    errors: list[str] = []
    dims: list[Dimension] = []
    expected_begin = 1
    for idx, row in enumerate(rows, start=1):
        where = f"dimensions row {idx}"
        if len(row) != 3 + judge_count:
            errors.append(
                f"{where}: expected {3 + judge_count} columns "
                f"(name, begin, end, {judge_count} weights), got {len(row)}"
            )
            continue
        name = row[0].strip()
        begin = _parse_int(row[1], f"{where}, begin", errors)
        end = _parse_int(row[2], f"{where}, end", errors)
        weights = [
            _parse_float(cell, f"{where}, weight {j + 1}", errors)
            for j, cell in enumerate(row[3:])
        ]
        if begin is None or end is None or any(w is None for w in weights):
            continue
        if begin > end:
            errors.append(f"{where}: begin {begin} exceeds end {end}")
            continue
        if begin != expected_begin:
            errors.append(
                f"{where}: items {begin}..{end} leave a gap or overlap; "
                f"expected the range to begin at {expected_begin}"
            )
        expected_begin = end + 1
        if any(w < 0 for w in weights):
            errors.append(f"{where}: negative expert weight")
            continue
        total = sum(weights)
        if not 0.98 <= total <= 1.02:
            errors.append(
                f"{where}: expert weights sum to {total:.4f}, outside [0.98, 1.02]"
            )
            continue
        if abs(total - 1.0) > 1e-9:
            weights = [w / total for w in weights]
        dims.append(Dimension(name, begin, end, tuple(weights)))
    if errors:
        raise ValidationError(errors)
    return dims


@dataclass(frozen=True)
class ResponsesSheet:
    """Parsed response grid: p judges by n items."""

    judge_count: int
    item_count: int
    judge_names: tuple[str, ...]
    assessments: tuple[Assessment, ...]


def parse_responses(data: str | bytes) -> ResponsesSheet:
    """The mandatory response grid.

    Columns: judge id, scale level in {3, 5, 7}, then per item the four
    criterion labels and the relevance.  Labels are validated against the
    row's level; every judge keeps one level for the whole round.
    """
    rows = _rows(data)
    if rows and (len(rows[0]) < 2 or not _is_int(rows[0][1])):
        rows = rows[1:]
    if not rows:
        raise ValidationError(["responses sheet: no data rows"])
    errors: list[str] = []
    width = len(rows[0])
    if width < 2 + _CRITERIA_PER_ITEM or (width - 2) % _CRITERIA_PER_ITEM != 0:
        raise ValidationError(
            [
                f"responses sheet: {width} columns cannot hold (judge, level) plus "
                f"blocks of {_CRITERIA_PER_ITEM} (4 labels + relevance) per item"
            ]
        )
    n = (width - 2) // _CRITERIA_PER_ITEM
    names: list[str] = []
    assessments: list[Assessment] = []
    for idx, row in enumerate(rows, start=1):
        where = f"responses row {idx}"
        if len(row) != width:
            errors.append(f"{where}: expected {width} columns, got {len(row)}")
            continue
        name = row[0].strip() or f"J{idx}"
        if name in names:
            errors.append(f"{where}: duplicate judge id {name!r}")
        names.append(name)
        level = _parse_int(row[1], f"{where}, level", errors)
        if level is None:
            continue
        if level not in USER_SCALE_GRANULARITIES:
            errors.append(
                f"{where}: level {level} not one of {USER_SCALE_GRANULARITIES}"
            )
            continue
        for item in range(1, n + 1):
            base = 2 + (item - 1) * _CRITERIA_PER_ITEM
            labels = []
            for j in range(4):
                col = base + j
                label = _parse_label(row[col], f"{where}, column {col + 1}", errors)
                if label is None:
                    continue
                if not 0 <= label < level:
                    errors.append(
                        f"{where}, column {col + 1}: label {label} out of range "
                        f"for granularity {level}"
                    )
                    continue
                labels.append(label)
            rel = _parse_float(
                row[base + 4], f"{where}, column {base + 5}", errors
            )
            if rel is not None and not 0.0 <= rel <= 1.0:
                errors.append(
                    f"{where}, column {base + 5}: relevance {rel} outside [0, 1]"
                )
                rel = None
            if len(labels) == 4 and rel is not None:
                assessments.append(
                    Assessment(
                        judge=idx,
                        item=item,
                        criteria_labels=tuple(labels),
                        relevance=rel,
                        scale_granularity=level,
                    )
                )
    if errors:
        raise ValidationError(errors)
    return ResponsesSheet(
        judge_count=len(rows),
        item_count=n,
        judge_names=tuple(names),
        assessments=tuple(assessments),
    )


def assemble_round(
    round_number: int,
    responses: str | bytes,
    dimensions: str | bytes | None = None,
    descriptions: str | bytes | None = None,
    epsilon: float = 0.75,
) -> RoundInput:
    """Build a validated RoundInput from the three sheets.

    Missing descriptions yield "Item r" placeholders; a missing dimensions
    sheet yields a single all-items dimension with uniform judge weights.
    All cross-sheet inconsistencies are reported together.
    """
    errors: list[str] = []
    sheet = None
    try:
        sheet = parse_responses(responses)
    except ValidationError as exc:
        errors.extend(exc.diagnostics)
    dims: list[Dimension] | None = None
    if dimensions is not None and sheet is not None:
        try:
            dims = parse_dimensions(dimensions, sheet.judge_count)
        except ValidationError as exc:
            errors.extend(exc.diagnostics)
    texts: list[str] | None = None
    if descriptions is not None:
        try:
            texts = parse_descriptions(descriptions)
        except ValidationError as exc:
            errors.extend(exc.diagnostics)
    if sheet is not None:
        n = sheet.item_count
        if texts is not None and len(texts) != n:
            errors.append(
                f"descriptions sheet lists {len(texts)} items but the responses "
                f"grid holds {n}"
            )
            texts = None
        if dims is not None and dims and dims[-1].end != n:
            errors.append(
                f"dimensions cover items 1..{dims[-1].end} but the responses "
                f"grid holds {n}"
            )
            dims = None
    if errors:
        raise ValidationError(errors)
    assert sheet is not None
    n = sheet.item_count
    if texts is None:
        texts = [f"Item {r}" for r in range(1, n + 1)]
    if dims is None:
        uniform = tuple(1.0 / sheet.judge_count for _ in range(sheet.judge_count))
        dims = [Dimension("D1", 1, n, uniform)]
    questionnaire = Questionnaire(
        items=tuple(Item(r, text) for r, text in enumerate(texts, start=1)),
        dimensions=tuple(dims),
        round_number=round_number,
    )
    return RoundInput(
        questionnaire=questionnaire,
        assessments=sheet.assessments,
        judge_count=sheet.judge_count,
        epsilon=epsilon,
        judge_names=sheet.judge_names,
    )


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def write_round(round_input: RoundInput) -> dict[str, str]:
    """Serialize a RoundInput back to the three sheets.

    Numbers are written at full precision so parse(write(x)) == x.
    """
    q = round_input.questionnaire
    desc_rows = [["Item", "Description"]]
    desc_rows += [[str(item.ordinal), item.description] for item in q.items]

    dim_rows = [
        ["Dimension", "Begin", "End", *round_input.judge_names]
    ]
    for dim in q.dimensions:
        dim_rows.append(
            [dim.name, str(dim.begin), str(dim.end)]
            + [repr(w) for w in dim.expert_weights]
        )

    levels = {
        a.judge: a.scale_granularity for a in round_input.assessments
    }
    grid = {
        (a.judge, a.item): a for a in round_input.assessments
    }
    header = ["Judge", "Level"]
    for r in range(1, q.item_count + 1):
        header += [f"C1_{r}", f"C2_{r}", f"C3_{r}", f"C4_{r}", f"R_{r}"]
    resp_rows = [header]
    for j in range(1, round_input.judge_count + 1):
        row = [round_input.judge_names[j - 1], str(levels[j])]
        for r in range(1, q.item_count + 1):
            a = grid[(j, r)]
            row += [str(lbl) for lbl in a.criteria_labels]
            row.append(repr(a.relevance))
        resp_rows.append(row)

    return {
        "descriptions": _csv_text(desc_rows),
        "dimensions": _csv_text(dim_rows),
        "responses": _csv_text(resp_rows),
    }
