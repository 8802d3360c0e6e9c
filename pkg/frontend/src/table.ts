/** Pure view builders: service JSON in, HTML strings out.
 *
 * Everything here is deterministic and DOM-free so the rendering rules
 * (column restriction, badges, banners, highlight-on-change, failing-first
 * arrangement) are unit-testable; main.ts only mounts the strings.
 */

import { fmt, formatTuple } from "./format.js";
import type { ComparisonView, ResultRow, ResultsView } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function badge(ok: boolean | undefined, kind: "cs" | "rs"): string {
  if (ok === undefined) return "";
  const text = kind === "cs" ? (ok ? "consensus" : "no consensus") : ok ? "reliable" : "unreliable";
  return `<span class="badge ${ok ? "ok" : "bad"}">${text}</span>`;
}

interface MetricColumn {
  key: keyof ResultRow;
  header: string;
  render: (row: ResultRow, changed: boolean) => string;
}

function numberCell(value: number | undefined, changed = false, decimals = 3): string {
  if (value === undefined) return "<td></td>";
  return `<td class="num${changed ? " changed" : ""}">${fmt(value, decimals)}</td>`;
}

const METRIC_COLUMNS: Record<string, MetricColumn[]> = {
  clarity: [{ key: "clarity_beta", header: "Clarity β", render: (r) => numberCell(r.clarity_beta) }],
  writing: [{ key: "writing_beta", header: "Writing β", render: (r) => numberCell(r.writing_beta) }],
  presence: [{ key: "presence_beta", header: "Presence β", render: (r) => numberCell(r.presence_beta) }],
  answering_scale: [
    { key: "answering_scale_beta", header: "Answ. scale β", render: (r) => numberCell(r.answering_scale_beta) },
  ],
  relevance: [{ key: "w_avg", header: "Relevance", render: (r) => numberCell(r.w_avg) }],
  consensus: [
    { key: "ci", header: "CI", render: (r) => numberCell(r.ci) },
    { key: "cs", header: "CS", render: (r) => `<td>${badge(r.cs, "cs")}</td>` },
    { key: "ri", header: "RI", render: (r, changed) => numberCell(r.ri, changed, 2) },
    {
      key: "rs",
      header: "RS",
      render: (r, changed) => `<td class="${changed ? "changed" : ""}">${badge(r.rs, "rs")}</td>`,
    },
  ],
};

METRIC_COLUMNS["all"] = [
  ...METRIC_COLUMNS["clarity"]!,
  ...METRIC_COLUMNS["writing"]!,
  ...METRIC_COLUMNS["presence"]!,
  ...METRIC_COLUMNS["answering_scale"]!,
  ...METRIC_COLUMNS["relevance"]!,
  ...METRIC_COLUMNS["consensus"]!,
];

/** Rows needing moderator attention float to the top unless the user asked
 * for an explicit sort; ties keep the service (item) order. */
export function arrangeRows(rows: ResultRow[], explicitSort: boolean): ResultRow[] {
  if (explicitSort) return rows;
  if (!rows.some((row) => row.cs !== undefined || row.rs !== undefined)) return rows;
  const failing = rows.filter((row) => row.cs === false || row.rs === false);
  const passing = rows.filter((row) => !(row.cs === false || row.rs === false));
  return [...failing, ...passing];
}

/** RI/RS cells whose value moved since the previous view get highlighted so
 * an epsilon what-if is visible at a glance. */
export function changedReliance(
  rows: ResultRow[],
  previous: Map<number, ResultRow> | null,
): Set<number> {
  const changed = new Set<number>();
  if (!previous) return changed;
  for (const row of rows) {
    const before = previous.get(row.ordinal);
    if (before && (before.ri !== row.ri || before.rs !== row.rs)) {
      changed.add(row.ordinal);
    }
  }
  return changed;
}

export function trimBanner(hiddenCount: number): string {
  if (hiddenCount <= 0) return "";
  const noun = hiddenCount === 1 ? "item" : "items";
  return `<div class="banner trim-banner">${hiddenCount} ${noun} trimmed</div>`;
}

export function consensusBanner(view: ResultsView): string {
  if (!view.all_consensual) return "";
  return `<div class="banner ok-banner">consensus reached at ε ${fmt(view.epsilon, 2)}</div>`;
}

export function errorBanner(message: string, details: string[] = []): string {
  const lines = details.map((d) => `<li>${escapeHtml(d)}</li>`).join("");
  return (
    `<div class="banner error-banner">` +
    `<button class="dismiss" data-dismiss>×</button>` +
    `${escapeHtml(message)}${lines ? `<ul>${lines}</ul>` : ""}</div>`
  );
}

export function renderResultsTable(
  view: ResultsView,
  previous: Map<number, ResultRow> | null = null,
  explicitSort = false,
): string {
  const columns = METRIC_COLUMNS[view.filter] ?? METRIC_COLUMNS["consensus"]!;
  const rows = arrangeRows(view.rows, explicitSort);
  const highlight = changedReliance(rows, previous);
  const head =
    "<tr><th>#</th><th>Item</th><th>Score</th>" +
    columns.map((c) => `<th>${c.header}</th>`).join("") +
    "</tr>";
  const body = rows
    .map((row) => {
      const changed = highlight.has(row.ordinal);
      const failing = row.cs === false || row.rs === false;
      const score = `${escapeHtml(row.is_label)} ${formatTuple(row.is_index, row.is_alpha)}`;
      return (
        `<tr class="${failing ? "failing" : ""}" data-ordinal="${row.ordinal}">` +
        `<td class="num">${row.ordinal}</td>` +
        `<td class="desc" title="${escapeHtml(row.dimension)}">${escapeHtml(row.description)}</td>` +
        `<td>${score}</td>` +
        columns.map((c) => c.render(row, changed)).join("") +
        "</tr>"
      );
    })
    .join("\n");
  const counter = `<div class="counter">${view.visible} of ${view.total} items shown</div>`;
  return (
    consensusBanner(view) +
    trimBanner(view.hidden_count) +
    counter +
    `<table class="results">${head}${body}</table>`
  );
}

function flip(a: boolean, b: boolean): string {
  if (a === b) return `<td class="neutral">${b ? "✓" : "✗"}</td>`;
  return `<td class="${b ? "flip-up" : "flip-down"}">${a ? "✓" : "✗"} → ${b ? "✓" : "✗"}</td>`;
}

function delta(value: number, decimals = 3): string {
  const cls = value > 0 ? "up" : value < 0 ? "down" : "neutral";
  const sign = value > 0 ? "+" : "";
  return `<td class="num ${cls}">${sign}${fmt(value, decimals)}</td>`;
}

export function renderComparison(view: ComparisonView): string {
  const head =
    `<tr><th>#</th><th>ΔIS β</th><th>ΔCI</th><th>ΔRI</th><th>CS</th><th>RS</th></tr>`;
  const body = view.items
    .map(
      (item) =>
        `<tr class="${item.cs_flipped || item.rs_flipped ? "flipped" : ""}">` +
        `<td class="num">${item.ordinal}</td>` +
        delta(item.delta_score_beta) +
        delta(item.delta_ci) +
        delta(item.delta_ri, 2) +
        flip(item.cs_a, item.cs_b) +
        flip(item.rs_a, item.rs_b) +
        "</tr>",
    )
    .join("\n");
  const q = view.questionnaire;
  const footer =
    `<tr class="footer"><td>Q</td>` +
    delta(q.delta_collective_clarity) +
    delta(q.delta_collective_writing) +
    delta(q.delta_collective_presence) +
    delta(q.delta_collective_answering_scale) +
    delta(q.delta_questionnaire_score) +
    "</tr>";
  const footerHead =
    `<tr class="footer-head"><th>Q</th><th>ΔCC</th><th>ΔCW</th><th>ΔCP</th><th>ΔCAS</th><th>ΔQS</th></tr>`;
  const failing = view.still_failing.length
    ? `<div class="banner trim-banner">still failing in round ${view.b_round}: ` +
      view.still_failing.join(", ") +
      "</div>"
    : `<div class="banner ok-banner">no items failing in round ${view.b_round}</div>`;
  const transition =
    `<div class="transition">questionnaire: ` +
    `<strong>${escapeHtml(view.a_label)}</strong> → <strong>${escapeHtml(view.b_label)}</strong></div>`;
  return (
    `<h2>Round ${view.a_round} → round ${view.b_round}</h2>` +
    transition +
    failing +
    `<table class="results compare">${head}${body}${footerHead}${footer}</table>`
  );
}
