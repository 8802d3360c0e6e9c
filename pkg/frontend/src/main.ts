/** Dashboard wiring: one table-centric screen with all moderator controls.
 *
 * State lives in the URL (shareable, reloadable); every control change
 * updates the URL and re-fetches the view from the service. No engine
 * math happens client-side.
 */

import { ApiError, Client } from "./api.js";
import { fmt, formatTuple } from "./format.js";
import {
  DEFAULT_STATE,
  decodeState,
  encodeState,
  FILTERS,
  resultsQuery,
  type ViewState,
} from "./state.js";
import {
  errorBanner,
  renderComparison,
  renderResultsTable,
} from "./table.js";
import type { ResultRow, ResultsView } from "./types.js";

const client = new Client("");
let state: ViewState = decodeState(location.search);
let previousRows: Map<number, ResultRow> | null = null;
let knownRounds: number[] = [];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function syncUrl(): void {
  const query = encodeState(state);
  history.replaceState(null, "", query ? `?${query}` : location.pathname);
}

function showError(error: unknown): void {
  const banner =
    error instanceof ApiError
      ? errorBanner(error.message, error.details)
      : errorBanner(String(error));
  el("messages").insertAdjacentHTML("beforeend", banner);
}

function renderControls(): void {
  (el<HTMLInputElement>("epsilon")).value = String(state.epsilon);
  el("epsilon-value").textContent = fmt(state.epsilon, 2);
  (el<HTMLInputElement>("trim")).value = String(state.trim);
  el("trim-value").textContent = `s${state.trim}`;
  (el<HTMLSelectElement>("filter")).value = state.filter;
  (el<HTMLInputElement>("search")).value = state.q;
  (el<HTMLSelectElement>("sort")).value = state.sort ?? "";
  const roundPicker = el<HTMLSelectElement>("round");
  roundPicker.innerHTML = knownRounds
    .map((n) => `<option value="${n}" ${n === state.round ? "selected" : ""}>round ${n}</option>`)
    .join("");
  const compareButton = el<HTMLButtonElement>("compare-toggle");
  compareButton.disabled = knownRounds.length < 2;
  compareButton.textContent = state.compare ? "back to table" : "compare rounds";
}

function summaryLine(view: ResultsView): string {
  const q = view.questionnaire;
  const qs = q.questionnaire_score;
  return (
    `QS ${formatTuple(qs.index, qs.alpha)} <strong>${q.questionnaire_score_label}</strong>` +
    ` · CC ${fmt(q.collective_clarity.beta)} · CW ${fmt(q.collective_writing.beta)}` +
    ` · CP ${fmt(q.collective_presence.beta)} · CAS ${fmt(q.collective_answering_scale.beta)}` +
    ` · avg relevance ${fmt(view.average_relevance)}`
  );
}

async function refresh(): Promise<void> {
  if (!state.session) return;
  syncUrl();
  renderControls();
  const target = el("content");
  try {
    if (state.compare) {
      const view = await client.compare(state.session, state.compare[0], state.compare[1]);
      target.innerHTML = renderComparison(view);
      el("summary").innerHTML = "";
      return;
    }
    const view = await client.results(state.session, state.round, resultsQuery(state));
    target.innerHTML = renderResultsTable(view, previousRows, state.sort !== null);
    el("summary").innerHTML = summaryLine(view);
    previousRows = new Map(view.rows.map((row) => [row.ordinal, row]));
  } catch (error) {
    if ((error as DOMException)?.name === "AbortError") return; // superseded
    showError(error); // keep the current table; never silently empty it
  }
}

async function uploadRound(): Promise<void> {
  const responses = el<HTMLInputElement>("file-responses").files?.[0];
  if (!responses) {
    showError(new Error("a responses CSV is required"));
    return;
  }
  const round = Number(el<HTMLInputElement>("upload-round").value) || knownRounds.length + 1;
  try {
    if (!state.session) {
      state.session = await client.createSession();
    }
    await client.uploadRound(
      state.session,
      round,
      {
        responses,
        dimensions: el<HTMLInputElement>("file-dimensions").files?.[0] ?? null,
        descriptions: el<HTMLInputElement>("file-descriptions").files?.[0] ?? null,
      },
      state.epsilon,
    );
    if (!knownRounds.includes(round)) knownRounds.push(round);
    knownRounds.sort((a, b) => a - b);
    state.round = round;
    previousRows = null;
    await refresh();
  } catch (error) {
    showError(error);
  }
}

function bind(): void {
  el<HTMLInputElement>("epsilon").addEventListener("input", (event) => {
    state.epsilon = Number((event.target as HTMLInputElement).value);
    el("epsilon-value").textContent = fmt(state.epsilon, 2);
  });
  el<HTMLInputElement>("epsilon").addEventListener("change", () => void refresh());
  el<HTMLInputElement>("trim").addEventListener("input", (event) => {
    state.trim = Number((event.target as HTMLInputElement).value);
    el("trim-value").textContent = `s${state.trim}`;
  });
  el<HTMLInputElement>("trim").addEventListener("change", () => void refresh());
  el<HTMLSelectElement>("filter").addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value;
    if ((FILTERS as readonly string[]).includes(value)) {
      state.filter = value as ViewState["filter"];
      void refresh();
    }
  });
  let searchTimer: ReturnType<typeof setTimeout> | undefined;
  el<HTMLInputElement>("search").addEventListener("input", (event) => {
    state.q = (event.target as HTMLInputElement).value;
    clearTimeout(searchTimer);
    searchTimer = setTimeout(() => void refresh(), 200);
  });
  el<HTMLSelectElement>("sort").addEventListener("change", (event) => {
    const value = (event.target as HTMLSelectElement).value;
    state.sort = value || null;
    void refresh();
  });
  el<HTMLSelectElement>("round").addEventListener("change", (event) => {
    state.round = Number((event.target as HTMLSelectElement).value);
    previousRows = null;
    void refresh();
  });
  el<HTMLButtonElement>("compare-toggle").addEventListener("click", () => {
    if (state.compare) {
      state.compare = null;
    } else if (knownRounds.length >= 2) {
      const last = knownRounds[knownRounds.length - 1]!;
      const prev = knownRounds[knownRounds.length - 2]!;
      state.compare = [prev, last];
    }
    void refresh();
  });
  el<HTMLButtonElement>("upload").addEventListener("click", () => void uploadRound());
  el("messages").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.dataset["dismiss"] !== undefined) target.closest(".banner")?.remove();
  });
  window.addEventListener("popstate", () => {
    state = decodeState(location.search);
    void refresh();
  });
}

async function start(): Promise<void> {
  bind();
  renderControls();
  if (state.session) {
    // Discover which rounds the session already holds (bounded probe).
    for (let n = 1; n <= 10; n += 1) {
      try {
        await client.results(state.session, n, "");
        knownRounds.push(n);
      } catch {
        break;
      }
    }
    if (knownRounds.length) {
      if (!knownRounds.includes(state.round)) state.round = knownRounds[0]!;
      await refresh();
    }
  }
  if (!knownRounds.length) {
    el("content").innerHTML =
      `<div class="empty">Upload a round's CSV sheets to begin · ` +
      `defaults: ε ${DEFAULT_STATE.epsilon}, trim s0</div>`;
  }
}

void start();
