/** ViewState <-> URL.  The URL carries the complete view state, mapping
 * one-to-one onto the service's results query grammar, so any view is
 * shareable and reloadable. */

export const FILTERS = [
  "all",
  "clarity",
  "writing",
  "presence",
  "answering_scale",
  "relevance",
  "consensus",
] as const;

export type Filter = (typeof FILTERS)[number];

export interface ViewState {
  session: string | null;
  round: number;
  epsilon: number; // in [0, 1]
  trim: number; // reporting-scale label index 0..6
  filter: Filter;
  q: string;
  sort: string | null; // "key:asc|desc", null = failing-first default
  compare: [number, number] | null;
}

export const DEFAULT_STATE: ViewState = {
  session: null,
  round: 1,
  epsilon: 0.75,
  trim: 0,
  filter: "all",
  q: "",
  sort: null,
  compare: null,
};

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), hi);
}

/** Serialize the state into a query string; defaults are omitted so the
 * bare URL means the default view. */
export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.session) params.set("session", state.session);
  if (state.round !== DEFAULT_STATE.round) params.set("round", String(state.round));
  if (state.epsilon !== DEFAULT_STATE.epsilon) params.set("epsilon", String(state.epsilon));
  if (state.trim !== DEFAULT_STATE.trim) params.set("trim", `s${state.trim}`);
  if (state.filter !== DEFAULT_STATE.filter) params.set("filter", state.filter);
  if (state.q) params.set("q", state.q);
  if (state.sort) params.set("sort", state.sort);
  if (state.compare) params.set("compare", `${state.compare[0]},${state.compare[1]}`);
  return params.toString();
}

export function decodeState(query: string): ViewState {
  const params = new URLSearchParams(query);
  const state: ViewState = { ...DEFAULT_STATE };
  state.session = params.get("session");
  const round = Number(params.get("round"));
  if (Number.isInteger(round) && round >= 1) state.round = round;
  const epsilon = Number(params.get("epsilon"));
  if (params.has("epsilon") && Number.isFinite(epsilon)) {
    state.epsilon = clamp(epsilon, 0, 1);
  }
  const trim = /^s([0-6])$/.exec(params.get("trim") ?? "");
  if (trim) state.trim = Number(trim[1]);
  const filter = params.get("filter");
  if (filter && (FILTERS as readonly string[]).includes(filter)) {
    state.filter = filter as Filter;
  }
  state.q = params.get("q") ?? "";
  const sort = params.get("sort");
  if (sort && /^[a-z_]+:(asc|desc)$/.test(sort)) state.sort = sort;
  const compare = /^(\d+),(\d+)$/.exec(params.get("compare") ?? "");
  if (compare) state.compare = [Number(compare[1]), Number(compare[2])];
  return state;
}

/** Query parameters for GET .../results — the service-side view options. */
export function resultsQuery(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.epsilon !== DEFAULT_STATE.epsilon) params.set("epsilon", String(state.epsilon));
  if (state.trim > 0) params.set("trim", `s${state.trim}`);
  if (state.filter !== "all") params.set("filter", state.filter);
  if (state.q) params.set("q", state.q);
  if (state.sort) params.set("sort", state.sort);
  return params.toString();
}
