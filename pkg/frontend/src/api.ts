/** Typed client for the round-evaluation service.  View fetches are
 * cancel-superseded: a new request for the same slot aborts the previous
 * one, so the latest user action always wins. */

import type { ComparisonView, ResultsView, RoundReport } from "./types.js";

export class ApiError extends Error {
  status: number;
  details: string[];

  constructor(status: number, message: string, details: string[] = []) {
    super(message);
    this.status = status;
    this.details = details;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let message = `${response.status} ${response.statusText}`;
  let details: string[] = [];
  try {
    const body = await response.json();
    const detail = body?.detail;
    if (typeof detail === "string") message = detail;
    else if (Array.isArray(detail?.errors)) {
      message = `${detail.errors.length} input problem(s)`;
      details = detail.errors.map(String);
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(response.status, message, details);
}

export class Client {
  base: string;
  private controllers = new Map<string, AbortController>();

  constructor(base = "") {
    this.base = base;
  }

  /** Abort any in-flight request in the same slot, then fetch. */
  private async get<T>(slot: string, path: string): Promise<T> {
    this.controllers.get(slot)?.abort();
    const controller = new AbortController();
    this.controllers.set(slot, controller);
    const response = await fetch(this.base + path, { signal: controller.signal });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  async createSession(): Promise<string> {
    const response = await fetch(`${this.base}/api/sessions`, { method: "POST" });
    if (!response.ok) throw await parseError(response);
    return (await response.json()).session_id as string;
  }

  async uploadRound(
    session: string,
    round: number,
    files: { responses: File; dimensions?: File | null; descriptions?: File | null },
    epsilon: number,
  ): Promise<RoundReport> {
    const form = new FormData();
    form.append("responses", files.responses);
    if (files.dimensions) form.append("dimensions", files.dimensions);
    if (files.descriptions) form.append("descriptions", files.descriptions);
    const response = await fetch(
      `${this.base}/api/sessions/${session}/rounds/${round}?epsilon=${epsilon}`,
      { method: "POST", body: form },
    );
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as RoundReport;
  }

  async results(session: string, round: number, query: string): Promise<ResultsView> {
    const suffix = query ? `?${query}` : "";
    return this.get<ResultsView>(
      "results",
      `/api/sessions/${session}/rounds/${round}/results${suffix}`,
    );
  }

  async compare(session: string, a: number, b: number): Promise<ComparisonView> {
    return this.get<ComparisonView>(
      "compare",
      `/api/sessions/${session}/compare?a=${a}&b=${b}`,
    );
  }

  async labels(): Promise<string[]> {
    const response = await fetch(`${this.base}/api/labels`);
    if (!response.ok) throw await parseError(response);
    return (await response.json()).labels as string[];
  }
}
