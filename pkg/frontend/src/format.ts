/** Display formatting. The dashboard never recomputes engine math: every
 * number shown is a service value rounded for display. */

/** Round half away from zero to `decimals` places (display contract). */
export function roundHalfAway(value: number, decimals = 3): number {
  const factor = 10 ** decimals;
  const scaled = value * factor;
  const rounded = Math.sign(scaled) * Math.round(Math.abs(scaled));
  return rounded / factor;
}

export function fmt(value: number, decimals = 3): string {
  const rounded = roundHalfAway(value, decimals);
  // Avoid "-0.000".
  const safe = Object.is(rounded, -0) ? 0 : rounded;
  return safe.toFixed(decimals);
}

/** "(s5, -0.369)" — the 2-tuple display used across the tables. */
export function formatTuple(index: number, alpha: number, decimals = 3): string {
  return `(s${index}, ${fmt(alpha, decimals)})`;
}

/** Default 7-name table for the reporting scale; the service can override
 * it via /api/labels, and a custom JSON file can override both. */
export const DEFAULT_LABELS: readonly string[] = [
  "Dreadful",
  "Incorrect",
  "Moderate",
  "Correct enough",
  "Correct",
  "Very correct",
  "Excellent",
];

export function labelName(index: number, labels: readonly string[] = DEFAULT_LABELS): string {
  const name = labels[index];
  if (name === undefined) {
    throw new Error(`no label name for index ${index} (table has ${labels.length})`);
  }
  return name;
}
