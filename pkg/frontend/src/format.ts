/** Display-only formatting; all domain values arrive computed by the service. */

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** ISO UTC instant -> day/month/year table display. */
export function formatDate(iso: string): string {
  const match = /^(\d{4})-(\d{2})-(\d{2})T/.exec(iso);
  if (!match) return iso;
  return `${match[3]}/${match[2]}/${match[1]}`;
}

/** Compact scientific notation: 3e17, 1.5e16. */
export function formatFluence(value: number): string {
  const [mantissa, exponent] = value.toExponential().split("e") as [string, string];
  const trimmed = mantissa.includes(".")
    ? mantissa.replace(/0+$/, "").replace(/\.$/, "")
    : mantissa;
  return `${trimmed}e${exponent.replace("+", "")}`;
}

/** "iedm:PassiveStandardIrradiation" -> "Passive Standard Irradiation". */
export function localName(iri: string): string {
  const local = iri.includes(":") ? iri.split(":", 2)[1]! : iri;
  return local
    .replace(/_/g, " ")
    .replace(/([a-z0-9])([A-Z])/g, "$1 $2")
    .replace(/^./, (c) => c.toUpperCase());
}

/** datetime-local control value -> ISO UTC instant for the service. */
export function toUtcInstant(localValue: string): string {
  if (!localValue) return localValue;
  return localValue.length === 16 ? `${localValue}:00Z` : `${localValue}Z`;
}
