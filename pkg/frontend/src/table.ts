import { escapeHtml, formatDate, formatFluence } from "./format.js";
import type { Sample } from "./types.js";

/** Column headers in the classic data-manager order. */
export const COLUMNS = [
  "",
  "Last update",
  "ID",
  "Name",
  "Category",
  "Requested fluence",
  "Radiation / Nu. Coll. / Nu. Int. Length Occupancy (%)",
  "Last updated by",
  "Actions",
] as const;

/**
 * The displayable cells of one row, between the checkbox and the actions.
 * The occupancy string is taken verbatim from the service.
 */
export function rowCells(sample: Sample): string[] {
  return [
    formatDate(sample.lastUpdate),
    sample.id,
    sample.name,
    sample.categoryNote,
    formatFluence(sample.requestedFluence.value),
    sample.occupancyDisplay ?? "",
    sample.lastUpdatedBy,
  ];
}

function renderRow(sample: Sample): string {
  const cells = rowCells(sample)
    .map((cell) => `<td>${escapeHtml(cell)}</td>`)
    .join("");
  const actions = (["view", "refresh", "map"] as const)
    .map(
      (action) =>
        `<button type="button" data-action="${action}" data-id="${escapeHtml(sample.id)}">` +
        `${action[0]!.toUpperCase()}${action.slice(1)}</button>`,
    )
    .join(" ");
  return (
    `<tr data-row="${escapeHtml(sample.id)}" data-version="${sample.version}">` +
    `<td><input type="checkbox" data-select="${escapeHtml(sample.id)}"></td>` +
    cells +
    `<td class="actions">${actions}</td></tr>`
  );
}

export function renderEmptyState(): string {
  return (
    '<div class="empty-state"><p>No samples yet.</p>' +
    '<button type="button" data-action="new-sample">New Sample</button></div>'
  );
}

export function renderTable(samples: Sample[]): string {
  if (samples.length === 0) return renderEmptyState();
  const head = COLUMNS.map((column) => `<th>${escapeHtml(column)}</th>`).join("");
  const body = samples.map(renderRow).join("");
  return `<table class="samples"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderVisibilityBanner(title: string, visible: boolean): string {
  const state = visible
    ? "now visible to other users"
    : "hidden from other users";
  return (
    `<div class="banner" data-visible="${visible}">` +
    `Your experiment <strong>${escapeHtml(title)}</strong> is ${state}. ` +
    `<button type="button" data-action="toggle-visibility">` +
    (visible ? "Hide" : "Make visible") +
    "</button></div>"
  );
}

export function renderErrorBanner(message: string): string {
  return (
    `<div class="banner error">${escapeHtml(message)} ` +
    '<button type="button" data-action="retry">Retry</button></div>'
  );
}
