import { escapeHtml, localName } from "./format.js";
import type { FieldSpec, FormSchema, ViolationRecord } from "./types.js";

/**
 * Schema-driven form rendering: every control is derived from a FieldSpec,
 * so no class gets a hand-written form.  Subform and number-with-unit
 * fields whose data is owned by the exposure lifecycle render as notes.
 */

export function violationsByProperty(
  violations: ViolationRecord[],
): Map<string, ViolationRecord[]> {
  const map = new Map<string, ViolationRecord[]>();
  for (const violation of violations) {
    const key = violation.property ?? "";
    map.set(key, [...(map.get(key) ?? []), violation]);
  }
  return map;
}

function requiredMark(field: FieldSpec): string {
  return field.minCount >= 1 ? ' <span class="required">*</span>' : "";
}

function controlFor(field: FieldSpec): string {
  const prop = escapeHtml(field.propertyIri);
  switch (field.widget) {
    case "select": {
      const options = field.options
        .map(
          (option) =>
            `<option value="${escapeHtml(option)}">${escapeHtml(localName(option))}</option>`,
        )
        .join("");
      return `<select data-prop="${prop}"><option value=""></option>${options}</select>`;
    }
    case "datetime":
      return `<input type="datetime-local" data-prop="${prop}">`;
    case "number-with-unit":
      return (
        `<span class="with-unit"><input type="number" step="any" data-prop="${prop}">` +
        `<input type="text" data-unit-for="${prop}" placeholder="unit"></span>`
      );
    case "reference":
      return (
        `<input type="text" data-prop="${prop}" ` +
        `placeholder="${escapeHtml(field.targetClass ?? "")}" list="known-${prop}">`
      );
    case "text":
      return `<textarea data-prop="${prop}"></textarea>`;
    case "subform":
      return (
        `<p class="lifecycle-note" data-prop="${prop}">` +
        `${escapeHtml(localName(field.targetClass ?? ""))} entries are recorded ` +
        "through the exposure lifecycle after creation.</p>"
      );
  }
}

function renderField(field: FieldSpec, violations: ViolationRecord[]): string {
  const errors = violations
    .map((violation) => `<p class="field-error">${escapeHtml(violation.message)}</p>`)
    .join("");
  return (
    `<div class="field" data-field="${escapeHtml(field.propertyIri)}">` +
    `<label>${escapeHtml(field.label)}${requiredMark(field)}</label>` +
    controlFor(field) +
    errors +
    "</div>"
  );
}

export function renderForm(
  schema: FormSchema,
  violations: ViolationRecord[] = [],
): string {
  const byProperty = violationsByProperty(violations);
  const fields = schema.fields
    .map((field) => renderField(field, byProperty.get(field.propertyIri) ?? []))
    .join("");
  return (
    `<form class="schema-form" data-class="${escapeHtml(schema.classIri)}">` +
    fields +
    '<button type="submit">Create</button></form>'
  );
}

/**
 * Client-side shape checks; returns one message per field whose value
 * contradicts its widget.  Empty values are left to the service's
 * cardinality checks.
 */
export function clientTypeCheck(
  schema: FormSchema,
  values: Record<string, string>,
): string[] {
  const problems: string[] = [];
  for (const field of schema.fields) {
    const raw = values[field.propertyIri];
    if (raw === undefined || raw === "") continue;
    if (field.widget === "select" && !field.options.includes(raw)) {
      problems.push(`${field.label}: ${raw} is not one of the offered options`);
    }
    if (field.widget === "number-with-unit" && Number.isNaN(Number(raw))) {
      problems.push(`${field.label}: expected a number`);
    }
    if (field.widget === "datetime" && Number.isNaN(Date.parse(raw))) {
      problems.push(`${field.label}: expected a date and time`);
    }
  }
  return problems;
}
