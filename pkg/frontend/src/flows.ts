import { ApiError } from "./api.js";

/** Record-header inputs shared by every creation dialog. */
export interface ExperimentHeader {
  title: string;
  responsible: string;
  operator: string;
  coordinator?: string;
  manager?: string;
}

/**
 * Map schema-form values (keyed by property IRI) plus the record header
 * onto the experiment-creation body.  Purely mechanical: the category
 * class IRI loses its namespace token, references pass through.
 */
export function experimentBodyFromSubmission(
  values: Record<string, string>,
  header: ExperimentHeader,
): {
  title: string;
  facility: string;
  irradiationCategory: string;
  technicalRequirements: string;
  admin: { responsible: string; operator: string; coordinator: string; manager: string };
} {
  const category = values["iedm:hasIrradiationCategory"] ?? "";
  return {
    title: header.title,
    facility: values["iedm:performedAt"] || "iedm:CERN_IRRAD",
    irradiationCategory: category.includes(":") ? category.split(":", 2)[1]! : category,
    technicalRequirements: values["iedm:hasTechnicalRequirements"] ?? "",
    admin: {
      responsible: header.responsible,
      operator: header.operator,
      coordinator: header.coordinator ?? "",
      manager: header.manager ?? "",
    },
  };
}

/**
 * A stale-version edit must surface as a reload prompt, never a silent
 * overwrite; returns the prompt text for version conflicts, null otherwise.
 */
export function conflictPrompt(error: unknown): string | null {
  if (error instanceof ApiError && error.status === 409) {
    return (
      "Someone else updated this record. Reload it to see the latest " +
      "version, then apply your change again."
    );
  }
  return null;
}
