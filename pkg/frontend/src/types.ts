/** Wire types mirrored from the service's JSON documents. */

export interface QuantityJson {
  value: number;
  kind: string;
  unit: string;
  relativeError: number | null;
}

export interface Sample {
  id: string;
  name: string;
  categoryNote: string;
  requestedFluence: QuantityJson;
  occupancy: number[];
  /** Preformatted "R / C / I" string; displayed verbatim, never recomputed. */
  occupancyDisplay?: string;
  lastUpdate: string;
  lastUpdatedBy: string;
  experimentId: string;
  visible: boolean;
  version: number;
}

export interface SamplePage {
  items: Sample[];
  total: number;
  page: number;
  pageSize: number;
}

export interface AdminJson {
  responsible: string;
  operator: string;
  coordinator: string;
  manager: string;
}

export interface IrradiationJson {
  rid: string;
  dutId: string;
  radiationField: string;
  start: string;
  end: string | null;
  cumulated: QuantityJson | null;
}

export interface Experiment {
  id: string;
  title: string;
  facility: string;
  irradiationCategory: string;
  technicalRequirements: string;
  admin: AdminJson;
  dutIrradiations: IrradiationJson[];
  visible: boolean;
  version: number;
}

export type Widget =
  | "text"
  | "number-with-unit"
  | "datetime"
  | "select"
  | "reference"
  | "subform";

export interface FieldSpec {
  propertyIri: string;
  label: string;
  widget: Widget;
  minCount: number;
  maxCount: number | null;
  options: string[];
  targetClass: string | null;
}

export interface FormSchema {
  classIri: string;
  fields: FieldSpec[];
}

export interface ViolationRecord {
  subject: string;
  rule: string;
  property: string | null;
  expected: string;
  found: string;
  message: string;
}

export interface ValidationReport {
  violations: ViolationRecord[];
  warnings: ViolationRecord[];
  checkedSubjects: number;
  importIssues?: string[];
}
