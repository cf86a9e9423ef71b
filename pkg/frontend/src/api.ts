import type {
  Experiment,
  FormSchema,
  IrradiationJson,
  Sample,
  SamplePage,
  ValidationReport,
  ViolationRecord,
} from "./types.js";

/** Error carrying the service's status code and JSON payload. */
export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: { error?: string; message?: string; violations?: ViolationRecord[] },
  ) {
    super(payload.message ?? payload.error ?? `request failed (${status})`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin typed client over the service endpoints.  The fetch function is
 * injectable so tests can run against a live service or a stub.
 */
export class ApiClient {
  constructor(
    private base: string,
    public user: string,
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = {
      method,
      headers: { "X-User": this.user },
    };
    if (body !== undefined) {
      init.headers = { ...init.headers, "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(response.status, payload);
    }
    return payload as T;
  }

  listSamples(query = "", page = 1, pageSize = 50): Promise<SamplePage> {
    const params = new URLSearchParams({
      query,
      page: String(page),
      pageSize: String(pageSize),
    });
    return this.request("GET", `/samples?${params}`);
  }

  createSample(body: {
    name: string;
    categoryNote?: string;
    requestedFluence: number;
    experimentId: string;
    occupancy?: number[];
  }): Promise<Sample> {
    return this.request("POST", "/samples", body);
  }

  patchSample(
    id: string,
    body: { version: number } & Partial<{
      name: string;
      categoryNote: string;
      requestedFluence: number;
      occupancy: number[];
    }>,
  ): Promise<Sample> {
    return this.request("PATCH", `/samples/${id}`, body);
  }

  listExperiments(): Promise<{ items: Experiment[] }> {
    return this.request("GET", "/experiments");
  }

  getExperiment(id: string): Promise<Experiment> {
    return this.request("GET", `/experiments/${id}`);
  }

  createExperiment(body: {
    title: string;
    facility: string;
    irradiationCategory: string;
    technicalRequirements?: string;
    admin: { responsible: string; operator: string; coordinator?: string; manager?: string };
  }): Promise<Experiment> {
    return this.request("POST", "/experiments", body);
  }

  setVisibility(id: string, visible: boolean): Promise<Experiment> {
    return this.request("PATCH", `/experiments/${id}/visibility`, { visible });
  }

  registerIrradiation(
    expId: string,
    body: { dutId: string; fieldId: string; start: string; particles?: string[] },
  ): Promise<IrradiationJson> {
    return this.request("POST", `/experiments/${expId}/irradiations`, body);
  }

  completeIrradiation(
    expId: string,
    rid: string,
    body: { end: string; cumulated?: { value: number; kind?: string; relativeError?: number } },
  ): Promise<IrradiationJson> {
    return this.request("POST", `/experiments/${expId}/irradiations/${rid}/complete`, body);
  }

  async exportTurtle(expId: string): Promise<{ text: string; warnings: string[] }> {
    const response = await this.fetchFn(`${this.base}/experiments/${expId}/export.ttl`, {
      headers: { "X-User": this.user },
    });
    const text = await response.text();
    if (!response.ok) throw new ApiError(response.status, { message: text });
    const warnings = JSON.parse(response.headers.get("X-Warnings") ?? "[]") as string[];
    return { text, warnings };
  }

  async validateTurtle(text: string, draft = false): Promise<ValidationReport> {
    const response = await this.fetchFn(`${this.base}/validate?draft=${draft}`, {
      method: "POST",
      headers: { "Content-Type": "text/turtle" },
      body: text,
    });
    const payload = await response.json();
    if (!response.ok) throw new ApiError(response.status, payload);
    return payload as ValidationReport;
  }

  formSchema(classIri: string): Promise<FormSchema> {
    return this.request("GET", `/formschema/${classIri}`);
  }

  sampleAction(id: string, action: "refresh" | "map"): Promise<{ status: string }> {
    return action === "refresh"
      ? this.request("POST", `/samples/${id}/refresh`)
      : this.request("GET", `/samples/${id}/map`);
  }
}
