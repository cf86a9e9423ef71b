import { ApiClient, ApiError } from "./api.js";
import { conflictPrompt, experimentBodyFromSubmission } from "./flows.js";
import { clientTypeCheck, renderForm } from "./forms.js";
import {
  renderErrorBanner,
  renderTable,
  renderVisibilityBanner,
} from "./table.js";
import { toUtcInstant } from "./format.js";
import type { Experiment, FormSchema, ViolationRecord } from "./types.js";

/** Browser bootstrap; all state is re-fetched from the service after writes. */

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(
  params.get("api") ?? "http://127.0.0.1:8000",
  params.get("user") ?? "anonymous@example.org",
);

interface UiState {
  query: string;
  error: string | null;
  experiment: Experiment | null;
  schema: FormSchema | null;
  schemaViolations: ViolationRecord[];
  dialog: "none" | "new-sample" | "new-experiment";
  conflict: string | null;
}

const state: UiState = {
  query: "",
  error: null,
  experiment: null,
  schema: null,
  schemaViolations: [],
  dialog: "none",
  conflict: null,
};

const root = document.getElementById("app")!;

async function refresh(): Promise<void> {
  try {
    const page = await api.listSamples(state.query);
    const experiments = await api.listExperiments();
    state.experiment = experiments.items[0] ?? null;
    state.error = null;
    render(page.items.length, renderTable(page.items));
  } catch (error) {
    state.error = error instanceof Error ? error.message : String(error);
    render(0, "");
  }
}

function render(count: number, tableHtml: string): void {
  const banner = state.error
    ? renderErrorBanner(state.error)
    : state.experiment
      ? renderVisibilityBanner(state.experiment.title, state.experiment.visible)
      : "";
  const conflict = state.conflict
    ? `<div class="banner conflict">${state.conflict} <button data-action="reload">Reload</button></div>`
    : "";
  const dialog = renderDialog();
  root.innerHTML = `
    <header>
      <h1>Irradiation Data Manager</h1>
      <form data-role="search">
        <input type="search" name="query" placeholder="Search samples" value="${state.query}">
        <button type="submit">Search</button>
        <button type="button" data-action="new-sample">New Sample</button>
        <button type="button" data-action="new-experiment">New Experiment</button>
      </form>
    </header>
    ${banner}
    ${conflict}
    <main>${tableHtml}</main>
    <footer>${count} sample(s)</footer>
    ${dialog}`;
}

function renderDialog(): string {
  if (state.dialog === "new-experiment" && state.schema) {
    return `
      <dialog open>
        <h2>New experiment</h2>
        <div class="header-fields">
          <label>Title <input data-header="title"></label>
          <label>Responsible <input data-header="responsible"></label>
          <label>Operator <input data-header="operator"></label>
        </div>
        ${renderForm(state.schema, state.schemaViolations)}
        <button type="button" data-action="close-dialog">Cancel</button>
      </dialog>`;
  }
  if (state.dialog === "new-sample") {
    return `
      <dialog open>
        <h2>New sample</h2>
        <form data-role="new-sample">
          <label>Name <input name="name" required></label>
          <label>Category note <input name="categoryNote"></label>
          <label>Requested fluence (1/cm2) <input name="requestedFluence" type="number" step="any" required></label>
          <label>Experiment <input name="experimentId" value="${state.experiment?.id ?? ""}" required></label>
          <button type="submit">Create</button>
          <button type="button" data-action="close-dialog">Cancel</button>
        </form>
      </dialog>`;
  }
  return "";
}

function collectSchemaValues(form: HTMLFormElement): Record<string, string> {
  const values: Record<string, string> = {};
  form.querySelectorAll<HTMLElement>("[data-prop]").forEach((element) => {
    const prop = element.dataset.prop!;
    const control = element as HTMLInputElement | HTMLSelectElement | HTMLTextAreaElement;
    if (typeof control.value === "string" && control.value !== "") {
      values[prop] =
        control instanceof HTMLInputElement && control.type === "datetime-local"
          ? toUtcInstant(control.value)
          : control.value;
    }
  });
  return values;
}

async function submitExperiment(form: HTMLFormElement): Promise<void> {
  if (!state.schema) return;
  const values = collectSchemaValues(form);
  const problems = clientTypeCheck(state.schema, values);
  if (problems.length > 0) {
    state.schemaViolations = problems.map((message) => ({
      subject: "",
      rule: "TypeMismatch",
      property: null,
      expected: "",
      found: "",
      message,
    }));
    await refresh();
    return;
  }
  const dialog = form.closest("dialog")!;
  const header = {
    title: (dialog.querySelector('[data-header="title"]') as HTMLInputElement).value,
    responsible: (dialog.querySelector('[data-header="responsible"]') as HTMLInputElement)
      .value,
    operator: (dialog.querySelector('[data-header="operator"]') as HTMLInputElement).value,
  };
  try {
    await api.createExperiment(experimentBodyFromSubmission(values, header));
    state.dialog = "none";
    state.schemaViolations = [];
  } catch (error) {
    if (error instanceof ApiError && error.payload.violations) {
      state.schemaViolations = error.payload.violations;
    } else {
      state.error = error instanceof Error ? error.message : String(error);
    }
  }
  await refresh();
}

async function submitSample(form: HTMLFormElement): Promise<void> {
  const data = new FormData(form);
  try {
    await api.createSample({
      name: String(data.get("name") ?? ""),
      categoryNote: String(data.get("categoryNote") ?? ""),
      requestedFluence: Number(data.get("requestedFluence") ?? 0),
      experimentId: String(data.get("experimentId") ?? ""),
    });
    state.dialog = "none";
  } catch (error) {
    state.error = error instanceof Error ? error.message : String(error);
  }
  await refresh();
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target) return;
  const action = target.dataset.action!;
  void (async () => {
    switch (action) {
      case "retry":
      case "reload":
        state.conflict = null;
        await refresh();
        break;
      case "new-sample":
        state.dialog = "new-sample";
        await refresh();
        break;
      case "new-experiment":
        state.dialog = "new-experiment";
        state.schema = await api.formSchema("iedm:IrradiationExperiment");
        state.schemaViolations = [];
        await refresh();
        break;
      case "close-dialog":
        state.dialog = "none";
        await refresh();
        break;
      case "toggle-visibility":
        if (state.experiment) {
          await api.setVisibility(state.experiment.id, !state.experiment.visible);
          // reflect server state, not the optimistic value
          state.experiment = await api.getExperiment(state.experiment.id);
          await refresh();
        }
        break;
      case "refresh":
      case "map":
        await api.sampleAction(target.dataset.id!, action);
        break;
      case "view": {
        const row = target.closest("tr")!;
        const name = window.prompt("New name for " + target.dataset.id);
        if (name) {
          try {
            await api.patchSample(target.dataset.id!, {
              version: Number(row.dataset.version),
              name,
            });
          } catch (error) {
            state.conflict = conflictPrompt(error);
            if (!state.conflict) throw error;
          }
          await refresh();
        }
        break;
      }
    }
  })();
});

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  event.preventDefault();
  if (form.dataset.role === "search") {
    state.query = (form.elements.namedItem("query") as HTMLInputElement).value;
    void refresh();
  } else if (form.dataset.role === "new-sample") {
    void submitSample(form);
  } else if (form.classList.contains("schema-form")) {
    void submitExperiment(form);
  }
});

void refresh();
