import type { AssessResponse } from "./api";
import { FIELDS, type EvidenceFormState, type FieldSpec } from "./form";

// DOM for the evidence form and the assessment read-out. Rendering is a
// pure function of the data it is given: submitting identical evidence
// twice produces byte-identical markup.

const POSTERIOR_ORDER = ["none", "mild", "severe"] as const;

export type FieldChange = (fieldId: string, value: string) => void;

function categoricalRow(field: FieldSpec, onChange: FieldChange): HTMLElement {
  const row = document.createElement("div");
  row.className = "field";
  row.dataset.field = field.id;
  const label = document.createElement("label");
  label.htmlFor = `field-${field.id}`;
  label.textContent = field.label;
  const select = document.createElement("select");
  select.id = `field-${field.id}`;
  const unset = document.createElement("option");
  unset.value = "";
  unset.textContent = "unset";
  select.appendChild(unset);
  for (const state of field.options ?? []) {
    const opt = document.createElement("option");
    opt.value = state;
    opt.textContent = state;
    select.appendChild(opt);
  }
  select.addEventListener("change", () => onChange(field.id, select.value));
  const error = document.createElement("div");
  error.className = "field-error";
  row.append(label, select, error);
  return row;
}

function numericRow(field: FieldSpec, onChange: FieldChange): HTMLElement {
  const row = document.createElement("div");
  row.className = "field";
  row.dataset.field = field.id;
  const label = document.createElement("label");
  label.htmlFor = `field-${field.id}`;
  label.textContent = field.label;
  const input = document.createElement("input");
  input.id = `field-${field.id}`;
  input.type = "number";
  input.step = "0.1";
  input.addEventListener("input", () => onChange(field.id, input.value));
  const error = document.createElement("div");
  error.className = "field-error";
  row.append(label, input, error);
  return row;
}

function extraRow(
  id: string,
  labelText: string,
  control: HTMLElement,
): HTMLElement {
  const row = document.createElement("div");
  row.className = "field";
  row.dataset.field = id;
  const label = document.createElement("label");
  label.htmlFor = `field-${id}`;
  label.textContent = labelText;
  const error = document.createElement("div");
  error.className = "field-error";
  row.append(label, control, error);
  return row;
}

export function buildFormDom(root: HTMLElement, onChange: FieldChange): void {
  root.textContent = "";
  for (const field of FIELDS) {
    root.appendChild(
      field.kind === "categorical"
        ? categoricalRow(field, onChange)
        : numericRow(field, onChange),
    );
  }

  const duration = document.createElement("input");
  duration.id = "field-symptom_duration_days";
  duration.type = "number";
  duration.min = "0";
  duration.step = "0.5";
  duration.addEventListener("input", () =>
    onChange("symptom_duration_days", duration.value),
  );
  root.appendChild(
    extraRow("symptom_duration_days", "days since symptom onset", duration),
  );

  const improving = document.createElement("select");
  improving.id = "field-improving";
  for (const state of ["unknown", "yes", "no"]) {
    const opt = document.createElement("option");
    opt.value = state;
    opt.textContent = state;
    improving.appendChild(opt);
  }
  improving.addEventListener("change", () =>
    onChange("improving", improving.value),
  );
  root.appendChild(extraRow("improving", "symptoms improving", improving));
}

export function syncFormControls(root: HTMLElement, form: EvidenceFormState): void {
  for (const field of FIELDS) {
    const control = root.querySelector<HTMLInputElement | HTMLSelectElement>(
      `#field-${field.id}`,
    );
    if (!control) continue;
    if (field.kind === "categorical") control.value = form.answers[field.id] ?? "";
    else if (field.kind === "temperature") control.value = form.temperatureText;
    else control.value = form.saturationText;
  }
  const duration = root.querySelector<HTMLInputElement>("#field-symptom_duration_days");
  if (duration) duration.value = form.durationText;
  const improving = root.querySelector<HTMLSelectElement>("#field-improving");
  if (improving) improving.value = form.improving;
}

export function showFieldErrors(
  root: HTMLElement,
  errors: Record<string, string>,
): void {
  for (const row of root.querySelectorAll<HTMLElement>(".field")) {
    const slot = row.querySelector<HTMLElement>(".field-error");
    if (slot) slot.textContent = errors[row.dataset.field ?? ""] ?? "";
  }
}

export function highlightField(root: HTMLElement, fieldId: string | null): void {
  for (const row of root.querySelectorAll<HTMLElement>(".field")) {
    row.classList.toggle("highlight", row.dataset.field === fieldId);
  }
}

export function renderAssessment(
  container: HTMLElement,
  report: AssessResponse,
): void {
  container.textContent = "";

  if (report.contradiction) {
    const block = document.createElement("div");
    block.className = "contradiction";
    block.textContent = `The reported evidence is inconsistent: ${report.contradiction}. No posterior can be computed; please review the answers.`;
    container.appendChild(block);
    return;
  }

  const bars = document.createElement("div");
  bars.id = "bars";
  for (const state of POSTERIOR_ORDER) {
    const p = report.posterior[state] ?? 0;
    const bar = document.createElement("div");
    bar.className = "bar";
    bar.dataset.state = state;
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = state;
    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = "bar-fill";
    fill.style.width = `${(p * 100).toFixed(1)}%`;
    track.appendChild(fill);
    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = p.toFixed(2);
    bar.append(label, track, value);
    bars.appendChild(bar);
  }
  container.appendChild(bars);

  const pCovid = document.createElement("p");
  pCovid.id = "p-covid";
  pCovid.textContent = `P(infected) = ${report.p_covid.toFixed(2)}`;
  container.appendChild(pCovid);

  if (report.covid_alert) {
    const banner = document.createElement("div");
    banner.className = "banner covid";
    banner.textContent = "Infection alert: the probability of infection is at or above the alert threshold.";
    container.appendChild(banner);
  }
  if (report.hospitalization_alert) {
    const banner = document.createElement("div");
    banner.className = "banner hosp";
    banner.textContent = "Hospitalization alert: high severe-disease probability with a week or more of non-improving symptoms.";
    container.appendChild(banner);
  }

  if (report.next_questions.length > 0) {
    const heading = document.createElement("p");
    heading.className = "hint";
    heading.textContent = "Most informative unanswered questions:";
    const list = document.createElement("ol");
    list.className = "questions";
    for (const q of report.next_questions) {
      const item = document.createElement("li");
      item.dataset.feature = q.feature;
      item.textContent = `${q.feature} (expected entropy reduction ${q.expected_entropy_reduction.toFixed(3)})`;
      list.appendChild(item);
    }
    container.append(heading, list);
  }
}

export interface HistoryEntry {
  answered: number;
  pCovid: number | null;
  contradiction: boolean;
}

export function renderHistory(list: HTMLElement, entries: HistoryEntry[]): void {
  list.textContent = "";
  for (const entry of entries) {
    const item = document.createElement("li");
    item.textContent = entry.contradiction
      ? `${entry.answered} answered, inconsistent evidence`
      : `${entry.answered} answered, P(infected) = ${entry.pCovid?.toFixed(2)}`;
    list.appendChild(item);
  }
}
