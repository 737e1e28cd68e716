import type { AssessResponse, ConsoleApi } from "./api";
import {
  answeredFields,
  buildEvidence,
  emptyForm,
  fieldForError,
  unansweredFields,
} from "./form";
import { renderHeatmap, renderHeatmapError } from "./heatmap";
import { rampGradientCss } from "./ramp";
import {
  buildFormDom,
  highlightField,
  renderAssessment,
  renderHistory,
  showFieldErrors,
  syncFormControls,
  type HistoryEntry,
} from "./view";

// Wires the static page to the API client. All probability numbers shown
// anywhere come straight from service responses; the only computation done
// here is banding the two numeric vitals before they are submitted.

const DEBOUNCE_MS = 200;

export function mountConsole(api: ConsoleApi, doc: Document = document): void {
  const formRoot = doc.getElementById("evidence-form")!;
  const output = doc.getElementById("assess-output")!;
  const historyEl = doc.getElementById("history")!;
  const assessBtn = doc.getElementById("assess-now") as HTMLButtonElement;
  const nextBtn = doc.getElementById("next-question") as HTMLButtonElement;
  const clearBtn = doc.getElementById("clear-form") as HTMLButtonElement;
  const startInput = doc.getElementById("window-start") as HTMLInputElement;
  const endInput = doc.getElementById("window-end") as HTMLInputElement;
  const ageSelect = doc.getElementById("age-filter") as HTMLSelectElement;
  const refreshBtn = doc.getElementById("refresh-heatmap") as HTMLButtonElement;
  const heatmapOut = doc.getElementById("heatmap-output")!;
  const legend = doc.getElementById("legend-ramp");
  if (legend) legend.style.background = rampGradientCss();

  const strip = doc.createElement("div");
  strip.className = "error-strip";
  strip.id = "assess-errors";
  strip.hidden = true;
  output.before(strip);

  const form = emptyForm();
  const history: HistoryEntry[] = [];
  let lastReport: AssessResponse | null = null;
  let debounce: ReturnType<typeof setTimeout> | undefined;

  function showStrip(message: string, retryable: boolean): void {
    strip.textContent = message;
    if (retryable) {
      const retry = doc.createElement("button");
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void submit());
      strip.appendChild(retry);
    }
    strip.hidden = false;
  }

  function clearStrip(): void {
    strip.hidden = true;
    strip.textContent = "";
  }

  async function updateNextQuestion(
    report: AssessResponse,
    evidence: Record<string, string>,
  ): Promise<void> {
    const open = unansweredFields(form);
    nextBtn.disabled = open.length === 0 || report.contradiction !== null;
    if (nextBtn.disabled) {
      highlightField(formRoot, null);
      return;
    }
    const result = await api.voi({ evidence });
    if (result.kind === "stale") return;
    if (result.kind !== "ok") {
      highlightField(formRoot, null);
      return;
    }
    // the ranking never contains observed fields, but the user may have
    // answered the top one while the request was in flight
    const answered = answeredFields(form);
    const top = result.data.ranking.find((q) => !answered.has(q.feature));
    highlightField(formRoot, top ? top.feature : null);
  }

  async function submit(): Promise<void> {
    const built = buildEvidence(form);
    showFieldErrors(formRoot, built.errors);
    if (Object.keys(built.errors).length > 0) return;
    const result = await api.assess({
      evidence: built.evidence,
      symptom_duration_days: built.duration,
      improving: built.improving,
    });
    if (result.kind === "stale") return;
    if (result.kind === "network") {
      // keep whatever is on screen; offer a retry
      showStrip(`could not reach the assessment service (${result.message})`, true);
      return;
    }
    if (result.kind === "error") {
      const field = fieldForError(result.detail);
      if (field) showFieldErrors(formRoot, { [field]: result.detail });
      else showStrip(result.detail, false);
      return;
    }
    clearStrip();
    lastReport = result.data;
    renderAssessment(output, result.data);
    history.push({
      answered: Object.keys(built.evidence).length,
      pCovid: result.data.contradiction ? null : result.data.p_covid,
      contradiction: result.data.contradiction !== null,
    });
    renderHistory(historyEl, history);
    await updateNextQuestion(result.data, built.evidence);
  }

  function scheduleAssess(): void {
    clearTimeout(debounce);
    debounce = setTimeout(() => void submit(), DEBOUNCE_MS);
  }

  buildFormDom(formRoot, (fieldId, value) => {
    if (fieldId === "symptom_duration_days") form.durationText = value;
    else if (fieldId === "improving") form.improving = value as typeof form.improving;
    else if (fieldId === "body_temperature") form.temperatureText = value;
    else if (fieldId === "oxygen_saturation") form.saturationText = value;
    else if (value === "") delete form.answers[fieldId];
    else form.answers[fieldId] = value;
    scheduleAssess();
  });

  assessBtn.addEventListener("click", () => {
    clearTimeout(debounce);
    void submit();
  });
  nextBtn.addEventListener("click", () => {
    if (lastReport) void updateNextQuestion(lastReport, buildEvidence(form).evidence);
  });
  clearBtn.addEventListener("click", () => {
    form.answers = {};
    form.temperatureText = "";
    form.saturationText = "";
    form.durationText = "";
    form.improving = "unknown";
    syncFormControls(formRoot, form);
    showFieldErrors(formRoot, {});
    clearTimeout(debounce);
    void submit();
  });

  async function refreshHeatmap(): Promise<void> {
    const start = Number(startInput.value);
    const end = Number(endInput.value);
    if (!Number.isFinite(start) || !Number.isFinite(end) || end <= start) {
      renderHeatmapError(heatmapOut, "window start must be before window end");
      return;
    }
    const result = await api.heatmap({ start, end, age: ageSelect.value || undefined });
    if (result.kind === "stale") return;
    if (result.kind === "network") {
      renderHeatmapError(
        heatmapOut,
        `could not load the risk map (${result.message}); press Refresh to retry`,
      );
      return;
    }
    if (result.kind === "error") {
      renderHeatmapError(heatmapOut, result.detail);
      return;
    }
    renderHeatmap(heatmapOut, result.data);
  }

  startInput.addEventListener("change", () => void refreshHeatmap());
  endInput.addEventListener("change", () => void refreshHeatmap());
  ageSelect.addEventListener("change", () => void refreshHeatmap());
  refreshBtn.addEventListener("click", () => void refreshHeatmap());

  // first paint: prior distribution and the current window's map
  void submit();
  void refreshHeatmap();
}
