import { beforeEach, describe, expect, it } from "vitest";
import type { AssessResponse } from "../src/api";
import { buildEvidence, emptyForm, fieldForError } from "../src/form";
import {
  buildFormDom,
  highlightField,
  renderAssessment,
  renderHistory,
  showFieldErrors,
  syncFormControls,
} from "../src/view";

function report(overrides: Partial<AssessResponse> = {}): AssessResponse {
  return {
    posterior: { none: 0.65, mild: 0.29, severe: 0.06 },
    p_covid: 0.35,
    covid_alert: false,
    hospitalization_alert: false,
    next_questions: [
      { feature: "fever", expected_entropy_reduction: 0.21 },
      { feature: "cough", expected_entropy_reduction: 0.11 },
    ],
    contradiction: null,
    ...overrides,
  };
}

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="c"></div><div id="f"></div>';
  container = document.getElementById("c")!;
});

describe("assessment rendering", () => {
  it("shows three bars in a fixed order with two-decimal values", () => {
    renderAssessment(container, report());
    const bars = [...container.querySelectorAll(".bar")];
    expect(bars.map((b) => (b as HTMLElement).dataset.state)).toEqual([
      "none",
      "mild",
      "severe",
    ]);
    expect(bars.map((b) => b.querySelector(".bar-value")!.textContent)).toEqual([
      "0.65",
      "0.29",
      "0.06",
    ]);
    const fill = bars[0]!.querySelector(".bar-fill") as HTMLElement;
    // jsdom normalizes "65.0%" to "65%"
    expect(fill.style.width).toBe("65%");
  });

  it("is deterministic for identical input", () => {
    renderAssessment(container, report());
    const first = container.innerHTML;
    renderAssessment(container, report());
    expect(container.innerHTML).toBe(first);
  });

  it("toggles the alert banners", () => {
    renderAssessment(container, report());
    expect(container.querySelector(".banner.covid")).toBeNull();
    expect(container.querySelector(".banner.hosp")).toBeNull();
    renderAssessment(container, report({ covid_alert: true, hospitalization_alert: true }));
    expect(container.querySelector(".banner.covid")).not.toBeNull();
    expect(container.querySelector(".banner.hosp")).not.toBeNull();
  });

  it("replaces the read-out with an inline message on contradiction", () => {
    renderAssessment(
      container,
      report({
        posterior: {},
        contradiction: "test_result=positive conflicts with recent_contact=no",
      }),
    );
    expect(container.querySelector("#bars")).toBeNull();
    expect(container.querySelector("#p-covid")).toBeNull();
    const block = container.querySelector(".contradiction")!;
    expect(block.textContent).toContain("conflicts with recent_contact=no");
    expect(block.textContent).toContain("review the answers");
  });

  it("lists the suggested questions with their expected gains", () => {
    renderAssessment(container, report());
    const items = [...container.querySelectorAll(".questions li")];
    expect(items.map((i) => (i as HTMLElement).dataset.feature)).toEqual([
      "fever",
      "cough",
    ]);
    expect(items[0]!.textContent).toContain("0.210");
  });
});

describe("history rendering", () => {
  it("keeps one line per assessment in submission order", () => {
    renderHistory(container, [
      { answered: 0, pCovid: 0.11, contradiction: false },
      { answered: 3, pCovid: 0.82, contradiction: false },
      { answered: 2, pCovid: null, contradiction: true },
    ]);
    const lines = [...container.querySelectorAll("li")].map((li) => li.textContent);
    expect(lines).toEqual([
      "0 answered, P(infected) = 0.11",
      "3 answered, P(infected) = 0.82",
      "2 answered, inconsistent evidence",
    ]);
  });
});

describe("form DOM", () => {
  let formRoot: HTMLElement;

  beforeEach(() => {
    formRoot = document.getElementById("f")!;
    buildFormDom(formRoot, () => {});
  });

  it("renders one row per observable field plus duration and improving", () => {
    const rows = [...formRoot.querySelectorAll<HTMLElement>(".field")];
    expect(rows.length).toBe(16);
    const ids = rows.map((r) => r.dataset.field);
    expect(ids).toContain("recent_contact");
    expect(ids).toContain("oxygen_saturation");
    expect(ids).toContain("symptom_duration_days");
    expect(ids).toContain("improving");
  });

  it("offers unset plus the model states for categorical fields", () => {
    const select = formRoot.querySelector<HTMLSelectElement>("#field-test_result")!;
    const values = [...select.options].map((o) => o.value);
    expect(values).toEqual(["", "not_tested", "negative", "positive"]);
    expect(select.options[0]!.textContent).toBe("unset");
  });

  it("moves the highlight between rows and clears it", () => {
    highlightField(formRoot, "fever");
    expect(formRoot.querySelector(".field.highlight")!.getAttribute("data-field")).toBe("fever");
    highlightField(formRoot, "cough");
    const rows = formRoot.querySelectorAll(".field.highlight");
    expect(rows.length).toBe(1);
    expect((rows[0] as HTMLElement).dataset.field).toBe("cough");
    highlightField(formRoot, null);
    expect(formRoot.querySelector(".field.highlight")).toBeNull();
  });

  it("writes field errors next to the offending row only", () => {
    showFieldErrors(formRoot, { body_temperature: "temperature must be between 30 and 45" });
    const row = formRoot.querySelector('.field[data-field="body_temperature"]')!;
    expect(row.querySelector(".field-error")!.textContent).toContain("between 30 and 45");
    const other = formRoot.querySelector('.field[data-field="fever"]')!;
    expect(other.querySelector(".field-error")!.textContent).toBe("");
    showFieldErrors(formRoot, {});
    expect(row.querySelector(".field-error")!.textContent).toBe("");
  });

  it("syncs control values from a cleared form state", () => {
    const temp = formRoot.querySelector<HTMLInputElement>("#field-body_temperature")!;
    temp.value = "38.2";
    syncFormControls(formRoot, emptyForm());
    expect(temp.value).toBe("");
    const improving = formRoot.querySelector<HTMLSelectElement>("#field-improving")!;
    expect(improving.value).toBe("unknown");
  });
});

describe("evidence building", () => {
  it("bands valid numerics and keeps invalid ones out with a message", () => {
    const form = emptyForm();
    form.answers["fever"] = "present";
    form.temperatureText = "38.2";
    form.saturationText = "12";
    const built = buildEvidence(form);
    expect(built.evidence).toEqual({ fever: "present", body_temperature: "b_37_5_38_5" });
    expect(built.errors["oxygen_saturation"]).toContain("between 50 and 100");
  });

  it("rejects a negative duration", () => {
    const form = emptyForm();
    form.durationText = "-1";
    const built = buildEvidence(form);
    expect(built.errors["symptom_duration_days"]).toContain("non-negative");
    expect(built.duration).toBe(0);
  });

  it("maps service messages to fields by name", () => {
    expect(fieldForError("unknown state present for node body_temperature")).toBe("body_temperature");
    expect(fieldForError("symptom duration must be finite")).toBe("symptom_duration_days");
    expect(fieldForError("model is on strike")).toBeNull();
  });
});
