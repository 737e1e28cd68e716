import {
  checkSaturation,
  checkTemperature,
  saturationBand,
  temperatureBand,
} from "./bands";

// One entry per observable model node. Categorical fields offer the model
// states directly; the two numeric fields take raw readings and are banded
// before they enter the evidence dictionary.

export type FieldKind = "categorical" | "temperature" | "saturation";

export interface FieldSpec {
  id: string;
  label: string;
  kind: FieldKind;
  options?: readonly string[];
}

export const FIELDS: readonly FieldSpec[] = [
  { id: "recent_contact", label: "contact with a confirmed case", kind: "categorical", options: ["no", "yes"] },
  { id: "sex", label: "sex", kind: "categorical", options: ["male", "female"] },
  { id: "age_group", label: "age group", kind: "categorical", options: ["under65", "over65"] },
  { id: "obesity", label: "obesity", kind: "categorical", options: ["no", "yes"] },
  { id: "other_condition", label: "other condition", kind: "categorical", options: ["none", "copd", "flu"] },
  { id: "test_result", label: "swab test result", kind: "categorical", options: ["not_tested", "negative", "positive"] },
  { id: "fever", label: "fever", kind: "categorical", options: ["absent", "present"] },
  { id: "cough", label: "cough", kind: "categorical", options: ["absent", "present"] },
  { id: "dyspnoea", label: "shortness of breath", kind: "categorical", options: ["absent", "present"] },
  { id: "fatigue", label: "fatigue", kind: "categorical", options: ["absent", "present"] },
  { id: "myalgia", label: "muscle pain", kind: "categorical", options: ["absent", "present"] },
  { id: "headache", label: "headache", kind: "categorical", options: ["absent", "present"] },
  { id: "body_temperature", label: "body temperature (°C)", kind: "temperature" },
  { id: "oxygen_saturation", label: "oxygen saturation (%)", kind: "saturation" },
];

export const FIELD_IDS: readonly string[] = FIELDS.map((f) => f.id);

export interface EvidenceFormState {
  // categorical answers keyed by field id; a missing key means unset
  answers: Record<string, string>;
  // raw text of the numeric inputs, "" means unset
  temperatureText: string;
  saturationText: string;
  durationText: string;
  improving: "yes" | "no" | "unknown";
}

export function emptyForm(): EvidenceFormState {
  return {
    answers: {},
    temperatureText: "",
    saturationText: "",
    durationText: "",
    improving: "unknown",
  };
}

export interface BuiltEvidence {
  evidence: Record<string, string>;
  duration: number;
  improving: string;
  // field id -> validation message; a field with an error stays out of
  // the evidence so a half-typed number never reaches the service
  errors: Record<string, string>;
}

export function buildEvidence(form: EvidenceFormState): BuiltEvidence {
  const evidence: Record<string, string> = {};
  const errors: Record<string, string> = {};
  for (const field of FIELDS) {
    if (field.kind === "categorical") {
      const answer = form.answers[field.id];
      if (answer !== undefined && answer !== "") evidence[field.id] = answer;
    } else if (field.kind === "temperature") {
      if (form.temperatureText.trim() === "") continue;
      const check = checkTemperature(form.temperatureText);
      if (check.ok) evidence[field.id] = temperatureBand(check.value!);
      else errors[field.id] = check.message!;
    } else {
      if (form.saturationText.trim() === "") continue;
      const check = checkSaturation(form.saturationText);
      if (check.ok) evidence[field.id] = saturationBand(check.value!);
      else errors[field.id] = check.message!;
    }
  }
  let duration = 0;
  if (form.durationText.trim() !== "") {
    const value = Number(form.durationText.trim());
    if (!Number.isFinite(value) || value < 0) {
      errors["symptom_duration_days"] = "duration must be a non-negative number of days";
    } else {
      duration = value;
    }
  }
  return { evidence, duration, improving: form.improving, errors };
}

export function answeredFields(form: EvidenceFormState): Set<string> {
  return new Set(Object.keys(buildEvidence(form).evidence));
}

export function unansweredFields(form: EvidenceFormState): string[] {
  const answered = answeredFields(form);
  return FIELD_IDS.filter((id) => !answered.has(id));
}

// Service-side validation errors come back as one message string. When it
// names a form field, surface it next to that field instead of globally.
export function fieldForError(detail: string): string | null {
  for (const id of FIELD_IDS) {
    if (detail.includes(id)) return id;
  }
  if (detail.includes("duration")) return "symptom_duration_days";
  if (detail.includes("improving")) return "improving";
  return null;
}
