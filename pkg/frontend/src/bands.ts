// Numeric vitals are entered as raw readings and mapped to the discrete
// bands the served model expects. The thresholds below mirror the band
// annotations shipped with the model file; the API deliberately exposes
// no schema endpoint, so they are fixed here and covered by tests against
// recorded service responses.

export type TemperatureBand = "lt_37_5" | "b_37_5_38_5" | "gt_38_5";
export type SaturationBand = "ge_95" | "b_92_94" | "lt_92";

// plausible input ranges, inclusive
export const TEMPERATURE_MIN_C = 30;
export const TEMPERATURE_MAX_C = 45;
export const SATURATION_MIN_PCT = 50;
export const SATURATION_MAX_PCT = 100;

export function temperatureBand(celsius: number): TemperatureBand {
  if (celsius < 37.5) return "lt_37_5";
  if (celsius < 38.5) return "b_37_5_38_5";
  return "gt_38_5";
}

export function saturationBand(percent: number): SaturationBand {
  if (percent >= 95) return "ge_95";
  if (percent >= 92) return "b_92_94";
  return "lt_92";
}

export interface NumericCheck {
  ok: boolean;
  value?: number;
  message?: string;
}

function parseInRange(raw: string, min: number, max: number, what: string): NumericCheck {
  const value = Number(raw.trim());
  if (raw.trim() === "" || !Number.isFinite(value)) {
    return { ok: false, message: `${what} must be a number` };
  }
  if (value < min || value > max) {
    return { ok: false, message: `${what} must be between ${min} and ${max}` };
  }
  return { ok: true, value };
}

export function checkTemperature(raw: string): NumericCheck {
  return parseInRange(raw, TEMPERATURE_MIN_C, TEMPERATURE_MAX_C, "temperature (°C)");
}

export function checkSaturation(raw: string): NumericCheck {
  return parseInRange(raw, SATURATION_MIN_PCT, SATURATION_MAX_PCT, "oxygen saturation (%)");
}
