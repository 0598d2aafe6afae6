/** Wire shapes of the /api/v1 query service. */

export interface QueryResponse<P = Record<string, unknown>> {
  status: 'ok' | 'error';
  params: Record<string, unknown>;
  payload?: P;
  error?: { code: string; message: string };
}

export interface MetaPayload {
  countries: string[];
  solar_countries: string[];
  indices: Record<string, 'daily' | 'monthly'>;
  price_countries: string[];
  first_year: number;
  last_year: number;
  hours: number;
  defaults: { threshold: number; alpha: number; wind_weight: number };
}

export interface ChoroplethPayload {
  values: Record<string, number>;
}

export interface SeriesPayload {
  labels: number[];
  series: Record<string, number[]>;
}

export interface VariationRangePayload {
  entries: { label: string; value: number }[];
  aggregate: { label: string; value: number };
}

export interface MinMeanMaxPayload {
  entries: { country: string; min: number; mean: number; max: number }[];
}

export interface CumulativePayload {
  thresholds: number[];
  curves: Record<string, number[]>;
}

export interface YoyPayload {
  region: string;
  focus_year: number;
  focus: number[];
  background: { year: number; values: number[] }[];
}

export interface LwpEventsPayload {
  year: number;
  d_max: number;
  durations: number[];
  per_country: Record<string, number[]>;
  region_label: string;
  region: number[];
}

export interface LwpCalendarPayload {
  year: number;
  region: string;
  flags: boolean[];
}

export interface CorrelationEntry {
  r: number | null;
  p: number | null;
  n: number;
  suppressed: boolean;
  reason?: string;
}

export interface CorrelationPayload {
  entries: Record<string, CorrelationEntry>;
}

export interface IndexOverlayPayload {
  points: { date: string; value: number; is_lwp_day: boolean }[];
}

export interface PriceOverlayPayload {
  points: { date: string; price_eur_mwh: number; is_lwp_day: boolean }[];
  correlation: CorrelationEntry;
}

export interface CountryShape {
  code: string;
  name: string;
  points: [number, number][];
}
