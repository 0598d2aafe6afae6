/**
 * Central selection state. The choropleth selection on the left card
 * filters every right-card plot; an empty selection means the all-28
 * "28C" aggregate view.
 */

export type Resolution = 'hourly' | 'monthly' | 'yearly';
export type RightPlot =
  | 'variation-range'
  | 'min-mean-max'
  | 'cumulative'
  | 'yoy'
  | 'lwp'
  | 'correlation'
  | 'overlay-index'
  | 'overlay-price';

export interface SelectionState {
  countries: string[]; // ordered, no duplicates; empty = 28C fallback
  stat: 'mean' | 'std';
  resolution: Resolution;
  unitFrom: number;
  unitTo: number;
  rightPlot: RightPlot;
  year: number;
  threshold: number;
  alpha: number;
  windWeight: number;
  focusCountry: string | null; // correlation maps
  indexName: string | null;
}

export type Listener = (state: SelectionState) => void;

export function unitBounds(
  resolution: Resolution,
  firstYear: number,
  lastYear: number,
): [number, number] {
  if (resolution === 'hourly') return [0, 23];
  if (resolution === 'monthly') return [1, 12];
  return [firstYear, lastYear];
}

export class Store {
  private listeners: Listener[] = [];
  /** parameter echo of the last successful response, per plot id */
  readonly lastEcho: Record<string, Record<string, unknown>> = {};

  state: SelectionState;

  constructor(
    readonly firstYear: number,
    readonly lastYear: number,
    defaults: { threshold: number; alpha: number; wind_weight: number },
  ) {
    this.state = {
      countries: [],
      stat: 'mean',
      resolution: 'yearly',
      unitFrom: firstYear,
      unitTo: lastYear,
      rightPlot: 'variation-range',
      year: lastYear,
      threshold: defaults.threshold,
      alpha: defaults.alpha,
      windWeight: defaults.wind_weight,
      focusCountry: null,
      indexName: null,
    };
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  update(patch: Partial<SelectionState>): void {
    this.state = { ...this.state, ...patch };
    this.emit();
  }

  /**
   * Choropleth click. Plain click replaces the selection with the
   * clicked country; shift-click toggles it in or out. Removing the
   * last country falls back to the empty (28C) selection.
   */
  selectCountry(code: string, shiftHeld: boolean): void {
    const current = this.state.countries;
    let next: string[];
    if (!shiftHeld) {
      next = [code];
    } else if (current.includes(code)) {
      next = current.filter((c) => c !== code);
    } else {
      next = [...current, code];
    }
    this.update({ countries: next });
  }

  setResolution(resolution: Resolution): void {
    const [lo, hi] = unitBounds(resolution, this.firstYear, this.lastYear);
    this.update({ resolution, unitFrom: lo, unitTo: hi });
  }

  /** Label shown when nothing is selected. */
  selectionLabel(): string {
    return this.state.countries.length === 0
      ? '28C'
      : this.state.countries.join('+');
  }

  recordEcho(plotId: string, params: Record<string, unknown>): void {
    this.lastEcho[plotId] = params;
  }
}
