/**
 * Right card: one of the analysis plots, chosen by a tab strip, driven
 * by the shared selection plus plot-specific controls (year, threshold,
 * significance level, focus country, climate index).
 */

import {
  calendarPlot,
  correlationMap,
  cumulativePlot,
  lwpEventBars,
  minMeanMaxPlot,
  overlayPlot,
  variationRangeBars,
  yoyPlot,
} from './charts.js';
import type { RightPlot, Store } from './state.js';
import type {
  CorrelationPayload,
  CountryShape,
  CumulativePayload,
  IndexOverlayPayload,
  LwpCalendarPayload,
  LwpEventsPayload,
  MinMeanMaxPayload,
  PriceOverlayPayload,
  QueryResponse,
  VariationRangePayload,
  YoyPayload,
} from './types.js';

const TABS: { id: RightPlot; label: string }[] = [
  { id: 'variation-range', label: 'Range' },
  { id: 'min-mean-max', label: 'Min/Mean/Max' },
  { id: 'cumulative', label: 'Cumulative' },
  { id: 'yoy', label: 'Year over year' },
  { id: 'lwp', label: 'Low-wind events' },
  { id: 'correlation', label: 'Correlation' },
  { id: 'overlay-index', label: 'Climate index' },
  { id: 'overlay-price', label: 'Prices' },
];

export class RightCard {
  constructor(
    private readonly root: HTMLElement,
    private readonly store: Store,
    private readonly shapes: CountryShape[],
    indices: string[],
  ) {
    const tabs = TABS.map(
      (t) => `<button data-tab="${t.id}" class="tab">${t.label}</button>`,
    ).join('');
    const years: string[] = [];
    for (let y = store.firstYear; y <= store.lastYear; y++) {
      years.push(`<option value="${y}">${y}</option>`);
    }
    const indexOptions = indices.map((n) => `<option value="${n}">${n}</option>`).join('');
    root.innerHTML = `
      <div class="tabs">${tabs}</div>
      <div class="controls">
        <label>Year <select data-control="year">${years.join('')}</select></label>
        <label>Threshold
          <input data-control="threshold" type="range" min="0" max="0.5" step="0.01" value="0.1"/>
        </label>
        <label>&alpha;
          <input data-control="alpha" type="number" min="0.001" max="0.5" step="0.01" value="0.05"/>
        </label>
        <label>Focus <select data-control="focus"><option value=""></option></select></label>
        <label>Index <select data-control="index"><option value=""></option>${indexOptions}</select></label>
      </div>
      <div data-role="plot" class="plot"></div>
      <div data-role="plot-extra" class="plot"></div>
    `;
    const focus = root.querySelector('[data-control="focus"]') as HTMLSelectElement;
    for (const shape of shapes) {
      const opt = document.createElement('option');
      opt.value = shape.code;
      opt.textContent = shape.code;
      focus.appendChild(opt);
    }
    (root.querySelector('[data-control="year"]') as HTMLSelectElement).value = String(
      store.state.year,
    );
    this.bind();
  }

  private el<T extends HTMLElement>(selector: string): T {
    return this.root.querySelector(selector) as T;
  }

  private bind(): void {
    this.el('.tabs').addEventListener('click', (ev) => {
      const btn = (ev.target as Element).closest('[data-tab]');
      if (!btn) return;
      this.store.update({ rightPlot: btn.getAttribute('data-tab') as RightPlot });
      this.root.querySelectorAll('.tab').forEach((t) => t.classList.remove('active'));
      btn.classList.add('active');
    });
    this.el<HTMLSelectElement>('[data-control="year"]').addEventListener('change', (ev) => {
      this.store.update({ year: Number((ev.target as HTMLSelectElement).value) });
    });
    this.el<HTMLInputElement>('[data-control="threshold"]').addEventListener('change', (ev) => {
      this.store.update({ threshold: Number((ev.target as HTMLInputElement).value) });
    });
    this.el<HTMLInputElement>('[data-control="alpha"]').addEventListener('change', (ev) => {
      this.store.update({ alpha: Number((ev.target as HTMLInputElement).value) });
    });
    this.el<HTMLSelectElement>('[data-control="focus"]').addEventListener('change', (ev) => {
      const v = (ev.target as HTMLSelectElement).value;
      this.store.update({ focusCountry: v || null });
    });
    this.el<HTMLSelectElement>('[data-control="index"]').addEventListener('change', (ev) => {
      const v = (ev.target as HTMLSelectElement).value;
      this.store.update({ indexName: v || null });
    });
  }

  render(plotId: string, resp: QueryResponse): void {
    const main = this.el('[data-role="plot"]');
    const extra = this.el('[data-role="plot-extra"]');
    if (resp.status === 'error') {
      main.innerHTML = `<p class="error">${resp.error?.code}: ${resp.error?.message}</p>`;
      return;
    }
    switch (plotId) {
      case 'variation-range':
        main.innerHTML = variationRangeBars(resp.payload as unknown as VariationRangePayload);
        extra.innerHTML = '';
        break;
      case 'min-mean-max':
        main.innerHTML = minMeanMaxPlot(resp.payload as unknown as MinMeanMaxPayload);
        extra.innerHTML = '';
        break;
      case 'cumulative': {
        const p = resp.payload as unknown as CumulativePayload;
        main.innerHTML = cumulativePlot(p.thresholds, p.curves, this.store.state.countries);
        extra.innerHTML = '';
        break;
      }
      case 'yoy':
        main.innerHTML = yoyPlot(resp.payload as unknown as YoyPayload);
        extra.innerHTML = '';
        break;
      case 'lwp-events':
        main.innerHTML = lwpEventBars(resp.payload as unknown as LwpEventsPayload);
        break;
      case 'lwp-calendar': {
        const p = resp.payload as unknown as LwpCalendarPayload;
        extra.innerHTML = calendarPlot(p.year, p.flags);
        break;
      }
      case 'correlation': {
        const p = resp.payload as unknown as CorrelationPayload;
        main.innerHTML = correlationMap(
          this.shapes,
          p.entries,
          this.store.state.focusCountry ?? '',
        );
        extra.innerHTML = '';
        break;
      }
      case 'overlay-index': {
        const p = resp.payload as unknown as IndexOverlayPayload;
        main.innerHTML = overlayPlot(
          p.points.map((pt) => pt.value),
          p.points.map((pt) => pt.is_lwp_day),
        );
        extra.innerHTML = '';
        break;
      }
      case 'overlay-price': {
        const p = resp.payload as unknown as PriceOverlayPayload;
        main.innerHTML = overlayPlot(
          p.points.map((pt) => pt.price_eur_mwh),
          p.points.map((pt) => pt.is_lwp_day),
        );
        const c = p.correlation;
        extra.innerHTML =
          c.r === null
            ? '<p class="corr-note">correlation undefined</p>'
            : `<p class="corr-note">r = ${c.r.toFixed(3)}, p = ${c.p?.toFixed(4)}, n = ${c.n}</p>`;
        break;
      }
    }
  }
}
