/**
 * Left card: the clickable choropleth plus its controls (statistic,
 * resolution, unit range, wind/solar mix). Clicking a country replaces
 * the selection; shift-click toggles membership.
 */

import { choropleth, linePlot } from './charts.js';
import type { Store } from './state.js';
import type { ChoroplethPayload, CountryShape, SeriesPayload } from './types.js';

export class LeftCard {
  constructor(
    private readonly root: HTMLElement,
    private readonly store: Store,
    private readonly shapes: CountryShape[],
  ) {
    root.innerHTML = `
      <div class="controls">
        <label>Statistic
          <select data-control="stat">
            <option value="mean">mean</option>
            <option value="std">std</option>
          </select>
        </label>
        <label>Resolution
          <select data-control="resolution">
            <option value="yearly">yearly</option>
            <option value="monthly">intra-year</option>
            <option value="hourly">intra-day</option>
          </select>
        </label>
        <label>Wind share
          <input data-control="windWeight" type="range" min="0" max="1" step="0.05" value="1"/>
        </label>
        <span class="selection-label" data-role="selection-label">28C</span>
      </div>
      <div data-role="map" class="map"></div>
      <div data-role="series" class="series"></div>
    `;
    this.bind();
  }

  private el<T extends HTMLElement>(selector: string): T {
    return this.root.querySelector(selector) as T;
  }

  private bind(): void {
    this.el('[data-role="map"]').addEventListener('click', (ev) => {
      const target = (ev.target as Element).closest('[data-country]');
      if (!target) return;
      const code = target.getAttribute('data-country');
      if (code) this.store.selectCountry(code, (ev as MouseEvent).shiftKey);
    });
    this.el<HTMLSelectElement>('[data-control="stat"]').addEventListener('change', (ev) => {
      this.store.update({ stat: (ev.target as HTMLSelectElement).value as 'mean' | 'std' });
    });
    this.el<HTMLSelectElement>('[data-control="resolution"]').addEventListener('change', (ev) => {
      this.store.setResolution(
        (ev.target as HTMLSelectElement).value as 'hourly' | 'monthly' | 'yearly',
      );
    });
    this.el<HTMLInputElement>('[data-control="windWeight"]').addEventListener('change', (ev) => {
      this.store.update({ windWeight: Number((ev.target as HTMLInputElement).value) });
    });
  }

  renderChoropleth(payload: ChoroplethPayload): void {
    this.el('[data-role="map"]').innerHTML = choropleth(
      this.shapes,
      payload.values,
      this.store.state.countries,
    );
    this.el('[data-role="selection-label"]').textContent = this.store.selectionLabel();
  }

  renderSeries(payload: SeriesPayload): void {
    this.el('[data-role="series"]').innerHTML = linePlot(payload.series);
  }
}
