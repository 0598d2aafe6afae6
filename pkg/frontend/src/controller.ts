/**
 * Wires the store to the API: every state change issues exactly one
 * (debounced) request per visible plot, applies the response's resolved
 * parameter echo back into the store, and hands the payload to the
 * registered renderer.
 */

import { buildUrl } from './api.js';
import { PlotFetcher, type FetchFn } from './fetcher.js';
import { Store, type SelectionState } from './state.js';
import type { QueryResponse } from './types.js';

export type { FetchFn };

export type Renderer = (plotId: string, resp: QueryResponse) => void;

export class Controller {
  readonly fetchers: Record<string, PlotFetcher> = {};

  constructor(
    readonly store: Store,
    private readonly fetchFn: FetchFn,
    private readonly render: Renderer,
    private readonly base = '',
    private readonly debounceMs?: number,
  ) {
    store.subscribe(() => this.refresh());
  }

  private fetcher(plotId: string): PlotFetcher {
    if (!(plotId in this.fetchers)) {
      this.fetchers[plotId] = new PlotFetcher(this.fetchFn, this.debounceMs);
    }
    return this.fetchers[plotId];
  }

  /** Query URLs for every currently visible plot. */
  visiblePlots(s: SelectionState): Record<string, string> {
    const countries = s.countries.join(',');
    const w = s.windWeight;
    const plots: Record<string, string> = {
      choropleth: buildUrl(this.base, '/api/v1/choropleth', {
        stat: s.stat,
        resolution: s.resolution,
        from: s.unitFrom,
        to: s.unitTo,
        wind_weight: w,
      }),
      series: buildUrl(this.base, '/api/v1/series', {
        countries,
        resolution: s.resolution,
        from: s.unitFrom,
        to: s.unitTo,
        wind_weight: w,
      }),
    };
    switch (s.rightPlot) {
      case 'variation-range':
        plots['variation-range'] = buildUrl(this.base, '/api/v1/variation-range', {
          countries, year: s.year, mode: 'intrayear', wind_weight: w,
        });
        break;
      case 'min-mean-max':
        plots['min-mean-max'] = buildUrl(this.base, '/api/v1/min-mean-max', {
          countries, year: s.year, mode: 'intrayear', wind_weight: w,
        });
        break;
      case 'cumulative':
        plots['cumulative'] = buildUrl(this.base, '/api/v1/cumulative', {
          countries, year: s.year, wind_weight: w,
        });
        break;
      case 'yoy':
        plots['yoy'] = buildUrl(this.base, '/api/v1/yoy', {
          countries, year: s.year, wind_weight: w,
        });
        break;
      case 'lwp':
        plots['lwp-events'] = buildUrl(this.base, '/api/v1/lwp/events', {
          countries, year: s.year, threshold: s.threshold, wind_weight: w,
        });
        plots['lwp-calendar'] = buildUrl(this.base, '/api/v1/lwp/calendar', {
          countries, year: s.year, threshold: s.threshold, wind_weight: w,
        });
        break;
      case 'correlation':
        if (s.focusCountry) {
          plots['correlation'] = buildUrl(this.base, '/api/v1/correlation', {
            focus: s.focusCountry,
            basis: 'lwp_days',
            alpha: s.alpha,
            threshold: s.threshold,
            wind_weight: w,
          });
        }
        break;
      case 'overlay-index':
        if (s.focusCountry && s.indexName) {
          plots['overlay-index'] = buildUrl(this.base, '/api/v1/overlay/index', {
            name: s.indexName,
            country: s.focusCountry,
            year: s.year,
            threshold: s.threshold,
            wind_weight: w,
          });
        }
        break;
      case 'overlay-price':
        if (s.focusCountry) {
          plots['overlay-price'] = buildUrl(this.base, '/api/v1/overlay/price', {
            country: s.focusCountry,
            year: s.year,
            threshold: s.threshold,
            wind_weight: w,
          });
        }
        break;
    }
    return plots;
  }

  refresh(): Promise<void[]> {
    const plots = this.visiblePlots(this.store.state);
    return Promise.all(
      Object.entries(plots).map(async ([plotId, url]) => {
        const resp = await this.fetcher(plotId).request(url);
        if (resp === null) return; // superseded or failed transport
        if (resp.status === 'ok') {
          this.store.recordEcho(plotId, resp.params);
        }
        this.render(plotId, resp);
      }),
    );
  }
}
