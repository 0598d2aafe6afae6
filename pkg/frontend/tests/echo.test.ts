import { describe, expect, it } from 'vitest';
import { Controller } from '../src/controller.js';
import { Store } from '../src/state.js';
import type { QueryResponse } from '../src/types.js';

const DEFAULTS = { threshold: 0.1, alpha: 0.05, wind_weight: 1.0 };

/**
 * Echoing fetch stub that behaves like the real service: the response's
 * `params` section repeats every resolved query parameter.
 */
const echoFetch = async (url: string): Promise<QueryResponse> => {
  const u = new URL(url, 'http://x');
  const params: Record<string, unknown> = {};
  for (const [key, value] of u.searchParams.entries()) {
    if (key === 'countries') {
      params[key] = value === '' ? [] : value.split(',');
    } else if (value !== '' && !Number.isNaN(Number(value))) {
      params[key] = Number(value);
    } else {
      params[key] = value;
    }
  }
  return { status: 'ok', params, payload: {} };
};

const settle = () => new Promise((r) => setTimeout(r, 10));

describe('control state equals parameter echo', () => {
  it('the choropleth echo mirrors the left-card controls', async () => {
    const store = new Store(1979, 2019, DEFAULTS);
    new Controller(store, echoFetch, () => {}, '', 0);
    store.update({ stat: 'std', windWeight: 0.5 });
    store.setResolution('monthly');
    await settle();
    const echo = store.lastEcho['choropleth'];
    expect(echo['stat']).toBe(store.state.stat);
    expect(echo['resolution']).toBe(store.state.resolution);
    expect(echo['from']).toBe(store.state.unitFrom);
    expect(echo['to']).toBe(store.state.unitTo);
    expect(echo['wind_weight']).toBe(store.state.windWeight);
  });

  it('the series echo carries the exact selection', async () => {
    const store = new Store(1979, 2019, DEFAULTS);
    new Controller(store, echoFetch, () => {}, '', 0);
    store.selectCountry('FR', false);
    store.selectCountry('DE', true);
    await settle();
    expect(store.lastEcho['series']['countries']).toEqual(['FR', 'DE']);
  });

  it('right-card plot echoes follow year and threshold controls', async () => {
    const store = new Store(1979, 2019, DEFAULTS);
    new Controller(store, echoFetch, () => {}, '', 0);
    store.update({ rightPlot: 'lwp', year: 1997, threshold: 0.15 });
    await settle();
    for (const plot of ['lwp-events', 'lwp-calendar']) {
      expect(store.lastEcho[plot]['year']).toBe(1997);
      expect(store.lastEcho[plot]['threshold']).toBe(0.15);
    }
  });

  it('an error response records no echo', async () => {
    const store = new Store(1979, 2019, DEFAULTS);
    const failFetch = async (): Promise<QueryResponse> => ({
      status: 'error',
      params: {},
      error: { code: 'BadParam', message: 'nope' },
    });
    new Controller(store, failFetch, () => {}, '', 0);
    store.selectCountry('FR', false);
    await settle();
    expect(store.lastEcho['series']).toBeUndefined();
  });

  it('after superseding changes the surviving echo matches the final state', async () => {
    const store = new Store(1979, 2019, DEFAULTS);
    new Controller(store, echoFetch, () => {}, '', 5);
    store.update({ windWeight: 0.9 });
    store.update({ windWeight: 0.3 });
    await settle();
    expect(store.lastEcho['choropleth']['wind_weight']).toBe(0.3);
    expect(store.lastEcho['choropleth']['wind_weight']).toBe(store.state.windWeight);
  });
});
