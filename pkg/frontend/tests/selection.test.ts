import { describe, expect, it } from 'vitest';
import { Store, unitBounds } from '../src/state.js';

const DEFAULTS = { threshold: 0.1, alpha: 0.05, wind_weight: 1.0 };

function makeStore(): Store {
  return new Store(1979, 2019, DEFAULTS);
}

describe('country selection semantics', () => {
  it('starts empty, i.e. the all-country 28C view', () => {
    const store = makeStore();
    expect(store.state.countries).toEqual([]);
    expect(store.selectionLabel()).toBe('28C');
  });

  it('plain click replaces the selection', () => {
    const store = makeStore();
    store.selectCountry('FR', false);
    expect(store.state.countries).toEqual(['FR']);
    store.selectCountry('DE', false);
    expect(store.state.countries).toEqual(['DE']);
  });

  it('shift-click adds to the selection in click order', () => {
    const store = makeStore();
    store.selectCountry('FR', false);
    store.selectCountry('DE', true);
    store.selectCountry('DK', true);
    expect(store.state.countries).toEqual(['FR', 'DE', 'DK']);
    expect(store.selectionLabel()).toBe('FR+DE+DK');
  });

  it('shift-click on a selected country removes it', () => {
    const store = makeStore();
    store.selectCountry('FR', false);
    store.selectCountry('DE', true);
    store.selectCountry('FR', true);
    expect(store.state.countries).toEqual(['DE']);
  });

  it('removing the last country falls back to the 28C view', () => {
    const store = makeStore();
    store.selectCountry('FR', false);
    store.selectCountry('FR', true);
    expect(store.state.countries).toEqual([]);
    expect(store.selectionLabel()).toBe('28C');
  });

  it('plain click on an already-selected country collapses a multi-selection', () => {
    const store = makeStore();
    store.selectCountry('FR', false);
    store.selectCountry('DE', true);
    store.selectCountry('FR', false);
    expect(store.state.countries).toEqual(['FR']);
  });

  it('notifies subscribers once per change and supports unsubscribe', () => {
    const store = makeStore();
    let calls = 0;
    const off = store.subscribe(() => {
      calls += 1;
    });
    store.selectCountry('FR', false);
    store.selectCountry('DE', true);
    expect(calls).toBe(2);
    off();
    store.selectCountry('DK', true);
    expect(calls).toBe(2);
  });
});

describe('resolution changes', () => {
  it('resets the unit range to the bounds of the new resolution', () => {
    const store = makeStore();
    store.setResolution('hourly');
    expect([store.state.unitFrom, store.state.unitTo]).toEqual([0, 23]);
    store.setResolution('monthly');
    expect([store.state.unitFrom, store.state.unitTo]).toEqual([1, 12]);
    store.setResolution('yearly');
    expect([store.state.unitFrom, store.state.unitTo]).toEqual([1979, 2019]);
  });

  it('unitBounds covers all three resolutions', () => {
    expect(unitBounds('hourly', 1979, 2019)).toEqual([0, 23]);
    expect(unitBounds('monthly', 1979, 2019)).toEqual([1, 12]);
    expect(unitBounds('yearly', 1979, 2019)).toEqual([1979, 2019]);
  });
});
