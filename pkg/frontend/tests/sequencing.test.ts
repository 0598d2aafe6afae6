import { describe, expect, it } from 'vitest';
import { PlotFetcher } from '../src/fetcher.js';
import type { QueryResponse } from '../src/types.js';

function deferredFetch() {
  const pending: { url: string; resolve: (r: QueryResponse) => void; reject: (e: Error) => void }[] =
    [];
  const fetchFn = (url: string) =>
    new Promise<QueryResponse>((resolve, reject) => {
      pending.push({ url, resolve, reject });
    });
  return { pending, fetchFn };
}

const ok = (tag: string): QueryResponse => ({ status: 'ok', params: { tag }, payload: {} });
const tick = () => new Promise((r) => setTimeout(r, 1));

describe('out-of-order response suppression', () => {
  it('a stale response resolves null and never wins over a newer one', async () => {
    const { pending, fetchFn } = deferredFetch();
    const fetcher = new PlotFetcher(fetchFn, 0);

    const first = fetcher.request('u1');
    await tick(); // let the first request actually go out
    const second = fetcher.request('u2');
    await tick();
    expect(pending.map((p) => p.url)).toEqual(['u1', 'u2']);

    // the newer response lands first...
    pending[1].resolve(ok('new'));
    expect(await second).toEqual(ok('new'));

    // ...so the older one must be discarded
    pending[0].resolve(ok('old'));
    expect(await first).toBeNull();
  });

  it('in-order responses both apply', async () => {
    const { pending, fetchFn } = deferredFetch();
    const fetcher = new PlotFetcher(fetchFn, 0);

    const first = fetcher.request('u1');
    await tick();
    const second = fetcher.request('u2');
    await tick();

    pending[0].resolve(ok('a'));
    expect(await first).toEqual(ok('a'));
    pending[1].resolve(ok('b'));
    expect(await second).toEqual(ok('b'));
  });

  it('a transport error resolves null instead of throwing', async () => {
    const { pending, fetchFn } = deferredFetch();
    const fetcher = new PlotFetcher(fetchFn, 0);
    const req = fetcher.request('u1');
    await tick();
    pending[0].reject(new Error('network down'));
    expect(await req).toBeNull();
  });

  it('a request superseded inside the debounce window never hits the network', async () => {
    const { pending, fetchFn } = deferredFetch();
    const fetcher = new PlotFetcher(fetchFn, 20);
    void fetcher.request('u1'); // cancelled before its timer fires
    const second = fetcher.request('u2');
    await new Promise((r) => setTimeout(r, 40));
    expect(pending.map((p) => p.url)).toEqual(['u2']);
    expect(fetcher.requestCount).toBe(1);
    pending[0].resolve(ok('only'));
    expect(await second).toEqual(ok('only'));
  });
});
