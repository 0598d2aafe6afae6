/**
 * Per-plot query scheduler: debounces bursts (slider drags) and tags
 * every request with a monotonically increasing sequence number so a
 * stale response can never overwrite a newer one.
 */

import type { QueryResponse } from './types.js';

export type FetchFn = (url: string) => Promise<QueryResponse>;

export const DEBOUNCE_MS = 150;

export class PlotFetcher {
  private seq = 0;
  private applied = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  /** number of requests actually issued (for tests) */
  requestCount = 0;

  constructor(
    private readonly fetchFn: FetchFn,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  /**
   * Schedule a (debounced) query. Resolves with the response when it is
   * the newest one, or null when it was superseded in flight.
   */
  request(url: string): Promise<QueryResponse | null> {
    if (this.timer !== null) clearTimeout(this.timer);
    return new Promise((resolve) => {
      this.timer = setTimeout(() => {
        this.timer = null;
        const tag = ++this.seq;
        this.requestCount += 1;
        this.fetchFn(url).then(
          (resp) => {
            if (tag <= this.applied) {
              resolve(null); // a newer response already landed
              return;
            }
            this.applied = tag;
            resolve(resp);
          },
          () => resolve(null),
        );
      }, this.debounceMs);
    });
  }
}
