import type { QueryResponse } from './types.js';

export function buildUrl(
  base: string,
  path: string,
  params: Record<string, string | number | undefined>,
): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(params)) {
    if (value === undefined) continue;
    parts.push(`${encodeURIComponent(key)}=${encodeURIComponent(String(value))}`);
  }
  return parts.length ? `${base}${path}?${parts.join('&')}` : `${base}${path}`;
}

export async function fetchQuery(url: string): Promise<QueryResponse> {
  const resp = await fetch(url);
  return (await resp.json()) as QueryResponse;
}
