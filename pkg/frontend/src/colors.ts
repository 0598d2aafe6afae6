/**
 * Country colors are a pure function of the country code so every plot
 * (and every session) shows a country in the same hue.
 */

const AGGREGATE_COLOR = '#d62728'; // region aggregates are always red

export function countryColor(code: string): string {
  if (code === '28C' || code.includes('+')) return AGGREGATE_COLOR;
  // small stable hash -> hue; spread via golden angle
  let h = 0;
  for (let i = 0; i < code.length; i++) {
    h = (h * 31 + code.charCodeAt(i)) >>> 0;
  }
  const hue = (h * 137.508) % 360;
  return `hsl(${hue.toFixed(1)}, 62%, 44%)`;
}

export const BACKGROUND_GRAY = '#c8c8c8';
export const FOCUS_GREEN = '#2ca02c';
export const LWP_RED = '#d62728';
