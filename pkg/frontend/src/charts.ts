/**
 * SVG markup builders. Pure string producers so they are trivially
 * testable; the cards inject the result via innerHTML.
 *
 * Conventions carried across every chart: value axes start at 0, each
 * country keeps its stable color, region aggregates are red, background
 * context lines are gray, LWP days are red, and not-significant
 * correlation entries are hatched.
 */

import { BACKGROUND_GRAY, FOCUS_GREEN, LWP_RED, countryColor } from './colors.js';
import type {
  CorrelationEntry,
  CountryShape,
  LwpEventsPayload,
  MinMeanMaxPayload,
  VariationRangePayload,
  YoyPayload,
} from './types.js';

const W = 640;
const H = 320;
const PAD = 40;

function open(extra = ''): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" ${extra}>`;
}

function xScale(i: number, n: number): number {
  return PAD + ((W - 2 * PAD) * i) / Math.max(1, n - 1);
}

/** y position for a value on a 0..max axis (baseline always 0). */
function yScale(v: number, max: number): number {
  return H - PAD - ((H - 2 * PAD) * v) / max;
}

function polyline(values: number[], max: number, color: string, width = 2): string {
  const pts = values
    .map((v, i) => `${xScale(i, values.length).toFixed(1)},${yScale(v, max).toFixed(1)}`)
    .join(' ');
  return `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="${width}"/>`;
}

function axes(): string {
  return (
    `<line x1="${PAD}" y1="${H - PAD}" x2="${W - PAD}" y2="${H - PAD}" stroke="#444"/>` +
    `<line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${H - PAD}" stroke="#444"/>` +
    `<text x="${PAD - 6}" y="${H - PAD + 4}" text-anchor="end" font-size="10">0</text>`
  );
}

function maxOf(arrays: number[][]): number {
  let m = 0;
  for (const a of arrays) for (const v of a) if (v > m) m = v;
  return m > 0 ? m : 1;
}

export function linePlot(series: Record<string, number[]>): string {
  const max = maxOf(Object.values(series));
  let body = axes();
  for (const [label, values] of Object.entries(series)) {
    body += polyline(values, max, countryColor(label));
    body += `<text x="${W - PAD + 4}" y="${yScale(values[values.length - 1], max).toFixed(1)}" font-size="10" fill="${countryColor(label)}">${label}</text>`;
  }
  return open('class="line-plot"') + body + '</svg>';
}

export function choropleth(
  shapes: CountryShape[],
  values: Record<string, number>,
  selected: string[],
): string {
  const vals = Object.values(values);
  const lo = Math.min(...vals);
  const hi = Math.max(...vals);
  const span = hi - lo || 1;
  let body = '';
  for (const shape of shapes) {
    const v = values[shape.code];
    const t = v === undefined ? 0 : (v - lo) / span;
    const fill = v === undefined ? '#eee' : `hsl(215, 70%, ${Math.round(88 - 55 * t)}%)`;
    const stroke = selected.includes(shape.code) ? '#000' : '#999';
    const pts = shape.points.map(([x, y]) => `${x},${y}`).join(' ');
    body +=
      `<polygon class="country" data-country="${shape.code}" points="${pts}" ` +
      `fill="${fill}" stroke="${stroke}" stroke-width="${selected.includes(shape.code) ? 1.6 : 0.5}">` +
      `<title>${shape.name}: ${v === undefined ? 'n/a' : v.toFixed(3)}</title></polygon>`;
  }
  return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100" class="choropleth">${body}</svg>`;
}

export function variationRangeBars(payload: VariationRangePayload): string {
  const entries = [...payload.entries, payload.aggregate];
  const max = maxOf([entries.map((e) => e.value)]);
  const bw = (W - 2 * PAD) / entries.length;
  let body = axes();
  entries.forEach((e, i) => {
    const x = PAD + i * bw + bw * 0.1;
    const y = yScale(e.value, max);
    body +=
      `<rect class="bar" data-label="${e.label}" x="${x.toFixed(1)}" y="${y.toFixed(1)}" ` +
      `width="${(bw * 0.8).toFixed(1)}" height="${(H - PAD - y).toFixed(1)}" fill="${countryColor(e.label)}"/>` +
      `<text x="${(x + bw * 0.4).toFixed(1)}" y="${H - PAD + 12}" text-anchor="middle" font-size="9">${e.label}</text>`;
  });
  return open('class="variation-range"') + body + '</svg>';
}

export function minMeanMaxPlot(payload: MinMeanMaxPayload): string {
  const max = maxOf([payload.entries.map((e) => e.max)]);
  const bw = (W - 2 * PAD) / payload.entries.length;
  let body = axes();
  payload.entries.forEach((e, i) => {
    const x = PAD + i * bw + bw / 2;
    const color = countryColor(e.country);
    // error bar min..max, mean marked with a cross
    body +=
      `<line x1="${x}" y1="${yScale(e.min, max).toFixed(1)}" x2="${x}" y2="${yScale(e.max, max).toFixed(1)}" stroke="${color}" stroke-width="2"/>` +
      `<text class="mean-cross" x="${x}" y="${yScale(e.mean, max).toFixed(1)}" text-anchor="middle" font-size="12" fill="${color}">&#10005;</text>` +
      `<text x="${x}" y="${H - PAD + 12}" text-anchor="middle" font-size="9">${e.country}</text>`;
  });
  return open('class="min-mean-max"') + body + '</svg>';
}

export function cumulativePlot(
  thresholds: number[],
  curves: Record<string, number[]>,
  selected: string[],
): string {
  let body = axes();
  const showAll = selected.length === 0;
  for (const [label, curve] of Object.entries(curves)) {
    const isAggregate = label === '28C' || label.includes('+');
    const color = showAll && !isAggregate ? BACKGROUND_GRAY : countryColor(label);
    body += polyline(curve, 1, color, isAggregate ? 2.5 : 1.5);
  }
  return open('class="cumulative"') + body + '</svg>';
}

export function yoyPlot(payload: YoyPayload): string {
  const max = maxOf([payload.focus, ...payload.background.map((b) => b.values)]);
  let body = axes();
  for (const bg of payload.background) {
    body += polyline(bg.values, max, BACKGROUND_GRAY, 1);
  }
  body += polyline(payload.focus, max, FOCUS_GREEN, 2.5);
  return open('class="yoy"') + body + '</svg>';
}

export function lwpEventBars(payload: LwpEventsPayload): string {
  const groups = [...Object.entries(payload.per_country), [payload.region_label, payload.region] as const];
  const max = maxOf(groups.map(([, counts]) => counts));
  const n = payload.d_max;
  const gw = (W - 2 * PAD) / n;
  let body = axes();
  for (let d = 0; d < n; d++) {
    const bw = (gw * 0.85) / groups.length;
    groups.forEach(([label, counts], gi) => {
      const x = PAD + d * gw + gi * bw;
      const y = yScale(counts[d], max);
      body +=
        `<rect class="bar" data-label="${label}" data-duration="${d + 1}" x="${x.toFixed(1)}" y="${y.toFixed(1)}" ` +
        `width="${(bw * 0.9).toFixed(1)}" height="${(H - PAD - y).toFixed(1)}" fill="${countryColor(label)}"/>`;
    });
    body += `<text x="${(PAD + d * gw + gw / 2).toFixed(1)}" y="${H - PAD + 12}" text-anchor="middle" font-size="9">${d + 1}</text>`;
  }
  return open('class="lwp-events"') + body + '</svg>';
}

/** Calendar of one year: months as rows, days as columns; LWP days red. */
export function calendarPlot(year: number, flags: boolean[]): string {
  const monthLengths = [31, isLeap(year) ? 29 : 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
  const cell = 16;
  let body = '';
  let day = 0;
  monthLengths.forEach((len, m) => {
    for (let d = 0; d < len; d++) {
      const fill = flags[day] ? LWP_RED : '#e6e6e6';
      body +=
        `<rect class="day${flags[day] ? ' lwp' : ''}" x="${d * cell}" y="${m * cell}" ` +
        `width="${cell - 2}" height="${cell - 2}" fill="${fill}"/>`;
      day++;
    }
  });
  return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${31 * cell} ${12 * cell}" class="calendar">${body}</svg>`;
}

function isLeap(year: number): boolean {
  return (year % 4 === 0 && year % 100 !== 0) || year % 400 === 0;
}

export function correlationMap(
  shapes: CountryShape[],
  entries: Record<string, CorrelationEntry>,
  focus: string,
): string {
  const hatch =
    '<defs><pattern id="hatch" width="4" height="4" patternTransform="rotate(45)" patternUnits="userSpaceOnUse">' +
    '<line x1="0" y1="0" x2="0" y2="4" stroke="#888" stroke-width="1.5"/></pattern></defs>';
  let body = hatch;
  for (const shape of shapes) {
    const entry = entries[shape.code];
    let fill = '#eee';
    let cls = 'country';
    if (shape.code === focus) {
      fill = '#333';
      cls += ' focus';
    } else if (entry && entry.suppressed) {
      fill = 'url(#hatch)';
      cls += ' suppressed';
    } else if (entry && entry.r !== null) {
      // diverging blue-red around 0
      const t = (entry.r + 1) / 2;
      fill = `hsl(${Math.round(240 - 240 * t)}, 65%, 55%)`;
    } else if (entry) {
      cls += ' undefined';
    }
    const pts = shape.points.map(([x, y]) => `${x},${y}`).join(' ');
    body += `<polygon class="${cls}" data-country="${shape.code}" points="${pts}" fill="${fill}" stroke="#999" stroke-width="0.5"/>`;
  }
  return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100" class="correlation-map">${body}</svg>`;
}

export function overlayPlot(
  values: number[],
  lwpFlags: boolean[],
): string {
  const max = maxOf([values]);
  const min = Math.min(0, ...values);
  const span = max - min || 1;
  const y = (v: number) => H - PAD - ((H - 2 * PAD) * (v - min)) / span;
  const pts = values
    .map((v, i) => `${xScale(i, values.length).toFixed(1)},${y(v).toFixed(1)}`)
    .join(' ');
  let body = axes() + `<polyline points="${pts}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>`;
  values.forEach((v, i) => {
    if (lwpFlags[i]) {
      body += `<circle class="lwp-dot" cx="${xScale(i, values.length).toFixed(1)}" cy="${y(v).toFixed(1)}" r="3" fill="${LWP_RED}"/>`;
    }
  });
  return open('class="overlay"') + body + '</svg>';
}
