/** Browser entry point: boot from /api/v1/meta, then wire the cards. */

import { fetchQuery } from './api.js';
import { Controller } from './controller.js';
import { LeftCard } from './leftcard.js';
import { RightCard } from './rightcard.js';
import { Store } from './state.js';
import type { ChoroplethPayload, CountryShape, MetaPayload, SeriesPayload } from './types.js';

async function boot(): Promise<void> {
  const app = document.getElementById('app');
  if (!app) throw new Error('missing #app container');

  const [metaResp, topoResp] = await Promise.all([
    fetch('/api/v1/meta'),
    fetch('public/topology.json'),
  ]);
  const meta = (await metaResp.json()).payload as MetaPayload;
  const shapes = ((await topoResp.json()) as { shapes: CountryShape[] }).shapes;

  const store = new Store(meta.first_year, meta.last_year, meta.defaults);

  app.innerHTML = `
    <header><h1>European wind capacity factors, ${meta.first_year}&ndash;${meta.last_year}</h1></header>
    <main>
      <section id="left-card" class="card"></section>
      <section id="right-card" class="card"></section>
    </main>
  `;
  const left = new LeftCard(document.getElementById('left-card')!, store, shapes);
  const right = new RightCard(
    document.getElementById('right-card')!,
    store,
    shapes,
    Object.keys(meta.indices),
  );

  const controller = new Controller(store, fetchQuery, (plotId, resp) => {
    if (plotId === 'choropleth' && resp.status === 'ok') {
      left.renderChoropleth(resp.payload as unknown as ChoroplethPayload);
    } else if (plotId === 'series' && resp.status === 'ok') {
      left.renderSeries(resp.payload as unknown as SeriesPayload);
    } else {
      right.render(plotId, resp);
    }
  });
  await controller.refresh();
}

boot().catch((err) => {
  const app = document.getElementById('app');
  if (app) app.innerHTML = `<p class="error">Failed to start: ${String(err)}</p>`;
});
