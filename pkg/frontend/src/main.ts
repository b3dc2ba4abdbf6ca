/** DOM wiring: controls on the left, canvas in the middle, members on
 * the right. All data flows through ExplorerStore; this file only maps
 * store state to the DOM and DOM events to store calls. */
import { Client } from "./api.js";
import { buildScene, fmtValue, hitTest, tooltipLines } from "./scene.js";
import type { Scene } from "./scene.js";
import { drawScene } from "./render.js";
import { ExplorerStore } from "./state.js";
import type { ViewState } from "./state.js";

const CANVAS_PX = 720;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

const client = new Client("");

async function populateFixtures(): Promise<void> {
  const select = el<HTMLSelectElement>("fixture");
  try {
    const names = await client.fixtures();
    select.innerHTML = "";
    for (const name of names) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = name;
      select.appendChild(option);
    }
    if (names.length === 0) {
      select.innerHTML = "<option value=''>(no fixtures)</option>";
    }
  } catch (err) {
    showError(err instanceof Error ? err.message : String(err));
  }
}

function showError(message: string | null): void {
  const banner = el<HTMLDivElement>("error");
  banner.textContent = message ?? "";
  banner.hidden = message === null;
}

let store: ExplorerStore | null = null;
let scene: Scene | null = null;

function currentScene(state: ViewState): Scene | null {
  if (state.graph === null || state.shownQuery === null) return null;
  return buildScene(state.graph, {
    sizePx: CANVAS_PX,
    coloring: state.shownQuery.coloring,
    threshold: state.threshold,
    vmin: state.lockedWindow ? state.lockedWindow[0] : null,
    vmax: state.lockedWindow ? state.lockedWindow[1] : null,
  });
}

function renderMembers(state: ViewState): void {
  const panel = el<HTMLDivElement>("members");
  if (state.selected === null) {
    panel.innerHTML = "<p class='hint'>Click a ball to list its members.</p>";
    return;
  }
  if (state.members === null) {
    panel.innerHTML = `<p class='hint'>Loading ball ${state.selected}…</p>`;
    return;
  }
  const doc = state.members;
  const head = doc.columns.map((c) => `<th>${c}</th>`).join("");
  const body = doc.rows
    .slice(0, 200)
    .map(
      (row) =>
        "<tr>" +
        doc.columns
          .map((c) => {
            const v = row[c];
            const shown =
              v === undefined ? "" : Number.isInteger(v) ? String(v) : fmtValue(v);
            return `<td>${shown}</td>`;
          })
          .join("") +
        "</tr>",
    )
    .join("");
  const truncated =
    doc.rows.length > 200
      ? `<p class='hint'>showing 200 of ${doc.rows.length} rows</p>`
      : "";
  panel.innerHTML =
    `<h3>ball ${doc.ball} — ${doc.rows.length} members ` +
    `(landmark row ${doc.landmark})</h3>` +
    `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>` +
    truncated;
}

function render(state: ViewState): void {
  showError(state.error);
  el<HTMLSpanElement>("status").textContent = state.loading
    ? "loading…"
    : state.graph
      ? `${state.graph.nodes.length} balls, ${state.graph.edges.length} edges ` +
        `at eps ${state.shownQuery?.eps}`
      : "";

  scene = currentScene(state);
  const canvas = el<HTMLCanvasElement>("plot");
  const ctx = canvas.getContext("2d");
  if (ctx && scene) {
    drawScene(ctx, scene, CANVAS_PX, state.selected);
  }
  const emptyNote = el<HTMLDivElement>("empty-note");
  emptyNote.hidden = !(scene && scene.empty);
  if (scene) {
    const [lo, hi] = scene.window;
    el<HTMLSpanElement>("window-label").textContent =
      `color window [${fmtValue(lo)}, ${fmtValue(hi)}] for mean ${scene.coloring}`;
  }
  renderMembers(state);
}

function wireControls(active: ExplorerStore): void {
  const eps = el<HTMLInputElement>("eps");
  const epsValue = el<HTMLSpanElement>("eps-value");
  eps.oninput = () => {
    epsValue.textContent = eps.value;
    active.setEps(Number(eps.value));
  };

  const coloring = el<HTMLSelectElement>("coloring");
  coloring.innerHTML = "";
  for (const name of active.session.colorings) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    coloring.appendChild(option);
  }
  coloring.onchange = () => active.setColoring(coloring.value);

  el<HTMLSelectElement>("policy").onchange = (ev) =>
    active.setPolicy(
      (ev.target as HTMLSelectElement).value as "sequential" | "random",
    );
  el<HTMLInputElement>("seed").onchange = (ev) =>
    active.setSeed(Number((ev.target as HTMLInputElement).value));

  el<HTMLButtonElement>("reseed").onclick = () => {
    const input = el<HTMLInputElement>("layout-seed");
    input.value = String(Number(input.value) + 1);
    active.setLayoutSeed(Number(input.value));
  };
  el<HTMLInputElement>("layout-seed").onchange = (ev) =>
    active.setLayoutSeed(Number((ev.target as HTMLInputElement).value));

  const thresholdOn = el<HTMLInputElement>("threshold-on");
  const threshold = el<HTMLInputElement>("threshold");
  const applyThreshold = () =>
    active.setThreshold(thresholdOn.checked ? Number(threshold.value) : null);
  thresholdOn.onchange = applyThreshold;
  threshold.oninput = applyThreshold;

  const lock = el<HTMLInputElement>("lock-window");
  lock.onchange = () => {
    if (lock.checked && scene) {
      active.lockWindow(scene.window);
    } else {
      active.lockWindow(null);
    }
  };

  const canvas = el<HTMLCanvasElement>("plot");
  const tooltip = el<HTMLDivElement>("tooltip");
  canvas.onmousemove = (ev) => {
    if (!scene) return;
    const rect = canvas.getBoundingClientRect();
    const hit = hitTest(scene, ev.clientX - rect.left, ev.clientY - rect.top);
    if (hit === null) {
      tooltip.hidden = true;
      return;
    }
    const disc = scene.discs.find((d) => d.id === hit);
    if (!disc) return;
    tooltip.hidden = false;
    tooltip.style.left = `${ev.clientX + 12}px`;
    tooltip.style.top = `${ev.clientY + 12}px`;
    tooltip.innerHTML = tooltipLines(disc.node, scene.coloring)
      .map((line) => `<div>${line}</div>`)
      .join("");
  };
  canvas.onmouseleave = () => {
    tooltip.hidden = true;
  };
  canvas.onclick = (ev) => {
    if (!scene) return;
    const rect = canvas.getBoundingClientRect();
    const hit = hitTest(scene, ev.clientX - rect.left, ev.clientY - rect.top);
    active.select(hit);
  };
}

async function openSession(): Promise<void> {
  const fixture = el<HTMLSelectElement>("fixture").value;
  const axes = el<HTMLInputElement>("axes")
    .value.split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
  const color = el<HTMLInputElement>("color").value.trim();
  const standardizeBox = el<HTMLInputElement>("standardize");
  try {
    const session = await client.openSession({
      fixture,
      axes,
      color,
      standardize: standardizeBox.checked,
    });
    store = new ExplorerStore(client, session);
    store.subscribe(render);
    wireControls(store);
    el<HTMLDivElement>("controls").hidden = false;
    showError(null);
    store.fetchNow();
  } catch (err) {
    showError(err instanceof Error ? err.message : String(err));
  }
}

function init(): void {
  el<HTMLButtonElement>("open").onclick = () => {
    void openSession();
  };
  const canvas = el<HTMLCanvasElement>("plot");
  canvas.width = CANVAS_PX;
  canvas.height = CANVAS_PX;
  void populateFixtures();
}

init();
