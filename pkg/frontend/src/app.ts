/**
 * Single-page exploration client: search box, stacked facet bars, word
 * cloud, expandable result list with fragment time-codes, and a workspace
 * panel with the virtual cutter.
 *
 * Every user action that changes the query or filters issues exactly one
 * search request (plus one word-cloud request); stale responses are
 * discarded by monotone sequence number.
 */

import { ApiClient, LatestWins } from "./api.js";
import { emptySelection, filterParams, renderFacetPanel, updateSelection } from "./facets.js";
import type { SelectionState } from "./facets.js";
import { DetailCache, renderResults } from "./results.js";
import type { CutterPrefill } from "./results.js";
import { msToTimecode, timecodeToMs } from "./timecode.js";
import type { SearchResult, WordCloudPayload, WorkspaceDoc } from "./types.js";
import { renderWordCloud } from "./wordcloud.js";

const CLOUD_K = 10;
const BAR_WIDTH_PX = 320;
const MIN_SEGMENT_PX = 4;
const CLOUD_MIN_PT = 10;
const CLOUD_MAX_PT = 30;

const SHELL = `
  <header class="topbar">
    <input id="search-box" type="search" placeholder="search the interviews…" />
    <button id="search-btn" type="button">search</button>
    <span id="status"></span>
  </header>
  <main class="columns">
    <aside>
      <h2>Facets</h2>
      <div id="facet-panel"></div>
      <h2>Terminology</h2>
      <div id="wordcloud"></div>
    </aside>
    <section>
      <ol id="result-list"></ol>
      <nav class="pager">
        <button id="pager-prev" type="button">previous</button>
        <span id="pager-label"></span>
        <button id="pager-next" type="button">next</button>
      </nav>
    </section>
    <aside>
      <h2>Workspace</h2>
      <div id="workspace-panel">
        <input id="ws-name" type="text" placeholder="project name" />
        <button id="ws-create" type="button">create workspace</button>
        <div id="ws-info"></div>
        <button id="ws-export" type="button" hidden>export manifest</button>
        <pre id="export-view" hidden></pre>
      </div>
      <div id="cutter" class="cutter" hidden>
        <h3>Virtual cutter</h3>
        <label>start <input id="cutter-start" type="text" /></label>
        <label>end <input id="cutter-end" type="text" /></label>
        <label>label <input id="cutter-label" type="text" /></label>
        <button id="cutter-submit" type="button">cut fragment</button>
        <button id="cutter-cancel" type="button">cancel</button>
      </div>
    </aside>
  </main>
  <div id="notice" hidden></div>
`;

export class App {
  private query = "";
  private page = 1;
  private selection: SelectionState = emptySelection();
  private workspace: WorkspaceDoc | null = null;
  private lastResult: SearchResult | null = null;
  private cutterTarget: CutterPrefill | null = null;

  private readonly searchSeq = new LatestWins<SearchResult>();
  private readonly cloudSeq = new LatestWins<WordCloudPayload>();
  private readonly details = new DetailCache();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    root.innerHTML = SHELL;
    this.el("search-btn").addEventListener("click", () => {
      this.setQuery((this.el("search-box") as HTMLInputElement).value);
    });
    (this.el("search-box") as HTMLInputElement).addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        this.setQuery((this.el("search-box") as HTMLInputElement).value);
      }
    });
    this.el("pager-prev").addEventListener("click", () => this.turnPage(-1));
    this.el("pager-next").addEventListener("click", () => this.turnPage(1));
    this.el("ws-create").addEventListener("click", () => {
      void this.createWorkspace((this.el("ws-name") as HTMLInputElement).value);
    });
    this.el("ws-export").addEventListener("click", () => void this.exportWorkspace());
    this.el("cutter-submit").addEventListener("click", () => void this.submitCut());
    this.el("cutter-cancel").addEventListener("click", () => {
      this.el("cutter").hidden = true;
    });
  }

  el(id: string): HTMLElement {
    const found = this.root.querySelector<HTMLElement>(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found;
  }

  /** Overview first: facet bars from the match-all counts, then the search. */
  async boot(): Promise<void> {
    try {
      const overview = await this.api.facets();
      renderFacetPanel(this.el("facet-panel"), overview.counts, this.selection, BAR_WIDTH_PX, MIN_SEGMENT_PX, {
        onToggle: (facet, value, selected) => void this.toggleFacet(facet, value, selected),
      });
    } catch (error) {
      this.notice(`backend unavailable: ${(error as Error).message}`);
      return;
    }
    await this.refresh();
  }

  setQuery(text: string): Promise<void> {
    this.query = text.trim();
    (this.el("search-box") as HTMLInputElement).value = this.query;
    this.page = 1;
    return this.refresh();
  }

  toggleFacet(facet: string, value: string, selected: boolean): Promise<void> {
    this.selection = updateSelection(this.selection, facet, value, selected);
    this.page = 1;
    return this.refresh();
  }

  private turnPage(step: number): void {
    if (!this.lastResult) return;
    const last = Math.max(1, Math.ceil(this.lastResult.total / this.lastResult.page_size));
    const next = Math.min(Math.max(this.page + step, 1), last);
    if (next !== this.page) {
      this.page = next;
      void this.refresh();
    }
  }

  /** One search request and one cloud request per action; latest wins. */
  private async refresh(): Promise<void> {
    const params = { q: this.query, filters: filterParams(this.selection), page: this.page };
    const search = this.searchSeq
      .run(
        () => this.api.search(params),
        (result) => this.applyResult(result),
      )
      .catch((error) => this.notice(`search failed: ${(error as Error).message}`));
    const cloud = this.cloudSeq
      .run(
        () => this.api.wordCloud({ ...params, page: undefined }, CLOUD_K),
        (payload) => this.applyCloud(payload),
      )
      .catch((error) => this.notice(`word cloud failed: ${(error as Error).message}`));
    await Promise.all([search, cloud]);
  }

  private applyResult(result: SearchResult): void {
    this.lastResult = result;
    this.el("status").textContent = `${result.total} interviews · epoch ${result.epoch}`;
    renderFacetPanel(this.el("facet-panel"), result.facet_counts, this.selection, BAR_WIDTH_PX, MIN_SEGMENT_PX, {
      onToggle: (facet, value, selected) => void this.toggleFacet(facet, value, selected),
    });
    renderResults(this.el("result-list") as HTMLElement, result, this.details, {
      fetchDetail: (id) => this.api.interview(id),
      onFragmentClick: (prefill) => this.openCutter(prefill),
      onSave: (id) => void this.saveToWorkspace(id),
      onError: (message) => this.notice(message),
    });
    const pages = Math.max(1, Math.ceil(result.total / result.page_size));
    this.el("pager-label").textContent = `page ${result.page} / ${pages}`;
  }

  private applyCloud(payload: WordCloudPayload): void {
    renderWordCloud(this.el("wordcloud"), payload, {
      minPt: CLOUD_MIN_PT,
      maxPt: CLOUD_MAX_PT,
      // explicit user action: fill the box, do not auto-search
      onTermClick: (term) => {
        (this.el("search-box") as HTMLInputElement).value = term;
      },
    });
  }

  // -- workspace ---------------------------------------------------------

  async createWorkspace(name: string): Promise<void> {
    try {
      const created = await this.api.createWorkspace(name);
      this.workspace = created.workspace;
      this.renderWorkspace();
      this.notice(`workspace "${created.workspace.name}" created`);
    } catch (error) {
      this.notice(`could not create workspace: ${(error as Error).message}`);
    }
  }

  async saveToWorkspace(interviewId: string): Promise<void> {
    if (!this.workspace) {
      this.notice("create a workspace first");
      return;
    }
    try {
      const saved = await this.api.addItem(this.workspace.id, interviewId);
      const existing = this.workspace.items.find((item) => item.interview_id === interviewId);
      if (existing) {
        existing.note = saved.item.note;
      } else {
        this.workspace.items.push(saved.item);
      }
      this.renderWorkspace();
      this.notice(`saved ${interviewId}`);
    } catch (error) {
      this.notice(`could not save: ${(error as Error).message}`);
    }
  }

  openCutter(prefill: CutterPrefill): void {
    this.cutterTarget = prefill;
    (this.el("cutter-start") as HTMLInputElement).value = prefill.startLabel;
    (this.el("cutter-end") as HTMLInputElement).value = prefill.endLabel;
    (this.el("cutter-label") as HTMLInputElement).value = "";
    this.el("cutter").hidden = false;
  }

  async submitCut(): Promise<void> {
    if (!this.cutterTarget) return;
    if (!this.workspace) {
      this.notice("create a workspace first");
      return;
    }
    try {
      const start = timecodeToMs((this.el("cutter-start") as HTMLInputElement).value);
      const end = timecodeToMs((this.el("cutter-end") as HTMLInputElement).value);
      const label = (this.el("cutter-label") as HTMLInputElement).value;
      const cut = await this.api.cutFragment(this.workspace.id, {
        interview_id: this.cutterTarget.interviewId,
        start_ms: start,
        end_ms: end,
        label,
        note: "",
      });
      this.workspace.fragments.push(cut.fragment);
      this.el("cutter").hidden = true;
      this.renderWorkspace();
      this.notice(`fragment ${msToTimecode(start)}–${msToTimecode(end)} cut`);
    } catch (error) {
      this.notice(`could not cut fragment: ${(error as Error).message}`);
    }
  }

  async exportWorkspace(): Promise<void> {
    if (!this.workspace) return;
    try {
      const manifest = await this.api.exportWorkspace(this.workspace.id);
      const view = this.el("export-view");
      view.textContent = JSON.stringify(manifest, null, 2);
      view.hidden = false;
    } catch (error) {
      this.notice(`export failed: ${(error as Error).message}`);
    }
  }

  private renderWorkspace(): void {
    const info = this.el("ws-info");
    if (!this.workspace) {
      info.textContent = "";
      return;
    }
    info.innerHTML = "";
    const title = document.createElement("strong");
    title.textContent = this.workspace.name;
    const counts = document.createElement("span");
    counts.className = "ws-counts";
    counts.textContent = ` — ${this.workspace.items.length} items, ${this.workspace.fragments.length} fragments`;
    info.append(title, counts);
    this.el("ws-export").hidden = false;
  }

  notice(message: string): void {
    const el = this.el("notice");
    el.textContent = message;
    el.hidden = false;
  }
}

export function mount(root: HTMLElement, api: ApiClient = new ApiClient()): App {
  const app = new App(root, api);
  void app.boot();
  return app;
}

declare global {
  interface Window {
    ohtApp?: App;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    window.ohtApp = mount(root);
  }
}
