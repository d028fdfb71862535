// @vitest-environment jsdom
/**
 * End-to-end smoke against the demo corpus: a scripted session drives the
 * real App with fetch answering from the backend's golden files, so every
 * API call the client makes is checked against a golden payload.
 */
import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";

const GOLDEN_DIR = resolve(dirname(fileURLToPath(import.meta.url)), "..", "..", "tests", "golden");

function golden(name: string): unknown {
  return JSON.parse(readFileSync(resolve(GOLDEN_DIR, `${name}.json`), "utf-8"));
}

const ROUTES: Record<string, string> = {
  "GET /api/facets": "01_facets",
  "GET /api/search": "02_search_all",
  "GET /api/wordcloud?k=10": "03_cloud_all",
  "GET /api/search?q=oorlog": "04_search_oorlog",
  "GET /api/wordcloud?q=oorlog&k=10": "05_cloud_oorlog",
  "GET /api/search?q=oorlog&f=genre:war": "06_search_oorlog_war",
  "GET /api/wordcloud?q=oorlog&f=genre:war&k=10": "07_cloud_oorlog_war",
  "GET /api/search?q=oorlog&f=genre:war&f=period:1940s": "08_search_oorlog_war_1940s",
  "GET /api/wordcloud?q=oorlog&f=genre:war&f=period:1940s&k=10": "09_cloud_oorlog_war_1940s",
  "GET /api/interviews/lib-001": "10_interview_detail",
  "POST /api/workspaces": "11_workspace_create",
  "POST /api/workspaces/id-0001/items": "12_item_add",
  "POST /api/workspaces/id-0001/fragments": "13_fragment_cut",
  "GET /api/workspaces/id-0001/export": "19_export",
};

// POST bodies the backend's golden session sent; the client must match them.
const GOLDEN_BODIES: Record<string, unknown> = {
  "POST /api/workspaces": { name: "Bevrijdingsproject" },
  "POST /api/workspaces/id-0001/items": { interview_id: "lib-001", note: "" },
  "POST /api/workspaces/id-0001/fragments": {
    interview_id: "lib-001",
    start_ms: 61000,
    end_ms: 125000,
    label: "bevrijding",
    note: "",
  },
};

interface Call {
  key: string;
  body?: unknown;
}

function goldenFetch(calls: Call[]): (url: string, init?: RequestInit) => Promise<Response> {
  return async (url, init) => {
    const key = `${init?.method ?? "GET"} ${decodeURIComponent(url)}`;
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    calls.push({ key, body });
    const name = ROUTES[key];
    if (!name) {
      return new Response(JSON.stringify({ error: `no golden for ${key}` }), { status: 500 });
    }
    return new Response(JSON.stringify(golden(name)), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  };
}

function input(root: HTMLElement, id: string): HTMLInputElement {
  return root.querySelector<HTMLInputElement>(`#${id}`)!;
}

function click(root: HTMLElement, selector: string): void {
  const el = root.querySelector<HTMLElement>(selector);
  expect(el, selector).not.toBeNull();
  el!.click();
}

describe("scripted demo session", () => {
  beforeEach(() => {
    // duplicate ids across tests confuse jsdom's scoped #id lookups
    document.body.innerHTML = "";
  });

  it("query -> facets -> cloud -> expand -> save -> cut -> export", async () => {
    const calls: Call[] = [];
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(root, new ApiClient(goldenFetch(calls)));

    // overview first
    await app.boot();
    expect(root.querySelector("#status")!.textContent).toBe("3 interviews · epoch 0");
    expect(root.querySelectorAll("#result-list .result")).toHaveLength(3);

    // query
    input(root, "search-box").value = "oorlog";
    click(root, "#search-btn");
    await vi.waitFor(() => expect(root.querySelector("#status")!.textContent).toContain("2 interviews"));

    // zoom and filter: two facet selections, most recent facet on top
    click(root, '#facet-panel [data-facet="genre"][data-value="war"]');
    await vi.waitFor(() =>
      expect(root.querySelector('#facet-panel [data-facet="genre"][data-value="war"]')!.classList.contains("selected")).toBe(true),
    );
    click(root, '#facet-panel [data-facet="period"][data-value="1940s"]');
    await vi.waitFor(() =>
      expect(root.querySelector('#facet-panel [data-facet="period"][data-value="1940s"]')!.classList.contains("selected")).toBe(true),
    );
    const rowOrder = [...root.querySelectorAll<HTMLElement>("#facet-panel .facet-row")].map((r) => r.dataset.facet);
    expect(rowOrder.slice(0, 2)).toEqual(["period", "genre"]);

    // word cloud rendered from the filtered scope, sizes linear in weight
    const cloudGolden = golden("09_cloud_oorlog_war_1940s") as { terms: { term: string; weight: number }[] };
    const cloudTerms = [...root.querySelectorAll<HTMLElement>("#wordcloud .cloud-term")];
    expect(cloudTerms.map((t) => t.textContent)).toEqual(cloudGolden.terms.map((t) => t.term));
    expect(cloudTerms[0].style.fontSize).toBe("30pt");

    // details-on-demand: expand the summary
    click(root, '[data-interview="lib-001"] .expand-btn');
    await vi.waitFor(() => {
      const detail = root.querySelector<HTMLElement>('[data-interview="lib-001"] .result-detail')!;
      expect(detail.hidden).toBe(false);
      expect(detail.querySelector(".full-summary")!.textContent!.length).toBeGreaterThan(200);
    });

    // project workspace: create, save the interview
    input(root, "ws-name").value = "Bevrijdingsproject";
    click(root, "#ws-create");
    await vi.waitFor(() => expect(root.querySelector("#ws-info")!.textContent).toContain("Bevrijdingsproject"));
    click(root, '[data-interview="lib-001"] .save-btn');
    await vi.waitFor(() => expect(root.querySelector("#ws-info")!.textContent).toContain("1 items"));

    // virtual cutter: fragment click pre-fills, scholar adjusts, cuts
    click(root, '[data-interview="lib-001"] .fragment-timecode');
    const cutter = root.querySelector<HTMLElement>("#cutter")!;
    expect(cutter.hidden).toBe(false);
    expect(input(root, "cutter-start").value).toBe("00:00:00.000");
    expect(input(root, "cutter-end").value).toBe("00:01:01.000");
    input(root, "cutter-start").value = "00:01:01.000";
    input(root, "cutter-end").value = "00:02:05.000";
    input(root, "cutter-label").value = "bevrijding";
    click(root, "#cutter-submit");
    await vi.waitFor(() => expect(root.querySelector("#ws-info")!.textContent).toContain("1 fragments"));

    // result presentation: citation-ready export
    click(root, "#ws-export");
    await vi.waitFor(() => {
      const view = root.querySelector<HTMLElement>("#export-view")!;
      expect(view.hidden).toBe(false);
      expect(view.textContent).toContain("00:01:01.000–00:02:05.000");
      expect(view.textContent).toContain("Herinneringen aan de bevrijding van Zwolle");
    });

    // every API call matches the golden session, in order
    expect(calls.map((c) => c.key)).toEqual([
      "GET /api/facets",
      "GET /api/search",
      "GET /api/wordcloud?k=10",
      "GET /api/search?q=oorlog",
      "GET /api/wordcloud?q=oorlog&k=10",
      "GET /api/search?q=oorlog&f=genre:war",
      "GET /api/wordcloud?q=oorlog&f=genre:war&k=10",
      "GET /api/search?q=oorlog&f=genre:war&f=period:1940s",
      "GET /api/wordcloud?q=oorlog&f=genre:war&f=period:1940s&k=10",
      "GET /api/interviews/lib-001",
      "POST /api/workspaces",
      "POST /api/workspaces/id-0001/items",
      "POST /api/workspaces/id-0001/fragments",
      "GET /api/workspaces/id-0001/export",
    ]);
    for (const call of calls) {
      if (call.key in GOLDEN_BODIES) {
        expect(call.body, call.key).toEqual(GOLDEN_BODIES[call.key]);
      }
    }
  });

  it("clicking a cloud term only fills the search box", async () => {
    const calls: Call[] = [];
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(root, new ApiClient(goldenFetch(calls)));
    await app.boot();

    const callsBefore = calls.length;
    const term = root.querySelector<HTMLElement>("#wordcloud .cloud-term")!;
    term.click();
    expect(input(root, "search-box").value).toBe(term.textContent);
    expect(calls.length).toBe(callsBefore); // no automatic search
  });
});
