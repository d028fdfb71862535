import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, LatestWins } from "../src/api.js";

interface Recorded {
  method: string;
  url: string;
  body?: unknown;
}

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function recordingClient(payload: unknown = { ok: true }, status = 200): { api: ApiClient; calls: Recorded[] } {
  const calls: Recorded[] = [];
  const api = new ApiClient(async (url, init) => {
    calls.push({
      method: init?.method ?? "GET",
      url,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return jsonResponse(payload, status);
  });
  return { api, calls };
}

describe("ApiClient URLs", () => {
  it("builds the search URL the backend documents", async () => {
    const { api, calls } = recordingClient();
    await api.search({ q: "oorlog", filters: ["genre:war", "period:1940s"] });
    expect(calls[0].url).toBe("/api/search?q=oorlog&f=genre:war&f=period:1940s");
  });

  it("omits empty query, default page, and empty filters", async () => {
    const { api, calls } = recordingClient();
    await api.search({ q: "", filters: [] });
    await api.search({ q: "", filters: [], page: 1 });
    await api.search({ q: "dijk", filters: [], page: 3 });
    expect(calls.map((c) => c.url)).toEqual(["/api/search", "/api/search", "/api/search?q=dijk&page=3"]);
  });

  it("always carries k on word-cloud requests", async () => {
    const { api, calls } = recordingClient();
    await api.wordCloud({ q: "", filters: [] }, 10);
    await api.wordCloud({ q: "oorlog", filters: ["genre:war"] }, 10);
    expect(calls.map((c) => c.url)).toEqual([
      "/api/wordcloud?k=10",
      "/api/wordcloud?q=oorlog&f=genre:war&k=10",
    ]);
  });

  it("posts JSON bodies", async () => {
    const { api, calls } = recordingClient({ workspace: {}, epoch: 0 });
    await api.createWorkspace("Project");
    expect(calls[0]).toEqual({
      method: "POST",
      url: "/api/workspaces",
      body: { name: "Project" },
    });
  });

  it("raises ApiError with the backend's message", async () => {
    const { api } = recordingClient({ error: "unknown interview 'X'" }, 404);
    await expect(api.interview("X")).rejects.toThrowError(ApiError);
    await expect(api.interview("X")).rejects.toThrowError("unknown interview 'X'");
  });
});

describe("LatestWins stale-response discard", () => {
  function deferred<T>(): { promise: Promise<T>; resolve: (v: T) => void; reject: (e: unknown) => void } {
    let resolve!: (v: T) => void;
    let reject!: (e: unknown) => void;
    const promise = new Promise<T>((res, rej) => {
      resolve = res;
      reject = rej;
    });
    return { promise, resolve, reject };
  }

  it("applies only the newest response when they arrive out of order", async () => {
    const seq = new LatestWins<string>();
    const applied: string[] = [];
    const slow = deferred<string>();
    const fast = deferred<string>();

    const first = seq.run(() => slow.promise, (v) => applied.push(v));
    const second = seq.run(() => fast.promise, (v) => applied.push(v));

    fast.resolve("new");
    expect(await second).toBe(true);
    slow.resolve("old"); // resolves after being superseded
    expect(await first).toBe(false);

    expect(applied).toEqual(["new"]);
  });

  it("drops failures of superseded requests silently", async () => {
    const seq = new LatestWins<string>();
    const applied: string[] = [];
    const slow = deferred<string>();
    const fast = deferred<string>();

    const first = seq.run(() => slow.promise, (v) => applied.push(v));
    const second = seq.run(() => fast.promise, (v) => applied.push(v));
    fast.resolve("kept");
    await second;
    slow.reject(new Error("network reset"));
    expect(await first).toBe(false);
    expect(applied).toEqual(["kept"]);
  });

  it("propagates failures of the current request", async () => {
    const seq = new LatestWins<string>();
    await expect(seq.run(() => Promise.reject(new Error("boom")), () => {})).rejects.toThrowError("boom");
  });
});
