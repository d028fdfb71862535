/** HTTP client for the exploration backend, plus stale-response discard. */

import type {
  ExportManifest,
  FacetsOverview,
  InterviewDetail,
  SearchResult,
  WordCloudPayload,
  WorkspaceDoc,
  WorkspaceFragmentDoc,
  WorkspaceItemDoc,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface SearchParams {
  q: string;
  filters: string[]; // "facet:value" pairs, already sorted
  page?: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

function searchQueryString(params: SearchParams): string {
  const parts: string[] = [];
  if (params.q) {
    parts.push(`q=${encodeURIComponent(params.q)}`);
  }
  for (const pair of params.filters) {
    // keep the ":" readable; encode the rest
    const [facet, ...valueParts] = pair.split(":");
    parts.push(`f=${encodeURIComponent(facet)}:${encodeURIComponent(valueParts.join(":"))}`);
  }
  if (params.page && params.page > 1) {
    parts.push(`page=${params.page}`);
  }
  return parts.length ? `?${parts.join("&")}` : "";
}

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
    private readonly base = "",
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        const payload = (await response.json()) as { error?: string };
        if (payload.error) detail = payload.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  search(params: SearchParams): Promise<SearchResult> {
    return this.request("GET", `/api/search${searchQueryString(params)}`);
  }

  wordCloud(params: SearchParams, k: number): Promise<WordCloudPayload> {
    const qs = searchQueryString({ ...params, page: undefined });
    return this.request("GET", `/api/wordcloud${qs}${qs ? "&" : "?"}k=${k}`);
  }

  facets(): Promise<FacetsOverview> {
    return this.request("GET", "/api/facets");
  }

  interview(id: string): Promise<InterviewDetail> {
    return this.request("GET", `/api/interviews/${encodeURIComponent(id)}`);
  }

  createWorkspace(name: string): Promise<{ workspace: WorkspaceDoc; epoch: number }> {
    return this.request("POST", "/api/workspaces", { name });
  }

  listWorkspaces(): Promise<{ workspaces: WorkspaceDoc[]; epoch: number }> {
    return this.request("GET", "/api/workspaces");
  }

  addItem(workspaceId: string, interviewId: string, note = ""): Promise<{ item: WorkspaceItemDoc; epoch: number }> {
    return this.request("POST", `/api/workspaces/${encodeURIComponent(workspaceId)}/items`, {
      interview_id: interviewId,
      note,
    });
  }

  cutFragment(
    workspaceId: string,
    body: { interview_id: string; start_ms: number; end_ms: number; label: string; note: string },
  ): Promise<{ fragment: WorkspaceFragmentDoc; epoch: number }> {
    return this.request("POST", `/api/workspaces/${encodeURIComponent(workspaceId)}/fragments`, body);
  }

  exportWorkspace(workspaceId: string): Promise<ExportManifest> {
    return this.request("GET", `/api/workspaces/${encodeURIComponent(workspaceId)}/export`);
  }
}

/**
 * Applies only the latest in-flight request: every run() takes a ticket from
 * a monotone sequence, and a response is dropped when a newer ticket exists
 * by the time it resolves. Failed stale requests are dropped silently too.
 */
export class LatestWins<T> {
  private sequence = 0;

  async run(task: () => Promise<T>, apply: (value: T) => void): Promise<boolean> {
    const ticket = ++this.sequence;
    let value: T;
    try {
      value = await task();
    } catch (error) {
      if (ticket !== this.sequence) {
        return false; // a newer request superseded this one; drop its failure too
      }
      throw error;
    }
    if (ticket !== this.sequence) {
      return false;
    }
    apply(value);
    return true;
  }

  get current(): number {
    return this.sequence;
  }
}
