/**
 * Result list: expandable summaries (detail fetched once and cached),
 * fragment hits as clickable time-codes that pre-fill the virtual cutter,
 * and save-to-workspace buttons. A failed action surfaces a notice and
 * never clears the list.
 */

import { msToTimecode } from "./timecode.js";
import type { FragmentHit, InterviewDetail, InterviewHit, SearchResult } from "./types.js";

/** One detail fetch per interview; expand/collapse reuses the promise. */
export class DetailCache {
  private cache = new Map<string, Promise<InterviewDetail>>();

  get(id: string, fetcher: (id: string) => Promise<InterviewDetail>): Promise<InterviewDetail> {
    let pending = this.cache.get(id);
    if (!pending) {
      pending = fetcher(id).catch((error) => {
        this.cache.delete(id); // do not cache failures
        throw error;
      });
      this.cache.set(id, pending);
    }
    return pending;
  }
}

export interface CutterPrefill {
  interviewId: string;
  startMs: number;
  endMs: number;
  startLabel: string;
  endLabel: string;
}

export function cutterPrefill(interviewId: string, fragment: Pick<FragmentHit, "start_ms" | "end_ms">): CutterPrefill {
  return {
    interviewId,
    startMs: fragment.start_ms,
    endMs: fragment.end_ms,
    startLabel: msToTimecode(fragment.start_ms),
    endLabel: msToTimecode(fragment.end_ms),
  };
}

export interface ResultHandlers {
  fetchDetail(id: string): Promise<InterviewDetail>;
  onFragmentClick(prefill: CutterPrefill): void;
  onSave(interviewId: string): void;
  onError(message: string): void;
}

function highlighted(text: string, spans: [number, number][]): DocumentFragment {
  const out = document.createDocumentFragment();
  let cursor = 0;
  for (const [start, end] of spans) {
    if (start > cursor) {
      out.appendChild(document.createTextNode(text.slice(cursor, start)));
    }
    const mark = document.createElement("mark");
    mark.textContent = text.slice(start, end);
    out.appendChild(mark);
    cursor = end;
  }
  if (cursor < text.length) {
    out.appendChild(document.createTextNode(text.slice(cursor)));
  }
  return out;
}

export function renderResults(
  container: HTMLElement,
  result: SearchResult,
  cache: DetailCache,
  handlers: ResultHandlers,
): void {
  container.textContent = "";
  for (const hit of result.hits) {
    container.appendChild(renderHit(hit, cache, handlers));
  }
}

function renderHit(hit: InterviewHit, cache: DetailCache, handlers: ResultHandlers): HTMLElement {
  const item = document.createElement("li");
  item.className = "result";
  item.dataset.interview = hit.interview_id;

  const head = document.createElement("div");
  head.className = "result-head";
  const title = document.createElement("span");
  title.className = "result-title";
  title.textContent = hit.title;
  const collection = document.createElement("span");
  collection.className = "result-collection";
  collection.textContent = hit.collection;
  head.append(title, collection);
  if (hit.metadata_match) {
    const badge = document.createElement("span");
    badge.className = "badge";
    badge.textContent = "metadata match";
    head.appendChild(badge);
  }
  item.appendChild(head);

  const summary = document.createElement("p");
  summary.className = "result-summary";
  summary.textContent = hit.summary_excerpt;
  item.appendChild(summary);

  const fragments = document.createElement("ul");
  fragments.className = "fragments";
  for (const fragment of hit.fragment_hits) {
    const row = document.createElement("li");
    const timecode = document.createElement("button");
    timecode.type = "button";
    timecode.className = "fragment-timecode";
    timecode.textContent = `${msToTimecode(fragment.start_ms)}–${msToTimecode(fragment.end_ms)}`;
    timecode.addEventListener("click", () => {
      handlers.onFragmentClick(cutterPrefill(hit.interview_id, fragment));
      const player = item.querySelector<HTMLMediaElement>("video, audio");
      if (player) {
        try {
          player.currentTime = fragment.start_ms / 1000;
        } catch {
          // media element without loaded metadata; seeking is best-effort
        }
      }
    });
    const snippet = document.createElement("span");
    snippet.className = "fragment-snippet";
    snippet.appendChild(highlighted(fragment.snippet, fragment.snippet_spans));
    row.append(timecode, snippet);
    fragments.appendChild(row);
  }
  if (hit.more_fragments) {
    const more = document.createElement("li");
    more.className = "fragments-more";
    more.textContent = "more fragments in this interview…";
    fragments.appendChild(more);
  }
  item.appendChild(fragments);

  const actions = document.createElement("div");
  actions.className = "result-actions";

  const expand = document.createElement("button");
  expand.type = "button";
  expand.className = "expand-btn";
  expand.textContent = "expand";
  const detail = document.createElement("div");
  detail.className = "result-detail";
  detail.hidden = true;
  expand.addEventListener("click", () => {
    if (!detail.hidden) {
      detail.hidden = true;
      expand.textContent = "expand";
      return;
    }
    cache
      .get(hit.interview_id, handlers.fetchDetail)
      .then((full) => {
        renderDetail(detail, full);
        detail.hidden = false;
        expand.textContent = "collapse";
      })
      .catch((error) => handlers.onError(`could not load ${hit.interview_id}: ${error.message ?? error}`));
  });

  const save = document.createElement("button");
  save.type = "button";
  save.className = "save-btn";
  save.textContent = "save to workspace";
  save.addEventListener("click", () => handlers.onSave(hit.interview_id));

  actions.append(expand, save);
  item.appendChild(actions);
  item.appendChild(detail);
  return item;
}

function renderDetail(container: HTMLElement, detail: InterviewDetail): void {
  container.textContent = "";
  const summary = document.createElement("p");
  summary.className = "full-summary";
  summary.textContent = detail.summary;
  container.appendChild(summary);

  if (detail.media_url) {
    const player = document.createElement("video");
    player.className = "media-player";
    player.controls = true;
    player.preload = "none";
    player.src = detail.media_url;
    container.appendChild(player);
  }

  const meta = document.createElement("p");
  meta.className = "detail-meta";
  const speakers = detail.speakers.join(", ") || "unknown speakers";
  meta.textContent = `${speakers} · ${detail.date ?? "undated"} · ${msToTimecode(detail.duration_ms)}`;
  container.appendChild(meta);
}
