/**
 * Word cloud rendering: a weighted inline-flow layout. Font size scales
 * linearly with the term weight; clicking a term sets it as the query text
 * (an explicit user action, never an automatic expansion).
 */

import type { WordCloudPayload } from "./types.js";

export function fontSizePt(weight: number, minPt: number, maxPt: number): number {
  return minPt + (maxPt - minPt) * weight;
}

export interface WordCloudOptions {
  minPt: number;
  maxPt: number;
  onTermClick(term: string): void;
}

export function renderWordCloud(container: HTMLElement, cloud: WordCloudPayload, options: WordCloudOptions): void {
  container.textContent = "";
  if (!cloud.terms.length) {
    const placeholder = document.createElement("span");
    placeholder.className = "cloud-empty";
    placeholder.textContent = "no terms";
    container.appendChild(placeholder);
    return;
  }
  for (const term of cloud.terms) {
    const el = document.createElement("button");
    el.type = "button";
    el.className = "cloud-term";
    el.textContent = term.term;
    el.style.fontSize = `${fontSizePt(term.weight, options.minPt, options.maxPt)}pt`;
    el.title = `weight ${term.weight.toFixed(3)}`;
    el.addEventListener("click", () => options.onTermClick(term.term));
    container.appendChild(el);
  }
}
