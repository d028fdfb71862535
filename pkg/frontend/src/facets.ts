/**
 * Visual facets: every facet is one stacked bar whose segment lengths are
 * proportional to result counts. Selecting a value moves its facet to the
 * top of the stack, keeping a history of selected facets.
 */

import type { FacetCount } from "./types.js";

// Fixed categorical palette, cycling by value rank; purely cosmetic.
export const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#76b7b2",
  "#edc948",
  "#b07aa1",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
];

export interface BarSegment {
  value: string;
  count: number;
  pixelWidth: number;
  color: string;
  selected: boolean;
}

export interface FacetBarLayout {
  facet: string;
  segments: BarSegment[];
  position: number;
}

/**
 * width(v) = round(barWidth * count(v) / total) with zero-count values
 * omitted; widths under minSegmentPx are clamped to minSegmentPx and the
 * remaining width is redistributed proportionally; the rounding residue
 * goes to the largest segment.
 */
export function layoutFacetBar(
  counts: { value: string; count: number }[],
  barWidthPx: number,
  minSegmentPx: number,
  selected: ReadonlySet<string> = new Set(),
): BarSegment[] {
  const visible = counts.filter((entry) => entry.count > 0);
  if (!visible.length || barWidthPx <= 0) {
    return [];
  }
  const total = visible.reduce((sum, entry) => sum + entry.count, 0);
  // a minimum that cannot fit every segment would overflow the bar; drop it
  const minPx = minSegmentPx * visible.length <= barWidthPx ? minSegmentPx : 0;
  const clamped = new Set<number>();
  visible.forEach((entry, i) => {
    if (Math.round((barWidthPx * entry.count) / total) < minPx) {
      clamped.add(i);
    }
  });

  const widths = new Array<number>(visible.length).fill(0);
  let remaining = barWidthPx;
  let freeCountTotal = 0;
  visible.forEach((entry, i) => {
    if (clamped.has(i)) {
      widths[i] = minPx;
      remaining -= minPx;
    } else {
      freeCountTotal += entry.count;
    }
  });
  visible.forEach((entry, i) => {
    if (!clamped.has(i) && freeCountTotal > 0) {
      widths[i] = Math.round((Math.max(remaining, 0) * entry.count) / freeCountTotal);
    }
  });

  const residue = barWidthPx - widths.reduce((sum, w) => sum + w, 0);
  if (residue !== 0) {
    let largest = 0;
    visible.forEach((entry, i) => {
      if (entry.count > visible[largest].count) largest = i;
    });
    widths[largest] = Math.max(widths[largest] + residue, 0);
  }

  return visible.map((entry, i) => ({
    value: entry.value,
    count: entry.count,
    pixelWidth: widths[i],
    color: PALETTE[i % PALETTE.length],
    selected: selected.has(entry.value),
  }));
}

/** Facets with at least one selected value, most recently selected first. */
export interface SelectionState {
  history: string[];
  filters: Map<string, Set<string>>;
}

export function emptySelection(): SelectionState {
  return { history: [], filters: new Map() };
}

/**
 * Toggle one facet value. Toggling a value on moves its facet to position 0
 * of the history; toggling a facet's last value off drops the facet from the
 * history (other facets keep their order).
 */
export function updateSelection(
  state: SelectionState,
  facet: string,
  value: string,
  selected: boolean,
): SelectionState {
  const filters = new Map([...state.filters].map(([name, values]) => [name, new Set(values)]));
  let history = [...state.history];
  const values = filters.get(facet) ?? new Set<string>();
  if (selected) {
    values.add(value);
    filters.set(facet, values);
    history = [facet, ...history.filter((name) => name !== facet)];
  } else {
    values.delete(value);
    if (values.size) {
      filters.set(facet, values);
    } else {
      filters.delete(facet);
      history = history.filter((name) => name !== facet);
    }
  }
  return { history, filters };
}

/** "facet:value" pairs in a stable order (facet asc, value asc). */
export function filterParams(state: SelectionState): string[] {
  const pairs: string[] = [];
  for (const facet of [...state.filters.keys()].sort()) {
    for (const value of [...(state.filters.get(facet) ?? [])].sort()) {
      pairs.push(`${facet}:${value}`);
    }
  }
  return pairs;
}

/** Stack order: selection history first, then unselected facets in schema order. */
export function facetStackOrder(state: SelectionState, schemaOrder: string[]): string[] {
  const unselected = schemaOrder.filter((name) => !state.history.includes(name));
  return [...state.history, ...unselected];
}

export interface FacetBarHandlers {
  onToggle(facet: string, value: string, selected: boolean): void;
}

/** Render the whole facet stack into `container`. */
export function renderFacetPanel(
  container: HTMLElement,
  counts: FacetCount[],
  state: SelectionState,
  barWidthPx: number,
  minSegmentPx: number,
  handlers: FacetBarHandlers,
): FacetBarLayout[] {
  const byName = new Map(counts.map((fc) => [fc.name, fc]));
  const order = facetStackOrder(state, counts.map((fc) => fc.name));
  container.textContent = "";
  const layouts: FacetBarLayout[] = [];

  order.forEach((name, position) => {
    const facet = byName.get(name);
    if (!facet) return;
    const selectedValues = state.filters.get(name) ?? new Set<string>();
    const segments = layoutFacetBar(facet.values, barWidthPx, minSegmentPx, selectedValues);
    layouts.push({ facet: name, segments, position });

    const row = document.createElement("div");
    row.className = "facet-row";
    row.dataset.facet = name;

    const label = document.createElement("span");
    label.className = "facet-label";
    label.textContent = facet.label;
    row.appendChild(label);

    const bar = document.createElement("div");
    bar.className = "facet-bar";
    bar.style.width = `${barWidthPx}px`;
    if (!segments.length) {
      bar.classList.add("facet-bar-empty");
      bar.textContent = "no values";
    }
    for (const segment of segments) {
      const el = document.createElement("button");
      el.type = "button";
      el.className = "facet-segment" + (segment.selected ? " selected" : "");
      el.dataset.facet = name;
      el.dataset.value = segment.value;
      el.style.width = `${segment.pixelWidth}px`;
      el.style.background = segment.color;
      el.title = `${segment.value} — ${segment.count} interviews`;
      el.addEventListener("click", () => handlers.onToggle(name, segment.value, !segment.selected));
      bar.appendChild(el);
    }
    row.appendChild(bar);
    container.appendChild(row);
  });
  return layouts;
}
