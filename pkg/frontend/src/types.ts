/** Wire types mirroring the JSON the backend serves. */

export interface FacetValueCount {
  value: string;
  count: number;
}

export interface FacetCount {
  name: string;
  label: string;
  values: FacetValueCount[];
  missing_count: number;
}

export interface FragmentHit {
  segment_id: number;
  start_ms: number;
  end_ms: number;
  match_spans: [number, number][];
  snippet: string;
  snippet_spans: [number, number][];
}

export interface InterviewHit {
  interview_id: string;
  score: number;
  title: string;
  collection: string;
  summary_excerpt: string;
  metadata_match: boolean;
  more_fragments: boolean;
  fragment_hits: FragmentHit[];
}

export interface SearchResult {
  total: number;
  page: number;
  page_size: number;
  hits: InterviewHit[];
  facet_counts: FacetCount[];
  epoch: number;
}

export interface WordCloudTerm {
  term: string;
  weight: number;
  raw: number;
}

export interface WordCloudPayload {
  terms: WordCloudTerm[];
  scope_total: number;
  epoch: number;
}

export interface SegmentDoc {
  segment_id: number;
  start_ms: number;
  end_ms: number;
  speaker: string | null;
  text: string;
}

export interface InterviewDetail {
  id: string;
  title: string;
  collection: string;
  speakers: string[];
  date: string | null;
  duration_ms: number;
  summary: string;
  media_url: string | null;
  facets: Record<string, string[]>;
  segments: SegmentDoc[];
  epoch: number;
}

export interface FacetSchemaEntry {
  name: string;
  label: string;
  display_order: number;
}

export interface FacetsOverview {
  schema: FacetSchemaEntry[];
  counts: FacetCount[];
  epoch: number;
}

export interface WorkspaceItemDoc {
  interview_id: string;
  added_at: string;
  note: string;
}

export interface WorkspaceFragmentDoc {
  fragment_id: string;
  interview_id: string;
  start_ms: number;
  end_ms: number;
  label: string;
  note: string;
}

export interface WorkspaceDoc {
  id: string;
  name: string;
  created_at: string;
  updated_at: string;
  items: WorkspaceItemDoc[];
  fragments: WorkspaceFragmentDoc[];
}

export interface ExportManifest {
  workspace: { id: string; name: string; created_at: string };
  exported_at: string;
  items: unknown[];
  fragments: { citation: string }[];
  annotations: unknown[];
  epoch: number;
}
