// View state reducer. Three regions: the keyword rail (chronological,
// newest appended), exactly one main reference panel, and a history rail
// ordered most-recent-first. Raw transcript text is never part of the view.

import type { BundleWire, KeywordWire, KeywordsUpdate, ReferenceReady } from "./protocol.js";

export interface ShownBundle {
  keywordId: string;
  kind: string;
  bundle: BundleWire;
}

export interface ViewState {
  keywords: KeywordWire[];
  main: ShownBundle | null;
  history: ShownBundle[];
  historyCap: number;
}

export function initialView(historyCap = 24): ViewState {
  return { keywords: [], main: null, history: [], historyCap };
}

export function applyKeywords(state: ViewState, update: KeywordsUpdate): ViewState {
  const known = new Set(state.keywords.map((k) => k.id));
  const fresh = update.keywords.filter((k) => !known.has(k.id));
  if (fresh.length === 0) return state;
  return { ...state, keywords: [...state.keywords, ...fresh] };
}

const LIST_KINDS = new Set(["image_set", "search_results", "news"]);

/** Kind-shape guard: list kinds carry non-empty arrays, the rest objects. */
export function payloadMatchesKind(kind: string, payload: unknown): boolean {
  if (LIST_KINDS.has(kind)) {
    return Array.isArray(payload) && payload.length > 0;
  }
  return typeof payload === "object" && payload !== null && !Array.isArray(payload);
}

/** Apply a reference_ready frame; mismatched payloads leave the view as-is. */
export function applyReference(state: ViewState, ready: ReferenceReady): ViewState {
  if (!payloadMatchesKind(ready.kind, ready.bundle.payload)) {
    console.warn("skipping bundle with mismatched payload shape",
                 ready.kind, ready.keyword_id);
    return state;
  }
  const shown: ShownBundle = {
    keywordId: ready.keyword_id,
    kind: ready.kind,
    bundle: ready.bundle,
  };
  const history = state.main === null ? state.history : [state.main, ...state.history];
  return { ...state, main: shown, history: history.slice(0, state.historyCap) };
}

/** Invariant guard used by tests and debug builds. */
export function checkInvariants(state: ViewState): void {
  const ids = state.keywords.map((k) => k.id);
  if (new Set(ids).size !== ids.length) {
    throw new Error("keyword rail contains duplicate ids");
  }
  if (state.history.length > state.historyCap) {
    throw new Error("history exceeded its cap");
  }
}
