// View state and its round trip through the URL query string, so any view is
// shareable as a link. Toggles never trigger API calls; params always do.

import { MapParams, PubSet } from "./types.js";

export interface ViewState {
  params: MapParams;
  showDistributions: boolean;
  showAllNames: boolean;
  query: string;
  selectedId: string | null;
}

export const DEFAULT_PARAMS: MapParams = { pubset: "cited", emphasis: 1, k: 5, seed: 42 };

export function defaultViewState(): ViewState {
  return {
    params: { ...DEFAULT_PARAMS },
    showDistributions: false,
    showAllNames: false,
    query: "",
    selectedId: null,
  };
}

function clampInt(raw: string | null, lo: number, hi: number, fallback: number): number {
  if (raw === null) return fallback;
  const v = parseInt(raw, 10);
  if (isNaN(v)) return fallback;
  return Math.min(hi, Math.max(lo, v));
}

export function stateToQueryString(state: ViewState): string {
  const q = new URLSearchParams();
  const d = defaultViewState();
  const p = state.params;
  if (p.pubset !== d.params.pubset) q.set("pubset", p.pubset);
  if (p.emphasis !== d.params.emphasis) q.set("emphasis", String(p.emphasis));
  if (p.k !== d.params.k) q.set("k", String(p.k));
  if (p.seed !== d.params.seed) q.set("seed", String(p.seed));
  if (state.showDistributions) q.set("dist", "1");
  if (state.showAllNames) q.set("names", "1");
  if (state.query) q.set("q", state.query);
  if (state.selectedId) q.set("sel", state.selectedId);
  const s = q.toString();
  return s ? `?${s}` : "";
}

export function stateFromQueryString(search: string): ViewState {
  const q = new URLSearchParams(search.startsWith("?") ? search.slice(1) : search);
  const state = defaultViewState();
  const pubset = q.get("pubset");
  if (pubset === "cited" || pubset === "recent") state.params.pubset = pubset as PubSet;
  state.params.emphasis = clampInt(q.get("emphasis"), 0, 10, state.params.emphasis);
  state.params.k = clampInt(q.get("k"), 1, 10, state.params.k);
  state.params.seed = clampInt(q.get("seed"), -2147483648, 2147483647, state.params.seed);
  state.showDistributions = q.get("dist") === "1";
  state.showAllNames = q.get("names") === "1";
  state.query = q.get("q") ?? "";
  state.selectedId = q.get("sel");
  return state;
}
