// Data sources. ApiSource talks to the live JSON API; StaticSource reads a
// static export directory with the same document shapes. Both return parsed,
// guard-checked documents; no numeric work happens here.

import {
  MapDocument,
  MapParams,
  QueryDocument,
  ResearcherDocument,
  assertMapDocument,
  assertQueryDocument,
  assertResearcherDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public code: string, message: string) {
    super(message);
  }
}

export interface DataSource {
  fetchMap(params: MapParams): Promise<MapDocument>;
  fetchQuery(text: string, params: MapParams, top: number): Promise<QueryDocument>;
  fetchResearcher(id: string): Promise<ResearcherDocument>;
}

type Fetch = typeof fetch;

async function readJson(resp: Response): Promise<any> {
  if (!resp.ok) {
    let code = "http_error";
    let message = `HTTP ${resp.status}`;
    try {
      const body = await resp.json();
      if (body && body.error) {
        code = body.error;
        message = body.message ?? message;
      }
    } catch {
      // non-JSON error body; keep defaults
    }
    throw new ApiError(resp.status, code, message);
  }
  return resp.json();
}

function paramsQuery(params: MapParams): URLSearchParams {
  return new URLSearchParams({
    pubset: params.pubset,
    emphasis: String(params.emphasis),
    k: String(params.k),
    seed: String(params.seed),
  });
}

/** Live backend. Superseded in-flight requests are aborted (latest wins). */
export class ApiSource implements DataSource {
  private mapAbort: AbortController | null = null;
  private queryAbort: AbortController | null = null;

  constructor(private baseUrl: string, private fetchFn: Fetch = fetch) {}

  async fetchMap(params: MapParams): Promise<MapDocument> {
    this.mapAbort?.abort();
    this.mapAbort = new AbortController();
    const url = `${this.baseUrl}/api/map?${paramsQuery(params)}`;
    const resp = await this.fetchFn(url, { signal: this.mapAbort.signal });
    return assertMapDocument(await readJson(resp));
  }

  async fetchQuery(text: string, params: MapParams, top: number): Promise<QueryDocument> {
    this.queryAbort?.abort();
    this.queryAbort = new AbortController();
    const q = paramsQuery(params);
    q.set("text", text);
    q.set("top", String(top));
    const resp = await this.fetchFn(`${this.baseUrl}/api/query?${q}`, {
      signal: this.queryAbort.signal,
    });
    return assertQueryDocument(await readJson(resp));
  }

  async fetchResearcher(id: string): Promise<ResearcherDocument> {
    const resp = await this.fetchFn(`${this.baseUrl}/api/researcher/${encodeURIComponent(id)}`);
    return assertResearcherDocument(await readJson(resp));
  }
}

interface QueryIndexEntry {
  keyword: string;
  file: string;
}

/**
 * Static export directory. The map was built with fixed params, so parameter
 * changes are ignored; queries resolve against the precomputed per-keyword
 * files via case-insensitive substring match in either direction.
 */
export class StaticSource implements DataSource {
  private researchers: Map<string, ResearcherDocument> | null = null;
  private queryIndex: QueryIndexEntry[] | null = null;

  constructor(private baseUrl: string, private fetchFn: Fetch = fetch) {}

  private async load(path: string): Promise<any> {
    return readJson(await this.fetchFn(`${this.baseUrl}/${path}`));
  }

  async fetchMap(_params: MapParams): Promise<MapDocument> {
    return assertMapDocument(await this.load("map.json"));
  }

  private async loadQueryIndex(): Promise<QueryIndexEntry[]> {
    if (this.queryIndex === null) {
      const doc = await this.load("queries/index.json");
      if (!doc || !Array.isArray(doc.queries)) throw new ApiError(500, "bad_index", "malformed query index");
      this.queryIndex = doc.queries as QueryIndexEntry[];
    }
    return this.queryIndex;
  }

  async fetchQuery(text: string, _params: MapParams, _top: number): Promise<QueryDocument> {
    const needle = text.trim().toLowerCase();
    if (!needle) throw new ApiError(400, "empty_query", "query text is empty");
    const index = await this.loadQueryIndex();
    const hit = index.find((e) => {
      const kw = e.keyword.toLowerCase();
      return kw.includes(needle) || needle.includes(kw);
    });
    if (!hit) throw new ApiError(404, "unknown_query", `no precomputed query matches "${text}"`);
    return assertQueryDocument(await this.load(hit.file));
  }

  async fetchResearcher(id: string): Promise<ResearcherDocument> {
    if (this.researchers === null) {
      const list = await this.load("researchers.json");
      if (!Array.isArray(list)) throw new ApiError(500, "bad_index", "malformed researcher list");
      this.researchers = new Map(list.map((r: any) => [assertResearcherDocument(r).id, r]));
    }
    const doc = this.researchers.get(id);
    if (!doc) throw new ApiError(404, "unknown_id", `no researcher with id ${id}`);
    return doc;
  }
}
