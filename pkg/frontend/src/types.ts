// JSON document shapes shared with the backend API (see the schemas shipped
// with the Python package). Guards reject malformed documents before render.

export type PubSet = "cited" | "recent";

export interface MapParams {
  pubset: PubSet;
  emphasis: number;
  k: number;
  seed: number;
}

export interface MapPoint {
  id: string;
  name: string;
  x: number;
  y: number;
  cluster: number;
  color: number;
}

export interface MapEllipse {
  cx: number;
  cy: number;
  rx: number;
  ry: number;
  rotation: number;
  color: number;
}

export interface MapDocument {
  params: MapParams;
  points: MapPoint[];
  ellipses: MapEllipse[];
  explained_variance: [number, number];
}

export interface QueryDocument {
  matched_terms: string[];
  dropped_terms: string[];
  top: { id: string; score: number }[];
  scores: Record<string, number>;
}

export interface ResearcherDocument {
  id: string;
  name: string;
  affiliation: string;
  keywords: string[];
  citation_count: number;
  scholar_url: string;
  photo_url: string;
}

export class SchemaViolation extends Error {}

function fail(msg: string): never {
  throw new SchemaViolation(msg);
}

const isNum = (v: unknown): v is number => typeof v === "number" && isFinite(v);
const isStr = (v: unknown): v is string => typeof v === "string";

export function assertMapDocument(doc: any): MapDocument {
  if (typeof doc !== "object" || doc === null) fail("map document is not an object");
  const p = doc.params;
  if (!p || (p.pubset !== "cited" && p.pubset !== "recent")) fail("bad params.pubset");
  if (!isNum(p.emphasis) || !isNum(p.k) || !isNum(p.seed)) fail("bad params");
  if (!Array.isArray(doc.points)) fail("points is not an array");
  for (const pt of doc.points) {
    if (!isStr(pt.id) || !isStr(pt.name) || !isNum(pt.x) || !isNum(pt.y)) fail(`bad point ${JSON.stringify(pt)}`);
    if (!isNum(pt.cluster) || !isNum(pt.color)) fail(`bad point cluster/color for ${pt.id}`);
  }
  if (!Array.isArray(doc.ellipses)) fail("ellipses is not an array");
  for (const e of doc.ellipses) {
    if (!isNum(e.cx) || !isNum(e.cy) || !(e.rx > 0) || !(e.ry > 0) || !isNum(e.rotation) || !isNum(e.color))
      fail("bad ellipse");
  }
  if (!Array.isArray(doc.explained_variance) || doc.explained_variance.length !== 2)
    fail("bad explained_variance");
  return doc as MapDocument;
}

export function assertQueryDocument(doc: any): QueryDocument {
  if (typeof doc !== "object" || doc === null) fail("query document is not an object");
  if (!Array.isArray(doc.matched_terms) || !Array.isArray(doc.dropped_terms)) fail("bad terms");
  if (!Array.isArray(doc.top)) fail("bad top");
  for (const t of doc.top) if (!isStr(t.id) || !isNum(t.score)) fail("bad top entry");
  if (typeof doc.scores !== "object" || doc.scores === null) fail("bad scores");
  return doc as QueryDocument;
}

export function assertResearcherDocument(doc: any): ResearcherDocument {
  if (typeof doc !== "object" || doc === null) fail("researcher document is not an object");
  for (const f of ["id", "name", "affiliation", "scholar_url", "photo_url"])
    if (!isStr(doc[f])) fail(`bad researcher field ${f}`);
  if (!Array.isArray(doc.keywords)) fail("bad keywords");
  if (!isNum(doc.citation_count)) fail("bad citation_count");
  return doc as ResearcherDocument;
}
