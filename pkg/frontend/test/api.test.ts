import { describe, expect, it } from "vitest";
import { ApiError, ApiSource, StaticSource } from "../src/api.js";
import { MapParams } from "../src/types.js";
import { diskFetch } from "./helpers.js";

const PARAMS: MapParams = { pubset: "cited", emphasis: 1, k: 5, seed: 42 };

describe("StaticSource", () => {
  const source = () => new StaticSource("", diskFetch("default"));

  it("serves the exported map", async () => {
    const doc = await source().fetchMap(PARAMS);
    expect(doc.points).toHaveLength(10);
    expect(doc.ellipses).toHaveLength(5);
  });

  it("resolves queries by keyword substring in either direction", async () => {
    const s = source();
    const exact = await s.fetchQuery("algorithms", PARAMS, 5);
    const partial = await s.fetchQuery("algorithm", PARAMS, 5);
    const superstring = await s.fetchQuery("graph algorithms", PARAMS, 5);
    expect(exact.top[0].id).toBe("ada-chen");
    expect(partial).toEqual(exact);
    expect(superstring).toEqual(exact);
  });

  it("rejects empty and unknown queries", async () => {
    await expect(source().fetchQuery("   ", PARAMS, 5)).rejects.toMatchObject({ code: "empty_query" });
    await expect(source().fetchQuery("qqqqq", PARAMS, 5)).rejects.toThrow(ApiError);
  });

  it("serves researcher details with all six fields", async () => {
    const doc = await source().fetchResearcher("ada-chen");
    expect(doc.name).toBe("Ada Chen");
    expect(doc.affiliation).toBe("Institute of Computing");
    expect(doc.keywords).toEqual(["algorithms", "complexity theory"]);
    expect(doc.citation_count).toBe(5400);
    expect(doc.scholar_url).toMatch(/^https:\/\//);
    expect(doc.photo_url).toMatch(/^https:\/\//);
  });

  it("raises 404 for an unknown researcher id", async () => {
    await expect(source().fetchResearcher("nobody")).rejects.toMatchObject({ status: 404, code: "unknown_id" });
  });
});

describe("ApiSource", () => {
  it("encodes map params in the query string", async () => {
    const urls: string[] = [];
    const fetchFn = (async (input: any) => {
      urls.push(String(input));
      return new Response(JSON.stringify({ params: PARAMS, points: [], ellipses: [], explained_variance: [1, 0] }));
    }) as typeof fetch;
    await new ApiSource("http://x", fetchFn).fetchMap({ ...PARAMS, k: 3, seed: 7 });
    expect(urls[0]).toBe("http://x/api/map?pubset=cited&emphasis=1&k=3&seed=7");
  });

  it("aborts a superseded in-flight map fetch (latest wins)", async () => {
    const seen: AbortSignal[] = [];
    const fetchFn = (async (_input: any, init?: RequestInit) => {
      seen.push(init!.signal as AbortSignal);
      await new Promise((r) => setTimeout(r, 5));
      return new Response(JSON.stringify({ params: PARAMS, points: [], ellipses: [], explained_variance: [1, 0] }));
    }) as typeof fetch;
    const source = new ApiSource("", fetchFn);
    const first = source.fetchMap(PARAMS);
    const second = source.fetchMap({ ...PARAMS, k: 3 });
    expect(seen[0].aborted).toBe(true);
    expect(seen[1].aborted).toBe(false);
    await Promise.allSettled([first]);
    await second;
  });

  it("surfaces backend error codes", async () => {
    const fetchFn = (async () =>
      new Response(JSON.stringify({ error: "invalid_k", message: "k out of range" }), { status: 400 })) as typeof fetch;
    await expect(new ApiSource("", fetchFn).fetchMap(PARAMS)).rejects.toMatchObject({
      status: 400,
      code: "invalid_k",
    });
  });

  it("propagates empty_query from the query endpoint", async () => {
    const fetchFn = (async () =>
      new Response(JSON.stringify({ error: "empty_query", message: "no usable terms" }), { status: 400 })) as typeof fetch;
    await expect(new ApiSource("", fetchFn).fetchQuery("the", PARAMS, 5)).rejects.toMatchObject({
      code: "empty_query",
    });
  });
});
