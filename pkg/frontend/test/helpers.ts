import { readFile } from "node:fs/promises";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

export const TESTDATA = join(dirname(fileURLToPath(import.meta.url)), "..", "testdata");

export async function loadJson(...parts: string[]): Promise<any> {
  return JSON.parse(await readFile(join(TESTDATA, ...parts), "utf8"));
}

/** fetch() stand-in that serves files under testdata/, for StaticSource. */
export function diskFetch(root: string): typeof fetch {
  return (async (input: any) => {
    const url = String(input);
    try {
      const body = await readFile(join(TESTDATA, root, url.replace(/^disk:\/\//, "")), "utf8");
      return new Response(body, { status: 200, headers: { "content-type": "application/json" } });
    } catch {
      return new Response(JSON.stringify({ error: "not_found", message: url }), { status: 404 });
    }
  }) as typeof fetch;
}
