// DOM wiring: renders the scene as SVG and binds the control panel, query box
// and researcher panel. All layout math lives in scene.ts; this file only
// moves documents between the data source and the page.

import { ApiSource, ApiError, DataSource, StaticSource } from "./api.js";
import { Scene, buildScene, applyQuery } from "./scene.js";
import { ViewState, stateFromQueryString, stateToQueryString } from "./state.js";
import { MapDocument, QueryDocument, SchemaViolation } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const VIEW_W = 800;
const VIEW_H = 600;
const MARGIN = 40;
const PLACEHOLDER_PHOTO =
  "data:image/svg+xml," +
  encodeURIComponent(
    `<svg xmlns="${SVG_NS}" width="96" height="96"><rect width="96" height="96" fill="#ddd"/>` +
      `<circle cx="48" cy="36" r="16" fill="#aaa"/><ellipse cx="48" cy="82" rx="28" ry="20" fill="#aaa"/></svg>`,
  );

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

interface Extent {
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

function mapExtent(doc: MapDocument): Extent {
  const xs = doc.points.map((p) => p.x);
  const ys = doc.points.map((p) => p.y);
  const pad = (lo: number, hi: number) => (hi > lo ? 0 : 1);
  const x0 = Math.min(...xs);
  const x1 = Math.max(...xs);
  const y0 = Math.min(...ys);
  const y1 = Math.max(...ys);
  return { x0: x0 - pad(x0, x1), x1: x1 + pad(x0, x1), y0: y0 - pad(y0, y1), y1: y1 + pad(y0, y1) };
}

class App {
  private state: ViewState;
  private mapDoc: MapDocument | null = null;
  private queryDoc: QueryDocument | null = null;
  private lastValid: ViewState;

  constructor(private source: DataSource) {
    this.state = stateFromQueryString(window.location.search);
    this.lastValid = structuredClone(this.state);
  }

  async start(): Promise<void> {
    this.bindControls();
    this.syncControls();
    await this.refreshMap();
    if (this.state.query) await this.runQuery(this.state.query);
    if (this.state.selectedId) await this.showResearcher(this.state.selectedId);
  }

  private pushUrl(): void {
    history.replaceState(null, "", window.location.pathname + stateToQueryString(this.state));
  }

  private toast(message: string): void {
    const box = el<HTMLDivElement>("toast");
    box.textContent = message;
    box.style.display = "block";
    window.setTimeout(() => (box.style.display = "none"), 4000);
  }

  private banner(message: string | null): void {
    const box = el<HTMLDivElement>("error-banner");
    box.textContent = message ?? "";
    box.style.display = message ? "block" : "none";
  }

  private bindControls(): void {
    const kSlider = el<HTMLInputElement>("k-slider");
    kSlider.addEventListener("change", () => {
      this.state.params.k = parseInt(kSlider.value, 10);
      void this.refreshMap();
    });
    kSlider.addEventListener("input", () => {
      el<HTMLSpanElement>("k-value").textContent = kSlider.value;
    });
    el<HTMLSelectElement>("emphasis-select").addEventListener("change", (ev) => {
      this.state.params.emphasis = parseInt((ev.target as HTMLSelectElement).value, 10);
      void this.refreshMap();
    });
    el<HTMLSelectElement>("pubset-select").addEventListener("change", (ev) => {
      this.state.params.pubset = (ev.target as HTMLSelectElement).value as "cited" | "recent";
      void this.refreshMap();
    });
    el<HTMLInputElement>("toggle-distributions").addEventListener("change", (ev) => {
      this.state.showDistributions = (ev.target as HTMLInputElement).checked;
      this.renderScene();
      this.pushUrl();
    });
    el<HTMLInputElement>("toggle-names").addEventListener("change", (ev) => {
      this.state.showAllNames = (ev.target as HTMLInputElement).checked;
      this.renderScene();
      this.pushUrl();
    });
    el<HTMLFormElement>("query-form").addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.runQuery(el<HTMLInputElement>("query-input").value);
    });
    el<HTMLButtonElement>("query-clear").addEventListener("click", () => {
      this.state.query = "";
      this.queryDoc = null;
      el<HTMLInputElement>("query-input").value = "";
      el<HTMLDivElement>("query-message").textContent = "";
      this.renderScene();
      this.pushUrl();
    });
  }

  private syncControls(): void {
    el<HTMLInputElement>("k-slider").value = String(this.state.params.k);
    el<HTMLSpanElement>("k-value").textContent = String(this.state.params.k);
    el<HTMLSelectElement>("emphasis-select").value = String(this.state.params.emphasis);
    el<HTMLSelectElement>("pubset-select").value = this.state.params.pubset;
    el<HTMLInputElement>("toggle-distributions").checked = this.state.showDistributions;
    el<HTMLInputElement>("toggle-names").checked = this.state.showAllNames;
    el<HTMLInputElement>("query-input").value = this.state.query;
  }

  private async refreshMap(): Promise<void> {
    try {
      this.mapDoc = await this.source.fetchMap(this.state.params);
      this.banner(null);
      this.lastValid = structuredClone(this.state);
      this.renderScene();
      this.pushUrl();
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return;
      if (err instanceof ApiError && err.status === 400) {
        this.state.params = { ...this.lastValid.params };
        this.syncControls();
        this.toast(`rejected: ${err.message}`);
        return;
      }
      if (err instanceof SchemaViolation) {
        this.banner(`malformed map document: ${err.message}`);
        return;
      }
      this.banner(err instanceof Error ? err.message : String(err));
    }
  }

  private async runQuery(text: string): Promise<void> {
    const message = el<HTMLDivElement>("query-message");
    try {
      this.queryDoc = await this.source.fetchQuery(text, this.state.params, 5);
      this.state.query = text;
      const dropped = this.queryDoc.dropped_terms;
      message.textContent = dropped.length ? `ignored: ${dropped.join(", ")}` : "";
      this.renderScene();
      this.pushUrl();
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return;
      if (err instanceof ApiError) {
        message.textContent = err.message;
        return;
      }
      throw err;
    }
  }

  private async showResearcher(id: string): Promise<void> {
    const panel = el<HTMLDivElement>("researcher-panel");
    try {
      const doc = await this.source.fetchResearcher(id);
      el<HTMLHeadingElement>("r-name").textContent = doc.name;
      el<HTMLSpanElement>("r-affiliation").textContent = doc.affiliation;
      el<HTMLSpanElement>("r-keywords").textContent = doc.keywords.join(", ");
      el<HTMLSpanElement>("r-citations").textContent = String(doc.citation_count);
      const link = el<HTMLAnchorElement>("r-link");
      link.href = doc.scholar_url;
      link.textContent = "profile";
      const photo = el<HTMLImageElement>("r-photo");
      photo.onerror = () => {
        photo.onerror = null;
        photo.src = PLACEHOLDER_PHOTO;
      };
      photo.src = doc.photo_url || PLACEHOLDER_PHOTO;
      panel.style.display = "block";
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        panel.style.display = "block";
        el<HTMLHeadingElement>("r-name").textContent = "researcher not found";
        return;
      }
      throw err;
    }
  }

  private clearResearcher(): void {
    if (this.state.selectedId) return;
    el<HTMLDivElement>("researcher-panel").style.display = "none";
  }

  private renderScene(): void {
    if (!this.mapDoc) return;
    let scene: Scene = buildScene(this.mapDoc, {
      showDistributions: this.state.showDistributions,
      showAllNames: this.state.showAllNames,
    });
    if (this.queryDoc) scene = applyQuery(scene, this.queryDoc);

    const svg = el<HTMLElement>("map-svg") as unknown as SVGSVGElement;
    while (svg.firstChild) svg.removeChild(svg.firstChild);

    const ext = mapExtent(this.mapDoc);
    const sx = (x: number) => MARGIN + ((x - ext.x0) / (ext.x1 - ext.x0)) * (VIEW_W - 2 * MARGIN);
    const sy = (y: number) => VIEW_H - MARGIN - ((y - ext.y0) / (ext.y1 - ext.y0)) * (VIEW_H - 2 * MARGIN);
    const scale = (VIEW_W - 2 * MARGIN) / (ext.x1 - ext.x0);

    for (const e of scene.ellipses) {
      const node = document.createElementNS(SVG_NS, "ellipse");
      node.setAttribute("cx", String(sx(e.cx)));
      node.setAttribute("cy", String(sy(e.cy)));
      node.setAttribute("rx", String(e.rx * scale));
      node.setAttribute("ry", String(e.ry * scale));
      node.setAttribute("transform", `rotate(${-e.rotationDeg} ${sx(e.cx)} ${sy(e.cy)})`);
      node.setAttribute("fill", e.fill);
      node.setAttribute("fill-opacity", "0.15");
      svg.appendChild(node);
    }
    for (const d of scene.dots) {
      const node = document.createElementNS(SVG_NS, "circle");
      node.setAttribute("cx", String(sx(d.x)));
      node.setAttribute("cy", String(sy(d.y)));
      node.setAttribute("r", String(d.radius));
      node.setAttribute("fill", d.fill);
      if (d.outlined) {
        node.setAttribute("stroke", "#000");
        node.setAttribute("stroke-width", "2");
      }
      node.addEventListener("mouseenter", () => void this.showResearcher(d.id));
      node.addEventListener("mouseleave", () => this.clearResearcher());
      node.addEventListener("click", () => {
        this.state.selectedId = this.state.selectedId === d.id ? null : d.id;
        this.pushUrl();
        void this.showResearcher(d.id);
      });
      svg.appendChild(node);
    }
    for (const label of scene.labels) {
      const node = document.createElementNS(SVG_NS, "text");
      node.setAttribute("x", String(sx(label.x) + 9));
      node.setAttribute("y", String(sy(label.y) + 4));
      node.setAttribute("font-size", "11");
      node.textContent = label.text;
      svg.appendChild(node);
    }
  }
}

export function createSource(): DataSource {
  const staticDir = new URLSearchParams(window.location.search).get("static");
  return staticDir ? new StaticSource(staticDir) : new ApiSource("");
}

if (typeof document !== "undefined" && document.getElementById("map-svg")) {
  void new App(createSource()).start();
}
