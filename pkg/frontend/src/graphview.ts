import type { ModelDoc } from "./types";
import { computeLayout } from "./layout";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 920;
const HEIGHT = 640;
const NODE_WIDTH = 128;
const NODE_HEIGHT = 40;

function svgElement<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

// Topology canvas: assets as nodes, dependency edges as lines. Markings —
// attack surface, surface delta, chain membership, selection — are CSS
// classes set from service responses; the view never derives them itself.
export class GraphView {
  private readonly container: HTMLElement;
  private readonly onSelect: (ref: string | null) => void;
  private nodeElements = new Map<string, SVGGElement>();
  private edgeElements = new Map<string, SVGGElement>();

  constructor(container: HTMLElement, onSelect: (ref: string | null) => void) {
    this.container = container;
    this.onSelect = onSelect;
  }

  setModel(model: ModelDoc): void {
    this.container.textContent = "";
    this.nodeElements.clear();
    this.edgeElements.clear();
    if (model.assets.length === 0) {
      const hint = document.createElement("p");
      hint.className = "canvas-hint";
      hint.dataset.role = "canvas-hint";
      hint.textContent = "The model has no assets. Load a GraphML model to explore it.";
      this.container.append(hint);
      return;
    }

    const svg = svgElement("svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute("role", "img");
    svg.addEventListener("click", () => this.onSelect(null));

    const defs = svgElement("defs");
    const marker = svgElement("marker");
    marker.setAttribute("id", "arrowhead");
    marker.setAttribute("viewBox", "0 0 10 10");
    marker.setAttribute("refX", "9");
    marker.setAttribute("refY", "5");
    marker.setAttribute("markerWidth", "7");
    marker.setAttribute("markerHeight", "7");
    marker.setAttribute("orient", "auto-start-reverse");
    const tip = svgElement("path");
    tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
    marker.append(tip);
    defs.append(marker);
    svg.append(defs);

    const positions = computeLayout(
      model.assets.map((asset) => asset.id),
      model.edges.map((edge) => ({ source: edge.source, target: edge.target })),
      WIDTH,
      HEIGHT,
    );

    const edgeLayer = svgElement("g");
    for (const edge of model.edges) {
      const from = positions.get(edge.source);
      const to = positions.get(edge.target);
      if (!from || !to) continue;
      const group = svgElement("g");
      group.classList.add("edge");
      group.dataset.edgeId = edge.id;
      const line = svgElement("line");
      line.setAttribute("x1", String(from.x));
      line.setAttribute("y1", String(from.y));
      line.setAttribute("x2", String(to.x));
      line.setAttribute("y2", String(to.y));
      if (edge.directed) line.setAttribute("marker-end", "url(#arrowhead)");
      const title = svgElement("title");
      title.textContent = `${edge.id}: ${edge.source} ${edge.directed ? "→" : "↔"} ${edge.target}`;
      group.append(title, line);
      group.addEventListener("click", (event) => {
        event.stopPropagation();
        this.onSelect(edge.id);
      });
      edgeLayer.append(group);
      this.edgeElements.set(edge.id, group);
    }
    svg.append(edgeLayer);

    const nodeLayer = svgElement("g");
    for (const asset of model.assets) {
      const position = positions.get(asset.id);
      if (!position) continue;
      const group = svgElement("g");
      group.classList.add("node");
      group.dataset.assetId = asset.id;
      group.setAttribute("transform", `translate(${position.x}, ${position.y})`);
      const box = svgElement("rect");
      box.setAttribute("x", String(-NODE_WIDTH / 2));
      box.setAttribute("y", String(-NODE_HEIGHT / 2));
      box.setAttribute("width", String(NODE_WIDTH));
      box.setAttribute("height", String(NODE_HEIGHT));
      box.setAttribute("rx", "7");
      const text = svgElement("text");
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("dominant-baseline", "middle");
      text.textContent = asset.label || asset.id;
      const title = svgElement("title");
      title.textContent = asset.id;
      group.append(title, box, text);
      group.addEventListener("click", (event) => {
        event.stopPropagation();
        this.onSelect(asset.id);
      });
      nodeLayer.append(group);
      this.nodeElements.set(asset.id, group);
    }
    svg.append(nodeLayer);
    this.container.append(svg);
  }

  /**
   * Mark the attack surface. `assets` is the current surface (null before
   * any analysis); `lost` are assets that were on the previous surface but
   * are not on this one — the what-if delta.
   */
  setSurface(assets: string[] | null, lost: string[] = []): void {
    const onSurface = new Set(assets ?? []);
    const dropped = new Set(lost);
    for (const [id, element] of this.nodeElements) {
      const marked = assets !== null && onSurface.has(id);
      element.classList.toggle("surface", marked);
      element.classList.toggle("surface-lost", dropped.has(id));
      if (assets === null) {
        delete element.dataset.surface;
      } else {
        element.dataset.surface = marked ? "true" : "false";
      }
    }
  }

  /** Highlight the elements of one exploit chain (null clears). */
  setChain(path: string[] | null): void {
    const members = new Set(path ?? []);
    for (const [id, element] of this.nodeElements) {
      element.classList.toggle("chain-member", members.has(id));
    }
    for (const [id, element] of this.edgeElements) {
      element.classList.toggle("chain-member", members.has(id));
    }
  }

  setSelected(ref: string | null): void {
    for (const [id, element] of this.nodeElements) {
      element.classList.toggle("selected", id === ref);
    }
    for (const [id, element] of this.edgeElements) {
      element.classList.toggle("selected", id === ref);
    }
  }
}
