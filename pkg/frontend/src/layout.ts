import {
  forceCenter,
  forceCollide,
  forceLink,
  forceManyBody,
  forceSimulation,
} from "d3-force";
import type { SimulationLinkDatum, SimulationNodeDatum } from "d3-force";

interface LayoutNode extends SimulationNodeDatum {
  id: string;
}

export interface Point {
  x: number;
  y: number;
}

// Force-directed positions for the topology; the service ships no
// coordinates. The simulation is ticked synchronously a fixed number of
// times so the same model always lays out the same way.
export function computeLayout(
  assetIds: string[],
  edges: { source: string; target: string }[],
  width: number,
  height: number,
): Map<string, Point> {
  const nodes: LayoutNode[] = assetIds.map((id) => ({ id }));
  const known = new Set(assetIds);
  const links: SimulationLinkDatum<LayoutNode>[] = edges
    .filter((edge) => known.has(edge.source) && known.has(edge.target))
    .map((edge) => ({ source: edge.source, target: edge.target }));
  const simulation = forceSimulation(nodes)
    .force(
      "link",
      forceLink<LayoutNode, SimulationLinkDatum<LayoutNode>>(links)
        .id((node) => node.id)
        .distance(120),
    )
    .force("charge", forceManyBody().strength(-500))
    .force("center", forceCenter(width / 2, height / 2))
    .force("collide", forceCollide(52))
    .stop();
  simulation.tick(250);
  const margin = 64;
  const positions = new Map<string, Point>();
  for (const node of nodes) {
    positions.set(node.id, {
      x: Math.min(width - margin, Math.max(margin, node.x ?? width / 2)),
      y: Math.min(height - margin, Math.max(margin, node.y ?? height / 2)),
    });
  }
  return positions;
}
