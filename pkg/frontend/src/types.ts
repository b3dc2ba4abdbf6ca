/** Wire types for the tdabm HTTP service. */

export interface GraphNodeDoc {
  id: number;
  landmark: number;
  size: number;
  colorings: Record<string, number>;
  x?: number;
  y?: number;
}

export interface GraphEdgeDoc {
  a: number;
  b: number;
  intersection: number;
}

export interface GraphDoc {
  schema: number;
  eps: number;
  nodes: GraphNodeDoc[];
  edges: GraphEdgeDoc[];
  members: Record<string, number[]>;
}

export interface SessionInfo {
  session: string;
  n: number;
  k: number;
  axes: string[];
  color: string;
  colorings: string[];
}

export interface MembersDoc {
  ball: number;
  landmark: number;
  eps: number;
  columns: string[];
  rows: Array<Record<string, number>>;
}

export type Policy = "sequential" | "random";

/** Server-side query: every field maps to a graph-endpoint parameter. */
export interface GraphQuery {
  eps: number;
  policy: Policy;
  seed: number;
  coloring: string;
  layoutSeed: number;
  k: number | null;
  iterations: number;
}

export function queryEquals(a: GraphQuery, b: GraphQuery): boolean {
  return (
    a.eps === b.eps &&
    a.policy === b.policy &&
    a.seed === b.seed &&
    a.coloring === b.coloring &&
    a.layoutSeed === b.layoutSeed &&
    a.k === b.k &&
    a.iterations === b.iterations
  );
}
