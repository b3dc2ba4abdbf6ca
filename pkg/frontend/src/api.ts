/** Thin typed client over the service's four endpoints.
 *
 * The fetch implementation is injected so tests can drive the client
 * without a network; the default is the browser's fetch.
 */
import type { GraphDoc, GraphQuery, MembersDoc, SessionInfo } from "./types.js";

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
  text(): Promise<string>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export type PostLike = (url: string, body: unknown) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number | null = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface SessionRequest {
  fixture?: string;
  csv?: string;
  axes: string[];
  color: string;
  standardize: boolean;
}

/** Build the graph-endpoint URL for a query (stable parameter order). */
export function graphUrl(base: string, session: string, q: GraphQuery): string {
  const params = new URLSearchParams();
  params.set("eps", String(q.eps));
  params.set("policy", q.policy);
  params.set("seed", String(q.seed));
  params.set("coloring", q.coloring);
  params.set("layout_seed", String(q.layoutSeed));
  if (q.k !== null) params.set("k", String(q.k));
  params.set("iterations", String(q.iterations));
  return `${base}/sessions/${session}/graph?${params}`;
}

export function membersUrl(
  base: string,
  session: string,
  ball: number,
  q: GraphQuery,
): string {
  const params = new URLSearchParams();
  params.set("eps", String(q.eps));
  params.set("policy", q.policy);
  params.set("seed", String(q.seed));
  return `${base}/sessions/${session}/balls/${ball}/members?${params}`;
}

async function errorDetail(res: FetchResponse): Promise<string> {
  try {
    const doc = (await res.json()) as { detail?: unknown };
    if (typeof doc.detail === "string") return doc.detail;
    if (doc.detail !== undefined) return JSON.stringify(doc.detail);
  } catch {
    /* non-JSON error body; fall through to the generic message */
  }
  return `request failed with status ${res.status}`;
}

async function decode<T>(res: FetchResponse): Promise<T> {
  if (!res.ok) throw new ApiError(await errorDetail(res), res.status);
  try {
    return (await res.json()) as T;
  } catch {
    throw new ApiError("malformed response payload", res.status);
  }
}

const defaultFetch: FetchLike = (url) => fetch(url);
const defaultPost: PostLike = (url, body) =>
  fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = defaultFetch,
    private readonly postFn: PostLike = defaultPost,
  ) {}

  async fixtures(): Promise<string[]> {
    const doc = await decode<{ fixtures: string[] }>(
      await this.fetchFn(`${this.base}/fixtures`),
    );
    return doc.fixtures;
  }

  async openSession(req: SessionRequest): Promise<SessionInfo> {
    return decode<SessionInfo>(await this.postFn(`${this.base}/sessions`, req));
  }

  async graph(session: string, q: GraphQuery): Promise<GraphDoc> {
    return decode<GraphDoc>(await this.fetchFn(graphUrl(this.base, session, q)));
  }

  async members(
    session: string,
    ball: number,
    q: GraphQuery,
  ): Promise<MembersDoc> {
    return decode<MembersDoc>(
      await this.fetchFn(membersUrl(this.base, session, ball, q)),
    );
  }
}
