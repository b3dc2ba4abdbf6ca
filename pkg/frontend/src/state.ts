/** Explorer state machine: one source of truth, stale-response-proof.
 *
 * Server-side query parameters (eps, policy, seed, coloring, layout
 * seed, spring k, iterations) live in `query`; changing any of them
 * triggers a fetch — eps changes debounced (the server rebuilds the
 * whole cover per eps), everything else immediately, and an immediate
 * fetch flushes a pending debounce so the sent query always reflects
 * every control. View-side parameters (filter threshold, window lock)
 * never refetch; they re-derive the scene from the already-fetched
 * graph.
 *
 * Every fetch carries a version number; a response is applied only if
 * it is still the newest request, so the rendered view always
 * corresponds to the last completed fetch and a slow stale reply can
 * never overwrite a newer one. On errors the last good view is kept
 * and the message is surfaced in `error`.
 */
import type { Client } from "./api.js";
import type {
  GraphDoc,
  GraphQuery,
  MembersDoc,
  Policy,
  SessionInfo,
} from "./types.js";

export interface ViewState {
  query: GraphQuery;
  threshold: number | null;
  /** locked [vmin, vmax], or null for auto-windowing per graph */
  lockedWindow: [number, number] | null;
  /** last successfully fetched graph and the query it answers */
  graph: GraphDoc | null;
  shownQuery: GraphQuery | null;
  selected: number | null;
  members: MembersDoc | null;
  loading: boolean;
  error: string | null;
}

export interface StoreOptions {
  debounceMs?: number;
  schedule?: (fn: () => void, ms: number) => unknown;
  cancel?: (handle: unknown) => void;
}

export type Listener = (state: ViewState) => void;

export const DEBOUNCE_MS = 300;

export class ExplorerStore {
  private state: ViewState;
  private readonly listeners = new Set<Listener>();
  private version = 0;
  private membersVersion = 0;
  private pending: unknown = null;
  private readonly debounceMs: number;
  private readonly schedule: (fn: () => void, ms: number) => unknown;
  private readonly cancel: (handle: unknown) => void;

  constructor(
    private readonly client: Client,
    readonly session: SessionInfo,
    opts: StoreOptions = {},
  ) {
    this.debounceMs = opts.debounceMs ?? DEBOUNCE_MS;
    this.schedule =
      opts.schedule ?? ((fn, ms) => setTimeout(fn, ms) as unknown);
    this.cancel =
      opts.cancel ?? ((handle) => clearTimeout(handle as Parameters<typeof clearTimeout>[0]));
    this.state = {
      query: {
        eps: 1.5,
        policy: "sequential",
        seed: 0,
        coloring: session.color,
        layoutSeed: 0,
        k: null,
        iterations: 50,
      },
      threshold: null,
      lockedWindow: null,
      graph: null,
      shownQuery: null,
      selected: null,
      members: null,
      loading: false,
      error: null,
    };
  }

  getState(): ViewState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  private emit(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  /** eps: debounced — rapid slider movement coalesces into one fetch. */
  setEps(eps: number): void {
    this.emit({ query: { ...this.state.query, eps } });
    if (this.pending !== null) this.cancel(this.pending);
    this.pending = this.schedule(() => {
      this.pending = null;
      void this.fetchGraph();
    }, this.debounceMs);
  }

  setColoring(coloring: string): void {
    this.emit({ query: { ...this.state.query, coloring } });
    this.fetchNow();
  }

  setPolicy(policy: Policy): void {
    this.emit({ query: { ...this.state.query, policy } });
    this.fetchNow();
  }

  setSeed(seed: number): void {
    this.emit({ query: { ...this.state.query, seed } });
    this.fetchNow();
  }

  setLayoutSeed(layoutSeed: number): void {
    this.emit({ query: { ...this.state.query, layoutSeed } });
    this.fetchNow();
  }

  setSpringK(k: number | null): void {
    this.emit({ query: { ...this.state.query, k } });
    this.fetchNow();
  }

  /** view-side: no fetch, the scene is re-derived from the cached graph */
  setThreshold(threshold: number | null): void {
    this.emit({ threshold });
  }

  /** lock the window to explicit bounds, or null to release */
  lockWindow(window: [number, number] | null): void {
    this.emit({ lockedWindow: window });
  }

  select(ball: number | null): void {
    this.membersVersion += 1;
    if (ball === null) {
      this.emit({ selected: null, members: null });
      return;
    }
    this.emit({ selected: ball, members: null });
    const version = this.membersVersion;
    const shown = this.state.shownQuery;
    if (shown === null) return;
    void this.client
      .members(this.session.session, ball, shown)
      .then((doc) => {
        if (version === this.membersVersion) this.emit({ members: doc });
      })
      .catch((err: unknown) => {
        if (version === this.membersVersion) {
          this.emit({ error: describe(err) });
        }
      });
  }

  /** flush any pending debounce and fetch with the current query */
  fetchNow(): void {
    if (this.pending !== null) {
      this.cancel(this.pending);
      this.pending = null;
    }
    void this.fetchGraph();
  }

  private async fetchGraph(): Promise<void> {
    this.version += 1;
    const version = this.version;
    const query = this.state.query;
    this.emit({ loading: true });
    try {
      const graph = await this.client.graph(this.session.session, query);
      if (version !== this.version) return; // superseded: drop silently
      this.emit({
        graph,
        shownQuery: query,
        loading: false,
        error: null,
        // a new graph invalidates the previous selection's member list
        selected: null,
        members: null,
      });
    } catch (err) {
      if (version !== this.version) return;
      this.emit({ loading: false, error: describe(err) });
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof Error) return err.message;
  return String(err);
}
