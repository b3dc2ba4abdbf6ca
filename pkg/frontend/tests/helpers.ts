/** Shared test doubles: canned fetch responses, deferred promises, and a
 * hand-cranked timer for exercising the debounce deterministically. */
import type { FetchResponse } from "../src/api.js";

export function jsonResponse(doc: unknown, status = 200): FetchResponse {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(JSON.parse(JSON.stringify(doc))),
    text: () => Promise.resolve(JSON.stringify(doc)),
  };
}

export function textResponse(body: string, status = 200): FetchResponse {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(JSON.parse(body)),
    text: () => Promise.resolve(body),
  };
}

export interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (err: unknown) => void;
}

export function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (err: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

/** Let queued microtasks and zero-delay macrotasks run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

interface ScheduledCall {
  fn: () => void;
  due: number;
  id: number;
  cancelled: boolean;
}

/** Deterministic replacement for setTimeout/clearTimeout. */
export class FakeTimers {
  private now = 0;
  private nextId = 1;
  private readonly queue: ScheduledCall[] = [];

  readonly schedule = (fn: () => void, ms: number): unknown => {
    const call: ScheduledCall = {
      fn,
      due: this.now + ms,
      id: this.nextId++,
      cancelled: false,
    };
    this.queue.push(call);
    return call.id;
  };

  readonly cancel = (handle: unknown): void => {
    const found = this.queue.find((c) => c.id === handle);
    if (found) found.cancelled = true;
  };

  advance(ms: number): void {
    this.now += ms;
    const ready = this.queue
      .filter((c) => !c.cancelled && c.due <= this.now)
      .sort((a, b) => a.due - b.due || a.id - b.id);
    for (const call of ready) {
      call.cancelled = true; // one-shot
      call.fn();
    }
  }

  pendingCount(): number {
    return this.queue.filter((c) => !c.cancelled).length;
  }
}
