// Dwell selection state machine: hovering one target continuously for the
// confirm threshold fires exactly one selection. Short departures (up to the
// grace period) pause the accumulated hover time without resetting it; longer
// ones reset. Time is injected, so the machine is fully deterministic.

export interface DwellOptions {
  confirmThresholdMs?: number;
  graceMs?: number;
}

export const DEFAULT_CONFIRM_MS = 250;
export const DEFAULT_GRACE_MS = 50;

interface TargetState {
  accumulated: number;
  fired: boolean;
  lastHoverEnd: number;
}

export class DwellTracker {
  readonly confirmThresholdMs: number;
  readonly graceMs: number;

  private current: string | null = null;
  private currentSince = 0;
  private states = new Map<string, TargetState>();
  private selections: string[] = [];
  private listeners: Array<(target: string) => void> = [];

  constructor(options: DwellOptions = {}) {
    this.confirmThresholdMs = options.confirmThresholdMs ?? DEFAULT_CONFIRM_MS;
    this.graceMs = options.graceMs ?? DEFAULT_GRACE_MS;
  }

  onSelect(listener: (target: string) => void): void {
    this.listeners.push(listener);
  }

  /** All selections fired so far, in order. */
  get fired(): readonly string[] {
    return this.selections;
  }

  /** Dwell progress in [0, 1] for the currently hovered target. */
  get progress(): number {
    if (this.current === null) return 0;
    const state = this.states.get(this.current);
    if (state === undefined || state.fired) return 0;
    return Math.min(1, state.accumulated / this.confirmThresholdMs);
  }

  get hovered(): string | null {
    return this.current;
  }

  /** Report that from time `t` on, the pointer rests on `target` (null = off
   * every target). Times must be non-decreasing. */
  update(t: number, target: string | null): void {
    this.account(t);
    if (target === this.current) return;
    if (this.current !== null) {
      const state = this.states.get(this.current);
      if (state !== undefined) state.lastHoverEnd = t;
    }
    if (target !== null) {
      let state = this.states.get(target);
      if (state === undefined) {
        state = { accumulated: 0, fired: false, lastHoverEnd: -Infinity };
        this.states.set(target, state);
      } else if (t - state.lastHoverEnd > this.graceMs) {
        // Away longer than the grace period: a fresh interval.
        state.accumulated = 0;
        state.fired = false;
      }
    }
    this.current = target;
    this.currentSince = t;
    this.maybeFire();
  }

  /** Advance time without a hover change (drives firing mid-hover). */
  tick(t: number): void {
    this.account(t);
  }

  private account(t: number): void {
    if (this.current !== null && t > this.currentSince) {
      const state = this.states.get(this.current);
      if (state !== undefined) {
        state.accumulated += t - this.currentSince;
      }
    }
    this.currentSince = Math.max(this.currentSince, t);
    this.maybeFire();
  }

  private maybeFire(): void {
    if (this.current === null) return;
    const state = this.states.get(this.current);
    if (state === undefined || state.fired) return;
    if (state.accumulated >= this.confirmThresholdMs) {
      state.fired = true;
      this.selections.push(this.current);
      for (const listener of this.listeners) listener(this.current);
    }
  }
}
