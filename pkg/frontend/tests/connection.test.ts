import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { HubConnection } from "../src/connection.js";
import type { ServerMessage } from "../src/protocol.js";

class FakeWebSocket {
  static instances: FakeWebSocket[] = [];
  static readonly CONNECTING = 0;
  static readonly OPEN = 1;
  static readonly CLOSING = 2;
  static readonly CLOSED = 3;

  readyState = FakeWebSocket.CONNECTING;
  sent: string[] = [];
  onopen: (() => void) | null = null;
  onmessage: ((event: { data: string }) => void) | null = null;
  onclose: ((event: { code: number; reason: string }) => void) | null = null;

  constructor(public url: string) {
    FakeWebSocket.instances.push(this);
  }

  send(frame: string): void {
    this.sent.push(frame);
  }

  close(): void {
    this.triggerClose(1000, "");
  }

  triggerOpen(): void {
    this.readyState = FakeWebSocket.OPEN;
    this.onopen?.();
  }

  triggerClose(code: number, reason: string): void {
    this.readyState = FakeWebSocket.CLOSED;
    this.onclose?.({ code, reason });
  }

  triggerMessage(data: unknown): void {
    this.onmessage?.({ data: JSON.stringify(data) });
  }
}

describe("HubConnection", () => {
  beforeEach(() => {
    FakeWebSocket.instances = [];
    vi.stubGlobal("WebSocket", FakeWebSocket);
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.unstubAllGlobals();
    vi.useRealTimers();
  });

  function build(received: ServerMessage[], statuses: string[]): HubConnection {
    return new HubConnection({
      url: "ws://x/ws",
      sessionId: "s",
      role: "viewer",
      onMessage: (m) => received.push(m),
      onStatus: (status) => statuses.push(status),
    });
  }

  it("sends the hello on open and dispatches parsed frames", () => {
    const received: ServerMessage[] = [];
    const connection = build(received, []);
    connection.start();
    const ws = FakeWebSocket.instances[0];
    ws.triggerOpen();
    expect(JSON.parse(ws.sent[0])).toEqual({
      type: "session_hello", session_id: "s", role: "viewer",
    });
    ws.triggerMessage({ type: "error", session_id: "s", code: "X" });
    expect(received).toHaveLength(1);
    expect(received[0].type).toBe("error");
  });

  it("answers pings itself without surfacing them", () => {
    const received: ServerMessage[] = [];
    const connection = build(received, []);
    connection.start();
    const ws = FakeWebSocket.instances[0];
    ws.triggerOpen();
    ws.triggerMessage({ type: "ping", session_id: "s", nonce: "n", sent_at_ms: 5 });
    expect(received).toHaveLength(0);
    expect(JSON.parse(ws.sent[1])).toEqual({
      type: "pong", session_id: "s", nonce: "n", sent_at_ms: 5,
    });
  });

  it("reconnects with backoff after a drop and resends the hello", () => {
    const statuses: string[] = [];
    const connection = build([], statuses);
    connection.start();
    const first = FakeWebSocket.instances[0];
    first.triggerOpen();
    first.triggerClose(1006, "gone");
    expect(statuses).toContain("closed");
    expect(FakeWebSocket.instances).toHaveLength(1);
    vi.advanceTimersByTime(1000);
    expect(FakeWebSocket.instances).toHaveLength(2);
    const second = FakeWebSocket.instances[1];
    second.triggerOpen();
    expect(JSON.parse(second.sent[0]).type).toBe("session_hello");
    // a successful open resets the backoff; consecutive failures double it
    second.triggerClose(1006, "again");
    vi.advanceTimersByTime(1000);
    expect(FakeWebSocket.instances).toHaveLength(3);
    FakeWebSocket.instances[2].triggerClose(1006, "still down"); // never opened
    vi.advanceTimersByTime(1999);
    expect(FakeWebSocket.instances).toHaveLength(3);
    vi.advanceTimersByTime(1);
    expect(FakeWebSocket.instances).toHaveLength(4);
  });

  it("stays down after an explicit stop", () => {
    const connection = build([], []);
    connection.start();
    const ws = FakeWebSocket.instances[0];
    ws.triggerOpen();
    connection.stop();
    vi.advanceTimersByTime(60000);
    expect(FakeWebSocket.instances).toHaveLength(1);
  });
});
