// WebSocket client wrapper: hello on open, reconnect with capped exponential
// backoff, automatic pong replies, message fan-out to a handler.

import { encodeHello, encodePong, parseMessage, type Role, type ServerMessage } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface ConnectionOptions {
  url: string;
  sessionId: string;
  role: Role;
  onMessage: (message: ServerMessage) => void;
  onStatus?: (status: ConnectionStatus, detail?: string) => void;
  maxBackoffMs?: number;
}

export class HubConnection {
  private ws: WebSocket | null = null;
  private attempts = 0;
  private stopped = false;

  constructor(private readonly options: ConnectionOptions) {}

  start(): void {
    this.stopped = false;
    this.connect();
  }

  stop(): void {
    this.stopped = true;
    this.ws?.close();
  }

  get isOpen(): boolean {
    return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
  }

  send(frame: string): boolean {
    if (!this.isOpen || this.ws === null) return false;
    this.ws.send(frame);
    return true;
  }

  private connect(): void {
    this.options.onStatus?.("connecting");
    const ws = new WebSocket(this.options.url);
    this.ws = ws;

    ws.onopen = () => {
      this.attempts = 0;
      ws.send(encodeHello(this.options.sessionId, this.options.role));
      this.options.onStatus?.("open");
    };

    ws.onmessage = (event: MessageEvent) => {
      const message = parseMessage(String(event.data));
      if (message === null) return;
      if (message.type === "ping") {
        ws.send(encodePong(this.options.sessionId, message.nonce, message.sent_at_ms));
        return;
      }
      this.options.onMessage(message);
    };

    ws.onclose = (event: CloseEvent) => {
      this.options.onStatus?.("closed", `${event.code} ${event.reason}`.trim());
      if (!this.stopped) this.reconnect();
    };
  }

  private reconnect(): void {
    const cap = this.options.maxBackoffMs ?? 30000;
    const delay = Math.min(1000 * 2 ** this.attempts, cap);
    this.attempts += 1;
    setTimeout(() => {
      if (!this.stopped) this.connect();
    }, delay);
  }
}
