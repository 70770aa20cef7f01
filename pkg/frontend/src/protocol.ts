// Wire protocol mirror of the hub's JSON frames. Field names are normative;
// unknown extra fields on received frames are ignored.

export type Role = "speaker" | "viewer";

export interface KeywordWire {
  id: string;
  phrase: string;
  category: string;
  score: number;
  color_code: string;
}

export interface SessionHello {
  type: "session_hello";
  session_id: string;
  role: Role;
  server_time_ms?: number;
}

export interface TranscriptUpdate {
  type: "transcript_update";
  session_id: string;
  seq: number;
  text: string;
  is_final: boolean;
}

export interface KeywordsUpdate {
  type: "keywords_update";
  session_id: string;
  seq: number;
  keywords: KeywordWire[];
}

export interface SelectKeyword {
  type: "select_keyword";
  session_id: string;
  keyword_id: string;
  kind?: string;
}

export interface BundleWire {
  keyword_id: string;
  kind: string;
  payload: unknown;
  provider_id: string;
  fetched_at: number;
  ttl_s: number;
  status: string;
}

export interface ReferenceReady {
  type: "reference_ready";
  session_id: string;
  keyword_id: string;
  kind: string;
  bundle: BundleWire;
}

export interface ErrorMsg {
  type: "error";
  session_id: string;
  code: string;
  detail?: string;
}

export interface Ping {
  type: "ping";
  session_id: string;
  nonce: string;
  sent_at_ms: number;
}

export interface Pong {
  type: "pong";
  session_id: string;
  nonce: string;
  sent_at_ms: number;
}

export type ServerMessage =
  | SessionHello
  | TranscriptUpdate
  | KeywordsUpdate
  | ReferenceReady
  | ErrorMsg
  | Ping
  | Pong;

const REQUIRED_FIELDS: Record<string, string[]> = {
  session_hello: ["session_id", "role"],
  transcript_update: ["session_id", "seq", "text", "is_final"],
  keywords_update: ["session_id", "seq", "keywords"],
  reference_ready: ["session_id", "keyword_id", "kind", "bundle"],
  error: ["session_id", "code"],
  ping: ["session_id", "nonce", "sent_at_ms"],
  pong: ["session_id", "nonce", "sent_at_ms"],
};

/** Parse one frame; returns null for anything unusable. */
export function parseMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const frame = data as Record<string, unknown>;
  const type = frame["type"];
  if (typeof type !== "string" || !(type in REQUIRED_FIELDS)) return null;
  for (const field of REQUIRED_FIELDS[type]) {
    if (!(field in frame)) return null;
  }
  if (type === "keywords_update" && !Array.isArray(frame["keywords"])) return null;
  return frame as unknown as ServerMessage;
}

export function encodeHello(sessionId: string, role: Role): string {
  return JSON.stringify({ type: "session_hello", session_id: sessionId, role });
}

export function encodeSelect(sessionId: string, keywordId: string, kind?: string): string {
  const frame: Record<string, unknown> = {
    type: "select_keyword",
    session_id: sessionId,
    keyword_id: keywordId,
  };
  if (kind !== undefined) frame["kind"] = kind;
  return JSON.stringify(frame);
}

export function encodeTranscript(
  sessionId: string,
  seq: number,
  text: string,
  isFinal: boolean,
): string {
  return JSON.stringify({
    type: "transcript_update",
    session_id: sessionId,
    seq,
    text,
    is_final: isFinal,
  });
}

export function encodePong(sessionId: string, nonce: string, sentAtMs: number): string {
  return JSON.stringify({
    type: "pong",
    session_id: sessionId,
    nonce,
    sent_at_ms: sentAtMs,
  });
}
