// Application shell: URL-configured connection, dwell-driven selection, and
// the three-region layout. Speakers get a typing box; when the browser offers
// a speech-recognition engine, continuous mode streams interim results as
// intermediate segments.

import { HubConnection } from "./connection.js";
import { DwellTracker } from "./dwell.js";
import { applyKeywords, applyReference, initialView, type ViewState } from "./layout.js";
import { encodeSelect, encodeTranscript, type Role, type ServerMessage } from "./protocol.js";
import { renderView } from "./render.js";

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

function must(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node;
}

export function startApp(): void {
  const server = param("server", `ws://${window.location.hostname || "127.0.0.1"}:8765`);
  const sessionId = param("session", "default");
  const role = (param("role", "viewer") === "speaker" ? "speaker" : "viewer") as Role;
  const url = server.replace(/\/+$/, "").endsWith("/ws")
    ? server
    : `${server.replace(/\/+$/, "")}/ws`;

  const regions = {
    rail: must("keyword-rail"),
    main: must("main-panel"),
    history: must("history-rail"),
  };
  const banner = must("banner");
  let view: ViewState = initialView();

  const redraw = () => renderView(regions, view);

  const connection = new HubConnection({
    url,
    sessionId,
    role,
    onMessage: (message: ServerMessage) => {
      if (message.type === "keywords_update") {
        view = applyKeywords(view, message);
        redraw();
      } else if (message.type === "reference_ready") {
        view = applyReference(view, message);
        redraw();
      } else if (message.type === "error") {
        showBanner(`${message.code}${message.detail ? ": " + message.detail : ""}`, true);
      }
      // transcript_update frames are intentionally not rendered
    },
    onStatus: (status, detail) => {
      if (status === "open") showBanner(`connected to ${sessionId} as ${role}`, false);
      else if (status === "closed") showBanner(`disconnected (${detail ?? ""}), retrying`, true);
      else showBanner("connecting…", false);
    },
  });

  function showBanner(text: string, isError: boolean): void {
    banner.textContent = text;
    banner.className = isError ? "banner error" : "banner";
  }

  // -- dwell selection over anything carrying data-dwell-id --

  const dwell = new DwellTracker();
  dwell.onSelect((target) => {
    if (target.startsWith("kw:")) {
      connection.send(encodeSelect(sessionId, target.slice(3)));
    } else if (target.startsWith("hist:")) {
      const entry = view.history[Number(target.slice(5))];
      if (entry !== undefined) {
        connection.send(encodeSelect(sessionId, entry.keywordId, entry.kind));
      }
    }
  });

  document.addEventListener("pointermove", (event) => {
    const hit = (event.target as HTMLElement | null)?.closest?.("[data-dwell-id]");
    const id = hit instanceof HTMLElement ? hit.dataset["dwellId"] ?? null : null;
    dwell.update(performance.now(), id);
  });
  document.addEventListener("pointerleave", () => dwell.update(performance.now(), null));

  function animate(): void {
    dwell.tick(performance.now());
    const hovered = dwell.hovered;
    document.querySelectorAll<HTMLElement>("[data-dwell-id]").forEach((node) => {
      const bar = node.querySelector<HTMLElement>(".chip-progress");
      if (bar === null) return;
      const active = node.dataset["dwellId"] === hovered;
      bar.style.width = active ? `${Math.round(dwell.progress * 100)}%` : "0";
    });
    requestAnimationFrame(animate);
  }
  requestAnimationFrame(animate);

  // -- speaker input --

  let seq = 0;
  const input = document.getElementById("speak-input") as HTMLInputElement | null;
  const inputRow = document.getElementById("input-row");
  if (role !== "speaker") {
    inputRow?.remove();
  } else if (input !== null) {
    input.addEventListener("keydown", (event) => {
      if (event.key !== "Enter") return;
      const text = input.value.trim();
      if (!text) return;
      connection.send(encodeTranscript(sessionId, seq++, text, true));
      input.value = "";
    });
    startSpeechIfAvailable(connection, sessionId, () => seq++, showBanner);
  }

  connection.start();
  redraw();
}

function startSpeechIfAvailable(
  connection: HubConnection,
  sessionId: string,
  nextSeq: () => number,
  showBanner: (text: string, isError: boolean) => void,
): void {
  const SpeechRecognition =
    (window as any).SpeechRecognition ?? (window as any).webkitSpeechRecognition;
  if (SpeechRecognition === undefined) {
    showBanner("speech recognition unavailable; typing mode only", false);
    return;
  }
  const recognizer = new SpeechRecognition();
  recognizer.continuous = true;
  recognizer.interimResults = true;
  recognizer.onresult = (event: any) => {
    const result = event.results[event.results.length - 1];
    const text = String(result[0].transcript).trim();
    if (!text) return;
    connection.send(encodeTranscript(sessionId, nextSeq(), text, Boolean(result.isFinal)));
  };
  recognizer.onerror = () => showBanner("speech recognition error; typing still works", true);
  try {
    recognizer.start();
  } catch {
    showBanner("speech recognition could not start; typing mode only", false);
  }
}

startApp();
