// DOM renderers for the three view regions. The main panel shows exactly one
// bundle; images render as a thumbnail grid, text payloads as capped snippets
// with a source link.

import { chipClass, iconFor } from "./colors.js";
import type { ShownBundle, ViewState } from "./layout.js";
import type { KeywordWire } from "./protocol.js";

export const SNIPPET_CAP = 420;

export function truncate(text: string, cap = SNIPPET_CAP): string {
  if (text.length <= cap) return text;
  return text.slice(0, cap - 1).trimEnd() + "…";
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderKeywordRail(container: HTMLElement, keywords: KeywordWire[]): void {
  const have = new Set(
    Array.from(container.children).map((c) => (c as HTMLElement).dataset["keywordId"]),
  );
  for (const keyword of keywords) {
    if (have.has(keyword.id)) continue;
    const chip = el("button", chipClass(keyword.category));
    chip.dataset["keywordId"] = keyword.id;
    chip.dataset["dwellId"] = `kw:${keyword.id}`;
    chip.append(
      el("span", "chip-icon", iconFor(keyword.category)),
      el("span", "chip-label", keyword.phrase),
      el("span", "chip-progress"),
    );
    container.appendChild(chip);
    chip.scrollIntoView({ block: "nearest" });
  }
}

function bundleBody(shown: ShownBundle): HTMLElement {
  const body = el("div", "bundle-body");
  const payload = shown.bundle.payload as any;
  switch (shown.kind) {
    case "image_set": {
      const grid = el("div", "image-grid");
      for (const image of payload as Array<any>) {
        const figure = el("figure");
        const img = el("img");
        img.src = String(image.thumb_url ?? image.url);
        img.alt = String(image.caption ?? "");
        img.loading = "lazy";
        figure.append(img, el("figcaption", undefined, String(image.caption ?? "")));
        grid.appendChild(figure);
      }
      body.appendChild(grid);
      break;
    }
    case "search_results":
    case "news": {
      const list = el("ul", "result-list");
      for (const result of payload as Array<any>) {
        const item = el("li");
        const link = el("a", undefined, String(result.title));
        link.href = String(result.url);
        link.target = "_blank";
        item.append(link, el("p", "snippet", truncate(String(result.snippet ?? ""))));
        list.appendChild(item);
      }
      body.appendChild(list);
      break;
    }
    case "map": {
      const img = el("img", "map-image");
      img.src = String(payload.tile_or_static_url);
      img.alt = "map";
      body.append(
        img,
        el("p", "map-coords",
           `lat ${payload.lat}, lon ${payload.lon} (zoom ${payload.zoom})`),
      );
      break;
    }
    case "weather": {
      body.append(
        el("p", "weather-now",
           `${payload.location_name}: ${payload.temp_c}°C, ${payload.condition}`),
      );
      const list = el("ul", "forecast");
      for (const day of (payload.forecast ?? []) as Array<any>) {
        list.appendChild(
          el("li", undefined, `+${day.day_offset}d ${day.temp_c}°C ${day.condition}`));
      }
      body.appendChild(list);
      break;
    }
    case "wiki_snippet": {
      body.appendChild(el("h3", undefined, String(payload.title)));
      if (payload.lead_image_url) {
        const img = el("img", "wiki-lead");
        img.src = String(payload.lead_image_url);
        img.alt = String(payload.title);
        body.appendChild(img);
      }
      body.appendChild(el("p", "snippet", truncate(String(payload.extract))));
      const link = el("a", "source-link", "source");
      link.href = String(payload.page_url);
      link.target = "_blank";
      body.appendChild(link);
      break;
    }
    case "calendar": {
      body.append(
        el("p", "calendar-range", String(payload.iso_date_or_range)),
        el("p", "calendar-label", String(payload.label)),
      );
      break;
    }
    default:
      body.appendChild(el("pre", undefined, JSON.stringify(payload, null, 2)));
  }
  return body;
}

export function renderMainPanel(
  container: HTMLElement,
  shown: ShownBundle | null,
  keywordsById: Map<string, KeywordWire>,
): void {
  container.replaceChildren();
  if (shown === null) {
    container.appendChild(el("p", "placeholder", "dwell on a keyword to open a reference"));
    return;
  }
  const keyword = keywordsById.get(shown.keywordId);
  const header = el("header", "bundle-header");
  header.append(
    el("span", keyword ? chipClass(keyword.category) : "chip chip-neutral",
       keyword ? keyword.phrase : shown.keywordId),
    el("span", "bundle-kind", shown.kind.replace("_", " ")),
  );
  container.append(header, bundleBody(shown));
}

export function renderHistoryRail(
  container: HTMLElement,
  history: ShownBundle[],
  keywordsById: Map<string, KeywordWire>,
): void {
  container.replaceChildren();
  history.forEach((shown, index) => {
    const keyword = keywordsById.get(shown.keywordId);
    const entry = el("button", "history-entry");
    entry.dataset["dwellId"] = `hist:${index}`;
    entry.append(
      el("span", "history-phrase", keyword ? keyword.phrase : shown.keywordId),
      el("span", "history-kind", shown.kind.replace("_", " ")),
      el("span", "chip-progress"),
    );
    container.appendChild(entry);
  });
}

export function renderView(
  regions: { rail: HTMLElement; main: HTMLElement; history: HTMLElement },
  state: ViewState,
): void {
  const byId = new Map(state.keywords.map((k) => [k.id, k]));
  renderKeywordRail(regions.rail, state.keywords);
  renderMainPanel(regions.main, state.main, byId);
  renderHistoryRail(regions.history, state.history, byId);
}
