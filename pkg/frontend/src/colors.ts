// Category -> chip color, fixed: people red, locations blue, organizations
// purple, dates green; everything else neutral. Icons ride along for
// glanceability.

export const CATEGORY_COLORS: Record<string, string> = {
  person: "red",
  location: "blue",
  organization: "purple",
  date: "green",
  numeric: "neutral",
  general: "neutral",
};

export const CATEGORY_ICONS: Record<string, string> = {
  person: "\u{1F464}",       // bust silhouette
  location: "\u{1F4CD}",     // round pushpin
  organization: "\u{1F3E2}", // office building
  date: "\u{1F4C5}",         // calendar
  numeric: "#",
  general: "\u{2022}",       // bullet
};

export function colorFor(category: string): string {
  return CATEGORY_COLORS[category] ?? "neutral";
}

export function iconFor(category: string): string {
  return CATEGORY_ICONS[category] ?? CATEGORY_ICONS["general"];
}

/** CSS class applied to a keyword chip. */
export function chipClass(category: string): string {
  return `chip chip-${colorFor(category)}`;
}
