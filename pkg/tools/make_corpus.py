#!/usr/bin/env python3
"""Regenerate the bundled benchmark corpus (deterministic, seeded).

Usage: python tools/make_corpus.py [words] [out_path]
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "convref" / "data"


def _section(path: Path, wanted: str) -> list[str]:
    words, current = [], None
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            continue
        if current == wanted:
            words.append(line)
    return words


def main() -> None:
    target_words = int(sys.argv[1]) if len(sys.argv) > 1 else 52000
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else DATA / "bench_corpus.txt"

    lex = DATA / "lexicon_en.txt"
    gaz = DATA / "gazetteer_en.txt"
    nouns = _section(lex, "noun")
    adjectives = _section(lex, "adjective")
    verbs = _section(lex, "verb")
    orgs = [w.title() for w in _section(gaz, "organization")]
    locs = [w.title() for w in _section(gaz, "location")]
    people = [w.title() for w in _section(gaz, "person")]
    months = ["January", "February", "March", "April", "May", "June", "July",
              "August", "September", "October", "November", "December"]

    rng = random.Random(20240509)

    def noun() -> str:
        return rng.choice(nouns)

    def templates() -> list[str]:
        return [
            f"I {rng.choice(verbs)} the {rng.choice(adjectives)} {noun()} near the {noun()}",
            f"We {rng.choice(verbs)} a {rng.choice(adjectives)} {noun()} in {rng.choice(locs)} last {rng.choice(months)}",
            f"My {noun()} {rng.choice(verbs)} at {rng.choice(orgs)} and {rng.choice(verbs)} the {noun()}",
            f"The {rng.choice(adjectives)} {noun()} about {rng.choice(people)} was {rng.choice(adjectives)}",
            f"They {rng.choice(verbs)} to {rng.choice(locs)} for the {noun()} {noun()} next {rng.choice(months)}",
            f"She {rng.choice(verbs)} about the {noun()} and the {rng.choice(adjectives)} {noun()}",
            f"A {rng.choice(adjectives)} {noun()} costs {rng.randrange(5, 900)} dollars at the {noun()}",
            f"He {rng.choice(verbs)} the {noun()} {noun()} with a {rng.choice(adjectives)} {noun()}",
            f"Our {noun()} in {rng.choice(locs)} had a {rng.choice(adjectives)} {noun()} view",
            f"The {noun()} at {rng.choice(orgs)} {rng.choice(verbs)} every {rng.choice(adjectives)} {noun()}",
        ]

    lines = []
    words = 0
    while words < target_words:
        line = rng.choice(templates())
        lines.append(line)
        words += len(line.split())
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {words} words / {len(lines)} lines to {out}")


if __name__ == "__main__":
    main()
