"""Graph ranking for keyword salience.

Candidate words (NOUN/PROPN/ADJ lemmas, where a lemma is the case-folded
surface) become nodes of an undirected co-occurrence graph; two candidates are
linked when they appear within a sliding window of the token sequence, with
the edge weight counting those co-occurrences. Scores then come from the
weighted PageRank-style fixed point

    S(v) = (1 - d) + d * sum_{u ~ v} w(u, v) * S(u) / strength(u)

iterated from a uniform 1.0 start until the largest per-node change drops
below epsilon (or max_iter is hit). Iteration order is node insertion order,
so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

_CANDIDATE_TAGS = frozenset({"NOUN", "PROPN", "ADJ"})

DEFAULT_DAMPING = 0.85
DEFAULT_WINDOW = 4
DEFAULT_EPSILON = 1e-4
DEFAULT_MAX_ITER = 50
INITIAL_SCORE = 1.0


@dataclass
class CooccurrenceGraph:
    """Undirected weighted graph; adjacency maps preserve insertion order."""

    window: int
    adjacency: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def nodes(self) -> list[str]:
        return list(self.adjacency)

    def add_node(self, node: str) -> None:
        self.adjacency.setdefault(node, {})

    def add_cooccurrence(self, u: str, v: str) -> None:
        if u == v:
            return
        self.adjacency[u][v] = self.adjacency[u].get(v, 0) + 1
        self.adjacency[v][u] = self.adjacency[v].get(u, 0) + 1

    def weight(self, u: str, v: str) -> int:
        return self.adjacency.get(u, {}).get(v, 0)

    def strength(self, u: str) -> int:
        return sum(self.adjacency.get(u, {}).values())


def build_cooccurrence_graph(tokens, window: int = DEFAULT_WINDOW) -> CooccurrenceGraph:
    """Link candidate lemmas appearing within `window` consecutive tokens.

    Distance is measured over the full token sequence (stopwords and
    punctuation widen gaps but never become nodes).
    """
    if window < 2:
        raise ValueError("window must be >= 2")
    graph = CooccurrenceGraph(window=window)
    candidates = [(i, t.lower) for i, t in enumerate(tokens) if t.tag in _CANDIDATE_TAGS]
    for _, lemma in candidates:
        graph.add_node(lemma)
    for a in range(len(candidates)):
        i, u = candidates[a]
        for b in range(a + 1, len(candidates)):
            j, v = candidates[b]
            if j - i >= window:
                break
            graph.add_cooccurrence(u, v)
    return graph


def textrank(graph: CooccurrenceGraph,
             damping: float = DEFAULT_DAMPING,
             epsilon: float = DEFAULT_EPSILON,
             max_iter: int = DEFAULT_MAX_ITER) -> dict[str, float]:
    """Score every node; empty graph yields an empty map."""
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    nodes = graph.nodes
    if not nodes:
        return {}
    scores = {node: INITIAL_SCORE for node in nodes}
    strengths = {node: graph.strength(node) for node in nodes}
    base = 1.0 - damping
    for _ in range(max_iter):
        delta = 0.0
        new_scores = {}
        for node in nodes:
            acc = 0.0
            for neighbor, weight in graph.adjacency[node].items():
                acc += weight * scores[neighbor] / strengths[neighbor]
            value = base + damping * acc
            new_scores[node] = value
            delta = max(delta, abs(value - scores[node]))
        scores = new_scores
        if delta < epsilon:
            break
    return scores
