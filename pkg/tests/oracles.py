"""Independent oracles used to pin expected values.

These deliberately avoid the package's own graph/ranking code paths: the
ranking oracle runs dense numpy power iteration over an explicit matrix, and
the co-occurrence oracle enumerates every index pair brute-force.
"""

from __future__ import annotations

import numpy as np

from convref.nlp.tokens import Token


def make_token(surface: str, tag: str, start: int = 0) -> Token:
    return Token(surface=surface, span=(start, start + len(surface)),
                 lower=surface.casefold(), tag=tag)


def token_seq(*pairs: tuple[str, str]) -> list[Token]:
    """Build a token list from (surface, tag) pairs with synthetic spans."""
    tokens = []
    pos = 0
    for surface, tag in pairs:
        tokens.append(make_token(surface, tag, start=pos))
        pos += len(surface) + 1
    return tokens


def cooccurrence_bruteforce(tokens, window: int,
                            candidate_tags=("NOUN", "PROPN", "ADJ")) -> dict:
    """Expected undirected edge weights by enumerating all candidate pairs."""
    candidates = [(i, t.lower) for i, t in enumerate(tokens) if t.tag in candidate_tags]
    weights: dict[tuple[str, str], int] = {}
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            i, u = candidates[a]
            j, v = candidates[b]
            if abs(j - i) < window and u != v:
                key = (min(u, v), max(u, v))
                weights[key] = weights.get(key, 0) + 1
    return weights


def textrank_dense_oracle(adjacency: dict[str, dict[str, int]],
                          damping: float,
                          tol: float = 1e-14,
                          max_iter: int = 200000) -> dict[str, float]:
    """Dense-matrix power iteration for S = (1-d) + d * A S."""
    nodes = list(adjacency)
    n = len(nodes)
    if n == 0:
        return {}
    index = {node: i for i, node in enumerate(nodes)}
    weights = np.zeros((n, n))
    for u, neighbors in adjacency.items():
        for v, w in neighbors.items():
            weights[index[u], index[v]] = w
    strength = weights.sum(axis=0)
    transfer = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if weights[i, j] > 0 and strength[j] > 0:
                transfer[i, j] = weights[i, j] / strength[j]
    scores = np.ones(n)
    for _ in range(max_iter):
        updated = (1.0 - damping) + damping * transfer @ scores
        if np.max(np.abs(updated - scores)) < tol:
            scores = updated
            break
        scores = updated
    return {node: float(scores[index[node]]) for node in nodes}


def random_graph_adjacency(rng, max_nodes: int = 8, max_weight: int = 3) -> dict:
    """Random undirected weighted adjacency with insertion-ordered. maps."""
    n = rng.randint(1, max_nodes)
    names = [f"n{i}" for i in range(n)]
    adjacency: dict[str, dict[str, int]] = {name: {} for name in names}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.55:
                w = rng.randint(1, max_weight)
                adjacency[names[i]][names[j]] = w
                adjacency[names[j]][names[i]] = w
    return adjacency
