"""Augmenting-path bipartite matching with deterministic tie-breaking."""

from __future__ import annotations

from typing import Sequence


def maximum_bipartite_matching(adjacency: Sequence[Sequence[int]]) -> list[int | None]:
    """Maximum matching of left nodes into right nodes.

    adjacency[u] lists u's right neighbors in preference order; left nodes are
    processed in index order, so ties always resolve the same way.
    """
    match_left: list[int | None] = [None] * len(adjacency)
    owner: dict[int, int] = {}

    def try_assign(u: int, seen: set[int]) -> bool:
        for v in adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or try_assign(owner[v], seen):
                owner[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(len(adjacency)):
        try_assign(u, set())
    return match_left
