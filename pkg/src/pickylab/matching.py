"""Maximum bipartite matching with Hall-violator certificates."""

from __future__ import annotations

from collections import deque
from typing import Sequence

INF = float("inf")


def hopcroft_karp(n_left: int, n_right: int, adj: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    """Maximum matching; returns (match_left, match_right) with -1 for unmatched vertices.

    Neighbour lists are scanned in the given order, so the result is deterministic.
    """
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0.0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        # iterative augmenting-path search along the BFS layering
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            node, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w == -1:
                    path.append((node, v))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[w] == dist[node] + 1:
                    path.append((node, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[node] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u)
    return match_l, match_r


def neighbourhood(adj: Sequence[Sequence[int]], S: Sequence[int]) -> set[int]:
    out: set[int] = set()
    for u in S:
        out.update(adj[u])
    return out


def hall_violator(n_left: int, adj: Sequence[Sequence[int]], match_l: Sequence[int],
                  match_r: Sequence[int]) -> list[int] | None:
    """A left subset S with |N(S)| < |S|, or None when the matching saturates the left side.

    Starts from the alternating-path closure of an unmatched vertex (König) and then
    greedily drops vertices while the deficiency persists.
    """
    free = [u for u in range(n_left) if match_l[u] == -1]
    if not free:
        return None
    seen = {free[0]}
    q = deque([free[0]])
    while q:
        u = q.popleft()
        for v in adj[u]:
            w = match_r[v]
            if w != -1 and w not in seen:
                seen.add(w)
                q.append(w)
    S = sorted(seen)
    for u in list(S):
        trial = [w for w in S if w != u]
        if trial and len(neighbourhood(adj, trial)) < len(trial):
            S = trial
    return S


def is_violator(adj: Sequence[Sequence[int]], S: Sequence[int]) -> bool:
    return len(set(S)) > len(neighbourhood(adj, S))
