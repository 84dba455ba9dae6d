"""Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm).

The search grows an alternating tree from each exposed vertex, contracting
odd cycles (blossoms) by relabelling their vertices with a common base.
Working arrays are reset only on the vertices a search touched, which keeps
repeated searches cheap on large sparse gadget graphs.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence


class _Blossom:
    def __init__(self, adj: Sequence[Sequence[int]], mate: list[int]):
        n = len(adj)
        self.adj = adj
        self.mate = mate
        self.parent = [-1] * n
        self.base = list(range(n))
        self.in_tree = [False] * n
        self.in_blossom = [False] * n
        self.touched: list[int] = []

    def _reset(self) -> None:
        parent, base, in_tree = self.parent, self.base, self.in_tree
        for v in self.touched:
            parent[v] = -1
            base[v] = v
            in_tree[v] = False
        self.touched = []

    def _lca(self, a: int, b: int) -> int:
        base, mate, parent = self.base, self.mate, self.parent
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def _mark(self, v: int, b: int, child: int, marked: list[int]) -> None:
        base, mate, parent, in_blossom = self.base, self.mate, self.parent, self.in_blossom
        while base[v] != b:
            for x in (base[v], base[mate[v]]):
                if not in_blossom[x]:
                    in_blossom[x] = True
                    marked.append(x)
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def augment_from(self, root: int) -> bool:
        """Search an augmenting path from exposed ``root``; flip it if found."""
        adj, mate, parent, base, in_tree = self.adj, self.mate, self.parent, self.base, self.in_tree
        touched = self.touched
        in_tree[root] = True
        touched.append(root)
        queue = deque([root])
        found = -1
        while queue and found < 0:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = self._lca(v, to)
                    marked: list[int] = []
                    self._mark(v, cur, to, marked)
                    self._mark(to, cur, v, marked)
                    in_blossom = self.in_blossom
                    for i in list(touched):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not in_tree[i]:
                                in_tree[i] = True
                                queue.append(i)
                    for x in marked:
                        in_blossom[x] = False
                elif parent[to] == -1:
                    parent[to] = v
                    touched.append(to)
                    if mate[to] == -1:
                        found = to
                        break
                    nxt = mate[to]
                    if not in_tree[nxt]:
                        in_tree[nxt] = True
                        touched.append(nxt)
                    queue.append(nxt)
        if found >= 0:
            v = found
            while v != -1:
                pv = parent[v]
                nv = mate[pv]
                mate[v] = pv
                mate[pv] = v
                v = nv
        self._reset()
        return found >= 0


def maximum_matching(
    adj: Sequence[Sequence[int]],
    mate: Sequence[int] | None = None,
    require_perfect: bool = False,
) -> list[int]:
    """Return ``mate`` with ``mate[v]`` the partner of ``v`` or ``-1``.

    ``mate`` seeds the search with an existing matching. With
    ``require_perfect`` the search stops at the first vertex that cannot be
    matched: such a vertex stays exposed in every maximum matching reachable
    by augmentation, so no perfect matching exists.
    """
    n = len(adj)
    mate = [-1] * n if mate is None else list(mate)
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break
    search = _Blossom(adj, mate)
    for root in range(n):
        if mate[root] == -1 and not search.augment_from(root) and require_perfect:
            break
    return mate


def matching_pairs(mate: Sequence[int]) -> list[tuple[int, int]]:
    return [(v, w) for v, w in enumerate(mate) if w > v]
