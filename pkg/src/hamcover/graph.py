"""Simple undirected graphs, seeded generation, edge partitioning and I/O.

Vertices are the integers ``0..n-1``. A :class:`Graph` is immutable once
built; every operation that "changes" a graph returns a new one.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from . import seeding
from .errors import ParameterError, ParseError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertex set ``range(n)``.

    Adjacency is held as one frozenset per vertex; integer bitset rows are
    built lazily for subset-heavy checks (``bits(v)`` has bit ``w`` set iff
    ``vw`` is an edge).
    """

    __slots__ = ("_n", "_adj", "_edges", "_bits")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        self._init(n, adj)

    def _init(self, n: int, adj: Sequence[Iterable[int]]) -> None:
        self._n = n
        self._adj = tuple(frozenset(a) for a in adj)
        self._edges = None
        self._bits = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> Graph:
        """Build from symmetric neighbour sets without re-validating."""
        g = cls.__new__(cls)
        g._init(len(adj), adj)
        return g

    # -- basic access -----------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[Edge]:
        if self._edges is None:
            self._edges = frozenset(
                (u, v) for u in range(self._n) for v in self._adj[u] if u < v
            )
        return self._edges

    @property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def __contains__(self, e: object) -> bool:
        u, v = e  # type: ignore[misc]
        return 0 <= u < self._n and v in self._adj[u]

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def bits(self, v: int) -> int:
        if self._bits is None:
            self._bits = tuple(sum(1 << w for w in a) for a in self._adj)
        return self._bits[v]

    def is_regular(self, d: int | None = None) -> bool:
        degs = {len(a) for a in self._adj}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    # -- derived graphs ---------------------------------------------------

    def _check_same(self, other: Graph) -> None:
        if other.n != self._n:
            raise ParameterError(f"vertex counts differ: {self._n} vs {other.n}")

    def union(self, *others: Graph) -> Graph:
        adj = [set(a) for a in self._adj]
        for o in others:
            self._check_same(o)
            for v in range(self._n):
                adj[v] |= o._adj[v]
        return Graph.from_adjacency(adj)

    def difference(self, other: Graph) -> Graph:
        self._check_same(other)
        return Graph.from_adjacency([a - b for a, b in zip(self._adj, other._adj)])

    def intersection(self, other: Graph) -> Graph:
        self._check_same(other)
        return Graph.from_adjacency([a & b for a, b in zip(self._adj, other._adj)])

    def add_edges(self, edges: Iterable[Sequence[int]]) -> Graph:
        return Graph(self._n, list(self.edges) + [tuple(e) for e in edges])

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> Graph:
        adj = [set(a) for a in self._adj]
        for u, v in edges:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph.from_adjacency(adj)

    def without_vertex_edges(self, v: int) -> Graph:
        """Same vertex set with every edge at ``v`` removed."""
        return self.remove_edges([(v, w) for w in self._adj[v]])

    def delete_vertex(self, v: int) -> tuple[Graph, list[int]]:
        """``G - v`` relabelled to ``0..n-2``; also returns new->old labels."""
        labels = [w for w in range(self._n) if w != v]
        index = {old: new for new, old in enumerate(labels)}
        adj = [{index[w] for w in self._adj[old] if w != v} for old in labels]
        return Graph.from_adjacency(adj), labels

    def is_subgraph_of(self, other: Graph) -> bool:
        return other.n == self._n and all(a <= b for a, b in zip(self._adj, other._adj))

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of the graph with ``removed`` deleted."""
        gone = set(removed)
        seen = set(gone)
        comps = []
        for s in range(self._n):
            if s in seen:
                continue
            seen.add(s)
            stack, comp = [s], [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
                        comp.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


# -- set statistics -------------------------------------------------------


def _mask(vertices: Iterable[int]) -> int:
    return sum(1 << v for v in set(vertices))


def edges_within(g: Graph, s: Iterable[int]) -> int:
    """e(S): number of edges with both ends in S."""
    s = set(s)
    mask = _mask(s)
    return sum((g.bits(v) & mask).bit_count() for v in s) // 2


def edges_between(g: Graph, s: Iterable[int], t: Iterable[int]) -> int:
    """e(S, T) for disjoint S and T."""
    tmask = _mask(t)
    return sum((g.bits(v) & tmask).bit_count() for v in set(s))


def external_neighbourhood(g: Graph, s: Iterable[int]) -> set[int]:
    """N(S): vertices outside S with a neighbour in S."""
    s = set(s)
    out: set[int] = set()
    for v in s:
        out |= g.neighbors(v)
    return out - s


# -- named graphs ---------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph.from_adjacency([set(range(n)) - {v} for v in range(n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# -- random generation ----------------------------------------------------


def _check_probability(p: float, name: str = "p") -> None:
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ParameterError(f"{name} must lie in [0, 1], got {p}")


def generate_gnp(n: int, p: float, seed: int) -> Graph:
    """Binomial random graph G(n, p).

    Pairs ``(u, v)`` with ``u < v`` are visited in lexicographic order and
    each is kept iff its uniform draw from the generation stream is below
    ``p``, so ``(n, p, seed)`` determines the graph.
    """
    if n < 1:
        raise ParameterError(f"n must be at least 1, got {n}")
    _check_probability(p)
    iu, ju = np.triu_indices(n, k=1)
    draws = seeding.generator(seed, seeding.GENERATE).random(iu.size)
    keep = draws < p
    return Graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_edge_order(n: int, seed: int) -> list[Edge]:
    """A uniformly random ordering of the edges of K_n."""
    iu, ju = np.triu_indices(n, k=1)
    perm = seeding.generator(seed, seeding.PROCESS).permutation(iu.size)
    return [(int(iu[k]), int(ju[k])) for k in perm]


@dataclass(frozen=True)
class EdgePartition:
    """Named, pairwise edge-disjoint subgraphs of ``parent``."""

    parent: Graph
    parts: dict[str, Graph]
    assignment: dict[Edge, str] = field(repr=False, default_factory=dict)

    def __getitem__(self, name: str) -> Graph:
        return self.parts[name]

    def names(self) -> list[str]:
        return list(self.parts)


def partition_edges(
    g: Graph,
    weights: Sequence[float] | Mapping[str, float],
    seed: int,
    *subkeys: int,
) -> EdgePartition:
    """Assign each edge independently to part ``i`` with probability ``w_i``.

    An edge lands in no part with probability ``1 - sum(w)``. ``weights`` may
    be a mapping from part names to weights; a plain sequence yields parts
    named ``"0", "1", ...``. ``subkeys`` select an independent partition
    stream for the same seed.
    """
    if isinstance(weights, Mapping):
        names = [str(k) for k in weights]
        w = [float(x) for x in weights.values()]
    else:
        w = [float(x) for x in weights]
        names = [str(i) for i in range(len(w))]
    if any(x < 0 or math.isnan(x) for x in w):
        raise ParameterError(f"weights must be non-negative, got {w}")
    if sum(w) > 1 + 1e-9:
        raise ParameterError(f"weights sum to {sum(w)} > 1")
    edges = g.edge_list()
    draws = seeding.generator(seed, seeding.PARTITION, *subkeys).random(len(edges))
    bounds = np.cumsum(w)
    if w and sum(w) >= 1 - 1e-9:
        bounds[-1] = np.inf
    slot = np.searchsorted(bounds, draws, side="right")
    buckets: list[list[Edge]] = [[] for _ in w]
    assignment: dict[Edge, str] = {}
    for e, k in zip(edges, slot.tolist()):
        if k < len(w):
            buckets[k].append(e)
            assignment[e] = names[k]
    parts = {name: Graph(g.n, b) for name, b in zip(names, buckets)}
    return EdgePartition(parent=g, parts=parts, assignment=assignment)


# -- degree statistics ----------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    min_degree: int
    max_degree: int
    argmax_vertices: tuple[int, ...]
    argmin_vertices: tuple[int, ...]
    downjump_gap: int

    @property
    def unique_max(self) -> int | None:
        return self.argmax_vertices[0] if len(self.argmax_vertices) == 1 else None

    @property
    def unique_min(self) -> int | None:
        return self.argmin_vertices[0] if len(self.argmin_vertices) == 1 else None


def degree_profile(g: Graph) -> DegreeProfile:
    """Degree extremes of ``g``; ``downjump_gap`` is 0 unless the max is unique."""
    if g.n < 1:
        raise ParameterError("degree profile needs at least one vertex")
    degs = g.degrees()
    hi, lo = max(degs), min(degs)
    argmax = tuple(v for v, d in enumerate(degs) if d == hi)
    argmin = tuple(v for v, d in enumerate(degs) if d == lo)
    gap = 0
    if len(argmax) == 1:
        rest = [d for v, d in enumerate(degs) if v != argmax[0]]
        gap = hi - max(rest) if rest else hi
    return DegreeProfile(lo, hi, argmax, argmin, gap)


# -- I/O ------------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: a line ``n`` then one ``u v`` per line."""
    lines = text.splitlines()
    rows = [(i + 1, ln.split()) for i, ln in enumerate(lines)]
    rows = [(i, toks) for i, toks in rows if toks and not toks[0].startswith("#")]
    if not rows:
        raise ParseError("empty input, expected vertex count", 1)
    first_line, head = rows[0]
    if len(head) != 1:
        raise ParseError("first line must hold the vertex count only", first_line)
    try:
        n = int(head[0])
    except ValueError:
        raise ParseError(f"bad vertex count {head[0]!r}", first_line) from None
    if n < 0:
        raise ParseError("vertex count must be non-negative", first_line)
    seen: set[Edge] = set()
    for lineno, toks in rows[1:]:
        if len(toks) != 2:
            raise ParseError(f"expected 'u v', got {' '.join(toks)!r}", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {' '.join(toks)!r}", lineno) from None
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range in ({u}, {v}) for n={n}", lineno)
        e = norm_edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge ({e[0]}, {e[1]})", lineno)
        seen.add(e)
    return Graph(n, seen)


def format_edge_list(g: Graph) -> str:
    out = [str(g.n)]
    out.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(out) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def graph_from_json(obj: Mapping) -> Graph:
    try:
        n = int(obj["n"])
        pairs = [tuple(int(x) for x in e) for e in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from None
    text = "\n".join([str(n)] + [" ".join(map(str, e)) for e in pairs])
    return parse_edge_list(text)


def read_graph(source: str | os.PathLike | IO[str]) -> Graph:
    """Read a graph from a path or text stream (edge list or JSON mirror)."""
    if hasattr(source, "read"):
        text = source.read()  # type: ignore[union-attr]
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return graph_from_json(obj)
    return parse_edge_list(text)


def write_graph(g: Graph, dest: str | os.PathLike | IO[str], fmt: str = "edges") -> None:
    text = json.dumps(graph_to_json(g)) + "\n" if fmt == "json" else format_edge_list(g)
    if hasattr(dest, "write"):
        dest.write(text)  # type: ignore[union-attr]
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)

