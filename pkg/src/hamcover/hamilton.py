"""Hamilton cycles and paths by rotation-extension, plus packing and covering.

The search engine works on integer bitset adjacency rows. It grows a path,
extending from the current end into unvisited neighbours and applying Pósa
rotations when stuck; a full path is closed directly or after a rotation that
makes the new end adjacent to the start. Three optional inputs shape it:

* ``allowed`` rows restrict which edges may be used at all;
* ``pref`` rows mark edges to take first when extending or rotating;
* ``forced`` edges must lie on the cycle. They must form a linear forest and
  are handled as unbreakable segments: entering one end of a forced path
  walks it to the other end, and rotations never cut a forced edge.

Small instances (see ``SearchBudget.exact_cap``) are decided exactly by a
subset dynamic programme, so a negative answer there is a proof.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import seeding
from .errors import ParameterError
from .factor import FFactorInstance, RegularizationError, find_f_factor
from .graph import Edge, Graph, norm_edge


@dataclass(frozen=True)
class SearchBudget:
    max_backtrack_nodes: int = 10**6
    max_rotations: int = 10**4
    time_cap: int = 60_000  # milliseconds
    restarts: int = 10
    exact_cap: int = 12

    def __post_init__(self):
        for name in ("max_backtrack_nodes", "max_rotations", "time_cap", "restarts"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"budget field {name} must be positive")

    def deadline(self) -> float:
        return time.monotonic() + self.time_cap / 1000.0


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class HamiltonCycle:
    order: tuple[int, ...]

    def edges(self) -> list[Edge]:
        o = self.order
        return [norm_edge(o[i - 1], o[i]) for i in range(len(o))]

    def verify(self, g: Graph) -> bool:
        o = self.order
        if len(o) != g.n or len(o) < 3 or sorted(o) != list(range(g.n)):
            return False
        return all(g.has_edge(o[i - 1], o[i]) for i in range(len(o)))

    def to_json(self) -> list[int]:
        return list(self.order)


@dataclass(frozen=True)
class HamiltonPath:
    order: tuple[int, ...]

    def edges(self) -> list[Edge]:
        o = self.order
        return [norm_edge(o[i], o[i + 1]) for i in range(len(o) - 1)]

    def verify(self, g: Graph, x: int | None = None, y: int | None = None) -> bool:
        o = self.order
        if len(o) != g.n or sorted(o) != list(range(g.n)):
            return False
        if x is not None and y is not None and {o[0], o[-1]} != {x, y}:
            return False
        return all(g.has_edge(o[i], o[i + 1]) for i in range(len(o) - 1))


@dataclass(frozen=True)
class Exhausted:
    """Search gave up. ``proven_none`` is set only after an exhaustive check."""

    reason: str
    proven_none: bool = False

    def __bool__(self) -> bool:
        return False


# -- engine -------------------------------------------------------------------


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _Constraints:
    """Checked forced-edge structure shared by the heuristic and exact search."""

    def __init__(self, n: int, allowed: Sequence[int], forced: Iterable[Edge] = ()):
        self.n = n
        self.allowed = list(allowed)
        self.partners: list[list[int]] = [[] for _ in range(n)]
        self.fmask = [0] * n
        self.ok = True
        self.reason = ""
        for a, b in {norm_edge(*e) for e in forced}:
            if not self.allowed[a] >> b & 1:
                self.allowed[a] |= 1 << b
                self.allowed[b] |= 1 << a
            self.partners[a].append(b)
            self.partners[b].append(a)
            self.fmask[a] |= 1 << b
            self.fmask[b] |= 1 << a
        if any(len(p) > 2 for p in self.partners):
            self.ok, self.reason = False, "a vertex has more than two forced edges"
            return
        # walk each forced path to find its far end; a closed walk is a cycle
        self.other_end = list(range(n))
        self.free = 0
        seen = [False] * n
        for v in range(n):
            if len(self.partners[v]) == 1 and not seen[v]:
                prev, cur = v, self.partners[v][0]
                seen[v] = True
                while len(self.partners[cur]) == 2:
                    seen[cur] = True
                    a, b = self.partners[cur]
                    prev, cur = cur, (b if a == prev else a)
                seen[cur] = True
                self.other_end[v], self.other_end[cur] = cur, v
        for v in range(n):
            if len(self.partners[v]) <= 1:
                self.free |= 1 << v
            elif not seen[v]:
                self.ok = False
                self.reason = "forced edges contain a cycle"
                if self._forced_is_hamiltonian():
                    self.ok, self.reason = True, ""
                return

    def _forced_is_hamiltonian(self) -> bool:
        order = [0]
        prev = -1
        while len(order) <= self.n:
            nxt = [w for w in self.partners[order[-1]] if w != prev]
            prev = order[-1]
            if not nxt or nxt[0] == 0:
                break
            order.append(nxt[0])
        if len(order) == self.n and all(len(p) == 2 for p in self.partners):
            self.forced_cycle = order
            return True
        return False

    def forced(self, a: int, b: int) -> bool:
        return bool(self.fmask[a] >> b & 1)


def _segment(cons: _Constraints, c: int) -> list[int]:
    """Vertices of the forced path starting at ``c`` (just ``[c]`` if none)."""
    out = [c]
    prev = -1
    cur = c
    while True:
        nxt = [w for w in cons.partners[cur] if w != prev]
        if not nxt or (len(out) > 1 and len(cons.partners[cur]) == 1):
            break
        prev, cur = cur, nxt[0]
        out.append(cur)
    return out


def _rotation_extension(
    cons: _Constraints,
    rng: random.Random,
    max_rotations: int,
    deadline: float,
    pref: Sequence[int] | None = None,
    start: int | None = None,
) -> list[int] | None:
    n = cons.n
    allowed = cons.allowed
    free = cons.free
    other_end = cons.other_end
    forced = cons.forced
    if getattr(cons, "forced_cycle", None):
        return list(cons.forced_cycle)
    if start is None:
        starts = _bits(free)
        start = rng.choice(starts)
    path: list[int] = []
    pos = [-1] * n
    unvisited = (1 << n) - 1

    def visit(c: int) -> None:
        nonlocal unvisited
        for v in _segment(cons, c):
            pos[v] = len(path)
            path.append(v)
            unvisited &= ~(1 << v)

    def rotate(i: int) -> None:
        # join end to path[i], cut (path[i], path[i+1]), reverse the tail
        tail = path[i + 1:]
        tail.reverse()
        path[i + 1:] = tail
        for k in range(i + 1, len(path)):
            pos[path[k]] = k

    def flip() -> None:
        path.reverse()
        for k, v in enumerate(path):
            pos[v] = k

    def pick(mask: int) -> int:
        count = mask.bit_count()
        if count == 1:
            return mask.bit_length() - 1
        if count <= 8:
            cands = _bits(mask)
        else:
            cands = []
            for _ in range(6):
                r = rng.randrange(n)
                shifted = mask >> r
                c = r + (shifted & -shifted).bit_length() - 1 if shifted else (mask & -mask).bit_length() - 1
                cands.append(c)
        best, best_key = -1, None
        for c in cands:
            key = ((allowed[other_end[c]] & unvisited).bit_count(), rng.random())
            if best_key is None or key < best_key:
                best, best_key = c, key
        return best

    visit(start)
    rotations = 0
    steps = 0
    while True:
        steps += 1
        if steps & 255 == 0 and time.monotonic() > deadline:
            return None
        end = path[-1]
        if len(path) == n:
            first = path[0]
            if n >= 3 and allowed[end] >> first & 1:
                return path
            # look for a rotation whose new end closes the cycle
            row = allowed[end] & ~(1 << path[-2])
            for w in _bits(row):
                i = pos[w]
                nxt = path[i + 1]
                if not forced(w, nxt) and allowed[first] >> nxt & 1:
                    rotate(i)
                    return path
        else:
            avail = allowed[end] & unvisited & free
            if avail:
                if pref is not None and pref[end] & avail:
                    avail &= pref[end]
                visit(pick(avail))
                continue
        # stuck: rotate
        if len(path) < 2:
            return None
        rotations += 1
        if rotations > max_rotations:
            return None
        if rng.random() < 0.1:
            flip()
            end = path[-1]
        row = allowed[end] & ~unvisited & ~(1 << path[-2]) & ~(1 << end)
        options = [w for w in _bits(row) if not forced(w, path[pos[w] + 1])]
        if not options:
            flip()
            continue
        rng.shuffle(options)
        chosen = options[0]
        if len(path) < n:
            for w in options:
                if allowed[path[pos[w] + 1]] & unvisited & free:
                    chosen = w
                    break
        rotate(pos[chosen])


def _exact_cycle(cons: _Constraints, node_cap: int) -> list[int] | None | bool:
    """Subset DP over paths from a fixed start.

    Returns a cycle, ``None`` if none exists, or ``False`` if the node cap
    was hit before deciding.
    """
    n = cons.n
    allowed, fmask = cons.allowed, cons.fmask
    if getattr(cons, "forced_cycle", None):
        return list(cons.forced_cycle)
    free = _bits(cons.free)
    if not free:
        return None
    s = free[0]
    size = 1 << n
    reach = [0] * size
    reach[1 << s] = 1 << s
    nodes = 0
    for mask in range(size):
        ends = reach[mask]
        if not ends or not mask >> s & 1:
            continue
        for e in _bits(ends):
            nodes += 1
            if nodes > node_cap:
                return False
            nxt = allowed[e] & ~mask
            pending = fmask[e] & ~mask
            if pending:
                if pending & (pending - 1):
                    continue
                nxt &= pending
            while nxt:
                low = nxt & -nxt
                nxt ^= low
                reach[mask | low] |= low
    full = size - 1
    closing = [e for e in _bits(reach[full]) if allowed[e] >> s & 1 and e != s]
    if n < 3 or not closing:
        return None
    # walk back through the table
    order = [closing[0]]
    mask = full
    while len(order) < n:
        cur = order[-1]
        prev_mask = mask & ~(1 << cur)
        for e in _bits(reach[prev_mask]):
            if not allowed[e] >> cur & 1:
                continue
            pending = fmask[e] & ~prev_mask
            if pending and pending != 1 << cur:
                continue
            order.append(e)
            mask = prev_mask
            break
        else:
            raise AssertionError("inconsistent DP table")
    order.reverse()
    return order


def _bipartite_obstruction(n: int, allowed: Sequence[int]) -> bool:
    """True if the graph is bipartite with unequal sides (no Hamilton cycle)."""
    colour = [-1] * n
    sides = [0, 0]
    for s in range(n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            sides[colour[v]] += 1
            for w in _bits(allowed[v]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return sides[0] != sides[1]


def _structural_obstruction(n: int, allowed: Sequence[int]) -> str:
    if any((row.bit_count() < 2) for row in allowed):
        return "a vertex has fewer than two usable edges"
    seen = 1
    frontier = 1
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = allowed[low.bit_length() - 1] & ~seen
        seen |= new
        frontier |= new
    if seen != (1 << n) - 1:
        return "graph is disconnected"
    if _bipartite_obstruction(n, allowed):
        return "bipartite with unequal sides"
    return ""


def search_cycle(
    n: int,
    allowed: Sequence[int],
    budget: SearchBudget = DEFAULT_BUDGET,
    rng: random.Random | None = None,
    pref: Sequence[int] | None = None,
    forced: Iterable[Edge] = (),
    start: int | None = None,
) -> list[int] | Exhausted:
    """Low-level entry point on bitset rows; returns a vertex order or Exhausted."""
    rng = rng or random.Random(0)
    cons = _Constraints(n, allowed, forced)
    if not cons.ok:
        return Exhausted(cons.reason, proven_none=True)
    why = _structural_obstruction(n, cons.allowed)
    if why:
        return Exhausted(why, proven_none=True)
    small = n <= budget.exact_cap
    restarts = min(budget.restarts, 2) if small else budget.restarts
    rotations = min(budget.max_rotations, 50 * n) if small else budget.max_rotations
    deadline = budget.deadline()
    for _ in range(restarts):
        found = _rotation_extension(cons, rng, rotations, deadline, pref, start)
        if found is not None:
            return found
        if time.monotonic() > deadline:
            return Exhausted("time cap reached")
    if small:
        found = _exact_cycle(cons, budget.max_backtrack_nodes)
        if found is None:
            return Exhausted("exhaustive search found no Hamilton cycle", proven_none=True)
        if found is not False:
            return found
        return Exhausted("backtrack node budget exhausted")
    return Exhausted("rotation budget exhausted")


def forced_edges_feasible(n: int, edges: Iterable[Edge]) -> bool:
    """True if ``edges`` can lie on one Hamilton cycle of K_n: a linear
    forest, or a Hamilton cycle itself."""
    return _Constraints(n, [0] * n, edges).ok


def _rows(g: Graph) -> list[int]:
    return [g.bits(v) for v in range(g.n)]


# -- public operations --------------------------------------------------------


def find_hamilton_cycle(g: Graph, budget: SearchBudget = DEFAULT_BUDGET, seed: int = 0) -> HamiltonCycle | Exhausted:
    if g.n < 3:
        raise ParameterError(f"a Hamilton cycle needs n >= 3, got n={g.n}")
    rng = seeding.python_random(seed, seeding.SEARCH)
    found = search_cycle(g.n, _rows(g), budget, rng)
    if not found:
        return found
    cycle = HamiltonCycle(tuple(found))
    assert cycle.verify(g)
    return cycle


def hamilton_path_between(g: Graph, x: int, y: int, budget: SearchBudget = DEFAULT_BUDGET, seed: int = 0) -> HamiltonPath | Exhausted:
    """Hamilton path from ``x`` to ``y``.

    A helper vertex adjacent to exactly ``x`` and ``y`` is added with both of
    its edges forced; a Hamilton cycle of the extended graph is a Hamilton
    path of ``g`` between ``x`` and ``y``.
    """
    if x == y:
        raise ParameterError("path endpoints must differ")
    n = g.n
    if not (0 <= x < n and 0 <= y < n):
        raise ParameterError(f"endpoint out of range for n={n}")
    if n == 2:
        return HamiltonPath((x, y)) if g.has_edge(x, y) else Exhausted("no edge", proven_none=True)
    z = n
    rows = _rows(g) + [(1 << x) | (1 << y)]
    rows[x] |= 1 << z
    rows[y] |= 1 << z
    rng = seeding.python_random(seed, seeding.SEARCH, x, y)
    found = search_cycle(n + 1, rows, budget, rng, forced=[(x, z), (z, y)], start=x)
    if not found:
        return found
    i = found.index(z)
    order = found[i + 1:] + found[:i]
    if order[0] != x:
        order.reverse()
    path = HamiltonPath(tuple(order))
    assert path.verify(g, x, y)
    return path


def even_regular_spanning_subgraph(g: Graph, seed: int = 0) -> Graph:
    """An r-regular spanning subgraph with r = δ(G) rounded down to even."""
    if g.n == 0 or g.min_degree < 2:
        raise ParameterError("minimum degree must be at least 2")
    r = g.min_degree - (g.min_degree % 2)
    res = find_f_factor(FFactorInstance(g, [r] * g.n), seed=seed)
    if not res:
        raise RegularizationError(f"no {r}-factor ({res.reason})", res.certificate)
    return res.subgraph


def _check_disjoint(graphs: Sequence[Graph]) -> None:
    seen: set[Edge] = set()
    for k, h in enumerate(graphs):
        if seen & h.edges:
            raise ParameterError(f"graph {k} shares edges with an earlier graph")
        seen |= h.edges


def cover_with_hamilton_cycles(
    h0: Graph,
    pool: Sequence[Graph] = (),
    budget: SearchBudget = DEFAULT_BUDGET,
    seed: int = 0,
) -> list[HamiltonCycle] | Exhausted:
    """Pairwise edge-disjoint Hamilton cycles in ``h0 ∪ pool`` covering ``h0``.

    Each round takes one cycle through the unused edges. Vertices whose
    uncovered ``h0`` degree is currently maximal may only use uncovered
    ``h0`` edges, so that maximum drops by two per round; other vertices
    prefer ``h0`` edges and fall back to pool edges. On failure the
    uncovered residual is reported in the reason.
    """
    n = h0.n
    r = h0.max_degree
    if n < 3 or not h0.is_regular(r) or r % 2:
        raise ParameterError("H0 must be even-regular on at least 3 vertices")
    if any(p.n != n for p in pool):
        raise ParameterError("pool graphs must share the vertex set of H0")
    _check_disjoint([h0, *pool])
    rng = seeding.python_random(seed, seeding.SEARCH, 1)
    residual = _rows(h0)
    spare = [0] * n
    for p in pool:
        for v in range(n):
            spare[v] |= p.bits(v)
    cycles: list[HamiltonCycle] = []
    deadline = budget.deadline()
    while any(residual):
        degs = [row.bit_count() for row in residual]
        top = max(degs)
        tight = sum(1 << v for v in range(n) if degs[v] == top)
        allowed = []
        for v in range(n):
            if tight >> v & 1:
                allowed.append(residual[v])
            else:
                allowed.append(residual[v] | (spare[v] & ~tight))
        found = search_cycle(n, allowed, budget, rng, pref=residual)
        if not found:
            # relax: let tight vertices use pool edges as well
            allowed = [residual[v] | spare[v] for v in range(n)]
            found = search_cycle(n, allowed, budget, rng, pref=residual)
        if not found:
            left = sum(degs) // 2
            return Exhausted(f"{left} edges of H0 left uncovered: {found.reason}")
        cyc = HamiltonCycle(tuple(found))
        for a, b in cyc.edges():
            if residual[a] >> b & 1:
                residual[a] &= ~(1 << b)
                residual[b] &= ~(1 << a)
            else:
                spare[a] &= ~(1 << b)
                spare[b] &= ~(1 << a)
        cycles.append(cyc)
        if time.monotonic() > deadline:
            return Exhausted("time cap reached while covering")
    return cycles


def pack_hamilton_cycles(
    g: Graph,
    target: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    seed: int = 0,
) -> list[HamiltonCycle]:
    """Up to ``target`` pairwise edge-disjoint Hamilton cycles of ``g``.

    Never more than ⌊δ/2⌋. A whole packing attempt restarts from scratch
    with a fresh stream when a round fails, keeping the best attempt.
    """
    if target < 0:
        raise ParameterError("target must be non-negative")
    if g.n < 3:
        return []
    cap = min(target, g.min_degree // 2)
    best: list[HamiltonCycle] = []
    deadline = budget.deadline()
    for attempt in range(budget.restarts):
        rng = seeding.python_random(seed, seeding.SEARCH, 2, attempt)
        rows = _rows(g)
        cycles: list[HamiltonCycle] = []
        while len(cycles) < cap:
            remaining = cap - len(cycles)
            degs = [row.bit_count() for row in rows]
            # vertices with spare degree prefer edges towards other roomy vertices
            roomy = sum(1 << v for v in range(g.n) if degs[v] > 2 * remaining)
            pref = [rows[v] & roomy for v in range(g.n)]
            found = search_cycle(g.n, rows, budget, rng, pref=pref)
            if not found:
                break
            for i in range(g.n):
                a, b = found[i - 1], found[i]
                rows[a] &= ~(1 << b)
                rows[b] &= ~(1 << a)
            cycles.append(HamiltonCycle(tuple(found)))
        if len(cycles) > len(best):
            best = cycles
        if len(best) >= cap or time.monotonic() > deadline:
            break
    assert len(best) <= g.min_degree // 2
    return best
