"""Covering every edge of a graph with ⌈Δ/2⌉ Hamilton cycles.

Two routes produce covers:

* the structured pipeline (:func:`cover_all_but_star` then
  :func:`finish_cover`): split the graph into random layers, and in three
  rounds regularize the uncovered part with already-covered edges and cover
  the regular graph by edge-disjoint Hamilton cycles, while holding back a
  set F of edges at the maximum-degree vertex x0; the held-back edges are
  finally paired up and each pair is closed into a cycle through a Hamilton
  path of ``G - x0``;
* a constrained greedy cover, which picks cycles one at a time while
  keeping the remaining count feasible (see :func:`greedy_cover`).

Every certificate is checked by :func:`verify_cover`, which knows nothing
about how it was produced.
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import seeding
from .errors import CoverFailure, ParameterError
from .factor import RegularizationError, regularize
from .graph import Edge, Graph, degree_profile, norm_edge, partition_edges, random_edge_order
from .hamilton import (
    DEFAULT_BUDGET,
    Exhausted,
    HamiltonCycle,
    SearchBudget,
    cover_with_hamilton_cycles,
    find_hamilton_cycle,
    forced_edges_feasible,
    hamilton_path_between,
    search_cycle,
)

STRUCTURED, GREEDY, EXACT = "structured", "greedy", "exact"
EXACT_COVER_CAP = 8  # up to this n, a greedy miss falls back to exhaustive search
MAXMIN_RETRIES = 5
DESK_RATIO = 2.0  # even slices are this many times denser than odd ones


def lower_bound(g: Graph) -> int:
    return math.ceil(g.max_degree / 2)


# -- split plan ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitPlan:
    n: int
    p: float
    p1: float
    p2: float
    p3: float
    p3_prime: float
    p4: float
    m2: int
    m3: int
    m4: int
    slices: dict[int, tuple[float, ...]]
    u: float
    valid: bool
    desk: bool = False
    raw: dict[str, float] = field(default_factory=dict)  # unclamped literal densities

    def slice_count(self, i: int) -> int:
        return len(self.slices[i])


def _slice_densities(pi: float, m: int, ratio: float) -> tuple[float, ...]:
    """2m+1 densities summing to pi; odd-indexed (1-based) slices get weight 1,
    even-indexed ones weight ``ratio``."""
    denom = (ratio + 1) * m + 1
    return tuple(pi / denom if j % 2 == 1 else ratio * pi / denom for j in range(1, 2 * m + 2))


def _ladder(n: int, p: float) -> dict[str, float]:
    logn = math.log(n)
    p2 = (n * p) ** 0.75 * logn ** 3.5 / n
    p3 = (n * p2) ** 0.75 * logn ** 3.5 / n
    p4 = (n * p3) ** 0.75 * logn ** 3.5 / n
    return {"p2": p2, "p3": p3, "p3_prime": 1600 * p3, "p4": p4, "p1": p - 2 * p2 - p3}


def slice_count_parameter(n: int, pi: float) -> int:
    """m_i = log(n² p_i) / log log n, rounded up to an integer >= 1."""
    if pi <= 0 or n < 3:
        return 1
    value = math.log(n * n * pi) / math.log(math.log(n))
    return max(1, math.ceil(value))


def build_split_plan(n: int, p: float) -> SplitPlan:
    """The density ladder with the literal asymptotic formulas.

    Densities are clamped to [0, 1]; ``valid`` is False when any formula left
    that range or ``p1 <= 0``, which happens for every laptop-sized n.
    """
    if n < 3 or not 0 < p < 1:
        raise ParameterError("need n >= 3 and 0 < p < 1")
    raw = _ladder(n, p)
    valid = raw["p1"] > 0 and all(0 < x < 1 for x in raw.values())
    d = {k: min(1.0, max(0.0, x)) for k, x in raw.items()}
    ms = {i: slice_count_parameter(n, d[f"p{i}"]) for i in (2, 3, 4)}
    slices = {i: _slice_densities(d[f"p{i}"], ms[i], 1e10) for i in (2, 3, 4)}
    u = math.sqrt(n * p * (1 - p)) / math.log(n)
    return SplitPlan(n, p, d["p1"], d["p2"], d["p3"], d["p3_prime"], d["p4"],
                     ms[2], ms[3], ms[4], slices, u, valid, raw=raw)


def desk_split_plan(n: int, p: float, q: float | None = None, q4: float | None = None,
                    m: int = 3, ratio: float = DESK_RATIO) -> SplitPlan:
    """Laptop-scale densities keeping the layer structure.

    By default ``p2 = p3 = p4 = q`` with ``q = max(0.05, 10 log n / n)`` capped
    at p/8 so that ``p1 = p - 3q`` still contains ``R2' ∪ R4 ∪ G4``; ``p3'``
    is capped at ``p2`` because G3' is drawn inside G2. ``q`` and ``q4``
    override the middle and last layer densities.
    """
    if n < 3 or not 0 < p < 1:
        raise ParameterError("need n >= 3 and 0 < p < 1")
    if q is None:
        q = min(max(0.05, 10 * math.log(n) / n), p / 8)
    q4 = q if q4 is None else q4
    p1 = p - 3 * q
    if q <= 0 or q4 <= 0 or p1 < q + 2 * q4:
        raise ParameterError(f"layer densities q={q}, q4={q4} do not fit inside p={p}")
    slices = {2: _slice_densities(q, m, ratio), 3: _slice_densities(q, m, ratio),
              4: _slice_densities(q4, m, ratio)}
    u = math.sqrt(n * p * (1 - p)) / math.log(n)
    return SplitPlan(n, p, p1, q, q, min(4 * q, q), q4, m, m, m, slices, u, True, desk=True)


# -- certificates -------------------------------------------------------------


@dataclass
class CoverCertificate:
    cycles: list[HamiltonCycle]
    bound: int
    F_final: list[Edge] = field(default_factory=list)
    strategy: str = GREEDY

    @property
    def optimal(self) -> bool:
        return len(self.cycles) == self.bound

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "cycles": [list(c.order) for c in self.cycles],
            "F_final": [list(e) for e in self.F_final],
            "strategy": self.strategy,
            "optimal": self.optimal,
        }

    @classmethod
    def from_json(cls, obj: dict, g: Graph) -> CoverCertificate:
        try:
            cycles = [HamiltonCycle(tuple(int(v) for v in c)) for c in obj["cycles"]]
            F = [norm_edge(int(a), int(b)) for a, b in obj.get("F_final", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed certificate: {exc}") from exc
        return cls(cycles, lower_bound(g), F, str(obj.get("strategy", GREEDY)))


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    violation: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_cover(g: Graph, cert: CoverCertificate | Sequence[HamiltonCycle]) -> CoverCheck:
    """Every cycle is a Hamilton cycle of G and every edge of G is covered."""
    cycles = cert.cycles if isinstance(cert, CoverCertificate) else list(cert)
    n = g.n
    if not cycles:
        return CoverCheck(g.m == 0, "" if g.m == 0 else "no-cycles", "certificate has no cycles")
    covered: set[Edge] = set()
    for k, c in enumerate(cycles):
        order = list(c.order)
        if len(order) != n or sorted(order) != list(range(n)):
            return CoverCheck(False, "not-a-permutation", f"cycle {k} does not visit every vertex exactly once")
        for i in range(n):
            a, b = order[i - 1], order[i]
            if not g.has_edge(a, b):
                return CoverCheck(False, "non-edge", f"cycle {k} uses non-edge ({a}, {b})")
            covered.add(norm_edge(a, b))
    for e in sorted(g.edges):
        if e not in covered:
            return CoverCheck(False, "uncovered-edge", f"edge {e} is not covered")
    return CoverCheck(True)


def edge_multiplicities(cycles: Iterable[HamiltonCycle]) -> Counter:
    mult: Counter = Counter()
    for c in cycles:
        mult.update(c.edges())
    return mult


@dataclass(frozen=True)
class ParityReport:
    ok: bool
    multiplicity_profile: dict[int, int]
    witnesses: dict[int, Edge]
    unmatched: tuple[int, ...]
    odd_vertices: tuple[int, ...] = ()

    @property
    def distinct_witnesses(self) -> bool:
        """Every odd-degree vertex got its own doubly-covered edge."""
        return len(self.witnesses) == len(self.odd_vertices)

    @property
    def all_multiplicity_one(self) -> bool:
        return set(self.multiplicity_profile) <= {1}


def parity_obstruction_check(g: Graph, cert: CoverCertificate | Sequence[HamiltonCycle]) -> ParityReport:
    """Each odd-degree vertex must have an incident edge covered at least twice.

    A cycle through v uses two edges at v, so an odd number of edges at v
    cannot all be covered exactly once. Witness edges are assigned by a
    matching so that distinct odd vertices get distinct doubly-covered edges
    where possible; ``unmatched`` lists odd vertices that could not get one.
    """
    cycles = cert.cycles if isinstance(cert, CoverCertificate) else list(cert)
    mult = edge_multiplicities(cycles)
    profile = Counter(mult[e] for e in g.edges)
    odd = [v for v in range(g.n) if g.degree(v) % 2]
    options = {v: [norm_edge(v, w) for w in sorted(g.neighbors(v)) if mult[norm_edge(v, w)] >= 2] for v in odd}
    owner: dict[Edge, int] = {}

    def assign(v: int, seen: set[Edge]) -> bool:
        for e in options[v]:
            if e in seen:
                continue
            seen.add(e)
            if e not in owner or assign(owner[e], seen):
                owner[e] = v
                return True
        return False

    for v in odd:
        assign(v, set())
    witnesses = {v: e for e, v in owner.items()}
    unmatched = tuple(v for v in odd if not options[v])
    ok = not unmatched
    return ParityReport(ok, dict(sorted(profile.items())), dict(sorted(witnesses.items())), unmatched, tuple(odd))


# -- brute-force oracle ---------------------------------------------------------


def enumerate_hamilton_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All Hamilton cycles, each once (start at 0, second vertex < last)."""
    n = g.n
    if n < 3:
        return []
    adj = [sorted(g.neighbors(v)) for v in range(n)]
    out = []
    path = [0]
    used = [False] * n
    used[0] = True

    def rec():
        v = path[-1]
        if len(path) == n:
            if g.has_edge(v, 0) and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in adj[v]:
            if not used[w]:
                used[w] = True
                path.append(w)
                rec()
                path.pop()
                used[w] = False

    rec()
    return out


def brute_force_min_cover(g: Graph, cap: int | None = None) -> int | None:
    """Minimum number of Hamilton cycles covering all edges, or None.

    None means no cover exists within ``cap`` cycles (or at all).
    """
    if g.m == 0:
        return 0
    found = exact_min_cover(g, cap)
    return None if found is None else len(found)


def exact_min_cover(g: Graph, cap: int | None = None) -> list[HamiltonCycle] | None:
    """A minimum cover by exhaustive search, or None if none has <= cap cycles.

    All Hamilton cycles are enumerated; the search deepens over the count,
    branches on the uncovered edge with the fewest covering cycles and
    prunes with ``max_v ⌈u(v)/2⌉`` where u(v) counts uncovered edges at v.
    """
    n = g.n
    if g.m == 0:
        return []
    cycles = enumerate_hamilton_cycles(g)
    if not cycles:
        return None
    edges = g.edge_list()
    index = {e: i for i, e in enumerate(edges)}
    masks = []
    for c in cycles:
        m = 0
        for i in range(n):
            m |= 1 << index[norm_edge(c[i - 1], c[i])]
        masks.append(m)
    full = (1 << len(edges)) - 1
    covering = [[k for k, m in enumerate(masks) if m >> i & 1] for i in range(len(edges))]
    if any(not c for c in covering):
        return None
    incident = [0] * n
    for i, (a, b) in enumerate(edges):
        incident[a] |= 1 << i
        incident[b] |= 1 << i
    chosen: list[int] = []

    def need(uncovered: int) -> int:
        return max(((incident[v] & uncovered).bit_count() + 1) // 2 for v in range(n))

    def search(uncovered: int, left: int) -> bool:
        if not uncovered:
            return True
        if need(uncovered) > left:
            return False
        best = None
        rest = uncovered
        while rest:
            low = rest & -rest
            rest ^= low
            i = low.bit_length() - 1
            if best is None or len(covering[i]) < len(covering[best]):
                best = i
        for k in covering[best]:
            chosen.append(k)
            if search(uncovered & ~masks[k], left - 1):
                return True
            chosen.pop()
        return False

    limit = len(edges) if cap is None else cap
    for k in range(lower_bound(g), limit + 1):
        if search(full, k):
            return [HamiltonCycle(cycles[i]) for i in chosen]
    return None


# -- greedy cover ---------------------------------------------------------------


def _greedy_attempt(g: Graph, target: int, rng: random.Random, budget: SearchBudget,
                    deadline: float, lookahead: int = 12) -> list[HamiltonCycle] | None:
    """Pick ``target`` Hamilton cycles covering G, one at a time.

    With R cycles still to pick (this one included), a vertex with u(v)
    uncovered edges must lose at least ``u(v) - 2(R-1)`` of them now. Vertices
    where that is positive may only use uncovered edges; in the last round all
    uncovered edges are forced onto the cycle. The second-to-last round looks
    ahead and rejects cycles that leave an unforceable remainder.
    """
    n = g.n
    rows = [g.bits(v) for v in range(n)]
    unc = list(rows)
    cycles: list[HamiltonCycle] = []
    R = target
    while R >= 1 and any(unc):
        if time.monotonic() > deadline:
            return None
        u = [row.bit_count() for row in unc]
        need = [x - 2 * (R - 1) for x in u]
        if max(need) > 2:
            return None
        forced: list[Edge] = []
        pref = None
        if R == 1:
            forced = [(v, w) for v in range(n) for w in _bits(unc[v]) if v < w]
            allowed = rows
        else:
            restricted = sum(1 << v for v in range(n) if need[v] >= 1)
            allowed = [unc[v] if restricted >> v & 1 else rows[v] & (unc[v] | ~restricted) for v in range(n)]
            pref = unc
        tries = lookahead if R == 2 else 1
        chosen = None
        for _ in range(tries):
            found = search_cycle(n, allowed, budget, rng, pref=pref, forced=forced)
            if not found:
                return None
            left = list(unc)
            for i in range(n):
                a, b = found[i - 1], found[i]
                left[a] &= ~(1 << b)
                left[b] &= ~(1 << a)
            if R == 2:
                rest = [(v, w) for v in range(n) for w in _bits(left[v]) if v < w]
                if not forced_edges_feasible(n, rest):
                    continue
            chosen = (found, left)
            break
        if chosen is None:
            return None
        cycles.append(HamiltonCycle(tuple(chosen[0])))
        unc = chosen[1]
        R -= 1
    return cycles if not any(unc) else None


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


GREEDY_BUDGET = SearchBudget(max_rotations=2000, restarts=3, time_cap=20_000)


def greedy_cover(g: Graph, seed: int = 0, budget: SearchBudget = GREEDY_BUDGET,
                 attempts: int = 6, max_extra: int | None = None) -> CoverCertificate:
    """Constrained greedy cover, trying ⌈Δ/2⌉ cycles first and more if needed."""
    n = g.n
    if n < 3 or g.min_degree < 2:
        raise CoverFailure("graph has a vertex of degree < 2, so no Hamilton cycle", stage="greedy")
    base = lower_bound(g)
    extra_cap = max_extra if max_extra is not None else max(2, base)
    deadline = budget.deadline()
    for extra in range(extra_cap + 1):
        for attempt in range(attempts):
            rng = seeding.python_random(seed, seeding.SEARCH, 7, extra, attempt)
            cycles = _greedy_attempt(g, base + extra, rng, budget, deadline)
            if cycles is not None:
                return CoverCertificate(cycles, base, [], GREEDY)
            if time.monotonic() > deadline:
                break
        if time.monotonic() > deadline:
            break
    raise CoverFailure("greedy cover did not finish within budget", stage="greedy")


# -- structured pipeline -----------------------------------------------------------


@dataclass
class CoverState:
    x0: int
    groups: dict[str, list[HamiltonCycle]] = field(default_factory=dict)
    edge_sets: dict[str, frozenset[Edge]] = field(default_factory=dict)
    residuals: dict[str, Graph] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def cycles(self) -> list[HamiltonCycle]:
        return [c for name in ("HC1", "HC2", "HC3") for c in self.groups.get(name, [])]


@dataclass(frozen=True)
class StarConditions:
    all_outside_F_covered: bool
    F_uncovered: bool
    x0_edges_at_most_once: bool

    @property
    def ok(self) -> bool:
        return self.all_outside_F_covered and self.F_uncovered and self.x0_edges_at_most_once


def check_star_conditions(g: Graph, cycles: Sequence[HamiltonCycle], F: Iterable[Edge], x0: int) -> StarConditions:
    """(i) every edge of G - F covered, (ii) no F edge covered, (iii) no edge
    at x0 covered twice."""
    F = {norm_edge(*e) for e in F}
    mult = edge_multiplicities(cycles)
    cycles_ok = all(c.verify(g) for c in cycles)
    i = cycles_ok and all(mult[e] >= 1 for e in g.edges if e not in F)
    ii = all(mult[e] == 0 for e in F)
    iii = all(mult[norm_edge(x0, w)] <= 1 for w in g.neighbors(x0))
    return StarConditions(i, ii, iii)


def _x0_edges(g: Graph, x0: int) -> set[Edge]:
    return {norm_edge(x0, w) for w in g.neighbors(x0)}


def _union_edges(cycles: Iterable[HamiltonCycle]) -> set[Edge]:
    out: set[Edge] = set()
    for c in cycles:
        out.update(c.edges())
    return out


def _pick_star_edges(candidates: Iterable[Edge], x0: int, count: int, avoid: int | None) -> list[Edge]:
    """Lowest-index other endpoints first, skipping the vertex ``avoid``."""
    ranked = sorted(candidates, key=lambda e: e[0] + e[1] - x0)
    picked = [e for e in ranked if avoid is None or avoid not in e]
    return picked[:count]


def _is_max(h: Graph, x0: int) -> bool:
    return h.degree(x0) == h.max_degree


def _unique_min(h: Graph) -> int | None:
    return degree_profile(h).unique_min


def _partition(g: Graph, plan: SplitPlan, seed: int, attempt: int):
    p = plan.p
    top = partition_edges(g, {"G1": plan.p1 / p, "G2": plan.p2 / p, "G3": plan.p3 / p, "R2": plan.p2 / p},
                          seed, 1, attempt)
    g1 = top["G1"]
    inner = partition_edges(g1, {"R2'": plan.p2 / plan.p1, "R4": plan.p4 / plan.p1, "G4": plan.p4 / plan.p1},
                            seed, 2, attempt)
    g3p = partition_edges(top["G2"], {"G3'": min(1.0, plan.p3_prime / plan.p2)}, seed, 3, attempt)["G3'"]
    parts = {"G1": g1, "G2": top["G2"], "G3": top["G3"], "R2": top["R2"],
             "R2'": inner["R2'"], "R4": inner["R4"], "G4": inner["G4"], "G3'": g3p}
    slices = {}
    for i, name in ((2, "G2"), (3, "G3"), (4, "G4")):
        dens = plan.slices[i]
        total = sum(dens)
        cut = partition_edges(parts[name], [d / total for d in dens], seed, 4, i, attempt)
        slices[i] = [cut[str(j)] for j in range(len(dens))]
    return parts, slices


def cover_all_but_star(
    g: Graph,
    plan: SplitPlan | None = None,
    seed: int = 0,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> tuple[list[HamiltonCycle], list[Edge], CoverState]:
    """Three rounds of regularize-then-cover leaving only star edges at x0.

    Returns ``(cycles, F, state)`` such that every edge of ``G - F`` is
    covered, no edge of F is covered and no edge at x0 is covered twice.
    Raises :class:`CoverFailure` naming the round that failed.
    """
    n = g.n
    if n >= 3 and g.is_regular(2) and g.is_connected():
        order = find_hamilton_cycle(g, budget, seed)
        state = CoverState(x0=0, groups={"HC1": [order]})
        return [order], [], state
    prof = degree_profile(g)
    x0 = prof.unique_max
    if x0 is None:
        raise CoverFailure("no unique maximum-degree vertex", stage="setup")
    if n < 4 or not 0 < g.m < n * (n - 1) // 2:
        raise CoverFailure("graph too small or complete for the layered split", stage="setup")
    p = g.m / (n * (n - 1) / 2)
    plan = plan or desk_split_plan(n, p)
    if not plan.valid:
        raise CoverFailure("split plan densities leave (0, 1); use the desk-scale plan", stage="setup")
    state = CoverState(x0=x0)

    for attempt in range(MAXMIN_RETRIES):
        parts, slices = _partition(g, plan, seed, attempt)
        low_a = _unique_min(parts["R2"].union(parts["G2"], parts["R2'"], parts["G3"]))
        low_b = _unique_min(parts["G3'"].union(parts["G3"], parts["R4"], parts["G4"]))
        if x0 not in (low_a, low_b):
            break
        state.notes.append(f"x0 had minimum degree in a layer union on attempt {attempt}; re-split")
    else:
        raise CoverFailure("x0 kept minimum degree in a layer union", stage="split")

    G1, G2, G3, R2 = parts["G1"], parts["G2"], parts["G3"], parts["R2"]
    R2p, R4, G4, G3p = parts["R2'"], parts["R4"], parts["G4"], parts["G3'"]

    # round 1: hold back F1 ⊇ F* at x0, regularize G1 - F1 with R2, cover with G2 slices
    F_star = _x0_edges(G4, x0)
    size = min(3 * math.ceil(plan.u), G1.degree(x0) - 1)
    size = max(size, len(F_star))
    extra = _pick_star_edges(_x0_edges(G1, x0) - F_star, x0, size - len(F_star), low_a)
    F1 = set(F_star) | set(extra)
    if (G1.degree(x0) - len(F1)) % 2:
        more = _pick_star_edges(_x0_edges(G1, x0) - F1, x0, 1, low_a)
        if more and len(F1) < size + 1:
            F1 |= set(more)
        elif len(F1) > len(F_star):
            F1.discard(max(F1 - F_star, key=lambda e: e[0] + e[1]))
    H1 = G1.remove_edges(F1)
    state.edge_sets.update(F_star=frozenset(F_star), F1=frozenset(F1))
    if not _is_max(H1, x0) or H1.max_degree % 2:
        raise CoverFailure("x0 is not an even maximum-degree vertex of G1 - F1", stage="round 1",
                           residual=H1)
    H1r = _regularize(H1, R2, x0, seed, "round 1")
    HC1 = _cover(H1r, slices[2], x0, budget, seed, "round 1")
    state.groups["HC1"] = HC1
    state.residuals["H1'"] = H1r

    # round 2: uncovered part of G2 ∪ R2, parity fix from F1 \ F*, regularize with R2', cover with G3 slices
    covered = _union_edges(HC1)
    H2 = G2.union(R2).remove_edges(covered)
    if not _is_max(H2, x0):
        raise CoverFailure("x0 is not a maximum-degree vertex of H2", stage="round 2", residual=H2)
    F1p: set[Edge] = set()
    if H2.max_degree % 2:
        pick = _pick_star_edges(F1 - F_star, x0, 1, low_a)
        if not pick:
            raise CoverFailure("no edge of F1 \\ F* left for the parity fix", stage="round 2", residual=H2)
        F1p = set(pick)
    H2p = H2.add_edges(F1p)
    F2 = F1 - F1p
    state.edge_sets.update(F1_prime=frozenset(F1p), F2=frozenset(F2))
    if not _is_max(H2p, x0) or H2p.max_degree % 2:
        raise CoverFailure("x0 is not an even maximum-degree vertex of H2'", stage="round 2", residual=H2p)
    H2r = _regularize(H2p, R2p, x0, seed, "round 2")
    HC2 = _cover(H2r, slices[3], x0, budget, seed, "round 2")
    state.groups["HC2"] = HC2
    state.residuals["H2''"] = H2r

    # round 3: uncovered part of G3 plus F2' ⊆ F2 \ F*, regularize with R4, cover with G4 slices
    covered |= _union_edges(HC2)
    H3 = G3.remove_edges(covered)
    others = max((H3.degree(v) for v in range(n) if v != x0), default=0)
    need = max(0, others + 1 - H3.degree(x0))
    if (H3.degree(x0) + need) % 2:
        need += 1
    spare = F2 - F_star
    pick = _pick_star_edges(spare, x0, need, low_b)
    if len(pick) < need:
        raise CoverFailure(f"need {need} edges of F2 \\ F* but only {len(pick)} usable", stage="round 3",
                           residual=H3)
    F2p = set(pick)
    H3p = H3.add_edges(F2p)
    F3 = F2 - F2p
    state.edge_sets.update(F2_prime=frozenset(F2p), F3=frozenset(F3))
    H3r = _regularize(H3p, R4, x0, seed, "round 3")
    # G3' only helps away from x0: its edges are covered already
    container = G3p.remove_edges(_x0_edges(G3p, x0)).difference(H3r)
    HC3 = _cover(H3r, [*slices[4], container], x0, budget, seed, "round 3")
    state.groups["HC3"] = HC3
    state.residuals["H3''"] = H3r

    cycles = state.cycles
    used = _union_edges(cycles)
    F = sorted(e for e in F3 if e not in used)
    state.edge_sets["F"] = frozenset(F)
    cond = check_star_conditions(g, cycles, F, x0)
    if not cond.ok:
        raise CoverFailure(f"star conditions violated: {cond}", stage="check")
    return cycles, F, state


def _regularize(h: Graph, pool: Graph, x0: int, seed: int, stage: str) -> Graph:
    try:
        return regularize(h, pool, x0, seed=seed)
    except (RegularizationError, ParameterError) as exc:
        raise CoverFailure(f"regularization failed: {exc}", stage=stage, residual=h) from exc


def _cover(h: Graph, pool: Sequence[Graph], x0: int, budget: SearchBudget, seed: int,
           stage: str) -> list[HamiltonCycle]:
    if h.m == 0:
        return []
    if h.max_degree < 2:
        raise CoverFailure("regular graph of degree < 2 cannot be covered", stage=stage, residual=h)
    # pool edges at x0 are off limits: they are either held back or covered once already
    pool = [q.without_vertex_edges(x0).difference(h) for q in pool]
    found = cover_with_hamilton_cycles(h, pool, budget, seed)
    if isinstance(found, Exhausted):
        raise CoverFailure(f"covering failed: {found.reason}", stage=stage, residual=h)
    return found


def finish_cover(
    g: Graph,
    cycles: Sequence[HamiltonCycle],
    F: Iterable[Edge],
    x0: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    seed: int = 0,
    strategy: str = STRUCTURED,
) -> CoverCertificate:
    """Pair up the held-back star edges and close each pair into a cycle.

    For a pair ``x0a, x0b`` a Hamilton path of ``G - x0`` from a to b plus
    x0 is a Hamilton cycle through both edges.
    """
    F = sorted({norm_edge(*e) for e in F})
    cond = check_star_conditions(g, cycles, F, x0)
    if not cond.ok:
        raise CoverFailure(f"input violates the star conditions: {cond}", stage="finish")
    cycles = list(cycles)
    if len(F) % 2:
        spare = sorted(_x0_edges(g, x0) - set(F))
        if not spare:
            raise CoverFailure("no covered x0 edge to even out F", stage="finish")
        F.append(spare[0])
    rest, labels = g.delete_vertex(x0)
    index = {old: new for new, old in enumerate(labels)}
    for k in range(0, len(F), 2):
        a = F[k][0] if F[k][1] == x0 else F[k][1]
        b = F[k + 1][0] if F[k + 1][1] == x0 else F[k + 1][1]
        path = hamilton_path_between(rest, index[a], index[b], budget, seed + k)
        if not path:
            raise CoverFailure(f"no Hamilton path between {a} and {b} in G - x0: {path.reason}",
                               stage="finish")
        order = (x0, *(labels[v] for v in path.order))
        cycles.append(HamiltonCycle(order))
    bound = lower_bound(g)
    cert = CoverCertificate(cycles, bound, F, strategy)
    check = verify_cover(g, cert)
    if not check:
        raise CoverFailure(f"finished cover fails verification: {check.detail}", stage="finish")
    return cert


def optimal_cover(
    g: Graph,
    seed: int = 0,
    budget: SearchBudget = DEFAULT_BUDGET,
    strategy: str = "auto",
    plan: SplitPlan | None = None,
) -> CoverCertificate:
    """A verified Hamilton cycle cover, optimal when it has ⌈Δ/2⌉ cycles.

    ``strategy`` is ``"structured"``, ``"greedy"`` or ``"auto"`` (structured
    first, greedy on failure). On graphs with at most ``EXACT_COVER_CAP``
    vertices a greedy miss at ⌈Δ/2⌉ is settled by exhaustive search, so the
    size is exact there. The returned certificate names the route that
    produced it.
    """
    if strategy not in ("auto", STRUCTURED, GREEDY):
        raise ParameterError(f"unknown strategy {strategy!r}")
    if g.n < 3:
        raise CoverFailure("need at least 3 vertices", stage="setup")
    if strategy in ("auto", STRUCTURED):
        try:
            cycles, F, state = cover_all_but_star(g, plan, seed, budget)
            cert = finish_cover(g, cycles, F, state.x0, budget, seed, STRUCTURED)
            return cert
        except CoverFailure:
            if strategy == STRUCTURED:
                raise
    try:
        cert = greedy_cover(g, seed, max_extra=0 if g.n <= EXACT_COVER_CAP else None)
    except CoverFailure:
        if g.n > EXACT_COVER_CAP:
            raise
        cycles = exact_min_cover(g)
        if cycles is None:
            raise CoverFailure("graph has no Hamilton cycle cover", stage="exact") from None
        cert = CoverCertificate(cycles, lower_bound(g), [], EXACT)
    check = verify_cover(g, cert)
    if not check:
        raise CoverFailure(f"greedy cover fails verification: {check.detail}", stage="greedy")
    return cert


# -- hitting times ------------------------------------------------------------------


@dataclass(frozen=True)
class HittingTimes:
    n: int
    seed: int
    t_hamiltonian: int | None
    t_cover_estimate: int | None


def hitting_time_experiment(n: int, seed: int, budget: SearchBudget = DEFAULT_BUDGET,
                            horizon: int | None = None) -> HittingTimes:
    """First t with a Hamilton cycle, and first t >= that at which a cover
    with ⌈Δ/2⌉ cycles was found (a heuristic upper estimate)."""
    if n < 3:
        raise ParameterError("need n >= 3")
    order = random_edge_order(n, seed)
    total = len(order)
    horizon = total if horizon is None else min(horizon, total)

    def graph_at(t: int) -> Graph:
        return Graph(n, order[:t])

    def hamiltonian(t: int) -> bool:
        h = graph_at(t)
        return h.min_degree >= 2 and bool(find_hamilton_cycle(h, budget, seed))

    # Hamiltonicity is monotone along the process, so bisect
    if not hamiltonian(horizon):
        return HittingTimes(n, seed, None, None)
    lo, hi = n - 1, horizon
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if hamiltonian(mid):
            hi = mid
        else:
            lo = mid
    t_h = hi
    t_c = None
    for t in range(t_h, horizon + 1):
        h = graph_at(t)
        try:
            cert = greedy_cover(h, seed, attempts=3, max_extra=0)
        except CoverFailure:
            continue
        if cert.optimal:
            t_c = t
            break
    return HittingTimes(n, seed, t_h, t_c)
