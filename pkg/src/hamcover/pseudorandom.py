"""Checks of jumbledness, edge-distribution and degree properties.

Subset-quantified properties are checked exactly by enumerating all
``2^n`` subsets with numpy for ``n <= EXACT_CAP``. Sampled mode covers all
singletons, all pairs when ``n <= 64``, ``k`` random subsets per size class
``2, 4, 8, ...`` and greedy adversarial sets; for the two-set edge bounds the
best ``T`` for each sampled ``S`` is found exactly. Graphs with
``n <= SAMPLED_EXHAUSTIVE_CAP`` are enumerated in sampled mode too, so both
modes agree on them.

Logarithms are natural.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import seeding
from .errors import CapabilityError, ParameterError
from .graph import Graph, degree_profile, edges_between, edges_within, external_neighbourhood

EXACT_CAP = 18
SAMPLED_EXHAUSTIVE_CAP = 14
DEFAULT_SAMPLES = 64

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"
EXACT, SAMPLED = "exact", "sampled"


@dataclass
class PropertyReport:
    property: str
    verdict: str
    mode: str
    margin: float
    witness: tuple | None = None
    samples: int = 0
    seed: int | None = None
    params: dict = field(default_factory=dict)
    clauses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        def plain(w):
            if isinstance(w, (tuple, list, frozenset, set)):
                items = sorted(w) if isinstance(w, (frozenset, set)) else w
                return [plain(x) for x in items]
            return w

        out = {
            "property": self.property,
            "verdict": self.verdict,
            "mode": self.mode,
            "witness": plain(self.witness) if self.witness is not None else None,
            "margin": _finite(self.margin),
        }
        if self.mode == SAMPLED:
            out["samples"] = self.samples
            out["seed"] = self.seed
        if self.clauses:
            out["clauses"] = {k: _finite(v) for k, v in self.clauses.items()}
        return out


def _finite(x: float):
    return x if math.isfinite(x) else None


def _log(n: int) -> float:
    return math.log(n) if n > 1 else 0.0


# -- subset enumeration helpers ----------------------------------------------


def _all_subset_edges(g: Graph) -> np.ndarray:
    """``e(S)`` for every subset bitmask S (index = mask)."""
    n = g.n
    e = np.zeros(1 << n, dtype=np.int32)
    for k in range(n):
        lo = np.arange(1 << k, dtype=np.int64)
        e[1 << k: 1 << (k + 1)] = e[: 1 << k] + np.bitwise_count(lo & g.bits(k)).astype(np.int32)
    return e


def _all_subset_neighbourhoods(g: Graph) -> np.ndarray:
    """Union of neighbourhoods for every subset bitmask (not excluding S)."""
    n = g.n
    nb = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        nb[1 << k: 1 << (k + 1)] = nb[: 1 << k] | g.bits(k)
    return nb


def _popcounts(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int32)


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _membership(n: int, masks: np.ndarray) -> np.ndarray:
    """0/1 matrix with one row per mask."""
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1).astype(np.int8)


# -- sampling ----------------------------------------------------------------


def _sample_sets(g: Graph, k: int, seed: int, max_size: int | None = None) -> list[np.ndarray]:
    """Candidate vertex sets as boolean rows: singletons, pairs, random, greedy."""
    n = g.n
    top = n if max_size is None else max(1, min(n, max_size))
    rng = seeding.generator(seed, seeding.SAMPLING)
    rows: list[np.ndarray] = []
    eye = np.eye(n, dtype=bool)
    rows.extend(eye[: n])
    if n <= 64 and top >= 2:
        for i in range(n):
            for j in range(i + 1, n):
                r = np.zeros(n, dtype=bool)
                r[i] = r[j] = True
                rows.append(r)
    size = 2
    while size <= top:
        for _ in range(k):
            r = np.zeros(n, dtype=bool)
            r[rng.choice(n, size=size, replace=False)] = True
            rows.append(r)
        size *= 2
    if top == n:
        rows.append(np.ones(n, dtype=bool))
    rows.extend(_greedy_peel(g, top))
    return rows


def _greedy_peel(g: Graph, top: int) -> list[np.ndarray]:
    """Nested sets from peeling min-degree (dense) or max-degree (sparse) vertices."""
    n = g.n
    adj = np.zeros((n, n), dtype=np.int32)
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = 1
    out = []
    for densest in (True, False):
        alive = np.ones(n, dtype=bool)
        deg = adj.sum(axis=1)
        for _ in range(n - 1):
            if alive.sum() <= top:
                out.append(alive.copy())
            masked = np.where(alive, deg, np.iinfo(np.int32).max if densest else -1)
            v = int(np.argmin(masked) if densest else np.argmax(masked))
            alive[v] = False
            deg = deg - adj[v]
    return out


def _greedy_small_neighbourhood(g: Graph, size: int, starts: Iterable[int]) -> list[tuple[int, ...]]:
    """Grow sets adding the vertex that enlarges N(S) ∪ S the least."""
    out = []
    n = g.n
    for s in starts:
        members = [s]
        closed = g.bits(s) | (1 << s)
        out.append(tuple(members))
        while len(members) < size:
            best, best_gain = -1, None
            for v in range(n):
                if v in members:
                    continue
                gain = ((g.bits(v) | (1 << v)) & ~closed).bit_count()
                if best_gain is None or gain < best_gain:
                    best, best_gain = v, gain
            members.append(best)
            closed |= g.bits(best) | (1 << best)
            out.append(tuple(members))
    return out


# -- jumbledness -------------------------------------------------------------


def _resolve_mode(g: Graph, mode: str) -> bool:
    """Return True when the check should enumerate all subsets."""
    if mode == EXACT:
        if g.n > EXACT_CAP:
            raise CapabilityError(f"exact mode supports n <= {EXACT_CAP}, got n={g.n}")
        return True
    if mode == SAMPLED:
        return g.n <= SAMPLED_EXHAUSTIVE_CAP
    raise ParameterError(f"unknown mode {mode!r}")


def check_jumbled(
    g: Graph,
    p: float,
    beta: float,
    mode: str = EXACT,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    name: str = "JUMBLED",
) -> PropertyReport:
    """``|e(S) - p C(|S|,2)| < beta |S|`` for all non-empty S.

    Also checks the implied two-set bound ``|e(X,Y) - p|X||Y|| <= 2 beta
    (|X|+|Y|)`` on sampled disjoint pairs; its slack is reported as a clause.
    """
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if beta < 0:
        raise ParameterError("beta must be non-negative")
    n = g.n
    exhaustive = _resolve_mode(g, mode)
    params = {"p": p, "beta": beta}
    if n == 0:
        return PropertyReport(name, PASS, mode, math.inf, params=params)
    if exhaustive:
        e = _all_subset_edges(g).astype(float)
        s = _popcounts(n).astype(float)
        slack = beta * s - np.abs(e - p * s * (s - 1) / 2)
        slack[0] = np.inf
        idx = int(np.argmin(slack))
        margin = float(slack[idx])
        witness_set = _mask_members(idx)
    else:
        rows = _sample_sets(g, samples, seed)
        margin, witness_set = math.inf, ()
        for r in rows:
            members = tuple(int(v) for v in np.flatnonzero(r))
            k = len(members)
            value = beta * k - abs(edges_within(g, members) - p * k * (k - 1) / 2)
            if value < margin:
                margin, witness_set = value, members
    pair_margin, pair_witness = _two_set_slack(g, p, beta, samples, seed)
    k = len(witness_set)
    deviation = edges_within(g, witness_set) - p * k * (k - 1) / 2 if k else 0.0
    clauses = {"subset": margin, "two_set": pair_margin, "deviation": deviation}
    if margin <= 0:
        return PropertyReport(name, FAIL, mode, margin, (witness_set,), samples, seed, params, clauses)
    if pair_margin < 0:
        return PropertyReport(name, FAIL, mode, pair_margin, pair_witness, samples, seed, params, clauses)
    return PropertyReport(name, PASS, mode, margin, None, samples, seed, params, clauses)


def _two_set_slack(g: Graph, p: float, beta: float, samples: int, seed: int):
    n = g.n
    rng = seeding.python_random(seed, seeding.SAMPLING, 1)
    best, witness = math.inf, None
    for _ in range(samples):
        labels = [rng.randrange(3) for _ in range(n)]
        X = tuple(v for v in range(n) if labels[v] == 1)
        Y = tuple(v for v in range(n) if labels[v] == 2)
        if not X or not Y:
            continue
        value = 2 * beta * (len(X) + len(Y)) - abs(edges_between(g, X, Y) - p * len(X) * len(Y))
        if value < best:
            best, witness = value, (X, Y)
    return best, witness


# -- edge distribution -------------------------------------------------------


def _p2_bound_table(n: int, p: float, strong: bool) -> np.ndarray:
    """bound[s, t] on e(S,T) for |S|=s, |T|=t (min of applicable clauses)."""
    low_c, high_c = (1.5, 6.0) if strong else (2.0, 7.0)
    logn = _log(n)
    table = np.full((n + 1, n + 1), np.inf)
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            lhs = (1 / s + 1 / t) * logn / p if p > 0 else math.inf
            b = math.inf
            if lhs >= 3.5:
                b = min(b, low_c * (s + t) * logn)
            if lhs <= 3.5:
                b = min(b, high_c * s * t * p)
            table[s, t] = b
    return table


def _p3_bound(n: int, p: float, strong: bool, s: np.ndarray) -> np.ndarray:
    low_c, high_c = (1.5, 3.0) if strong else (2.0, 3.5)
    logn = _log(n)
    s = s.astype(float)
    with np.errstate(divide="ignore"):
        lhs = np.where(s > 0, logn / (s * p) if p > 0 else np.inf, np.inf)
    b = np.full(s.shape, np.inf)
    b = np.where(lhs >= 1.75, np.minimum(b, low_c * s * logn), b)
    b = np.where(lhs <= 1.75, np.minimum(b, high_c * s * s * p), b)
    return b


def _best_t_slack(counts: np.ndarray, members: np.ndarray, table: np.ndarray):
    """For each row S: min over T ⊆ V∖S of bound(|S|,|T|) - e(S,T).

    ``counts[i, v] = |N(v) ∩ S_i|``; the best T of size t takes the t
    largest counts outside S, so the minimum is over prefix sums.
    """
    rows, n = counts.shape
    c = np.where(members, -1, counts).astype(np.int32)
    c = -np.sort(-c, axis=1)
    sizes = members.sum(axis=1)
    pref = np.cumsum(np.maximum(c, 0), axis=1)
    t_idx = np.arange(1, n + 1)
    bounds = table[sizes[:, None], np.minimum(t_idx[None, :], n)]
    valid = t_idx[None, :] <= (n - sizes)[:, None]
    valid &= (sizes > 0)[:, None]
    slack = np.where(valid, bounds - pref, np.inf)
    best_t = np.argmin(slack, axis=1)
    return slack[np.arange(rows), best_t], best_t + 1


def _p2_check(g: Graph, p: float, strong: bool, exhaustive: bool, samples: int, seed: int):
    n = g.n
    table = _p2_bound_table(n, p, strong)
    adj = np.zeros((n, n), dtype=np.int32)
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = 1
    best, witness = math.inf, None
    if exhaustive:
        masks = np.arange(1, 1 << n, dtype=np.int64)
        batches = [masks[i: i + 65536] for i in range(0, len(masks), 65536)]
        member_batches = (_membership(n, b).astype(bool) for b in batches)
    else:
        rows = _sample_sets(g, samples, seed)
        member_batches = (np.array(rows[i: i + 4096]) for i in range(0, len(rows), 4096))
    for members in member_batches:
        counts = members.astype(np.int32) @ adj
        slack, t_sizes = _best_t_slack(counts, members, table)
        i = int(np.argmin(slack))
        if slack[i] < best:
            best = float(slack[i])
            S = tuple(int(v) for v in np.flatnonzero(members[i]))
            outside = [v for v in range(n) if v not in S]
            outside.sort(key=lambda v: -int(counts[i, v]))
            witness = (S, tuple(sorted(outside[: int(t_sizes[i])])))
    return best, witness


def _p3_check(g: Graph, p: float, strong: bool, exhaustive: bool, samples: int, seed: int):
    n = g.n
    if exhaustive:
        e = _all_subset_edges(g).astype(float)
        s = _popcounts(n)
        slack = _p3_bound(n, p, strong, s) - e
        slack[0] = np.inf
        idx = int(np.argmin(slack))
        return float(slack[idx]), (_mask_members(idx),)
    best, witness = math.inf, None
    for r in _sample_sets(g, samples, seed):
        members = tuple(int(v) for v in np.flatnonzero(r))
        value = float(_p3_bound(n, p, strong, np.array([len(members)]))[0] - edges_within(g, members))
        if value < best:
            best, witness = value, (members,)
    return best, witness


# -- degree properties -------------------------------------------------------


def _p4_clauses(g: Graph, p: float) -> dict:
    n, np_ = g.n, g.n * p
    lower = np_ - 2 * math.sqrt(np_ * _log(n))
    upper = np_ - 200 * math.sqrt(np_ * (1 - p))
    d = g.min_degree
    return {"lower": d - lower, "upper": upper - d}


def _p5_clause(g: Graph, p: float, strong: bool) -> float:
    n, np_ = g.n, g.n * p
    c = 15 / 8 if strong else 2.0
    return np_ + c * math.sqrt(np_ * _log(n)) - g.max_degree


def check_strongly_2_jumping(g: Graph) -> PropertyReport:
    """Average degree of every T is at least δ + min(|T|-1, log²n).

    The minimum average over sets of size k is attained by the k lowest
    degrees, so checking the n prefixes of the sorted degree sequence is
    exact.
    """
    n = g.n
    if n < 2:
        raise ParameterError("need n >= 2")
    degs = g.degrees()
    order = sorted(range(n), key=lambda v: (degs[v], v))
    delta = degs[order[0]]
    cap = _log(n) ** 2
    total = 0
    best, best_k = math.inf, 0
    for k in range(1, n + 1):
        total += degs[order[k - 1]]
        slack = total / k - delta - min(k - 1, cap)
        if slack < best:
            best, best_k = slack, k
    if best < 0:
        return PropertyReport("STRONG2JUMP", FAIL, EXACT, best, (tuple(sorted(order[:best_k])),))
    return PropertyReport("STRONG2JUMP", PASS, EXACT, best)


def strongly_2_jumping_brute_force(g: Graph) -> bool:
    """All-subsets reference check for small graphs."""
    n = g.n
    degs = g.degrees()
    delta = min(degs)
    cap = _log(n) ** 2
    for mask in range(1, 1 << n):
        members = _mask_members(mask)
        k = len(members)
        if sum(degs[v] for v in members) < k * (delta + min(k - 1, cap)) - 1e-9:
            return False
    return True


def check_downjumping(g: Graph, u: float) -> PropertyReport:
    if u < 1:
        raise ParameterError("u must be at least 1")
    prof = degree_profile(g)
    params = {"u": u}
    if prof.unique_max is None:
        return PropertyReport("DOWNJUMP", FAIL, EXACT, -u, (tuple(prof.argmax_vertices),), params=params)
    margin = prof.downjump_gap - u
    if margin < 0:
        return PropertyReport("DOWNJUMP", FAIL, EXACT, margin, ((prof.unique_max,),), params=params)
    return PropertyReport("DOWNJUMP", PASS, EXACT, margin, params=params)


# -- Hamilton-connectivity criterion -----------------------------------------


def _hp1(g: Graph, exhaustive: bool, samples: int, seed: int) -> PropertyReport:
    """Margin is min |N(S)|/|S| - 20, so the witness is the worst expander."""
    n = g.n
    limit = int(math.floor(n / math.sqrt(_log(n)))) if n > 2 else n
    limit = max(0, min(limit, n))
    if limit == 0:
        return PropertyReport("HP1", PASS, EXACT if exhaustive else SAMPLED, math.inf,
                              samples=samples, seed=seed)
    if exhaustive:
        nb = _all_subset_neighbourhoods(g)
        masks = np.arange(1 << n, dtype=np.int64)
        s = _popcounts(n)
        ext = np.bitwise_count(nb & ~masks).astype(np.int64)
        ratio = ext / np.maximum(s, 1) - 20.0
        slack = np.where((s >= 1) & (s <= limit), ratio, np.inf)
        idx = int(np.argmin(slack))
        margin = float(slack[idx])
        witness = (_mask_members(idx),)
        mode = EXACT
    else:
        candidates = [tuple(int(v) for v in np.flatnonzero(r)) for r in _sample_sets(g, samples, seed, limit)]
        degs = g.degrees()
        starts = sorted(range(n), key=lambda v: (degs[v], v))[:4]
        candidates += _greedy_small_neighbourhood(g, limit, starts)
        margin, witness = math.inf, None
        for S in candidates:
            if not 1 <= len(S) <= limit:
                continue
            value = len(external_neighbourhood(g, S)) / len(S) - 20
            if value < margin:
                margin, witness = value, (S,)
        mode = SAMPLED
    if margin < 0:
        return PropertyReport("HP1", FAIL, mode, margin, witness, samples, seed)
    return PropertyReport("HP1", PASS, mode, margin, None, samples, seed)


def _hp2(g: Graph, exhaustive: bool, samples: int, seed: int) -> PropertyReport:
    n = g.n
    size = math.ceil(n / _log(n)) if n > 1 else n + 1
    mode = EXACT if exhaustive else SAMPLED
    if size < 1 or 2 * size > n:
        return PropertyReport("HP2", PASS, mode, math.inf, samples=samples, seed=seed)
    # A violating pair shrinks to |A| = size; B is then any `size` vertices
    # outside A ∪ N(A). So the check is: n - |A| - |N(A)| < size for all A.
    if exhaustive and math.comb(n, size) <= 2_000_000:
        from itertools import combinations

        candidates = combinations(range(n), size)
    else:
        rng = seeding.python_random(seed, seeding.SAMPLING, 2)
        degs = g.degrees()
        starts = sorted(range(n), key=lambda v: (degs[v], v))[:4]
        candidates = [tuple(sorted(rng.sample(range(n), size))) for _ in range(samples)]
        candidates += [S for S in _greedy_small_neighbourhood(g, size, starts) if len(S) == size]
        mode = SAMPLED
    margin, witness = math.inf, None
    for A in candidates:
        closed = 0
        for v in A:
            closed |= g.bits(v) | (1 << v)
        free = n - closed.bit_count()
        value = size - free - 1  # >= 0 iff fewer than `size` non-neighbours
        if value < margin:
            margin = value
            if value < 0:
                # grow to the maximal pair: B = V - N[A], A = vertices with no neighbour in B
                bmask = ((1 << n) - 1) & ~closed
                B = tuple(v for v in range(n) if bmask >> v & 1)
                A_max = tuple(v for v in range(n) if not bmask >> v & 1 and not g.bits(v) & bmask)
                witness = (A_max, B)
        if margin < 0:
            break
    if margin < 0:
        return PropertyReport("HP2", FAIL, mode, margin, witness, samples, seed)
    return PropertyReport("HP2", PASS, mode, margin, None, samples, seed)


def check_hamilton_connectivity_criterion(
    g: Graph, mode: str = EXACT, samples: int = DEFAULT_SAMPLES, seed: int = 0
) -> list[PropertyReport]:
    """HP1: |N(S)| >= 20|S| for |S| <= n/sqrt(log n); HP2: an edge between
    any two disjoint sets of size >= n/log n."""
    if g.n < 3:
        raise ParameterError("need n >= 3")
    exhaustive = _resolve_mode(g, mode)
    return [_hp1(g, exhaustive, samples, seed), _hp2(g, exhaustive, samples, seed)]


# -- bundles -----------------------------------------------------------------


def check_pseudorandom(
    g: Graph,
    p: float,
    strength: str = "normal",
    mode: str = EXACT,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> list[PropertyReport]:
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if strength not in ("normal", "strong"):
        raise ParameterError(f"unknown strength {strength!r}")
    strong = strength == "strong"
    tag = "SP" if strong else "P"
    n = g.n
    exhaustive = _resolve_mode(g, mode)
    label = EXACT if exhaustive and mode == EXACT else SAMPLED
    reports = []
    beta = (1.5 if strong else 2.0) * math.sqrt(n * p * (1 - p))
    reports.append(check_jumbled(g, p, beta, mode, samples, seed, name=f"{tag}1"))

    for number, checker in ((2, _p2_check), (3, _p3_check)):
        margin, witness = checker(g, p, strong, exhaustive, samples, seed)
        verdict = FAIL if margin < 0 else PASS
        reports.append(PropertyReport(f"{tag}{number}", verdict, label, margin,
                                      witness if verdict == FAIL else None, samples, seed, {"p": p}))

    clauses = _p4_clauses(g, p)
    margin = min(clauses.values())
    worst = min(range(n), key=lambda v: (g.degree(v), v)) if n else None
    reports.append(PropertyReport(f"{tag}4", FAIL if margin < 0 else PASS, EXACT, margin,
                                  ((worst,),) if margin < 0 else None, params={"p": p}, clauses=clauses))
    margin = _p5_clause(g, p, strong)
    top = max(range(n), key=lambda v: (g.degree(v), -v)) if n else None
    reports.append(PropertyReport(f"{tag}5", FAIL if margin < 0 else PASS, EXACT, margin,
                                  ((top,),) if margin < 0 else None, params={"p": p}))
    jump = check_strongly_2_jumping(g)
    jump.property = f"{tag}6"
    reports.append(jump)
    for r in reports:
        if r.mode == SAMPLED:
            r.samples, r.seed = samples, seed
    return reports


def recheck_witness(g: Graph, report: PropertyReport) -> bool:
    """Re-evaluate a failing report's witness against its defining inequality.

    Returns True iff the witness really violates the property.
    """
    if report.verdict != FAIL or report.witness is None:
        return False
    prop = report.property
    n = g.n
    p = report.params.get("p")
    strong = prop.startswith("SP")
    number = prop[-1]
    w = report.witness
    if prop in ("JUMBLED", "P1", "SP1"):
        beta = report.params["beta"]
        if len(w) == 1:
            S = w[0]
            return abs(edges_within(g, S) - p * len(S) * (len(S) - 1) / 2) >= beta * len(S)
        X, Y = w
        return abs(edges_between(g, X, Y) - p * len(X) * len(Y)) > 2 * beta * (len(X) + len(Y))
    if prop in ("P2", "SP2"):
        S, T = w
        if set(S) & set(T) or not S or not T:
            return False
        bound = _p2_bound_table(n, p, strong)[len(S), len(T)]
        return edges_between(g, S, T) > bound
    if prop in ("P3", "SP3"):
        S = w[0]
        return edges_within(g, S) > float(_p3_bound(n, p, strong, np.array([len(S)]))[0])
    if prop in ("P4", "SP4"):
        v = w[0][0]
        return g.degree(v) == g.min_degree and min(_p4_clauses(g, p).values()) < 0
    if prop in ("P5", "SP5"):
        v = w[0][0]
        return g.degree(v) == g.max_degree and _p5_clause(g, p, strong) < 0
    if prop in ("P6", "SP6", "STRONG2JUMP"):
        T = w[0]
        degs = g.degrees()
        k = len(T)
        return sum(degs[v] for v in T) < k * (min(degs) + min(k - 1, _log(n) ** 2))
    if prop == "DOWNJUMP":
        prof = degree_profile(g)
        return prof.unique_max is None or prof.downjump_gap < report.params["u"]
    if prop == "HP1":
        S = w[0]
        return len(external_neighbourhood(g, S)) < 20 * len(S) and len(S) <= n / math.sqrt(_log(n))
    if prop == "HP2":
        A, B = w
        size = n / _log(n)
        return (not set(A) & set(B) and len(A) >= size and len(B) >= size
                and edges_between(g, A, B) == 0)
    if number.isdigit():
        return False
    raise ParameterError(f"unknown property {prop!r}")


# -- misc --------------------------------------------------------------------


def chernoff_tail(n: int, p: float, a: float) -> float:
    """Upper bound ``exp(-a² n p / 3)`` on P(Bin(n, p) <= (1 - a) n p)."""
    if not 0 < a < 1:
        raise ParameterError("a must lie in (0, 1)")
    return math.exp(-a * a * n * p / 3)


def augment_star(g: Graph, x0: int, F: Iterable[Sequence[int]], p: float | None = None) -> Graph:
    """``G + F`` for a set F of new edges at ``x0``.

    The size bound ``|F| <= sqrt(np log n)/8`` and the exclusion of the
    minimum-degree vertex are warned about rather than enforced, so the
    boundary of the statement can be probed.
    """
    F = [tuple(e) for e in F]
    for a, b in F:
        if x0 not in (a, b):
            raise ParameterError(f"edge ({a}, {b}) is not incident to x0={x0}")
        if g.has_edge(a, b):
            raise ParameterError(f"edge ({a}, {b}) is already present")
    if p is not None and g.n > 1 and len(F) > math.sqrt(g.n * p * _log(g.n)) / 8:
        warnings.warn(f"|F| = {len(F)} exceeds sqrt(np log n)/8", stacklevel=2)
    delta = g.min_degree if g.n else 0
    if any(g.degree(a) == delta or g.degree(b) == delta for a, b in F):
        warnings.warn("F touches a minimum-degree vertex", stacklevel=2)
    return g.add_edges(F)
