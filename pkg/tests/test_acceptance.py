"""Acceptance gate: one test per criterion, each with its own time limit.

The conftest prints a PASS/FAIL line per criterion at the end of the run.
"""

import csv
import itertools
import time

import pytest

from hamcover import seeding
from hamcover.cover import (
    STRUCTURED,
    brute_force_min_cover,
    check_star_conditions,
    cover_all_but_star,
    desk_split_plan,
    enumerate_hamilton_cycles,
    lower_bound,
    optimal_cover,
    parity_obstruction_check,
    verify_cover,
)
from hamcover.errors import CoverFailure
from hamcover.factor import (
    FFactorInstance,
    RegularizationError,
    brute_force_f_factor,
    find_f_factor,
    regularize,
    tutte_deficiency,
)
from hamcover.graph import complete_graph, generate_gnp
from hamcover.hamilton import HamiltonCycle, hamilton_path_between, pack_hamilton_cycles
from hamcover.harness import ExperimentConfig, rows_to_csv, run_experiment
from hamcover.pseudorandom import (
    EXACT,
    SAMPLED,
    check_pseudorandom,
    check_strongly_2_jumping,
    strongly_2_jumping_brute_force,
)

pytestmark = pytest.mark.slow


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _rng(criterion):
    return seeding.python_random(2024, seeding.EXPERIMENT, criterion)


def test_criterion_01_lower_bound_invariant():
    rng = _rng(1)
    covers = violations = 0
    with Timer() as t:
        while covers < 500:
            n = rng.randint(5, 64)
            g = generate_gnp(n, rng.uniform(0.3, 0.95), rng.randrange(2**32))
            try:
                cert = optimal_cover(g, seed=covers)
            except CoverFailure:
                continue
            assert verify_cover(g, cert)
            covers += 1
            violations += len(cert.cycles) < lower_bound(g)
    print(f"{covers} covers, {violations} violations, {t.elapsed:.1f}s")
    assert violations == 0
    assert t.elapsed < 60


def test_criterion_02_complete_graph_decompositions():
    with Timer() as t:
        for n in (5, 7, 9, 11):
            g = complete_graph(n)
            cert = optimal_cover(g)
            assert len(cert.cycles) == (n - 1) // 2
            assert verify_cover(g, cert)
            report = parity_obstruction_check(g, cert)
            assert report.multiplicity_profile == {1: g.m}
    assert t.elapsed < 30


def test_criterion_03_k5_minus_edge():
    g = complete_graph(5).remove_edges([(0, 1)])
    with Timer() as t:
        assert brute_force_min_cover(g) == 3 > lower_bound(g) == 2
        cycles = [HamiltonCycle(c) for c in enumerate_hamilton_cycles(g)]
        covers = [list(c) for c in itertools.combinations(cycles, 3) if verify_cover(g, list(c))]
        assert covers
        for cover in covers:
            report = parity_obstruction_check(g, cover)
            assert report.odd_vertices == (0, 1)
            assert report.ok and report.distinct_witnesses
            w0, w1 = report.witnesses[0], report.witnesses[1]
            assert w0 != w1 and 0 in w0 and 1 in w1
    print(f"{len(covers)} valid 3-covers checked")
    assert t.elapsed < 60


def _factor_instances():
    rng = _rng(4)
    out = []
    for _ in range(200):
        n = rng.randint(2, 12)
        g = generate_gnp(n, rng.uniform(0.2, 0.9), rng.randrange(2**32))
        f = [rng.randint(0, g.degree(v)) for v in range(n)]
        if sum(f) % 2:
            v = max(range(n), key=lambda u: g.degree(u) - f[u])
            f[v] += 1 if f[v] < g.degree(v) else -1
        out.append(FFactorInstance(g, f))
    return out


@pytest.fixture(scope="module")
def factor_results():
    start = time.perf_counter()
    results = [(inst, find_f_factor(inst), brute_force_f_factor(inst)) for inst in _factor_instances()]
    return results, time.perf_counter() - start


def test_criterion_04_f_factor_oracle(factor_results):
    results, elapsed = factor_results
    agree = sum(bool(res) == (oracle is not None) for _, res, oracle in results)
    assert all(sum(inst.demand) % 2 == 0 for inst, _, _ in results)
    for inst, res, _ in results:
        if res:
            assert res.verify(inst)
    print(f"{agree}/200 agree, {sum(bool(r) for _, r, _ in results)} feasible, {elapsed:.1f}s")
    assert agree == 200
    assert elapsed < 180


def test_criterion_05_tutte_certificates(factor_results):
    results, _ = factor_results
    infeasible = [(inst, res) for inst, res, _ in results if not res]
    assert infeasible
    for inst, res in infeasible:
        cert = res.certificate
        assert cert is not None
        again = tutte_deficiency(inst, cert.X, cert.Y)
        assert again.alpha > again.beta
    print(f"{len(infeasible)} certificates re-evaluated")


def _regularize_pair(seed, n=60):
    rng = seeding.python_random(seed, seeding.PROCESS, 6)
    h = generate_gnp(n, 0.3, seed)
    x0 = max(range(n), key=lambda v: (h.degree(v), -v))
    others = max(h.degree(v) for v in range(n) if v != x0)
    missing = [v for v in range(n) if v != x0 and not h.has_edge(x0, v)]
    rng.shuffle(missing)
    h = h.add_edges([(x0, v) for v in missing[:max(0, others + 2 - h.degree(x0))]])
    if h.degree(x0) % 2:
        h = h.add_edges([(x0, v) for v in range(n) if v != x0 and not h.has_edge(x0, v)][:1])
    g = generate_gnp(n, 0.5, seed + 10**6).difference(h.without_vertex_edges(x0))
    return h, g, x0


def test_criterion_06_regularization_contract():
    successes = violations = 0
    with Timer() as t:
        for seed in range(50):
            h, g, x0 = _regularize_pair(seed)
            assert h.degree(x0) > max(h.degree(v) for v in range(h.n) if v != x0)
            assert not (h.without_vertex_edges(x0).edges & g.without_vertex_edges(x0).edges)
            try:
                out = regularize(h, g, x0, seed=seed)
            except RegularizationError:
                continue
            successes += 1
            ok = (out.is_regular(h.max_degree) and out.neighbors(x0) == h.neighbors(x0)
                  and h.is_subgraph_of(out) and out.is_subgraph_of(h.union(g)))
            violations += not ok
    print(f"{successes}/50 regularized, {violations} violations, {t.elapsed:.1f}s")
    assert violations == 0
    assert t.elapsed < 120


def test_criterion_07_checker_exactness():
    rng = _rng(7)
    disagreements = 0
    with Timer() as t:
        for k in range(100):
            n = rng.randint(4, 14)
            p = rng.uniform(0.2, 0.8)
            g = generate_gnp(n, p, rng.randrange(2**32))
            for strength in ("normal", "strong"):
                exact = check_pseudorandom(g, p, strength, EXACT)
                sampled = check_pseudorandom(g, p, strength, SAMPLED, seed=k)
                disagreements += [r.verdict for r in exact] != [r.verdict for r in sampled]
        prefix_mismatch = 0
        for _ in range(100):
            n = rng.randint(2, 12)
            g = generate_gnp(n, rng.uniform(0.1, 0.9), rng.randrange(2**32))
            prefix_mismatch += check_strongly_2_jumping(g).passed != strongly_2_jumping_brute_force(g)
    print(f"battery disagreements {disagreements}, prefix mismatches {prefix_mismatch}, {t.elapsed:.1f}s")
    assert disagreements == 0 and prefix_mismatch == 0
    assert t.elapsed < 180


def test_criterion_08_desk_scale_pipeline():
    lines = []
    total = verified = optimal = 0
    with Timer() as t:
        for n, p in itertools.product((64, 128, 256), (0.3, 0.5)):
            plan = desk_split_plan(n, p)
            cell_ok = cell_opt = 0
            for k in range(30):
                seed = seeding.derive_seed(8, seeding.EXPERIMENT, n, int(p * 10), k)
                g = generate_gnp(n, p, seed)
                total += 1
                try:
                    cert = optimal_cover(g, seed, plan=plan)
                except CoverFailure:
                    continue
                assert verify_cover(g, cert)
                if cert.strategy == STRUCTURED:
                    cycles, F, state = cover_all_but_star(g, plan, seed)
                    assert check_star_conditions(g, cycles, F, state.x0).ok
                cell_ok += 1
                cell_opt += cert.optimal
            verified += cell_ok
            optimal += cell_opt
            lines.append(f"n={n} p={p}: {cell_ok}/30 verified, {cell_opt}/30 optimal")
    print("\n".join(lines), f"\ntotal {t.elapsed:.1f}s")
    assert verified >= 0.9 * total
    assert optimal >= 0.75 * total
    assert t.elapsed < 600


def test_criterion_09_packing_regression():
    hits = 0
    with Timer() as t:
        for seed in range(100):
            g = generate_gnp(128, 0.5, seed)
            cap = g.min_degree // 2
            cycles = pack_hamilton_cycles(g, cap, seed=seed)
            assert len(cycles) <= cap
            assert all(c.verify(g) for c in cycles)
            assert len({e for c in cycles for e in c.edges()}) == 128 * len(cycles)
            hits += len(cycles) == cap
    print(f"{hits}/100 reached floor(delta/2), {t.elapsed:.1f}s")
    assert hits >= 90
    assert t.elapsed < 300


def test_criterion_10_hamilton_connectivity():
    successes = trials = 0
    with Timer() as t:
        for seed in range(20):
            g = generate_gnp(128, 0.5, seed)
            x0 = max(range(g.n), key=lambda v: (g.degree(v), -v))
            h, _ = g.delete_vertex(x0)
            rng = seeding.python_random(seed, seeding.EXPERIMENT, 10)
            for _ in range(20):
                x, y = rng.sample(range(h.n), 2)
                path = hamilton_path_between(h, x, y, seed=trials)
                trials += 1
                if path:
                    assert path.verify(h, x, y)
                    successes += 1
    print(f"{successes}/{trials} pairs joined, {t.elapsed:.1f}s")
    assert successes >= 0.95 * trials
    assert t.elapsed < 180


def _tamper(g, cycles, kind, rng):
    """Return a copy of ``cycles`` that is certainly not a valid cover of g."""
    cycles = [list(c.order) for c in cycles]
    n = g.n
    if kind == "dropped cycle":
        # covers of size ceil(delta/2) lose an edge at a max-degree vertex
        del cycles[rng.randrange(len(cycles))]
    else:
        while True:
            k = rng.randrange(len(cycles))
            order = cycles[k][:]
            i, j = sorted(rng.sample(range(n), 2))
            if kind == "vertex swap":
                order[i], order[j] = order[j], order[i]
            else:  # edge flip: reverse a segment, replacing two cycle edges
                order[i + 1:j + 1] = reversed(order[i + 1:j + 1])
            if any(not g.has_edge(order[a - 1], order[a]) for a in range(n)):
                cycles[k] = order
                break
    return [HamiltonCycle(tuple(c)) for c in cycles]


def test_criterion_11_mutation_rejection():
    rng = _rng(11)
    rejected = 0
    kinds = ("edge flip", "vertex swap", "dropped cycle")
    with Timer() as t:
        certs = []
        for seed in range(10):
            g = generate_gnp(40, 0.5, seed)
            cert = optimal_cover(g, seed=seed)
            assert cert.optimal
            certs.append((g, cert))
        for k in range(100):
            g, cert = certs[k % len(certs)]
            check = verify_cover(g, _tamper(g, cert.cycles, kinds[k % 3], rng))
            rejected += (not check) and check.violation in ("non-edge", "uncovered-edge", "not-a-permutation")
    print(f"{rejected}/100 tampered certificates rejected, {t.elapsed:.1f}s")
    assert rejected == 100
    assert t.elapsed < 30


CONFIGS = [
    dict(grid=((32, 0.3), (48, 0.5)), mode="cover", seeds=4, master_seed=12),
    dict(grid=((40, 0.5),), mode="pack", seeds=3, master_seed=3),
    dict(grid=((14, 0.5),), mode="survey", seed_list=(1, 2)),
    dict(grid=((9, 0.0),), mode="hitting-time", seeds=2),
]


def _untimed(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        row.pop("wall_time")
    return rows


def test_criterion_12_determinism(tmp_path):
    with Timer() as t:
        for i, cfg in enumerate(CONFIGS):
            tables, files = [], []
            for run in range(2):
                csv_path = tmp_path / f"c{i}_{run}.csv"
                rows = run_experiment(ExperimentConfig(**cfg, csv_path=str(csv_path)))
                tables.append(rows_to_csv(rows, timing=False).encode("utf-8"))
                files.append(_untimed(csv_path))
            assert tables[0] == tables[1], cfg
            assert files[0] == files[1] and len(files[0]) == len(rows)
    print(f"{len(CONFIGS)} configs reproduced, {t.elapsed:.1f}s")
    assert t.elapsed < 120
