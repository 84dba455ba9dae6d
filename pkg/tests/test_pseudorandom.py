import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamcover.errors import CapabilityError, ParameterError
from hamcover.graph import Graph, complete_graph, cycle_graph, empty_graph, generate_gnp, path_graph, star_graph
from hamcover.pseudorandom import (
    EXACT,
    FAIL,
    PASS,
    SAMPLED,
    augment_star,
    check_downjumping,
    check_hamilton_connectivity_criterion,
    check_jumbled,
    check_pseudorandom,
    check_strongly_2_jumping,
    chernoff_tail,
    recheck_witness,
    strongly_2_jumping_brute_force,
)


def test_jumbled_complete_and_empty():
    k6 = check_jumbled(complete_graph(6), 1.0, 0.1, EXACT)
    assert k6.verdict == PASS
    e6 = check_jumbled(empty_graph(6), 1.0, 0.1, EXACT)
    assert e6.verdict == FAIL
    assert e6.witness == ((0, 1, 2, 3, 4, 5),)
    assert e6.clauses["deviation"] == -15
    assert recheck_witness(empty_graph(6), e6)


def test_jumbled_exact_cap():
    with pytest.raises(CapabilityError):
        check_jumbled(complete_graph(19), 0.5, 1.0, EXACT)


def test_jumbled_pass_rate_regression():
    # exact enumeration over all 2^14 subsets for each sample
    passed = 0
    for seed in range(20):
        g = generate_gnp(14, 0.5, seed)
        beta = 2 * math.sqrt(14 * 0.25)
        passed += check_jumbled(g, 0.5, beta, EXACT).passed
    assert passed == 20


def test_p4_on_complete_graph_reports_both_clauses():
    r = {x.property: x for x in check_pseudorandom(complete_graph(20), 1.0, mode=SAMPLED)}["P4"]
    # delta = 19 against np - 200 sqrt(np(1-p)) = 20 and np - 2 sqrt(np log n)
    assert r.clauses["upper"] == pytest.approx(1.0)
    assert r.clauses["lower"] == pytest.approx(19 - (20 - 2 * math.sqrt(20 * math.log(20))))
    assert r.verdict == PASS


def test_p4_on_empty_graph():
    g = empty_graph(10)
    r = {x.property: x for x in check_pseudorandom(g, 0.5, mode=EXACT)}["P4"]
    assert r.verdict == FAIL
    assert r.clauses["lower"] == pytest.approx(0 - (5 - 2 * math.sqrt(5 * math.log(10))))
    assert recheck_witness(g, r)


def test_strong_battery_labels():
    reports = check_pseudorandom(generate_gnp(12, 0.5, 1), 0.5, "strong", EXACT)
    assert [r.property for r in reports] == ["SP1", "SP2", "SP3", "SP4", "SP5", "SP6"]


def test_strongly_2_jumping_examples():
    p4 = path_graph(4)
    r = check_strongly_2_jumping(p4)
    assert r.verdict == FAIL and recheck_witness(p4, r)
    # the two endpoints alone: average 1 = delta + 0 < delta + 1
    assert recheck_witness(p4, type(r)("P6", FAIL, r.mode, -1.0, ((0, 3),)))
    g = Graph(8, [*star_graph(5).edges, (5, 6), (6, 7)])
    assert check_strongly_2_jumping(g).passed == strongly_2_jumping_brute_force(g)
    assert check_strongly_2_jumping(cycle_graph(7)).verdict == FAIL


def test_downjumping_examples():
    assert check_downjumping(star_graph(4), 3).passed
    assert not check_downjumping(complete_graph(5), 1).passed
    with pytest.raises(ParameterError):
        check_downjumping(star_graph(4), 0)


def test_hamilton_connectivity_examples():
    hp1, hp2 = check_hamilton_connectivity_criterion(complete_graph(100), SAMPLED)
    # n / sqrt(log n) = 46.6, so |S| = 5 is in range and |N(S)| = 95 < 100
    assert hp1.verdict == FAIL and len(hp1.witness[0]) >= 5
    assert recheck_witness(complete_graph(100), hp1)
    assert hp2.verdict == PASS

    isolated = complete_graph(12).without_vertex_edges(3)
    hp1, _ = check_hamilton_connectivity_criterion(isolated, EXACT)
    assert hp1.verdict == FAIL and hp1.witness == ((3,),)

    cliques = Graph(100, [(u, v) for base in (0, 50) for u in range(base, base + 50) for v in range(u + 1, base + 50)])
    _, hp2 = check_hamilton_connectivity_criterion(cliques, SAMPLED)
    assert hp2.verdict == FAIL
    assert {frozenset(s) for s in hp2.witness} == {frozenset(range(50)), frozenset(range(50, 100))}


def test_chernoff_values():
    assert chernoff_tail(300, 0.5, 0.1) == pytest.approx(math.exp(-0.5))
    assert chernoff_tail(3000, 0.1, 0.5) == pytest.approx(math.exp(-25))
    assert chernoff_tail(300, 0.5, 1e-6) == pytest.approx(1.0)
    with pytest.raises(ParameterError):
        chernoff_tail(10, 0.5, 1.0)


def test_augment_star():
    g = generate_gnp(20, 0.5, 2)
    assert augment_star(g, 0, []) == g
    p4 = path_graph(4)
    with pytest.warns(UserWarning, match="minimum-degree"):
        out = augment_star(p4, 1, [(1, 3)])
    assert out.degree(1) == p4.degree(1) + 1 and out.m == 4
    with pytest.raises(ParameterError):
        augment_star(p4, 1, [(1, 2)])
    with pytest.raises(ParameterError):
        augment_star(p4, 1, [(0, 3)])


def test_augment_star_keeps_min_degree():
    g = generate_gnp(30, 0.5, 4)
    x0 = max(range(30), key=g.degree)
    low = {v for v in range(30) if g.degree(v) == g.min_degree}
    F = [(x0, v) for v in range(30) if v != x0 and v not in low and not g.has_edge(x0, v)][:2]
    assert augment_star(g, x0, F).min_degree == g.min_degree


@given(st.integers(5, 12), st.floats(0.2, 0.9), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_failed_witnesses_recheck(n, p, seed):
    g = generate_gnp(n, p, seed)
    for r in check_pseudorandom(g, p, mode=EXACT, seed=seed):
        if r.verdict == FAIL:
            assert recheck_witness(g, r), r


@given(st.integers(4, 11), st.floats(0.1, 0.9), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_prefix_reduction_matches_brute_force(n, p, seed):
    g = generate_gnp(n, p, seed)
    assert check_strongly_2_jumping(g).passed == strongly_2_jumping_brute_force(g)


def test_sampled_mode_finds_planted_dense_set():
    # a clique planted on 16 of 80 vertices breaks P1 at density 0.1
    g = generate_gnp(80, 0.1, 3).add_edges([(u, v) for u in range(16) for v in range(u + 1, 16)])
    beta = 2 * math.sqrt(80 * 0.1 * 0.9)
    r = check_jumbled(g, 0.1, beta, SAMPLED, samples=64, seed=1)
    assert r.verdict == FAIL and recheck_witness(g, r)
