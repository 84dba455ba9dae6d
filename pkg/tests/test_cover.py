import math
import random
from decimal import Decimal, getcontext

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamcover.cover import (
    CoverCertificate,
    build_split_plan,
    brute_force_min_cover,
    check_star_conditions,
    cover_all_but_star,
    desk_split_plan,
    enumerate_hamilton_cycles,
    finish_cover,
    hitting_time_experiment,
    lower_bound,
    optimal_cover,
    parity_obstruction_check,
    slice_count_parameter,
    verify_cover,
)
from hamcover.errors import CoverFailure, ParameterError
from hamcover.graph import Graph, complete_graph, cycle_graph, generate_gnp, norm_edge, star_graph
from hamcover.hamilton import HamiltonCycle


def _ladder_p2_decimal(n, p):
    getcontext().prec = 40
    n, p = Decimal(n), Decimal(p)
    logn = n.ln()
    return (n * p) ** Decimal("0.75") * logn ** Decimal("3.5") / n


def test_literal_plan_is_out_of_range_at_large_n():
    plan = build_split_plan(10**6, 0.99)
    assert not plan.valid
    assert plan.raw["p2"] == pytest.approx(float(_ladder_p2_decimal(10**6, 0.99)), rel=1e-12)
    assert plan.raw["p2"] > 1 and plan.p2 == 1.0


@given(st.integers(100, 10**6), st.floats(0.05, 0.95))
@settings(max_examples=40)
def test_slice_count_monotone_in_n(n, p):
    assert slice_count_parameter(n, p) <= slice_count_parameter(2 * n, p)


def test_plan_slices_sum_to_layer_density():
    for plan in (build_split_plan(500, 0.5), desk_split_plan(128, 0.5)):
        for i in (2, 3, 4):
            assert len(plan.slices[i]) == 2 * getattr(plan, f"m{i}") + 1
            assert sum(plan.slices[i]) == pytest.approx(getattr(plan, f"p{i}"))


def test_desk_plan_rejects_overfull_layers():
    with pytest.raises(ParameterError):
        desk_split_plan(64, 0.3, q=0.1, q4=0.1)
    plan = desk_split_plan(64, 0.3)
    assert plan.p1 + plan.p2 + plan.p3 <= plan.p + 1e-12 and plan.p3_prime <= plan.p2


def test_cycle_graph_short_circuits():
    cycles, F, _ = cover_all_but_star(cycle_graph(9))
    assert F == [] and len(cycles) == 1
    cert = optimal_cover(cycle_graph(9))
    assert len(cert.cycles) == 1 and cert.optimal and verify_cover(cycle_graph(9), cert)


def test_structured_route_names_failing_stage():
    with pytest.raises(CoverFailure) as info:
        cover_all_but_star(complete_graph(7))
    assert info.value.stage == "setup"
    g = generate_gnp(64, 0.5, 3)
    with pytest.raises(CoverFailure) as info:
        cover_all_but_star(g, build_split_plan(64, 0.5))
    assert info.value.stage == "setup"


def _k9_pieces():
    d = optimal_cover(complete_graph(9)).cycles
    star = [e for e in d[2].edges() if 0 in e]
    g = Graph(9, [*d[0].edges(), *d[1].edges(), *star])
    return g, d[:2], star


def test_finish_pairs_star_edges_into_one_cycle():
    g, cycles, F = _k9_pieces()
    assert check_star_conditions(g, cycles, F, 0).ok
    cert = finish_cover(g, cycles, F, 0)
    assert len(cert.cycles) == 3 == lower_bound(g)
    assert verify_cover(g, cert)


def test_finish_with_empty_star_keeps_cycles():
    g, cycles, _ = _k9_pieces()
    h = Graph(9, [e for c in cycles for e in c.edges()])
    cert = finish_cover(h, cycles, [], 0)
    assert cert.cycles == list(cycles) and cert.optimal


def test_finish_rejects_broken_star_conditions():
    g, cycles, F = _k9_pieces()
    with pytest.raises(CoverFailure) as info:
        finish_cover(g, cycles[:1], F, 0)
    assert info.value.stage == "finish"


def test_complete_graph_decompositions():
    for n in (5, 7):
        cert = optimal_cover(complete_graph(n))
        assert len(cert.cycles) == (n - 1) // 2 and cert.optimal
        report = parity_obstruction_check(complete_graph(n), cert)
        assert report.ok and report.all_multiplicity_one


def test_k5_minus_edge_needs_three():
    g = complete_graph(5).remove_edges([(0, 1)])
    assert brute_force_min_cover(g) == 3
    cert = optimal_cover(g)
    assert len(cert.cycles) == 3 and not cert.optimal and verify_cover(g, cert)


def test_k5_minus_edge_parity_witnesses():
    g = complete_graph(5).remove_edges([(0, 1)])
    cert = optimal_cover(g)
    # vertices 0 and 1 have degree 3; each needs its own doubly covered edge
    report = parity_obstruction_check(g, cert)
    assert report.odd_vertices == (0, 1)
    assert report.ok and report.distinct_witnesses
    assert report.witnesses[0] != report.witnesses[1]
    assert all(v in report.witnesses[v] for v in (0, 1))


def test_brute_force_examples():
    assert len(enumerate_hamilton_cycles(complete_graph(5))) == 12
    assert brute_force_min_cover(complete_graph(5)) == 2
    assert brute_force_min_cover(cycle_graph(6)) == 1
    assert brute_force_min_cover(complete_graph(7).remove_edges([(0, 1)])) == 4
    assert brute_force_min_cover(star_graph(3)) is None


def test_verify_names_violations():
    k5 = complete_graph(5)
    cycles = optimal_cover(k5).cycles
    assert verify_cover(k5, cycles)
    missing = verify_cover(k5, cycles[:1])
    assert missing.violation == "uncovered-edge"
    bad = verify_cover(k5.remove_edges([(0, 1)]), [HamiltonCycle((0, 1, 2, 3, 4))])
    assert bad.violation == "non-edge" and "cycle 0" in bad.detail
    short = verify_cover(k5, [HamiltonCycle((0, 1, 2, 3))])
    assert short.violation == "not-a-permutation"
    assert verify_cover(k5, []).violation == "no-cycles"


def test_certificate_json_round_trip():
    g = complete_graph(7)
    cert = optimal_cover(g)
    back = CoverCertificate.from_json(cert.to_json(), g)
    assert [c.order for c in back.cycles] == [c.order for c in cert.cycles]
    assert back.optimal and verify_cover(g, back)
    with pytest.raises(ParameterError):
        CoverCertificate.from_json({"cycles": [["a"]]}, g)


def test_unknown_strategy_rejected():
    with pytest.raises(ParameterError):
        optimal_cover(complete_graph(5), strategy="magic")


def test_tampered_output_is_rejected():
    g = generate_gnp(40, 0.5, 2)
    cert = optimal_cover(g, seed=2)
    order = list(cert.cycles[0].order)
    order[1], order[5] = order[5], order[1]
    tampered = [HamiltonCycle(tuple(order)), *cert.cycles[1:]]
    check = verify_cover(g, tampered)
    # a swap keeps a permutation, so either a non-edge or an uncovered edge shows up
    assert not check and check.violation in ("non-edge", "uncovered-edge")


@given(st.integers(3, 30), st.floats(0.3, 1.0), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_covers_meet_lower_bound(n, p, seed):
    g = generate_gnp(n, p, seed)
    try:
        cert = optimal_cover(g, seed=seed)
    except CoverFailure:
        return
    assert verify_cover(g, cert)
    assert len(cert.cycles) >= lower_bound(g)


@given(st.integers(4, 8), st.floats(0.4, 1.0), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_small_covers_match_brute_force(n, p, seed):
    g = generate_gnp(n, p, seed)
    best = brute_force_min_cover(g)
    if best is None:
        with pytest.raises(CoverFailure):
            optimal_cover(g, seed=seed)
        return
    cert = optimal_cover(g, seed=seed)
    assert len(cert.cycles) == best
    assert cert.optimal == (best == lower_bound(g))


def test_hitting_times_on_small_processes():
    for seed in range(8):
        ht = hitting_time_experiment(8, seed)
        assert ht.t_hamiltonian is not None and ht.t_hamiltonian >= 8
        if ht.t_cover_estimate is not None:
            assert ht.t_hamiltonian <= ht.t_cover_estimate <= math.comb(8, 2)


def test_complete_graph_is_the_process_endpoint():
    # at t = C(n, 2) the cover exists for odd n; one edge earlier it does not
    for n in (5, 7):
        assert brute_force_min_cover(complete_graph(n)) == (n - 1) // 2
        e = random.Random(n).choice(sorted(complete_graph(n).edges))
        assert brute_force_min_cover(complete_graph(n).remove_edges([norm_edge(*e)])) > (n - 1) // 2
