from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from itertools import combinations

import pytest

from kuniform.code import uniformity_engine
from kuniform.code.uniformity_engine import (breaking_witness, certify_uniformity, degree_bound,
                                             min_weight_products, subset_count, subset_product,
                                             unrank_combination)
from kuniform.tools.errors import BudgetExceededError
from kuniform.tools.graph_core import Graph
from kuniform.tools.graph_families import bilayer_typical_products, torus_diagonal
from kuniform.tools.pauli_algebra import to_string, weight
from tests.conftest import family, random_graph


def test_subset_products_of_the_star(star4):
    assert to_string(subset_product(star4, {0, 1})) == '+YYZZ'
    assert to_string(subset_product(star4, [2, 1, 0])) == '-YXYZ'
    assert to_string(subset_product(star4, range(4))) == '-YYYY'
    with pytest.raises(ValueError):
        subset_product(star4, [])
    with pytest.raises(ValueError):
        subset_product(star4, [1, 1])
    with pytest.raises(IndexError):
        subset_product(star4, [4])


def test_product_weight_is_at_least_the_subset_size(rng):
    for _ in range(10_000):
        n = int(rng.integers(1, 13))
        g = random_graph(rng, n, p=rng.random())
        size = int(rng.integers(1, n + 1))
        s = [int(v) for v in rng.choice(n, size=size, replace=False)]
        p = subset_product(g, s)
        assert p.x_bits == sum(1 << v for v in s), "X part must be the indicator of the subset"
        assert weight(p) >= size, f"product over {sorted(s)} has weight {weight(p)} < {size}"


def test_product_support_is_subset_or_neighbourhood_parity(rng):
    for _ in range(2000):
        n = int(rng.integers(1, 11))
        g = random_graph(rng, n, p=rng.random())
        size = int(rng.integers(1, n + 1))
        s = [int(v) for v in rng.choice(n, size=size, replace=False)]
        indicator = sum(1 << v for v in s)
        parity = reduce(lambda acc, v: acc ^ g.adj[v], s, 0)
        p = subset_product(g, s)
        assert p.z_bits == parity
        assert p.support == indicator | parity
        assert weight(p) == (indicator | parity).bit_count()


def test_unranking_follows_lexicographic_order():
    assert [tuple(unrank_combination(7, 3, r)) for r in range(35)] == list(combinations(range(7), 3))
    with pytest.raises(ValueError):
        unrank_combination(5, 2, 10)


def test_subset_count_and_degree_bound(star4, c5, torus55):
    assert subset_count(25, 4) == 25 + 300 + 2300 + 12650
    assert degree_bound(star4) == 1
    assert degree_bound(c5) == 2
    assert degree_bound(torus55) == 4


@pytest.mark.parametrize('n', range(2, 9))
def test_complete_graphs_are_exactly_one_uniform(n):
    g = family('complete', n)
    report = certify_uniformity(g)
    assert report.uniformity == 1
    assert report.exact
    assert report.ame == (n <= 3)
    pair = subset_product(g, {0, 1})
    assert weight(pair) == 2 and to_string(pair).endswith('YY' + 'I' * (n - 2))
    if n >= 4:
        subset, pauli = breaking_witness(report)
        assert subset == (0, 1) and weight(pauli) == 2


@pytest.mark.parametrize('n', [3, 4, 5, 7])
def test_matchings_are_exactly_one_uniform(n):
    report = certify_uniformity(family('matching', n))
    assert report.uniformity == 1 and report.exact
    assert report.ame == (n <= 3)
    if n >= 4:
        subset, pauli = breaking_witness(report)
        assert len(subset) == 2 and weight(pauli) == 2


def test_four_cycle_breaks_at_a_pair(c4):
    report = certify_uniformity(c4)
    assert report.uniformity == 1 and report.exact and not report.ame
    assert report.table.weights() == {1: 3, 2: 2}
    subset, pauli = breaking_witness(report)
    assert subset == (0, 2)
    assert to_string(pauli) == '+XIXI'


@pytest.mark.parametrize('n', range(5, 13))
def test_cycles_are_exactly_two_uniform(n):
    report = certify_uniformity(family('cycle', n))
    assert report.uniformity == 2 and report.exact
    assert report.ame == (n == 5)
    if n > 5:
        subset, pauli = breaking_witness(report)
        assert len(subset) <= 3 and weight(pauli) <= 3
    else:
        assert breaking_witness(report) is None


def test_six_cycle_witness_is_alternate_vertices():
    subset, pauli = breaking_witness(certify_uniformity(family('cycle', 6)))
    assert subset == (0, 2, 4) and to_string(pauli) == '+XIXIXI'


@pytest.mark.parametrize('n', range(3, 7))
def test_bilayers_are_exactly_three_uniform(n):
    g = family('bilayer', n)
    report = certify_uniformity(g)
    assert report.uniformity == 3 and report.exact
    assert report.ame == (n == 3)
    weights = min_weight_products(g, 3).weights()
    assert weights == {1: n + 1, 2: min(4, 2 * n - 2), 3: n + 1}
    for label, subset, expected in bilayer_typical_products(n):
        assert weight(subset_product(g, subset)) == expected, label


def test_five_by_five_torus_is_four_uniform(torus55):
    table = min_weight_products(torus55, 4)
    assert table.weights() == {1: 5, 2: 6, 3: 7, 4: 8}
    assert table.subsets_enumerated == 15275
    report = certify_uniformity(torus55, k_target=4)
    assert report.uniform is True and report.uniformity == 4
    assert weight(subset_product(torus55, torus_diagonal(5, 5, 5))) == 5
    assert weight(subset_product(torus55, torus_diagonal(5, 5, 4))) == 8


@pytest.mark.parametrize('side', [3, 4])
def test_small_tori_are_not_four_uniform(side):
    g = family('torus', rows=side, cols=side)
    report = certify_uniformity(g, k_target=4)
    assert report.uniform is False
    assert report.exact and not report.truncated
    assert weight(subset_product(g, torus_diagonal(side, side, side))) == side


def test_certification_is_monotone_in_k(rng):
    graphs = [random_graph(rng, int(rng.integers(4, 11)), p=0.5) for _ in range(8)]
    graphs += [family('cycle', 7), family('bilayer', 4), family('matching', 6)]
    for g in graphs:
        full = certify_uniformity(g)
        u = full.uniformity
        for j in range(1, u + 1):
            assert certify_uniformity(g, k_target=j).uniform is True, f"{g!r} should be {j}-uniform"
        if u + 1 <= g.n // 2:
            assert certify_uniformity(g, k_target=u + 1).uniform is False, f"{g!r} is only {u}-uniform"


def test_budget_is_checked_before_enumeration(torus55):
    with pytest.raises(BudgetExceededError) as info:
        min_weight_products(torus55, 4, budget=15274)
    assert info.value.required == 15275
    assert info.value.exit_code == 3


def test_budget_truncates_certification(torus55):
    report = certify_uniformity(torus55, k_target=4, budget=400)
    assert report.truncated and not report.exact
    assert report.uniform is None
    assert report.uniformity == 2 and report.table.k_max_searched == 2
    assert report.to_dict()['uniform'] is None


def test_out_of_range_k(c5):
    with pytest.raises(ValueError):
        certify_uniformity(c5, k_target=3)
    with pytest.raises(ValueError):
        min_weight_products(c5, 0)


def test_single_vertex_is_trivially_exact():
    report = certify_uniformity(Graph.from_edges(1, []))
    assert report.uniformity == 0 and report.exact and not report.ame
    assert report.table.weights() == {}


def test_edgeless_pair_fails_at_a_single_vertex():
    report = certify_uniformity(Graph.from_edges(2, []))
    assert report.uniformity == 0 and report.exact
    subset, pauli = breaking_witness(report)
    assert subset == (0,) and to_string(pauli) == '+XI'


def test_results_do_not_depend_on_worker_count(rng):
    for _ in range(3):
        g = random_graph(rng, 12, p=0.6)
        single = certify_uniformity(g, workers=1).to_dict()
        pooled = certify_uniformity(g, workers=3, parallel_min_subsets=0).to_dict()
        assert single == pooled


def test_small_searches_stay_in_process(monkeypatch, c5):
    def refuse(*args, **kwargs):
        pytest.fail("no process pool should start for a 15-subset search")
    monkeypatch.setattr(uniformity_engine, 'ProcessPoolExecutor', refuse)
    assert certify_uniformity(c5, workers=8).uniformity == 2
    assert min_weight_products(c5, 2, workers=8).weights() == {1: 3, 2: 4}


def test_large_searches_use_the_pool(monkeypatch, torus55):
    started = []

    def pool(max_workers):
        started.append(max_workers)
        return ThreadPoolExecutor(max_workers=max_workers)
    monkeypatch.setattr(uniformity_engine, 'ProcessPoolExecutor', pool)
    table = min_weight_products(torus55, 4, workers=2, parallel_min_subsets=10_000)
    assert started == [2]
    assert table.weights() == {1: 5, 2: 6, 3: 7, 4: 8}
    certify_uniformity(torus55, k_target=2, workers=2, parallel_min_subsets=10_000)
    assert started == [2], "325 subsets are below the threshold"


def test_report_json_layout(c5):
    report = certify_uniformity(c5, k_target=2).to_dict()
    assert report['n'] == 5 and report['uniformity'] == 2 and report['ame']
    assert report['min_weights'] == {'1': 3, '2': 4}
    assert report['witnesses']['1'] == {'subset': [0], 'pauli': '+XZIIZ', 'weight': 3}
    assert report['uniform'] is True and report['k_target'] == 2
    assert report['breaking_witness'] is None
