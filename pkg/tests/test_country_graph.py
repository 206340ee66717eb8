import math
from fractions import Fraction

import networkx as nx
import numpy
import pytest

from expo_tools.country_graph import CountryGraph, CentralityScatter, CentralityRow, build_graph, \
        degree_centrality, closeness_centrality, eigenvector_centrality, load_counts, \
        load_centrality, mean_involved, centrality_scatter
from expo_tools.exposureLib import NoEdges
from expo_tools.synth import countryName


def _graph(edges, nodes=()):
    nodes = set(nodes)
    for a, b in edges:
        nodes.update((a, b))
    return CountryGraph(nodes, edges)


def _fromNx(g):
    names = dict((v, countryName(i)) for i, v in enumerate(sorted(g.nodes())))
    return CountryGraph(names.values(), [(names[a], names[b]) for a, b in g.edges()])


def _oracleGraphs():
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() and nx.is_connected(g):
            yield g
    for seed in range(200):
        n = 2 + seed % 11
        g = nx.gnp_random_graph(n, 0.35, seed=seed)
        yield g


#
# graph construction
#

def test_build_graph(small_store):
    g = build_graph(small_store)
    assert g.nodes == set(['US', 'DE', 'FR', 'GB', 'NL'])
    assert g.edges == set(frozenset(e) for e in [('US', 'DE'), ('US', 'FR'), ('FR', 'DE'), ('US', 'GB'),
                                                   ('GB', 'FR'), ('US', 'NL'), ('NL', 'DE')])


def test_build_graph_is_simple(store_factory):
    store = store_factory({'m1': 'US', 'm2': 'DE'}, [('m1', 'US>DE'), ('m2', 'DE>US'), ('m1', 'US>DE>US>FR')])
    g = build_graph(store)
    assert g.edges == set([frozenset(('US', 'DE')), frozenset(('US', 'FR'))])
    assert all(len(e) == 2 for e in g.edges)


def test_no_self_loops():
    g = CountryGraph(['US', 'DE'], [('US', 'US'), ('US', 'DE'), ('DE', 'US')])
    assert g.edges == set([frozenset(('US', 'DE'))])


#
# metrics on small named graphs
#

def test_degree():
    star = _graph([('HB', x) for x in ('AA', 'BB', 'CC', 'DD')])
    assert degree_centrality(star) == {'HB': 4, 'AA': 1, 'BB': 1, 'CC': 1, 'DD': 1}
    triangle = _graph([('AA', 'BB'), ('BB', 'CC'), ('CC', 'AA')])
    assert set(degree_centrality(triangle).values()) == set([2])


def test_closeness():
    path = _graph([('AA', 'BB'), ('BB', 'CC')])
    c = closeness_centrality(path)
    assert c['BB'] == pytest.approx(1.0)
    assert c['AA'] == pytest.approx(2 / 3.0)
    split = _graph([('AA', 'BB'), ('CC', 'DD')])
    assert closeness_centrality(split)['AA'] == pytest.approx(1 / 3.0)
    assert closeness_centrality(_graph([], ['AA']))['AA'] == 0.0


def test_eigenvector():
    k5 = _fromNx(nx.complete_graph(5))
    for value in eigenvector_centrality(k5).values():
        assert value == pytest.approx(1 / math.sqrt(5), abs=1e-8)
    star = _graph([('HB', x) for x in ('AA', 'BB', 'CC', 'DD')])
    e = eigenvector_centrality(star)
    assert e['HB'] > e['AA']
    assert e['AA'] == pytest.approx(e['DD'])


def test_eigenvector_needs_edges():
    with pytest.raises(NoEdges):
        eigenvector_centrality(_graph([], ['AA', 'BB']))


def test_load_path_graph():
    g = _graph([('AA', 'BB'), ('BB', 'CC')])
    numerators, denominator = load_counts(g)
    assert numerators == {'AA': 0, 'BB': 2, 'CC': 0}
    assert denominator == 6
    assert load_centrality(g)['BB'] == pytest.approx(1 / 3.0)


def test_load_complete_graph():
    assert set(load_centrality(_fromNx(nx.complete_graph(6))).values()) == set([0.0])


def test_load_disconnected():
    g = _graph([('AA', 'BB'), ('BB', 'CC'), ('DD', 'EE')])
    numerators, denominator = load_counts(g)
    assert numerators['BB'] == 2
    assert denominator == 8
    assert load_centrality(_graph([], ['AA'])) == {'AA': 0.0}


#
# oracles
#

def _bruteLoad(g):
    numerators = dict((v, 0) for v in g.nodes())
    denominator = 0
    interior_total = 0
    for s in g.nodes():
        for t in g.nodes():
            if s == t or not nx.has_path(g, s, t):
                continue
            for path in nx.all_shortest_paths(g, s, t):
                denominator += 1
                interior_total += len(path) - 2
                for v in path[1:-1]:
                    numerators[v] += 1
    return numerators, denominator, interior_total


def _bfsCloseness(g, v):
    n = g.number_of_nodes()
    dist = nx.single_source_shortest_path_length(g, v)
    r = len(dist) - 1
    d = sum(dist.values())
    if n < 2 or d == 0:
        return 0.0
    return (r / float(n - 1)) * (r / float(d))


def _denseEigenvector(g, order):
    a = nx.to_numpy_array(g, nodelist=order)
    values, vectors = numpy.linalg.eigh(a)
    v = numpy.abs(vectors[:, numpy.argmax(values)])
    return v / numpy.linalg.norm(v)


def test_degree_and_load_match_enumeration():
    for g in _oracleGraphs():
        cg = _fromNx(g)
        names = dict((v, countryName(i)) for i, v in enumerate(sorted(g.nodes())))
        degree = degree_centrality(cg)
        numerators, denominator = load_counts(cg)
        brute, brute_denominator, interior_total = _bruteLoad(g)
        assert denominator == brute_denominator
        assert sum(numerators.values()) == interior_total
        for v in g.nodes():
            assert degree[names[v]] == g.degree(v)
            assert numerators[names[v]] == brute[v]
            if denominator:
                assert Fraction(numerators[names[v]], denominator) == Fraction(brute[v], brute_denominator)


def test_closeness_matches_bfs():
    for g in _oracleGraphs():
        cg = _fromNx(g)
        names = dict((v, countryName(i)) for i, v in enumerate(sorted(g.nodes())))
        closeness = closeness_centrality(cg)
        for v in g.nodes():
            assert abs(closeness[names[v]] - _bfsCloseness(g, v)) < 1e-9


def test_eigenvector_matches_dense_solver():
    for g in _oracleGraphs():
        if g.number_of_edges() == 0 or not nx.is_connected(g):
            continue
        order = sorted(g.nodes())
        cg = _fromNx(g)
        e = eigenvector_centrality(cg)
        expected = _denseEigenvector(g, order)
        got = numpy.array([e[countryName(i)] for i in range(len(order))])
        assert numpy.all(got >= 0)
        assert abs(numpy.linalg.norm(got) - 1.0) < 1e-9
        assert numpy.max(numpy.abs(got - expected)) < 1e-6


def test_closeness_is_relabeling_invariant():
    g = nx.gnp_random_graph(9, 0.3, seed=4)
    forward = _fromNx(g)
    backward = _fromNx(nx.relabel_nodes(g, dict((v, 8 - v) for v in g.nodes())))
    a = closeness_centrality(forward)
    b = closeness_centrality(backward)
    for v in g.nodes():
        assert a[countryName(v)] == pytest.approx(b[countryName(8 - v)])


#
# scatter
#

def test_mean_involved(small_store, store_factory):
    assert mean_involved(small_store, 'US') == 1.5
    assert mean_involved(small_store, 'GB') == 0.0
    direct = store_factory({'m1': 'US'}, [('m1', 'US>DE'), ('m1', 'US>FR')])
    assert mean_involved(direct, 'US') == 0.0


def test_centrality_scatter(small_store):
    g = build_graph(small_store)
    scatter = centrality_scatter(small_store, g)
    assert [row.country for row in scatter.rows] == ['DE', 'FR', 'GB', 'NL', 'US']
    us = scatter.rows[-1]
    assert us.degree == 4
    assert us.mean_involved == 1.5
    # DE>FR>US is DE's only path
    assert scatter.rows[0].mean_involved == 1.0
    assert all(row.mean_involved >= 0 for row in scatter.rows)
    assert sorted(scatter.correlations()) == ['closeness', 'degree', 'eigenvector', 'load']


def test_centrality_scatter_without_edges(store_factory):
    store = store_factory({'m1': 'US', 'm2': 'DE'}, [('m1', 'US'), ('m2', 'DE')])
    g = build_graph(store)
    assert g.nodes == set(['US', 'DE']) and not g.edges
    scatter = centrality_scatter(store, g)
    assert [row.country for row in scatter.rows] == ['DE', 'US']
    assert scatter.column('eigenvector') == [0.0, 0.0]
    assert scatter.column('degree') == [0, 0]
    assert scatter.column('load') == [0.0, 0.0]
    assert scatter.column('mean_involved') == [0.0, 0.0]
    assert set(scatter.correlations().values()) == set([None])


def test_correlations():
    rows = [CentralityRow(countryName(i), i, 0.1 * i, 0.5, float(i * i), float(i)) for i in range(5)]
    rho = CentralityScatter(rows).correlations()
    assert rho['degree'] == pytest.approx(1.0)
    assert rho['load'] == pytest.approx(1.0)
    assert rho['eigenvector'] is None
    assert CentralityScatter(rows[:2]).correlations()['degree'] is None
