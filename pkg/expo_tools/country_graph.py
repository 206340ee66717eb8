#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# country-level communication graph and its centralities
#
# All routers (or ASs) of one country collapse into one node; links
# between countries become undirected edges, loops and multi-edges
# dropped.
#

import collections
import math

import networkx as nx
from scipy import stats

from expo_tools.exposureLib import NoEdges, NonConvergence
from expo_tools.experiments import involved


EIGEN_TOLERANCE = 1e-10
EIGEN_MAX_ITER = 100000

CENTRALITY_METRICS = ('degree', 'closeness', 'eigenvector', 'load')

CentralityRow = collections.namedtuple('CentralityRow', ['country', 'degree', 'closeness',
                                                         'eigenvector', 'load', 'mean_involved'])


class CountryGraph(object):
    """ simple undirected graph over country codes """

    def __init__(self, nodes=(), edges=()):
        self.graph = nx.Graph()
        self.graph.add_nodes_from(sorted(nodes))
        for a, b in sorted(tuple(sorted(e)) for e in edges):
            self.addEdge(a, b)

    def addEdge(self, a, b):
        if a == b:
            return
        self.graph.add_edge(a, b)

    @property
    def nodes(self):
        return set(self.graph.nodes())

    @property
    def edges(self):
        return set(frozenset(e) for e in self.graph.edges())

    def neighbors(self, node):
        return self.graph.adj[node]

    def __len__(self):
        return self.graph.number_of_nodes()


def build_graph(store):
    nodes = set()
    edges = set()
    for path in store.allPaths():
        nodes.update(path.hops)
        for a, b in zip(path.hops, path.hops[1:]):
            if a != b:
                edges.add((a, b) if a < b else (b, a))
    return CountryGraph(nodes, edges)


def degree_centrality(g):
    "raw neighbor count"
    return dict((v, d) for v, d in g.graph.degree())


def closeness_centrality(g):
    """ (r/(n-1)) * (r/d): r reachable others, d their total BFS distance """
    return nx.closeness_centrality(g.graph, wf_improved=True)


def eigenvector_centrality(g):
    if g.graph.number_of_edges() == 0:
        raise NoEdges("eigenvector centrality needs at least one edge")
    try:
        return nx.eigenvector_centrality(g.graph, max_iter=EIGEN_MAX_ITER, tol=EIGEN_TOLERANCE)
    except nx.PowerIterationFailedConvergence as e:
        raise NonConvergence("eigenvector centrality: %s" % (e, ))


def _shortestPathDag(g, s):
    """ BFS from s: (order, sigma, children); sigma counts shortest paths """
    dist = {s: 0}
    sigma = {s: 1}
    children = collections.defaultdict(list)
    order = [s]
    queue = collections.deque([s])
    while queue:
        v = queue.popleft()
        for w in g.graph.adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                sigma[w] = 0
                order.append(w)
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                children[v].append(w)
    return order, sigma, children


def load_counts(g):
    """ exact integer load tallies

        numerators[v]: shortest paths between ordered pairs (s, t), s != t,
        that pass through v as an interior node.
        denominator:   all shortest paths between ordered pairs s != t.
    """
    numerators = dict((v, 0) for v in g.graph.nodes())
    denominator = 0
    for s in sorted(g.graph.nodes()):
        order, sigma, children = _shortestPathDag(g, s)
        # downward shortest-path continuations out of each node
        below = {}
        for v in reversed(order):
            below[v] = sum(1 + below[w] for w in children[v])
        for v in order[1:]:
            numerators[v] += sigma[v] * below[v]
            denominator += sigma[v]
    return numerators, denominator


def load_centrality(g):
    numerators, denominator = load_counts(g)
    if not denominator:
        return dict((v, 0.0) for v in numerators)
    return dict((v, n / float(denominator)) for v, n in numerators.items())


def mean_involved(store, x):
    targets = store.targets(x)
    if not targets:
        return 0.0
    return math.fsum(len(involved(store, x, y)) for y in targets) / len(targets)


class CentralityScatter(object):

    def __init__(self, rows):
        self.rows = rows

    def column(self, name):
        return [getattr(row, name) for row in self.rows]

    def correlations(self):
        """ Spearman rank correlation of each metric with mean_involved;
            None where it is undefined (constant column, < 3 rows)
        """
        exposure = self.column('mean_involved')
        result = {}
        for metric in CENTRALITY_METRICS:
            values = self.column(metric)
            rho = None
            if len(values) >= 3 and len(set(values)) > 1 and len(set(exposure)) > 1:
                rho = float(stats.spearmanr(values, exposure)[0])
                if math.isnan(rho):
                    rho = None
            result[metric] = rho
        return result


def centrality_scatter(store, g):
    degree = degree_centrality(g)
    closeness = closeness_centrality(g)
    if g.graph.number_of_edges():
        eigenvector = eigenvector_centrality(g)
    else:
        # edgeless graph (single-country paths only)
        eigenvector = dict((v, 0.0) for v in g.nodes)
    load = load_centrality(g)
    rows = []
    for country in sorted(g.nodes):
        rows.append(CentralityRow(country, degree[country], closeness[country],
                                  eigenvector[country], load[country],
                                  mean_involved(store, country)))
    return CentralityScatter(rows)
