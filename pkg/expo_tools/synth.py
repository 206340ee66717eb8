#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# deterministic synthetic corpus generator
#
# Countries join a country graph by preferential attachment; every country
# holds a connected set of routers, and each country link is realized by
# one router-router link. Every country gets monitors_per_country monitors;
# n_monitors more sit on routers picked in proportion to router degree
# times country degree.
# Per monitor and destination router, up to multipath_factor distinct
# routes are produced: the shortest path, then re-runs after penalizing
# one random country link of the latest route.
#
# Addresses: country number c owns 10.c.0.0/16; router r of c is
# 10.c.hi.lo with hi.lo = r + 1. Each block of 4 routers of a country
# forms one AS, ASN 65536 + c * 16384 + r // 4, registered in c.
#

import os
from concurrent.futures import ThreadPoolExecutor

import networkx as nx
import numpy

from expo_tools.exposureLib import ConfigError
from expo_tools.trace_model import normalize_country_path


MAX_COUNTRIES = 256
MAX_ROUTERS_PER_COUNTRY = 65534
ROUTERS_PER_AS = 4

# stream labels for the seed sequences
_TOPOLOGY = 0
_ROUTES = 1

CORPUS_FILES = ('traces.tsv', 'bgp.tsv', 'monitors.tsv', 'geo.tsv', 'asreg.tsv', 'ground_truth.tsv')


class SynthConfig(object):

    _defaults = (
        ('n_countries', 10),
        ('n_routers_per_country', 4),
        ('attachment_exponent', 1.0),
        ('n_monitors', 5),
        ('monitors_per_country', 0),
        ('paths_per_monitor', 1),
        ('multipath_factor', 2),
        ('seed', 0),
        ('links_per_country', 2),
        ('unresolved_rate', 0.0),
    )

    def __init__(self, **kwargs):
        for name, default in self._defaults:
            setattr(self, name, kwargs.pop(name, default))
        if kwargs:
            raise ConfigError("unknown synth settings: %s" % ', '.join(sorted(kwargs)))
        self.validate()

    def validate(self):
        def check(ok, message):
            if not ok:
                raise ConfigError(message)

        check(3 <= self.n_countries <= MAX_COUNTRIES,
              "n_countries must be within 3..%d" % MAX_COUNTRIES)
        check(1 <= self.n_routers_per_country <= MAX_ROUTERS_PER_COUNTRY,
              "n_routers_per_country must be within 1..%d" % MAX_ROUTERS_PER_COUNTRY)
        check(self.n_monitors >= 0, "n_monitors cannot be negative")
        check(0 <= self.monitors_per_country <= self.n_routers_per_country,
              "monitors_per_country must be within 0..n_routers_per_country")
        check(self.totalMonitors() >= 1, "at least one monitor is required")
        check(self.totalMonitors() <= self.n_countries * self.n_routers_per_country,
              "more monitors than routers")
        check(self.paths_per_monitor >= 1, "paths_per_monitor must be at least 1")
        check(self.multipath_factor >= 1, "multipath_factor must be at least 1")
        check(self.links_per_country >= 1, "links_per_country must be at least 1")
        check(0 <= self.seed < 2**64, "seed must be an unsigned 64-bit integer")
        check(0.0 <= self.unresolved_rate <= 1.0, "unresolved_rate must be within 0..1")

    def totalMonitors(self):
        return self.n_monitors + self.monitors_per_country * self.n_countries

    def describe(self):
        return ' '.join('%s=%s' % (name, getattr(self, name)) for name, _d in self._defaults)


def countryName(index):
    "0 --> AA, 1 --> AB, ..."
    return chr(65 + index // 26) + chr(65 + index % 26)


def _generator(*keys):
    return numpy.random.Generator(numpy.random.PCG64(numpy.random.SeedSequence(list(keys))))


class SynthCorpus(object):
    """ generated inputs plus the country paths they must ingest to """

    def __init__(self, cfg):
        self.cfg = cfg
        self.countries = [countryName(i) for i in range(cfg.n_countries)]
        self.country_edges = []
        self.routers = nx.Graph()
        self.monitors = {}        # monitor id --> router
        self.traces = []
        self.bgp = []
        self.truth = set()        # (monitor id, CountryPath)

    def countryOf(self, router):
        return router // self.cfg.n_routers_per_country

    def address(self, router):
        c, r = divmod(router, self.cfg.n_routers_per_country)
        return '10.%d.%d.%d' % (c, (r + 1) >> 8, (r + 1) & 0xff)

    def asn(self, router):
        c, r = divmod(router, self.cfg.n_routers_per_country)
        return 65536 + c * 16384 + r // ROUTERS_PER_AS

    def monitorLines(self):
        return ['%s\t%s' % (m, self.countries[self.countryOf(r)])
                for m, r in sorted(self.monitors.items())]

    def geoLines(self):
        return ['10.%d.0.0/16\t%s' % (c, code) for c, code in enumerate(self.countries)]

    def asregLines(self):
        per_country = (self.cfg.n_routers_per_country + ROUTERS_PER_AS - 1) // ROUTERS_PER_AS
        return ['%d\t%s' % (65536 + c * 16384 + a, code)
                for c, code in enumerate(self.countries)
                for a in range(per_country)]

    def groundTruthLines(self):
        return ['%s\t%s' % (m, p) for m, p in sorted(self.truth, key=lambda mp: (mp[0], str(mp[1])))]

    def files(self):
        "file name --> list of lines, in CORPUS_FILES order"
        banner = '# expo synth %s' % self.cfg.describe()
        return [
            ('traces.tsv', [banner] + self.traces),
            ('bgp.tsv', [banner] + self.bgp),
            ('monitors.tsv', self.monitorLines()),
            ('geo.tsv', self.geoLines()),
            ('asreg.tsv', self.asregLines()),
            ('ground_truth.tsv', self.groundTruthLines()),
        ]


def _countryGraph(cfg, rng):
    """ preferential attachment: a new country links to links_per_country
        earlier ones, chosen with weight (degree + 1) ** attachment_exponent
    """
    degree = numpy.zeros(cfg.n_countries)
    edges = []
    for i in range(1, cfg.n_countries):
        k = min(cfg.links_per_country, i)
        weights = (degree[:i] + 1.0) ** cfg.attachment_exponent
        chosen = rng.choice(i, size=k, replace=False, p=weights / weights.sum())
        for j in sorted(int(c) for c in chosen):
            edges.append((j, i))
            degree[i] += 1
            degree[j] += 1
    return edges


def _routerGraph(cfg, country_edges, rng):
    R = cfg.n_routers_per_country
    g = nx.Graph()
    g.add_nodes_from(range(cfg.n_countries * R))
    for c in range(cfg.n_countries):
        # random recursive tree inside the country
        for r in range(1, R):
            g.add_edge(c * R + int(rng.integers(r)), c * R + r)
    for a, b in country_edges:
        g.add_edge(a * R + int(rng.integers(R)), b * R + int(rng.integers(R)))
    return g


def _edgeKey(u, v):
    return (u, v) if u < v else (v, u)


def alternate_routes(g, src, dst, factor, rng, countryOf=None):
    """ up to `factor` distinct router routes src --> dst: the shortest one,
        then near-shortest deviations. With `countryOf` (router --> country)
        only links between two countries are penalized, so each deviation
        changes the country path when the topology allows it.
    """
    penalty = {}

    def weight(u, v, _data):
        return penalty.get(_edgeKey(u, v), 1.0)

    def candidates(route):
        steps = range(len(route) - 1)
        if countryOf is not None:
            crossing = [i for i in steps if countryOf(route[i]) != countryOf(route[i + 1])]
            if crossing:
                return crossing
        return list(steps)

    current = nx.dijkstra_path(g, src, dst, weight=weight)
    routes = [current]
    seen = set([tuple(current)])
    attempts = 0
    while len(routes) < factor and attempts < 4 * factor:
        attempts += 1
        steps = candidates(current)
        i = steps[int(rng.integers(len(steps)))]
        key = _edgeKey(current[i], current[i + 1])
        penalty[key] = penalty.get(key, 1.0) + 1.0 + float(rng.random())
        current = nx.dijkstra_path(g, src, dst, weight=weight)
        if tuple(current) not in seen:
            seen.add(tuple(current))
            routes.append(current)
    return routes


def _monitorRoutes(corpus, monitor, router):
    """ trace lines, bgp lines and truth pairs of one monitor """
    cfg = corpus.cfg
    R = cfg.n_routers_per_country
    rng = _generator(cfg.seed, _ROUTES, router)
    home = corpus.countryOf(router)
    traces, bgp, truth = [], [], []
    for dest in range(cfg.n_countries):
        if dest == home:
            continue
        k = min(cfg.paths_per_monitor, R)
        for r in sorted(int(x) for x in rng.choice(R, size=k, replace=False)):
            for route in alternate_routes(corpus.routers, router, dest * R + r,
                                          cfg.multipath_factor, rng, corpus.countryOf):
                traces.append('%s\t%s' % (monitor, ','.join(_traceHops(corpus, route[1:], rng))))
                bgp.append('%s\t10.%d.0.0/16\t%s'
                           % (monitor, dest, ' '.join(str(corpus.asn(x)) for x in route)))
                truth.append((monitor, normalize_country_path(
                    [corpus.countries[corpus.countryOf(x)] for x in route])))
    return traces, bgp, truth


def _traceHops(corpus, hops, rng):
    """ addresses of the hops; with unresolved_rate > 0 some interior hops
        whose neighbours share their country are emitted as '*'
    """
    tokens = [corpus.address(h) for h in hops]
    rate = corpus.cfg.unresolved_rate
    if rate <= 0.0:
        return tokens
    for i in range(1, len(hops) - 1):
        c = corpus.countryOf(hops[i])
        if corpus.countryOf(hops[i - 1]) == c == corpus.countryOf(hops[i + 1]) \
                and rng.random() < rate:
            tokens[i] = '*'
    return tokens


def _placeMonitors(cfg, routers, country_edges, rng):
    """ monitors_per_country routers of every country, weighted by router
        degree; then n_monitors more among the rest, weighted by router
        degree times the degree of the router's country
    """
    R = cfg.n_routers_per_country
    degrees = numpy.array([routers.degree(v) for v in range(routers.number_of_nodes())],
                          dtype=float)
    links = numpy.zeros(cfg.n_countries)
    for a, b in country_edges:
        links[a] += 1
        links[b] += 1
    chosen = set()
    if cfg.monitors_per_country:
        for c in range(cfg.n_countries):
            local = degrees[c * R:(c + 1) * R]
            picks = rng.choice(R, size=cfg.monitors_per_country, replace=False,
                               p=local / local.sum())
            chosen.update(c * R + int(r) for r in picks)
    if cfg.n_monitors:
        rest = numpy.array([v for v in range(len(degrees)) if v not in chosen])
        weights = degrees[rest] * links[rest // R]
        picks = rng.choice(len(rest), size=cfg.n_monitors, replace=False,
                           p=weights / weights.sum())
        chosen.update(int(rest[i]) for i in picks)
    return sorted(chosen)


def generate_corpus(cfg, threads=1):
    cfg.validate()
    corpus = SynthCorpus(cfg)
    rng = _generator(cfg.seed, _TOPOLOGY)
    corpus.country_edges = _countryGraph(cfg, rng)
    corpus.routers = _routerGraph(cfg, corpus.country_edges, rng)

    chosen = _placeMonitors(cfg, corpus.routers, corpus.country_edges, rng)
    corpus.monitors = dict(('m%03d' % i, router) for i, router in enumerate(chosen))

    jobs = sorted(corpus.monitors.items())
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(lambda job: _monitorRoutes(corpus, job[0], job[1]), jobs))
    for traces, bgp, truth in results:
        corpus.traces.extend(traces)
        corpus.bgp.extend(bgp)
        corpus.truth.update(truth)
    return corpus


def write_corpus(corpus, directory, pending):
    """ open every corpus file through `pending` (a PendingFiles) """
    for name, lines in corpus.files():
        stream = pending.open(os.path.join(directory, name))
        for line in lines:
            stream.write(line + '\n')
