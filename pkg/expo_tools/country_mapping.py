#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# hop --> country resolution (geolocation table, AS registry) and
# record --> country path conversion
#

import functools
import ipaddress

import radix

from expo_tools.exposureLib import ParseError, DuplicatePrefix, Unresolved, Discarded
from expo_tools.ingest import UNRESOLVED, iterLines, parse_asn, parse_pair_line
from expo_tools.trace_model import country_code, normalize_country_path


DISCARD_UNFLANKED = 'unflanked unresolved hop'
DISCARD_UNREGISTERED = 'unregistered ASN'

LOOKUP_CACHE_SIZE = 1 << 16


class GeoTable(object):
    """ IPv4 CIDR --> country, longest-prefix-match lookups

        Overlapping prefixes are fine; the same prefix twice is not.
    """

    def __init__(self, entries=None):
        self._tree = radix.Radix()
        # bounded and thread-safe; exceptions are not cached
        self._cached = functools.lru_cache(maxsize=LOOKUP_CACHE_SIZE)(self._search)
        for prefix, country in (entries or []):
            self.add(prefix, country)

    def add(self, prefix, country):
        network = ipaddress.IPv4Network(prefix)
        country_code(country)
        cidr = network.with_prefixlen
        if self._tree.search_exact(cidr) is not None:
            raise DuplicatePrefix(None, "duplicate prefix %s" % cidr)
        node = self._tree.add(cidr)
        node.data['country'] = country
        self._cached.cache_clear()

    def _search(self, ip):
        node = self._tree.search_best(ip)
        if node is None:
            raise Unresolved("no prefix covers %s" % ip)
        return node.data['country']

    def lookup(self, ip):
        return self._cached(ip)

    def cacheInfo(self):
        return self._cached.cache_info()

    def entries(self):
        return sorted(((node.prefix, node.data['country']) for node in self._tree.nodes()),
                      key=lambda e: (ipaddress.IPv4Network(e[0]).network_address, e[0]))

    def __len__(self):
        return len(self._tree.nodes())


class AsRegistry(object):
    """ ASN --> country of registration """

    def __init__(self, mapping=None):
        self._map = {}
        for asn, country in (mapping or {}).items():
            self.add(asn, country)

    def add(self, asn, country):
        country_code(country)
        known = self._map.get(asn)
        if known is not None and known != country:
            raise ValueError("AS%s registered in two countries: %s, %s" % (asn, known, country))
        self._map[asn] = country

    def country(self, asn):
        return self._map.get(asn)

    def __contains__(self, asn):
        return asn in self._map

    def __len__(self):
        return len(self._map)


def load_geo_table(filename):
    table = GeoTable()
    for line_no, line in iterLines(filename):
        prefix, country = parse_pair_line(line, line_no)
        try:
            table.add(prefix, country)
        except DuplicatePrefix as e:
            raise DuplicatePrefix(line_no, e.reason)
        except ValueError as e:
            raise ParseError(line_no, "bad prefix %r: %s" % (prefix, e))
    return table


def load_as_registry(filename):
    registry = AsRegistry()
    for line_no, line in iterLines(filename):
        token, country = parse_pair_line(line, line_no)
        if token[:2].upper() == 'AS':
            token = token[2:]
        try:
            registry.add(parse_asn(token, line_no), country)
        except ValueError as e:
            raise ParseError(line_no, str(e))
    return registry


def geo_lookup(table, ip):
    return table.lookup(ip)


def _fillFlanked(countries):
    """ unresolved runs (None) inherit the country on both of their sides,
        provided both sides exist and agree
    """
    n = len(countries)
    i = 0
    while i < n:
        if countries[i] is not None:
            i += 1
            continue
        j = i
        while j + 1 < n and countries[j + 1] is None:
            j += 1
        left = countries[i - 1] if i > 0 else None
        right = countries[j + 1] if j + 1 < n else None
        if left is None or right is None or left != right:
            raise Discarded(DISCARD_UNFLANKED)
        for k in range(i, j + 1):
            countries[k] = left
        i = j + 1
    return countries


def trace_to_country_path(rec, geo, monitors, remap=None):
    """ TraceRecord --> CountryPath, monitor country prepended as source

        Raises Discarded for unflanked unresolved hops and MonitorUnknown
        when the monitor is not in the table.
    """
    source = monitors.country(rec.monitor)
    countries = []
    for hop in rec.hops:
        country = None
        if hop != UNRESOLVED:
            try:
                country = geo.lookup(hop)
            except Unresolved:
                pass
        countries.append(country)
    _fillFlanked(countries)
    if remap:
        source = remap.get(source, source)
        countries = [remap.get(c, c) for c in countries]
    return normalize_country_path([source] + countries)


def aspath_to_country_path(rec, reg, remap=None):
    countries = []
    for asn in rec.asns:
        country = reg.country(asn)
        if country is None:
            raise Discarded(DISCARD_UNREGISTERED)
        if remap:
            country = remap.get(country, country)
        countries.append(country)
    return normalize_country_path(countries)
