#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# streaming parsers for traces, bgp paths, monitor and remap tables
#
# Formats (UTF-8, one record per line, '#' starts a comment line):
#   traces:    monitor_id TAB hop,hop,...        (hop: IPv4 or '*')
#   bgp:       monitor_id TAB prefix TAB asn asn ...
#   monitors:  monitor_id TAB country_code
#   eu remap:  country_code TAB replacement_code
#

import collections
import functools
import io
import ipaddress
import re
import sys

from expo_tools.exposureLib import ParseError, AsSetUnsupported, MonitorUnknown, \
        InvalidCountryCode, InvalidMonitorId
from expo_tools.trace_model import country_code, monitor_id


UNRESOLVED = '*'
MAX_ASN = 2**32 - 1
_ASN_DIGITS = re.compile(r'^[0-9]+\Z')

TraceRecord = collections.namedtuple('TraceRecord', ['monitor', 'hops'])
AsPathRecord = collections.namedtuple('AsPathRecord', ['monitor', 'prefix', 'asns'])


class MonitorTable(object):
    """ monitor id --> country code, one country per monitor """

    def __init__(self, mapping=None):
        self._map = {}
        for monitor, country in (mapping or {}).items():
            self.add(monitor, country)

    def add(self, monitor, country):
        monitor_id(monitor)
        country_code(country)
        known = self._map.get(monitor)
        if known is not None and known != country:
            raise ValueError("monitor %s listed with two countries: %s, %s"
                             % (monitor, known, country))
        self._map[monitor] = country

    def country(self, monitor):
        try:
            return self._map[monitor]
        except KeyError:
            raise MonitorUnknown("unknown monitor: %s" % monitor)

    def monitorsIn(self, country):
        "the monitor set M of a country, sorted"
        return sorted(m for m, c in self._map.items() if c == country)

    def countries(self):
        return sorted(set(self._map.values()))

    def remapped(self, remap):
        return MonitorTable(dict((m, remap.get(c, c)) for m, c in self._map.items()))

    def items(self):
        return sorted(self._map.items())

    def __contains__(self, monitor):
        return monitor in self._map

    def __len__(self):
        return len(self._map)

    def __iter__(self):
        return iter(sorted(self._map))

    def __eq__(self, other):
        return isinstance(other, MonitorTable) and self._map == other._map

    def __ne__(self, other):
        return not self.__eq__(other)


def _stripEol(line):
    if line.endswith('\n'):
        line = line[:-1]
    if line.endswith('\r'):
        line = line[:-1]
    return line


@functools.lru_cache(maxsize=1 << 16)
def _isIPv4(token):
    try:
        ipaddress.IPv4Address(token)
    except ValueError:
        return False
    return True


def _checkText(line, line_no):
    "lines come decoded with surrogateescape; a surrogate marks bytes that are not UTF-8"
    try:
        line.encode('utf-8')
    except UnicodeEncodeError:
        raise ParseError(line_no, "invalid UTF-8")


def _splitFields(line, count, line_no):
    _checkText(line, line_no)
    fields = _stripEol(line).split('\t')
    if len(fields) != count:
        raise ParseError(line_no, "expected %d tab-separated fields, got %d" % (count, len(fields)))
    return fields


def _checkMonitor(token, line_no):
    try:
        return monitor_id(token)
    except InvalidMonitorId:
        raise ParseError(line_no, "bad monitor id %r" % (token, ))


def parse_trace_line(line, line_no=None):
    """ "m1\t10.0.0.1,*,10.0.9.9" --> TraceRecord('m1', ('10.0.0.1', '*', '10.0.9.9')) """
    monitor, hopField = _splitFields(line, 2, line_no)
    _checkMonitor(monitor, line_no)
    if not hopField:
        raise ParseError(line_no, "empty hop list")
    hops = tuple(hopField.split(','))
    for hop in hops:
        if hop != UNRESOLVED and not _isIPv4(hop):
            raise ParseError(line_no, "bad hop %r" % (hop, ))
    return TraceRecord(monitor, hops)


def format_trace_record(rec):
    return '%s\t%s' % (rec.monitor, ','.join(rec.hops))


def parse_asn(token, line_no=None):
    """ plain decimal ASN in 1..2^32-1; no asdot """
    if not _ASN_DIGITS.match(token):
        raise ParseError(line_no, "bad ASN %r" % (token, ))
    asn = int(token)
    if asn < 1 or asn > MAX_ASN:
        raise ParseError(line_no, "ASN out of range: %s" % token)
    return asn


def parse_bgp_line(line, line_no=None):
    """ "r1\t192.0.2.0/24\t701 701 3356" --> AsPathRecord('r1', '192.0.2.0/24', (701, 3356)) """
    monitor, prefix, pathField = _splitFields(line, 3, line_no)
    _checkMonitor(monitor, line_no)
    if not prefix:
        raise ParseError(line_no, "empty prefix")
    tokens = pathField.split()
    if not tokens:
        raise ParseError(line_no, "empty AS path")
    asns = []
    for token in tokens:
        if '{' in token:
            raise AsSetUnsupported(line_no, "AS-set token %r" % (token, ))
        asn = parse_asn(token, line_no)
        # prepending
        if not asns or asns[-1] != asn:
            asns.append(asn)
    return AsPathRecord(monitor, prefix, tuple(asns))


def format_bgp_record(rec):
    return '%s\t%s\t%s' % (rec.monitor, rec.prefix, ' '.join(str(a) for a in rec.asns))


def parse_pair_line(line, line_no=None):
    "monitor and remap tables: key TAB country_code"
    key, country = _splitFields(line, 2, line_no)
    try:
        country_code(country)
    except InvalidCountryCode:
        raise ParseError(line_no, "bad country code %r" % (country, ))
    return key, country


def iterLines(filename):
    """ (line_no, line) for every non-comment, non-blank line """
    with io.open(filename, 'r', encoding='utf-8', errors='surrogateescape', newline='') as f:
        for line_no, line in enumerate(f, 1):
            if line.startswith('#') or not line.strip():
                continue
            yield line_no, line


def iterRecords(filename, parser, counts, onError='skip', verbosity=0):
    """ parse a file record by record

        Parse failures raise in 'abort' mode; in 'skip' mode they are
        counted under counts['parse_errors'] and dropped.
    """
    for line_no, line in iterLines(filename):
        counts['lines'] += 1
        try:
            rec = parser(line, line_no)
        except ParseError as e:
            if onError == 'abort':
                raise ParseError(e.line_no, "%s: %s" % (filename, e.reason))
            counts['parse_errors'] += 1
            if verbosity > 2:
                sys.stderr.write("Skipping %s:%s: %s\n" % (filename, line_no, e.reason))
            continue
        counts['parsed'] += 1
        yield rec


def load_monitor_table(filename):
    table = MonitorTable()
    for line_no, line in iterLines(filename):
        monitor, country = parse_pair_line(line, line_no)
        _checkMonitor(monitor, line_no)
        try:
            table.add(monitor, country)
        except ValueError as e:
            raise ParseError(line_no, str(e))
    return table


def load_remap(filename):
    "optional country remap table, e.g. member state --> EU"
    remap = {}
    for line_no, line in iterLines(filename):
        code, replacement = parse_pair_line(line, line_no)
        try:
            country_code(code)
        except InvalidCountryCode:
            raise ParseError(line_no, "bad country code %r" % (code, ))
        remap[code] = replacement
    return remap


def dedup_paths(pairs):
    """ distinct (monitor, path) pairs, first occurrence order kept """
    seen = set()
    for pair in pairs:
        if pair in seen:
            continue
        seen.add(pair)
        yield pair
