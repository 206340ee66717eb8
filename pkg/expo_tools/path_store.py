#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# deduplicated, indexed country path collection (one per dataset)
#
# Store file:
#   expo-store v1 TAB dataset=geo|reg
#   M TAB monitor_id TAB country        (sorted by monitor)
#   P TAB monitor_id TAB c1>c2>...>cn   (sorted by monitor, then path)
#

import io

from expo_tools.exposureLib import SourceMismatch, UnknownMonitor, StoreSealed, \
        FormatError, ExpoToolException
from expo_tools.fileutils import PendingFiles
from expo_tools.ingest import MonitorTable
from expo_tools.trace_model import CountryPath, DatasetKind


STORE_MAGIC = 'expo-store v1'

_EMPTY = frozenset()


class PathStore(object):
    """ distinct (monitor, country path) records with two indices:
        by monitor, and by (source, destination) country pair

        Single writer while building; seal() makes it read-only.
    """

    def __init__(self, dataset, monitors):
        if not isinstance(dataset, DatasetKind):
            dataset = DatasetKind.fromLabel(dataset)
        self.dataset = dataset
        self.monitor_countries = monitors
        self.index_by_monitor = {}
        self.index_by_pair = {}
        self._count = 0
        self.sealed = False

    def insert(self, monitor, path):
        """ add (monitor, path); True if it was not there before """
        if self.sealed:
            raise StoreSealed("cannot insert into a sealed store")
        if monitor not in self.monitor_countries:
            raise UnknownMonitor("unknown monitor: %s" % monitor)
        expected = self.monitor_countries.country(monitor)
        if path.source() != expected:
            raise SourceMismatch("path %s does not start at %s, the country of monitor %s"
                                 % (path, expected, monitor))
        paths = self.index_by_monitor.setdefault(monitor, set())
        if path in paths:
            return False
        paths.add(path)
        self.index_by_pair.setdefault((path.source(), path.destination()), set()).add(path)
        self._count += 1
        return True

    def seal(self):
        self.sealed = True
        return self

    def revealed(self, monitors):
        """ R(W): union of the paths revealed by every monitor in W """
        result = set()
        for monitor in monitors:
            if monitor not in self.monitor_countries:
                raise UnknownMonitor("unknown monitor: %s" % monitor)
            result.update(self.index_by_monitor.get(monitor, _EMPTY))
        return result

    def paths_between(self, x, y):
        return set(self.index_by_pair.get((x, y), _EMPTY))

    def pathsFrom(self, monitor):
        return self.index_by_monitor.get(monitor, _EMPTY)

    def targets(self, x):
        "destination countries reachable from x (x itself excluded), sorted"
        return sorted(y for (s, y) in self.index_by_pair if s == x and y != x)

    def sources(self):
        return sorted(set(s for (s, _y) in self.index_by_pair))

    def countries(self):
        "every country on any stored path"
        seen = set()
        for paths in self.index_by_pair.values():
            for path in paths:
                seen.update(path.hops)
        return sorted(seen)

    def allPaths(self):
        "distinct country paths regardless of monitor"
        result = set()
        for paths in self.index_by_pair.values():
            result.update(paths)
        return result

    def records(self):
        "sorted (monitor, path) pairs"
        return sorted((monitor, path)
                      for monitor, paths in self.index_by_monitor.items()
                      for path in paths)

    def __len__(self):
        return self._count

    def __eq__(self, other):
        return isinstance(other, PathStore) \
            and self.dataset == other.dataset \
            and self.monitor_countries == other.monitor_countries \
            and self.records() == other.records()

    def __ne__(self, other):
        return not self.__eq__(other)


def build_store(dataset, monitors, pairs):
    """ insert (monitor, path) pairs and seal; returns (store, duplicates) """
    store = PathStore(dataset, monitors)
    duplicates = 0
    for monitor, path in pairs:
        if not store.insert(monitor, path):
            duplicates += 1
    return store.seal(), duplicates


def dumpStore(store, stream):
    stream.write('%s\tdataset=%s\n' % (STORE_MAGIC, store.dataset.value))
    for monitor, country in store.monitor_countries.items():
        stream.write('M\t%s\t%s\n' % (monitor, country))
    for monitor, path in store.records():
        stream.write('P\t%s\t%s\n' % (monitor, path))


def save(store, filename, pending=None):
    """ write the store file; through `pending` (a PendingFiles) when the
        caller commits several outputs together
    """
    if pending is not None:
        dumpStore(store, pending.open(filename))
        return
    with PendingFiles() as files:
        dumpStore(store, files.open(filename))
        files.commit()


def _parseHeader(line):
    magic, sep, rest = line.partition('\t')
    if magic != STORE_MAGIC or not rest.startswith('dataset='):
        raise FormatError(1, "bad header %r" % (line, ))
    try:
        return DatasetKind.fromLabel(rest[len('dataset='):])
    except ValueError as e:
        raise FormatError(1, str(e))


def readStore(stream):
    header = stream.readline()
    if not header.endswith('\n'):
        raise FormatError(1, "missing header")
    dataset = _parseHeader(header[:-1])
    monitors = MonitorTable()
    store = None
    for line_no, line in enumerate(stream, 2):
        if not line.endswith('\n'):
            raise FormatError(line_no, "missing line feed")
        try:
            line.encode('utf-8')
        except UnicodeEncodeError:
            raise FormatError(line_no, "invalid UTF-8")
        fields = line[:-1].split('\t')
        if len(fields) != 3:
            raise FormatError(line_no, "expected 3 tab-separated fields")
        kind, monitor, value = fields
        try:
            if kind == 'M':
                if store is not None:
                    raise FormatError(line_no, "monitor line after path records")
                monitors.add(monitor, value)
            elif kind == 'P':
                if store is None:
                    store = PathStore(dataset, monitors)
                if not store.insert(monitor, CountryPath.parse(value)):
                    raise FormatError(line_no, "duplicate record")
            else:
                raise FormatError(line_no, "unknown record kind %r" % (kind, ))
        except FormatError:
            raise
        except (ExpoToolException, ValueError) as e:
            raise FormatError(line_no, str(e))
    if store is None:
        store = PathStore(dataset, monitors)
    return store.seal()


def load(filename):
    with io.open(filename, 'r', encoding='utf-8', errors='surrogateescape', newline='\n') as f:
        return readStore(f)
