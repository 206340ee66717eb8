#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# exposure experiments over a sealed PathStore:
#   generalization  - how well a country's other monitors cover one monitor
#   involved        - which third countries sit on the x --> y paths
#   excluded        - Monte Carlo avoidance of random untrusted country sets
#

import collections
import math
from fractions import Fraction

import numpy

from expo_tools.exposureLib import NoPaths, LonelyMonitor, ExcludedEndpoint, \
        NoTargets, UnknownMonitor, UsageError


GeneralizationRow = collections.namedtuple('GeneralizationRow',
                                           ['country', 'monitor_count', 'mean_ratio'])
InvolvedPoint = collections.namedtuple('InvolvedPoint',
                                       ['target', 'mean_distance', 'min_distance', 'involved_count'])
InvolvedCurve = collections.namedtuple('InvolvedCurve',
                                       ['distance_bin', 'target_count', 'mean_involved'])
TrialOutcome = collections.namedtuple('TrialOutcome', ['cls', 'clean_ratio'])

NONE_EXCLUDED = 'none'
ALL_EXCLUDED = 'all'
MIXTURE = 'mixture'

DEFAULT_SIZES = '0:190:10'
DEFAULT_TRIALS = 500


#
# generalization
#

class GeneralizationReport(object):

    def __init__(self, rows, omitted):
        self.rows = rows
        # country --> reason
        self.omitted = omitted


def generalization_ratio(store, x):
    """ |R({x}) & R(M - x)| / |R({x})|, M the monitors of x's country """
    if x not in store.monitor_countries:
        raise UnknownMonitor("unknown monitor: %s" % x)
    mine = store.revealed([x])
    if not mine:
        raise NoPaths("monitor %s revealed no paths" % x)
    country = store.monitor_countries.country(x)
    others = [m for m in store.monitor_countries.monitorsIn(country) if m != x]
    if not others:
        raise LonelyMonitor("monitor %s is the only monitor in %s" % (x, country))
    covered = mine & store.revealed(others)
    return len(covered) / float(len(mine))


def generalization_report(store):
    rows = []
    omitted = {}
    for country in store.monitor_countries.countries():
        monitors = store.monitor_countries.monitorsIn(country)
        if len(monitors) < 2:
            omitted[country] = 'single monitor'
            continue
        if any(not store.pathsFrom(m) for m in monitors):
            omitted[country] = 'monitor without paths'
            continue
        ratios = [generalization_ratio(store, m) for m in monitors]
        rows.append(GeneralizationRow(country, len(monitors), math.fsum(ratios) / len(ratios)))
    return GeneralizationReport(rows, omitted)


#
# involved countries
#

class InvolvedReport(object):

    def __init__(self, source, points):
        self.source = source
        self.points = points
        self.curves = _binPoints(points, lambda p: _roundHalfUp(p.mean_distance))
        self.curves_min = _binPoints(points, lambda p: p.min_distance)


def involved(store, x, y):
    """ I(x, y): every country on any recorded x --> y path, minus x and y """
    result = set()
    for path in store.paths_between(x, y):
        result.update(path.hops)
    result.discard(x)
    result.discard(y)
    return result


def _roundHalfUp(value):
    return int(math.floor(Fraction(value) + Fraction(1, 2)))


def _binPoints(points, binOf):
    bins = collections.defaultdict(list)
    for point in points:
        bins[binOf(point)].append(point.involved_count)
    return [InvolvedCurve(b, len(bins[b]), math.fsum(bins[b]) / len(bins[b]))
            for b in sorted(bins)]


def involved_point(store, x, y):
    paths = store.paths_between(x, y)
    if not paths:
        return None
    distances = [p.distance() for p in paths]
    # exact mean so that bin rounding never sees float noise
    mean = Fraction(sum(distances), len(distances))
    return InvolvedPoint(y, mean, min(distances), len(involved(store, x, y)))


def involved_report(store, x):
    points = []
    for y in store.targets(x):
        point = involved_point(store, x, y)
        if point is not None:
            points.append(point)
    return InvolvedReport(x, points)


#
# excluded countries
#

class ExcludedRow(object):
    """ per list-size tallies; ratios are exact fractions of trial counts """

    def __init__(self, size, trials):
        self.size = size
        self.trials = trials
        self.none_count = 0
        self.all_count = 0
        self.mixture_count = 0
        self.mixture_clean_sum = Fraction(0)

    def add(self, outcome):
        if outcome.cls == NONE_EXCLUDED:
            self.none_count += 1
        elif outcome.cls == ALL_EXCLUDED:
            self.all_count += 1
        else:
            self.mixture_count += 1
            self.mixture_clean_sum += outcome.clean_ratio

    @property
    def none_ratio(self):
        return Fraction(self.none_count, self.trials)

    @property
    def all_ratio(self):
        return Fraction(self.all_count, self.trials)

    @property
    def mixture_trial_ratio(self):
        return Fraction(self.mixture_count, self.trials)

    @property
    def mixture_mean_clean_ratio(self):
        if not self.mixture_count:
            return Fraction(0)
        return self.mixture_clean_sum / self.mixture_count


class ExcludedReport(object):

    def __init__(self, source, seed, rows):
        self.source = source
        self.seed = seed
        self.rows = rows


def parse_sizes(text):
    """ "min:max:step" --> [min, min+step, ..., <= max] """
    try:
        lo, hi, step = [int(v) for v in text.split(':')]
    except ValueError:
        raise UsageError("sizes must look like min:max:step, got %r" % (text, ))
    if lo < 0 or hi < lo or step < 1:
        raise UsageError("sizes need 0 <= min <= max and step >= 1, got %r" % (text, ))
    return list(range(lo, hi + 1, step))


def _classify(interiors, excluded):
    clean = sum(1 for hops in interiors if excluded.isdisjoint(hops))
    total = len(interiors)
    if clean == total:
        return TrialOutcome(NONE_EXCLUDED, Fraction(1))
    if clean == 0:
        return TrialOutcome(ALL_EXCLUDED, Fraction(0))
    return TrialOutcome(MIXTURE, Fraction(clean, total))


def _interiors(store, x, y):
    # sorted for a stable iteration order
    return [frozenset(p.interior()) for p in sorted(store.paths_between(x, y))]


def excluded_trial(store, x, y, excluded):
    excluded = frozenset(excluded)
    if x in excluded or y in excluded:
        raise ExcludedEndpoint("excluded set may not contain %s or %s" % (x, y))
    interiors = _interiors(store, x, y)
    if not interiors:
        raise NoPaths("no recorded paths from %s to %s" % (x, y))
    return _classify(interiors, excluded)


def countryKey(code):
    "country code --> integer, for seeding"
    return (ord(code[0]) << 8) | ord(code[1])


def trialGenerator(seed, x, size_index, trial_index, coupled=False):
    """ the random stream of one trial

        Derived from the counters alone, so results do not depend on the
        order trials are run in. Coupled streams ignore the size index:
        every size then sees the same destination and the same
        permutation of candidate countries.
    """
    size_key = 0 if coupled else size_index + 1
    sequence = numpy.random.SeedSequence([seed, countryKey(x), size_key, trial_index])
    return numpy.random.Generator(numpy.random.PCG64(sequence))


def sampleTrial(rng, targets, universe, x, size):
    y = targets[int(rng.integers(len(targets)))]
    candidates = [c for c in universe if c != x and c != y]
    order = rng.permutation(len(candidates))
    k = min(size, len(candidates))
    return y, frozenset(candidates[i] for i in order[:k])


def excluded_experiment(store, x, sizes, trials_per_size, seed, coupled=False):
    if isinstance(sizes, str):
        sizes = parse_sizes(sizes)
    if trials_per_size < 1:
        raise UsageError("trials per size must be at least 1")
    targets = store.targets(x)
    if not targets:
        raise NoTargets("source %s reaches no destination country" % x)
    universe = store.countries()
    interiors = dict((y, _interiors(store, x, y)) for y in targets)
    rows = []
    for size_index, size in enumerate(sizes):
        row = ExcludedRow(size, trials_per_size)
        for trial in range(trials_per_size):
            rng = trialGenerator(seed, x, size_index, trial, coupled)
            y, excluded = sampleTrial(rng, targets, universe, x, size)
            row.add(_classify(interiors[y], excluded))
        rows.append(row)
    return ExcludedReport(x, seed, rows)
