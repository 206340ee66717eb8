#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# expo country exposure tool (main module)
#
# *NOTE*
# This module is intended to be imported and not run directly though it can
# be. The executable wrapping this module is ./expo (installed as
# /usr/bin/expo).
#
# Pipeline: synth (optional) --> ingest --> store --> one subcommand per
# experiment --> CSV reports plus run_summary.json.
#


# language imports
from __future__ import print_function
import collections
import os
import sys
from concurrent.futures import ThreadPoolExecutor

# local imports
from expo_tools.exposureCli import processCommandline
from expo_tools.exposureConfig import ALL_SOURCES
from expo_tools.exposureLib import ExpoToolException, UsageError, DataError, Discarded, \
        MonitorUnknown, NoTargets, errnoSuccess, errnoUsageError, errnoDataError, errnoGeneralError
from expo_tools.fileutils import PendingFiles, cleanupAbsPath
from expo_tools.ingest import iterRecords, parse_trace_line, parse_bgp_line, \
        load_monitor_table, load_remap, dedup_paths
from expo_tools.country_mapping import load_geo_table, load_as_registry, \
        trace_to_country_path, aspath_to_country_path
from expo_tools import path_store
from expo_tools import reports
from expo_tools.trace_model import DatasetKind
from expo_tools.experiments import generalization_report, involved_report, excluded_experiment
from expo_tools.country_graph import build_graph, centrality_scatter
from expo_tools.synth import generate_corpus, write_corpus


DISCARD_SOURCE_MISMATCH = 'source country mismatch'


def _runPool(threads, fn, items):
    """ map fn over items on up to `threads` workers; results in item order """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _writeOutputs(outputs, summary, summaryDir, verbosity):
    """ outputs: [(path, writer(stream))]; everything, run summary included,
        lands together or not at all
    """
    with PendingFiles(verbosity) as files:
        for path, writer in outputs:
            if verbosity >= 0:
                print("Writing: %s" % path)
            writer(files.open(path))
        summary['outputs'] = files.digests()
        reports.write_summary(files.open(os.path.join(summaryDir, reports.RUN_SUMMARY)), summary)
        files.commit()


def _loadStore(filename, verbosity):
    if verbosity >= 0:
        print("Loading store: %s" % filename)
    try:
        store = path_store.load(filename)
    except (IOError, OSError) as e:
        raise DataError("cannot read store %s: %s" % (filename, e.strerror or e))
    if verbosity > 1:
        print("    %s dataset, %d monitors, %d records"
              % (store.dataset.value, len(store.monitor_countries), len(store)))
    return store


#
# ingest
#

class _IngestTables:
    """ everything a worker needs to turn one input file into country paths """

    def __init__(self, options):
        self.dataset = DatasetKind.fromLabel(options.dataset)
        self.onError = options.on_error
        self.verbosity = options.verbose
        self.monitors = load_monitor_table(options.monitors)
        self.remap = load_remap(options.eu_remap) if options.eu_remap else None
        self.geo = self.registry = None
        if self.dataset is DatasetKind.GEOLOCATION:
            self.geo = load_geo_table(options.geo)
        else:
            self.registry = load_as_registry(options.asreg)

    def storeMonitors(self):
        if self.remap:
            return self.monitors.remapped(self.remap)
        return self.monitors

    def convert(self, rec):
        if self.geo is not None:
            return trace_to_country_path(rec, self.geo, self.monitors, self.remap)
        source = self.monitors.country(rec.monitor)
        path = aspath_to_country_path(rec, self.registry, self.remap)
        if self.remap:
            source = self.remap.get(source, source)
        if path.source() != source:
            raise Discarded(DISCARD_SOURCE_MISMATCH)
        return path


def convertFile(tables, filename):
    """ -> (distinct (monitor, path) pairs of this file, counts) """
    counts = collections.Counter()
    parser = parse_trace_line if tables.geo is not None else parse_bgp_line

    def paths():
        for rec in iterRecords(filename, parser, counts, tables.onError, tables.verbosity):
            try:
                path = tables.convert(rec)
            except Discarded as e:
                counts['discarded: %s' % e.reason] += 1
                continue
            except MonitorUnknown:
                if tables.onError == 'abort':
                    raise
                counts['unknown_monitor'] += 1
                continue
            counts['converted'] += 1
            yield rec.monitor, path

    pairs = list(dedup_paths(paths()))
    if tables.verbosity > 1:
        print("    %s: %d lines, %d parsed, %d distinct paths"
              % (filename, counts['lines'], counts['parsed'], len(pairs)))
    return pairs, counts


def cmdIngest(options, args):
    verbosity = options.verbose
    tables = _IngestTables(options)
    if verbosity >= 0:
        print("Ingesting %d file(s) into a %s store" % (len(args), tables.dataset.value))

    results = _runPool(options.threads, lambda f: convertFile(tables, f), args)

    counts = collections.Counter(dict.fromkeys(('lines', 'parsed', 'parse_errors', 'converted',
                                                 'unknown_monitor'), 0))
    for _pairs, fileCounts in results:
        counts.update(fileCounts)
    merged = dedup_paths(pair for pairs, _c in results for pair in pairs)
    store, _dups = path_store.build_store(tables.dataset, tables.storeMonitors(), merged)
    counts['stored'] = len(store)
    counts['duplicates'] = counts['converted'] - len(store)

    out = cleanupAbsPath(options.out)
    summary = {
        'command': 'ingest',
        'parameters': {'dataset': tables.dataset.value, 'inputs': [os.path.basename(a) for a in args],
                       'on_error': options.on_error, 'eu_remap': bool(tables.remap)},
        'counts': dict(counts),
    }
    _writeOutputs([(out, lambda s: path_store.dumpStore(store, s))], summary,
                  os.path.dirname(out), verbosity)
    if verbosity >= 0:
        print("Stored %d distinct paths (%d duplicates, %d parse errors, %d discarded)"
              % (len(store), counts['duplicates'], counts['parse_errors'],
                 sum(v for k, v in counts.items() if k.startswith('discarded'))))


#
# experiments
#

def selectSources(store, requested, minTargets, strict=False):
    """ -> (sources, dropped) ; dropped maps country --> reason """
    dropped = {}
    if ALL_SOURCES in requested:
        candidates = [s for s in store.sources() if store.targets(s)]
    else:
        candidates = requested
    sources = []
    for x in candidates:
        n = len(store.targets(x))
        if n == 0 and strict:
            raise NoTargets("source %s reaches no destination country" % x)
        if n < minTargets:
            dropped[x] = 'fewer than %d targets' % minTargets
            continue
        sources.append(x)
    return sources, dropped


def cmdGeneralize(options):
    store = _loadStore(options.store, options.verbose)
    report = generalization_report(store)
    summary = {
        'command': 'generalize',
        'parameters': {'dataset': store.dataset.value},
        'counts': {'countries': len(report.rows), 'omitted': len(report.omitted)},
        'omitted': report.omitted,
    }
    _writeOutputs([(os.path.join(options.out, reports.GENERALIZATION_CSV),
                    lambda s: reports.write_generalization(s, report))],
                  summary, options.out, options.verbose)


def cmdInvolved(options):
    store = _loadStore(options.store, options.verbose)
    sources, dropped = selectSources(store, options.source, options.min_targets)
    results = _runPool(options.threads, lambda x: involved_report(store, x), sources)
    summary = {
        'command': 'involved',
        'parameters': {'dataset': store.dataset.value, 'min_targets': options.min_targets},
        'counts': {'sources': len(results), 'points': sum(len(r.points) for r in results),
                   'dropped_sources': len(dropped)},
        'dropped_sources': dropped,
    }
    _writeOutputs([
        (os.path.join(options.out, reports.INVOLVED_POINTS_CSV),
         lambda s: reports.write_involved_points(s, results)),
        (os.path.join(options.out, reports.INVOLVED_CURVES_CSV),
         lambda s: reports.write_involved_curves(s, results)),
        (os.path.join(options.out, reports.INVOLVED_CURVES_MIN_CSV),
         lambda s: reports.write_involved_curves(s, results, minimum=True)),
        ], summary, options.out, options.verbose)


def cmdExclude(options):
    store = _loadStore(options.store, options.verbose)
    sources, dropped = selectSources(store, options.source, options.min_targets, strict=True)
    if not sources:
        raise NoTargets("no source country qualifies")
    if options.verbose > 1:
        print("    sizes %s, %d trials per size, seed %d%s"
              % (options.sizes, options.trials, options.seed,
                 ', coupled' if options.coupled else ''))

    def run(x):
        if options.verbose >= 0:
            print("Excluded-country trials for %s" % x)
        return excluded_experiment(store, x, options.size_list, options.trials, options.seed,
                                   coupled=bool(options.coupled))

    results = _runPool(options.threads, run, sources)
    summary = {
        'command': 'exclude',
        'parameters': {'dataset': store.dataset.value, 'sizes': options.sizes,
                       'trials': options.trials, 'seed': options.seed,
                       'coupled': bool(options.coupled), 'min_targets': options.min_targets},
        'counts': {'sources': len(results),
                   'trials': sum(r.trials for rep in results for r in rep.rows),
                   'dropped_sources': len(dropped)},
        'dropped_sources': dropped,
    }
    _writeOutputs([(os.path.join(options.out, reports.EXCLUDED_CSV),
                    lambda s: reports.write_excluded(s, results))],
                  summary, options.out, options.verbose)


def cmdCentrality(options):
    store = _loadStore(options.store, options.verbose)
    graph = build_graph(store)
    if options.verbose >= 0:
        print("Country graph: %d nodes, %d edges" % (len(graph), len(graph.edges)))
    scatter = centrality_scatter(store, graph)
    summary = {
        'command': 'centrality',
        'parameters': {'dataset': store.dataset.value},
        'counts': {'nodes': len(graph), 'edges': len(graph.edges)},
        'spearman_vs_mean_involved': scatter.correlations(),
    }
    _writeOutputs([(os.path.join(options.out, reports.CENTRALITY_CSV),
                    lambda s: reports.write_centrality(s, scatter))],
                  summary, options.out, options.verbose)


def cmdSynth(options):
    cfg = options.synth_config
    if options.verbose >= 0:
        print("Generating synthetic corpus: %s" % cfg.describe())
    corpus = generate_corpus(cfg, threads=options.threads)
    summary = {
        'command': 'synth',
        'parameters': dict((name, getattr(cfg, name)) for name, _d in cfg._defaults),
        'counts': {'countries': cfg.n_countries, 'routers': corpus.routers.number_of_nodes(),
                   'country_links': len(corpus.country_edges), 'monitors': len(corpus.monitors),
                   'trace_lines': len(corpus.traces), 'bgp_lines': len(corpus.bgp),
                   'ground_truth_paths': len(corpus.truth)},
    }
    with PendingFiles(options.verbose) as files:
        write_corpus(corpus, options.out, files)
        summary['outputs'] = files.digests()
        reports.write_summary(files.open(os.path.join(options.out, reports.RUN_SUMMARY)), summary)
        files.commit()


def _main(argv):
    """ main routine """

    options, args = processCommandline(argv)

    if options.command == 'synth':
        cmdSynth(options)
    elif options.command == 'ingest':
        cmdIngest(options, args)
    elif options.command == 'generalize':
        cmdGeneralize(options)
    elif options.command == 'involved':
        cmdInvolved(options)
    elif options.command == 'exclude':
        cmdExclude(options)
    elif options.command == 'centrality':
        cmdCentrality(options)


def main(argv=None):
    """ main routine wrapper (exception handler)

          0  success, reports written
          1  usage error (bad subcommand, flag or flag value)
          2  data error (unreadable or malformed input in abort mode, bad
             store file, experiment precondition such as a source without
             destinations)
        100  general expo tool error
    """

    def writeError(e):
        sys.stderr.write('\nERROR: %s\n' % e)

    if argv is None:
        argv = sys.argv[1:]

    ret = errnoSuccess
    try:
        ret = _main(argv) or errnoSuccess
    except UsageError as e:
        writeError(e)
        ret = errnoUsageError
    except DataError as e:
        writeError(e)
        ret = errnoDataError
    except (IOError, OSError) as e:
        writeError("%s: %s" % (getattr(e, 'filename', None) or 'I/O', e.strerror or e))
        ret = errnoDataError
    except ExpoToolException as e:
        writeError(e)
        ret = errnoGeneralError

    return ret


def run(argv):
    return main(argv)


if __name__ == '__main__':
    sys.exit(main())
