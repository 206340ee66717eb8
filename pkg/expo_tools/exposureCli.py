#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# expo command line option module
#

# language imports
import os
import sys

# utility imports
from optparse import OptionParser, make_option

# local imports
from expo_tools.exposureLib import UsageError, InvalidCountryCode
from expo_tools.exposureConfig import DEFS, SUBCOMMANDS, ON_ERROR_CHOICES, DATASET_CHOICES, \
        ALL_SOURCES, reInitDEFS, getOption, synthConfig
from expo_tools.exposureConfig import figureDEFS_common, figureDEFS_ingest, \
        figureDEFS_experiment, figureDEFS_synth
from expo_tools.experiments import parse_sizes
from expo_tools.trace_model import country_code


MAX_SEED = 2**64 - 1


class _Parser(OptionParser):
    """ optparse exits with status 2 on bad flags; we want a UsageError
        (exit 1) and nothing written
    """

    def error(self, msg):
        raise UsageError("%s (try %s --help)" % (msg, self.get_prog_name()))


#
# option lists.
# stitched together per subcommand.
#

def _getOptionsTree(defs):
    """ passing in the defaults dictionary, build the option list of every
        subcommand
    """

    _optThreads = make_option('--threads', action='store', type='int', help='worker threads; outputs do not depend on it (default: %s)' % defs['--threads'])  # noqa: E501
    _optStore = make_option('--store', action='store', type='string', help='store file written by "ingest"')
    _optMinTargets = make_option('--min-targets', action='store', type='int', help='skip source countries reaching fewer destination countries (default: %s)' % defs['--min-targets'])  # noqa: E501
    _optSource = make_option('--source', action='append', type='string', help='source country code; repeatable, or "%s" (default)' % ALL_SOURCES)  # noqa: E501
    _optReportDir = make_option('--out', action='store', type='string', help='report directory (default: %s)' % defs['--out'])  # noqa: E501

    _genOptions = [
        make_option('-v', '--verbose', action='count', help='be verbose. Accumulative: -vvv means "be *really* verbose".'),
        make_option('-q', '--quiet', action='store_true', help="be quiet. No output."),
        _optThreads,
        ]

    _ingestOptions = [
        make_option('--dataset', action='store', type='choice', choices=DATASET_CHOICES, help='geo (router traces) or reg (BGP AS paths) (default: %s)' % defs['--dataset']),  # noqa: E501
        make_option('--geo', action='store', type='string', help='geolocation table: CIDR TAB country (geo dataset)'),  # noqa: E501
        make_option('--asreg', action='store', type='string', help='AS registry: ASN TAB country (reg dataset)'),  # noqa: E501
        make_option('--monitors', action='store', type='string', help='monitor table: monitor_id TAB country'),  # noqa: E501
        make_option('--eu-remap', action='store', type='string', help='optional country remap: code TAB replacement (e.g. member state TAB EU)'),  # noqa: E501
        make_option('--on-error', action='store', type='choice', choices=ON_ERROR_CHOICES, help='malformed lines: skip and count, or abort (default: %s)' % defs['--on-error']),  # noqa: E501
        make_option('--out', action='store', type='string', help='store file to write'),
        ]

    _excludeOptions = [
        _optStore, _optReportDir, _optSource, _optMinTargets,
        make_option('--sizes', action='store', type='string', help='excluded list sizes min:max:step (default: %s)' % defs['--sizes']),  # noqa: E501
        make_option('--trials', action='store', type='int', help='trials per list size (default: %s)' % defs['--trials']),  # noqa: E501
        make_option('--seed', action='store', type='long', help='unsigned 64-bit seed (mandatory)'),
        make_option('--coupled', action='store_true', help='reuse one random stream per trial across all list sizes'),  # noqa: E501
        ]

    _synthOptions = [
        make_option('--out', action='store', type='string', help='corpus directory (default: %s)' % defs['--out']),  # noqa: E501
        make_option('--countries', action='store', type='int', help='number of countries (default: %s)' % defs['--countries']),  # noqa: E501
        make_option('--routers-per-country', action='store', type='int', help='routers per country (default: %s)' % defs['--routers-per-country']),  # noqa: E501
        make_option('--attachment-exponent', action='store', type='float', help='preferential attachment exponent; > 1 favors hubs (default: %s)' % defs['--attachment-exponent']),  # noqa: E501
        make_option('--links-per-country', action='store', type='int', help='links added per joining country (default: %s)' % defs['--links-per-country']),  # noqa: E501
        make_option('--n-monitors', action='store', type='int', help='monitors placed by router degree, on top of --monitors-per-country (default: %s)' % defs['--n-monitors']),  # noqa: E501
        make_option('--monitors-per-country', action='store', type='int', help='monitors placed in every country (default: %s)' % defs['--monitors-per-country']),  # noqa: E501
        make_option('--paths-per-monitor', action='store', type='int', help='destination routers probed per destination country (default: %s)' % defs['--paths-per-monitor']),  # noqa: E501
        make_option('--multipath', action='store', type='int', help='alternate routes per destination (default: %s)' % defs['--multipath']),  # noqa: E501
        make_option('--unresolved-rate', action='store', type='float', help='share of same-country-flanked hops emitted as "*" (default: %s)' % defs['--unresolved-rate']),  # noqa: E501
        make_option('--seed', action='store', type='long', help='unsigned 64-bit seed (default: 0)'),
        ]

    optionsTree = {
        'synth': _synthOptions + _genOptions,
        'ingest': _ingestOptions + _genOptions,
        'generalize': [_optStore, _optReportDir] + _genOptions,
        'involved': [_optStore, _optReportDir, _optSource, _optMinTargets] + _genOptions,
        'exclude': _excludeOptions + _genOptions,
        'centrality': [_optStore, _optReportDir] + _genOptions,
        }

    return optionsTree


# custom usage text
_progName = 'expo'
BASE_USAGE = """\
%s <subcommand> [options] [files]

 step 1 (optional) %s synth --out DIR [sub-options]

 step 2 %s ingest --dataset geo|reg --monitors FILE --out STORE [sub-options] FILE...

 step 3 %s generalize|involved|exclude|centrality --store STORE [sub-options]

For more help about a particular subcommand, add --help to it, such as:
%s exclude --help\
""" % tuple([_progName]*5)
SUBCOMMAND_USAGE = """\
%s %%s [options]%%s

If confused, please refer to the README for sample usage.\
""" % _progName


def optionParse(argv):
    """ (1) pick the subcommand  (2) parse its options  (3) fold them into
        DEFS and back onto the options object
    """

    reInitDEFS()

    if not argv:
        raise UsageError("a subcommand is required\n\n" + BASE_USAGE)
    if argv[0] in ('-h', '--help'):
        parser = _Parser(usage=BASE_USAGE, prog=_progName)
        parser.parse_args(['--help'])
    command = argv[0]
    if command not in SUBCOMMANDS:
        raise UsageError("unknown subcommand %r; expected one of: %s"
                         % (command, ', '.join(SUBCOMMANDS)))

    files = ' FILE...' if command == 'ingest' else ''
    parser = _Parser(option_list=_getOptionsTree(DEFS)[command],
                     usage=SUBCOMMAND_USAGE % (command, files), prog=_progName)
    options, args = parser.parse_args(argv[1:])
    options.command = command

    figureDEFS_common(options)
    if command == 'ingest':
        figureDEFS_ingest(options)
    elif command == 'synth':
        figureDEFS_synth(options)
    else:
        figureDEFS_experiment(options)

    if command != 'ingest' and args:
        raise UsageError("these arguments make no sense in this context (try --help): %s"
                         % repr(args))

    return options, args


def _require(options, opt, what):
    if not getOption(options, opt):
        raise UsageError("%s requires --%s %s" % (options.command, opt.replace('_', '-'), what))


def _checkReadable(filename):
    if not os.path.isfile(filename):
        raise UsageError("no such file: %s" % filename)


def processCommandline(argv=None):
    """ parse and validate every flag; no file is read or written here
        except for existence checks on ingest inputs
    """
    if argv is None:
        argv = sys.argv[1:]
    options, args = optionParse(argv)
    command = options.command

    if options.threads < 1:
        raise UsageError("--threads must be at least 1")

    if command == 'ingest':
        _require(options, 'monitors', 'FILE')
        _require(options, 'out', 'STORE')
        if os.path.isdir(options.out):
            raise UsageError("ingest --out names the store file, not a directory: %s" % options.out)
        if options.dataset == 'geo':
            _require(options, 'geo', 'FILE')
        else:
            _require(options, 'asreg', 'FILE')
        if not args:
            raise UsageError("ingest needs at least one input file")
        for filename in [options.monitors, options.geo, options.asreg, options.eu_remap] + args:
            if filename:
                _checkReadable(filename)

    elif command == 'synth':
        if not 0 <= options.seed <= MAX_SEED:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        options.synth_config = synthConfig(options)

    else:
        _require(options, 'store', 'FILE')
        if command in ('involved', 'exclude'):
            sources = options.source
            if ALL_SOURCES in sources:
                if len(sources) > 1:
                    raise UsageError('--source %s cannot be combined with country codes' % ALL_SOURCES)
            else:
                try:
                    options.source = sorted(set(country_code(s) for s in sources))
                except InvalidCountryCode as e:
                    raise UsageError(str(e))
            if options.min_targets < 1:
                raise UsageError("--min-targets must be at least 1")
        if command == 'exclude':
            if options.seed is None:
                raise UsageError("exclude requires --seed U64 (no wall-clock seeding)")
            if not 0 <= options.seed <= MAX_SEED:
                raise UsageError("--seed must be an unsigned 64-bit integer")
            if options.trials < 1:
                raise UsageError("--trials must be at least 1")
            options.size_list = parse_sizes(options.sizes)

    if options.quiet:
        options.verbose = -1
    if not options.verbose:
        options.verbose = 0

    return options, args
