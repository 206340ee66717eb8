#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# expo defaults and option <--> defaults plumbing
#
# No environment variables and no configuration file: every default lives
# in DEFS, keyed by long option name.
#

import copy

from expo_tools.experiments import DEFAULT_SIZES, DEFAULT_TRIALS
from expo_tools.synth import SynthConfig


SUBCOMMANDS = ('synth', 'ingest', 'generalize', 'involved', 'exclude', 'centrality')

ON_ERROR_CHOICES = ('skip', 'abort')
DATASET_CHOICES = ('geo', 'reg')
ALL_SOURCES = 'all'

_synthDefaults = dict(SynthConfig._defaults)

_defs = \
    {
        '--out': '.',
        '--threads': 1,
        '--on-error': 'skip',

        '--dataset': 'geo',
        '--geo': None,
        '--asreg': None,
        '--monitors': None,
        '--eu-remap': None,

        '--store': None,
        '--source': [ALL_SOURCES],
        '--sizes': DEFAULT_SIZES,
        '--trials': DEFAULT_TRIALS,
        '--seed': None,
        '--coupled': False,
        '--min-targets': 1,

        '--countries': _synthDefaults['n_countries'],
        '--routers-per-country': _synthDefaults['n_routers_per_country'],
        '--attachment-exponent': _synthDefaults['attachment_exponent'],
        '--n-monitors': _synthDefaults['n_monitors'],
        '--monitors-per-country': _synthDefaults['monitors_per_country'],
        '--paths-per-monitor': _synthDefaults['paths_per_monitor'],
        '--multipath': _synthDefaults['multipath_factor'],
        '--links-per-country': _synthDefaults['links_per_country'],
        '--unresolved-rate': _synthDefaults['unresolved_rate'],
    }

DEFS = copy.copy(_defs)


def reInitDEFS():
    DEFS.clear()
    DEFS.update(copy.deepcopy(_defs))


def optName(key):
    "'--on-error' --> 'on_error'"
    return key.lstrip('-').replace('-', '_')


def getOption(options, opt):
    """ fetch the value of an options object item
        without blowing up upon obvious errors
    """
    assert opt.find('-') == -1
    if not options:
        return None
    if opt in options.__dict__:
        return options.__dict__[opt]
    else:
        return None


def setOption(options, opt, value):
    """ set the value of an options object item
        without blowing up upon obvious errors
    """
    if not options:
        return
    if opt in options.__dict__:
        options.__dict__[opt] = value


def _figure(options, keys):
    """ DEFS[key] <-- commandline value if given; then remap onto options """
    for key in keys:
        value = getOption(options, optName(key))
        if value is not None:
            DEFS[key] = value
        setOption(options, optName(key), DEFS[key])


def figureDEFS_common(options):
    _figure(options, ('--out', '--threads', '--on-error'))


def figureDEFS_ingest(options):
    _figure(options, ('--dataset', '--geo', '--asreg', '--monitors', '--eu-remap'))


def figureDEFS_experiment(options):
    _figure(options, ('--store', '--source', '--sizes', '--trials', '--seed', '--coupled',
                      '--min-targets'))


def figureDEFS_synth(options):
    _figure(options, ('--countries', '--routers-per-country', '--attachment-exponent',
                      '--n-monitors', '--monitors-per-country', '--paths-per-monitor', '--multipath',
                      '--links-per-country', '--unresolved-rate', '--seed'))
    if getOption(options, 'seed') is None:
        setOption(options, 'seed', _synthDefaults['seed'])


def synthConfig(options):
    return SynthConfig(n_countries=options.countries,
                       n_routers_per_country=options.routers_per_country,
                       attachment_exponent=options.attachment_exponent,
                       n_monitors=options.n_monitors,
                       monitors_per_country=options.monitors_per_country,
                       paths_per_monitor=options.paths_per_monitor,
                       multipath_factor=options.multipath,
                       links_per_country=options.links_per_country,
                       unresolved_rate=options.unresolved_rate,
                       seed=options.seed)
