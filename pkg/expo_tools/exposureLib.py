#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# expo general library: exception tree and exit codes
#

import os


class ExpoToolException(Exception):
    """ general exception class for the tool """


class UsageError(ExpoToolException):
    """ bad flags or flag values; nothing was read or written """


class DataError(ExpoToolException):
    """ input data, store or experiment precondition problem """


errnoSuccess = 0
errnoUsageError = 1
errnoDataError = 2
errnoGeneralError = 100


#
# trace_model
#

class EmptyPath(DataError):
    "a country path needs at least one hop"


class InvalidCountryCode(DataError):
    "country codes are exactly two characters A-Z"


class InvalidMonitorId(DataError):
    "monitor ids are non-empty and contain no whitespace"


#
# ingest / country_mapping
#

class ParseError(DataError):
    """ malformed input line """

    def __init__(self, line_no, reason):
        DataError.__init__(self, "line %s: %s" % (line_no, reason))
        self.line_no = line_no
        self.reason = reason


class AsSetUnsupported(ParseError):
    "AS-set tokens ({...}) are not accepted"


class DuplicatePrefix(ParseError):
    "identical prefix listed twice in a geo table"


class Unresolved(DataError):
    "no geo table prefix covers the address"


class Discarded(DataError):
    """ record cannot be turned into a country path (not a hard error) """

    def __init__(self, reason):
        DataError.__init__(self, reason)
        self.reason = reason


class MonitorUnknown(DataError):
    "monitor id missing from the monitors table"


#
# path_store
#

class SourceMismatch(DataError):
    "path source differs from the monitor's country"


class UnknownMonitor(DataError):
    "monitor not in the store's monitor table"


class StoreSealed(DataError):
    "store is read-only after sealing"


class FormatError(DataError):
    """ store file does not follow the store format """

    def __init__(self, line_no, reason):
        DataError.__init__(self, "line %s: %s" % (line_no, reason))
        self.line_no = line_no
        self.reason = reason


#
# experiments / country_graph / synth
#

class NoPaths(DataError):
    "no recorded paths for the query"


class LonelyMonitor(DataError):
    "the monitor's country has no other monitor"


class ExcludedEndpoint(DataError):
    "excluded set contains the source or destination country"


class NoTargets(DataError):
    "source country reaches no destination country"


class NoEdges(DataError):
    "graph has no edges"


class NonConvergence(DataError):
    "power iteration did not converge"


class ConfigError(UsageError):
    "invalid generator configuration"


def gendir(directory):
    "makedirs, but only if it doesn't exist first"
    if directory and not os.path.exists(directory):
        os.makedirs(directory, 0o755)
