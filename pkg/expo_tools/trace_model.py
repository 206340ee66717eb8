#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# core domain types: country codes, monitor ids, datasets, country paths
#

import enum
import re

from expo_tools.exposureLib import EmptyPath, InvalidCountryCode, InvalidMonitorId


PATH_SEPARATOR = '>'

_COUNTRY_RE = re.compile(r'^[A-Z]{2}$')
_MONITOR_RE = re.compile(r'^\S+$')

# codes already seen to be valid
_validCodes = set()


class DatasetKind(enum.Enum):
    GEOLOCATION = 'geo'
    REGISTRATION = 'reg'

    @classmethod
    def fromLabel(cls, label):
        for kind in cls:
            if kind.value == label:
                return kind
        raise ValueError("unknown dataset label: %r (expected geo or reg)" % (label, ))


def country_code(token):
    """ validate a country code token and return it

        Any two uppercase letters are accepted, "EU" and synthetic codes
        included; there is no registry lookup.
    """
    if token in _validCodes:
        return token
    if not isinstance(token, str) or not _COUNTRY_RE.match(token):
        raise InvalidCountryCode("invalid country code: %r" % (token, ))
    _validCodes.add(token)
    return token


def monitor_id(token):
    if not isinstance(token, str) or not _MONITOR_RE.match(token):
        raise InvalidMonitorId("invalid monitor id: %r" % (token, ))
    return token


class CountryPath(object):
    """ compressed sequence of countries from source to destination

        Instances are immutable and hashable. Build them through
        normalize_country_path() or CountryPath.parse(); the constructor
        only checks, it does not compress.
    """

    __slots__ = ('hops', '_hash')

    def __init__(self, hops):
        hops = tuple(hops)
        if not hops:
            raise EmptyPath("a country path needs at least one hop")
        for i, code in enumerate(hops):
            country_code(code)
            if i and hops[i - 1] == code:
                raise ValueError("consecutive duplicate hop %s in %s"
                                 % (code, PATH_SEPARATOR.join(hops)))
        object.__setattr__(self, 'hops', hops)
        object.__setattr__(self, '_hash', hash(hops))

    def __setattr__(self, name, value):
        raise AttributeError("CountryPath is immutable")

    @classmethod
    def parse(cls, text):
        """ "US>DE>FR" --> CountryPath """
        if not text:
            raise EmptyPath("empty country path text")
        return cls(text.split(PATH_SEPARATOR))

    def source(self):
        return self.hops[0]

    def destination(self):
        return self.hops[-1]

    def distance(self):
        "edges traversed between countries"
        return len(self.hops) - 1

    def interior(self):
        "hops strictly between the two endpoints (may repeat an endpoint on loops)"
        return self.hops[1:-1]

    def __len__(self):
        return len(self.hops)

    def __iter__(self):
        return iter(self.hops)

    def __eq__(self, other):
        return isinstance(other, CountryPath) and self.hops == other.hops

    def __ne__(self, other):
        return not self.__eq__(other)

    def __lt__(self, other):
        return str(self) < str(other)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return PATH_SEPARATOR.join(self.hops)

    def __repr__(self):
        return 'CountryPath(%r)' % str(self)


def normalize_country_path(raw):
    """ collapse consecutive duplicate codes; loops such as A>B>A stay """
    raw = list(raw)
    if not raw:
        raise EmptyPath("cannot normalize an empty path")
    hops = []
    for code in raw:
        country_code(code)
        if not hops or hops[-1] != code:
            hops.append(code)
    return CountryPath(hops)
