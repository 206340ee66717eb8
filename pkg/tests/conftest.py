#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#

import pytest

from expo_tools.ingest import MonitorTable
from expo_tools.path_store import build_store
from expo_tools.trace_model import CountryPath, DatasetKind


def makeStore(monitors, records, dataset=DatasetKind.GEOLOCATION):
    """ monitors: {monitor: country}; records: [(monitor, "A>B>C")] """
    pairs = [(m, CountryPath.parse(p)) for m, p in records]
    store, _dups = build_store(dataset, MonitorTable(monitors), pairs)
    return store


@pytest.fixture
def store_factory():
    return makeStore


@pytest.fixture
def small_store():
    return makeStore({'m1': 'US', 'm2': 'US', 'm3': 'DE'}, [
        ('m1', 'US>DE'),
        ('m1', 'US>FR>DE'),
        ('m1', 'US>GB>FR'),
        ('m2', 'US>DE'),
        ('m2', 'US>NL>DE'),
        ('m3', 'DE>FR>US'),
    ])


@pytest.fixture
def write_file(tmp_path):
    def write(name, lines):
        path = tmp_path / name
        path.write_text(''.join(line + '\n' for line in lines), encoding='utf-8')
        return str(path)
    return write
