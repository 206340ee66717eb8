#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#

import hashlib


def getFileChecksum(hashtype, filename, buffer_size=1 << 16):
    """ Compute a file's checksum
        Used for the report digests in run summaries
    """

    m = hashlib.new(hashtype)

    with open(filename, 'rb') as f:
        while True:
            buf = f.read(buffer_size)
            if not buf:
                break
            m.update(buf)

    return m.hexdigest()
