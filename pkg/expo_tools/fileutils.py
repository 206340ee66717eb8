#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#

import io
import os
import sys
import tempfile

from expo_tools.checksum import getFileChecksum
from expo_tools.exposureLib import gendir


def cleanupAbsPath(path):
    """ take ~user/../some/path/$DATA_DIR/blah and make it sensible.

        Path returned is absolute.
    """

    if path is None:
        return None
    return os.path.abspath(
             os.path.expanduser(
               os.path.expandvars(path)))


class PendingFiles:
    """ a set of output files that appear together or not at all

        Each open() hands back a text stream on a temporary file in the
        destination directory. Nothing is visible under the final names
        until commit() renames every temporary into place; discard()
        (or leaving the with-block on an exception) removes them.
    """

    def __init__(self, verbosity=0):
        self.verbosity = verbosity
        self._pending = []  # (tmp path, final path, stream)

    def open(self, filename):
        filename = cleanupAbsPath(filename)
        directory = os.path.dirname(filename)
        gendir(directory)
        fd, tmp = tempfile.mkstemp(prefix='.' + os.path.basename(filename) + '.',
                                   suffix='.tmp', dir=directory)
        stream = io.open(fd, 'w', encoding='utf-8', newline='\n')
        self._pending.append((tmp, filename, stream))
        return stream

    def finalNames(self):
        return [final for _tmp, final, _stream in self._pending]

    def finish(self):
        "flush and close every stream opened so far"
        for tmp, _final, stream in self._pending:
            if not stream.closed:
                stream.flush()
                os.fsync(stream.fileno())
                stream.close()
            os.chmod(tmp, 0o644)

    def digests(self, hashtype='sha256'):
        """ basename --> checksum of every finished file; the digest of the
            temporary equals that of the file it becomes
        """
        self.finish()
        return dict((os.path.basename(final), getFileChecksum(hashtype, tmp))
                    for tmp, final, _stream in self._pending)

    def commit(self):
        self.finish()
        for tmp, final, _stream in self._pending:
            os.replace(tmp, final)
            if self.verbosity > 1:
                sys.stderr.write("Wrote: %s\n" % final)
        committed = self.finalNames()
        self._pending = []
        return committed

    def discard(self):
        for tmp, _final, stream in self._pending:
            if not stream.closed:
                stream.close()
            try:
                os.unlink(tmp)
            except OSError:
                pass
        self._pending = []

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        # a normal exit leaves commit() to the caller
        if exc_type is not None or self._pending:
            self.discard()
        return False
