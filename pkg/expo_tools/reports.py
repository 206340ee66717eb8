#
# This software is licensed to you under the GNU General Public License,
# version 2 (GPLv2). There is NO WARRANTY for this software, express or
# implied, including the implied warranties of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. You should have received a copy of GPLv2
# along with this software; if not, see
# http://www.gnu.org/licenses/old-licenses/gpl-2.0.txt.
#
#
# CSV report and run-summary serialization
#
# CSV: UTF-8, header row, LF, '.' decimal point, 6 fractional digits.
#

import csv
import json


GENERALIZATION_CSV = 'generalization.csv'
INVOLVED_POINTS_CSV = 'involved_points.csv'
INVOLVED_CURVES_CSV = 'involved_curves.csv'
INVOLVED_CURVES_MIN_CSV = 'involved_curves_min.csv'
EXCLUDED_CSV = 'excluded.csv'
CENTRALITY_CSV = 'centrality.csv'
RUN_SUMMARY = 'run_summary.json'


def real(value):
    return '%.6f' % float(value)


def _writer(stream, header):
    w = csv.writer(stream, lineterminator='\n')
    w.writerow(header)
    return w


def write_generalization(stream, report):
    w = _writer(stream, ['country', 'monitor_count', 'mean_ratio'])
    for row in report.rows:
        w.writerow([row.country, row.monitor_count, real(row.mean_ratio)])


def write_involved_points(stream, reports):
    w = _writer(stream, ['source', 'target', 'mean_distance', 'min_distance', 'involved_count'])
    for report in reports:
        for p in report.points:
            w.writerow([report.source, p.target, real(p.mean_distance), p.min_distance,
                        p.involved_count])


def write_involved_curves(stream, reports, minimum=False):
    w = _writer(stream, ['source', 'distance_bin', 'target_count', 'mean_involved'])
    for report in reports:
        for c in (report.curves_min if minimum else report.curves):
            w.writerow([report.source, c.distance_bin, c.target_count, real(c.mean_involved)])


def write_excluded(stream, reports):
    w = _writer(stream, ['source', 'size', 'none_ratio', 'all_ratio', 'mixture_trial_ratio',
                         'mixture_mean_clean_ratio', 'trials', 'seed'])
    for report in reports:
        for row in report.rows:
            w.writerow([report.source, row.size, real(row.none_ratio), real(row.all_ratio),
                        real(row.mixture_trial_ratio), real(row.mixture_mean_clean_ratio),
                        row.trials, report.seed])


def write_centrality(stream, scatter):
    w = _writer(stream, ['country', 'degree', 'closeness', 'eigenvector', 'load', 'mean_involved'])
    for row in scatter.rows:
        w.writerow([row.country, row.degree, real(row.closeness), real(row.eigenvector),
                    real(row.load), real(row.mean_involved)])


def write_summary(stream, summary):
    json.dump(summary, stream, sort_keys=True, indent=2)
    stream.write('\n')

