import collections

import numpy
import pytest

from expo_tools.exposureLib import ParseError, AsSetUnsupported, MonitorUnknown
from expo_tools.ingest import TraceRecord, AsPathRecord, MonitorTable, parse_trace_line, \
        parse_bgp_line, parse_asn, parse_pair_line, format_trace_record, format_bgp_record, \
        iterRecords, load_monitor_table, load_remap, dedup_paths, MAX_ASN
from expo_tools.trace_model import CountryPath, normalize_country_path


def test_parse_trace_line():
    rec = parse_trace_line('m1\t10.0.0.1,*,10.0.9.9\n', 1)
    assert rec == TraceRecord('m1', ('10.0.0.1', '*', '10.0.9.9'))
    assert format_trace_record(rec) == 'm1\t10.0.0.1,*,10.0.9.9'


def test_parse_trace_line_crlf():
    assert parse_trace_line('m1\t10.0.0.1\r\n').hops == ('10.0.0.1', )


@pytest.mark.parametrize('line', [
    'm1 10.0.0.1',             # no tab
    'm1\t',                    # empty hop list
    'm1\t10.0.0.1,300.1.1.1',  # bad address
    'm1\t10.0.0.1,,10.0.0.2',  # empty hop
    'm 1\t10.0.0.1',           # whitespace in monitor id
    '\t10.0.0.1',              # empty monitor id
    'm1\t10.0.0.1\textra',
])
def test_parse_trace_line_rejects(line):
    with pytest.raises(ParseError) as err:
        parse_trace_line(line, 7)
    assert err.value.line_no == 7


def test_parse_bgp_line_collapses_prepending():
    rec = parse_bgp_line('r1\t192.0.2.0/24\t701 701 701 3356 3320\n', 3)
    assert rec == AsPathRecord('r1', '192.0.2.0/24', (701, 3356, 3320))
    assert format_bgp_record(rec) == 'r1\t192.0.2.0/24\t701 3356 3320'


def test_parse_bgp_line_as_set():
    with pytest.raises(AsSetUnsupported):
        parse_bgp_line('r1\t192.0.2.0/24\t701 {3356,3320}', 2)
    # still a parse error for the on-error policy
    with pytest.raises(ParseError):
        parse_bgp_line('r1\t192.0.2.0/24\t701 {3356,3320}', 2)


@pytest.mark.parametrize('line', [
    'r1\t192.0.2.0/24\t',
    'r1\t\t701',
    'r1\t192.0.2.0/24\t701 AS3356',
    'r1\t192.0.2.0/24\t0',
    'r1\t192.0.2.0/24\t4294967296',
])
def test_parse_bgp_line_rejects(line):
    with pytest.raises(ParseError):
        parse_bgp_line(line, 1)


def test_parse_asn_range():
    assert parse_asn('1') == 1
    assert parse_asn(str(MAX_ASN)) == MAX_ASN
    with pytest.raises(ParseError):
        parse_asn('1.10')


@pytest.mark.parametrize('token', [u'\u00b2', u'\u0663', u'70\u00b9', u'\uff11', '+1', ' 1', '1\n'])
def test_parse_asn_ascii_digits_only(token):
    with pytest.raises(ParseError):
        parse_asn(token, 5)


def test_parse_bgp_line_superscript_digit():
    with pytest.raises(ParseError) as err:
        parse_bgp_line(u'm1\t1.0.0.0/8\t701 \u00b2', 9)
    assert err.value.line_no == 9


def test_parse_pair_line():
    assert parse_pair_line('m1\tUS\n') == ('m1', 'US')
    with pytest.raises(ParseError):
        parse_pair_line('m1\tusa', 4)


def test_dedup_paths_keeps_first_order():
    a = CountryPath.parse('US>DE')
    b = CountryPath.parse('US>FR>DE')
    pairs = [('m1', a), ('m2', a), ('m1', b), ('m1', a), ('m2', a)]
    assert list(dedup_paths(pairs)) == [('m1', a), ('m2', a), ('m1', b)]


def test_dedup_paths_against_set():
    rng = numpy.random.Generator(numpy.random.PCG64(17))
    codes = ['US', 'DE', 'FR', 'GB', 'NL', 'JP']
    pool = []
    for i in range(400):
        hops = [codes[int(c)] for c in rng.integers(len(codes), size=1 + int(rng.integers(4)))]
        pool.append(normalize_country_path(hops))
    monitors = ['m%d' % i for i in range(25)]
    pairs = [(monitors[int(m)], pool[int(p)])
             for m, p in zip(rng.integers(len(monitors), size=10**5), rng.integers(len(pool), size=10**5))]
    kept = list(dedup_paths(pairs))
    assert len(kept) == len(set(kept)) == len(set(pairs))
    assert kept == list(collections.OrderedDict.fromkeys(pairs))


def test_iter_records_skip_mode(write_file):
    filename = write_file('traces.tsv', [
        '# header comment',
        'm1\t10.0.0.1',
        '',
        'm1\tnot-an-address',
        'm2\t10.0.0.2,*',
    ])
    counts = collections.Counter()
    records = list(iterRecords(filename, parse_trace_line, counts))
    assert [r.monitor for r in records] == ['m1', 'm2']
    assert counts['lines'] == 3
    assert counts['parsed'] == 2
    assert counts['parse_errors'] == 1


def test_iter_records_abort_mode(write_file):
    filename = write_file('traces.tsv', ['m1\t10.0.0.1', 'm1\tnot-an-address'])
    counts = collections.Counter()
    with pytest.raises(ParseError) as err:
        list(iterRecords(filename, parse_trace_line, counts, onError='abort'))
    assert err.value.line_no == 2
    assert filename in err.value.reason


def test_iter_records_invalid_utf8(tmp_path):
    path = tmp_path / 'traces.tsv'
    path.write_bytes(b'm1\t10.0.0.1\n\xff\xfe\t10.0.0.2\nm2\t10.0.0.3\n')
    counts = collections.Counter()
    records = list(iterRecords(str(path), parse_trace_line, counts))
    assert [r.monitor for r in records] == ['m1', 'm2']
    assert counts['parse_errors'] == 1
    with pytest.raises(ParseError) as err:
        list(iterRecords(str(path), parse_trace_line, collections.Counter(), onError='abort'))
    assert err.value.line_no == 2
    assert 'invalid UTF-8' in err.value.reason


def test_monitor_table_invalid_utf8(tmp_path):
    path = tmp_path / 'monitors.tsv'
    path.write_bytes(b'm1\tUS\nm\xe9\tDE\n')
    with pytest.raises(ParseError) as err:
        load_monitor_table(str(path))
    assert err.value.line_no == 2


def test_monitor_table(write_file):
    table = load_monitor_table(write_file('monitors.tsv', ['m2\tDE', 'm1\tUS', 'm3\tUS']))
    assert len(table) == 3
    assert table.country('m2') == 'DE'
    assert table.monitorsIn('US') == ['m1', 'm3']
    assert table.countries() == ['DE', 'US']
    assert list(table) == ['m1', 'm2', 'm3']
    with pytest.raises(MonitorUnknown):
        table.country('m9')


def test_monitor_table_conflict(write_file):
    with pytest.raises(ParseError) as err:
        load_monitor_table(write_file('monitors.tsv', ['m1\tUS', 'm1\tDE']))
    assert err.value.line_no == 2


def test_monitor_table_remapped():
    table = MonitorTable({'m1': 'DE', 'm2': 'US'})
    remapped = table.remapped({'DE': 'EU'})
    assert remapped.country('m1') == 'EU'
    assert remapped.country('m2') == 'US'
    assert table.country('m1') == 'DE'


def test_load_remap(write_file):
    remap = load_remap(write_file('eu.tsv', ['DE\tEU', 'FR\tEU']))
    assert remap == {'DE': 'EU', 'FR': 'EU'}
    with pytest.raises(ParseError):
        load_remap(write_file('bad.tsv', ['germany\tEU']))
