import random

import pytest

from syncswitch.automaton import Dfa, IsoConvention
from syncswitch.search import (
    SearchSpaceError,
    Shard,
    cyclic_extremal_search,
    decode_table,
    empty_report,
    encode_table,
    extremal_search,
    format_report,
    merge_reports,
    shard_space,
    _scan_numpy,
    _scan_reference,
)
from syncswitch.synchro import is_synchronizing, min_switch_count, shortest_sync_length


def test_decode_encode_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randint(2, 5)
        k = rng.randint(1, 3)
        index = rng.randrange(n ** (n * k))
        rows = decode_table(n, k, index)
        assert encode_table(n, k, rows) == index
        assert len(rows) == n and all(len(r) == k for r in rows)


def test_shard_space_partitions():
    shards = shard_space(3, 2, 5)
    assert shards[0].lo == 0 and shards[-1].hi == 3 ** 6
    assert sum(s.hi - s.lo for s in shards) == 3 ** 6
    for a, b in zip(shards, shards[1:]):
        assert a.hi == b.lo
    with pytest.raises(ValueError):
        Shard(3, 2, 0, 3 ** 6 + 1)


def test_engines_agree_exhaustively_small():
    for n in (2, 3):
        ref = _scan_reference(n, 2, 0, n ** (2 * n))
        fast = _scan_numpy(n, 2, 0, n ** (2 * n))
        assert ref[0] == fast[0]
        assert sorted(ref[1]) == sorted(fast[1])


def test_engines_agree_on_n4_slice():
    lo, hi = 20_000, 26_000
    ref = _scan_reference(4, 2, lo, hi)
    fast = _scan_numpy(4, 2, lo, hi)
    assert ref[0] == fast[0]
    assert sorted(ref[1]) == sorted(fast[1])


def test_engines_agree_cyclic():
    ref = _scan_reference(4, 2, 0, 4 ** 4, cyclic=True)
    fast = _scan_numpy(4, 2, 0, 4 ** 4, cyclic=True)
    assert ref[0] == fast[0]
    assert sorted(ref[1]) == sorted(fast[1])


def test_extremal_n2_and_n3():
    r2 = extremal_search(2)
    assert r2.max_sw == 1 and r2.scanned == 16
    r3 = extremal_search(3)
    assert r3.max_sw == 3
    assert r3.form_count(IsoConvention.STATES_AND_SYMBOLS) == 6
    assert r3.scanned == 729


def test_extremal_forms_recheck():
    report = extremal_search(3)
    for dfa in report.extremal_forms:
        assert is_synchronizing(dfa)
        assert min_switch_count(dfa) == report.max_sw


def test_pair_criterion_never_rejects():
    # against subset BFS on every binary 3-state table
    for index in range(3 ** 6):
        dfa = Dfa(decode_table(3, 2, index))
        by_pairs = is_synchronizing(dfa)
        try:
            shortest_sync_length(dfa)
            by_subsets = True
        except Exception:
            by_subsets = False
        assert by_pairs == by_subsets


def test_merge_reports():
    r3 = extremal_search(3)
    empty = empty_report(3, 2)
    assert merge_reports(r3, empty).forms == r3.forms
    sharded = extremal_search(3, shards=2)
    assert sharded.forms == r3.forms and sharded.max_sw == r3.max_sw
    assert sharded.scanned == r3.scanned
    with pytest.raises(ValueError):
        merge_reports(r3, empty_report(4, 2))


def test_merge_commutative():
    from syncswitch.search import _scan_worker, _report_from_scan

    parts = []
    total = 3 ** 6
    for lo, hi in [(0, total // 2), (total // 2, total)]:
        max_sw, forms, scanned, trunc, elapsed, _ = _scan_worker((3, 2, lo, hi, False, "numpy"))
        parts.append(_report_from_scan(3, 2, IsoConvention.STATES_AND_SYMBOLS,
                                       max_sw, forms, scanned, elapsed, trunc))
    ab = merge_reports(parts[0], parts[1])
    ba = merge_reports(parts[1], parts[0])
    assert ab.max_sw == ba.max_sw and ab.forms == ba.forms and ab.scanned == ba.scanned
    full = extremal_search(3)
    assert ab.max_sw == full.max_sw and ab.forms == full.forms


def test_cyclic_small():
    r = cyclic_extremal_search(3, 3)
    assert r.max_sw == 3
    r = cyclic_extremal_search(5, 2)
    assert r.max_sw == 7
    assert r.scanned == 5 ** 5


def test_cyclic_forms_recheck():
    report = cyclic_extremal_search(4, 2)
    assert report.max_sw <= 7  # cannot beat the overall binary n=4 maximum
    for dfa in report.extremal_forms:
        assert min_switch_count(dfa) == report.max_sw


def test_search_guards():
    with pytest.raises(SearchSpaceError):
        extremal_search(7, 2)
    with pytest.raises(SearchSpaceError):
        extremal_search(6, 2)  # needs long=True
    with pytest.raises(SearchSpaceError):
        extremal_search(10, 2, allow_huge=True)
    with pytest.raises(SearchSpaceError):
        cyclic_extremal_search(9, 2)  # needs long=True
    with pytest.raises(SearchSpaceError):
        cyclic_extremal_search(5, 4)


def test_format_report():
    report = extremal_search(3)
    text = format_report(report)
    assert "max_sw=3" in text and "scanned=729" in text
    assert text.count("# extremal form") == report.form_count()


def test_progress_lines():
    lines = []
    extremal_search(3, shards=4, progress=lines.append)
    assert len(lines) == 4
    assert all(line.startswith("SHARD [") and "DONE max=" in line for line in lines)
