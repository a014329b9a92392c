import random

import pytest

from syncswitch.analysis import (
    canonical_word,
    distance,
    distance_context,
    measure,
    min_sc_pair_increase,
    pair_increase_bound,
    verify_lemmas,
)
from syncswitch.automaton import apply_set, full_set, is_singleton, set_members, state_set
from syncswitch.families import a_family, negate_index, signed_to_index
from syncswitch.synchro import min_switch_count


@pytest.fixture(scope="module")
def ctx6():
    return distance_context(6)


def test_distance_examples(ctx6):
    n = 6
    for q in (2, 4, 6, -1, -3, -5):
        assert distance(ctx6, q, q) == 4
    assert distance(ctx6, 6, -1) == 1
    assert distance(ctx6, -1, 6) == 3


def test_distance_antisymmetry(ctx6):
    members = [2, 4, 6, -1, -3, -5]
    for p in members:
        for q in members:
            if ctx6.proj[signed_to_index(p, 6)] == ctx6.proj[signed_to_index(q, 6)]:
                continue
            assert distance(ctx6, p, q) + distance(ctx6, q, p) == 4
            assert 0 < distance(ctx6, p, q) < 4


def test_distance_negative_class(ctx6):
    # d(p, q) = d(-q, -p) for arguments in -S
    assert distance(ctx6, -2, -6) == distance(ctx6, 6, 2)


def test_distance_mixed_class_rejected(ctx6):
    with pytest.raises(ValueError):
        distance(ctx6, 2, -2)


def test_measure_examples(ctx6):
    assert measure(ctx6, ctx6.s_bits) == 1
    assert measure(ctx6, 1 << signed_to_index(2, 6)) == 4
    pair = state_set([signed_to_index(-1, 6), signed_to_index(6, 6)])
    assert measure(ctx6, pair) == 3


def test_measure_negation_invariance(ctx6):
    rng = random.Random(2)
    members = set_members(ctx6.s_bits)
    for _ in range(40):
        sample = rng.sample(members, rng.randint(1, len(members)))
        bits = state_set(sample)
        neg = state_set(negate_index(i, 6) for i in sample)
        assert measure(ctx6, bits) == measure(ctx6, neg)


def test_measure_errors(ctx6):
    with pytest.raises(ValueError):
        measure(ctx6, 0)
    mixed = (1 << signed_to_index(2, 6)) | (1 << signed_to_index(1, 6))
    with pytest.raises(ValueError):
        measure(ctx6, mixed)


def test_pair_increase_frozen_values(ctx6):
    assert min_sc_pair_increase(ctx6, 2) == 7
    assert min_sc_pair_increase(ctx6, 3) == 7
    ctx12 = distance_context(12)
    assert min_sc_pair_increase(ctx12, 4) == 15


def test_pair_increase_closed_form(ctx6):
    for k in range(2, 4):
        assert min_sc_pair_increase(ctx6, k) == pair_increase_bound(6, k)
    with pytest.raises(ValueError):
        min_sc_pair_increase(ctx6, 1)
    with pytest.raises(ValueError):
        min_sc_pair_increase(ctx6, 4)


def test_canonical_word_6():
    w = canonical_word(6)
    assert w.letters().startswith("bab")
    assert w.switch_count == 15
    a6 = a_family(6)
    assert is_singleton(apply_set(a6, full_set(6), w))
    assert min_switch_count(a6) == 15


def test_canonical_word_12():
    assert canonical_word(12).switch_count == 79


def test_canonical_word_preconditions():
    for bad in (4, 7, 9):
        with pytest.raises(ValueError):
            canonical_word(bad)
    with pytest.raises(ValueError):
        distance_context(9)


def test_verify_lemmas_passes():
    report = verify_lemmas(6, samples=1500, seed=0)
    assert report.all_pass, report.to_text()
    assert {c.lemma for c in report.checks} == {"L1", "L2", "L3", "L6", "L7", "L-setpair"}


def test_report_text_format():
    report = verify_lemmas(6, samples=300, seed=1)
    lines = report.to_text().strip().splitlines()
    assert len(lines) == 6
    for line in lines:
        parts = line.split()
        assert parts[0] == "LEMMA" and parts[2] in ("PASS", "FAIL")


def test_setpair_statement_needs_cycle_scope(ctx6):
    """The set-pair statement fails on general subsets of S.

    A = {4, -1, -5} with w = aabbabbabbb has mu(A) = mu(Aw) = 2, but no pair
    at distance <= 2 maps to a pair at distance 2: the member -5 is
    projection-equivalent to the top state 6, so its distance to 4 jumps
    through the exceptional case.  Restricted to subsets of the cycle this
    cannot happen, which is the scope `verify_lemmas` checks.
    """
    n = 6
    dfa = ctx6.dfa
    bits = state_set(signed_to_index(q, n) for q in (4, -1, -5))
    word = [0, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1]
    image_of = {
        p: apply_set(dfa, 1 << p, word).bit_length() - 1 for p in set_members(bits)
    }
    mu_a = measure(ctx6, bits)
    mu_w = measure(ctx6, apply_set(dfa, bits, word))
    assert mu_a == mu_w == 2
    witnesses = [
        (p, q)
        for p in image_of
        for q in image_of
        if ctx6.distance_by_index(p, q) <= mu_a
        and ctx6.distance_by_index(image_of[p], image_of[q]) == mu_w
    ]
    assert witnesses == []
