import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncswitch.automaton import (
    Dfa,
    DfaEntryError,
    DfaHeaderError,
    DfaShapeError,
    IsoConvention,
    Word,
    apply_set,
    apply_state,
    canonical_form,
    full_set,
    is_singleton,
    parse_dfa,
    preimage,
    serialize_dfa,
    set_members,
    state_set,
    switch_count,
)
from syncswitch.families import cerny


# ---------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------

@st.composite
def dfas(draw, max_n=6, max_k=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    rows = [[draw(st.integers(0, n - 1)) for _ in range(k)] for _ in range(n)]
    return Dfa(rows)


def words(max_k=3, max_len=12):
    return st.lists(st.integers(0, max_k - 1), max_size=max_len)


# ---------------------------------------------------------------------
# switch_count
# ---------------------------------------------------------------------

def test_switch_count_examples():
    assert switch_count([]) == 0
    assert Word.from_letters("aaab").switch_count == 2
    assert Word.from_letters("b aaa b aaa b").switch_count == 5


def test_switch_count_recursion():
    # sw(aaw) = sw(aw) and sw(abw) = 1 + sw(bw) for a != b
    assert switch_count([0, 0, 1, 0]) == switch_count([0, 1, 0])
    assert switch_count([0, 1, 1, 0]) == 1 + switch_count([1, 1, 0])
    assert switch_count([0]) == 1


@given(words(), words())
def test_switch_count_concatenation(u, v):
    joined = switch_count(u + v)
    apart = switch_count(u) + switch_count(v)
    if u and v and u[-1] == v[0]:
        assert joined == apart - 1
    else:
        assert joined == apart


@given(words())
def test_switch_count_bounds(w):
    sw = switch_count(w)
    assert sw <= len(w)
    assert (sw == 0) == (len(w) == 0)


# ---------------------------------------------------------------------
# apply / preimage
# ---------------------------------------------------------------------

def test_apply_state_cerny():
    c4 = cerny(4)
    assert apply_state(c4, 0, Word()) == 0
    assert apply_state(c4, 0, Word.from_letters("a")) == 1
    word = Word.from_letters("baaabaaab")
    targets = {apply_state(c4, q, word) for q in range(4)}
    assert targets == {1}


def test_apply_state_rejects_bad_symbol():
    from syncswitch.automaton import WordSymbolError

    with pytest.raises(WordSymbolError):
        apply_state(cerny(4), 0, [2])


def test_apply_set_cerny():
    c4 = cerny(4)
    assert set_members(apply_set(c4, full_set(4), [1])) == [1, 2, 3]
    assert apply_set(c4, 0, Word.from_letters("abab")) == 0
    assert is_singleton(apply_set(c4, full_set(4), Word.from_letters("baaabaaab")))


@given(dfas(), st.data())
def test_apply_set_union_distribution(dfa, data):
    w = data.draw(st.lists(st.integers(0, dfa.k - 1), max_size=8))
    v = data.draw(st.integers(0, full_set(dfa.n)))
    u = data.draw(st.integers(0, full_set(dfa.n)))
    assert apply_set(dfa, v | u, w) == apply_set(dfa, v, w) | apply_set(dfa, u, w)


@given(dfas(), st.data())
def test_apply_set_cardinality_monotone(dfa, data):
    w = data.draw(st.lists(st.integers(0, dfa.k - 1), min_size=1, max_size=8))
    v = data.draw(st.integers(0, full_set(dfa.n)))
    sizes = [v.bit_count()]
    cur = v
    for s in w:
        cur = apply_set(dfa, cur, [s])
        sizes.append(cur.bit_count())
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))


def test_preimage():
    c4 = cerny(4)
    assert preimage(c4, full_set(4), 0) == full_set(4)
    assert set_members(preimage(c4, state_set([1]), 1)) == [0, 1]
    assert preimage(c4, 0, 0) == 0


@given(dfas(), st.data())
def test_preimage_section(dfa, data):
    s = data.draw(st.integers(0, dfa.k - 1))
    v = data.draw(st.integers(0, full_set(dfa.n)))
    pre = preimage(dfa, v, s)
    assert apply_set(dfa, pre, [s]) & ~v == 0


# ---------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------

def test_canonical_idempotent():
    c4 = cerny(4)
    for conv in IsoConvention:
        once = canonical_form(c4, conv)
        assert canonical_form(once, conv) == once


@given(dfas(max_n=5), st.data())
@settings(max_examples=40)
def test_canonical_invariant_under_relabeling(dfa, data):
    perm = data.draw(st.permutations(list(range(dfa.n))))
    relabeled = dfa.relabeled(perm)
    for conv in IsoConvention:
        assert canonical_form(dfa, conv) == canonical_form(relabeled, conv)
    sym_perm = data.draw(st.permutations(list(range(dfa.k))))
    both = dfa.relabeled(perm, sym_perm)
    assert canonical_form(dfa) == canonical_form(both)


def test_canonical_symbol_swap():
    c4 = cerny(4)
    swapped = Dfa([[row[1], row[0]] for row in c4.rows])
    assert canonical_form(c4) == canonical_form(swapped)
    assert (canonical_form(c4, IsoConvention.STATES_ONLY)
            != canonical_form(swapped, IsoConvention.STATES_ONLY))


def test_canonical_guard():
    with pytest.raises(ValueError):
        canonical_form(Dfa([[0] * 2] * 10))


# ---------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------

def test_serialize_header():
    assert serialize_dfa(cerny(4)).startswith("4 2\n")


def test_parse_comments_and_whitespace():
    text = "# a comment\n3 2  # inline\n\n1 1\n2 1  \n0 2\n"
    dfa = parse_dfa(text)
    assert dfa.rows == ((1, 1), (2, 1), (0, 2))


def test_parse_no_trailing_newline():
    assert parse_dfa("1 1\n0") == Dfa([[0]])


@given(dfas())
def test_round_trip(dfa):
    assert parse_dfa(serialize_dfa(dfa)) == dfa


def test_parse_errors_are_distinct():
    with pytest.raises(DfaHeaderError):
        parse_dfa("")
    with pytest.raises(DfaHeaderError):
        parse_dfa("x 2\n")
    with pytest.raises(DfaHeaderError):
        parse_dfa("2\n0 0\n1 1\n")
    with pytest.raises(DfaShapeError):
        parse_dfa("2 2\n0 0\n")
    with pytest.raises(DfaShapeError):
        parse_dfa("2 2\n0 0 1\n1 1\n")
    with pytest.raises(DfaEntryError):
        parse_dfa("2 2\n0 2\n1 1\n")
    with pytest.raises(DfaEntryError):
        parse_dfa("2 2\n0 zero\n1 1\n")


def test_state_cap(monkeypatch):
    with pytest.raises(ValueError):
        Dfa([[q] for q in range(33)])
    monkeypatch.setenv("SYNCSWITCH_MAX_STATES", "40")
    assert Dfa([[q] for q in range(33)]).n == 33
    monkeypatch.setenv("SYNCSWITCH_MAX_STATES", "junk")
    with pytest.raises(ValueError):
        Dfa([[0]])


# ---------------------------------------------------------------------
# words
# ---------------------------------------------------------------------

def test_word_letters_round_trip():
    w = Word.from_letters("ababbaba")
    assert w.letters() == "ababbaba"
    assert len(w) == 8
    assert w.switch_count == 7


def test_word_compressed_display():
    w = Word.from_letters("baaabaaab")
    comp = w.compressed()
    assert _expand(comp) == "baaabaaab"
    assert len(comp) <= len("baaabaaab")


def test_word_compressed_grouping():
    assert _expand(Word.from_letters("ababab").compressed()) == "ababab"
    assert Word.from_letters("aaa").compressed() == "a^3"


def _expand(display: str) -> str:
    """Tiny reference expander for the compressed display form."""
    out, i = [], 0
    while i < len(display):
        ch = display[i]
        if ch == "(":
            depth, j = 1, i + 1
            while depth:
                depth += {"(": 1, ")": -1}.get(display[j], 0)
                j += 1
            block = _expand(display[i + 1:j - 1])
            i = j
        else:
            block = ch
            i += 1
        if i < len(display) and display[i] == "^":
            j = i + 1
            while j < len(display) and display[j].isdigit():
                j += 1
            block *= int(display[i + 1:j])
            i = j
        out.append(block)
    return "".join(out)
