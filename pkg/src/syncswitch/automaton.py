"""Core DFA model: transition tables, words, state sets, canonical forms,
and the plain-text interchange format.

States are indexed 0..n-1 and symbols 0..k-1 (rendered 'a', 'b', ...).
State sets are plain ints used as bit vectors: bit q is set iff state q
is a member.
"""

from __future__ import annotations

import os
from enum import Enum
from itertools import permutations
from operator import index as _as_int
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_STATES = 32
MAX_STATES_ENV = "SYNCSWITCH_MAX_STATES"


def max_states() -> int:
    """State-count cap for automata; subset searches scale as 2**n.

    The default of 32 can be overridden through the SYNCSWITCH_MAX_STATES
    environment variable.
    """
    raw = os.environ.get(MAX_STATES_ENV)
    if raw is None:
        return DEFAULT_MAX_STATES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_STATES_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{MAX_STATES_ENV} must be positive, got {value}")
    return value


class DfaParseError(ValueError):
    """Base class for failures while parsing the DFA text format."""


class DfaHeaderError(DfaParseError):
    """The header line is not two positive integers."""


class DfaShapeError(DfaParseError):
    """Wrong number of rows, or wrong number of entries in a row."""


class DfaEntryError(DfaParseError):
    """A transition entry is not an integer in [0, n)."""


class WordSymbolError(ValueError):
    """A word contains a symbol index outside the automaton's alphabet."""


class IsoConvention(Enum):
    """Which relabelings count as isomorphisms for canonical forms."""

    STATES_ONLY = "states"
    STATES_AND_SYMBOLS = "states+symbols"


class Dfa:
    """Complete deterministic transition table over n states and k symbols.

    `rows[q][s]` is the successor of state q under symbol s.  Instances are
    immutable and hashable.
    """

    __slots__ = ("n", "k", "rows")

    def __init__(self, rows: Iterable[Iterable[int]]):
        tbl = tuple(tuple(_as_int(t) for t in row) for row in rows)
        if not tbl:
            raise ValueError("a DFA needs at least one state")
        n = len(tbl)
        k = len(tbl[0])
        if k < 1:
            raise ValueError("a DFA needs at least one symbol")
        cap = max_states()
        if n > cap:
            raise ValueError(
                f"{n} states exceeds the {cap}-state cap "
                f"(set {MAX_STATES_ENV} to raise it)"
            )
        for row in tbl:
            if len(row) != k:
                raise ValueError("ragged transition table")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"transition target {t} out of range [0, {n})")
        self.n = n
        self.k = k
        self.rows = tbl

    def step(self, q: int, s: int) -> int:
        return self.rows[q][s]

    def column(self, s: int) -> tuple[int, ...]:
        """The transformation of symbol s as a tuple indexed by state."""
        return tuple(row[s] for row in self.rows)

    def relabeled(self, state_map: Sequence[int], symbol_map: Sequence[int] | None = None) -> "Dfa":
        """Rename state q to state_map[q] (and symbol s to symbol_map[s])."""
        if symbol_map is None:
            symbol_map = range(self.k)
        new_rows = [[0] * self.k for _ in range(self.n)]
        for q, row in enumerate(self.rows):
            for s, t in enumerate(row):
                new_rows[state_map[q]][symbol_map[s]] = state_map[t]
        return Dfa(new_rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Dfa) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Dfa({list(map(list, self.rows))!r})"


class Word:
    """A finite sequence of symbol indices.

    Words are immutable; `switch_count` is the length after collapsing each
    maximal run of equal symbols to a single symbol.
    """

    __slots__ = ("symbols",)

    def __init__(self, symbols: Iterable[int] = ()):
        syms = tuple(_as_int(s) for s in symbols)
        for s in syms:
            if s < 0:
                raise ValueError(f"negative symbol index {s}")
        self.symbols = syms

    @classmethod
    def from_letters(cls, text: str) -> "Word":
        """Parse a plain word string; whitespace is ignored."""
        syms = []
        for ch in text:
            if ch.isspace():
                continue
            code = ord(ch) - ord("a")
            if not 0 <= code < 26:
                raise ValueError(f"invalid word letter {ch!r}")
            syms.append(code)
        return cls(syms)

    @property
    def switch_count(self) -> int:
        return switch_count(self.symbols)

    def letters(self) -> str:
        """Render as the canonical plain string over 'a'..'z'."""
        if any(s >= 26 for s in self.symbols):
            raise ValueError("cannot render words over more than 26 symbols")
        return "".join(chr(ord("a") + s) for s in self.symbols)

    def compressed(self) -> str:
        """Run-compressed display form, e.g. 'b(a^3b)^2'; display only."""
        return _compress(self.letters())

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash(self.symbols)

    def __repr__(self) -> str:
        try:
            return f"Word({self.letters()!r})"
        except ValueError:
            return f"Word({self.symbols!r})"


def switch_count(word: Iterable[int]) -> int:
    """Length of the word after collapsing consecutive equal symbols."""
    count = 0
    prev = None
    for s in word:
        if s != prev:
            count += 1
            prev = s
    return count


# ---------------------------------------------------------------------------
# State sets (int bit vectors)
# ---------------------------------------------------------------------------

def full_set(n: int) -> int:
    """The set of all n states."""
    return (1 << n) - 1


def state_set(states: Iterable[int]) -> int:
    bits = 0
    for q in states:
        bits |= 1 << q
    return bits


def set_members(bits: int) -> list[int]:
    members = []
    while bits:
        low = bits & -bits
        members.append(low.bit_length() - 1)
        bits ^= low
    return members


def set_size(bits: int) -> int:
    return bits.bit_count()


def is_singleton(bits: int) -> bool:
    return bits != 0 and bits & (bits - 1) == 0


def _check_word(dfa: Dfa, word: Iterable[int]) -> None:
    for s in word:
        if not 0 <= s < dfa.k:
            raise WordSymbolError(f"symbol index {s} out of range [0, {dfa.k})")


def apply_state(dfa: Dfa, q: int, word: Iterable[int]) -> int:
    """Fold the transition table over `word` starting at state q."""
    if not 0 <= q < dfa.n:
        raise ValueError(f"state {q} out of range [0, {dfa.n})")
    rows = dfa.rows
    k = dfa.k
    for s in word:
        if not 0 <= s < k:
            raise WordSymbolError(f"symbol index {s} out of range [0, {k})")
        q = rows[q][s]
    return q


def apply_set(dfa: Dfa, bits: int, word: Iterable[int]) -> int:
    """Elementwise image of a state set under a word."""
    if bits >> dfa.n:
        raise ValueError("state set has bits beyond the automaton's states")
    rows = dfa.rows
    k = dfa.k
    for s in word:
        if not 0 <= s < k:
            raise WordSymbolError(f"symbol index {s} out of range [0, {k})")
        new = 0
        rest = bits
        while rest:
            low = rest & -rest
            new |= 1 << rows[low.bit_length() - 1][s]
            rest ^= low
        bits = new
    return bits


def preimage(dfa: Dfa, bits: int, s: int) -> int:
    """All states mapped into `bits` by symbol s."""
    if not 0 <= s < dfa.k:
        raise WordSymbolError(f"symbol index {s} out of range [0, {dfa.k})")
    if bits >> dfa.n:
        raise ValueError("state set has bits beyond the automaton's states")
    pre = 0
    for q in range(dfa.n):
        if (bits >> dfa.rows[q][s]) & 1:
            pre |= 1 << q
    return pre


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

_CANONICAL_MAX_STATES = 9


def canonical_form(dfa: Dfa, convention: IsoConvention = IsoConvention.STATES_AND_SYMBOLS) -> Dfa:
    """Lexicographically minimal transition table over all relabelings.

    Two automata are isomorphic under the convention iff their canonical
    forms are equal.  Explicit minimization over n! (times k!) relabelings;
    only intended for the small automata that come out of extremal searches.
    """
    n, k = dfa.n, dfa.k
    if n > _CANONICAL_MAX_STATES:
        raise ValueError(f"canonical_form supports at most {_CANONICAL_MAX_STATES} states")
    if convention is IsoConvention.STATES_AND_SYMBOLS:
        symbol_orders = list(permutations(range(k)))
    else:
        symbol_orders = [tuple(range(k))]
    rows = dfa.rows
    best = None
    for order in permutations(range(n)):
        # order[p] = old state placed at new index p
        rank = [0] * n
        for p, q in enumerate(order):
            rank[q] = p
        for sym_order in symbol_orders:
            cand = tuple(
                tuple(rank[rows[order[p]][sym_order[t]]] for t in range(k))
                for p in range(n)
            )
            if best is None or cand < best:
                best = cand
    return Dfa(best)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def serialize_dfa(dfa: Dfa) -> str:
    """Bit-exact text format: header 'n k', then one row of k targets per state."""
    lines = [f"{dfa.n} {dfa.k}"]
    for row in dfa.rows:
        lines.append(" ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    """Parse the text format; '#' starts a comment, blank lines are skipped."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise DfaHeaderError("empty input")
    header = lines[0].split()
    if len(header) != 2:
        raise DfaHeaderError(f"header must be 'n k', got {lines[0]!r}")
    try:
        n, k = int(header[0]), int(header[1])
    except ValueError:
        raise DfaHeaderError(f"header must be 'n k', got {lines[0]!r}") from None
    if n < 1 or k < 1:
        raise DfaHeaderError(f"n and k must be positive, got {n} {k}")
    body = lines[1:]
    if len(body) != n:
        raise DfaShapeError(f"expected {n} rows, got {len(body)}")
    rows = []
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != k:
            raise DfaShapeError(f"row {i}: expected {k} entries, got {len(tokens)}")
        row = []
        for tok in tokens:
            try:
                t = int(tok)
            except ValueError:
                raise DfaEntryError(f"row {i}: entry {tok!r} is not an integer") from None
            if not 0 <= t < n:
                raise DfaEntryError(f"row {i}: entry {t} out of range [0, {n})")
            row.append(t)
        rows.append(row)
    return Dfa(rows)


def symbol_letter(s: int) -> str:
    if not 0 <= s < 26:
        raise ValueError("only symbols 0..25 have letter names")
    return chr(ord("a") + s)


# ---------------------------------------------------------------------------
# Display compression for words
# ---------------------------------------------------------------------------

def _smallest_period(s: str) -> int:
    for p in range(1, len(s) // 2 + 1):
        if len(s) % p == 0 and s == s[:p] * (len(s) // p):
            return p
    return len(s)


def _compress(text: str, _memo: dict | None = None) -> str:
    """Shortest rendering of `text` as literals and exponent groups."""
    if _memo is None:
        _memo = {}
    if text in _memo:
        return _memo[text]
    L = len(text)
    # best[i] = shortest rendering of text[:i]
    best: list[str] = [""] * (L + 1)
    for i in range(1, L + 1):
        cand = best[i - 1] + text[i - 1]
        for j in range(0, i - 1):
            block = text[j:i]
            p = _smallest_period(block)
            if p < len(block):
                base = _compress(block[:p], _memo)
                rep = len(block) // p
                if len(base) == 1:
                    piece = f"{base}^{rep}"
                else:
                    piece = f"({base})^{rep}"
                if len(best[j]) + len(piece) <= len(cand):
                    cand = best[j] + piece
        best[i] = cand
    _memo[text] = best[L]
    return best[L]
