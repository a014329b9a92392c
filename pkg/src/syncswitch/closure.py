"""Power closure and the two switch-count-preserving automaton transforms.

The power closure extends the alphabet with every distinct non-identity
functional power of a symbol; its shortest synchronizing word length equals
the minimal switch count of the original automaton.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import Dfa, symbol_letter


class AlphabetMismatchError(ValueError):
    """The transform requires a different alphabet size."""


@dataclass(frozen=True)
class ClosureMap:
    """Provenance of each closure symbol as (base symbol, exponent).

    Exponent-1 entries are exactly the original symbols, in their original
    order; added powers follow, grouped by base symbol with increasing
    exponent.
    """

    provenance: tuple[tuple[int, int], ...]

    def comment_lines(self) -> list[str]:
        """Text-format comment lines describing the added symbols."""
        lines = []
        for i, (base, exp) in enumerate(self.provenance):
            if exp > 1:
                lines.append(f"# s{i} = {symbol_letter(base)}^{exp}")
        return lines


def power_closure(dfa: Dfa) -> tuple[Dfa, ClosureMap]:
    """Extend the alphabet with all distinct non-identity powers a^e, e > 1.

    Original symbols are always kept, even when they act as the identity;
    an added power must differ from the identity and from every column
    already present.  The result is power closed: any further power of a
    closure symbol is the identity or an existing column.
    """
    n, k = dfa.n, dfa.k
    identity = tuple(range(n))
    columns = [dfa.column(s) for s in range(k)]
    provenance = [(s, 1) for s in range(k)]
    present = set(columns)
    for s in range(k):
        base = columns[s]
        seen_powers = {base}
        power = base
        exp = 1
        while True:
            power = tuple(base[q] for q in power)
            exp += 1
            if power in seen_powers:
                break  # the power sequence has cycled; all powers visited
            seen_powers.add(power)
            if power != identity and power not in present:
                columns.append(power)
                provenance.append((s, exp))
                present.add(power)
    rows = [[col[q] for col in columns] for q in range(n)]
    return Dfa(rows), ClosureMap(tuple(provenance))


def f_transform(dfa: Dfa) -> Dfa:
    """Double the states and add a fresh symbol c.

    States q keep their index; their primed copies q' sit at q + n.  Old
    symbols fix every plain state and act as the original transitions on
    primed states; c maps q to q' and fixes primed states.  For a
    synchronizing input, the minimal switch count of the result is twice
    the input's shortest synchronizing word length.
    """
    n, k = dfa.n, dfa.k
    rows = []
    for q in range(n):
        rows.append([q] * k + [q + n])
    for q in range(n):
        rows.append([dfa.rows[q][s] for s in range(k)] + [q + n])
    return Dfa(rows)


def f2_transform(dfa: Dfa) -> Dfa:
    """Binary variant of the transform, tripling the states instead.

    Requires a two-symbol input.  The fresh symbol of `f_transform` is
    simulated by the word ab through an extra layer of states: plain q go
    a -> q'' and b -> q; primed q' carry the original transitions; doubly
    primed q'' go a -> q'' and b -> q'.  Copies sit at q + n and q + 2n.
    """
    if dfa.k != 2:
        raise AlphabetMismatchError(f"f2_transform needs a binary automaton, got k={dfa.k}")
    n = dfa.n
    rows = []
    for q in range(n):
        rows.append([q + 2 * n, q])
    for q in range(n):
        rows.append([dfa.rows[q][0], dfa.rows[q][1]])
    for q in range(n):
        rows.append([q + 2 * n, q + n])
    return Dfa(rows)
