"""Search engines over the power automaton: synchronization test, shortest
length, minimal switch count, composite (switch, length) optimization, and
optimal-word counting.

Switch counting is realized as a 0/1-weighted graph on (state set, last
symbol) nodes: the edge labeled s out of (V, t) leads to (Vs, s) and costs
0 if s == t, else 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from heapq import heappop, heappush

from .automaton import Dfa, Word, full_set, switch_count


class NotSynchronizingError(Exception):
    """The automaton admits no synchronizing word."""


class Objective(Enum):
    LENGTH = "length"
    SWITCH = "switch"
    SWITCH_THEN_LENGTH = "switch-then-length"


@dataclass(frozen=True)
class SyncResult:
    """An optimal synchronizing word with its length and switch count."""

    word: Word
    length: int
    switch: int
    witness_count: int | None = None


# Subset tables hold 2**n entries per symbol; beyond this the search is
# hopeless anyway and the allocation alone would be harmful.
_MAX_SEARCH_STATES = 24


def _set_image_tables(dfa: Dfa) -> list[list[int]]:
    """img[s][V] = image of subset V under symbol s, for every subset."""
    n, k = dfa.n, dfa.k
    if n > _MAX_SEARCH_STATES:
        raise ValueError(
            f"subset search over {n} states needs 2**{n} nodes; refusing"
        )
    size = 1 << n
    tables = []
    for s in range(k):
        bit = [1 << dfa.rows[q][s] for q in range(n)]
        img = [0] * size
        for v in range(1, size):
            low = v & (v - 1)
            img[v] = img[low] | bit[(v ^ low).bit_length() - 1]
        tables.append(img)
    return tables


def is_synchronizing(dfa: Dfa) -> bool:
    """Pair criterion: synchronizing iff every state pair can be merged.

    Backward reachability from the one-step-mergeable pairs; O(n^2 k).
    """
    n, k = dfa.n, dfa.k
    if n == 1:
        return True
    rows = dfa.rows
    mergeable = [False] * (n * n)
    rev: list[list[int]] = [[] for _ in range(n * n)]
    queue: deque[int] = deque()
    npairs = 0
    for p in range(n):
        for q in range(p + 1, n):
            npairs += 1
            pid = p * n + q
            for s in range(k):
                a, b = rows[p][s], rows[q][s]
                if a == b:
                    if not mergeable[pid]:
                        mergeable[pid] = True
                        queue.append(pid)
                else:
                    if a > b:
                        a, b = b, a
                    rev[a * n + b].append(pid)
    seen = sum(mergeable)
    while queue:
        x = queue.popleft()
        for y in rev[x]:
            if not mergeable[y]:
                mergeable[y] = True
                seen += 1
                queue.append(y)
    return seen == npairs


def shortest_sync_length(dfa: Dfa) -> int:
    """Breadth-first distance from the full set to any singleton."""
    if dfa.n == 1:
        return 0
    img = _set_image_tables(dfa)
    k = dfa.k
    full = full_set(dfa.n)
    dist = [-1] * (full + 1)
    dist[full] = 0
    queue = deque([full])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for s in range(k):
            w = img[s][v]
            if dist[w] < 0:
                if w & (w - 1) == 0:
                    return d
                dist[w] = d
                queue.append(w)
    raise NotSynchronizingError("no singleton reachable from the full state set")


def min_switch_count(dfa: Dfa) -> int:
    """Minimal switch count of a synchronizing word.

    0/1 BFS with a deque over (subset, last symbol) nodes; equals the
    shortest synchronizing word length of the power closure.
    """
    n, k = dfa.n, dfa.k
    if n == 1:
        return 0
    img = _set_image_tables(dfa)
    width = k + 1
    size = (1 << n) * width
    start = full_set(n) * width  # last-symbol slot 0 means "none yet"
    dist = [-1] * size
    dist[start] = 0
    dq: deque[tuple[int, int]] = deque([(0, start)])
    while dq:
        d, node = dq.popleft()
        if d != dist[node]:
            continue
        v, last = divmod(node, width)
        if v & (v - 1) == 0:
            return d
        for s in range(k):
            nd = d if last == s + 1 else d + 1
            t = img[s][v] * width + s + 1
            if dist[t] < 0 or nd < dist[t]:
                dist[t] = nd
                if nd == d:
                    dq.appendleft((nd, t))
                else:
                    dq.append((nd, t))
    raise NotSynchronizingError("no singleton reachable from the full state set")


# ---------------------------------------------------------------------------
# Optimal words and counting
#
# For each objective we compute D[node] = optimal cost vector from `node` to
# any singleton (backward Dijkstra / BFS).  Costs are additive vectors ordered
# lexicographically, so an edge is on some optimal path iff it is "tight":
# cost(edge) + D[target] == D[source].  The lexicographically smallest optimal
# word falls out of a greedy forward walk over tight edges, and the number of
# optimal words out of a tight-edge DP.
# ---------------------------------------------------------------------------


def _length_distances(dfa: Dfa, img: list[list[int]]) -> list[int]:
    """D[V] = shortest word length taking subset V to a singleton."""
    n, k = dfa.n, dfa.k
    size = 1 << n
    radj: list[list[int]] = [[] for _ in range(size)]
    for v in range(1, size):
        for s in range(k):
            radj[img[s][v]].append(v)
    dist = [-1] * size
    queue: deque[int] = deque()
    for q in range(n):
        dist[1 << q] = 0
        queue.append(1 << q)
    while queue:
        w = queue.popleft()
        d = dist[w] + 1
        for v in radj[w]:
            if dist[v] < 0:
                dist[v] = d
                queue.append(v)
    return dist


def _swlen_distances(dfa: Dfa, img: list[list[int]]) -> list[tuple[int, int] | None]:
    """D[node] = lexicographically minimal (switch, length) cost to a singleton.

    Nodes are (subset, last) encoded as V * (k + 1) + last, with last = 0 for
    "no symbol applied yet" and last = s + 1 after symbol s.
    """
    n, k = dfa.n, dfa.k
    size = 1 << n
    width = k + 1
    radj: list[list[tuple[int, int]]] = [[] for _ in range(size * width)]
    for v in range(1, size):
        base = v * width
        for last in range(width):
            src = base + last
            for s in range(k):
                tgt = img[s][v] * width + s + 1
                radj[tgt].append((src, 0 if last == s + 1 else 1))
    dist: list[tuple[int, int] | None] = [None] * (size * width)
    heap: list[tuple[tuple[int, int], int]] = []
    for q in range(n):
        for last in range(width):
            node = (1 << q) * width + last
            dist[node] = (0, 0)
            heap.append(((0, 0), node))
    while heap:
        d, node = heappop(heap)
        if dist[node] != d:
            continue
        for src, wsw in radj[node]:
            nd = (d[0] + wsw, d[1] + 1)
            if dist[src] is None or nd < dist[src]:
                dist[src] = nd
                heappush(heap, (nd, src))
    return dist


def _greedy_length_word(dfa: Dfa, img: list[list[int]], dist: list[int]) -> Word:
    v = full_set(dfa.n)
    word = []
    while v & (v - 1):
        d = dist[v]
        for s in range(dfa.k):
            w = img[s][v]
            if dist[w] == d - 1:
                word.append(s)
                v = w
                break
        else:  # pragma: no cover - dist is consistent by construction
            raise AssertionError("no tight edge found")
    return Word(word)


def _greedy_swlen_word(dfa: Dfa, img: list[list[int]], dist) -> Word:
    k = dfa.k
    width = k + 1
    node = full_set(dfa.n) * width
    word = []
    while True:
        v, last = divmod(node, width)
        if v & (v - 1) == 0:
            return Word(word)
        d = dist[node]
        for s in range(k):
            tgt = img[s][v] * width + s + 1
            dt = dist[tgt]
            if dt is None:
                continue
            cost = 0 if last == s + 1 else 1
            if (dt[0] + cost, dt[1] + 1) == d:
                word.append(s)
                node = tgt
                break
        else:  # pragma: no cover
            raise AssertionError("no tight edge found")


def optimal_sync_word(dfa: Dfa, objective: Objective = Objective.SWITCH_THEN_LENGTH) -> SyncResult:
    """An optimal synchronizing word under the objective.

    LENGTH gives a shortest word; SWITCH a word of minimal switch count;
    SWITCH_THEN_LENGTH additionally the shortest among those.  Ties are
    broken toward the lexicographically smallest word.  For SWITCH the word
    returned is the SWITCH_THEN_LENGTH optimum (pure minimal-switch words
    can be padded arbitrarily, so no lexicographic minimum exists).
    """
    if dfa.n == 1:
        return SyncResult(Word(), 0, 0)
    img = _set_image_tables(dfa)
    if objective is Objective.LENGTH:
        dist = _length_distances(dfa, img)
        if dist[full_set(dfa.n)] < 0:
            raise NotSynchronizingError("no singleton reachable from the full state set")
        word = _greedy_length_word(dfa, img, dist)
    else:
        dist = _swlen_distances(dfa, img)
        if dist[full_set(dfa.n) * (dfa.k + 1)] is None:
            raise NotSynchronizingError("no singleton reachable from the full state set")
        word = _greedy_swlen_word(dfa, img, dist)
    return SyncResult(word, len(word), switch_count(word))


def count_optimal_words(dfa: Dfa, objective: Objective = Objective.LENGTH) -> int:
    """Number of distinct words attaining the objective's optimum.

    Counting is only meaningful for LENGTH and SWITCH_THEN_LENGTH; a word of
    minimal switch count can repeat symbols arbitrarily, so that set is
    infinite and the SWITCH objective is rejected.
    """
    if objective is Objective.SWITCH:
        raise ValueError(
            "count is infinite for the pure switch objective; use SWITCH_THEN_LENGTH"
        )
    if dfa.n == 1:
        return 1
    img = _set_image_tables(dfa)
    n, k = dfa.n, dfa.k
    if objective is Objective.LENGTH:
        dist = _length_distances(dfa, img)
        full = full_set(n)
        if dist[full] < 0:
            raise NotSynchronizingError("no singleton reachable from the full state set")
        order = sorted(
            (v for v in range(1, full + 1) if dist[v] >= 0), key=lambda v: dist[v]
        )
        ways = [0] * (full + 1)
        for v in order:
            if v & (v - 1) == 0:
                ways[v] = 1
                continue
            total = 0
            d = dist[v]
            for s in range(k):
                w = img[s][v]
                if dist[w] == d - 1:
                    total += ways[w]
            ways[v] = total
        return ways[full]

    dist = _swlen_distances(dfa, img)
    width = k + 1
    start = full_set(n) * width
    if dist[start] is None:
        raise NotSynchronizingError("no singleton reachable from the full state set")
    nodes = [node for node, d in enumerate(dist) if d is not None]
    nodes.sort(key=lambda node: dist[node])
    ways = [0] * len(dist)
    for node in nodes:
        v, last = divmod(node, width)
        if v & (v - 1) == 0:
            ways[node] = 1
            continue
        d = dist[node]
        total = 0
        for s in range(k):
            tgt = img[s][v] * width + s + 1
            dt = dist[tgt]
            if dt is None:
                continue
            cost = 0 if last == s + 1 else 1
            if (dt[0] + cost, dt[1] + 1) == d:
                total += ways[tgt]
        ways[node] = total
    return ways[start]


def optimal_words(dfa: Dfa, objective: Objective = Objective.LENGTH, limit: int | None = None) -> list[Word]:
    """All optimal words under the objective, in lexicographic order.

    `limit` caps the number of words returned; the full set can be large.
    """
    if objective is Objective.SWITCH:
        raise ValueError("the set of minimal-switch words is infinite; use SWITCH_THEN_LENGTH")
    if dfa.n == 1:
        return [Word()]
    img = _set_image_tables(dfa)
    n, k = dfa.n, dfa.k
    out: list[Word] = []

    if objective is Objective.LENGTH:
        dist = _length_distances(dfa, img)
        full = full_set(n)
        if dist[full] < 0:
            raise NotSynchronizingError("no singleton reachable from the full state set")
        stack: list[tuple[int, list[int]]] = [(full, [])]
        while stack:
            v, prefix = stack.pop()
            if v & (v - 1) == 0:
                out.append(Word(prefix))
                if limit is not None and len(out) >= limit:
                    return out
                continue
            d = dist[v]
            for s in reversed(range(k)):
                w = img[s][v]
                if dist[w] == d - 1:
                    stack.append((w, prefix + [s]))
        return out

    dist = _swlen_distances(dfa, img)
    width = k + 1
    start = full_set(n) * width
    if dist[start] is None:
        raise NotSynchronizingError("no singleton reachable from the full state set")
    stack2: list[tuple[int, list[int]]] = [(start, [])]
    while stack2:
        node, prefix = stack2.pop()
        v, last = divmod(node, width)
        if v & (v - 1) == 0:
            out.append(Word(prefix))
            if limit is not None and len(out) >= limit:
                return out
            continue
        d = dist[node]
        for s in reversed(range(k)):
            tgt = img[s][v] * width + s + 1
            dt = dist[tgt]
            if dt is None:
                continue
            cost = 0 if last == s + 1 else 1
            if (dt[0] + cost, dt[1] + 1) == d:
                stack2.append((tgt, prefix + [s]))
    return out
