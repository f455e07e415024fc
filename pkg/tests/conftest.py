"""Independent oracles and random generators shared by the test modules.

Nothing here calls into the library's algorithms except to build Automaton
values; every oracle recomputes its answer from the raw transition table.
"""

import random
from collections import deque

import pytest

from csfa.automata import Automaton


def residual_state_count(aut, max_len=None):
    """Count distinct residual languages of accessible states.

    The residual of a state is encoded as a bitstring over all words of
    length <= max_len (default 2n), built bottom-up as Python integers.
    """
    n, k = aut.n, len(aut.alphabet)
    max_len = 2 * n if max_len is None else max_len
    # sig[q] for words of length <= L: [q final] followed by each letter's block
    sig = [int(q in aut.finals) for q in range(n)]
    width = 1
    for _ in range(max_len):
        new = []
        for q in range(n):
            v = int(q in aut.finals)
            for row in aut.delta:
                v = (v << width) | sig[row[q]]
            new.append(v)
        sig, width = new, 1 + k * width
    seen = {aut.initial}
    queue = deque([aut.initial])
    while queue:
        q = queue.popleft()
        for row in aut.delta:
            if row[q] not in seen:
                seen.add(row[q])
                queue.append(row[q])
    return len({sig[q] for q in seen})


def naive_closure(aut):
    """Level-wise fixed point of letter functions, left-multiplying."""
    n = aut.n
    gens = [tuple(r) for r in aut.delta]
    level = {tuple(range(n))}
    found = set(level)
    while level:
        nxt = set()
        for x in level:
            for g in gens:
                y = tuple(x[g[q]] for q in range(n))  # g applied first, then x
                if y not in found:
                    nxt.add(y)
        found |= nxt
        level = nxt
    return found


def reachability_matrix(aut, exclude=None):
    """Transitive closure by Floyd–Warshall; paths have length >= 1."""
    n = aut.n
    keep = [q for q in range(n) if q != exclude]
    r = [[False] * n for _ in range(n)]
    for row in aut.delta:
        for q, p in enumerate(row):
            if q in keep and p in keep:
                r[q][p] = True
    for m in keep:
        for i in keep:
            if r[i][m]:
                for j in keep:
                    if r[m][j]:
                        r[i][j] = True
    return r


def distinguishable_pairs(aut):
    """Classic table-filling over all pairs of states."""
    n = aut.n
    dist = {(p, q): (p in aut.finals) != (q in aut.finals)
            for p in range(n) for q in range(n)}
    changed = True
    while changed:
        changed = False
        for (p, q), d in dist.items():
            if not d and any(dist[(row[p], row[q])] for row in aut.delta):
                dist[(p, q)] = True
                changed = True
    return dist


def same_language(x, y):
    """Product-automaton search for a distinguishing word."""
    start = (x.initial, y.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in x.finals) != (q in y.finals):
            return False
        for rx, ry in zip(x.delta, y.delta):
            nxt = (rx[p], ry[q])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def random_dfa(rng, max_states=6, letters=("a", "b")):
    n = rng.randint(1, max_states)
    rows = [[rng.randrange(n) for _ in range(n)] for _ in letters]
    finals = {q for q in range(n) if rng.random() < 0.4}
    return Automaton(n, letters, rows, rng.randrange(n), finals)


def random_csfa(rng, max_states=5, max_letters=3):
    """A random CSFA with states shuffled.

    In normalized form the non-cycle letters may send ``q >= 1`` only to 0 or
    to a later state, which is exactly what keeps cycles through state 0.
    """
    n = rng.randint(1, max_states)
    k = rng.randint(2, max_letters) if n > 1 else rng.randint(1, max_letters)
    rows = [[(q + 1) % n for q in range(n)]]
    for _ in range(k - 1):
        row = [rng.randrange(n)]
        for q in range(1, n):
            row.append(rng.choice([0] + list(range(q + 1, n))))
        rows.append(row)
    letters = tuple("abc"[:k])
    norm = Automaton(n, letters, rows, 0, {0})
    perm = list(range(n))
    rng.shuffle(perm)
    return norm.relabel(perm), norm


@pytest.fixture
def rng():
    return random.Random(20240501)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
