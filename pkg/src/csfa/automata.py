"""Complete deterministic automata and their structural predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from csfa.transformations import Transformation, is_circular_permutation


class AutomatonError(ValueError):
    """Raised for malformed automaton data."""


@dataclass(frozen=True)
class Automaton:
    """A complete DFA on states ``0..n-1``.

    ``delta[k][q]`` is the state reached from ``q`` on ``alphabet[k]``.
    """

    n: int
    alphabet: tuple
    delta: tuple
    initial: int = 0
    finals: frozenset = field(default_factory=lambda: frozenset({0}))

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(Transformation(r) for r in self.delta))
        object.__setattr__(self, "finals", frozenset(self.finals))
        if not isinstance(self.n, int) or self.n < 1:
            raise AutomatonError(f"state count must be a positive integer, got {self.n!r}")
        if not self.alphabet:
            raise AutomatonError("alphabet is empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            dup = next(x for x in self.alphabet if self.alphabet.count(x) > 1)
            raise AutomatonError(f"duplicate letter {dup!r}")
        if len(self.delta) != len(self.alphabet):
            raise AutomatonError(
                f"missing row: {len(self.alphabet)} letters but {len(self.delta)} rows")
        for name, row in zip(self.alphabet, self.delta):
            if len(row) != self.n:
                raise AutomatonError(
                    f"row {name!r} has {len(row)} entries, expected {self.n}")
            for q, p in enumerate(row):
                if not 0 <= p < self.n:
                    raise AutomatonError(
                        f"state out of range: {name!r} sends {q} to {p} (n={self.n})")
        if not 0 <= self.initial < self.n:
            raise AutomatonError(f"state out of range: initial state {self.initial}")
        bad = [q for q in self.finals if not 0 <= q < self.n]
        if bad:
            raise AutomatonError(f"state out of range: final state {bad[0]}")

    @property
    def states(self) -> range:
        return range(self.n)

    def row(self, letter) -> Transformation:
        """The transformation induced by a letter (given by name)."""
        return self.delta[self.alphabet.index(letter)]

    def step(self, q: int, letter_index: int) -> int:
        return self.delta[letter_index][q]

    def accepts(self, word: Iterable[int]) -> bool:
        q = self.initial
        for k in word:
            q = self.delta[k][q]
        return q in self.finals

    def word_str(self, word: Sequence[int], sep: str = "") -> str:
        if not word:
            return "ε"
        return sep.join(str(self.alphabet[k]) for k in word)

    def relabel(self, perm: Sequence[int]) -> "Automaton":
        """Rename state ``q`` to ``perm[q]``."""
        inv = [0] * self.n
        for q, p in enumerate(perm):
            inv[p] = q
        delta = [[perm[row[inv[p]]] for p in range(self.n)] for row in self.delta]
        return Automaton(self.n, self.alphabet, delta, perm[self.initial],
                         frozenset(perm[q] for q in self.finals))


def validate(raw: Mapping) -> Automaton:
    """Build an Automaton from a parsed table.

    ``raw`` has keys ``states``, ``alphabet``, ``initial``, ``final`` and
    ``rows`` (letter name -> list of target states).
    """
    try:
        n = raw["states"]
        alphabet = list(raw["alphabet"])
        initial = raw["initial"]
        finals = list(raw["final"])
        rows = raw["rows"]
    except KeyError as exc:
        raise AutomatonError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise AutomatonError(f"state count must be a positive integer, got {n!r}")
    seen = set()
    for name in alphabet:
        if name in seen:
            raise AutomatonError(f"duplicate letter {name!r}")
        seen.add(name)
    extra = set(rows) - seen
    if extra:
        raise AutomatonError(f"row for unknown letter {sorted(extra)[0]!r}")
    delta = []
    for name in alphabet:
        if name not in rows:
            raise AutomatonError(f"missing row for letter {name!r}")
        row = list(rows[name])
        if not all(isinstance(p, int) and not isinstance(p, bool) for p in row):
            raise AutomatonError(f"row {name!r} has a non-integer entry")
        delta.append(row)
    for q in [initial, *finals]:
        if not isinstance(q, int) or isinstance(q, bool):
            raise AutomatonError(f"state index {q!r} is not an integer")
    return Automaton(n, tuple(alphabet), delta, initial, frozenset(finals))


# -- reachability ------------------------------------------------------------

def _successors(aut: Automaton) -> list[set[int]]:
    return [{row[q] for row in aut.delta} for q in aut.states]


def accessible_states(aut: Automaton) -> list[int]:
    """States reachable from the initial state, in breadth-first order."""
    seen = {aut.initial}
    order = [aut.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for row in aut.delta:
            p = row[q]
            if p not in seen:
                seen.add(p)
                order.append(p)
                queue.append(p)
    return order


def coaccessible_states(aut: Automaton) -> set[int]:
    preds: list[set[int]] = [set() for _ in aut.states]
    for row in aut.delta:
        for q, p in enumerate(row):
            preds[p].add(q)
    seen = set(aut.finals)
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for q in preds[p]:
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def is_trim(aut: Automaton) -> bool:
    return (len(accessible_states(aut)) == aut.n
            and len(coaccessible_states(aut)) == aut.n)


def indegrees(aut: Automaton) -> list[int]:
    deg = [0] * aut.n
    for row in aut.delta:
        for p in row:
            deg[p] += 1
    return deg


def bpi_set(aut: Automaton) -> frozenset:
    """States entered by at least two transitions (one per letter and source)."""
    return frozenset(q for q, d in enumerate(indegrees(aut)) if d >= 2)


def cycle_avoiding(aut: Automaton, hub: int) -> list[int] | None:
    """A cycle of the transition digraph that avoids ``hub``, or None."""
    succ = _successors(aut)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * aut.n
    colour[hub] = BLACK
    for root in aut.states:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        path = [root]
        stack = [iter(sorted(succ[root]))]
        while stack:
            for p in stack[-1]:
                if colour[p] == GREY:
                    return path[path.index(p):] + [p]
                if colour[p] == WHITE:
                    colour[p] = GREY
                    path.append(p)
                    stack.append(iter(sorted(succ[p])))
                    break
            else:
                colour[path.pop()] = BLACK
                stack.pop()
    return None


def is_sfa(aut: Automaton) -> bool:
    """Trim, initial state is the only final state, every cycle visits it."""
    if aut.finals != {aut.initial} or not is_trim(aut):
        return False
    return cycle_avoiding(aut, aut.initial) is None


def circular_letters(aut: Automaton) -> tuple:
    """Letters (names, alphabet order) inducing a single n-cycle."""
    return tuple(name for name, row in zip(aut.alphabet, aut.delta)
                 if is_circular_permutation(row))


# -- minimality --------------------------------------------------------------

def _refine(aut: Automaton, states: Sequence[int]) -> dict[int, int]:
    """Moore refinement over ``states``; returns state -> block number."""
    block = {q: int(q in aut.finals) for q in states}
    count = len(set(block.values()))
    while True:
        signature = {q: (block[q],) + tuple(block[row[q]] for row in aut.delta)
                     for q in states}
        numbering: dict[tuple, int] = {}
        new_block = {q: numbering.setdefault(signature[q], len(numbering))
                     for q in states}
        if len(numbering) == count:
            return new_block
        block, count = new_block, len(numbering)


def is_minimal(aut: Automaton) -> bool:
    reach = accessible_states(aut)
    if len(reach) != aut.n:
        return False
    return len(set(_refine(aut, reach).values())) == aut.n


def minimize(aut: Automaton) -> Automaton:
    """Accessible quotient by Nerode equivalence.

    Blocks are numbered in breadth-first discovery order from the initial
    state, so isomorphic inputs give identical outputs.
    """
    reach = accessible_states(aut)
    block = _refine(aut, reach)
    order: dict[int, int] = {}
    for q in reach:
        order.setdefault(block[q], len(order))
    rep = {}
    for q in reach:
        rep.setdefault(order[block[q]], q)
    m = len(order)
    delta = [[order[block[row[rep[i]]]] for i in range(m)] for row in aut.delta]
    finals = frozenset(order[block[q]] for q in reach if q in aut.finals)
    return Automaton(m, aut.alphabet, delta, order[block[aut.initial]], finals)


def are_isomorphic(x: Automaton, y: Automaton) -> bool:
    """Isomorphism test for accessible automata over the same alphabet."""
    if x.n != y.n or x.alphabet != y.alphabet:
        return False
    mapping = {x.initial: y.initial}
    queue = deque([x.initial])
    while queue:
        q = queue.popleft()
        if (q in x.finals) != (mapping[q] in y.finals):
            return False
        for rx, ry in zip(x.delta, y.delta):
            p, r = rx[q], ry[mapping[q]]
            if p in mapping:
                if mapping[p] != r:
                    return False
            else:
                mapping[p] = r
                queue.append(p)
    return len(mapping) == x.n and len(set(mapping.values())) == x.n


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class AnalysisReport:
    n: int
    alphabet: tuple
    is_trim: bool
    is_sfa: bool
    bpi_set: frozenset
    circular_letters: tuple
    is_csfa: bool
    is_minimal: bool
    bpi_class: str
    offending_cycle: tuple | None = None

    def summary(self) -> str:
        bpis = "{" + ",".join(str(q) for q in sorted(self.bpi_set)) + "}"
        if self.is_csfa:
            kind = "CSFA"
        elif self.is_sfa:
            kind = "SFA (not circular)"
        elif self.offending_cycle:
            kind = "not an SFA: cycle avoiding q0"
        elif not self.is_trim:
            kind = "not an SFA: not trim"
        else:
            kind = "not an SFA"
        k = len(self.bpi_set)
        if k == 0:
            bpi_text = "no bpis"
        else:
            word = {1: "one bpi", 2: "two bpis"}.get(k, f"{k} bpis")
            bpi_text = f"{word} {bpis}"
        minimal = "minimal" if self.is_minimal else "not minimal"
        return f"{kind}, {bpi_text}, {minimal}"

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "alphabet": list(self.alphabet),
            "is_trim": self.is_trim,
            "is_sfa": self.is_sfa,
            "bpi_set": sorted(self.bpi_set),
            "circular_letters": list(self.circular_letters),
            "is_csfa": self.is_csfa,
            "is_minimal": self.is_minimal,
            "bpi_class": self.bpi_class,
            "offending_cycle": list(self.offending_cycle) if self.offending_cycle else None,
            "summary": self.summary(),
        }


def bpi_class_name(k: int) -> str:
    return {0: "no-bpi", 1: "one-bpi", 2: "two-bpi"}.get(k, f"k-bpi({k})")


def classify(aut: Automaton) -> AnalysisReport:
    trim = is_trim(aut)
    cycle = cycle_avoiding(aut, aut.initial)
    sfa = trim and aut.finals == {aut.initial} and cycle is None
    bpis = bpi_set(aut)
    circ = circular_letters(aut)
    return AnalysisReport(
        n=aut.n,
        alphabet=aut.alphabet,
        is_trim=trim,
        is_sfa=sfa,
        bpi_set=bpis,
        circular_letters=circ,
        is_csfa=sfa and bool(circ),
        is_minimal=is_minimal(aut),
        bpi_class=bpi_class_name(len(bpis)),
        offending_cycle=tuple(cycle) if cycle else None,
    )


def is_csfa(aut: Automaton) -> bool:
    return bool(circular_letters(aut)) and is_sfa(aut)


def is_normalized(aut: Automaton) -> bool:
    """Initial state 0 and the first circular letter maps ``i`` to ``i+1 mod n``."""
    circ = circular_letters(aut)
    if not circ or aut.initial != 0:
        return False
    return tuple(aut.row(circ[0])) == tuple((q + 1) % aut.n for q in aut.states)


def normalize_csfa(aut: Automaton) -> Automaton:
    """Relabel states along the cycle of the first circular letter.

    The initial-final state becomes 0 and that letter becomes ``i -> i+1``.
    """
    if not is_csfa(aut):
        raise AutomatonError("not a CSFA")
    cycle = aut.row(circular_letters(aut)[0])
    perm = [0] * aut.n
    q = aut.initial
    for i in range(aut.n):
        perm[q] = i
        q = cycle[q]
    return aut.relabel(perm)
