"""Named CSFA constructions and the exhaustive two-bpi binary sweep."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from csfa.automata import Automaton, AutomatonError, bpi_set, is_csfa
from csfa.monoid import syntactic_complexity

LETTERS = "abcdefghijklmnopqrstuvwxyz"
FAMILIES = ("unary", "one-bpi", "aprime", "figure1", "figure2")


def _cycle(n: int) -> list[int]:
    return [(q + 1) % n for q in range(n)]


def unary_cycle(n: int) -> Automaton:
    if n < 1:
        raise AutomatonError("unary cycle needs n >= 1")
    return Automaton(n, ("a",), [_cycle(n)], 0, {0})


def one_bpi_csfa(n: int, alphabet_size: int = 2) -> Automaton:
    """The cycle on ``a``; every other letter is constant onto state 0."""
    if n < 2 or alphabet_size < 2:
        raise AutomatonError("one-bpi CSFA needs n >= 2 and at least two letters")
    if alphabet_size > len(LETTERS):
        raise AutomatonError(f"at most {len(LETTERS)} letters supported")
    rows = [_cycle(n)] + [[0] * n for _ in range(alphabet_size - 1)]
    return Automaton(n, tuple(LETTERS[:alphabet_size]), rows, 0, {0})


def witness_aprime(n: int) -> Automaton:
    """Two-bpi binary CSFA reaching 2n(n+1): ``b`` sends 0 to 1, the rest to 0."""
    if n < 3:
        raise AutomatonError("the witness family needs n >= 3")
    return Automaton(n, ("a", "b"), [_cycle(n), [1] + [0] * (n - 1)], 0, {0})


def figure_1() -> Automaton:
    return Automaton(4, ("a", "b"), [[1, 2, 3, 0], [2, 2, 0, 0]], 0, {0})


def figure_2_ternary() -> Automaton:
    """Five-state ternary CSFA with bpis {0, 3} and a 110-element monoid."""
    aut = Automaton(5, ("a", "b", "c"),
                    [[1, 2, 3, 4, 0], [3, 3, 3, 0, 0], [3, 0, 3, 0, 0]], 0, {0})
    if bpi_set(aut) != {0, 3}:
        raise AssertionError("figure 2 transcription: bpi set is not {0, 3}")
    if syntactic_complexity(aut) != 110:
        raise AssertionError("figure 2 transcription: complexity is not 110")
    return aut


def build(family: str, n: int | None = None, alphabet_size: int = 2) -> Automaton:
    """Construct a family member by its CLI name."""
    if family in ("figure1", "figure2"):
        if n is not None:
            raise AutomatonError(f"family {family} takes no size")
        return figure_1() if family == "figure1" else figure_2_ternary()
    if n is None:
        raise AutomatonError(f"family {family} needs --n")
    if family == "unary":
        return unary_cycle(n)
    if family == "one-bpi":
        return one_bpi_csfa(n, alphabet_size)
    if family == "aprime":
        return witness_aprime(n)
    raise AutomatonError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


# -- enumeration ------------------------------------------------------------

ENUM_MIN, ENUM_MAX = 3, 10


@dataclass
class InstanceRecord:
    m: int
    b_row: tuple
    complexity: int
    checks_passed: bool
    failed_checks: tuple = ()
    kappa: int | None = None
    tau: int | None = None
    basic_idempotents: int | None = None
    nu_exists: bool | None = None

    def automaton(self) -> Automaton:
        n = len(self.b_row)
        return Automaton(n, ("a", "b"), [_cycle(n), list(self.b_row)], 0, {0})


@dataclass
class EnumerationResult:
    n: int
    descriptor: str
    records: list = field(default_factory=list)

    @property
    def instance_count(self) -> int:
        return len(self.records)

    @property
    def bound(self) -> int:
        return 2 * self.n * (self.n + 1)

    @property
    def max_complexity(self) -> int:
        return max((r.complexity for r in self.records), default=0)

    @property
    def argmax(self) -> list:
        top = self.max_complexity
        return [r for r in self.records if r.complexity == top]

    @property
    def argmax_witness(self) -> Automaton | None:
        best = self.argmax
        return best[0].automaton() if best else None

    @property
    def exceeding(self) -> list:
        return [r for r in self.records if r.complexity > self.bound]

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r.checks_passed]

    @property
    def matches_formula(self) -> bool:
        return self.max_complexity == self.bound and not self.exceeding


def two_bpi_candidates(n: int):
    """Normalized binary automata with ``b`` mapping onto exactly {0, m}.

    Yields ``(m, b_row, automaton)`` for those that are CSFA with bpis {0, m}.
    """
    cycle = _cycle(n)
    for m in range(1, n):
        for bits in itertools.product((0, 1), repeat=n):
            if 0 not in bits or 1 not in bits:
                continue
            row = tuple(m if bit else 0 for bit in bits)
            aut = Automaton(n, ("a", "b"), [cycle, row], 0, {0})
            if is_csfa(aut) and bpi_set(aut) == {0, m}:
                yield m, row, aut


def _analyse(item) -> InstanceRecord:
    from csfa.verify import verify_paper

    m, row, aut = item
    report = verify_paper(aut)
    return InstanceRecord(
        m=m, b_row=row, complexity=report.complexity,
        checks_passed=report.passed,
        failed_checks=tuple(c.name for c in report.checks if not c.passed),
        kappa=report.kappa, tau=report.tau,
        basic_idempotents=report.basic_idempotent_count,
        nu_exists=report.nu_exists,
    )


def enumerate_two_bpi_binary(n: int, workers: int = 1) -> EnumerationResult:
    """Run the full verifier on every normalized two-bpi binary CSFA of size n."""
    if not ENUM_MIN <= n <= ENUM_MAX:
        raise ValueError(f"n must be in [{ENUM_MIN}, {ENUM_MAX}], got {n}")
    items = list(two_bpi_candidates(n))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_analyse, items, chunksize=16))
    else:
        records = [_analyse(item) for item in items]
    records.sort(key=lambda r: (r.m, r.b_row))
    return EnumerationResult(n, "two-bpi binary CSFA", records)
