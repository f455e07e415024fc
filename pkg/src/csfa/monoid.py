"""Transition monoids of CSFA and their structure under the rotation group.

The rotation group ``G`` is generated by the circular letter ``a`` and acts on
the monoid by right composition.  For two-bpi binary CSFA this module also
extracts the exponents ``kappa``/``tau``, builds the basic idempotents, and
classifies rank-two elements into the ``a^i b a^j`` / ``a^i b^2 a^j`` /
``a^i b a^tau b a^j`` shapes.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from csfa.automata import (
    Automaton,
    bpi_set,
    circular_letters,
    is_csfa,
    is_normalized,
    minimize,
)
from csfa.transformations import (
    Transformation,
    compose,
    identity,
    induced,
    is_circular_permutation,
    is_idempotent,
    is_permutation,
    power,
    rank,
)

DEFAULT_BUDGET = 1_000_000


class BudgetExceeded(RuntimeError):
    """The monoid has more elements than the caller allowed."""


class TheoremViolation(AssertionError):
    """A structural claim about CSFA monoids failed on concrete input."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class MonoidElement:
    transform: Transformation
    witness: tuple  # shortlex-least word (letter indices)


@dataclass
class TransitionMonoid:
    n: int
    letters: tuple
    generators: tuple
    elements: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[MonoidElement]:
        return iter(self.elements)

    def __contains__(self, t) -> bool:
        return Transformation(t) in self.index

    def element(self, t) -> MonoidElement:
        return self.elements[self.index[Transformation(t)]]

    @property
    def transforms(self) -> list:
        return [e.transform for e in self.elements]

    @property
    def identity(self) -> MonoidElement:
        return self.elements[0]

    def word_str(self, word) -> str:
        return "".join(str(self.letters[k]) for k in word) if word else "ε"


def generate_monoid(aut: Automaton, budget: int = DEFAULT_BUDGET) -> TransitionMonoid:
    """Breadth-first closure of the identity under the letter functions.

    Words are explored by length and then in alphabet order, so the first word
    reaching a function is its shortlex-least representative.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    ident = identity(aut.n)
    mon = TransitionMonoid(aut.n, aut.alphabet, aut.delta)
    mon.elements.append(MonoidElement(ident, ()))
    mon.index[ident] = 0
    i = 0
    while i < len(mon.elements):
        x = mon.elements[i]
        for k, row in enumerate(aut.delta):
            y = Transformation([row[p] for p in x.transform])
            if y not in mon.index:
                if len(mon.elements) >= budget:
                    raise BudgetExceeded(
                        f"monoid exceeds budget of {budget} elements")
                mon.index[y] = len(mon.elements)
                mon.elements.append(MonoidElement(y, x.witness + (k,)))
        i += 1
    return mon


def syntactic_complexity(aut: Automaton, budget: int = DEFAULT_BUDGET) -> int:
    return len(generate_monoid(minimize(aut), budget))


# -- the rotation group and its orbits -------------------------------------

@dataclass
class GroupPart:
    generator: str
    generator_index: int
    powers: list          # a^0, a^1, ..., a^(n-1)
    permutations: list    # every permutation found in the monoid

    @property
    def order(self) -> int:
        return len(self.powers)

    @property
    def is_cyclic_of_order_n(self) -> bool:
        n = len(self.powers[0])
        return len(set(self.powers)) == n

    @property
    def contains_all_permutations(self) -> bool:
        return set(self.permutations) <= set(self.powers)


def group_part(mon: TransitionMonoid) -> GroupPart:
    for k, row in enumerate(mon.generators):
        if is_circular_permutation(row):
            break
    else:
        raise PreconditionError("no circular generator")
    powers = [identity(mon.n)]
    for _ in range(mon.n - 1):
        powers.append(compose(powers[-1], row))
    perms = [e.transform for e in mon if is_permutation(e.transform)]
    return GroupPart(mon.letters[k], k, powers, perms)


@dataclass
class OrbitPartition:
    orbits: list  # each a list of transforms; first entry is the representative

    def __len__(self):
        return len(self.orbits)

    @property
    def sizes(self) -> list:
        return [len(o) for o in self.orbits]

    @property
    def representatives(self) -> list:
        return [o[0] for o in self.orbits]


def orbits(mon: TransitionMonoid, g: GroupPart) -> OrbitPartition:
    """Partition the monoid under right multiplication by ``G``."""
    assigned = set()
    parts = []
    for e in mon:
        if e.transform in assigned:
            continue
        orbit = list(dict.fromkeys(compose(e.transform, h) for h in g.powers))
        assigned.update(orbit)
        parts.append(orbit)
    return OrbitPartition(parts)


def stabilizer(x, g: GroupPart) -> list[int]:
    """Exponents ``j`` in ``0..n-1`` with ``x a^j = x``."""
    return [j for j, h in enumerate(g.powers) if compose(x, h) == tuple(x)]


# -- two-bpi binary CSFA ---------------------------------------------------

def letter_roles(aut: Automaton) -> tuple[int, int]:
    """Indices ``(a, b)`` of the circular letter and the other letter."""
    circ = circular_letters(aut)
    if len(aut.alphabet) != 2 or not circ:
        raise PreconditionError("expected a binary circular automaton")
    a = aut.alphabet.index(circ[0])
    return a, 1 - a


@dataclass(frozen=True)
class TwoBpiProfile:
    m: int
    t: int
    kappa: int
    tau: Optional[int]
    q0_fixed_by_b: bool
    a: int = 0
    b: int = 1


def two_bpi_profile(aut: Automaton) -> TwoBpiProfile:
    """Locate the second bpi ``m`` and the exponents ``kappa`` and ``tau``.

    ``kappa`` is searched along ``t, t + (n-m), t + 2(n-m), ...`` where ``t`` is
    the least state sent to ``m`` by ``b``; the first ``r >= 1`` with
    ``0 a^r b = 0`` is taken.
    """
    n = aut.n
    if n <= 2:
        raise PreconditionError("two-bpi analysis needs n > 2")
    a, b = letter_roles(aut)
    if not is_normalized(aut) or not is_csfa(aut):
        raise PreconditionError("expected a normalized CSFA")
    bpis = sorted(bpi_set(aut))
    if len(bpis) != 2 or bpis[0] != 0:
        raise PreconditionError(f"expected bpis {{0, m}}, got {set(bpis)}")
    m = bpis[1]
    brow = aut.delta[b]
    t = min(q for q in range(n) if brow[q] == m)
    r = t
    while r < n:
        # 0 . a^r = r, since a is the standard cycle
        if r >= 1 and brow[r] == 0:
            break
        r += n - m
    else:
        raise TheoremViolation(f"kappa search left [1, n) (m={m}, t={t})")
    fixed = brow[0] == 0
    return TwoBpiProfile(m=m, t=t, kappa=r, tau=t if fixed else None,
                         q0_fixed_by_b=fixed, a=a, b=b)


def a_word(profile: TwoBpiProfile, i: int) -> tuple:
    return (profile.a,) * i


@dataclass(frozen=True)
class Idempotent:
    label: str
    word: tuple
    transform: Transformation


@dataclass
class BasicIdempotents:
    epsilon: Idempotent
    nu: Optional[Idempotent]
    family_kappa: list
    family_square: list

    @property
    def listing(self) -> list:
        """Every constructed idempotent, duplicates included."""
        head = [self.epsilon] + ([self.nu] if self.nu else [])
        return head + self.family_kappa + self.family_square

    @property
    def members(self) -> list:
        """The deduplicated set, first occurrence kept."""
        seen = {}
        for e in self.listing:
            seen.setdefault(e.transform, e)
        return list(seen.values())

    def __len__(self):
        return len(self.members)


def basic_idempotents(aut: Automaton, profile: TwoBpiProfile,
                      mon: TransitionMonoid) -> BasicIdempotents:
    n, a, b = aut.n, profile.a, profile.b

    def make(label, word):
        return Idempotent(label, word, induced(aut, word))

    eps = make("ε", ())
    nu = None
    for e in mon:
        if rank(e.transform) == 1:
            k = e.transform[0]
            nu = make("ν", e.witness + (a,) * ((n - k) % n))
            break
    kappa_core = (a,) * profile.kappa + (b,)
    if profile.q0_fixed_by_b:
        square_core = ((a,) * profile.tau + (b,)) * 2
        square_name = "(a^τ b)²"
    else:
        square_core = (b, b)
        square_name = "b²"
    fam_k, fam_s = [], []
    for i in range(1, n + 1):
        pre, post = (a,) * i, (a,) * (n - i)
        fam_k.append(make(f"a^{i}(a^κ b)a^{n - i}", pre + kappa_core + post))
        fam_s.append(make(f"a^{i}{square_name}a^{n - i}", pre + square_core + post))
    return BasicIdempotents(eps, nu, fam_k, fam_s)


@dataclass(frozen=True)
class Rank2Form:
    tag: str  # "beta", "gamma" or "delta"
    i: int
    j: int
    word: tuple

    SYMBOLS = {"beta": "β", "gamma": "γ", "delta": "δ"}

    def render(self, tau: Optional[int] = None) -> str:
        if self.tag == "beta":
            body = "b"
        elif self.tag == "gamma":
            body = "b²"
        else:
            body = f"b a^{tau} b" if tau is not None else "b a^τ b"
        return f"{self.SYMBOLS[self.tag]}: a^{self.i} {body} a^{self.j}"


@functools.lru_cache(maxsize=256)
def _rank2_tables(aut: Automaton, profile: TwoBpiProfile) -> list:
    n, a, b = aut.n, profile.a, profile.b
    arow, brow = aut.delta[a], aut.delta[b]
    pw = [power(arow, i) for i in range(n + 1)]
    middles = [("beta", (b,), brow)]
    if profile.q0_fixed_by_b:
        core = (b,) + (a,) * profile.tau + (b,)
        middles.append(("delta", core, induced(aut, core)))
    else:
        middles.append(("gamma", (b, b), compose(brow, brow)))
    tables = []
    for tag, core, mid in middles:
        table = {}
        for i in range(1, n + 1):
            left = compose(pw[i], mid)
            for j in range(1, n + 1):
                table.setdefault(compose(left, pw[j]),
                                 Rank2Form(tag, i, j, (a,) * i + core + (a,) * j))
        tables.append(table)
    return tables


def rank2_form(aut: Automaton, profile: TwoBpiProfile, x) -> Rank2Form:
    """Write a rank-two element as one of the three shapes.

    Ties go to the first shape tried, then to the least ``(i, j)``.
    """
    t = x.transform if isinstance(x, MonoidElement) else Transformation(x)
    if rank(t) != 2:
        raise PreconditionError(f"element {t} has rank {rank(t)}, not 2")
    for table in _rank2_tables(aut, profile):
        form = table.get(t)
        if form is not None:
            return form
    raise TheoremViolation(f"rank-two element {t} matches no canonical shape")


@dataclass
class CanonicalFormResult:
    ok: bool
    certificate: dict            # transform -> (Idempotent, exponent in 1..n)
    counterexample: Optional[Transformation] = None
    product_count: int = 0

    def __bool__(self):
        return self.ok


def verify_canonical_form(mon: TransitionMonoid, basics: BasicIdempotents,
                          g: GroupPart) -> CanonicalFormResult:
    """Check that the monoid equals {e a^j : e basic, a^j in G}."""
    n = mon.n
    products = {}
    for e in basics.members:
        for j, h in enumerate(g.powers):
            products.setdefault(compose(e.transform, h), (e, j if j else n))
    for y in products:
        if y not in mon.index:
            return CanonicalFormResult(False, {}, y, len(products))
    for x in mon.transforms:
        if x not in products:
            return CanonicalFormResult(False, {}, x, len(products))
    cert = {x: products[x] for x in mon.transforms}
    return CanonicalFormResult(True, cert, None, len(products))
