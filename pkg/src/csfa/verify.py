"""Per-automaton verification of the structural results on CSFA monoids.

``verify_paper`` classifies its input, then runs every check that applies to
the detected class and records a pass/fail entry for each.  Failures are data,
not exceptions; only a blown monoid budget propagates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from csfa.automata import (
    Automaton,
    bpi_set,
    classify,
    is_minimal,
    normalize_csfa,
)
from csfa.monoid import (
    DEFAULT_BUDGET,
    PreconditionError,
    TheoremViolation,
    basic_idempotents,
    generate_monoid,
    group_part,
    orbits,
    rank2_form,
    stabilizer,
    syntactic_complexity,
    two_bpi_profile,
    verify_canonical_form,
)
from csfa.transformations import (
    complement,
    compose,
    induced,
    is_circular_permutation,
    is_idempotent,
    is_permutation,
    rank,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    cls: str
    n: int
    alphabet_size: int
    summary: str
    complexity: Optional[int] = None
    orbit_sizes: list = field(default_factory=list)
    kappa: Optional[int] = None
    tau: Optional[int] = None
    basic_idempotent_count: Optional[int] = None
    nu_exists: Optional[bool] = None
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.passed), None)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def as_dict(self) -> dict:
        return {
            "class": self.cls,
            "summary": self.summary,
            "n": self.n,
            "alphabet_size": self.alphabet_size,
            "complexity": self.complexity,
            "orbit_sizes": self.orbit_sizes,
            "kappa": self.kappa,
            "tau": self.tau,
            "basic_idempotent_count": self.basic_idempotent_count,
            "nu_exists": self.nu_exists,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def _sfa_checks(aut: Automaton, report: VerificationReport) -> None:
    perms = [row for row in aut.delta if is_permutation(row)]
    report.add("permutation-letters-circular",
               all(is_circular_permutation(p) for p in perms),
               f"{len(perms)} permutation letter(s)")
    report.add("permutation-letters-equal", len(set(perms)) <= 1)
    k = len(classify(aut).bpi_set)
    report.add("bpi-empty-iff-unary", (k == 0) == (len(aut.alphabet) == 1),
               f"|BPI| = {k}, |A| = {len(aut.alphabet)}")


def verify_paper(aut: Automaton, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    info = classify(aut)
    report = VerificationReport(info.bpi_class, aut.n, len(aut.alphabet), info.summary())

    if info.is_sfa:
        report.add("sfa", True)
    elif info.offending_cycle:
        cyc = " -> ".join(str(q) for q in info.offending_cycle)
        report.add("sfa", False, f"not an SFA: cycle avoiding q0 ({cyc})")
    elif not info.is_trim:
        report.add("sfa", False, "not an SFA: not trim")
    else:
        report.add("sfa", False, "not an SFA: final set must equal {initial}")
    if info.is_sfa:
        _sfa_checks(aut, report)
    if not info.is_csfa:
        if info.is_sfa:
            report.add("circular", False, "no letter induces a circular permutation")
        report.complexity = syntactic_complexity(aut, budget)
        return report
    report.add("circular", True, "circular letter(s): " + " ".join(info.circular_letters))

    aut = normalize_csfa(aut)
    n = aut.n
    report.add("minimal", is_minimal(aut))
    mon = generate_monoid(aut, budget)
    report.complexity = len(mon)
    g = group_part(mon)
    report.add("group-cyclic-order-n", g.is_cyclic_of_order_n and g.contains_all_permutations,
               f"|G| = {len(set(g.powers))}, permutations in M: {len(g.permutations)}")
    transitive = all(any(h[p] == q for h in g.powers) for p in range(n) for q in range(n))
    report.add("group-transitive", transitive)
    part = orbits(mon, g)
    report.orbit_sizes = part.sizes
    report.add("orbit-size-n", all(s == n for s in part.sizes),
               f"{len(part)} orbit(s), sizes {sorted(set(part.sizes))}")
    bad_stab = [x for x in mon.transforms if stabilizer(x, g) != [0]]
    report.add("trivial-stabilizers", not bad_stab,
               f"nontrivial stabilizer at {bad_stab[0]}" if bad_stab else "")

    k = len(info.bpi_set)
    ranks = {rank(x) for x in mon.transforms}
    if k >= 1:
        report.add("q0-is-bpi", 0 in bpi_set(aut))
        nonperm = [rank(x) for x in mon.transforms if not is_permutation(x)]
        worst = max(nonperm, default=0)
        report.add("nonpermutation-rank-le-k", worst <= k,
                   f"max non-permutation rank {worst}, k = {k}")

    all_perm = all(is_permutation(row) for row in aut.delta)
    if k == 0 or all_perm:
        report.add("complexity-n", len(mon) == n,
                   f"|M| = {len(mon)}, n = {n}" + (" (permutation SFA)" if k else ""))
    elif k == 1:
        report.add("complexity-2n", len(mon) == 2 * n, f"|M| = {len(mon)}, 2n = {2 * n}")
        report.add("two-orbits", len(part) == 2, f"{len(part)} orbits")
    elif k == 2 and len(aut.alphabet) == 2:
        _two_bpi_binary_checks(aut, mon, g, ranks, report)
    elif k == 2:
        bound = 2 * n * (n + 1)
        relation = ">" if len(mon) > bound else "<=" if len(mon) < bound else "="
        report.add("non-binary-two-bpi", True,
                   f"|M| = {len(mon)} {relation} 2n(n+1) = {bound}; "
                   f"the 2n(n+1) formula covers binary alphabets only "
                   f"(|A| = {len(aut.alphabet)})")
    return report


def _two_bpi_binary_checks(aut, mon, g, ranks, report: VerificationReport) -> None:
    n = aut.n
    try:
        prof = two_bpi_profile(aut)
    except (PreconditionError, TheoremViolation) as exc:
        report.add("two-bpi-profile", False, str(exc))
        return
    a, b = prof.a, prof.b
    report.kappa, report.tau = prof.kappa, prof.tau
    brow = aut.delta[b]
    report.add("image-b-equals-bpi", set(brow) == set(bpi_set(aut)))
    report.add("rank-spectrum", ranks <= {1, 2, n}, f"ranks {sorted(ranks)}")
    idem_n = [x for x in mon.transforms if rank(x) == n and is_idempotent(x)]
    report.add("rank-n-idempotent-unique", len(idem_n) == 1)
    report.add("rank-1-idempotent",
               all(is_idempotent(x) for x in mon.transforms if rank(x) == 1))

    ak_b = induced(aut, (a,) * prof.kappa + (b,))
    report.add("kappa-idempotent-rank-2", is_idempotent(ak_b) and rank(ak_b) == 2,
               f"kappa = {prof.kappa}, a^kappa b = {ak_b}")
    step = n - prof.m
    on_progression = prof.kappa >= prof.t and (prof.kappa - prof.t) % step == 0
    report.add("kappa-range", 1 <= prof.kappa < n and on_progression,
               f"kappa = {prof.kappa} = t + {(prof.kappa - prof.t) // step}(n-m), "
               f"t = {prof.t}, m = {prof.m}")
    k_least = next(k for k in range(n) if prof.t + k * step >= prof.m)
    reach = prof.t + k_least * step
    report.add("progression-bound", prof.m <= reach < n,
               f"least k = {k_least}: m = {prof.m} <= {reach} < {n}")
    if prof.tau is not None:
        sq = induced(aut, ((a,) * prof.tau + (b,)) * 2)
        report.add("tau-range", 1 <= prof.tau < prof.m, f"tau = {prof.tau}, m = {prof.m}")
        report.add("tau-square-idempotent-rank-2", is_idempotent(sq) and rank(sq) == 2,
                   f"(a^tau b)^2 = {sq}")
        expected = induced(aut, (b,) + (a,) * prof.tau + (b,))
        report.add("complement-lemma", complement(brow) == expected,
                   f"b# = {complement(brow)}, b a^tau b = {expected}")
    else:
        expected = compose(brow, brow)
        report.add("complement-lemma", complement(brow) == expected,
                   f"b# = {complement(brow)}, b^2 = {expected}")

    basics = basic_idempotents(aut, prof, mon)
    report.basic_idempotent_count = len(basics)
    report.nu_exists = basics.nu is not None
    members = basics.members
    report.add("basic-idempotents",
               all(is_idempotent(e.transform) and e.transform in mon for e in basics.listing)
               and len(members) <= 2 * (n + 1),
               f"|B| = {len(members)} <= 2(n+1) = {2 * (n + 1)}")

    failures = []
    for e in mon:
        if rank(e.transform) != 2:
            continue
        try:
            form = rank2_form(aut, prof, e)
        except TheoremViolation as exc:
            failures.append(str(exc))
            continue
        if induced(aut, form.word) != e.transform:
            failures.append(f"{form} does not re-induce {e.transform}")
    report.add("rank-2-forms", not failures, failures[0] if failures else "")

    cf = verify_canonical_form(mon, basics, g)
    report.add("canonical-form", cf.ok,
               f"|M| = {len(mon)}, |B||G| = {len(members) * n}, distinct products "
               f"{cf.product_count}" + (f"; counterexample {cf.counterexample}"
                                        if not cf.ok else ""))
    basic_orbits = {frozenset(compose(e.transform, h) for h in g.powers) for e in members}
    report.add("orbit-count", len(mon) == len(basic_orbits) * n,
               f"{len(basic_orbits)} orbit(s) of basic idempotents")
    bound = 2 * n * (n + 1)
    report.add("complexity-bound", len(mon) <= bound, f"|M| = {len(mon)} <= {bound}")

