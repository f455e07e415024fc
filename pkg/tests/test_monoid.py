import itertools

import pytest

from conftest import naive_closure
from csfa.automata import Automaton
from csfa.families import (
    figure_1,
    figure_2_ternary,
    one_bpi_csfa,
    unary_cycle,
    witness_aprime,
)
from csfa.monoid import (
    BasicIdempotents,
    BudgetExceeded,
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
from csfa.transformations import compose, induced, is_idempotent, is_permutation, rank

TAU_CASE = Automaton(4, ("a", "b"), [[1, 2, 3, 0], [0, 2, 0, 0]])


def shortlex_words(k, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(range(k), repeat=length)


class TestGenerate:
    def test_unary_cycle(self):
        mon = generate_monoid(unary_cycle(4))
        assert len(mon) == 4
        assert [mon.word_str(e.witness) for e in generate_monoid(unary_cycle(3))] == ["ε", "a", "aa"]

    def test_one_bpi(self):
        assert len(generate_monoid(one_bpi_csfa(3, 2))) == 6

    def test_witness_family(self):
        assert len(generate_monoid(witness_aprime(5))) == 60

    @pytest.mark.parametrize("aut", [figure_1(), witness_aprime(4), TAU_CASE,
                                     figure_2_ternary()], ids=["fig1", "aprime4", "tau", "fig2"])
    def test_witnesses_are_shortlex_least(self, aut):
        mon = generate_monoid(aut)
        first = {}
        for w in shortlex_words(len(aut.alphabet), 10):
            first.setdefault(induced(aut, w), w)
        assert set(first) == set(mon.transforms)
        for e in mon:
            assert e.witness == first[e.transform]
            assert induced(aut, e.witness) == e.transform

    def test_closed_and_contains_identity(self):
        mon = generate_monoid(figure_2_ternary())
        assert mon.identity.witness == ()
        for e in mon:
            for row in mon.generators:
                assert compose(e.transform, row) in mon

    def test_matches_naive_closure(self):
        for aut in (figure_1(), TAU_CASE, figure_2_ternary(), witness_aprime(6)):
            assert set(generate_monoid(aut).transforms) == naive_closure(aut)

    def test_budget(self):
        full = Automaton(4, ("a", "b", "c"),
                         [[1, 2, 3, 0], [1, 0, 2, 3], [0, 0, 2, 3]], 0, {0})
        assert len(generate_monoid(full)) == 256
        with pytest.raises(BudgetExceeded):
            generate_monoid(full, budget=10)
        with pytest.raises(ValueError):
            generate_monoid(full, budget=0)


class TestSyntacticComplexity:
    def test_figure_2(self):
        assert syntactic_complexity(figure_2_ternary()) == 110

    def test_witness(self):
        assert syntactic_complexity(witness_aprime(4)) == 40

    def test_unary(self):
        assert syntactic_complexity(unary_cycle(7)) == 7

    def test_uses_the_minimal_automaton(self):
        # a 6-cycle accepting multiples of 3 has a 3-state minimal automaton
        aut = Automaton(6, ("a",), [[1, 2, 3, 4, 5, 0]], 0, {0, 3})
        assert len(generate_monoid(aut)) == 6
        assert syntactic_complexity(aut) == 3


class TestGroupAndOrbits:
    def test_group_of_witness(self):
        for n in (3, 5, 6):
            g = group_part(generate_monoid(witness_aprime(n)))
            assert len(g.permutations) == n
            assert g.is_cyclic_of_order_n and g.contains_all_permutations

    def test_group_of_one_bpi_against_closure(self):
        aut = one_bpi_csfa(3)
        perms = {t for t in naive_closure(aut) if is_permutation(t)}
        g = group_part(generate_monoid(aut))
        assert set(g.powers) == perms == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}

    def test_group_of_unary_is_whole_monoid(self):
        mon = generate_monoid(unary_cycle(5))
        assert set(group_part(mon).powers) == set(mon.transforms)

    def test_no_circular_generator(self):
        aut = Automaton(4, ("a",), [[1, 0, 3, 2]])
        with pytest.raises(PreconditionError):
            group_part(generate_monoid(aut))

    def test_orbits_one_bpi(self):
        mon = generate_monoid(one_bpi_csfa(3))
        part = orbits(mon, group_part(mon))
        assert part.sizes == [3, 3]

    def test_orbits_witness(self):
        mon = generate_monoid(witness_aprime(4))
        part = orbits(mon, group_part(mon))
        assert len(part) == 10 and set(part.sizes) == {4}
        flat = [t for o in part.orbits for t in o]
        assert sorted(flat) == sorted(mon.transforms)

    def test_orbits_unary(self):
        mon = generate_monoid(unary_cycle(6))
        assert orbits(mon, group_part(mon)).sizes == [6]

    def test_stabilizers_trivial(self):
        mon = generate_monoid(figure_2_ternary())
        g = group_part(mon)
        assert all(stabilizer(x, g) == [0] for x in mon.transforms)


class TestTwoBpiProfile:
    @pytest.mark.parametrize("n", range(3, 10))
    def test_witness_kappa(self, n):
        prof = two_bpi_profile(witness_aprime(n))
        assert prof.kappa == n - 1 and prof.m == 1 and prof.tau is None

    def test_figure_1(self):
        aut = figure_1()
        prof = two_bpi_profile(aut)
        assert prof.kappa == 2 and prof.m == 2
        b = aut.delta[1]
        assert compose(b, b) == induced(aut, (0, 0, 1))

    def test_tau_case(self):
        prof = two_bpi_profile(TAU_CASE)
        assert (prof.m, prof.tau, prof.kappa) == (2, 1, 3)
        akb = induced(TAU_CASE, (0, 0, 0, 1))
        assert akb == (0, 0, 2, 0) and is_idempotent(akb) and rank(akb) == 2
        sq = induced(TAU_CASE, (0, 1, 0, 1))
        assert is_idempotent(sq) and rank(sq) == 2

    def test_kappa_may_stop_before_m(self):
        # the iteration stops at the first hit, which can precede m
        aut = Automaton(4, ("a", "b"), [[1, 2, 3, 0], [3, 0, 0, 0]])
        prof = two_bpi_profile(aut)
        assert (prof.m, prof.kappa) == (3, 1)
        akb = induced(aut, (0, 1))
        assert akb == (0, 0, 0, 3) and is_idempotent(akb)

    @pytest.mark.parametrize("aut", [
        unary_cycle(4),
        one_bpi_csfa(4),
        figure_2_ternary(),
        figure_1().relabel([1, 2, 3, 0]),
        Automaton(2, ("a", "b"), [[1, 0], [1, 0]]),
    ], ids=["unary", "one-bpi", "ternary", "not-normalized", "n=2"])
    def test_preconditions(self, aut):
        with pytest.raises(PreconditionError):
            two_bpi_profile(aut)


class TestBasicIdempotents:
    @pytest.mark.parametrize("n", range(3, 9))
    def test_witness_count(self, n):
        aut = witness_aprime(n)
        basics = basic_idempotents(aut, two_bpi_profile(aut), generate_monoid(aut))
        assert len(basics) == 2 * (n + 1)
        assert basics.nu is not None and basics.nu.transform == (0,) * n

    def test_figure_1_collapses(self):
        aut = figure_1()
        basics = basic_idempotents(aut, two_bpi_profile(aut), generate_monoid(aut))
        assert len(basics.listing) == 2 * aut.n + 1  # no rank-one element
        assert basics.nu is None
        assert len(basics) < 10

    def test_members_are_idempotent(self):
        for aut in (figure_1(), TAU_CASE, witness_aprime(5)):
            mon = generate_monoid(aut)
            for e in basic_idempotents(aut, two_bpi_profile(aut), mon).listing:
                assert compose(e.transform, e.transform) == e.transform
                assert induced(aut, e.word) == e.transform
                assert e.transform in mon


class TestRank2Form:
    def test_ab_is_beta(self):
        aut = witness_aprime(4)
        form = rank2_form(aut, two_bpi_profile(aut), induced(aut, (0, 1)))
        assert (form.tag, form.i, form.j) == ("beta", 1, 4)

    def test_abb_is_gamma(self):
        aut = witness_aprime(4)
        x = induced(aut, (0, 1, 1))
        form = rank2_form(aut, two_bpi_profile(aut), x)
        assert form.tag == "gamma" and induced(aut, form.word) == x

    def test_tau_case_needs_no_delta(self):
        # here b# = b a^2, so every rank-two element is already a beta form
        mon = generate_monoid(TAU_CASE)
        prof = two_bpi_profile(TAU_CASE)
        tags = {rank2_form(TAU_CASE, prof, e).tag for e in mon if rank(e.transform) == 2}
        assert tags == {"beta"}

    def test_delta_form_needed(self):
        aut = Automaton(4, ("a", "b"), [[1, 2, 3, 0], [0, 0, 3, 0]])
        prof = two_bpi_profile(aut)
        assert (prof.m, prof.tau) == (3, 2)
        forms = [rank2_form(aut, prof, e) for e in generate_monoid(aut) if rank(e.transform) == 2]
        assert {f.tag for f in forms} == {"beta", "delta"}
        for f in forms:
            assert f.tag != "gamma"

    def test_rank_must_be_two(self):
        aut = witness_aprime(4)
        with pytest.raises(PreconditionError):
            rank2_form(aut, two_bpi_profile(aut), (0, 1, 2, 3))

    def test_unmatched_element_aborts(self):
        aut = witness_aprime(4)
        with pytest.raises(TheoremViolation):
            rank2_form(aut, two_bpi_profile(aut), (2, 3, 2, 3))

    def test_render(self):
        aut = witness_aprime(4)
        form = rank2_form(aut, two_bpi_profile(aut), induced(aut, (0, 1)))
        assert form.render() == "β: a^1 b a^4"


class TestCanonicalForm:
    def _parts(self, aut):
        mon = generate_monoid(aut)
        return mon, basic_idempotents(aut, two_bpi_profile(aut), mon), group_part(mon)

    def test_witness(self):
        mon, basics, g = self._parts(witness_aprime(5))
        res = verify_canonical_form(mon, basics, g)
        assert res and len(basics) * g.order == 60 == len(mon)
        for x, (e, j) in res.certificate.items():
            assert compose(e.transform, g.powers[j % 5]) == x

    def test_figure_1(self):
        mon, basics, g = self._parts(figure_1())
        res = verify_canonical_form(mon, basics, g)
        assert res.ok and res.product_count == len(mon) == 12

    def test_identity_certificate(self):
        mon, basics, g = self._parts(witness_aprime(4))
        e, j = verify_canonical_form(mon, basics, g).certificate[mon.identity.transform]
        assert e.word == () and j == 4  # a^n is the identity

    def test_counterexample_when_a_family_is_dropped(self):
        mon, basics, g = self._parts(witness_aprime(4))
        thin = BasicIdempotents(basics.epsilon, basics.nu, basics.family_kappa, [])
        res = verify_canonical_form(mon, thin, g)
        assert not res and res.counterexample in mon
