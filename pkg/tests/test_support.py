import random

import pytest
from hypothesis import given, settings, strategies as st

from besmints.engines.clausal import system_base
from besmints.engines.sequent import provable
from besmints.harness.generator import random_rule
from besmints.logic.base import EMPTY_BASE, Base, derives, parse_base, replay
from besmints.logic.grammar import parse_formula
from besmints.logic.syntax import ABSURD, Atom, Atomic, Conj, Impl
from besmints.semantics.support import SupportQuery, support_atomic, supports, valid
from tests.strategies import NAMES, assumption_sets, atoms, bases, formulas

C, P = Atom("c"), Atom("p")
UNIVERSE = [Atom(n) for n in NAMES]


def query(base: Base, context, text: str) -> SupportQuery:
    return SupportQuery.of(base, [parse_formula(c) for c in context], parse_formula(text))


class TestSupports:
    def test_atom_in_a_base(self):
        assert supports(query(parse_base("=> p"), [], "p")).verdict

    def test_identity(self):
        assert supports(query(EMPTY_BASE, [], "p -> p")).verdict

    def test_excluded_middle(self):
        result = supports(query(EMPTY_BASE, [], "p \\/ (p -> bot)"))
        assert not result.verdict
        assert result.certificate is None

    def test_context(self):
        assert supports(query(EMPTY_BASE, ["a /\\ b"], "a")).verdict

    def test_base_rules_are_used(self, conj_base):
        assert supports(SupportQuery.of(conj_base, [], parse_formula("a /\\ b -> r"))).verdict
        assert supports(SupportQuery.of(conj_base, [], parse_formula("r -> a /\\ b"))).verdict
        assert not supports(SupportQuery.of(conj_base, [], parse_formula("a -> r"))).verdict

    def test_absurdity_in_context_explodes(self):
        assert supports(query(EMPTY_BASE, ["bot"], "q")).verdict
        assert not supports(query(parse_base("=> p"), [], "bot")).verdict

    def test_certificate_replays(self):
        result = supports(query(parse_base("=> q"), ["p"], "p /\\ q"))
        assert result.verdict
        conclusion, opened = replay(result.certificate, system_base(result.system), result.hyps)
        assert conclusion == result.goal
        assert opened <= result.hyps

    def test_universe_has_a_reserved_atom(self):
        result = supports(query(parse_base("=> c"), [], "p"))
        assert result.universe == frozenset({P, C, Atom("#u")})
        bigger = supports(query(parse_base("=> c"), [], "p"), extra_atoms=2)
        assert {Atom("#u1"), Atom("#u2")} <= bigger.universe


class TestValid:
    def test_identity(self):
        assert valid([], parse_formula("p -> p"))

    def test_peirce(self):
        assert not valid([], parse_formula("((p -> q) -> p) -> p"))

    def test_modus_ponens(self):
        assert valid([parse_formula("p"), parse_formula("p -> q")], parse_formula("q"))

    @given(st.lists(formulas(max_leaves=3), max_size=2), formulas(max_leaves=4))
    def test_matches_oracle_with_context(self, context, f):
        assert valid(context, f) == provable(context, f)


class TestSupportAtomic:
    def test_examples(self):
        assert support_atomic(parse_base("=> c"), [], C)
        assert support_atomic(EMPTY_BASE, [P], P)
        assert not support_atomic(EMPTY_BASE, [], P)

    @given(bases(), assumption_sets(), atoms())
    def test_equals_supports_on_atomic_queries(self, b, hyps, goal):
        q = SupportQuery.of(b, [Atomic(h) for h in hyps], Atomic(goal))
        assert supports(q).verdict == support_atomic(b, hyps, goal) == derives(b, hyps, goal)[0]


class TestRowCoherence:
    @given(bases(max_premises=1), formulas(max_leaves=3), formulas(max_leaves=3))
    def test_conjunction(self, b, f, g):
        both = supports(SupportQuery.of(b, [], Conj(f, g))).verdict
        assert both == (supports(SupportQuery.of(b, [], f)).verdict and supports(SupportQuery.of(b, [], g)).verdict)

    @given(bases(max_premises=1), formulas(max_leaves=3), formulas(max_leaves=3))
    def test_implication(self, b, f, g):
        assert supports(SupportQuery.of(b, [], Impl(f, g))).verdict == supports(SupportQuery.of(b, [f], g)).verdict


class TestInvariance:
    @pytest.mark.slow
    @settings(max_examples=200)
    @given(bases(max_premises=1), formulas(max_leaves=4), st.integers(0, 2**32))
    def test_monotone_in_base(self, b, f, seed):
        rng = random.Random(seed)
        bigger = b.union(random_rule(rng, UNIVERSE, max_premises=1) for _ in range(rng.randint(1, 2)))
        if supports(SupportQuery.of(b, [], f)).verdict:
            assert supports(SupportQuery.of(bigger, [], f)).verdict

    @pytest.mark.slow
    @settings(max_examples=200)
    @given(bases(max_premises=1), st.lists(formulas(max_leaves=2), max_size=1), formulas(max_leaves=4), st.integers(1, 3))
    def test_fresh_atoms_are_irrelevant(self, b, context, f, extra):
        q = SupportQuery.of(b, context, f)
        assert supports(q).verdict == supports(q, extra_atoms=extra).verdict


def test_negative_extra_atoms_rejected():
    with pytest.raises(ValueError):
        supports(SupportQuery.of(EMPTY_BASE, [], ABSURD), extra_atoms=-1)
