import pytest
from hypothesis import given

from besmints.engines.sequent import provable
from besmints.logic.syntax import (
    ABSURD,
    Atom,
    Atomic,
    Conj,
    Disj,
    Impl,
    atoms,
    conjoin,
    exfalso_guards,
    is_composite,
    is_bot_normal,
    make_context,
    neg,
    node_count,
    normalize_bot,
    print_formula,
    subformulas,
    surface_atom,
    substitute_bot,
    weight,
)
from tests.strategies import formulas

p, q, r, z = (Atomic.of(n) for n in "pqrz")
a, b = Atomic.of("a"), Atomic.of("b")


class TestAtom:
    def test_compares_by_name(self):
        assert Atom("p") == Atom("p")
        assert Atom("p") < Atom("q")

    def test_rejects_absurdity_token(self):
        with pytest.raises(ValueError):
            Atom("bot")

    def test_rejects_empty_name(self):
        with pytest.raises(ValueError):
            Atom("")

    def test_fresh_names_are_not_surface(self):
        assert Atom("p1").is_surface
        assert not Atom("#1").is_surface

    def test_surface_atom(self):
        assert surface_atom("p1") == Atom("p1")

    @pytest.mark.parametrize("name", ["#1", "a b", "1p", "p-q"])
    def test_surface_atom_rejects(self, name):
        with pytest.raises(ValueError):
            surface_atom(name)


class TestPrinter:
    @pytest.mark.parametrize(
        "formula, text",
        [
            (Impl(p, p), "p -> p"),
            (Conj(a, b), "a /\\ b"),
            (Impl(Impl(p, q), p), "(p -> q) -> p"),
            (Impl(p, Impl(q, r)), "p -> q -> r"),
            (Conj(Conj(p, q), r), "p /\\ q /\\ r"),
            (Conj(p, Conj(q, r)), "p /\\ (q /\\ r)"),
            (Disj(p, Conj(q, r)), "p \\/ q /\\ r"),
            (Conj(Disj(p, q), r), "(p \\/ q) /\\ r"),
            (Disj(p, neg(p)), "p \\/ ~p"),
            (neg(neg(p)), "~~p"),
            (neg(Conj(p, q)), "~(p /\\ q)"),
            (Impl(neg(p), q), "~p -> q"),
            (ABSURD, "bot"),
            (Impl(ABSURD, p), "bot -> p"),
        ],
    )
    def test_canonical_text(self, formula, text):
        assert print_formula(formula) == text

    def test_str_uses_printer(self):
        assert str(Disj(Impl(p, ABSURD), q)) == "~p \\/ q"


class TestSubformulas:
    def test_conjunction(self):
        assert subformulas(Conj(a, b)) == [a, b, Conj(a, b)]

    def test_atom(self):
        assert subformulas(p) == [p]

    def test_leftmost_innermost(self):
        f = Impl(Impl(p, q), p)
        assert subformulas(f) == [p, q, Impl(p, q), f]

    @given(formulas())
    def test_contains_formula_and_bounded_by_nodes(self, f):
        subs = subformulas(f)
        assert subs[-1] == f
        assert len(subs) == len(set(subs))
        assert len(subs) <= node_count(f)


class TestWeight:
    def test_base_cases(self):
        assert weight(p) == 0
        assert weight(ABSURD) == 1

    def test_hand_evaluated(self):
        assert weight(Disj(Impl(p, ABSURD), q)) == 3

    @given(formulas())
    def test_connectives_add_exactly_one(self, f):
        if isinstance(f, (Conj, Disj, Impl)):
            assert weight(f) == weight(f.left) + weight(f.right) + 1
            assert weight(f) > weight(f.left)
            assert weight(f) > weight(f.right)


class TestNormalizeBot:
    def test_already_normal(self):
        assert normalize_bot(Impl(p, ABSURD)) == Impl(p, ABSURD)

    def test_bare_absurdity(self):
        assert normalize_bot(ABSURD) == Impl(Impl(z, z), ABSURD)

    def test_disjunct(self):
        assert normalize_bot(Disj(ABSURD, p)) == Disj(Impl(Impl(z, z), ABSURD), p)

    def test_antecedent(self):
        assert normalize_bot(Impl(ABSURD, p)) == Impl(Impl(Impl(z, z), ABSURD), p)

    @given(formulas(max_leaves=5))
    def test_normal_idempotent_and_equivalent(self, f):
        g = normalize_bot(f)
        assert is_bot_normal(g)
        assert normalize_bot(g) == g
        assert provable([f], g)
        assert provable([g], f)


class TestSubstituteBot:
    def test_replaces_every_leaf(self):
        f0 = Atom("f0")
        assert substitute_bot(Impl(p, ABSURD), f0) == Impl(p, Atomic(f0))
        assert substitute_bot(p, f0) == p
        assert substitute_bot(ABSURD, f0) == Atomic(f0)

    def test_guards_skip_the_atom_itself(self):
        bot = Atom("#9")
        assert exfalso_guards([Atom("q"), Atom("p"), bot], bot) == (
            Impl(Atomic(bot), p),
            Impl(Atomic(bot), q),
        )


def test_context_is_a_set():
    assert make_context([p, q, p]) == make_context([q, p])


def test_conjoin_associates_left():
    assert conjoin([p, q, r]) == Conj(Conj(p, q), r)
    with pytest.raises(ValueError):
        conjoin([])


def test_atoms_ignore_absurdity():
    assert atoms(Impl(Disj(p, ABSURD), q)) == frozenset({Atom("p"), Atom("q")})


def test_is_composite():
    assert not is_composite(p)
    assert not is_composite(ABSURD)
    assert is_composite(Conj(p, q))
    assert is_composite(Impl(p, ABSURD))
