import json

import pytest
from hypothesis import given, settings

from besmints.exceptions import EmptyUniverseError, FragmentError, NotNormalizedError, OutsideDomainError
from besmints.logic.base import AtomicRule, Premise
from besmints.logic.clauses import (
    ClauseSystem,
    MintsClassification,
    SchematicKind,
    as_formula,
    base_to_clauses,
    classify,
    clause,
    clause_to_rule,
    clauses_for,
    clauses_to_base,
    flatten,
    flatten_all,
    formula_to_clause,
    horn,
    instantiate_system,
    mints_system,
    modified_system,
    print_flatmap,
    print_system,
    rule_to_clause,
    system_export,
)
from besmints.logic.syntax import ABSURD, Atom, Atomic, Conj, Disj, Impl, atoms, normalize_bot, subformulas
from besmints.schemas import dump_json
from tests.strategies import bases, formulas, rules

A, B, C, G, P, Q, R = (Atom(n) for n in "abcgpqr")
a, b, p, q = Atomic(A), Atomic(B), Atomic(P), Atomic(Q)
H1, H2, H3 = Atom("#1"), Atom("#2"), Atom("#3")


class TestFlatten:
    def test_conjunction(self):
        m = flatten(Conj(a, b))
        assert m.table == {a: A, b: B, Conj(a, b): H1}
        assert m.bot_atom == H2
        assert m.fresh_y == H3

    def test_atom(self):
        m = flatten(p)
        assert m.table == {p: P}
        assert m.range == frozenset({P})

    def test_implication(self):
        assert flatten(Impl(p, q)).table == {p: P, q: Q, Impl(p, q): H1}

    def test_absurdity_maps_to_bot_atom(self):
        f = Impl(p, ABSURD)
        m = flatten(f)
        assert m[ABSURD] == m.bot_atom
        assert m[f] == H1
        assert m.bot_atom == H2
        assert m.domain == [p, ABSURD, f]

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalizedError):
            flatten(Disj(ABSURD, p))

    def test_outside_domain(self):
        with pytest.raises(OutsideDomainError):
            flatten(p)[q]

    def test_joint_flattening_shares_names(self):
        m = flatten_all([Conj(a, b), Impl(Conj(a, b), a)])
        assert m[Conj(a, b)] == H1
        assert m[Impl(Conj(a, b), a)] == H2

    @given(formulas())
    def test_injective_and_identity_on_atoms(self, f):
        g = normalize_bot(f)
        m = flatten(g)
        images = [atom for _, atom in m.mapping]
        assert len(images) == len(set(images))
        assert set(m.domain) == set(subformulas(g))
        for sub, atom in m.mapping:
            if isinstance(sub, Atomic):
                assert atom == sub.atom
            else:
                assert atom not in atoms(g)
        assert m.fresh_y not in images
        assert m.bot_atom not in atoms(g)

    def test_deterministic(self):
        f = Impl(Disj(p, q), Conj(q, p))
        assert flatten(f) == flatten(f)

    def test_table_rendering(self):
        text = print_flatmap(flatten(Conj(a, b)))
        assert text.splitlines()[-3].split() == ["a", "/\\", "b", "#1"]
        assert "(bot)" in text


class TestClausesFor:
    def test_conjunction(self):
        chi = Conj(a, b)
        assert clauses_for(chi, flatten(chi), [G]) == {horn([H1], A), horn([H1], B), horn([A, B], H1)}

    def test_disjunction(self):
        chi = Disj(a, b)
        assert clauses_for(chi, flatten(chi), [G]) == {
            horn([A], H1),
            horn([B], H1),
            clause([((), H1), ((A,), G), ((B,), G)], G),
        }

    def test_implication(self):
        chi = Impl(p, q)
        got = clauses_for(chi, flatten(chi), [G])
        assert got == {horn([H1, P], Q), clause([((P,), Q)], H1)}
        assert {classify(c) for c in got} == {MintsClassification.HORN, MintsClassification.IMPLICATION_NESTED}

    def test_rejects_atoms_and_foreign_formulas(self):
        m = flatten(Conj(a, b))
        with pytest.raises(OutsideDomainError):
            clauses_for(a, m, [G])
        with pytest.raises(OutsideDomainError):
            clauses_for(Disj(a, b), m, [G])

    def test_empty_instantiation_set(self):
        chi = Disj(a, b)
        with pytest.raises(EmptyUniverseError):
            clauses_for(chi, flatten(chi), [])


class TestMintsSystem:
    def test_conjunction(self):
        system, goal = mints_system(Conj(a, b))
        assert goal == H1
        assert system.is_instantiated
        assert system.clauses == {
            horn([H1], A),
            horn([H1], B),
            horn([A, B], H1),
            horn([H1, A, B, H3], H2),
            horn([H2], H3),
            horn([H2], A),
            horn([H2], B),
            horn([H2], H1),
        }

    def test_atom_has_absurdity_clauses_only(self):
        system, goal = mints_system(p)
        assert goal == P
        bot, y = Atom("#1"), Atom("#2")
        assert system.clauses == {horn([P, y], bot), horn([bot], y), horn([bot], P)}

    @given(formulas())
    def test_every_clause_is_basic(self, f):
        system, _ = mints_system(normalize_bot(f))
        for c in system:
            for atom in c.atoms():
                assert atom.name != "bot"


class TestModifiedSystem:
    def test_disjunction(self):
        system = modified_system(Disj(a, b))
        assert system.clauses == {horn([A], H1), horn([B], H1)}
        assert {s.kind for s in system.schematics} == {SchematicKind.DISJUNCTION_ELIM, SchematicKind.EXPLOSION}

    def test_atom(self):
        system = modified_system(p)
        assert not system.clauses
        assert [s.kind for s in system.schematics] == [SchematicKind.EXPLOSION]

    def test_conjunction(self):
        system = modified_system(Conj(a, b))
        assert len(system.clauses) == 3
        assert len(system.schematics) == 1

    def test_instantiation(self):
        system = instantiate_system(modified_system(p), [A, B])
        bot = flatten(p).bot_atom
        assert system.clauses == {horn([bot], A), horn([bot], B)}
        assert system.is_instantiated

    def test_instantiation_without_schematics_is_identity(self):
        system = ClauseSystem.of([horn([A], B)])
        assert instantiate_system(system, [A]) == system

    def test_disjunction_template_at_one_atom(self):
        system = instantiate_system(modified_system(Disj(a, b)), [G])
        assert clause([((), H1), ((A,), G), ((B,), G)], G) in system.clauses

    def test_empty_universe(self):
        with pytest.raises(EmptyUniverseError):
            instantiate_system(modified_system(p), [])

    def test_text_rendering_lists_schematics(self):
        text = print_system(modified_system(Disj(a, b)))
        assert "a -> #1" in text
        assert "schematic: #1 /\\ (a -> x) /\\ (b -> x) -> x" in text


class TestBijection:
    def test_nullary(self):
        c = rule_to_clause(AtomicRule((), C))
        assert as_formula(c) == Atomic(C)

    def test_bare_premises(self):
        c = rule_to_clause(AtomicRule((Premise.of([], "a"), Premise.of([], "b")), R))
        assert as_formula(c) == Impl(Conj(a, b), Atomic(R))

    def test_hypothetical_premise(self):
        c = rule_to_clause(AtomicRule((Premise.of(["a"], "b"),), C))
        assert as_formula(c) == Impl(Impl(a, b), Atomic(C))

    def test_conjunction_simulation_base(self, conj_base):
        formulas_ = {str(f) for f in base_to_clauses(conj_base).formulas()}
        assert formulas_ == {"a /\\ b -> r", "r -> a", "r -> b"}

    @settings(max_examples=1000)
    @given(rules())
    def test_rule_round_trip(self, r):
        assert clause_to_rule(rule_to_clause(r)) == r

    @settings(max_examples=1000)
    @given(rules())
    def test_clause_round_trip(self, r):
        c = rule_to_clause(r)
        assert rule_to_clause(clause_to_rule(c)) == c

    @settings(max_examples=1000)
    @given(bases(), bases())
    def test_inclusion_preserved_and_reflected(self, b1, b2):
        assert (b1 <= b2) == (base_to_clauses(b1).clauses <= base_to_clauses(b2).clauses)

    @given(bases())
    def test_clauses_back_to_base(self, b):
        assert clauses_to_base(base_to_clauses(b)) == b

    @given(rules())
    def test_formula_read_back(self, r):
        c = rule_to_clause(r)
        back = formula_to_clause(as_formula(c))
        assert back.conclusion == c.conclusion
        assert [(p.hypotheses, p.head) for p in back.premises] == [(p.hypotheses, p.head) for p in c.premises]

    def test_formula_read_back_rejects_disjunction(self):
        with pytest.raises(FragmentError):
            formula_to_clause(Disj(a, b))

    def test_formula_read_back_accepts_curried_implications(self):
        c = Atomic(C)
        assert formula_to_clause(Impl(a, Impl(b, c))) == horn([A, B], C)
        assert formula_to_clause(Impl(Impl(a, Impl(b, c)), Atomic(G))) == clause([((A, B), C)], G)


class TestClassify:
    def test_horn(self):
        assert classify(horn([A, B], R)) == MintsClassification.HORN
        assert classify(horn([], R)) == MintsClassification.HORN

    def test_implication_nested(self):
        assert classify(clause([((A,), B)], C)) == MintsClassification.IMPLICATION_NESTED

    def test_disjunction_elimination_is_general(self):
        assert classify(clause([((), H1), ((A,), G), ((B,), G)], G)) == MintsClassification.GENERAL


def test_export_shape():
    system, goal = mints_system(Conj(a, b))
    payload = json.loads(dump_json(system_export(system, goal)))
    assert payload["goal"] == "#1"
    assert payload["schematics"] == []
    first = payload["clauses"][0]
    assert set(first) == {"premises", "conclusion", "formula", "shape"}
    assert set(first["premises"][0]) == {"hyps", "head"}


def test_export_of_schematics():
    payload = json.loads(dump_json(system_export(modified_system(Disj(a, b)))))
    kinds = sorted(s["kind"] for s in payload["schematics"])
    assert kinds == ["disjunction-elim", "explosion"]
