import random
import unittest

from src.conf import messages
from src.logic.formula import And, Atom, FormulaSyntaxError, Neg, Or, Question, parse_dformula
from src.logic.sequent import (EMPTY, DefeaterAssignment, DefeaterSet, Sequent, compatible, defeat_witness,
                               is_defeated, parse_defeater_members, parse_sequent, validate_assignment)
from tests.generators import random_formula

p, q, r, s, t, u, v = (Atom(name) for name in "pqrstuv")


class TestDefeat(unittest.TestCase):
    def test_conjunction_in_antecedent(self):
        self.assertTrue(is_defeated({And(p, q)}, DefeaterSet.of({p})))

    def test_conjunction_in_defeater(self):
        self.assertFalse(is_defeated({p}, DefeaterSet.of({And(p, q)})))

    def test_disjunction_in_defeater(self):
        self.assertTrue(is_defeated({p}, DefeaterSet.of({Or(p, q)})))

    def test_disjunction_in_antecedent(self):
        self.assertFalse(is_defeated({Or(p, q)}, DefeaterSet.of({p})))

    def test_normalization_cases(self):
        self.assertTrue(is_defeated({p, r}, DefeaterSet.of({p}, {s})))
        self.assertTrue(is_defeated({q}, DefeaterSet.of({s}, {q})))

    def test_empty_defeater_set(self):
        self.assertFalse(is_defeated({p, Neg(p)}, EMPTY))

    def test_members_are_disjunctive(self):
        self.assertTrue(is_defeated({Or(u, v)}, DefeaterSet.of({u, v})))
        self.assertFalse(is_defeated({Or(u, v)}, DefeaterSet.of({u}, {v})))

    def test_compatible(self):
        self.assertFalse(compatible({And(p, q)}, DefeaterSet.of({p})))
        self.assertTrue(compatible({p}, DefeaterSet.of({And(p, q)})))

    def test_questions_are_declarativized(self):
        question = Question.of(p, q)
        self.assertTrue(is_defeated({question}, DefeaterSet.of({p, q})))
        self.assertFalse(is_defeated({question}, DefeaterSet.of({p}, {q})))
        self.assertTrue(is_defeated({question, Neg(q)}, DefeaterSet.of({p})))

    def test_inconsistency_defeats_everything(self):
        self.assertEqual(defeat_witness({p, Neg(p)}, DefeaterSet.of({r})), frozenset({r}))

    def test_witness_order(self):
        defeaters = DefeaterSet.of({q}, {p})
        self.assertEqual(defeat_witness({And(p, q)}, defeaters), frozenset({p}))
        self.assertEqual(defeat_witness({And(p, q)}, defeaters, prefer=[{q}]), frozenset({q}))

    def test_monotonicity(self):
        rng = random.Random(17)
        names = ("p", "q", "r")
        for _ in range(1000):
            antecedent = {random_formula(rng, 2, names) for _ in range(rng.randint(0, 2))}
            defeaters = DefeaterSet.of(*({random_formula(rng, 1, names)} for _ in range(rng.randint(1, 2))))
            if is_defeated(antecedent, defeaters):
                self.assertTrue(is_defeated(antecedent | {random_formula(rng, 2, names)}, defeaters))
                self.assertTrue(is_defeated(antecedent, defeaters | DefeaterSet.of({random_formula(rng, 1, names)})))


class TestDefeaterSet(unittest.TestCase):
    def test_rejects_empty_member(self):
        with self.assertRaises(ValueError) as ctx:
            DefeaterSet.of(set())
        self.assertEqual(str(ctx.exception), messages.EMPTY_DEFEATER_MEMBER)

    def test_rejects_questions(self):
        with self.assertRaises(ValueError):
            DefeaterSet.of({Question.of(p, q)})

    def test_set_operations(self):
        small = DefeaterSet.of({p})
        large = DefeaterSet.of({p}, {q})
        self.assertTrue(small <= large)
        self.assertTrue(small < large)
        self.assertEqual(large - small, DefeaterSet.of({q}))
        self.assertEqual(small | DefeaterSet.of({q}), large)
        self.assertIn({q}, large)

    def test_text(self):
        self.assertEqual(DefeaterSet.of({v, u}, {r}, {t}).text, "[{r}, {t}, {u, v}]")
        self.assertEqual(EMPTY.text, "[]")


class TestSequentSyntax(unittest.TestCase):
    def test_parse(self):
        sequent = parse_sequent("p & q |- [{p}] r")
        self.assertEqual(sequent, Sequent.of({And(p, q)}, {r}, DefeaterSet.of({p})))

    def test_without_defeaters(self):
        self.assertEqual(parse_sequent("p |- q"), Sequent.of({p}, {q}))
        self.assertEqual(parse_sequent("p, ~p |- []"), Sequent.of({p, Neg(p)}, ()))

    def test_disjunction_next_to_turnstile(self):
        sequent = parse_sequent("p | q |- [] q | p")
        self.assertEqual(sequent, Sequent.of({Or(p, q)}, {Or(q, p)}))

    def test_questions(self):
        sequent = parse_sequent("?{p, q}, ~s | p, s | q |- [{r}, {t}, {u, v}, {p}, {q}] ?{s, ~s}")
        self.assertIn(Question.of(p, q), sequent.antecedent)
        self.assertEqual(sequent.succedent, {Question.of(s, Neg(s))})
        self.assertEqual(len(sequent.defeaters), 5)

    def test_text(self):
        sequent = parse_sequent("s | q, ~s | p, ?{q, p} |- [{q}, {p}] ?{s, ~s}")
        self.assertEqual(str(sequent), "?{p, q}, s | q, ~s | p |- [{p}, {q}] ?{s, ~s}")
        self.assertEqual(str(Sequent.of({p, Neg(p)})), "p, ~p |- []")

    def test_round_trip(self):
        rng = random.Random(23)
        for _ in range(1000):
            antecedent = {random_formula(rng, 2) for _ in range(rng.randint(0, 3))}
            succedent = {random_formula(rng, 2) for _ in range(rng.randint(0, 2))}
            if rng.random() < 0.3:
                succedent.add(Question.of(Atom("p"), Neg(Atom("p"))))
            defeaters = DefeaterSet.of(*({random_formula(rng, 1)} for _ in range(rng.randint(0, 2))))
            sequent = Sequent.of(antecedent, succedent, defeaters)
            self.assertEqual(parse_sequent(str(sequent)), sequent)

    def test_malformed(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_sequent("p |- [{}] q")
        with self.assertRaises(FormulaSyntaxError):
            parse_sequent("p q")

    def test_members(self):
        self.assertEqual(parse_defeater_members("{u, v}, {r}"), DefeaterSet.of({u, v}, {r}))


class TestAssignment(unittest.TestCase):
    def setUp(self):
        self.assignment = DefeaterAssignment({
            "s": DefeaterSet.of({r}),
            "p": DefeaterSet.of({t}),
            "q": DefeaterSet.of({u, v}),
        })

    def test_inquiry_assignment_is_valid(self):
        self.assertEqual(validate_assignment(self.assignment), [])

    def test_self_reference(self):
        violations = validate_assignment(DefeaterAssignment({"p": DefeaterSet.of({p})}))
        self.assertEqual([(v.atom, v.formula, v.reason) for v in violations], [("p", p, messages.SELF_REFERENCE)])

    def test_non_literal(self):
        violations = validate_assignment(DefeaterAssignment({"p": DefeaterSet.of({parse_dformula("q & r")})}))
        self.assertEqual(violations[0].reason, messages.NON_LITERAL)

    def test_absent_atoms(self):
        self.assertEqual(self.assignment.for_atom("w"), EMPTY)
        self.assertEqual(self.assignment.for_atom("q"), DefeaterSet.of({u, v}))
