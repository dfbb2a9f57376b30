import random
import unittest

from src.conf import messages
from src.logic.formula import (And, Atom, FormulaSyntaxError, Neg, Or, Question, atoms, direct_answers, disjunction,
                               equiform, is_literal, parse_dformula, parse_dformulas, parse_question, parse_sform,
                               subformulas, to_text)
from tests.generators import random_formula

p, q, r, s = Atom("p"), Atom("q"), Atom("r"), Atom("s")


class TestParsing(unittest.TestCase):
    def test_negated_conjunction(self):
        self.assertEqual(parse_dformula("~(p & q)"), Neg(And(p, q)))

    def test_disjunction_is_left_associative(self):
        self.assertEqual(parse_dformula("p | q | r"), Or(Or(p, q), r))

    def test_precedence(self):
        self.assertEqual(parse_dformula("p|q&r"), Or(p, And(q, r)))
        self.assertEqual(parse_dformula("~p & q"), And(Neg(p), q))

    def test_whitespace_is_insignificant(self):
        self.assertEqual(parse_dformula("  ~ ( p&q )"), parse_dformula("~(p & q)"))

    def test_incomplete_formula(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_dformula("p &")
        self.assertGreaterEqual(ctx.exception.position, 1)

    def test_bad_atom(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_dformula("P")

    def test_question_in_declarative_context(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_dformula("p | ?{p, q}")
        self.assertEqual(ctx.exception.message, messages.QUESTION_IN_DFORM)
        self.assertEqual(ctx.exception.position, 4)

    def test_question(self):
        self.assertEqual(parse_sform("?{p, ~q}"), Question.of(p, Neg(q)))

    def test_question_with_one_answer(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_sform("?{p}")
        self.assertEqual(ctx.exception.message, messages.TOO_FEW_ANSWERS)

    def test_question_with_equiform_answers(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_sform("?{p, p}")
        self.assertEqual(ctx.exception.message, messages.EQUIFORM_ANSWERS)

    def test_parse_question_rejects_declaratives(self):
        with self.assertRaises(FormulaSyntaxError):
            parse_question("p | q")

    def test_formula_list(self):
        self.assertEqual(parse_dformulas("~s | p, s | q"), frozenset({Or(Neg(s), p), Or(s, q)}))
        self.assertEqual(parse_dformulas(""), frozenset())

    def test_deep_nesting(self):
        self.assertEqual(parse_dformula("(" * 100 + "p" + ")" * 100), p)
        form = parse_dformula("~" * 100 + "p")
        self.assertEqual(atoms(form), frozenset({"p"}))
        self.assertEqual(to_text(form), "~" * 100 + "p")

    def test_nesting_too_deep(self):
        with self.assertRaises(FormulaSyntaxError) as ctx:
            parse_dformula("(" * 5000 + "p" + ")" * 5000)
        self.assertEqual(ctx.exception.message, messages.NESTING_TOO_DEEP)
        self.assertEqual(parse_dformula("p & q"), And(p, q))


class TestPrinting(unittest.TestCase):
    def test_minimal_parentheses(self):
        self.assertEqual(to_text(Neg(And(p, q))), "~(p & q)")
        self.assertEqual(to_text(Or(Or(p, q), r)), "p | q | r")
        self.assertEqual(to_text(Or(p, Or(q, r))), "p | (q | r)")
        self.assertEqual(to_text(And(Or(p, q), r)), "(p | q) & r")
        self.assertEqual(to_text(Neg(Neg(p))), "~~p")

    def test_grouped(self):
        self.assertEqual(to_text(Or(p, And(q, r)), grouped=True), "p | (q & r)")
        self.assertEqual(to_text(Or(p, Neg(q)), grouped=True), "p | ~q")

    def test_question_text(self):
        self.assertEqual(str(Question.of(Neg(q), p)), "?{p, ~q}")

    def test_round_trip(self):
        rng = random.Random(7)
        for _ in range(1000):
            form = random_formula(rng, 4)
            self.assertEqual(parse_dformula(to_text(form)), form)
            self.assertEqual(parse_dformula(to_text(form, grouped=True)), form)

    def test_question_round_trip(self):
        rng = random.Random(11)
        checked = 0
        while checked < 200:
            answers = {random_formula(rng, 2) for _ in range(rng.randint(2, 4))}
            if len(answers) < 2:
                continue
            question = Question(tuple(answers))
            self.assertEqual(parse_sform(str(question)), question)
            checked += 1


class TestStructure(unittest.TestCase):
    def test_equiform(self):
        self.assertTrue(equiform(Or(p, q), Or(p, q)))
        self.assertFalse(equiform(Or(p, q), Or(q, p)))
        self.assertTrue(equiform(Question.of(p, q), Question.of(q, p)))

    def test_direct_answers(self):
        self.assertEqual(direct_answers(parse_question("?{p, ~q}")), [p, Neg(q)])
        self.assertEqual(direct_answers(parse_question("?{p, q, r}")), [p, q, r])
        self.assertEqual(set(direct_answers(parse_question("?{p & q, ~p}"))), {And(p, q), Neg(p)})

    def test_subformulas(self):
        self.assertEqual(subformulas(Or(Neg(s), p)), {Or(Neg(s), p), Neg(s), s, p})
        self.assertEqual(subformulas(p), {p})
        self.assertEqual(subformulas(Or(And(p, q), p)), {Or(And(p, q), p), And(p, q), p, q})

    def test_atoms(self):
        self.assertEqual(atoms(Neg(And(p, q))), {"p", "q"})
        self.assertEqual(atoms(Question.of(p, Neg(p))), {"p"})
        self.assertEqual(atoms(frozenset()), frozenset())

    def test_disjunction(self):
        self.assertEqual(disjunction([p, q, r]), Or(Or(p, q), r))
        self.assertIsNone(disjunction([]))

    def test_literals(self):
        self.assertTrue(is_literal(p))
        self.assertTrue(is_literal(Neg(p)))
        self.assertFalse(is_literal(Neg(Neg(p))))
        self.assertFalse(is_literal(Question.of(p, q)))

    def test_question_needs_declarative_answers(self):
        with self.assertRaises(TypeError):
            Question.of(p, Question.of(p, q))
