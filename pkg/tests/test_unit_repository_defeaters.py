import tempfile
import unittest
from pathlib import Path

from src.conf import messages
from src.logic.formula import Atom, Neg
from src.logic.sequent import EMPTY, DefeaterSet
from src.repository.defeaters import AssignmentFileError, load_assignment, parse_assignment_text
from tests.conftest import INQUIRY_DEFEATERS


class TestParseAssignment(unittest.TestCase):
    def test_inquiry_file(self):
        assignment = parse_assignment_text(INQUIRY_DEFEATERS)
        self.assertEqual(assignment.for_atom("s"), DefeaterSet.of({Atom("r")}))
        self.assertEqual(assignment.for_atom("q"), DefeaterSet.of({Atom("u"), Atom("v")}))
        self.assertEqual(assignment.for_atom("w"), EMPTY)

    def test_negative_literals(self):
        assignment = parse_assignment_text("p : {~q}, {r, ~s}  # two members\n")
        self.assertEqual(assignment.for_atom("p"), DefeaterSet.of({Neg(Atom("q"))}, {Atom("r"), Neg(Atom("s"))}))

    def test_empty_text(self):
        self.assertEqual(parse_assignment_text("\n# nothing\n").for_atom("p"), EMPTY)

    def test_missing_colon(self):
        with self.assertRaises(AssignmentFileError) as ctx:
            parse_assignment_text("s : {r}\np {t}\n")
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.message, messages.MALFORMED_ASSIGNMENT_LINE)

    def test_bad_member(self):
        with self.assertRaises(AssignmentFileError) as ctx:
            parse_assignment_text("p : {}\n")
        self.assertTrue(ctx.exception.message.startswith(messages.MALFORMED_ASSIGNMENT_LINE))

    def test_duplicate_atom(self):
        with self.assertRaises(AssignmentFileError) as ctx:
            parse_assignment_text("p : {t}\np : {r}\n")
        self.assertEqual(str(ctx.exception), f"line 2: {messages.DUPLICATE_ATOM}: p")

    def test_invalid_members(self):
        with self.assertRaises(AssignmentFileError) as ctx:
            parse_assignment_text("p : {~p}\nq : {r & s}\n")
        self.assertEqual(ctx.exception.message, messages.INVALID_ASSIGNMENT)
        reasons = sorted(violation.reason for violation in ctx.exception.violations)
        self.assertEqual(reasons, sorted([messages.SELF_REFERENCE, messages.NON_LITERAL]))


class TestLoadAssignment(unittest.TestCase):
    def test_no_path(self):
        self.assertEqual(load_assignment(None).for_atom("p"), EMPTY)

    def test_missing_file(self):
        with self.assertRaises(AssignmentFileError) as ctx:
            load_assignment("/nonexistent/inquiry.defeaters")
        self.assertIn(messages.DEFEATER_FILE_NOT_FOUND, str(ctx.exception))

    def test_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "inquiry.defeaters"
            path.write_text(INQUIRY_DEFEATERS, encoding="utf-8")
            assignment = load_assignment(str(path))
        self.assertEqual(assignment.for_atom("p"), DefeaterSet.of({Atom("t")}))
