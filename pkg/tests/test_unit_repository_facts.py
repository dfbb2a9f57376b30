import tempfile
import unittest
from pathlib import Path

from src.conf import messages
from src.logic.formula import Atom, parse_dformula
from src.repository.facts import load_facts, read_facts


class TestReadFacts(unittest.TestCase):
    def test_lines(self):
        result = list(read_facts(["~s | p\n", "\n", "# comment\n", "s | q  # trailing\n"]))
        self.assertEqual(result, [(1, parse_dformula("~s | p"), None), (4, parse_dformula("s | q"), None)])

    def test_errors_do_not_stop_reading(self):
        result = list(read_facts(["p &", "?{p, q}", "r"]))
        self.assertEqual([number for number, _, _ in result], [1, 2, 3])
        self.assertIsNone(result[0][1])
        self.assertIsNotNone(result[0][2])
        self.assertIsNotNone(result[1][2])
        self.assertEqual(result[2][1], Atom("r"))

    def test_deep_lines(self):
        result = list(read_facts(["~" * 100 + "p", "(" * 5000 + "q" + ")" * 5000, "s"]))
        self.assertEqual(len(result), 3)
        self.assertEqual(result[0][1], parse_dformula("~" * 100 + "p"))
        self.assertEqual(result[1][2].message, messages.NESTING_TOO_DEEP)
        self.assertEqual(result[2][1], Atom("s"))

    def test_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "inquiry.facts"
            path.write_text("w\ns\n", encoding="utf-8")
            result = load_facts(str(path))
        self.assertEqual([form for _, form, _ in result], [Atom("w"), Atom("s")])
