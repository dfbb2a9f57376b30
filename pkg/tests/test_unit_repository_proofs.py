import json
import tempfile
import unittest
from pathlib import Path

from src.conf import messages
from src.logic.calculus import Proof, RuleId, check_tree
from src.logic.formula import parse_dformulas, parse_question
from src.logic.sequent import parse_sequent
from src.repository.defeaters import parse_assignment_text
from src.repository.proofs import (ProofFileError, dumps_tree, load_proof, loads_tree, node_to_tree, save_proof,
                                   tree_to_node)
from src.schemas import ProofNode
from src.services.prover import prove_eimp
from tests.conftest import INQUIRY_DEFEATERS


class TestProofDocuments(unittest.TestCase):
    def setUp(self):
        self.assignment = parse_assignment_text(INQUIRY_DEFEATERS)
        verdict = prove_eimp(parse_dformulas("~s | p, s | q"), parse_question("?{p, q}"), parse_question("?{s, ~s}"),
                             parse_sequent("|- [{r}, {t}, {u, v}]").defeaters, self.assignment)
        self.tree = verdict.tree

    def test_node_fields(self):
        node = tree_to_node(self.tree)
        self.assertEqual(node.rule, "QR2")
        self.assertEqual(node.witness, {"s": "p", "~s": "q"})
        self.assertEqual(len(node.premises), 3)
        self.assertIsNone(node.premises[0].witness)

    def test_json_shape(self):
        document = json.loads(dumps_tree(self.tree))
        self.assertEqual(document["sequent"], str(self.tree.sequent))
        self.assertNotIn("witness", document["premises"][0])

    def test_reload_keeps_classification(self):
        tree = loads_tree(dumps_tree(self.tree))
        self.assertEqual(tree, self.tree)
        self.assertEqual(check_tree(tree, self.assignment), Proof())

    def test_unknown_rule_names_path(self):
        node = ProofNode(sequent="p |- p", rule="Ax1",
                         premises=[ProofNode(sequent="p |- p", rule="Ax1"),
                                   ProofNode(sequent="p |- p", rule="Weird")])
        with self.assertRaises(ProofFileError) as ctx:
            node_to_tree(node)
        self.assertIn("'Weird' at 1", str(ctx.exception))

    def test_bad_sequent(self):
        with self.assertRaises(ProofFileError) as ctx:
            loads_tree('{"sequent": "p |- [{}] p", "rule": "Ax1"}')
        self.assertIn(messages.MALFORMED_PROOF, str(ctx.exception))

    def test_bad_json(self):
        with self.assertRaises(ProofFileError):
            loads_tree("{")
        with self.assertRaises(ProofFileError):
            loads_tree('{"rule": "Ax1"}')

    def test_files(self):
        with tempfile.TemporaryDirectory() as directory:
            path = str(Path(directory) / "inquiry.proof.json")
            save_proof(self.tree, path)
            self.assertEqual(load_proof(path), self.tree)
        with self.assertRaises(ProofFileError) as ctx:
            load_proof(path)
        self.assertEqual(ctx.exception.message, messages.PROOF_FILE_NOT_FOUND)

    def test_leaf_has_no_premises(self):
        tree = loads_tree('{"sequent": "q |- [{u, v}] q", "rule": "Ax1"}')
        self.assertIs(tree.rule, RuleId.Ax1)
        self.assertEqual(tree.premises, ())
