import logging
from pathlib import Path

from pydantic import ValidationError

from src.conf import messages
from src.logic.calculus import ProofTree, RuleId
from src.logic.formula import FormulaSyntaxError, parse_dformula
from src.logic.sequent import parse_sequent
from src.schemas import ProofNode

logger = logging.getLogger(__name__)


class ProofFileError(ValueError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{message}: {path}" if path else message)
        self.message = message
        self.path = path


def tree_to_node(tree: ProofTree) -> ProofNode:
    witness = {str(b): str(a) for b, a in tree.witness} or None
    return ProofNode(sequent=str(tree.sequent), rule=tree.rule.value, witness=witness,
                     premises=[tree_to_node(premise) for premise in tree.premises])


def node_to_tree(node: ProofNode, path: str = "root") -> ProofTree:
    """
    The node_to_tree function rebuilds a ProofTree from its JSON node, parsing
    every sequent and witness formula. Errors name the node by its dotted path.

    :param node: ProofNode: The decoded JSON node
    :param path: str: The dotted path of node, used in error messages
    :return: The ProofTree
    :doc-author: Trelent
    """
    try:
        rule = RuleId(node.rule)
    except ValueError:
        raise ProofFileError(f"{messages.UNKNOWN_RULE} {node.rule!r} at {path}") from None
    try:
        sequent = parse_sequent(node.sequent)
        witness = tuple((parse_dformula(b), parse_dformula(a)) for b, a in (node.witness or {}).items())
    except FormulaSyntaxError as err:
        raise ProofFileError(f"{messages.MALFORMED_PROOF} at {path}: {err}") from None
    prefix = "" if path == "root" else path + "."
    premises = tuple(node_to_tree(premise, f"{prefix}{index}") for index, premise in enumerate(node.premises))
    return ProofTree(sequent, rule, premises, witness)


def dumps_tree(tree: ProofTree) -> str:
    return tree_to_node(tree).json(exclude_none=True, indent=2)


def loads_tree(text: str) -> ProofTree:
    try:
        node = ProofNode.parse_raw(text)
    except ValidationError as err:
        raise ProofFileError(f"{messages.MALFORMED_PROOF}: {err.errors()[0]['msg']}") from None
    return node_to_tree(node)


def save_proof(tree: ProofTree, path: str) -> None:
    Path(path).write_text(dumps_tree(tree) + "\n", encoding="utf-8")
    logger.debug("wrote proof with %d nodes to %s", tree.size, path)


def load_proof(path: str) -> ProofTree:
    file = Path(path)
    if not file.is_file():
        raise ProofFileError(messages.PROOF_FILE_NOT_FOUND, path)
    return loads_tree(file.read_text(encoding="utf-8"))
