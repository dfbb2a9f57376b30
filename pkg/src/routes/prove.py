import logging

from src.conf.config import CliConfig
from src.logic.calculus import render_tree
from src.logic.sequent import DefeaterSet, parse_sequent
from src.repository.proofs import save_proof, tree_to_node
from src.routes.common import VERDICT_EXIT, assignment_for, emit, parsed
from src.schemas import VerdictResponse
from src.services.prover import Defeated, Provable, Unknown, prove

logger = logging.getLogger(__name__)


def verdict_response(verdict) -> VerdictResponse:
    if isinstance(verdict, Provable):
        return VerdictResponse(verdict=verdict.name, proof=tree_to_node(verdict.tree))
    if isinstance(verdict, Defeated):
        return VerdictResponse(verdict=verdict.name, witness=sorted(map(str, verdict.witness)))
    if isinstance(verdict, Unknown):
        return VerdictResponse(verdict=verdict.name, reason=verdict.reason)
    return VerdictResponse(verdict=verdict.name)


def verdict_text(verdict) -> str:
    if isinstance(verdict, Provable):
        return f"{verdict.name}\n{render_tree(verdict.tree)}"
    if isinstance(verdict, Defeated):
        return f"{verdict.name}: witness {DefeaterSet.of(verdict.witness).text[1:-1]}"
    if isinstance(verdict, Unknown):
        return f"{verdict.name}: {verdict.reason}"
    return verdict.name


def cmd_prove(args, config: CliConfig) -> int:
    """
    The cmd_prove function decides a sequent, prints the verdict and, for a
    provable sequent, the proof; with --emit-proof the proof JSON is written to
    a file as well.

    :param args: Namespace: Holds the sequent text and emit_proof
    :param config: CliConfig: Defeater file, bounds and output format
    :return: The exit code of the verdict
    :doc-author: Trelent
    """
    sequent = parsed(parse_sequent, args.sequent, "sequent")
    assignment = assignment_for(config)
    verdict = prove(sequent, assignment, config.bounds())
    logger.debug("%s: %s", sequent, verdict.name)
    if args.emit_proof and isinstance(verdict, Provable):
        save_proof(verdict.tree, args.emit_proof)
    code = VERDICT_EXIT[verdict.name]
    emit(config, verdict_response(verdict), verdict_text(verdict), code)
    return code


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("prove", parents=parents, help="decide a sequent and print a proof")
    parser.add_argument("sequent")
    parser.add_argument("--emit-proof", metavar="FILE", help="write the proof JSON to FILE")
    parser.set_defaults(handler=cmd_prove)
