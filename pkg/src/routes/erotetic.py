from src.conf.config import CliConfig
from src.logic.formula import parse_dformulas, parse_question
from src.logic.semantics import evocation_clauses, evocation_witness, sr_clauses
from src.repository.proofs import tree_to_node
from src.routes.common import EXIT_NOT_DERIVABLE, EXIT_OK, assignment_for, emit, parsed
from src.schemas import EroteticResponse
from src.services.prover import Defeated, Provable, prove_eimp, prove_evocation

MODES = ("semantic", "proof", "both")


def _modes(mode: str) -> list:
    return ["semantic", "proof"] if mode == "both" else [mode]


def _proof_response(relation: str, verdict) -> EroteticResponse:
    holds = isinstance(verdict, Provable)
    response = EroteticResponse(relation=relation, mode="proof", holds=holds, verdict=verdict.name)
    if holds:
        response.proof = tree_to_node(verdict.tree)
    elif isinstance(verdict, Defeated):
        response.witness = ", ".join(sorted(map(str, verdict.witness)))
    return response


def _semantic_response(relation: str, clauses: dict, witness=None) -> EroteticResponse:
    violated = [name for name, value in clauses.items() if not value]
    return EroteticResponse(relation=relation, mode="semantic", holds=not violated, clauses=clauses,
                            violated=violated or None, witness=witness)


def _text(response: EroteticResponse) -> str:
    line = f"{response.mode}: {'yes' if response.holds else 'no'}"
    if response.violated:
        line += f" (clause {', '.join(response.violated)} fails)"
    if response.witness:
        line += f", witness {response.witness}"
    if response.verdict and not response.holds:
        line += f", {response.verdict}"
    return line


def _report(config: CliConfig, responses: list) -> int:
    for response in responses:
        emit(config, response, _text(response), EXIT_OK if response.holds else EXIT_NOT_DERIVABLE)
    return EXIT_OK if responses[0].holds else EXIT_NOT_DERIVABLE


def cmd_evokes(args, config: CliConfig) -> int:
    """
    The cmd_evokes function decides whether the premises evoke the question,
    semantically through the two clauses, by proof through the evocation
    sequent with no extra defeaters, or both.

    :param args: Namespace: Holds premises, question and mode
    :param config: CliConfig: Defeater file and output format
    :return: 0 when evocation holds, 4 otherwise
    :doc-author: Trelent
    """
    premises = parsed(parse_dformulas, args.premises, "premises")
    question = parsed(parse_question, args.question, "question")
    responses = []
    for mode in _modes(args.mode):
        if mode == "semantic":
            clauses = evocation_clauses(premises, question)
            witness = evocation_witness(premises, question)
            responses.append(_semantic_response("evokes", clauses, str(witness) if witness else None))
        else:
            verdict = prove_evocation(premises, question, assignment=assignment_for(config))
            responses.append(_proof_response("evokes", verdict))
    return _report(config, responses)


def cmd_implies(args, config: CliConfig) -> int:
    premises = parsed(parse_dformulas, args.premises, "premises")
    question = parsed(parse_question, args.question, "question")
    implied = parsed(parse_question, args.implied, "question")
    responses = []
    for mode in _modes(args.mode):
        if mode == "semantic":
            responses.append(_semantic_response("implies", sr_clauses(premises, question, implied)))
        else:
            verdict = prove_eimp(premises, question, implied, assignment=assignment_for(config))
            responses.append(_proof_response("implies", verdict))
    return _report(config, responses)


def register(subparsers, parents) -> None:
    evokes = subparsers.add_parser("evokes", parents=parents, help="decide erotetic evocation")
    evokes.add_argument("premises", help='comma-separated d-wffs, e.g. "p | q"; "" for none')
    evokes.add_argument("question")
    evokes.add_argument("--mode", choices=MODES, default="semantic")
    evokes.set_defaults(handler=cmd_evokes)

    implies = subparsers.add_parser("implies", parents=parents, help="decide strong regular erotetic implication")
    implies.add_argument("premises")
    implies.add_argument("question")
    implies.add_argument("implied")
    implies.add_argument("--mode", choices=MODES, default="semantic")
    implies.set_defaults(handler=cmd_implies)
