from src.conf.config import CliConfig
from src.logic.calculus import NotADerivation, Paraproof, check_tree, format_path
from src.repository.proofs import ProofFileError, load_proof
from src.routes.common import CLASSIFICATION_EXIT, EXIT_USAGE, CommandError, assignment_for, emit
from src.schemas import ClassificationResponse


def cmd_check(args, config: CliConfig) -> int:
    """
    The cmd_check function classifies a proof file as a proof, a paraproof
    (listing the defeated nodes) or not a derivation (naming the first bad node).

    :param args: Namespace: Holds the proof file path
    :param config: CliConfig: Defeater file, strict_axioms and output format
    :return: 0 for a proof, 3 for a paraproof, 4 for a non-derivation
    :doc-author: Trelent
    """
    try:
        tree = load_proof(args.proof)
    except ProofFileError as err:
        raise CommandError(EXIT_USAGE, str(err))
    result = check_tree(tree, assignment_for(config), config.strict_axioms)
    if isinstance(result, NotADerivation):
        response = ClassificationResponse(classification=result.name, path=format_path(result.path),
                                          reason=result.reason)
        text = f"{result.name} at {response.path}: {result.reason}"
    elif isinstance(result, Paraproof):
        response = ClassificationResponse(classification=result.name,
                                          defeated=[format_path(path) for path in result.defeated])
        text = f"{result.name}: defeated at {', '.join(response.defeated)}"
    else:
        response = ClassificationResponse(classification=result.name)
        text = result.name
    code = CLASSIFICATION_EXIT[result.name]
    emit(config, response, text, code)
    return code


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("check", parents=parents, help="classify a proof file")
    parser.add_argument("proof", metavar="FILE")
    parser.set_defaults(handler=cmd_check)
