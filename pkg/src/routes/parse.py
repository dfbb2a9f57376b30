from src.conf.config import CliConfig
from src.logic.formula import And, Atom, Neg, Or, Question, parse_sform, to_text
from src.logic.sequent import Sequent, parse_sequent
from src.routes.common import EXIT_OK, emit, parsed
from src.schemas import ParseResponse


def ast(form) -> dict:
    if isinstance(form, Atom):
        return {"atom": form.name}
    if isinstance(form, Neg):
        return {"neg": ast(form.inner)}
    if isinstance(form, And):
        return {"and": [ast(form.left), ast(form.right)]}
    if isinstance(form, Or):
        return {"or": [ast(form.left), ast(form.right)]}
    return {"question": [ast(answer) for answer in form.answers]}


def _sequent_ast(sequent: Sequent) -> dict:
    return {
        "antecedent": [ast(form) for form in sorted(sequent.antecedent, key=str)],
        "defeaters": [[ast(form) for form in sorted(member, key=str)] for member in sequent.defeaters],
        "succedent": [ast(form) for form in sorted(sequent.succedent, key=str)],
    }


def _grouped_sequent(sequent: Sequent) -> str:
    def side(forms):
        return ", ".join(sorted(to_text(form, grouped=True) for form in forms))
    parts = [side(sequent.antecedent), "|-", sequent.defeaters.text, side(sequent.succedent)]
    return " ".join(part for part in parts if part)


def cmd_parse(args, config: CliConfig) -> int:
    """
    The cmd_parse function parses a formula, question or sequent (anything with a
    turnstile) and prints its canonical form and its grouping.

    :param args: Namespace: Holds the expression text
    :param config: CliConfig: Output settings
    :return: The exit code
    :doc-author: Trelent
    """
    text = args.expression
    if "|-" in text:
        sequent = parsed(parse_sequent, text, "sequent")
        response = ParseResponse(kind="sequent", text=str(sequent), grouped=_grouped_sequent(sequent),
                                 tree=_sequent_ast(sequent))
    else:
        form = parsed(parse_sform, text, "formula")
        kind = "question" if isinstance(form, Question) else "dformula"
        response = ParseResponse(kind=kind, text=to_text(form), grouped=to_text(form, grouped=True), tree=ast(form))
    emit(config, response, f"{response.text}\ngrouping: {response.grouped}")
    return EXIT_OK


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("parse", parents=parents, help="parse and print a formula or sequent")
    parser.add_argument("expression")
    parser.set_defaults(handler=cmd_parse)
