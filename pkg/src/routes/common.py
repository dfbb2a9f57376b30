import json
import logging
from typing import Callable

from pydantic import BaseModel

from src.conf.config import CliConfig
from src.logic.formula import FormulaSyntaxError
from src.logic.sequent import DefeaterAssignment
from src.repository.defeaters import AssignmentFileError, load_assignment
from src.schemas import AssignmentErrorResponse, AssignmentViolationModel

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEFEATED = 3
EXIT_NOT_DERIVABLE = 4
EXIT_UNKNOWN = 5

VERDICT_EXIT = {
    "provable": EXIT_OK,
    "defeated": EXIT_DEFEATED,
    "not-derivable": EXIT_NOT_DERIVABLE,
    "unknown": EXIT_UNKNOWN,
}

CLASSIFICATION_EXIT = {
    "proof": EXIT_OK,
    "paraproof": EXIT_DEFEATED,
    "not-a-derivation": EXIT_NOT_DERIVABLE,
}

RESET = "\033[0m"
EXIT_COLORS = {
    EXIT_OK: "\033[92m",
    EXIT_DEFEATED: "\033[93m",
    EXIT_NOT_DERIVABLE: "\033[91m",
    EXIT_UNKNOWN: "\033[2m",
}


class CommandError(Exception):
    def __init__(self, exit_code: int, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail


def parsed(parser: Callable, text: str, what: str):
    """
    The parsed function runs a parser over command-line text and turns syntax
    errors into a usage CommandError that shows the failing position.

    :param parser: Callable: The parse function, e.g. parse_sequent
    :param text: str: The argument text
    :param what: str: What the argument is, for the message
    :return: The parsed value
    :doc-author: Trelent
    """
    try:
        return parser(text)
    except FormulaSyntaxError as err:
        pointer = " " * err.position + "^"
        raise CommandError(EXIT_USAGE, f"Invalid {what}: {err.message} at position {err.position}\n"
                                       f"  {text}\n  {pointer}")


def assignment_for(config: CliConfig) -> DefeaterAssignment:
    try:
        return load_assignment(config.defeaters_file)
    except AssignmentFileError as err:
        if config.output_format == "json":
            violations = [AssignmentViolationModel(atom=v.atom, formula=str(v.formula), reason=v.reason)
                          for v in err.violations]
            response = AssignmentErrorResponse(error=err.message, line=err.line or None, violations=violations)
            raise CommandError(EXIT_USAGE, response.json(exclude_none=True))
        lines = [str(err)]
        lines += [f"  {v.atom}: {v.formula} ({v.reason})" for v in err.violations]
        raise CommandError(EXIT_USAGE, "\n".join(lines))


def paint(config: CliConfig, text: str, exit_code: int | None) -> str:
    """
    The paint function colours the first line of a text report by the exit code
    it stands for. Without the color setting, or for an uncoloured code, the
    text comes back unchanged.

    :param config: CliConfig: Holds the color toggle
    :param text: str: The report
    :param exit_code: int | None: The outcome the report describes
    :return: The report, possibly with ANSI colour codes
    :doc-author: Trelent
    """
    if not config.color or exit_code not in EXIT_COLORS:
        return text
    head, newline, rest = text.partition("\n")
    return f"{EXIT_COLORS[exit_code]}{head}{RESET}{newline}{rest}"


def emit(config: CliConfig, model: BaseModel, text: str, exit_code: int | None = None) -> None:
    if config.output_format == "json":
        print(json.dumps(model.dict(exclude_none=True), sort_keys=False))
    else:
        print(paint(config, text, exit_code))
