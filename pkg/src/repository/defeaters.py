import logging
from pathlib import Path

from src.conf import messages
from src.logic.formula import ATOM, FormulaSyntaxError, parse_with
from src.logic.sequent import MEMBERS, DefeaterAssignment, DefeaterSet, validate_assignment

logger = logging.getLogger(__name__)


class AssignmentFileError(ValueError):
    def __init__(self, message: str, line: int = 0, violations: list | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.message = message
        self.line = line
        self.violations = violations or []


def _parse_line(text: str, line: int) -> tuple:
    atom_text, sep, members_text = text.partition(":")
    if not sep:
        raise AssignmentFileError(messages.MALFORMED_ASSIGNMENT_LINE, line)
    try:
        atom = parse_with(ATOM, atom_text.strip())[0]
        members = parse_with(MEMBERS, members_text.strip())[0]
    except FormulaSyntaxError as err:
        raise AssignmentFileError(f"{messages.MALFORMED_ASSIGNMENT_LINE}: {err.message}", line) from None
    return atom.name, DefeaterSet(frozenset(frozenset(member) for member in members))


def parse_assignment_text(text: str) -> DefeaterAssignment:
    """
    The parse_assignment_text function reads the defeater file format: one line
    per atom, "atom : {lit, lit}, {lit}"; "#" starts a comment and blank lines
    are skipped. The result is validated, so only literal members that do not
    mention their own atom are accepted.

    :param text: str: The file contents
    :return: A validated DefeaterAssignment
    :doc-author: Trelent
    """
    by_atom = {}
    for line, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        name, defeaters = _parse_line(content, line)
        if name in by_atom:
            raise AssignmentFileError(f"{messages.DUPLICATE_ATOM}: {name}", line)
        by_atom[name] = defeaters
    assignment = DefeaterAssignment(by_atom)
    violations = validate_assignment(assignment)
    if violations:
        raise AssignmentFileError(messages.INVALID_ASSIGNMENT, violations=violations)
    logger.debug("loaded defeater sets for %d atoms", len(by_atom))
    return assignment


def load_assignment(path: str | None) -> DefeaterAssignment:
    if not path:
        return DefeaterAssignment()
    file = Path(path)
    if not file.is_file():
        raise AssignmentFileError(f"{messages.DEFEATER_FILE_NOT_FOUND}: {path}")
    return parse_assignment_text(file.read_text(encoding="utf-8"))
