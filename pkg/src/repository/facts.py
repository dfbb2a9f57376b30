import logging
from pathlib import Path
from typing import Iterable, Iterator

from src.logic.formula import FormulaSyntaxError, parse_dformula

logger = logging.getLogger(__name__)


def read_facts(lines: Iterable[str]) -> Iterator[tuple]:
    """
    The read_facts function walks a fact stream, one d-wff per line. Blank lines
    and "#" comments are skipped; a line that does not parse is yielded with its
    error instead of a formula so the caller can report it and go on.

    :param lines: Iterable[str]: The stream, e.g. an open file or a list of strings
    :return: An iterator of (line number, formula or None, error or None)
    :doc-author: Trelent
    """
    for number, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            yield number, parse_dformula(text), None
        except FormulaSyntaxError as err:
            logger.debug("fact stream line %d: %s", number, err)
            yield number, None, err


def load_facts(path: str) -> list:
    with Path(path).open(encoding="utf-8") as file:
        return list(read_facts(file))
