import functools
import logging
import sys
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

import pyparsing as pp

from src.conf import messages

pp.ParserElement.enable_packrat()
sys.setrecursionlimit(max(sys.getrecursionlimit(), 3000))

logger = logging.getLogger(__name__)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


_OR, _AND, _NEG, _ATOM = 1, 2, 3, 4


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    inner: "DFormula"

    @cached_property
    def text(self) -> str:
        return to_text(self)

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class And:
    left: "DFormula"
    right: "DFormula"

    @cached_property
    def text(self) -> str:
        return to_text(self)

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class Or:
    left: "DFormula"
    right: "DFormula"

    @cached_property
    def text(self) -> str:
        return to_text(self)

    def __str__(self):
        return self.text


DFormula = Union[Atom, Neg, And, Or]
DFORMULA_TYPES = (Atom, Neg, And, Or)


@dataclass(frozen=True)
class Question:
    """
    An e-wff ?{A1, ..., An}. Answers are stored sorted by their printed form,
    so two questions with the same answer set are equiform.
    """
    answers: tuple

    def __post_init__(self):
        answers = tuple(self.answers)
        for answer in answers:
            if not isinstance(answer, DFORMULA_TYPES):
                raise TypeError(f"direct answers must be declarative formulas, got {answer!r}")
        if len(answers) < 2:
            raise ValueError(messages.TOO_FEW_ANSWERS)
        if len(set(answers)) != len(answers):
            raise ValueError(messages.EQUIFORM_ANSWERS)
        object.__setattr__(self, "answers", tuple(sorted(answers, key=str)))

    @classmethod
    def of(cls, *answers: DFormula) -> "Question":
        return cls(tuple(answers))

    @cached_property
    def text(self) -> str:
        return to_text(self)

    def __str__(self):
        return self.text


SForm = Union[DFormula, Question]


def sort_key(form: SForm) -> str:
    return str(form)


def is_question(form: SForm) -> bool:
    return isinstance(form, Question)


def is_declarative(form: SForm) -> bool:
    return isinstance(form, DFORMULA_TYPES)


def is_literal(form: SForm) -> bool:
    return isinstance(form, Atom) or (isinstance(form, Neg) and isinstance(form.inner, Atom))


def _precedence(form: DFormula) -> int:
    if isinstance(form, Or):
        return _OR
    if isinstance(form, And):
        return _AND
    if isinstance(form, Neg):
        return _NEG
    return _ATOM


def _render(form: DFormula, grouped: bool) -> str:
    if isinstance(form, Atom):
        return form.name
    if isinstance(form, Neg):
        inner = _render(form.inner, grouped)
        if _precedence(form.inner) < _NEG:
            inner = f"({inner})"
        return "~" + inner
    op = " | " if isinstance(form, Or) else " & "
    own = _precedence(form)
    left = _render(form.left, grouped)
    right = _render(form.right, grouped)
    if _precedence(form.left) < own or (grouped and _precedence(form.left) < _NEG):
        left = f"({left})"
    # left associative: an equal-precedence right child keeps its parentheses
    if _precedence(form.right) <= own or (grouped and _precedence(form.right) < _NEG):
        right = f"({right})"
    return left + op + right


def to_text(form: SForm, grouped: bool = False) -> str:
    """
    The to_text function prints a formula in the concrete syntax.
    Parentheses are minimal under the precedence ~ > & > | with left associativity,
    unless grouped is set, in which case every binary subformula of a binary
    formula is parenthesised so the parse structure is visible.

    :param form: SForm: The formula to print
    :param grouped: bool: Parenthesise every nested binary subformula
    :return: The printed formula
    :doc-author: Trelent
    """
    if isinstance(form, Question):
        return "?{" + ", ".join(_render(answer, grouped) for answer in form.answers) + "}"
    return _render(form, grouped)


def equiform(a: SForm, b: SForm) -> bool:
    return a == b


def direct_answers(question: Question) -> list:
    return list(question.answers)


def disjunction(forms: Iterable[DFormula]) -> DFormula | None:
    """
    The disjunction function folds formulas into a left-nested disjunction,
    in the order given. It returns None for an empty input.

    :param forms: Iterable[DFormula]: The disjuncts
    :return: The disjunction, or None
    :doc-author: Trelent
    """
    forms = list(forms)
    if not forms:
        return None
    return functools.reduce(Or, forms)


def subformulas(form: DFormula) -> frozenset:
    if isinstance(form, Atom):
        return frozenset({form})
    if isinstance(form, Neg):
        return subformulas(form.inner) | {form}
    return subformulas(form.left) | subformulas(form.right) | {form}


def atoms(form) -> frozenset:
    """
    The atoms function collects the atom names occurring in a formula, a question
    or any iterable of them.

    :param form: A formula, a question, or an iterable of formulas
    :return: A frozenset of atom names
    :doc-author: Trelent
    """
    if isinstance(form, Atom):
        return frozenset({form.name})
    if isinstance(form, Neg):
        return atoms(form.inner)
    if isinstance(form, (And, Or)):
        return atoms(form.left) | atoms(form.right)
    if isinstance(form, Question):
        return atoms(form.answers)
    names = frozenset()
    for item in form:
        names |= atoms(item)
    return names


def _fold(connective):
    def action(tokens):
        return functools.reduce(connective, tokens)
    return action


def _make_question(s, loc, tokens):
    try:
        return Question(tuple(tokens))
    except ValueError as err:
        raise pp.ParseFatalException(s, loc, str(err))


LPAR, RPAR, LBRACE, RBRACE, COMMA = map(pp.Suppress, "(){},")

ATOM = pp.Regex(r"[a-z][a-z0-9_]*").set_parse_action(lambda tokens: Atom(tokens[0]))
DFORM = pp.Forward()
UNARY = pp.Forward()
NEGATION = (pp.Suppress("~") + UNARY).set_parse_action(lambda tokens: Neg(tokens[0]))
UNARY <<= NEGATION | (LPAR + DFORM + RPAR) | ATOM
CONJUNCTION = (UNARY + pp.ZeroOrMore(pp.Suppress("&") + UNARY)).set_parse_action(_fold(And))
# "|" never swallows the turnstile "|-"
DISJUNCTION = (CONJUNCTION + pp.ZeroOrMore(pp.Suppress(pp.Regex(r"\|(?!-)")) + CONJUNCTION)) \
    .set_parse_action(_fold(Or))
DFORM <<= DISJUNCTION
QUESTION = (pp.Suppress("?") + LBRACE + DFORM + pp.ZeroOrMore(COMMA + DFORM) + RBRACE) \
    .set_parse_action(_make_question)
SFORM = QUESTION | DFORM
DFORM_LIST = pp.Optional(DFORM + pp.ZeroOrMore(COMMA + DFORM))


def parse_with(element: pp.ParserElement, text: str) -> pp.ParseResults:
    """
    The parse_with function runs a grammar element over the whole text and turns
    pyparsing failures into FormulaSyntaxError with the failing position.

    :param element: pp.ParserElement: The grammar element to match
    :param text: str: The input text
    :return: The parse results
    :doc-author: Trelent
    """
    try:
        return element.parse_string(text, parse_all=True)
    except pp.ParseBaseException as err:
        logger.debug("parse failure in %r: %s", text, err)
        raise FormulaSyntaxError(err.msg, err.loc) from None
    except RecursionError:
        logger.debug("nesting too deep in %d characters of input", len(text))
        raise FormulaSyntaxError(messages.NESTING_TOO_DEEP, 0) from None


def parse_dformula(text: str) -> DFormula:
    if "?" in text:
        raise FormulaSyntaxError(messages.QUESTION_IN_DFORM, text.index("?"))
    return parse_with(DFORM, text)[0]


def parse_sform(text: str) -> SForm:
    marks = [index for index, char in enumerate(text) if char == "?"]
    # only a leading "?" may open a question
    nested = [index for index in marks if text[:index].strip()]
    if nested:
        raise FormulaSyntaxError(messages.QUESTION_IN_DFORM, nested[0])
    return parse_with(SFORM, text)[0]


def parse_question(text: str) -> Question:
    form = parse_sform(text)
    if not isinstance(form, Question):
        raise FormulaSyntaxError("Expected a question", 0)
    return form


def parse_dformulas(text: str) -> frozenset:
    """
    The parse_dformulas function parses a comma-separated list of declarative
    formulas. Blank text is the empty set.

    :param text: str: The list text, e.g. "~s | p, s | q"
    :return: A frozenset of DFormula
    :doc-author: Trelent
    """
    if "?" in text:
        raise FormulaSyntaxError(messages.QUESTION_IN_DFORM, text.index("?"))
    return frozenset(parse_with(DFORM_LIST, text))
