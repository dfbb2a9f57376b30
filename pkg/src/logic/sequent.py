import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

import pyparsing as pp

from src.conf import messages
from src.logic.formula import (COMMA, DFORM, DFORMULA_TYPES, LBRACE, RBRACE, SFORM, Atom, DFormula, Neg,
                               SForm, is_declarative, is_literal, parse_with, sort_key)
from src.logic.semantics import declarativize, entails

logger = logging.getLogger(__name__)


def _member_text(member: frozenset) -> str:
    return "{" + ", ".join(sorted(map(str, member))) + "}"


def _forms_text(forms: Iterable[SForm]) -> str:
    return ", ".join(sorted(map(str, forms)))


@dataclass(frozen=True)
class DefeaterSet:
    """
    A set of nonempty sets of declarative formulas. A member fires when the
    antecedent entails the disjunction of its formulas.
    """
    members: frozenset = frozenset()

    def __post_init__(self):
        members = frozenset(frozenset(member) for member in self.members)
        for member in members:
            if not member:
                raise ValueError(messages.EMPTY_DEFEATER_MEMBER)
            if not all(isinstance(form, DFORMULA_TYPES) for form in member):
                raise ValueError(messages.NON_DECLARATIVE_MEMBER)
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: Iterable[DFormula]) -> "DefeaterSet":
        return cls(frozenset(frozenset(member) for member in members))

    @classmethod
    def singletons(cls, answers: Iterable[DFormula]) -> "DefeaterSet":
        return cls(frozenset(frozenset({answer}) for answer in answers))

    def sorted_members(self) -> list:
        return sorted(self.members, key=_member_text)

    def __or__(self, other: "DefeaterSet") -> "DefeaterSet":
        return DefeaterSet(self.members | other.members)

    def __sub__(self, other: "DefeaterSet") -> "DefeaterSet":
        return DefeaterSet(self.members - other.members)

    def __le__(self, other: "DefeaterSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "DefeaterSet") -> bool:
        return self.members < other.members

    def __iter__(self):
        return iter(self.sorted_members())

    def __len__(self):
        return len(self.members)

    def __contains__(self, member):
        return frozenset(member) in self.members

    def __bool__(self):
        return bool(self.members)

    @cached_property
    def text(self) -> str:
        return "[" + ", ".join(_member_text(member) for member in self.sorted_members()) + "]"

    def __str__(self):
        return self.text


EMPTY = DefeaterSet()


@dataclass(frozen=True)
class Sequent:
    antecedent: frozenset
    succedent: frozenset
    defeaters: DefeaterSet = EMPTY

    def __post_init__(self):
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))
        object.__setattr__(self, "succedent", frozenset(self.succedent))

    @classmethod
    def of(cls, antecedent: Iterable[SForm] = (), succedent: Iterable[SForm] = (),
           defeaters: DefeaterSet = EMPTY) -> "Sequent":
        return cls(frozenset(antecedent), frozenset(succedent), defeaters)

    def replace(self, antecedent=None, succedent=None, defeaters=None) -> "Sequent":
        return Sequent(
            self.antecedent if antecedent is None else antecedent,
            self.succedent if succedent is None else succedent,
            self.defeaters if defeaters is None else defeaters,
        )

    @property
    def is_declarative(self) -> bool:
        return all(is_declarative(form) for form in self.antecedent | self.succedent)

    @cached_property
    def text(self) -> str:
        parts = [_forms_text(self.antecedent), "|-", self.defeaters.text, _forms_text(self.succedent)]
        return " ".join(part for part in parts if part)

    def __str__(self):
        return self.text


@dataclass
class AssignmentViolation:
    atom: str
    formula: DFormula
    reason: str


@dataclass
class DefeaterAssignment:
    """
    Axiom defeater sets S_p by atom name; absent atoms have the empty set.
    """
    by_atom: Mapping[str, DefeaterSet] = field(default_factory=dict)

    def for_atom(self, name: str) -> DefeaterSet:
        return self.by_atom.get(name, EMPTY)

    def __str__(self):
        return "\n".join(f"{name} : {', '.join(map(_member_text, defeaters.sorted_members()))}"
                         for name, defeaters in sorted(self.by_atom.items()))


@lru_cache(maxsize=1 << 16)
def _member_entailed(premises: frozenset, member: frozenset) -> bool:
    return entails(premises, member)


def defeat_witness(antecedent: Iterable[SForm], defeaters: DefeaterSet,
                   prefer: Iterable[frozenset] = ()) -> frozenset | None:
    """
    The defeat_witness function finds a defeater member entailed by the
    declarativized antecedent. Members listed in prefer are tried first, the rest
    in printed order.

    :param antecedent: Iterable[SForm]: The antecedent, questions allowed
    :param defeaters: DefeaterSet: The defeater set to test
    :param prefer: Iterable[frozenset]: Members to report first when several fire
    :return: The first entailed member, or None when the sequent is undefeated
    :doc-author: Trelent
    """
    if not defeaters:
        return None
    premises = declarativize(antecedent)
    preferred = [frozenset(member) for member in prefer if frozenset(member) in defeaters.members]
    for member in preferred + [member for member in defeaters.sorted_members() if member not in preferred]:
        if _member_entailed(premises, member):
            return member
    return None


def is_defeated(antecedent: Iterable[SForm], defeaters: DefeaterSet) -> bool:
    return defeat_witness(antecedent, defeaters) is not None


def compatible(antecedent: Iterable[SForm], defeaters: DefeaterSet) -> bool:
    return not is_defeated(antecedent, defeaters)


def sequent_defeated(sequent: Sequent) -> bool:
    return is_defeated(sequent.antecedent, sequent.defeaters)


def validate_assignment(assignment: DefeaterAssignment) -> list:
    """
    The validate_assignment function lists every offending (atom, formula) pair of
    an assignment: members must be literals other than p and ~p.

    :param assignment: DefeaterAssignment: The assignment to validate
    :return: A list of AssignmentViolation, empty when the assignment is valid
    :doc-author: Trelent
    """
    violations = []
    for name in sorted(assignment.by_atom):
        own = {Atom(name), Neg(Atom(name))}
        for member in assignment.by_atom[name].sorted_members():
            for form in sorted(member, key=sort_key):
                if not is_literal(form):
                    violations.append(AssignmentViolation(name, form, messages.NON_LITERAL))
                elif form in own:
                    violations.append(AssignmentViolation(name, form, messages.SELF_REFERENCE))
    return violations


MEMBER = pp.Group(LBRACE + DFORM + pp.ZeroOrMore(COMMA + DFORM) + RBRACE)
MEMBERS = pp.Group(pp.Optional(MEMBER + pp.ZeroOrMore(COMMA + MEMBER)))
FORMS = pp.Group(pp.Optional(SFORM + pp.ZeroOrMore(COMMA + SFORM)))
DEFEATERS = pp.Group(pp.Optional(pp.Suppress("[") + MEMBERS + pp.Suppress("]")))
SEQUENT = FORMS + pp.Suppress("|-") + DEFEATERS + FORMS


def _defeater_set(members: pp.ParseResults) -> DefeaterSet:
    return DefeaterSet(frozenset(frozenset(member) for member in members))


def parse_defeater_members(text: str) -> DefeaterSet:
    return _defeater_set(parse_with(MEMBERS, text)[0])


def parse_sequent(text: str) -> Sequent:
    """
    The parse_sequent function reads the sequent syntax
    "forms? |- ([members?])? forms?"; an omitted bracket is the empty defeater set.

    :param text: str: The sequent text
    :return: The parsed Sequent
    :doc-author: Trelent
    """
    antecedent, defeaters, succedent = parse_with(SEQUENT, text)
    members = defeaters[0] if len(defeaters) else []
    return Sequent(frozenset(antecedent), frozenset(succedent), _defeater_set(members))
