import logging
from dataclasses import dataclass, field, replace
from typing import Iterable

from src.conf import messages
from src.logic.calculus import ProofTree, RuleId
from src.logic.formula import DFormula, Neg, Question, atoms, sort_key, subformulas
from src.logic.semantics import implies_sr
from src.logic.sequent import EMPTY, DefeaterAssignment, DefeaterSet, Sequent, defeat_witness
from src.schemas import TranscriptEvent
from src.services.prover import Provable, prove_eimp

logger = logging.getLogger(__name__)

SUBQUESTION = "subquestion"
FACT = "fact"
ANSWERED = "answered"
EXCEPTION = "exception"
SUBQUESTION_RESOLVED = "subquestion-resolved"
ERROR = "error"
STATUS = "status"


@dataclass
class ActiveInquiry:
    subquestion: Question
    sequent: Sequent
    proof: ProofTree
    resolved: bool = False


@dataclass(frozen=True)
class Answered:
    answer: DFormula
    name: str = field(default="answered", init=False)


@dataclass(frozen=True)
class ExceptionFound:
    member: frozenset
    name: str = field(default="exception", init=False)


@dataclass(frozen=True)
class DefeatReport:
    index: int
    witness: frozenset
    kind: Answered | ExceptionFound


@dataclass
class AgentState:
    principal: Question
    facts: frozenset = frozenset()
    assignment: DefeaterAssignment = field(default_factory=DefeaterAssignment)
    active: list = field(default_factory=list)
    log: list = field(default_factory=list)
    exceptions: DefeaterSet = EMPTY
    answered: bool = False


def _candidates(principal: Question, facts: Iterable[DFormula]) -> list:
    own = frozenset()
    for answer in principal.answers:
        own |= subformulas(answer)
    pool = frozenset()
    for fact in facts:
        pool |= subformulas(fact)
    found = set()
    for form in pool - own:
        # ?{~A, ~~A} and ?{A, ~A} ask the same thing
        base = form.inner if isinstance(form, Neg) else form
        if base in own:
            continue
        found.add(base)
    return sorted(found, key=sort_key)


def strategy_defeaters(principal: Question, subquestion: Question, assignment: DefeaterAssignment,
                       exceptions: DefeaterSet = EMPTY) -> DefeaterSet:
    """
    The strategy_defeaters function collects the defeater set of an inquiry
    sequent: the assigned sets of every atom in the subquestion and in the
    principal question's answers, the supplied exception members, and the
    principal answer singletons.

    :param principal: Question: The question under inquiry
    :param subquestion: Question: The implied yes/no question
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :param exceptions: DefeaterSet: Extra exception members
    :return: The DefeaterSet of the inquiry sequent
    :doc-author: Trelent
    """
    defeaters = exceptions | DefeaterSet.singletons(principal.answers)
    for name in sorted(atoms(subquestion) | atoms(principal)):
        defeaters = defeaters | assignment.for_atom(name)
    return defeaters


def find_subquestions(principal: Question, facts: Iterable[DFormula], assignment: DefeaterAssignment | None = None,
                      exceptions: DefeaterSet = EMPTY) -> list:
    """
    The find_subquestions function looks for the yes/no questions ?{A, ~A} the
    facts license asking, A ranging over subformulas of the facts that are not
    subformulas of the principal answers. A candidate is kept when the facts
    and the principal strongly regularly imply it and the inquiry sequent has
    an undefeated proof.

    :param principal: Question: The question under inquiry
    :param facts: Iterable[DFormula]: The declarative knowledge base
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :param exceptions: DefeaterSet: Extra exception members for every sequent
    :return: A list of (Question, Sequent, ProofTree) ordered by question text
    :doc-author: Trelent
    """
    assignment = assignment or DefeaterAssignment()
    facts = frozenset(facts)
    found = []
    for candidate in _candidates(principal, facts):
        subquestion = Question.of(candidate, Neg(candidate))
        if not implies_sr(facts, principal, subquestion):
            continue
        defeaters = strategy_defeaters(principal, subquestion, assignment, exceptions)
        extra = defeaters - DefeaterSet.singletons(principal.answers)
        verdict = prove_eimp(facts, principal, subquestion, extra, assignment)
        if not isinstance(verdict, Provable):
            logger.debug("dropping %s: %s", subquestion, verdict.name)
            continue
        found.append((subquestion, verdict.tree.sequent, verdict.tree))
    return sorted(found, key=lambda item: item[0].text)


def _event(state: AgentState, event: str, detail: str, step: int) -> None:
    logger.debug("%s [%d] %s", event, step, detail)
    state.log.append(TranscriptEvent(event=event, detail=detail, step=step))


def _member_text(member: frozenset) -> str:
    return DefeaterSet.of(member).text[1:-1]


def start_agent(principal: Question, facts: Iterable[DFormula] = (), assignment: DefeaterAssignment | None = None,
                exceptions: DefeaterSet = EMPTY) -> AgentState:
    state = AgentState(principal, frozenset(facts), assignment or DefeaterAssignment(), exceptions=exceptions)
    for subquestion, sequent, proof in find_subquestions(principal, state.facts, state.assignment, exceptions):
        state.active.append(ActiveInquiry(subquestion, sequent, proof))
        _event(state, SUBQUESTION, f"{subquestion} from {sequent}", 0)
    if not state.active:
        _event(state, STATUS, messages.STATUS_NO_SUBQUESTIONS, 0)
    return state


def classify_defeat(principal: Question, witness: frozenset) -> Answered | ExceptionFound:
    if len(witness) == 1:
        (form,) = witness
        if form in principal.answers:
            return Answered(form)
    return ExceptionFound(witness)


def agent_step(state: AgentState, fact: DFormula, step: int = 0) -> tuple:
    """
    The agent_step function adds a fact to the knowledge base and, by left
    weakening, to every active inquiry sequent. Sequents that become defeated
    are dropped and reported, as an answer when the entailed member is a
    principal answer singleton and as an exception otherwise. Subquestions
    whose answers now follow are logged once as resolved.

    :param state: AgentState: The agent before the fact
    :param fact: DFormula: The incoming fact
    :param step: int: The position of the fact in its stream
    :return: The new AgentState and the list of DefeatReport
    :doc-author: Trelent
    """
    previous = [replace(inquiry) for inquiry in state.active]
    state = replace(state, facts=state.facts | {fact}, active=[], log=list(state.log))
    _event(state, FACT, str(fact), step)
    prefer = [frozenset({answer}) for answer in state.principal.answers]
    reports = []
    for index, inquiry in enumerate(previous):
        if fact not in inquiry.sequent.antecedent:
            sequent = inquiry.sequent.replace(antecedent=inquiry.sequent.antecedent | {fact})
            inquiry.sequent, inquiry.proof = sequent, ProofTree(sequent, RuleId.LW, (inquiry.proof,))
        sequent = inquiry.sequent
        if not inquiry.resolved:
            member = defeat_witness(sequent.antecedent, DefeaterSet.singletons(inquiry.subquestion.answers))
            if member is not None:
                inquiry.resolved = True
                (answer,) = member
                _event(state, SUBQUESTION_RESOLVED, f"{inquiry.subquestion} by {answer}", step)
        witness = defeat_witness(sequent.antecedent, sequent.defeaters, prefer)
        if witness is None:
            state.active.append(inquiry)
            continue
        report = DefeatReport(index, witness, classify_defeat(state.principal, witness))
        reports.append(report)
        if isinstance(report.kind, Answered):
            state.answered = True
            _event(state, ANSWERED, str(report.kind.answer), step)
        else:
            _event(state, EXCEPTION, _member_text(witness), step)
    return state, reports


def finish_status(state: AgentState) -> str:
    if state.active:
        return messages.STATUS_AWAITING
    return messages.STATUS_ANSWERED if state.answered else messages.STATUS_EXHAUSTED


def run_agent(principal: Question, facts: Iterable[DFormula], assignment: DefeaterAssignment | None,
              entries: Iterable[tuple], exceptions: DefeaterSet = EMPTY) -> list:
    """
    The run_agent function runs the inquiry loop over a fact stream and returns
    the transcript: raised subquestions, ingested facts, per-line parse errors,
    defeat reports and a final status. Reading stops once no inquiry is active.

    :param principal: Question: The question under inquiry
    :param facts: Iterable[DFormula]: Initial facts
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :param entries: Iterable[tuple]: The numbered fact stream, as read_facts yields it
    :param exceptions: DefeaterSet: Extra exception members
    :return: A list of TranscriptEvent
    :doc-author: Trelent
    """
    state = start_agent(principal, facts, assignment, exceptions)
    if not state.active:
        return state.log
    step = 0
    for step, fact, error in entries:
        if error is not None:
            _event(state, ERROR, f"line {step}: {error.message} (at position {error.position})", step)
            continue
        state, _ = agent_step(state, fact, step)
        if not state.active:
            break
    _event(state, STATUS, finish_status(state), step)
    return state.log
