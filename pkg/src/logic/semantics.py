import itertools
import logging
from functools import lru_cache
from typing import Iterable, Mapping

from pysat.formula import IDPool
from pysat.solvers import Glucose3

from src.conf import messages
from src.conf.config import settings
from src.logic.formula import (And, Atom, DFormula, Neg, Or, Question, SForm, atoms, disjunction,
                               is_question)

logger = logging.getLogger(__name__)

Valuation = Mapping[str, bool]


class MissingAtomError(KeyError):
    pass


def evaluate(form: DFormula, valuation: Valuation) -> bool:
    """
    The evaluate function computes the classical truth value of a formula.

    :param form: DFormula: The formula to evaluate
    :param valuation: Valuation: Truth values for (at least) the atoms of form
    :return: The truth value
    :doc-author: Trelent
    """
    if isinstance(form, Atom):
        try:
            return valuation[form.name]
        except KeyError:
            raise MissingAtomError(f"{messages.MISSING_ATOM} {form.name}") from None
    if isinstance(form, Neg):
        return not evaluate(form.inner, valuation)
    if isinstance(form, And):
        return evaluate(form.left, valuation) and evaluate(form.right, valuation)
    return evaluate(form.left, valuation) or evaluate(form.right, valuation)


def _encode(form: DFormula, pool: IDPool, solver: Glucose3) -> int:
    # Tseitin literal for form; negation reuses the inner variable
    if isinstance(form, Atom):
        return pool.id(form.name)
    if isinstance(form, Neg):
        return -_encode(form.inner, pool, solver)
    left = _encode(form.left, pool, solver)
    right = _encode(form.right, pool, solver)
    var = pool.id(("gate", form))
    if isinstance(form, And):
        solver.add_clause([-var, left])
        solver.add_clause([-var, right])
        solver.add_clause([var, -left, -right])
    else:
        solver.add_clause([-var, left, right])
        solver.add_clause([var, -left])
        solver.add_clause([var, -right])
    return var


def satisfiable(forms: Iterable[DFormula]) -> bool:
    """
    The satisfiable function decides joint satisfiability with the Glucose3 SAT
    solver over a Tseitin encoding of the formulas.

    :param forms: Iterable[DFormula]: The formulas to satisfy together
    :return: True if some valuation makes every formula true
    :doc-author: Trelent
    """
    pool = IDPool()
    with Glucose3() as solver:
        for form in forms:
            solver.add_clause([_encode(form, pool, solver)])
        return solver.solve()


def entails_sat(premises: Iterable[DFormula], conclusions: Iterable[DFormula]) -> bool:
    goal = disjunction(sorted(conclusions, key=str))
    forms = list(premises)
    if goal is not None:
        forms.append(Neg(goal))
    return not satisfiable(forms)


def _entails_truth_table(premises: frozenset, conclusions: frozenset) -> bool:
    names = sorted(atoms(premises | conclusions))
    for values in itertools.product((False, True), repeat=len(names)):
        valuation = dict(zip(names, values))
        if all(evaluate(form, valuation) for form in premises) and \
                not any(evaluate(form, valuation) for form in conclusions):
            return False
    return True


@lru_cache(maxsize=1 << 16)
def _entails(premises: frozenset, conclusions: frozenset) -> bool:
    if len(atoms(premises | conclusions)) <= settings.truth_table_max_atoms:
        return _entails_truth_table(premises, conclusions)
    logger.debug("entailment over more than %d atoms goes to the SAT solver", settings.truth_table_max_atoms)
    return entails_sat(premises, conclusions)


def entails(premises: Iterable[DFormula], conclusions: Iterable[DFormula]) -> bool:
    """
    The entails function decides X |= \\/Y: every valuation satisfying all premises
    satisfies some conclusion. With no conclusions this is unsatisfiability of
    the premises. Small queries use truth tables, larger ones the SAT solver.

    :param premises: Iterable[DFormula]: The set X
    :param conclusions: Iterable[DFormula]: The set Y, read disjunctively
    :return: True if X entails the disjunction of Y
    :doc-author: Trelent
    """
    return _entails(frozenset(premises), frozenset(conclusions))


def answer_disjunction(question: Question) -> DFormula:
    return disjunction(question.answers)


def declarativize(forms: Iterable[SForm]) -> frozenset:
    return frozenset(answer_disjunction(form) if is_question(form) else form for form in forms)


def evocation_clauses(premises: Iterable[DFormula], question: Question) -> dict:
    premises = frozenset(premises)
    return {
        "i": entails(premises, question.answers),
        "ii": not any(entails(premises, {answer}) for answer in question.answers),
    }


def evocation_witness(premises: Iterable[DFormula], question: Question) -> DFormula | None:
    premises = frozenset(premises)
    for answer in question.answers:
        if entails(premises, {answer}):
            return answer
    return None


def evokes(premises: Iterable[DFormula], question: Question) -> bool:
    return all(evocation_clauses(premises, question).values())


def sr_clauses(premises: Iterable[DFormula], question: Question, implied: Question) -> dict:
    """
    The sr_clauses function evaluates the three clauses of strong regular erotetic
    implication separately:
    (i) every answer of question with the premises entails the disjunction of implied's answers;
    (ii) every answer of implied with the premises entails some answer of question;
    (iii) the premises alone entail no answer of question.

    :param premises: Iterable[DFormula]: The declarative premises X
    :param question: Question: The implying question
    :param implied: Question: The implied question
    :return: A dict mapping "i", "ii", "iii" to booleans
    :doc-author: Trelent
    """
    premises = frozenset(premises)
    return {
        "i": all(entails(premises | {answer}, implied.answers) for answer in question.answers),
        "ii": all(any(entails(premises | {b}, {a}) for a in question.answers) for b in implied.answers),
        "iii": not any(entails(premises, {answer}) for answer in question.answers),
    }


def implies_sr(premises: Iterable[DFormula], question: Question, implied: Question) -> bool:
    return all(sr_clauses(premises, question, implied).values())
