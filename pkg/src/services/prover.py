import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable

from src.conf import messages
from src.logic.calculus import (LEFT, RIGHT, RULE_SIDE, SEARCH_ORDER, UNARY_LOGICAL, ProofTree, RuleId,
                                binary_actives, premise_candidates, recompute_defeaters, unary_actives)
from src.logic.formula import Atom, DFormula, Neg, Question, is_question, sort_key
from src.logic.semantics import declarativize, entails, sr_clauses
from src.logic.sequent import (EMPTY, DefeaterAssignment, DefeaterSet, Sequent, defeat_witness,
                               sequent_defeated)

logger = logging.getLogger(__name__)

# antecedent rules first, so disjunctions split below conjunctions
_BINARY_ORDER = (RuleId.OrL, RuleId.NegAndL, RuleId.AndR, RuleId.NegOrR)


@dataclass(frozen=True)
class SearchBounds:
    max_nodes: int = 20000
    max_context_split: int = 4096
    max_defeater_subsets: int = 256
    max_depth: int = 64

    def __post_init__(self):
        for name in ("max_nodes", "max_context_split", "max_defeater_subsets", "max_depth"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Provable:
    tree: ProofTree
    name: str = field(default="provable", init=False)


@dataclass(frozen=True)
class Defeated:
    witness: frozenset
    name: str = field(default="defeated", init=False)


@dataclass(frozen=True)
class NotDerivable:
    name: str = field(default="not-derivable", init=False)


@dataclass(frozen=True)
class Unknown:
    reason: str = ""
    name: str = field(default="unknown", init=False)


Verdict = Provable | Defeated | NotDerivable | Unknown


class Shape(Enum):
    DECLARATIVE = "declarative"
    EVOCATION = "evocation-shaped"
    EIMP = "eimp-shaped"
    OTHER = "other"


def _weaken(tree: ProofTree, forms: Iterable, side: str) -> ProofTree:
    rule = RuleId.LW if side == LEFT else RuleId.RW
    for form in sorted(forms, key=sort_key):
        sequent = tree.sequent
        if side == LEFT and form not in sequent.antecedent:
            tree = ProofTree(sequent.replace(antecedent=sequent.antecedent | {form}), rule, (tree,))
        elif side == RIGHT and form not in sequent.succedent:
            tree = ProofTree(sequent.replace(succedent=sequent.succedent | {form}), rule, (tree,))
    return tree


def _extend(tree: ProofTree, target: Sequent) -> ProofTree:
    """
    Bring a proof of a subsequent of target up to target: left weakenings, then
    right weakenings, then one DE step per missing defeater member.
    """
    tree = _weaken(tree, target.antecedent - tree.sequent.antecedent, LEFT)
    tree = _weaken(tree, target.succedent - tree.sequent.succedent, RIGHT)
    for member in (target.defeaters - tree.sequent.defeaters).sorted_members():
        defeaters = DefeaterSet(tree.sequent.defeaters.members | {member})
        tree = ProofTree(tree.sequent.replace(defeaters=defeaters), RuleId.DE, (tree,))
    return tree


def _leaf(rule: RuleId, antecedent: Iterable, succedent: Iterable) -> ProofTree:
    return ProofTree(Sequent.of(antecedent, succedent), rule)


def _literal_axiom(antecedent: frozenset, succedent: frozenset) -> ProofTree | None:
    for form in sorted(antecedent & succedent, key=sort_key):
        if isinstance(form, Atom):
            return _leaf(RuleId.Ax1, {form}, {form})
        if isinstance(form, Neg) and isinstance(form.inner, Atom):
            return _leaf(RuleId.Ax2, {form}, {form})
    for form in sorted(antecedent, key=sort_key):
        if isinstance(form, Atom) and Neg(form) in antecedent:
            return _leaf(RuleId.Ax4, {form, Neg(form)}, ())
    for form in sorted(succedent, key=sort_key):
        if isinstance(form, Atom) and Neg(form) in succedent:
            return _leaf(RuleId.Ax3, (), {form, Neg(form)})
    return None


def _side_of(sequent: Sequent, side: str) -> frozenset:
    return sequent.antecedent if side == LEFT else sequent.succedent


def _with_side(sequent: Sequent, side: str, forms: frozenset) -> Sequent:
    return sequent.replace(antecedent=forms) if side == LEFT else sequent.replace(succedent=forms)


@lru_cache(maxsize=1 << 14)
def derive_core(antecedent: frozenset, succedent: frozenset) -> ProofTree:
    """
    The derive_core function builds a derivation, all defeater sets empty, of a
    classically valid declarative sequent Γ' |- Δ' with Γ' and Δ' subsets of
    the given sides. Unused formulas are left out, so the caller weakens at the
    end. The backward reading is the symmetric calculus: literal axioms first,
    then the invertible unary rules, then the binary rules.

    :param antecedent: frozenset: Declarative antecedent
    :param succedent: frozenset: Declarative succedent; antecedent must entail its disjunction
    :return: A ProofTree with empty defeater sets throughout
    :doc-author: Trelent
    """
    leaf = _literal_axiom(antecedent, succedent)
    if leaf is not None:
        return leaf
    sides = {LEFT: antecedent, RIGHT: succedent}
    for rule in UNARY_LOGICAL:
        side = RULE_SIDE[rule]
        for form in sorted(sides[side], key=sort_key):
            actives = unary_actives(rule, form)
            if actives is None:
                continue
            reduced = dict(sides)
            reduced[side] = (sides[side] - {form}) | actives
            sub = derive_core(reduced[LEFT], reduced[RIGHT])
            if _side_of(sub.sequent, side) <= sides[side]:
                return sub
            premise = _weaken(sub, actives - _side_of(sub.sequent, side), side)
            own = _side_of(premise.sequent, side)
            conclusion = _with_side(premise.sequent, side,
                                    (own - actives) | (own & actives & sides[side]) | {form})
            return ProofTree(conclusion, rule, (premise,))
    for rule in _BINARY_ORDER:
        side = RULE_SIDE[rule]
        for form in sorted(sides[side], key=sort_key):
            actives = binary_actives(rule, form)
            if actives is None:
                continue
            subs = []
            for active in actives:
                reduced = dict(sides)
                reduced[side] = (sides[side] - {form}) | {active}
                sub = derive_core(reduced[LEFT], reduced[RIGHT])
                if _side_of(sub.sequent, side) <= sides[side]:
                    return sub
                subs.append(_weaken(sub, {active}, side))
            own = frozenset({form})
            for active, sub in zip(actives, subs):
                sub_side = _side_of(sub.sequent, side)
                own |= (sub_side - {active}) | (sub_side & {active} & sides[side])
            other = _side_of(subs[0].sequent, RIGHT if side == LEFT else LEFT) | \
                _side_of(subs[1].sequent, RIGHT if side == LEFT else LEFT)
            conclusion = Sequent(own, other) if side == LEFT else Sequent(other, own)
            return ProofTree(conclusion, rule, tuple(subs))
    raise ValueError(f"not classically valid: {Sequent(antecedent, succedent)}")


def _valid(sequent: Sequent) -> bool:
    return entails(declarativize(sequent.antecedent), declarativize(sequent.succedent))


def _all_undefeated(tree: ProofTree) -> bool:
    return not any(sequent_defeated(node.sequent) for _, node in tree.nodes())


def _close(tree: ProofTree, target: Sequent, assignment: DefeaterAssignment) -> ProofTree:
    """
    Finish an erotetic construction. Axioms first carry their full S_p; that
    labelling is kept when no node becomes defeated and the computed defeaters
    fit inside the target's, otherwise the empty-leaf tree is used.
    """
    relabelled = recompute_defeaters(tree, assignment)
    if relabelled is not None and relabelled.sequent.defeaters <= target.defeaters \
            and _all_undefeated(relabelled):
        tree = relabelled
    else:
        logger.debug("keeping empty axiom defeaters for %s", target)
    return _extend(tree, target)


def prove_declarative(sequent: Sequent, assignment: DefeaterAssignment | None = None) -> Verdict:
    """
    The prove_declarative function decides a sequent without questions: defeated
    if the antecedent entails some defeater member, not derivable if the
    antecedent does not entail the succedent, and otherwise provable with a tree
    whose internal defeater sets are empty and whose root is reached by DE steps.

    :param sequent: Sequent: A sequent with declarative formulas only
    :param assignment: DefeaterAssignment: Axiom defeater sets, unused by the normal form
    :return: A Verdict
    :doc-author: Trelent
    """
    if not sequent.is_declarative:
        raise ValueError(messages.NOT_DECLARATIVE)
    witness = defeat_witness(sequent.antecedent, sequent.defeaters)
    if witness is not None:
        return Defeated(witness)
    if not entails(sequent.antecedent, sequent.succedent):
        return NotDerivable()
    core = derive_core(sequent.antecedent, sequent.succedent)
    return Provable(_extend(core, sequent))


def prove_evocation(premises: Iterable[DFormula], question: Question, extra: DefeaterSet = EMPTY,
                    assignment: DefeaterAssignment | None = None) -> Verdict:
    """
    The prove_evocation function decides X |-_{extra + [A]} ?{A1..An}. The proof is a
    declarative proof of X |- A1, ..., An followed by QR1 and the closing steps.

    :param premises: Iterable[DFormula]: The declarative antecedent X
    :param question: Question: The evoked question
    :param extra: DefeaterSet: Defeaters beyond the answer singletons
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :return: A Verdict
    :doc-author: Trelent
    """
    assignment = assignment or DefeaterAssignment()
    premises = frozenset(premises)
    answers = frozenset(question.answers)
    target = Sequent(premises, frozenset({question}), extra | DefeaterSet.singletons(answers))
    witness = defeat_witness(target.antecedent, target.defeaters)
    if witness is not None:
        return Defeated(witness)
    if not entails(premises, answers):
        return NotDerivable()
    premise = _weaken(derive_core(premises, answers), answers, RIGHT)
    conclusion = Sequent(premise.sequent.antecedent, frozenset({question}),
                         premise.sequent.defeaters | DefeaterSet.singletons(answers))
    return Provable(_close(ProofTree(conclusion, RuleId.QR1, (premise,)), target, assignment))


def _implied_answers_premise(premises: frozenset, question: Question, implied: Question) -> ProofTree:
    answers_b = frozenset(implied.answers)
    if entails(premises, answers_b):
        left = _weaken(derive_core(premises, answers_b), answers_b, RIGHT)
        return _weaken(left, {question}, LEFT)
    branches = []
    antecedent = frozenset({question})
    succedent = frozenset()
    for answer in question.answers:
        branch = _weaken(derive_core(premises | {answer}, answers_b), {answer}, LEFT)
        branches.append(branch)
        own = branch.sequent.antecedent
        antecedent |= (own - {answer}) | (own & {answer} & premises)
        succedent |= branch.sequent.succedent
    conclusion = Sequent(antecedent, succedent, DefeaterSet.singletons(question.answers))
    return _weaken(ProofTree(conclusion, RuleId.QL1, tuple(branches)), answers_b, RIGHT)


def prove_eimp(premises: Iterable[DFormula], question: Question, implied: Question, extra: DefeaterSet = EMPTY,
               assignment: DefeaterAssignment | None = None) -> Verdict:
    """
    The prove_eimp function decides X, ?{A..} |-_{extra + [A]} ?{B..}. The left
    premise of QR2 proves the implied answers from X and the implying question,
    either by weakening or through QL1; each right premise proves X, B_j |- A_k
    for the first implying answer A_k that B_j yields, recorded in the witness.

    :param premises: Iterable[DFormula]: The declarative antecedent X
    :param question: Question: The implying question
    :param implied: Question: The implied question
    :param extra: DefeaterSet: Defeaters beyond the implying answer singletons
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :return: A Verdict
    :doc-author: Trelent
    """
    assignment = assignment or DefeaterAssignment()
    premises = frozenset(premises)
    target = Sequent(premises | {question}, frozenset({implied}),
                     extra | DefeaterSet.singletons(question.answers))
    witness = defeat_witness(target.antecedent, target.defeaters)
    if witness is not None:
        return Defeated(witness)
    clauses = sr_clauses(premises, question, implied)
    if not (clauses["i"] and clauses["ii"]):
        return NotDerivable()
    left = _implied_answers_premise(premises, question, implied)
    rights, pairs = [], []
    antecedent = frozenset({question}) | (left.sequent.antecedent - {question})
    succedent = frozenset({implied}) | (left.sequent.succedent - set(implied.answers))
    for answer_b in implied.answers:
        answer_a = next(a for a in question.answers if entails(premises | {answer_b}, {a}))
        right = derive_core(premises | {answer_b}, frozenset({answer_a}))
        right = _weaken(_weaken(right, {answer_b}, LEFT), {answer_a}, RIGHT)
        rights.append(right)
        pairs.append((answer_b, answer_a))
        own = right.sequent.antecedent
        antecedent |= (own - {answer_b}) | (own & {answer_b} & premises)
        succedent |= right.sequent.succedent - {answer_a}
    defeaters = DefeaterSet.singletons(question.answers)
    for node in [left] + rights:
        defeaters = defeaters | node.sequent.defeaters
    root = ProofTree(Sequent(antecedent, succedent, defeaters), RuleId.QR2, tuple([left] + rights), tuple(pairs))
    return Provable(_close(root, target, assignment))


def decide_shape(sequent: Sequent) -> Shape:
    """
    The decide_shape function classifies a sequent for dispatch: declarative,
    evocation-shaped (declarative antecedent, one question as succedent, its
    answer singletons among the defeaters), e-implication-shaped (the same with
    exactly one antecedent question whose singletons are among the defeaters),
    or other.

    :param sequent: Sequent: The sequent to classify
    :return: A Shape
    :doc-author: Trelent
    """
    left = [form for form in sequent.antecedent if is_question(form)]
    right = [form for form in sequent.succedent if is_question(form)]
    if not left and not right:
        return Shape.DECLARATIVE
    if len(sequent.succedent) == 1 and len(right) == 1:
        if not left and DefeaterSet.singletons(right[0].answers) <= sequent.defeaters:
            return Shape.EVOCATION
        if len(left) == 1 and DefeaterSet.singletons(left[0].answers) <= sequent.defeaters:
            return Shape.EIMP
    return Shape.OTHER


class ProofSearch:
    """
    Bounded backward search over every rule but Cut. Defeated or classically
    invalid premises are pruned, declarative subgoals are closed by the
    normal-form construction, sequents repeated on a branch are cut, and
    results are memoized per sequent. A failure is final only when no bound or
    branch cut was involved.
    """

    def __init__(self, assignment: DefeaterAssignment, bounds: SearchBounds):
        self.assignment = assignment
        self.bounds = bounds
        self.nodes = 0
        self.cutoffs = 0
        self.reasons = set()
        self.memo = {}

    def _cut(self, reason: str) -> None:
        self.cutoffs += 1
        self.reasons.add(reason)

    def run(self, sequent: Sequent) -> Verdict:
        witness = defeat_witness(sequent.antecedent, sequent.defeaters)
        if witness is not None:
            return Defeated(witness)
        if not _valid(sequent):
            return NotDerivable()
        tree = self.prove(sequent, 0, frozenset())
        logger.debug("search visited %d nodes, %d cutoffs", self.nodes, self.cutoffs)
        if tree is not None:
            return Provable(tree)
        if self.cutoffs:
            return Unknown(", ".join(sorted(self.reasons)))
        return NotDerivable()

    def prove(self, sequent: Sequent, depth: int, branch: frozenset) -> ProofTree | None:
        if sequent in self.memo:
            return self.memo[sequent]
        if sequent_defeated(sequent) or not _valid(sequent):
            return None
        if sequent.is_declarative:
            verdict = prove_declarative(sequent, self.assignment)
            tree = verdict.tree if isinstance(verdict, Provable) else None
            self.memo[sequent] = tree
            return tree
        if sequent in branch:
            self._cut("repeated sequent on branch")
            return None
        if depth >= self.bounds.max_depth:
            self._cut(messages.DEPTH_EXHAUSTED)
            return None
        self.nodes += 1
        if self.nodes > self.bounds.max_nodes:
            self._cut(messages.NODES_EXHAUSTED)
            return None
        before = self.cutoffs
        branch = branch | {sequent}
        for rule in SEARCH_ORDER:
            expansion = premise_candidates(sequent, rule, self.bounds, self.assignment)
            if expansion.truncated:
                self._cut(messages.SPLITS_EXHAUSTED)
            for candidate in expansion.candidates:
                if any(sequent_defeated(p) or not _valid(p) for p in candidate.premises):
                    continue
                subtrees = []
                for premise in candidate.premises:
                    subtree = self.prove(premise, depth + 1, branch)
                    if subtree is None:
                        break
                    subtrees.append(subtree)
                else:
                    tree = ProofTree(sequent, rule, tuple(subtrees), candidate.witness)
                    self.memo[sequent] = tree
                    return tree
        if self.cutoffs == before:
            self.memo[sequent] = None
        return None


def prove_general(sequent: Sequent, assignment: DefeaterAssignment | None = None,
                  bounds: SearchBounds | None = None) -> Verdict:
    return ProofSearch(assignment or DefeaterAssignment(), bounds or SearchBounds()).run(sequent)


def prove(sequent: Sequent, assignment: DefeaterAssignment | None = None,
          bounds: SearchBounds | None = None) -> Verdict:
    """
    The prove function dispatches a sequent to the prover for its shape; the
    constructive provers receive the defeaters beyond the mandated answer
    singletons as their extra set.

    :param sequent: Sequent: The sequent to decide
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :param bounds: SearchBounds: Limits for the generic search
    :return: A Verdict
    :doc-author: Trelent
    """
    assignment = assignment or DefeaterAssignment()
    shape = decide_shape(sequent)
    logger.debug("dispatching %s as %s", sequent, shape.value)
    if shape is Shape.DECLARATIVE:
        return prove_declarative(sequent, assignment)
    if shape is Shape.EVOCATION:
        (question,) = sequent.succedent
        extra = sequent.defeaters - DefeaterSet.singletons(question.answers)
        return prove_evocation(sequent.antecedent, question, extra, assignment)
    if shape is Shape.EIMP:
        (implied,) = sequent.succedent
        (question,) = [form for form in sequent.antecedent if is_question(form)]
        extra = sequent.defeaters - DefeaterSet.singletons(question.answers)
        return prove_eimp(sequent.antecedent - {question}, question, implied, extra, assignment)
    return prove_general(sequent, assignment, bounds)
