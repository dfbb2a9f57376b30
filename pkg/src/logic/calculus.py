import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from src.conf import messages
from src.logic.formula import And, Atom, Neg, Or, Question, is_declarative, is_question, sort_key
from src.logic.sequent import EMPTY, DefeaterAssignment, DefeaterSet, Sequent, sequent_defeated

if TYPE_CHECKING:
    from src.services.prover import SearchBounds

logger = logging.getLogger(__name__)


class RuleId(Enum):
    Ax1 = "Ax1"
    Ax2 = "Ax2"
    Ax3 = "Ax3"
    Ax4 = "Ax4"
    LW = "LW"
    RW = "RW"
    DE = "DE"
    AndL = "AndL"
    AndR = "AndR"
    OrL = "OrL"
    OrR = "OrR"
    NegNegL = "NegNegL"
    NegNegR = "NegNegR"
    NegAndL = "NegAndL"
    NegAndR = "NegAndR"
    NegOrL = "NegOrL"
    NegOrR = "NegOrR"
    QR1 = "QR1"
    QL1 = "QL1"
    QR2 = "QR2"
    QL2 = "QL2"
    Cut = "Cut"

    @property
    def is_extension(self) -> bool:
        return self in EXTENSION_RULES


AXIOMS = (RuleId.Ax1, RuleId.Ax2, RuleId.Ax3, RuleId.Ax4)
UNARY_LOGICAL = (RuleId.AndL, RuleId.OrR, RuleId.NegNegL, RuleId.NegNegR, RuleId.NegAndR, RuleId.NegOrL)
BINARY_LOGICAL = (RuleId.AndR, RuleId.OrL, RuleId.NegAndL, RuleId.NegOrR)
EROTETIC = (RuleId.QR1, RuleId.QL1, RuleId.QR2, RuleId.QL2)
STRUCTURAL = (RuleId.LW, RuleId.RW, RuleId.DE)
EXTENSION_RULES = frozenset({RuleId.Cut})
SEARCH_ORDER = AXIOMS + UNARY_LOGICAL + BINARY_LOGICAL + EROTETIC + STRUCTURAL

LEFT, RIGHT = "antecedent", "succedent"

# principal side of each d-wff rule
RULE_SIDE = {
    RuleId.AndL: LEFT, RuleId.OrR: RIGHT, RuleId.NegNegL: LEFT, RuleId.NegNegR: RIGHT,
    RuleId.NegAndR: RIGHT, RuleId.NegOrL: LEFT,
    RuleId.AndR: RIGHT, RuleId.OrL: LEFT, RuleId.NegAndL: LEFT, RuleId.NegOrR: RIGHT,
}

FIXED_ARITY = {rule: 0 for rule in AXIOMS}
FIXED_ARITY.update({rule: 1 for rule in UNARY_LOGICAL + STRUCTURAL + (RuleId.QR1,)})
FIXED_ARITY.update({rule: 2 for rule in BINARY_LOGICAL + (RuleId.Cut,)})


class RuleMismatch(Exception):
    def __init__(self, rule: RuleId, element: str, detail: str = ""):
        text = f"{rule.value}: {element}"
        if detail:
            text += f" ({detail})"
        super().__init__(text)
        self.rule = rule
        self.element = element
        self.detail = detail


@dataclass(frozen=True)
class ProofTree:
    sequent: Sequent
    rule: RuleId
    premises: tuple = ()
    witness: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "witness", tuple(self.witness))

    def witness_map(self) -> dict:
        return dict(self.witness)

    def nodes(self, path: tuple = ()) -> Iterator[tuple]:
        yield path, self
        for index, premise in enumerate(self.premises):
            yield from premise.nodes(path + (index,))

    @property
    def size(self) -> int:
        return sum(1 for _ in self.nodes())


@dataclass(frozen=True)
class NotADerivation:
    path: tuple
    reason: str
    name: str = field(default="not-a-derivation", init=False)


@dataclass(frozen=True)
class Paraproof:
    defeated: tuple
    name: str = field(default="paraproof", init=False)


@dataclass(frozen=True)
class Proof:
    name: str = field(default="proof", init=False)


Classification = NotADerivation | Paraproof | Proof


@dataclass(frozen=True)
class Candidate:
    premises: tuple
    witness: tuple = ()


@dataclass
class Expansion:
    candidates: list
    truncated: bool = False


def format_path(path: Sequence[int]) -> str:
    return ".".join(map(str, path)) if path else "root"


def _side(sequent: Sequent, side: str) -> frozenset:
    return sequent.antecedent if side == LEFT else sequent.succedent


def _other(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


def _questions(forms: Iterable) -> list:
    return sorted((form for form in forms if is_question(form)), key=sort_key)


def _context_ok(conclusion_side: frozenset, principal: frozenset, premise_side: frozenset,
                actives: frozenset) -> bool:
    # some context G has G + principal == conclusion side and G + actives == premise side
    if not principal <= conclusion_side or not actives <= premise_side:
        return False
    lower = (conclusion_side - principal) | (premise_side - actives)
    return lower <= (conclusion_side & premise_side)


def _between(lower: frozenset, side: frozenset, upper: frozenset) -> bool:
    return lower <= side <= upper


def _union(sets: Iterable[frozenset]) -> frozenset:
    return frozenset().union(*sets)


def _union_defeaters(premises: Iterable[Sequent]) -> DefeaterSet:
    return DefeaterSet(_union(premise.defeaters.members for premise in premises))


def unary_actives(rule: RuleId, form) -> frozenset | None:
    """
    The unary_actives function gives the premise formulas a unary d-wff rule
    produces from its principal formula, or None when form has the wrong shape.

    :param rule: RuleId: One of the unary logical rules
    :param form: The candidate principal formula
    :return: The active formulas of the premise, or None
    :doc-author: Trelent
    """
    if rule in (RuleId.AndL, RuleId.OrR):
        wanted = And if rule is RuleId.AndL else Or
        if isinstance(form, wanted):
            return frozenset({form.left, form.right})
        return None
    if not isinstance(form, Neg):
        return None
    inner = form.inner
    if rule in (RuleId.NegNegL, RuleId.NegNegR) and isinstance(inner, Neg):
        return frozenset({inner.inner})
    if rule is RuleId.NegAndR and isinstance(inner, And):
        return frozenset({Neg(inner.left), Neg(inner.right)})
    if rule is RuleId.NegOrL and isinstance(inner, Or):
        return frozenset({Neg(inner.left), Neg(inner.right)})
    return None


def binary_actives(rule: RuleId, form) -> tuple | None:
    if rule is RuleId.AndR and isinstance(form, And):
        return form.left, form.right
    if rule is RuleId.OrL and isinstance(form, Or):
        return form.left, form.right
    if isinstance(form, Neg):
        inner = form.inner
        if rule is RuleId.NegAndL and isinstance(inner, And):
            return Neg(inner.left), Neg(inner.right)
        if rule is RuleId.NegOrR and isinstance(inner, Or):
            return Neg(inner.left), Neg(inner.right)
    return None


def axiom_atom(rule: RuleId, sequent: Sequent) -> str | None:
    """
    The axiom_atom function matches a sequent against the shape of an axiom,
    ignoring defeaters, and returns the atom p of the instance.

    :param rule: RuleId: One of Ax1, Ax2, Ax3, Ax4
    :param sequent: Sequent: The candidate leaf
    :return: The atom name, or None if the shape does not match
    :doc-author: Trelent
    """
    antecedent, succedent = sequent.antecedent, sequent.succedent
    if rule is RuleId.Ax1:
        if antecedent == succedent and len(antecedent) == 1:
            (form,) = antecedent
            if isinstance(form, Atom):
                return form.name
        return None
    if rule is RuleId.Ax2:
        if antecedent == succedent and len(antecedent) == 1:
            (form,) = antecedent
            if isinstance(form, Neg) and isinstance(form.inner, Atom):
                return form.inner.name
        return None
    pair = succedent if rule is RuleId.Ax3 else antecedent
    rest = antecedent if rule is RuleId.Ax3 else succedent
    if rest or len(pair) != 2:
        return None
    for form in pair:
        if isinstance(form, Atom) and Neg(form) in pair:
            return form.name
    return None


def _check_axiom(rule, conclusion, assignment, strict_axioms):
    atom = axiom_atom(rule, conclusion)
    if atom is None:
        raise RuleMismatch(rule, messages.NO_PRINCIPAL)
    if rule is RuleId.Ax4:
        if conclusion.defeaters:
            raise RuleMismatch(rule, messages.AXIOM_DEFEATERS, "Ax4 carries the empty defeater set")
        return
    allowed = assignment.for_atom(atom)
    ok = conclusion.defeaters == allowed if strict_axioms else conclusion.defeaters <= allowed
    if not ok:
        raise RuleMismatch(rule, messages.AXIOM_DEFEATERS, f"S_{atom} = {allowed}")


def _check_weakening(rule, premise, conclusion):
    side = LEFT if rule is RuleId.LW else RIGHT
    if premise.defeaters != conclusion.defeaters:
        raise RuleMismatch(rule, messages.DEFEATERS_MISMATCH)
    if _side(premise, _other(side)) != _side(conclusion, _other(side)):
        raise RuleMismatch(rule, messages.SUCCEDENT_MISMATCH if side == LEFT else messages.ANTECEDENT_MISMATCH)
    added = _side(conclusion, side) - _side(premise, side)
    if not _side(premise, side) <= _side(conclusion, side) or len(added) > 1:
        raise RuleMismatch(rule, messages.ANTECEDENT_MISMATCH if side == LEFT else messages.SUCCEDENT_MISMATCH)


def _check_de(premise, conclusion):
    if premise.antecedent != conclusion.antecedent:
        raise RuleMismatch(RuleId.DE, messages.ANTECEDENT_MISMATCH)
    if premise.succedent != conclusion.succedent:
        raise RuleMismatch(RuleId.DE, messages.SUCCEDENT_MISMATCH)
    if not premise.defeaters <= conclusion.defeaters:
        raise RuleMismatch(RuleId.DE, messages.DEFEATERS_MISMATCH)


def _side_element(side: str) -> str:
    return messages.ANTECEDENT_MISMATCH if side == LEFT else messages.SUCCEDENT_MISMATCH


def _check_unary(rule, premise, conclusion):
    side = RULE_SIDE[rule]
    if premise.defeaters != conclusion.defeaters:
        raise RuleMismatch(rule, messages.DEFEATERS_MISMATCH)
    if _side(premise, _other(side)) != _side(conclusion, _other(side)):
        raise RuleMismatch(rule, _side_element(_other(side)))
    found = False
    for form in sorted(_side(conclusion, side), key=sort_key):
        actives = unary_actives(rule, form)
        if actives is None:
            continue
        found = True
        if _context_ok(_side(conclusion, side), frozenset({form}), _side(premise, side), actives):
            return
    raise RuleMismatch(rule, _side_element(side) if found else messages.NO_PRINCIPAL)


def _check_binary(rule, premises, conclusion):
    side = RULE_SIDE[rule]
    if conclusion.defeaters != _union_defeaters(premises):
        raise RuleMismatch(rule, messages.DEFEATERS_MISMATCH)
    if _side(conclusion, _other(side)) != _union(_side(p, _other(side)) for p in premises):
        raise RuleMismatch(rule, _side_element(_other(side)))
    found = False
    conclusion_side = _side(conclusion, side)
    for form in sorted(conclusion_side, key=sort_key):
        actives = binary_actives(rule, form)
        if actives is None:
            continue
        found = True
        for first, second in (premises, premises[::-1]):
            a, b = actives
            first_side, second_side = _side(first, side), _side(second, side)
            if a not in first_side or b not in second_side:
                continue
            lower = frozenset({form}) | (first_side - {a}) | (second_side - {b})
            upper = frozenset({form}) | first_side | second_side
            if _between(lower, conclusion_side, upper):
                return
    raise RuleMismatch(rule, _side_element(side) if found else messages.NO_PRINCIPAL)


def _check_qr1(premise, conclusion):
    rule = RuleId.QR1
    if not all(is_declarative(form) for form in conclusion.antecedent):
        raise RuleMismatch(rule, messages.PROVISO_VIOLATED)
    if premise.antecedent != conclusion.antecedent:
        raise RuleMismatch(rule, messages.ANTECEDENT_MISMATCH)
    questions = _questions(conclusion.succedent)
    if not questions:
        raise RuleMismatch(rule, messages.NO_PRINCIPAL)
    element = messages.DEFEATERS_MISMATCH
    for question in questions:
        if conclusion.defeaters != premise.defeaters | DefeaterSet.singletons(question.answers):
            continue
        element = messages.SUCCEDENT_MISMATCH
        if _context_ok(conclusion.succedent, frozenset({question}), premise.succedent,
                       frozenset(question.answers)):
            return
    raise RuleMismatch(rule, element)


def _check_ql1(premises, conclusion):
    rule = RuleId.QL1
    if not all(is_declarative(form) for form in conclusion.succedent) or \
            not all(is_declarative(form) for p in premises for form in p.succedent):
        raise RuleMismatch(rule, messages.SUCCEDENT_MISMATCH, "succedents must be declarative")
    questions = _questions(conclusion.antecedent)
    if not questions:
        raise RuleMismatch(rule, messages.NO_PRINCIPAL)
    if conclusion.succedent != _union(p.succedent for p in premises):
        raise RuleMismatch(rule, messages.SUCCEDENT_MISMATCH)
    element = messages.ARITY_MISMATCH
    for question in questions:
        answers = question.answers
        if len(premises) != len(answers):
            continue
        element = messages.DEFEATERS_MISMATCH
        if conclusion.defeaters != _union_defeaters(premises) | DefeaterSet.singletons(answers):
            continue
        element = messages.ANTECEDENT_MISMATCH
        for ordered in itertools.permutations(premises):
            if not all(answer in p.antecedent for answer, p in zip(answers, ordered)):
                continue
            lower = frozenset({question}) | _union(p.antecedent - {a} for a, p in zip(answers, ordered))
            upper = frozenset({question}) | _union(p.antecedent for p in ordered)
            if _between(lower, conclusion.antecedent, upper):
                return
    raise RuleMismatch(rule, element)


def _check_witness(rule, witness, implying: Question, implied: Question):
    mapping = dict(witness)
    if len(mapping) != len(witness) or set(mapping) != set(implied.answers) or \
            not set(mapping.values()) <= set(implying.answers):
        raise RuleMismatch(rule, messages.WITNESS_MISMATCH)
    return mapping


def _check_e2(rule, premises, conclusion, witness):
    pairs = [(qa, qb) for qa in _questions(conclusion.antecedent) for qb in _questions(conclusion.succedent)]
    if not pairs:
        raise RuleMismatch(rule, messages.NO_PRINCIPAL)
    element = messages.ARITY_MISMATCH
    for implying, implied in pairs:
        n, m = len(implying.answers), len(implied.answers)
        left_count = 1 if rule is RuleId.QR2 else n
        if len(premises) != left_count + m:
            continue
        try:
            mapping = _check_witness(rule, witness, implying, implied)
        except RuleMismatch:
            element = messages.WITNESS_MISMATCH
            continue
        element = messages.DEFEATERS_MISMATCH
        if conclusion.defeaters != _union_defeaters(premises) | DefeaterSet.singletons(implying.answers):
            continue
        element = messages.ANTECEDENT_MISMATCH
        if _match_e2(rule, premises, conclusion, implying, implied, mapping, left_count):
            return
    raise RuleMismatch(rule, element)


def _match_e2(rule, premises, conclusion, implying, implied, mapping, left_count) -> bool:
    lefts, rights = premises[:left_count], premises[left_count:]
    answers_b = implied.answers
    for left_order in itertools.permutations(lefts):
        if rule is RuleId.QR2:
            (p0,) = left_order
            if implying not in p0.antecedent or not set(answers_b) <= p0.succedent:
                continue
            left_ant = [p0.antecedent - {implying}]
            left_succ = [p0.succedent - set(answers_b)]
        else:
            if not all(a in p.antecedent and implied in p.succedent for a, p in zip(implying.answers, left_order)):
                continue
            left_ant = [p.antecedent - {a} for a, p in zip(implying.answers, left_order)]
            left_succ = [p.succedent - {implied} for p in left_order]
        for right_order in itertools.permutations(rights):
            if not all(b in p.antecedent and mapping[b] in p.succedent for b, p in zip(answers_b, right_order)):
                continue
            ant_lower = frozenset({implying}) | _union(left_ant) | \
                _union(p.antecedent - {b} for b, p in zip(answers_b, right_order))
            ant_upper = frozenset({implying}) | _union(p.antecedent for p in premises)
            succ_lower = frozenset({implied}) | _union(left_succ) | \
                _union(p.succedent - {mapping[b]} for b, p in zip(answers_b, right_order))
            succ_upper = frozenset({implied}) | _union(p.succedent for p in premises)
            if _between(ant_lower, conclusion.antecedent, ant_upper) and \
                    _between(succ_lower, conclusion.succedent, succ_upper):
                return True
    return False


def _check_cut(premises, conclusion):
    rule = RuleId.Cut
    if conclusion.defeaters != _union_defeaters(premises):
        raise RuleMismatch(rule, messages.DEFEATERS_MISMATCH)
    found = False
    for first, second in (premises, premises[::-1]):
        for form in first.succedent & second.antecedent:
            found = True
            ant_lower = first.antecedent | (second.antecedent - {form})
            ant_upper = first.antecedent | second.antecedent
            succ_lower = (first.succedent - {form}) | second.succedent
            succ_upper = first.succedent | second.succedent
            if _between(ant_lower, conclusion.antecedent, ant_upper) and \
                    _between(succ_lower, conclusion.succedent, succ_upper):
                return
    raise RuleMismatch(rule, messages.ANTECEDENT_MISMATCH if found else messages.NO_PRINCIPAL)


def check_instance(rule: RuleId, premises: Sequence[Sequent], conclusion: Sequent,
                   assignment: DefeaterAssignment | None = None, witness: Sequence[tuple] = (),
                   strict_axioms: bool = False) -> None:
    """
    The check_instance function validates one inference step against its rule
    schema, including side-formula bookkeeping as set operations and the
    defeater-set arithmetic of the rule.

    :param rule: RuleId: The rule the step claims to apply
    :param premises: Sequence[Sequent]: The premises, in tree order
    :param conclusion: Sequent: The conclusion
    :param assignment: DefeaterAssignment: Axiom defeater sets; empty when omitted
    :param witness: Sequence[tuple]: (implied answer, implying answer) pairs for QR2/QL2
    :param strict_axioms: bool: Require axioms to carry exactly S_p
    :return: None; raises RuleMismatch naming the failing schema element
    :doc-author: Trelent
    """
    assignment = assignment or DefeaterAssignment()
    premises = tuple(premises)
    arity = FIXED_ARITY.get(rule)
    if arity is not None and len(premises) != arity:
        raise RuleMismatch(rule, messages.ARITY_MISMATCH, f"expected {arity}, got {len(premises)}")
    if rule in AXIOMS:
        _check_axiom(rule, conclusion, assignment, strict_axioms)
    elif rule in (RuleId.LW, RuleId.RW):
        _check_weakening(rule, premises[0], conclusion)
    elif rule is RuleId.DE:
        _check_de(premises[0], conclusion)
    elif rule in UNARY_LOGICAL:
        _check_unary(rule, premises[0], conclusion)
    elif rule in BINARY_LOGICAL:
        _check_binary(rule, premises, conclusion)
    elif rule is RuleId.QR1:
        _check_qr1(premises[0], conclusion)
    elif rule is RuleId.QL1:
        _check_ql1(premises, conclusion)
    elif rule in (RuleId.QR2, RuleId.QL2):
        _check_e2(rule, premises, conclusion, witness)
    else:
        _check_cut(premises, conclusion)


def check_tree(tree: ProofTree, assignment: DefeaterAssignment | None = None,
               strict_axioms: bool = False) -> Classification:
    """
    The check_tree function classifies a rule-labelled tree: not a derivation if
    any step is invalid, a paraproof if some node is defeated, a proof otherwise.

    :param tree: ProofTree: The tree to check
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :param strict_axioms: bool: Require axioms to carry exactly S_p
    :return: NotADerivation, Paraproof or Proof
    :doc-author: Trelent
    """
    nodes = list(tree.nodes())
    for path, node in nodes:
        try:
            check_instance(node.rule, [p.sequent for p in node.premises], node.sequent, assignment,
                           node.witness, strict_axioms)
        except RuleMismatch as err:
            logger.debug("invalid step at %s: %s", format_path(path), err)
            return NotADerivation(path, str(err))
    defeated = tuple(path for path, node in nodes if sequent_defeated(node.sequent))
    if defeated:
        return Paraproof(defeated)
    return Proof()


def _formula_masks(parts: int) -> list:
    # nonempty part sets, "every part" first
    return list(range((1 << parts) - 1, 0, -1))


def _member_masks(parts: int, optional: bool = False) -> list:
    masks = sorted(range(1, 1 << parts), key=lambda mask: (bin(mask).count("1"), mask))
    return [0] + masks if optional else masks


def _question_singletons(forms: Iterable) -> frozenset:
    return frozenset(frozenset({answer}) for question in _questions(forms) for answer in question.answers)


def _member_roles(conclusion: Sequent, principal: Question, kept: bool = False) -> tuple:
    """
    Split the conclusion's defeaters for an e-wff rule on principal: the members
    the premises must cover, the members that are answer singletons of other
    questions (these may be needed by several premises), and the principal's own
    singletons that some premise may still need for another question. With kept
    set the principal stays in a premise, so all its singletons are optional.
    """
    mandated = DefeaterSet.singletons(principal.answers)
    others = _question_singletons(form for form in conclusion.antecedent | conclusion.succedent
                                  if form != principal)
    optional = [member for member in mandated.sorted_members() if kept or member in others]
    return (conclusion.defeaters - mandated).sorted_members(), others, optional


def _distributions(parts: int, antecedent: list, succedent: list, members: list,
                   flexible: frozenset = frozenset(), optional: list = ()) -> Iterator[tuple]:
    """
    Yield (antecedent parts, succedent parts, defeater parts), each a list of
    `parts` frozensets. Antecedent formulas go to any nonempty set of parts;
    succedent formulas go to every part, since right weakening never affects
    defeat; a member goes to exactly one part unless it is flexible; optional
    members may also go nowhere.
    """
    full = (1 << parts) - 1
    single = [1 << part for part in range(parts)]
    items, choices = [], []
    for form in antecedent:
        items.append((0, form))
        choices.append(_formula_masks(parts))
    for form in succedent:
        items.append((1, form))
        choices.append([full])
    for member in members:
        items.append((2, member))
        choices.append(_member_masks(parts) if member in flexible else single)
    for member in optional:
        items.append((2, member))
        choices.append(_member_masks(parts, optional=True))
    for masks in itertools.product(*choices):
        buckets = [[set() for _ in range(parts)] for _ in range(3)]
        for (kind, item), mask in zip(items, masks):
            for part in range(parts):
                if mask >> part & 1:
                    buckets[kind][part].add(item)
        yield tuple([frozenset(bucket) for bucket in group] for group in buckets)


def _capped(iterator: Iterator, limit: int) -> tuple:
    items = list(itertools.islice(iterator, limit + 1))
    return items[:limit], len(items) > limit


def _axiom_candidates(rule, conclusion, assignment):
    try:
        _check_axiom(rule, conclusion, assignment, strict_axioms=False)
    except RuleMismatch:
        return []
    return [Candidate(())]


def _unary_candidates(rule, conclusion):
    side = RULE_SIDE[rule]
    found = []
    for form in sorted(_side(conclusion, side), key=sort_key):
        actives = unary_actives(rule, form)
        if actives is None:
            continue
        new_side = (_side(conclusion, side) - {form}) | actives
        premise = conclusion.replace(antecedent=new_side) if side == LEFT else conclusion.replace(succedent=new_side)
        found.append(Candidate((premise,)))
    return found


def _binary_candidates(rule, conclusion, bounds):
    side = RULE_SIDE[rule]
    conclusion_side = _side(conclusion, side)

    def generate():
        for form in sorted(conclusion_side, key=sort_key):
            actives = binary_actives(rule, form)
            if actives is None:
                continue
            antecedent = conclusion.antecedent - {form} if side == LEFT else conclusion.antecedent
            succedent = conclusion.succedent - {form} if side == RIGHT else conclusion.succedent
            for ant, succ, members in _distributions(2, sorted(antecedent, key=sort_key),
                                                     sorted(succedent, key=sort_key),
                                                     conclusion.defeaters.sorted_members(),
                                                     _question_singletons(antecedent | succedent)):
                yield Candidate(tuple(
                    Sequent(ant[part] | {active} if side == LEFT else ant[part],
                            succ[part] | {active} if side == RIGHT else succ[part],
                            DefeaterSet(members[part]))
                    for part, active in enumerate(actives)))

    return _capped(generate(), bounds.max_context_split)


def _weakening_candidates(rule, conclusion):
    side = LEFT if rule is RuleId.LW else RIGHT
    found = []
    for form in sorted(_side(conclusion, side), key=sort_key):
        remaining = _side(conclusion, side) - {form}
        premise = conclusion.replace(antecedent=remaining) if side == LEFT else conclusion.replace(succedent=remaining)
        found.append(Candidate((premise,)))
    return found


def _de_candidates(conclusion, bounds):
    members = conclusion.defeaters.sorted_members()

    def generate():
        for size in range(len(members)):
            for subset in itertools.combinations(members, size):
                yield Candidate((conclusion.replace(defeaters=DefeaterSet(frozenset(subset))),))

    return _capped(generate(), bounds.max_defeater_subsets)


def _erotetic_generate(rule, conclusion):
    antecedent, succedent, defeaters = conclusion.antecedent, conclusion.succedent, conclusion.defeaters
    if rule is RuleId.QR1:
        if not all(is_declarative(form) for form in antecedent):
            return
        for question in _questions(succedent):
            if not DefeaterSet.singletons(question.answers) <= defeaters:
                continue
            rest, flexible, optional = _member_roles(conclusion, question)
            for _, succ, members in _distributions(1, [], sorted(succedent - {question}, key=sort_key),
                                                   rest, flexible, optional):
                premise = Sequent(antecedent, succ[0] | set(question.answers), DefeaterSet(members[0]))
                yield Candidate((premise,))
        return
    if rule is RuleId.QL1:
        if not all(is_declarative(form) for form in succedent):
            return
        for question in _questions(antecedent):
            if not DefeaterSet.singletons(question.answers) <= defeaters:
                continue
            rest, flexible, optional = _member_roles(conclusion, question)
            for ant, succ, members in _distributions(len(question.answers),
                                                     sorted(antecedent - {question}, key=sort_key),
                                                     sorted(succedent, key=sort_key), rest, flexible, optional):
                yield Candidate(tuple(Sequent(ant[i] | {a}, succ[i], DefeaterSet(members[i]))
                                      for i, a in enumerate(question.answers)))
        return
    for implying in _questions(antecedent):
        if not DefeaterSet.singletons(implying.answers) <= defeaters:
            continue
        rest, flexible, optional = _member_roles(conclusion, implying, kept=rule is RuleId.QR2)
        for implied in _questions(succedent):
            n, m = len(implying.answers), len(implied.answers)
            left_count = 1 if rule is RuleId.QR2 else n
            for targets in itertools.product(implying.answers, repeat=m):
                witness = tuple(zip(implied.answers, targets))
                for ant, succ, members in _distributions(left_count + m,
                                                         sorted(antecedent - {implying}, key=sort_key),
                                                         sorted(succedent - {implied}, key=sort_key),
                                                         rest, flexible, optional):
                    if rule is RuleId.QR2:
                        lefts = [Sequent(ant[0] | {implying}, succ[0] | set(implied.answers), DefeaterSet(members[0]))]
                    else:
                        lefts = [Sequent(ant[i] | {a}, succ[i] | {implied}, DefeaterSet(members[i]))
                                 for i, a in enumerate(implying.answers)]
                    rights = [Sequent(ant[left_count + j] | {b}, succ[left_count + j] | {a},
                                      DefeaterSet(members[left_count + j]))
                              for j, (b, a) in enumerate(witness)]
                    yield Candidate(tuple(lefts + rights), witness)


def premise_candidates(conclusion: Sequent, rule: RuleId, bounds: "SearchBounds",
                       assignment: DefeaterAssignment | None = None) -> Expansion:
    """
    The premise_candidates function reads a rule backward: it lists every premise
    tuple from which the rule yields the conclusion, using minimal contexts for
    rules that decompose a principal formula. Enumeration of context splits and
    defeater subsets stops at the bounds, which is reported through the
    truncated flag rather than an empty result.

    :param conclusion: Sequent: The sequent to derive
    :param rule: RuleId: The rule to read backward; Cut has no backward reading
    :param bounds: SearchBounds: Caps on split and subset enumeration
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :return: An Expansion with the candidates and the truncated flag
    :doc-author: Trelent
    """
    assignment = assignment or DefeaterAssignment()
    if rule in AXIOMS:
        return Expansion(_axiom_candidates(rule, conclusion, assignment))
    if rule in UNARY_LOGICAL:
        return Expansion(_unary_candidates(rule, conclusion))
    if rule in BINARY_LOGICAL:
        return Expansion(*_binary_candidates(rule, conclusion, bounds))
    if rule in (RuleId.LW, RuleId.RW):
        return Expansion(_weakening_candidates(rule, conclusion))
    if rule is RuleId.DE:
        return Expansion(*_de_candidates(conclusion, bounds))
    if rule in EROTETIC:
        return Expansion(*_capped(_erotetic_generate(rule, conclusion), bounds.max_context_split))
    return Expansion([])


def recompute_defeaters(tree: ProofTree, assignment: DefeaterAssignment) -> ProofTree | None:
    """
    The recompute_defeaters function relabels a DE-free tree so that every axiom
    carries its full S_p and every other node the defeater set its rule computes
    from the premises. Returns None for trees containing DE or Cut.

    :param tree: ProofTree: The tree to relabel
    :param assignment: DefeaterAssignment: Axiom defeater sets
    :return: The relabelled tree, or None
    :doc-author: Trelent
    """
    if tree.rule in (RuleId.DE, RuleId.Cut):
        return None
    premises = []
    for premise in tree.premises:
        relabelled = recompute_defeaters(premise, assignment)
        if relabelled is None:
            return None
        premises.append(relabelled)
    if tree.rule in AXIOMS:
        atom = axiom_atom(tree.rule, tree.sequent)
        defeaters = EMPTY if tree.rule is RuleId.Ax4 else assignment.for_atom(atom)
    else:
        defeaters = _union_defeaters(p.sequent for p in premises)
        if tree.rule in EROTETIC:
            question = _principal_question(tree)
            defeaters = defeaters | DefeaterSet.singletons(question.answers)
    return ProofTree(tree.sequent.replace(defeaters=defeaters), tree.rule, tuple(premises), tree.witness)


def _principal_question(tree: ProofTree) -> Question:
    # the question whose answer singletons the rule adds
    if tree.rule is RuleId.QR1:
        premise = tree.premises[0].sequent
        for question in _questions(tree.sequent.succedent):
            if set(question.answers) <= premise.succedent and question not in premise.succedent:
                return question
        return _questions(tree.sequent.succedent)[0]
    if tree.rule is RuleId.QL1:
        for question in _questions(tree.sequent.antecedent):
            if len(question.answers) == len(tree.premises):
                return question
    if tree.witness:
        implying = set(dict(tree.witness).values())
        for question in _questions(tree.sequent.antecedent):
            if implying <= set(question.answers):
                return question
    return _questions(tree.sequent.antecedent)[0]


def render_tree(tree: ProofTree, indent: str = "  ") -> str:
    lines = []
    for path, node in tree.nodes():
        label = f"{node.rule.value}: {node.sequent}"
        if node.witness:
            label += "  witness " + ", ".join(f"{b} -> {a}" for b, a in node.witness)
        lines.append(indent * len(path) + label)
    return "\n".join(lines)
