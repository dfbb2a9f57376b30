import random

from src.logic.formula import And, Atom, Neg, Or


def random_formula(rng: random.Random, depth: int, names=("p", "q", "r", "s1", "long_name")):
    if depth == 0 or rng.random() < 0.25:
        return Atom(rng.choice(names))
    kind = rng.choice(["neg", "and", "or"])
    if kind == "neg":
        return Neg(random_formula(rng, depth - 1, names))
    connective = And if kind == "and" else Or
    return connective(random_formula(rng, depth - 1, names), random_formula(rng, depth - 1, names))
