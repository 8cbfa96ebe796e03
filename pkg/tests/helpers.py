"""Shared generators for the test suite."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from qtableau.kernel import MP, Ax1, Ax2, Hyp, Line, Peirce, Proof
from qtableau.syntax import Formula, Imp, Var

NAMES = ("p", "q", "r")


def formulas(names=NAMES, max_depth: int = 3) -> st.SearchStrategy[Formula]:
    atoms = st.sampled_from([Var(n) for n in names])
    if max_depth == 0:
        return atoms
    sub = formulas(names, max_depth - 1)
    return st.one_of(atoms, st.builds(Imp, sub, sub))


def random_formula(rng: random.Random, names=NAMES, depth: int = 3) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        return Var(rng.choice(names))
    return Imp(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def random_hypothesis_proof(rng: random.Random, length: int = 8) -> Proof:
    """A valid proof built from Hyp, axiom and MP lines.

    Axiom instances reuse formulas already on the page so that modus ponens
    has something to bite on.
    """
    names = NAMES[: rng.randint(1, 3)]
    hyps = tuple(random_formula(rng, names, 2) for _ in range(rng.randint(1, 3)))
    lines: list[Line] = []

    def pool() -> list[Formula]:
        return [ln.formula for ln in lines] + list(hyps) + [Var(n) for n in names]

    while len(lines) < length:
        pairs = [
            (i, j)
            for i, a in enumerate(lines)
            for j, b in enumerate(lines)
            if isinstance(a.formula, Imp) and a.formula.antecedent == b.formula
        ]
        roll = rng.random()
        if pairs and roll < 0.45:
            i, j = rng.choice(pairs)
            lines.append(Line(lines[i].formula.consequent, MP(i, j)))
        elif roll < 0.7:
            k = rng.randrange(len(hyps))
            lines.append(Line(hyps[k], Hyp(k)))
        else:
            x, y, z = (rng.choice(pool()) for _ in range(3))
            kind = rng.randrange(3)
            if kind == 0:
                lines.append(Line(Imp(x, Imp(y, x)), Ax1))
            elif kind == 1:
                lines.append(Line(Imp(Imp(x, Imp(y, z)), Imp(Imp(x, y), Imp(x, z))), Ax2))
            else:
                lines.append(Line(Imp(Imp(Imp(x, y), x), x), Peirce))
    return Proof(hyps, tuple(lines))


# criterion number -> "PASS ..." / "FAIL ..." line, filled by test_acceptance
CRITERIA: dict[int, str] = {}
