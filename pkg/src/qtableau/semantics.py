"""Boolean valuation semantics: the brute-force oracle for tautology-hood."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .syntax import Formula, Imp, Var, variables

__all__ = [
    "Tautology",
    "Countermodel",
    "ResourceLimitError",
    "MAX_VARIABLES",
    "evaluate",
    "tautology",
    "enumerate_formulas",
]

MAX_VARIABLES = 20

Valuation = Mapping[str, bool]


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class Tautology:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Countermodel:
    valuation: dict[str, bool]

    def __bool__(self) -> bool:
        return False

    def __hash__(self) -> int:
        return hash(tuple(self.valuation.items()))

    def describe(self) -> str:
        """``p=1 q=0`` style listing in variable order."""
        return " ".join(f"{k}={int(v)}" for k, v in self.valuation.items())


def evaluate(f: Formula, v: Valuation) -> bool:
    if isinstance(f, Var):
        try:
            return bool(v[f.name])
        except KeyError:
            raise KeyError(f"valuation does not assign variable {f.name!r}") from None
    return (not evaluate(f.antecedent, v)) or evaluate(f.consequent, v)


def tautology(f: Formula) -> Tautology | Countermodel:
    """Check all 2^k valuations; return the lexicographically first countermodel.

    Variables are ordered by first occurrence, False sorts before True, and
    the first variable is the most significant digit.
    """
    names = variables(f)
    if len(names) > MAX_VARIABLES:
        raise ResourceLimitError(
            f"{len(names)} variables exceeds the limit of {MAX_VARIABLES}"
        )
    for row in itertools.product((False, True), repeat=len(names)):
        v = dict(zip(names, row))
        if not evaluate(f, v):
            return Countermodel(v)
    return Tautology()


def enumerate_formulas(names: Sequence[str], max_connectives: int) -> Iterator[Formula]:
    """Every formula over ``names`` with at most ``max_connectives`` implications.

    Order: by connective count, then by antecedent size, then antecedent
    order, then consequent order.
    """
    if max_connectives < 0:
        raise ValueError("max_connectives must be >= 0")
    by_size: list[list[Formula]] = [[Var(n) for n in dict.fromkeys(names)]]
    yield from by_size[0]
    for n in range(1, max_connectives + 1):
        layer = [
            Imp(a, c)
            for left in range(n)
            for a in by_size[left]
            for c in by_size[n - 1 - left]
        ]
        by_size.append(layer)
        yield from layer
