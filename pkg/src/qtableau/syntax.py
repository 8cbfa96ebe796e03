"""Implicational formulas: representation, parsing, printing, and the
defined combinators (Q-wrap, disjunction, negated conjunction).

Surface syntax is ASCII with ``>`` for implication, right-associative::

    F := atom | '(' F ')' | F '>' F
    atom := [a-z][a-z0-9_]*
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

__all__ = [
    "Var",
    "Imp",
    "Formula",
    "ParseError",
    "parse",
    "render",
    "q_wrap",
    "disj",
    "neg_conj",
    "variables",
    "size",
]

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*")


@dataclass(frozen=True, eq=False)
class Var:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _NAME_RE.fullmatch(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")
        object.__setattr__(self, "_hash", hash(("var", self.name)))

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, Var) and other.name == self.name)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, eq=False)
class Imp:
    antecedent: "Formula"
    consequent: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)
    _size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash(("imp", self.antecedent, self.consequent)))
        object.__setattr__(self, "_size", 1 + size(self.antecedent) + size(self.consequent))

    # Proof objects repeat large subformulas many times; compare hashes and
    # sizes before walking the trees.
    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Imp) or other._hash != self._hash or other._size != self._size:
            return False
        return self.antecedent == other.antecedent and self.consequent == other.consequent

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return render(self)


Formula = Union[Var, Imp]


def size(f: Formula) -> int:
    """Number of implication connectives in ``f``."""
    return f._size if isinstance(f, Imp) else 0


def variables(f: Formula) -> list[str]:
    """Variable names of ``f`` in order of first (left-to-right) occurrence."""
    seen: dict[str, None] = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            seen.setdefault(g.name)
        else:
            stack.append(g.consequent)
            stack.append(g.antecedent)
    return list(seen)


class ParseError(ValueError):
    """Malformed formula text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.text = text


_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|(>)|(\()|(\))|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            # only trailing whitespace remains
            break
        kind = m.lastindex
        start = m.start(kind)
        if kind == 5:
            raise ParseError(f"unexpected character {m.group(5)!r}", start, text)
        tokens.append((("atom", ">", "(", ")")[kind - 1], m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text.rstrip())))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.primary()
        if self.peek()[0] == ">":
            self.advance()
            return Imp(left, self.formula())
        return left

    def primary(self) -> Formula:
        kind, value, pos = self.advance()
        if kind == "atom":
            return Var(value)
        if kind == "(":
            inner = self.formula()
            kind, _, pos = self.advance()
            if kind != ")":
                raise ParseError("expected ')'", pos, self.text)
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {value!r}", pos, self.text)


def parse(text: str) -> Formula:
    """Parse ``text`` into a formula; raises ParseError with the offending offset.

    >>> render(parse("p > (q > p)"))
    'p>q>p'
    """
    p = _Parser(text)
    f = p.formula()
    kind, value, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", pos, text)
    return f


def render(f: Formula) -> str:
    """Minimal-parenthesis rendering; ``parse(render(f)) == f``."""
    parts: list[str] = []
    _render_into(f, parts)
    return "".join(parts)


def _render_into(f: Formula, out: list[str]) -> None:
    # Iterative along the consequent spine, recursive only into antecedents.
    while isinstance(f, Imp):
        a = f.antecedent
        if isinstance(a, Imp):
            out.append("(")
            _render_into(a, out)
            out.append(")")
        else:
            out.append(a.name)
        out.append(">")
        f = f.consequent
    out.append(f.name)


def q_wrap(q: Formula, z: Formula) -> Formula:
    """QZ := Z > Q."""
    return Imp(z, q)


def disj(x: Formula, y: Formula) -> Formula:
    """X v Y := (X > Y) > Y."""
    return Imp(Imp(x, y), y)


def neg_conj(q: Formula, terms: Sequence[Formula]) -> Formula:
    """Negated conjunction of ``terms`` relative to ``q``.

    ``terms`` is root-first: ``terms[0]`` is the oldest term Z0 and ends up
    innermost, so ``[z0, z1]`` gives ``z1 > (z0 > q)``.
    """
    if not terms:
        raise ValueError("neg_conj needs at least one term")
    acc = q
    for t in terms:
        acc = Imp(t, acc)
    return acc


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Imp):
        yield from subformulas(f.antecedent)
        yield from subformulas(f.consequent)
