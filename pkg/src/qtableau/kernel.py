"""Trusted core: Hilbert-style proofs over IPC1, IPC2, Peirce and modus ponens.

Everything the rest of the package produces is only believed once
:func:`check` accepts it. Line and hypothesis indices are 0-based in memory
and 1-based in the text format.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .syntax import Formula, Imp, ParseError, parse, render

__all__ = [
    "Ax1",
    "Ax2",
    "Peirce",
    "MP",
    "Hyp",
    "Justification",
    "Line",
    "Proof",
    "ProofError",
    "ProofFormatError",
    "match_axiom",
    "is_instance",
    "check",
    "dump_proof",
    "load_proof",
    "HEADER",
]

HEADER = "IPC-PROOF v1"

AXIOM_TAGS = ("AX1", "AX2", "PEIRCE")


@dataclass(frozen=True)
class _Axiom:
    tag: str

    def __repr__(self) -> str:
        return self.tag


Ax1 = _Axiom("AX1")
Ax2 = _Axiom("AX2")
Peirce = _Axiom("PEIRCE")


@dataclass(frozen=True)
class MP:
    major: int  # line holding A > B
    minor: int  # line holding A


@dataclass(frozen=True)
class Hyp:
    k: int


Justification = Union[_Axiom, MP, Hyp]


@dataclass(frozen=True)
class Line:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class Proof:
    hypotheses: tuple[Formula, ...]
    lines: tuple[Line, ...]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    def __len__(self) -> int:
        return len(self.lines)

    def count(self, just: _Axiom) -> int:
        return sum(1 for ln in self.lines if ln.just == just)


class ProofError(Exception):
    """A proof failed to check. ``line`` is 0-based, or None for whole-proof errors."""

    def __init__(self, line: Optional[int], reason: str) -> None:
        where = "proof" if line is None else f"line {line + 1}"
        super().__init__(f"{where}: {reason}")
        self.line = line
        self.reason = reason


class ProofFormatError(ValueError):
    def __init__(self, lineno: int, reason: str) -> None:
        super().__init__(f"file line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


def _is_ax1(f: Formula) -> bool:
    # X > (Y > X)
    return (
        isinstance(f, Imp)
        and isinstance(f.consequent, Imp)
        and f.consequent.consequent == f.antecedent
    )


def _is_ax2(f: Formula) -> bool:
    # [X > (Y > Z)] > [(X > Y) > (X > Z)]
    if not (isinstance(f, Imp) and isinstance(f.antecedent, Imp) and isinstance(f.consequent, Imp)):
        return False
    left, right = f.antecedent, f.consequent
    if not (isinstance(left.consequent, Imp) and isinstance(right.antecedent, Imp)
            and isinstance(right.consequent, Imp)):
        return False
    x, y, z = left.antecedent, left.consequent.antecedent, left.consequent.consequent
    xy, xz = right.antecedent, right.consequent
    return xy.antecedent == x and xy.consequent == y and xz.antecedent == x and xz.consequent == z


def _is_peirce(f: Formula) -> bool:
    # [(X > Y) > X] > X
    return (
        isinstance(f, Imp)
        and isinstance(f.antecedent, Imp)
        and isinstance(f.antecedent.antecedent, Imp)
        and f.antecedent.consequent == f.consequent
        and f.antecedent.antecedent.antecedent == f.consequent
    )


_MATCHERS = {Ax1: _is_ax1, Ax2: _is_ax2, Peirce: _is_peirce}


def is_instance(f: Formula, scheme: _Axiom) -> bool:
    return _MATCHERS[scheme](f)


def match_axiom(f: Formula) -> Optional[_Axiom]:
    """First scheme (in order IPC1, IPC2, Peirce) that ``f`` instantiates, else None."""
    for scheme, matcher in _MATCHERS.items():
        if matcher(f):
            return scheme
    return None


def check(proof: Proof) -> Formula:
    """Validate every line; return the conclusion or raise ProofError."""
    lines = proof.lines
    if not lines:
        raise ProofError(None, "empty proof")
    for n, line in enumerate(lines):
        f, j = line.formula, line.just
        if isinstance(j, _Axiom):
            if j not in _MATCHERS:
                raise ProofError(n, f"unknown axiom tag {j!r}")
            if not _MATCHERS[j](f):
                raise ProofError(n, f"not an instance of {j.tag}")
        elif isinstance(j, Hyp):
            if not 0 <= j.k < len(proof.hypotheses):
                raise ProofError(n, f"bad hypothesis reference {j.k + 1}")
            if proof.hypotheses[j.k] != f:
                raise ProofError(n, f"formula differs from hypothesis {j.k + 1}")
        elif isinstance(j, MP):
            for ref in (j.major, j.minor):
                if not 0 <= ref < n:
                    raise ProofError(n, f"bad reference {ref + 1} (must cite an earlier line)")
            major, minor = lines[j.major].formula, lines[j.minor].formula
            if not isinstance(major, Imp):
                raise ProofError(n, f"line {j.major + 1} is not an implication")
            if major.antecedent != minor:
                raise ProofError(n, f"line {j.minor + 1} does not match the antecedent of line {j.major + 1}")
            if major.consequent != f:
                raise ProofError(n, "formula is not the consequent of the major premise")
        else:
            raise ProofError(n, f"unknown justification {j!r}")
    return lines[-1].formula


def _just_text(j: Justification) -> str:
    if isinstance(j, _Axiom):
        return j.tag
    if isinstance(j, MP):
        return f"MP {j.major + 1} {j.minor + 1}"
    return f"HYP {j.k + 1}"


def dump_proof(proof: Proof) -> str:
    out = [HEADER, f"hyps: {len(proof.hypotheses)}"]
    out += [f"H{k + 1}: {render(h)}" for k, h in enumerate(proof.hypotheses)]
    out += [f"{n + 1}. {render(ln.formula)} ; {_just_text(ln.just)}" for n, ln in enumerate(proof.lines)]
    return "\n".join(out) + "\n"


def _parse_formula(text: str, lineno: int) -> Formula:
    try:
        return parse(text)
    except ParseError as e:
        raise ProofFormatError(lineno, str(e)) from None


def _parse_just(text: str, lineno: int) -> Justification:
    parts = text.split()
    tag = parts[0] if parts else ""
    try:
        if tag in AXIOM_TAGS and len(parts) == 1:
            return {"AX1": Ax1, "AX2": Ax2, "PEIRCE": Peirce}[tag]
        if tag == "MP" and len(parts) == 3:
            return MP(int(parts[1]) - 1, int(parts[2]) - 1)
        if tag == "HYP" and len(parts) == 2:
            return Hyp(int(parts[1]) - 1)
    except ValueError:
        pass
    raise ProofFormatError(lineno, f"bad justification {text.strip()!r}")


def load_proof(text: str) -> Proof:
    """Parse the text format. Structural problems raise ProofFormatError;
    logical validity is left to :func:`check`."""
    rows = [
        (n, raw.rstrip("\r"))
        for n, raw in enumerate(text.split("\n"), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    it = iter(rows)

    def take(what: str) -> tuple[int, str]:
        try:
            return next(it)
        except StopIteration:
            raise ProofFormatError(len(text.split("\n")), f"missing {what}") from None

    lineno, row = take("header")
    if row.strip() != HEADER:
        raise ProofFormatError(lineno, f"expected {HEADER!r}")
    lineno, row = take("hypothesis count")
    key, _, count = row.partition(":")
    if key.strip() != "hyps" or not count.strip().isdigit():
        raise ProofFormatError(lineno, "expected 'hyps: <n>'")
    hyps = []
    for k in range(int(count)):
        lineno, row = take(f"hypothesis H{k + 1}")
        label, sep, body = row.partition(":")
        if not sep or label.strip() != f"H{k + 1}":
            raise ProofFormatError(lineno, f"expected 'H{k + 1}: <formula>'")
        hyps.append(_parse_formula(body, lineno))
    lines = []
    for lineno, row in it:
        idx, dot, rest = row.partition(".")
        if not dot or not idx.strip().isdigit():
            raise ProofFormatError(lineno, "expected '<idx>. <formula> ; <justification>'")
        if int(idx) != len(lines) + 1:
            raise ProofFormatError(lineno, f"expected line index {len(lines) + 1}, got {idx.strip()}")
        body, semi, just = rest.rpartition(";")
        if not semi:
            raise ProofFormatError(lineno, "missing ';' before justification")
        lines.append(Line(_parse_formula(body, lineno), _parse_just(just, lineno)))
    return Proof(tuple(hyps), tuple(lines))


def make_proof(hypotheses: Sequence[Formula], lines: Sequence[Line]) -> Proof:
    return Proof(tuple(hypotheses), tuple(lines))
