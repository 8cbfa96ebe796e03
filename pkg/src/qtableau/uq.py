"""The U_Q axiom system and the tautology-to-proof pipeline.

A U_Q derivation concludes C(theta) for a branch theta of Q-nodes. Its
axioms are C(theta) for closed theta; Rule A strips one alpha consequence
appended to theta, Rule B joins the two beta alternatives. Pruning a closed
Q-tableau yields a derivation of C(QZ) = QQZ, and :func:`elaborate` turns
any valid derivation into a kernel proof.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Union

from . import derive
from .derive import Builder
from .kernel import MP, Line, Peirce, Proof, check
from .semantics import Countermodel, tautology
from .syntax import Formula, Imp, disj, neg_conj
from .tableau import (
    Alpha,
    Beta,
    QNode,
    Tableau,
    Theta,
    branch_of,
    classify,
    expand,
    is_closed,
    to_q,
)

__all__ = [
    "Axiom",
    "RuleA",
    "RuleB",
    "UqDerivation",
    "UqError",
    "NotTautology",
    "conclusion",
    "validate",
    "prune",
    "elaborate",
    "prove_tautology",
    "step_count",
]


@dataclass(frozen=True)
class Axiom:
    theta: Theta
    pair: tuple[int, int]  # (index of the QW term, index of the QQW term)


@dataclass(frozen=True)
class RuleA:
    theta: Theta
    alpha_index: int
    used: Literal[0, 1]
    premise: "UqDerivation"


@dataclass(frozen=True)
class RuleB:
    theta: Theta
    beta_index: int
    premise0: "UqDerivation"
    premise1: "UqDerivation"


UqDerivation = Union[Axiom, RuleA, RuleB]


class UqError(ValueError):
    def __init__(self, path: tuple[str, ...], reason: str) -> None:
        where = "/".join(path) or "root"
        super().__init__(f"{where}: {reason}")
        self.path = path
        self.reason = reason


class NotTautology(Exception):
    def __init__(self, countermodel: Countermodel) -> None:
        super().__init__(f"not a tautology; countermodel {countermodel.describe()}")
        self.countermodel = countermodel


def conclusion(d: UqDerivation) -> Formula:
    return d.theta.negconj()


def step_count(d: UqDerivation) -> int:
    if isinstance(d, Axiom):
        return 1
    if isinstance(d, RuleA):
        return 1 + step_count(d.premise)
    return 1 + step_count(d.premise0) + step_count(d.premise1)


def _term(theta: Theta, i: int, path: tuple[str, ...]) -> QNode:
    if not 0 <= i < len(theta):
        raise UqError(path, f"index {i} out of range for a branch of length {len(theta)}")
    return theta[i]


def _same_q(d: UqDerivation, theta: Theta, path: tuple[str, ...]) -> None:
    if d.theta.q != theta.q:
        raise UqError(path, "premise is read against a different Q")


def validate(d: UqDerivation, path: tuple[str, ...] = ()) -> None:
    """Raise UqError at the first violated invariant."""
    theta = d.theta
    if isinstance(d, Axiom):
        i, j = d.pair
        neg, pos = _term(theta, i, path), _term(theta, j, path)
        if not (neg.level == 1 and pos.level == 2 and neg.body == pos.body):
            raise UqError(path, "no conjugate pair at the given indices")
    elif isinstance(d, RuleA):
        rule = classify(_term(theta, d.alpha_index, path))
        if not isinstance(rule, Alpha):
            raise UqError(path, f"term {d.alpha_index} is not an alpha node")
        if d.used not in (0, 1):
            raise UqError(path, f"used must be 0 or 1, got {d.used!r}")
        added = rule.first if d.used == 0 else rule.second
        _same_q(d.premise, theta, path + ("premise",))
        if d.premise.theta.nodes != theta.nodes + (added,):
            raise UqError(path, "premise mismatch")
        validate(d.premise, path + ("premise",))
    elif isinstance(d, RuleB):
        rule = classify(_term(theta, d.beta_index, path))
        if not isinstance(rule, Beta):
            raise UqError(path, f"term {d.beta_index} is not a beta node")
        for name, sub, added in (("premise0", d.premise0, rule.left), ("premise1", d.premise1, rule.right)):
            _same_q(sub, theta, path + (name,))
            if sub.theta.nodes != theta.nodes + (added,):
                raise UqError(path, f"premise mismatch in {name}")
            validate(sub, path + (name,))
    else:
        raise UqError(path, f"not a derivation node: {d!r}")


def prune(t: Tableau) -> UqDerivation:
    """Reverse the expansion trace of a closed Q-tableau into a derivation.

    A beta expansion becomes one RuleB; an alpha expansion, which appended
    first then second, becomes two RuleA steps stripping second, then first.
    Closed leaves become axioms on their first conjugate pair.
    """
    if t.q is None:
        raise ValueError("prune needs a Q-tableau (see to_q)")
    if not is_closed(t):
        raise ValueError("cannot prune an open tableau")
    by_leaf = {e.leaf: e for e in t.trace}

    def build(pos: int, theta: Theta) -> UqDerivation:
        e = by_leaf.get(pos)
        if e is None:
            pair = theta.conjugate_pair()
            assert pair is not None and not t.nodes[pos].children
            return Axiom(theta, pair)
        src = len(t.path(e.source)) - 1
        a, b = e.children
        if e.kind == "beta":
            return RuleB(
                theta,
                src,
                build(a, theta.extend(t.nodes[a].label)),
                build(b, theta.extend(t.nodes[b].label)),
            )
        with_first = theta.extend(t.nodes[a].label)
        inner = build(b, with_first.extend(t.nodes[b].label))
        return RuleA(theta, src, 0, RuleA(with_first, src, 1, inner))

    return build(0, branch_of_root(t))


def branch_of_root(t: Tableau) -> Theta:
    return Theta((t.nodes[0].label,), t.q)


def elaborate(d: UqDerivation, q: Formula) -> Proof:
    """Hypothesis-free kernel proof of ``conclusion(d)``.

    Every node finishes with a case split on its pivot term Z, detaching
    ``QZ > C(theta)`` (negated-conjunction lemma) and ``Z > C(theta)``
    (the node's own reasoning). All nodes are emitted into one builder.
    """
    validate(d)
    b = Builder()
    return b.build(_elaborate_into(b, d, q))


def _elaborate_into(b: Builder, d: UqDerivation, q: Formula) -> int:
    theta = d.theta
    if theta.q != q:
        raise UqError((), "derivation is read against a different Q")
    terms = theta.terms()
    c = neg_conj(q, terms)

    def close_on(k: int, pivot_implies: int) -> int:
        # QZk > C and Zk > C give C
        neg = b.use(derive.term_implies_negconj(q, terms, k))
        return derive.apply_lemma(b, derive.case_split_lemma(q, terms[k], c), neg, pivot_implies)

    if isinstance(d, Axiom):
        i, j = d.pair
        # pivot QQW: its Q-image QQQW and QQW itself both sit in theta
        return close_on(j, b.use(derive.term_implies_negconj(q, terms, i)))
    if isinstance(d, RuleA):
        k = d.alpha_index
        body = theta[k].body
        assert isinstance(body, Imp)
        used = theta.extend(classify(theta[k]).first if d.used == 0 else classify(theta[k]).second)
        lemma = b.use(derive.extra("A0" if d.used == 0 else "A1", q, body.antecedent, body.consequent))
        premise = _elaborate_into(b, d.premise, q)
        hs = derive.robbin(1, q, terms[k], used.terms()[-1], c)
        return close_on(k, derive.apply_lemma(b, hs, lemma, premise))
    if isinstance(d, RuleB):
        k = d.beta_index
        body = theta[k].body
        assert isinstance(body, Imp)
        rule = classify(theta[k])
        b0, b1 = rule.left.realize(q), rule.right.realize(q)
        # the B lemma yields QQY v QX, so the second alternative comes first
        p1 = _elaborate_into(b, d.premise1, q)
        p0 = _elaborate_into(b, d.premise0, q)
        elim = derive.apply_lemma(b, derive.disj_elim_lemma(b1, b0, c), p1, p0)
        split = b.use(derive.extra("B", q, body.antecedent, body.consequent))
        hs = derive.robbin(1, q, terms[k], disj(b1, b0), c)
        return close_on(k, derive.apply_lemma(b, hs, split, elim))
    raise UqError((), f"not a derivation node: {d!r}")


def q_tableau(z: Formula, q: Formula) -> Tableau:
    return to_q(expand(z), q)


def prove_tautology(z: Formula, q: Optional[Formula] = None) -> Proof:
    """Kernel-checked proof of ``z`` (default) or of QQZ for an explicit ``q``.

    With the default Q := Z the pipeline derives (Z>Z)>Z and finishes with
    the Peirce instance [(Z>Z)>Z]>Z and one modus ponens.
    """
    verdict = tautology(z)
    if isinstance(verdict, Countermodel):
        raise NotTautology(verdict)
    own = q is None
    q = z if own else q
    d = prune(q_tableau(z, q))
    proof = elaborate(d, q)
    if own:
        # (Z>Z)>Z is the last line; detach it with Peirce
        n = len(proof.lines)
        peirce = Imp(proof.conclusion, z)
        proof = Proof((), proof.lines + (Line(peirce, Peirce), Line(z, MP(n, n - 1))))
    check(proof)
    return proof
