import pytest
from hypothesis import given

from helpers import formulas
from qtableau.semantics import enumerate_formulas, tautology
from qtableau.syntax import parse, render
from qtableau.tableau import (
    Alpha,
    Beta,
    Expansion,
    QNode,
    SignedFormula,
    TableauError,
    branch_of,
    classify,
    classify_signed,
    expand,
    is_closed,
    render_tableau,
    to_q,
)

P = parse
PEIRCE = P("((p>q)>p)>p")


def labels(t):
    return [str(n.label) for n in t.nodes]


def test_expand_identity():
    t = expand(SignedFormula(False, P("p>p")))
    assert labels(t) == ["F p>p", "T p", "F p"]
    assert t.trace == [Expansion(0, "alpha", 0, (1, 2))]
    assert t.branch_count() == 1 and is_closed(t)


def test_expand_open():
    t = expand(P("p>q"))
    assert labels(t) == ["F p>q", "T p", "F q"]
    assert not is_closed(t)


def test_expand_peirce_hand_trace():
    t = expand(PEIRCE)
    assert labels(t) == [
        "F ((p>q)>p)>p", "T (p>q)>p", "F p", "F p>q", "T p", "T p", "F q",
    ]
    assert t.trace == [
        Expansion(0, "alpha", 0, (1, 2)),
        Expansion(1, "beta", 2, (3, 4)),
        Expansion(3, "alpha", 3, (5, 6)),
    ]
    assert t.leaves() == [6, 4]
    assert t.branch_count() == 2 and is_closed(t)


def test_closed_branches_are_not_extended():
    # T p closes the right branch before the later alpha node could reach it
    t = expand(P("(p>p>q)>p>q"))
    for leaf in t.leaves():
        assert t.nodes[leaf].closed == is_closed_branch(t, leaf)


def is_closed_branch(t, leaf):
    seen = {(str(lab)[0], lab.body) for lab in t.labels(leaf)}
    return any(("T" if s == "F" else "F", b) in seen for s, b in seen)


def test_classify_examples():
    assert classify(QNode(1, P("p>q"))) == Alpha(QNode(2, P("p")), QNode(1, P("q")))
    assert classify(QNode(2, P("p>q"))) == Beta(QNode(1, P("p")), QNode(2, P("q")))
    assert classify(QNode(1, P("p"))) is None
    assert classify(QNode(2, P("p"))) is None


def test_qnode_realize_and_level_check():
    q = P("r>s")
    assert render(QNode(1, P("p")).realize(q)) == "p>r>s"
    assert render(QNode(2, P("p")).realize(q)) == "(p>r>s)>r>s"
    with pytest.raises(ValueError):
        QNode(3, P("p"))


def test_to_q_identity():
    q = P("q")
    t = to_q(expand(P("p>p")), q)
    assert [n.label for n in t.nodes] == [QNode(1, P("p>p")), QNode(2, P("p")), QNode(1, P("p"))]
    assert render(t.nodes[0].label.realize(q)) == "(p>p)>q"
    assert is_closed(t)


def test_to_q_open_stays_open():
    assert not is_closed(to_q(expand(P("p>q")), P("q")))


def test_to_q_requires_false_root():
    with pytest.raises(TableauError):
        to_q(expand(SignedFormula(True, P("p"))), P("q"))


def test_branch_of_examples():
    q = P("q")
    t = to_q(expand(P("p>p")), q)
    assert branch_of(t, 2).nodes == (QNode(1, P("p>p")), QNode(2, P("p")), QNode(1, P("p")))
    pt = to_q(expand(PEIRCE), q)
    left = branch_of(pt, 6)
    assert left.nodes == (
        QNode(1, PEIRCE), QNode(2, P("(p>q)>p")), QNode(1, P("p")),
        QNode(1, P("p>q")), QNode(2, P("p")), QNode(1, P("q")),
    )
    assert left.conjugate_pair() == (2, 4)
    single = to_q(expand(P("p")), q)
    assert branch_of(single, 0).nodes == (QNode(1, P("p")),)
    with pytest.raises(TableauError):
        branch_of(t, 1)
    with pytest.raises(TableauError):
        branch_of(expand(P("p")), 0)


def test_oracle_agreement_up_to_four_connectives():
    for f in enumerate_formulas(["p", "q"], 4):
        assert is_closed(expand(f)) == bool(tautology(f)), render(f)


@given(formulas(names=("p", "q", "r"), max_depth=4))
def test_oracle_agreement_random(f):
    assert is_closed(expand(f)) == bool(tautology(f))


@given(formulas(max_depth=4), formulas(max_depth=2))
def test_translation_invariants(f, q):
    t = expand(f)
    tq = to_q(t, q)
    assert [n.children for n in tq.nodes] == [n.children for n in t.nodes]
    assert tq.trace == t.trace
    assert tq.branch_count() == t.branch_count()
    assert is_closed(tq) == is_closed(t)
    for leaf in tq.leaves():
        for node in branch_of(tq, leaf).nodes:
            assert node.level in (1, 2)
    for e in t.trace:
        signed = classify_signed(t.nodes[e.source].label)
        translated = classify(tq.nodes[e.source].label)
        assert type(signed) is type(translated)
        assert e.kind == ("alpha" if isinstance(translated, Alpha) else "beta")
        first, second = (tq.nodes[c].label for c in e.children)
        if isinstance(translated, Alpha):
            assert (first, second) == (translated.first, translated.second)
        else:
            assert (first, second) == (translated.left, translated.right)


def test_render_tableau():
    t = expand(PEIRCE)
    assert render_tableau(t) == (
        "F ((p>q)>p)>p\n"
        "T (p>q)>p\n"
        "F p\n"
        "  F p>q\n"
        "  T p\n"
        "  F q x\n"
        "  T p x\n"
    )
    assert render_tableau(to_q(t, P("q"))).splitlines()[0] == "Q[1] ((p>q)>p)>p"
    assert " x" not in render_tableau(expand(P("p>q")))
