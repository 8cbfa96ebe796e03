import pytest
from hypothesis import given, settings

from helpers import formulas
from qtableau.derive import case_split_lemma
from qtableau.kernel import MP, Peirce, check, dump_proof
from qtableau.semantics import Countermodel, enumerate_formulas, tautology
from qtableau.syntax import Imp, parse, q_wrap, render
from qtableau.tableau import QNode, Theta, expand, to_q
from qtableau.uq import (
    Axiom,
    NotTautology,
    RuleA,
    RuleB,
    UqError,
    conclusion,
    elaborate,
    prove_tautology,
    prune,
    step_count,
    validate,
)

P = parse
q = P("q")
PEIRCE = P("((p>q)>p)>p")


def qtab(f, qq=q):
    return to_q(expand(f), qq)


def nodes(d):
    yield d
    if isinstance(d, RuleA):
        yield from nodes(d.premise)
    elif isinstance(d, RuleB):
        yield from nodes(d.premise0)
        yield from nodes(d.premise1)


def test_conclusion_examples():
    full = Theta((QNode(1, P("p>p")), QNode(2, P("p")), QNode(1, P("p"))), q)
    # Qp > (QQp > (Q(p>p) > q))
    assert render(conclusion(Axiom(full, (2, 1)))) == "(p>q)>((p>q)>q)>((p>p)>q)>q"
    assert render(conclusion(Axiom(Theta((QNode(1, P("p")),), q), (0, 0)))) == "(p>q)>q"
    two = Theta((QNode(2, P("p")), QNode(1, P("p"))), q)
    assert render(conclusion(Axiom(two, (1, 0)))) == "(p>q)>((p>q)>q)>q"


def test_prune_identity_hand_trace():
    d = prune(qtab(P("p>p")))
    root = Theta((QNode(1, P("p>p")),), q)
    assert d == RuleA(
        root, 0, 0,
        RuleA(root.extend(QNode(2, P("p"))), 0, 1,
              Axiom(root.extend(QNode(2, P("p"))).extend(QNode(1, P("p"))), (2, 1))),
    )
    validate(d)
    assert render(conclusion(d)) == "((p>p)>q)>q"


def test_prune_peirce_has_one_rule_b():
    d = prune(qtab(PEIRCE))
    assert sum(isinstance(n, RuleB) for n in nodes(d)) == 1
    assert step_count(d) == 7
    validate(d)
    assert conclusion(d) == q_wrap(q, q_wrap(q, PEIRCE))


def test_prune_open_tableau():
    with pytest.raises(ValueError, match="open"):
        prune(qtab(P("p>q")))
    with pytest.raises(ValueError):
        prune(expand(P("p>p")))


def test_validate_errors():
    with pytest.raises(UqError, match="no conjugate pair"):
        validate(Axiom(Theta((QNode(1, P("p")),), q), (0, 0)))
    root = Theta((QNode(1, P("p>p")),), q)
    bad = RuleA(root, 0, 1, Axiom(root.extend(QNode(2, P("p"))), (0, 0)))
    with pytest.raises(UqError, match="premise mismatch"):
        validate(bad)
    with pytest.raises(UqError, match="not an alpha"):
        validate(RuleA(Theta((QNode(2, P("p>p")),), q), 0, 0, bad))
    with pytest.raises(UqError, match="not a beta"):
        validate(RuleB(root, 0, bad, bad))
    with pytest.raises(UqError, match="out of range"):
        validate(Axiom(root, (0, 5)))
    # the error path points at the offending node
    d = prune(qtab(P("p>p")))
    broken = RuleA(d.theta, 0, 0, RuleA(d.premise.theta, 0, 1, Axiom(d.premise.premise.theta, (2, 0))))
    with pytest.raises(UqError) as exc:
        validate(broken)
    assert exc.value.path == ("premise", "premise")


def test_elaborate_axiom_whose_conclusion_is_an_identity():
    # C(QQp, Qp) = QQp > (Qp > q) = QQp > QQp
    theta = Theta((QNode(1, P("p")), QNode(2, P("p"))), q)
    d = Axiom(theta, (0, 1))
    c = conclusion(d)
    assert c.antecedent == c.consequent
    assert check(elaborate(d, q)) == c


def test_elaborate_identity():
    d = prune(qtab(P("p>p")))
    proof = elaborate(d, q)
    assert proof.hypotheses == ()
    assert check(proof) == P("((p>p)>q)>q")


def test_elaborate_single_axiom_follows_case_split_on_qqw():
    theta = Theta((QNode(2, P("p")), QNode(1, P("r")), QNode(1, P("p"))), q)
    d = Axiom(theta, (2, 0))
    proof = elaborate(d, q)
    assert check(proof) == conclusion(d)
    qqw = theta.terms()[0]
    # weak LEM on Z := QQW, and the final step detaches the case-split lemma
    assert any(ln.formula == Imp(Imp(Imp(qqw, q), qqw), qqw) and ln.just == Peirce for ln in proof.lines)
    lemma = case_split_lemma(q, qqw, conclusion(d)).conclusion
    last = proof.lines[-1]
    assert isinstance(last.just, MP)
    assert proof.lines[proof.lines[last.just.major].just.major].formula == lemma


def test_elaborate_rule_b_contains_disjunction_elimination():
    d = prune(qtab(PEIRCE))
    b = next(n for n in nodes(d) if isinstance(n, RuleB))
    proof = elaborate(b, q)
    assert check(proof) == conclusion(b)
    c = conclusion(b)
    beta0 = b.premise0.theta.terms()[-1]
    # the Peirce step that closes disjunction elimination on QQY v QX
    assert any(ln.formula == Imp(Imp(Imp(c, beta0), c), c) for ln in proof.lines)


def test_elaborate_rejects_invalid():
    with pytest.raises(UqError):
        elaborate(Axiom(Theta((QNode(1, P("p")),), q), (0, 0)), q)
    d = prune(qtab(P("p>p")))
    with pytest.raises(UqError):
        elaborate(d, P("r"))


def test_prove_tautology_peirce():
    proof = prove_tautology(PEIRCE)
    assert check(proof) == PEIRCE
    *_, major, last = proof.lines
    z = PEIRCE
    zz = Imp(Imp(z, z), z)
    assert major.just == Peirce and major.formula == Imp(zz, z)
    assert last.just == MP(len(proof.lines) - 2, len(proof.lines) - 3)
    assert proof.lines[-3].formula == zz


def test_prove_tautology_identity():
    assert check(prove_tautology(P("p>p"))) == P("p>p")


def test_prove_tautology_rejects():
    with pytest.raises(NotTautology) as exc:
        prove_tautology(P("p>q"))
    assert exc.value.countermodel == Countermodel({"p": True, "q": False})


def test_prove_with_external_q():
    proof = prove_tautology(P("p>p"), P("r"))
    assert render(check(proof)) == "((p>p)>r)>r"


def test_pipeline_deterministic():
    assert dump_proof(prove_tautology(PEIRCE)) == dump_proof(prove_tautology(PEIRCE))


TAUTOLOGIES = [f for f in enumerate_formulas(["p", "q"], 3) if tautology(f)]


@pytest.mark.parametrize("f", TAUTOLOGIES, ids=render)
def test_pipeline_small_enumeration(f):
    d = prune(qtab(f, f))
    validate(d)
    proof = elaborate(d, f)
    assert check(proof) == conclusion(d) == Imp(Imp(f, f), f)
    assert check(prove_tautology(f)) == f


@settings(max_examples=30, deadline=None)
@given(formulas(names=("p", "q"), max_depth=3), formulas(max_depth=2))
def test_embedding_with_arbitrary_q(f, qq):
    if not tautology(f):
        return
    d = prune(qtab(f, qq))
    validate(d)
    assert check(elaborate(d, qq)) == conclusion(d) == q_wrap(qq, q_wrap(qq, f))


@settings(max_examples=30, deadline=None)
@given(formulas(names=("p", "q", "r"), max_depth=3))
def test_pipeline_complete_and_sound(f):
    verdict = tautology(f)
    if verdict:
        assert check(prove_tautology(f)) == f
    else:
        with pytest.raises(NotTautology):
            prove_tautology(f)
