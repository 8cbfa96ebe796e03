"""Constructive proof builders for the derived rules and theorem schemes.

Every function here returns a :class:`~qtableau.kernel.Proof` that the
kernel checks; nothing in this module is trusted on its own. Sequences of
terms (``terms``) are root-first, as in :func:`qtableau.syntax.neg_conj`.
"""
from __future__ import annotations

from typing import Literal, Sequence

from .kernel import MP, Ax1, Ax2, Hyp, Justification, Line, Peirce, Proof, _Axiom, is_instance
from .syntax import Formula, Imp, disj, neg_conj, q_wrap, render

__all__ = [
    "DerivationError",
    "Builder",
    "identity",
    "deduction",
    "discharge",
    "assume_antecedent",
    "apply_lemma",
    "syllogism",
    "robbin",
    "robbin_statement",
    "disj_elim",
    "disj_elim_lemma",
    "weak_lem",
    "case_split",
    "case_split_lemma",
    "extra",
    "extra_statement",
    "extra_b_converse",
    "term_implies_negconj",
    "disjunction_chain",
    "de_morgan",
    "de_morgan_converse",
]


class DerivationError(ValueError):
    """A builder was handed inputs that do not have the required shape."""


class Builder:
    """Append-only proof under fixed hypotheses.

    A formula is emitted at most once: asking for a line that already
    exists returns its index. :meth:`build` re-emits the conclusion at the
    end when it was first derived earlier.
    """

    def __init__(self, hypotheses: Sequence[Formula] = ()) -> None:
        self.hypotheses = tuple(hypotheses)
        self.lines: list[Line] = []
        self._index: dict[Formula, int] = {}

    def __len__(self) -> int:
        return len(self.lines)

    def formula(self, i: int) -> Formula:
        return self.lines[i].formula

    def emit(self, f: Formula, just: Justification) -> int:
        i = self._index.get(f)
        if i is not None:
            return i
        self.lines.append(Line(f, just))
        self._index[f] = len(self.lines) - 1
        return len(self.lines) - 1

    def find(self, f: Formula) -> int | None:
        return self._index.get(f)

    def hyp(self, f: Formula) -> int:
        try:
            k = self.hypotheses.index(f)
        except ValueError:
            raise DerivationError(f"{render(f)} is not a hypothesis") from None
        return self.emit(f, Hyp(k))

    def axiom(self, scheme: _Axiom, f: Formula) -> int:
        if not is_instance(f, scheme):
            raise DerivationError(f"{render(f)} is not an instance of {scheme.tag}")
        return self.emit(f, scheme)

    def ax1(self, x: Formula, y: Formula) -> int:
        return self.emit(Imp(x, Imp(y, x)), Ax1)

    def ax2(self, x: Formula, y: Formula, z: Formula) -> int:
        return self.emit(Imp(Imp(x, Imp(y, z)), Imp(Imp(x, y), Imp(x, z))), Ax2)

    def peirce(self, x: Formula, y: Formula) -> int:
        return self.emit(Imp(Imp(Imp(x, y), x), x), Peirce)

    def mp(self, major: int, minor: int) -> int:
        f = self.formula(major)
        if not isinstance(f, Imp) or f.antecedent != self.formula(minor):
            raise DerivationError(
                f"cannot apply {render(f)} to {render(self.formula(minor))}"
            )
        return self.emit(f.consequent, MP(major, minor))

    def mp_chain(self, major: int, *minors: int) -> int:
        for m in minors:
            major = self.mp(major, m)
        return major

    def use(self, proof: Proof) -> int:
        """Splice in ``proof``; its hypotheses must be among ours. Returns
        the index of its conclusion."""
        remap: list[int] = []
        for line in proof.lines:
            j = line.just
            if isinstance(j, Hyp):
                remap.append(self.hyp(proof.hypotheses[j.k]))
            elif isinstance(j, MP):
                i = self.find(line.formula)
                if i is None:
                    i = self.emit(line.formula, MP(remap[j.major], remap[j.minor]))
                remap.append(i)
            else:
                remap.append(self.emit(line.formula, j))
        return remap[-1]

    def build(self, conclusion: int | None = None) -> Proof:
        if not self.lines:
            raise DerivationError("empty proof")
        lines = list(self.lines)
        if conclusion is not None and conclusion != len(lines) - 1:
            lines.append(lines[conclusion])
        return Proof(self.hypotheses, tuple(lines))


def _imp(f: Formula, what: str) -> Imp:
    if not isinstance(f, Imp):
        raise DerivationError(f"{what}: expected an implication, got {render(f)}")
    return f


def identity(x: Formula) -> Proof:
    """Five-line proof of ``x > x`` from IPC1 and IPC2."""
    xx = Imp(x, x)
    return Proof((), (
        Line(Imp(x, Imp(xx, x)), Ax1),
        Line(Imp(Imp(x, Imp(xx, x)), Imp(Imp(x, xx), xx)), Ax2),
        Line(Imp(Imp(x, xx), xx), MP(1, 0)),
        Line(Imp(x, xx), Ax1),
        Line(xx, MP(2, 3)),
    ))


def deduction(proof: Proof) -> Proof:
    """Discharge the last hypothesis X, turning ``G, X |- Y`` into ``G |- X > Y``.

    Lines that do not depend on X are copied unchanged; ``X > L`` is built
    (via IPC1 and MP) only when a dependent line or the conclusion needs it.
    Lines depending on X become ``X > L`` through IPC2 and two MPs, and
    the hypothesis itself through the identity template. The output has at
    most three lines per input line plus two.
    """
    if not proof.hypotheses:
        raise DerivationError("deduction needs at least one hypothesis")
    if not proof.lines:
        raise DerivationError("empty proof")
    x = proof.hypotheses[-1]
    last = len(proof.hypotheses) - 1
    b = Builder(proof.hypotheses[:-1])
    plain: dict[int, int] = {}  # source line -> output line with L itself
    lifted: dict[int, int] = {}  # source line -> output line with X > L

    def lift(n: int) -> int:
        if n in lifted:
            return lifted[n]
        f = proof.lines[n].formula
        i = b.find(Imp(x, f))
        if i is None:
            i = b.mp(b.ax1(f, x), plain[n])
        lifted[n] = i
        return i

    for n, line in enumerate(proof.lines):
        f, j = line.formula, line.just
        if isinstance(j, Hyp) and j.k == last:
            i = b.find(Imp(x, x))
            if i is None:
                i = b.use(identity(x))
            lifted[n] = i
        elif isinstance(j, MP) and (j.major in lifted or j.minor in lifted):
            i = b.find(Imp(x, f))
            if i is None:
                major, minor = lift(j.major), lift(j.minor)
                step = b.ax2(x, proof.lines[j.minor].formula, f)
                i = b.mp(b.mp(step, major), minor)
            lifted[n] = i
        elif isinstance(j, MP):
            plain[n] = b.emit(f, MP(plain[j.major], plain[j.minor]))
        elif isinstance(j, Hyp):
            plain[n] = b.hyp(proof.hypotheses[j.k])
        else:
            plain[n] = b.emit(f, j)
    return b.build(lift(len(proof.lines) - 1))


def discharge(proof: Proof, times: int) -> Proof:
    for _ in range(times):
        proof = deduction(proof)
    return proof


def assume_antecedent(proof: Proof) -> Proof:
    """From ``|- A > B`` produce ``A |- B``."""
    concl = _imp(proof.conclusion, "assume_antecedent")
    b = Builder(proof.hypotheses + (concl.antecedent,))
    return b.build(b.mp(b.use(proof), b.hyp(concl.antecedent)))


def apply_lemma(b: Builder, lemma: Proof, *premises: int) -> int:
    """Splice ``lemma`` (``A1 > ... > An > C``) into ``b`` and detach it
    against the lines ``premises``; returns the index of C."""
    return b.mp_chain(b.use(lemma), *premises)


def syllogism(p1: Proof, p2: Proof) -> Proof:
    """From ``|- X > Y`` and ``|- Y > Z`` build ``|- X > Z``.

    Each premise is spliced once and detached from the scheme-1 instance
    (X>Y) > ((Y>Z) > (X>Z)).
    """
    if p1.hypotheses or p2.hypotheses:
        raise DerivationError("syllogism expects hypothesis-free proofs")
    xy = _imp(p1.conclusion, "syllogism first premise")
    yz = _imp(p2.conclusion, "syllogism second premise")
    if xy.consequent != yz.antecedent:
        raise DerivationError(
            f"syllogism: {render(xy)} does not chain with {render(yz)}"
        )
    b = Builder()
    i1, i2 = b.use(p1), b.use(p2)
    return b.build(apply_lemma(b, robbin(1, xy.antecedent, xy.antecedent, xy.consequent, yz.consequent), i1, i2))


# -- Robbin's schemes ------------------------------------------------------


def robbin_statement(k: int, q: Formula, x: Formula, y: Formula, z: Formula) -> Formula:
    """The k-th scheme instance (k in 1..8)."""
    Q = lambda w: q_wrap(q, w)  # noqa: E731
    statements = {
        1: lambda: Imp(Imp(x, y), Imp(Imp(y, z), Imp(x, z))),
        2: lambda: Imp(Imp(x, y), Imp(Q(y), Q(x))),
        3: lambda: Imp(x, Q(Q(x))),
        4: lambda: Imp(Q(Q(Q(x))), Q(x)),
        5: lambda: Imp(Q(Q(y)), Q(Q(Imp(x, y)))),
        6: lambda: Imp(Q(Q(x)), Imp(Q(y), Q(Imp(x, y)))),
        7: lambda: Imp(Q(x), Q(Q(Imp(x, y)))),
        8: lambda: Imp(Imp(Q(x), y), Imp(Imp(Q(Q(x)), y), Q(Q(y)))),
    }
    if k not in statements:
        raise DerivationError(f"robbin scheme index must be 1..8, got {k}")
    return statements[k]()


def _chain_through(x: Formula, y: Formula, z: Formula) -> Proof:
    # X > Y, Y > Z, X |- Z
    b = Builder((Imp(x, y), Imp(y, z), x))
    yy = b.mp(b.hyp(Imp(x, y)), b.hyp(x))
    return b.build(b.mp(b.hyp(Imp(y, z)), yy))


def robbin(k: int, q: Formula, x: Formula, y: Formula | None = None,
           z: Formula | None = None) -> Proof:
    """Hypothesis-free proof of the k-th Robbin scheme instance.

    Only scheme 7 uses Peirce. Unused metavariables may be None.
    """
    y = x if y is None else y
    z = x if z is None else z
    Q = lambda w: q_wrap(q, w)  # noqa: E731

    if k == 1:
        proof = discharge(_chain_through(x, y, z), 3)
    elif k == 2:
        proof = discharge(_chain_through(x, y, q), 3)
    elif k == 3:
        b = Builder((x, Q(x)))
        proof = discharge(b.build(b.mp(b.hyp(Q(x)), b.hyp(x))), 2)
    elif k == 4:
        b = Builder((Q(Q(Q(x))), x))
        qqx = b.mp(b.use(robbin(3, q, x)), b.hyp(x))
        proof = discharge(b.build(b.mp(b.hyp(Q(Q(Q(x)))), qqx)), 2)
    elif k == 5:
        xy = Imp(x, y)
        inner = Builder((Q(Q(y)), Q(xy), y))
        got_xy = inner.mp(inner.ax1(y, x), inner.hyp(y))
        qy = deduction(inner.build(inner.mp(inner.hyp(Q(xy)), got_xy)))
        b = Builder((Q(Q(y)), Q(xy)))
        proof = discharge(b.build(b.mp(b.hyp(Q(Q(y))), b.use(qy))), 2)
    elif k == 6:
        xy = Imp(x, y)
        inner = Builder((Q(Q(x)), Q(y), xy, x))
        got_y = inner.mp(inner.hyp(xy), inner.hyp(x))
        qx = deduction(inner.build(inner.mp(inner.hyp(Q(y)), got_y)))
        b = Builder((Q(Q(x)), Q(y), xy))
        proof = discharge(b.build(b.mp(b.hyp(Q(Q(x))), b.use(qx))), 3)
    elif k == 7:
        xy, qy = Imp(x, y), Imp(q, y)
        # QX, Q(X>Y), Q>Y |- X>Y by chaining X>Q with Q>Y
        inner = Builder((Q(x), Q(xy), qy, x))
        got_q = inner.mp(inner.hyp(Q(x)), inner.hyp(x))
        got_xy = deduction(inner.build(inner.mp(inner.hyp(qy), got_q)))
        mid = Builder((Q(x), Q(xy), qy))
        to_q = deduction(mid.build(mid.mp(mid.hyp(Q(xy)), mid.use(got_xy))))
        # (Q>Y)>Q, then Peirce [(Q>Y)>Q]>Q
        b = Builder((Q(x), Q(xy)))
        got = b.mp(b.peirce(q, y), b.use(to_q))
        proof = discharge(b.build(got), 2)
    elif k == 8:
        a, c = Imp(Q(x), y), Imp(Q(Q(x)), y)
        inner = Builder((a, c, Q(y), Q(x)))
        got_y = inner.mp(inner.hyp(a), inner.hyp(Q(x)))
        qqx = deduction(inner.build(inner.mp(inner.hyp(Q(y)), got_y)))
        b = Builder((a, c, Q(y)))
        got_y = b.mp(b.hyp(c), b.use(qqx))
        proof = discharge(b.build(b.mp(b.hyp(Q(y)), got_y)), 3)
    else:
        raise DerivationError(f"robbin scheme index must be 1..8, got {k}")
    return proof


# -- disjunction -------------------------------------------------------------


def disj_elim(px: Proof, py: Proof) -> Proof:
    """From ``G, X |- Z`` and ``G, Y |- Z`` build ``G, X v Y |- Z``.

    The usual case has an empty context G. Route: X > Y follows from X > Z
    and the assumption Z > Y; the disjunction then gives Y and hence Z,
    discharging to (Z > Y) > Z, and Peirce closes.
    """
    if not px.hypotheses or not py.hypotheses:
        raise DerivationError("disj_elim premises need a hypothesis to eliminate")
    ctx = px.hypotheses[:-1]
    if py.hypotheses[:-1] != ctx:
        raise DerivationError("disj_elim premises have different hypothesis contexts")
    x, y, z = px.hypotheses[-1], py.hypotheses[-1], px.conclusion
    if py.conclusion != z:
        raise DerivationError(
            f"disj_elim: conclusions differ ({render(z)} vs {render(py.conclusion)})"
        )
    xz, yz = deduction(px), deduction(py)
    d, zy = disj(x, y), Imp(z, y)

    inner = Builder(ctx + (d, zy, x))
    got_z = inner.mp(inner.use(xz), inner.hyp(x))
    got_xy = deduction(inner.build(inner.mp(inner.hyp(zy), got_z)))

    mid = Builder(ctx + (d, zy))
    got_y = mid.mp(mid.hyp(d), mid.use(got_xy))
    zyz = deduction(mid.build(mid.mp(mid.use(yz), got_y)))

    b = Builder(ctx + (d,))
    return b.build(b.mp(b.peirce(z, y), b.use(zyz)))


def disj_elim_lemma(x: Formula, y: Formula, z: Formula) -> Proof:
    """``|- (X > Z) > ((Y > Z) > (X v Y > Z))``."""
    ctx = (Imp(x, z), Imp(y, z))
    bx = Builder(ctx + (x,))
    px = bx.build(bx.mp(bx.hyp(ctx[0]), bx.hyp(x)))
    by = Builder(ctx + (y,))
    py = by.build(by.mp(by.hyp(ctx[1]), by.hyp(y)))
    return discharge(disj_elim(px, py), 3)


def weak_lem(q: Formula, z: Formula) -> Proof:
    """``|- QZ v Z``, which is literally the Peirce instance ((Z>Q)>Z)>Z."""
    b = Builder()
    return b.build(b.peirce(z, q))


def case_split_lemma(q: Formula, z: Formula, w: Formula) -> Proof:
    """``|- (QZ > W) > ((Z > W) > W)``: eliminate QZ v Z, then detach weak LEM."""
    qz = q_wrap(q, z)
    ctx = (Imp(qz, w), Imp(z, w))
    bx = Builder(ctx + (qz,))
    px = bx.build(bx.mp(bx.hyp(ctx[0]), bx.hyp(qz)))
    by = Builder(ctx + (z,))
    py = by.build(by.mp(by.hyp(ctx[1]), by.hyp(z)))
    elim = deduction(disj_elim(px, py))
    b = Builder(ctx)
    return discharge(b.build(b.mp(b.use(elim), b.use(weak_lem(q, z)))), 2)


def case_split(p1: Proof, p2: Proof, q: Formula, z: Formula) -> Proof:
    """From ``|- QZ > W`` and ``|- Z > W`` build ``|- W``."""
    if p1.hypotheses or p2.hypotheses:
        raise DerivationError("case_split expects hypothesis-free premises")
    c1 = _imp(p1.conclusion, "case_split first premise")
    c2 = _imp(p2.conclusion, "case_split second premise")
    if c1.antecedent != q_wrap(q, z):
        raise DerivationError(f"case_split: {render(c1)} does not start with QZ = {render(q_wrap(q, z))}")
    if c2.antecedent != z:
        raise DerivationError(f"case_split: {render(c2)} does not start with Z = {render(z)}")
    if c1.consequent != c2.consequent:
        raise DerivationError("case_split: premises have different consequents")
    b = Builder()
    i1, i2 = b.use(p1), b.use(p2)
    return b.build(apply_lemma(b, case_split_lemma(q, z, c1.consequent), i1, i2))


# -- Q-consequence schemes -----------------------------------------------------

ExtraTag = Literal["A0", "A1", "B"]


def extra_statement(tag: ExtraTag, q: Formula, x: Formula, y: Formula) -> Formula:
    Q = lambda w: q_wrap(q, w)  # noqa: E731
    xy = Imp(x, y)
    if tag == "A0":
        return Imp(Q(xy), Q(Q(x)))
    if tag == "A1":
        return Imp(Q(xy), Q(y))
    if tag == "B":
        return Imp(Q(Q(xy)), disj(Q(Q(y)), Q(x)))
    raise DerivationError(f"unknown tag {tag!r}")


def extra(tag: ExtraTag, q: Formula, x: Formula, y: Formula) -> Proof:
    """A0: Q(X>Y) > QQX;  A1: Q(X>Y) > QY;  B: QQ(X>Y) > (QQY v QX)."""
    Q = lambda w: q_wrap(q, w)  # noqa: E731
    xy = Imp(x, y)
    if tag == "A0":
        b = Builder()
        step = b.mp(b.use(robbin(2, q, Q(x), Q(Q(xy)))), b.use(robbin(7, q, x, y)))
        return syllogism(robbin(3, q, Q(xy)), b.build(step))
    if tag == "A1":
        b = Builder()
        return b.build(b.mp(b.use(robbin(2, q, y, xy)), b.ax1(y, x)))
    if tag == "B":
        target = disj(Q(Q(y)), Q(x))
        split = Imp(Q(Q(y)), Q(x))
        # X>Y, QQY>QX, X |- Q
        inner = Builder((xy, split, x))
        got_y = inner.mp(inner.hyp(xy), inner.hyp(x))
        qqy = inner.mp(inner.use(robbin(3, q, y)), got_y)
        qx = inner.mp(inner.hyp(split), qqy)
        left = discharge(inner.build(inner.mp(qx, inner.hyp(x))), 2)
        # Q, QQY>QX |- QX
        right_b = Builder((q, split))
        right = deduction(right_b.build(right_b.mp(right_b.ax1(q, x), right_b.hyp(q))))
        return deduction(disj_elim(left, right))
    raise DerivationError(f"unknown tag {tag!r}")


def extra_b_converse(q: Formula, x: Formula, y: Formula) -> Proof:
    """``|- (QQY v QX) > QQ(X>Y)``."""
    left = assume_antecedent(robbin(5, q, x, y))
    right = assume_antecedent(robbin(7, q, x, y))
    return deduction(disj_elim(left, right))


# -- negated conjunction -------------------------------------------------------


def _prefix_negconj(q: Formula, terms: Sequence[Formula]) -> list[Formula]:
    out, acc = [], q
    for t in terms:
        acc = Imp(t, acc)
        out.append(acc)
    return out


def term_implies_negconj(q: Formula, terms: Sequence[Formula], n: int) -> Proof:
    """``|- QZn > C(terms)`` where Zn is the n-th added term (root is 0)."""
    if not terms:
        raise DerivationError("term_implies_negconj needs a nonempty sequence")
    if not 0 <= n < len(terms):
        raise DerivationError(f"index {n} out of range for {len(terms)} terms")
    cs = _prefix_negconj(q, terms)
    zn = terms[n]
    qzn = q_wrap(q, zn)
    if n == 0:
        b = Builder((qzn,))
        at = b.hyp(qzn)
    else:
        # QZn, Zn |- Q, then Q |- C(n-1) by weakening, discharge Zn
        inner = Builder((qzn, zn))
        got = inner.mp(inner.hyp(qzn), inner.hyp(zn))
        got = inner.mp(inner.ax1(q, terms[0]), got)
        for m in range(1, n):
            got = inner.mp(inner.ax1(cs[m - 1], terms[m]), got)
        b = Builder((qzn,))
        at = b.use(deduction(inner.build(got)))
    for m in range(n + 1, len(terms)):
        at = b.mp(b.ax1(cs[m - 1], terms[m]), at)
    return deduction(b.build(at))


def disjunction_chain(q: Formula, terms: Sequence[Formula]) -> Formula:
    """QZ0 v QZ1 v ... v QZN, associated to the left."""
    if not terms:
        raise DerivationError("empty sequence")
    d = q_wrap(q, terms[0])
    for t in terms[1:]:
        d = disj(d, q_wrap(q, t))
    return d


def de_morgan(q: Formula, terms: Sequence[Formula]) -> Proof:
    """``C(terms) |- QZ0 v ... v QZN``."""
    if not terms:
        raise DerivationError("de_morgan needs a nonempty sequence")
    cs = _prefix_negconj(q, terms)
    b = Builder((cs[0],))
    proof = b.build(b.hyp(cs[0]))
    d = q_wrap(q, terms[0])
    for m in range(1, len(terms)):
        zm, qzm = terms[m], q_wrap(q, terms[m])
        # C(m), D(m-1) > QZm, Zm |- Q
        b = Builder((cs[m], Imp(d, qzm), zm))
        got = b.mp(b.hyp(cs[m]), b.hyp(zm))
        got = b.mp(b.use(deduction(proof)), got)
        got = b.mp(b.hyp(Imp(d, qzm)), got)
        proof = discharge(b.build(b.mp(got, b.hyp(zm))), 2)
        d = disj(d, qzm)
    return proof


def de_morgan_converse(q: Formula, terms: Sequence[Formula]) -> Proof:
    """``QZ0 v ... v QZN |- C(terms)``."""
    if not terms:
        raise DerivationError("de_morgan_converse needs a nonempty sequence")
    cs = _prefix_negconj(q, terms)
    b = Builder((cs[0],))
    proof = b.build(b.hyp(cs[0]))
    for m in range(1, len(terms)):
        # D(m-1) |- C(m) by weakening the previous stage
        b = Builder(proof.hypotheses)
        left = b.build(b.mp(b.ax1(cs[m - 1], terms[m]), b.use(proof)))
        right = assume_antecedent(term_implies_negconj(q, terms[: m + 1], m))
        proof = disj_elim(left, right)
    return proof
