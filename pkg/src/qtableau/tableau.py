"""Signed-formula tableaux for implicational formulas and their Q-translation.

Signed rules: F(X>Y) extends a branch with TX then FY (alpha); T(X>Y)
forks it into FX | TY (beta). Relabelling F W as Q-level 1 and T W as
Q-level 2 turns these into the Q-tableau rules: Q(X>Y) gives QQX, QY and
QQ(X>Y) forks into QX | QQY.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Literal, Optional, Union

from .syntax import Formula, Imp, neg_conj, q_wrap, render

__all__ = [
    "SignedFormula",
    "QNode",
    "Alpha",
    "Beta",
    "LITERAL",
    "Theta",
    "Node",
    "Expansion",
    "Tableau",
    "TableauError",
    "expand",
    "is_closed",
    "to_q",
    "classify",
    "classify_signed",
    "branch_of",
    "conjugate_pair",
    "render_tableau",
]


class TableauError(ValueError):
    pass


@dataclass(frozen=True)
class SignedFormula:
    sign: bool  # True for T, False for F
    body: Formula

    def __str__(self) -> str:
        return f"{'T' if self.sign else 'F'} {render(self.body)}"


@dataclass(frozen=True)
class QNode:
    """A Q-tableau entry: level 1 stands for QW, level 2 for QQW.

    Compared by (level, body); the realized formula is ambiguous when Q is
    itself an implication, so it is never used for identification.
    """

    level: Literal[1, 2]
    body: Formula

    def __post_init__(self) -> None:
        if self.level not in (1, 2):
            raise ValueError(f"Q-level must be 1 or 2, got {self.level!r}")

    def realize(self, q: Formula) -> Formula:
        f = q_wrap(q, self.body)
        return f if self.level == 1 else q_wrap(q, f)

    def __str__(self) -> str:
        return f"Q[{self.level}] {render(self.body)}"


Label = Union[SignedFormula, QNode]


@dataclass(frozen=True)
class Alpha:
    first: Label
    second: Label


@dataclass(frozen=True)
class Beta:
    left: Label
    right: Label


LITERAL = None


def classify_signed(s: SignedFormula) -> Alpha | Beta | None:
    if not isinstance(s.body, Imp):
        return LITERAL
    x, y = s.body.antecedent, s.body.consequent
    if s.sign:
        return Beta(SignedFormula(False, x), SignedFormula(True, y))
    return Alpha(SignedFormula(True, x), SignedFormula(False, y))


def classify(n: QNode) -> Alpha | Beta | None:
    """Q(X>Y) is Alpha(QQX, QY); QQ(X>Y) is Beta(QX, QQY); else LITERAL (None)."""
    if not isinstance(n.body, Imp):
        return LITERAL
    x, y = n.body.antecedent, n.body.consequent
    if n.level == 1:
        return Alpha(QNode(2, x), QNode(1, y))
    return Beta(QNode(1, x), QNode(2, y))


def _classify(label: Label) -> Alpha | Beta | None:
    return classify(label) if isinstance(label, QNode) else classify_signed(label)


def _polarity(label: Label) -> bool:
    # F / level 1 on one side, T / level 2 on the other
    return label.sign if isinstance(label, SignedFormula) else label.level == 2


def conjugate_pair(labels: list[Label] | tuple[Label, ...]) -> Optional[tuple[int, int]]:
    """The first conjugate pair on a root-first branch, as (negative, positive) indices.

    "First" means the pair completed earliest: smallest later index, then
    smallest earlier index. Negative is the F / level-1 member.
    """
    seen: dict[tuple[bool, Formula], int] = {}
    for j, lab in enumerate(labels):
        pol = _polarity(lab)
        i = seen.get((not pol, lab.body))
        if i is not None:
            return (j, i) if not pol else (i, j)
        seen.setdefault((pol, lab.body), j)
    return None


@dataclass(frozen=True)
class Theta:
    """A root-first branch of Q-nodes together with the Q it is read against."""

    nodes: tuple[QNode, ...]
    q: Formula

    def __post_init__(self) -> None:
        if not self.nodes:
            raise ValueError("a branch needs at least one node")

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, i: int) -> QNode:
        return self.nodes[i]

    def extend(self, node: QNode) -> "Theta":
        return Theta(self.nodes + (node,), self.q)

    def terms(self) -> tuple[Formula, ...]:
        return tuple(n.realize(self.q) for n in self.nodes)

    def negconj(self) -> Formula:
        return neg_conj(self.q, self.terms())

    def conjugate_pair(self) -> Optional[tuple[int, int]]:
        return conjugate_pair(self.nodes)


@dataclass
class Node:
    label: Label
    parent: Optional[int]
    children: list[int] = field(default_factory=list)
    closed: bool = False  # set on leaves whose branch holds a conjugate pair


@dataclass(frozen=True)
class Expansion:
    """One rule application: ``source`` expanded onto the branch ending at ``leaf``.

    For alpha, ``children`` is (first, second) with second a child of first;
    for beta both are children of ``leaf``.
    """

    source: int
    kind: Literal["alpha", "beta"]
    leaf: int
    children: tuple[int, int]


@dataclass
class Tableau:
    nodes: list[Node]
    trace: list[Expansion]
    q: Optional[Formula] = None

    @property
    def root(self) -> Node:
        return self.nodes[0]

    def leaves(self) -> list[int]:
        """Leaf positions, left to right."""
        out, stack = [], [0]
        while stack:
            i = stack.pop()
            kids = self.nodes[i].children
            if kids:
                stack.extend(reversed(kids))
            else:
                out.append(i)
        return out

    def path(self, i: int) -> list[int]:
        """Positions from the root down to ``i``."""
        out = []
        while i is not None:
            out.append(i)
            i = self.nodes[i].parent
        return out[::-1]

    def labels(self, i: int) -> list[Label]:
        return [self.nodes[k].label for k in self.path(i)]

    def branch_count(self) -> int:
        return len(self.leaves())

    def __len__(self) -> int:
        return len(self.nodes)


def _open_leaves_below(t: Tableau, i: int) -> Iterator[int]:
    stack = [i]
    while stack:
        k = stack.pop()
        node = t.nodes[k]
        if node.children:
            stack.extend(reversed(node.children))
        elif not node.closed:
            yield k


def expand(root: SignedFormula | Formula) -> Tableau:
    """Fully expand a signed tableau.

    Nodes are processed in creation order; each implication-bodied node is
    applied once to every open branch through it. A branch is marked closed
    as soon as it contains a conjugate pair and is not extended further.
    A bare formula ``Z`` means the root ``F Z``.
    """
    if not isinstance(root, SignedFormula):
        root = SignedFormula(False, root)
    t = Tableau([Node(root, None)], [])

    def add(label: Label, parent: int) -> int:
        t.nodes.append(Node(label, parent))
        t.nodes[parent].children.append(len(t.nodes) - 1)
        return len(t.nodes) - 1

    def settle(leaf: int) -> None:
        t.nodes[leaf].closed = conjugate_pair(t.labels(leaf)) is not None

    settle(0)
    i = 0
    while i < len(t.nodes):
        rule = classify_signed(t.nodes[i].label)
        if rule is not None:
            for leaf in list(_open_leaves_below(t, i)):
                if isinstance(rule, Alpha):
                    a = add(rule.first, leaf)
                    b = add(rule.second, a)
                    t.trace.append(Expansion(i, "alpha", leaf, (a, b)))
                    settle(b)
                else:
                    a = add(rule.left, leaf)
                    b = add(rule.right, leaf)
                    t.trace.append(Expansion(i, "beta", leaf, (a, b)))
                    settle(a)
                    settle(b)
        i += 1
    return t


def is_closed(t: Tableau) -> bool:
    """Every root-to-leaf branch contains a conjugate pair."""
    return all(conjugate_pair(t.labels(leaf)) is not None for leaf in t.leaves())


def to_q(t: Tableau, q: Formula) -> Tableau:
    """Relabel F W as QNode(1, W) and T W as QNode(2, W); shape and trace kept."""
    root = t.nodes[0].label
    if not isinstance(root, SignedFormula) or root.sign:
        raise TableauError("Q-translation needs a signed tableau rooted at F Z")
    nodes = [
        replace(n, label=QNode(2 if n.label.sign else 1, n.label.body), children=list(n.children))
        for n in t.nodes
    ]
    return Tableau(nodes, list(t.trace), q)


def branch_of(t: Tableau, leaf: int) -> Theta:
    if t.q is None:
        raise TableauError("branch_of needs a Q-tableau (see to_q)")
    if not 0 <= leaf < len(t.nodes) or t.nodes[leaf].children:
        raise TableauError(f"position {leaf} is not a leaf")
    return Theta(tuple(t.labels(leaf)), t.q)


def render_tableau(t: Tableau, indent: str = "  ") -> str:
    """Indented tree; forks indent their children one level, closed leaves end in ' x'."""
    lines: list[str] = []
    stack: list[tuple[int, int]] = [(0, 0)]
    while stack:
        i, depth = stack.pop()
        node = t.nodes[i]
        mark = " x" if not node.children and conjugate_pair(t.labels(i)) else ""
        lines.append(f"{indent * depth}{node.label}{mark}")
        kids = node.children
        if len(kids) == 1:
            stack.append((kids[0], depth))
        else:
            stack.extend((k, depth + 1) for k in reversed(kids))
    return "\n".join(lines) + "\n"
