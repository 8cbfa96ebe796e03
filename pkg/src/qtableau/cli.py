"""Command-line front end: check, tableau, prove, verify, stats."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .kernel import ProofError, ProofFormatError, check, dump_proof, load_proof
from .semantics import Countermodel, tautology
from .syntax import Formula, ParseError, parse, render
from .tableau import expand, is_closed, render_tableau, to_q
from .uq import NotTautology, prove_tautology, prune, step_count

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _formula(text: str) -> Formula:
    try:
        return parse(text)
    except ParseError as e:
        raise _UsageError(f"cannot parse {text!r}: {e}") from None


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qtableau",
        description="Q-tableau prover and proof checker for implicational logic.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("check", help="decide tautology-hood by truth table")
    c.add_argument("formula")

    t = sub.add_parser("tableau", help="print the signed tableau (and Q-tableau)")
    t.add_argument("formula")
    t.add_argument("--q", metavar="FORMULA", help="also print the Q-translation for this Q")

    pr = sub.add_parser("prove", help="write a checked proof file")
    pr.add_argument("formula")
    pr.add_argument("--q", metavar="FORMULA", help="prove QQZ for this Q instead of Z itself")
    pr.add_argument("-o", "--output", metavar="PATH", help="proof file to write (default: stdout)")

    v = sub.add_parser("verify", help="kernel-check a proof file")
    v.add_argument("path")

    s = sub.add_parser("stats", help="tableau, derivation and proof sizes")
    s.add_argument("formula")
    return p


def _check(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    verdict = tautology(_formula(args.formula))
    if isinstance(verdict, Countermodel):
        print(f"COUNTERMODEL {verdict.describe()}", file=out)
        return EXIT_NEGATIVE
    print("TAUTOLOGY", file=out)
    return EXIT_OK


def _tableau(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    z = _formula(args.formula)
    t = expand(z)
    out.write(render_tableau(t))
    if args.q is not None:
        out.write("\n")
        out.write(render_tableau(to_q(t, _formula(args.q))))
    print("closed" if is_closed(t) else "open", file=out)
    return EXIT_OK


def _prove(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    z = _formula(args.formula)
    q = None if args.q is None else _formula(args.q)
    try:
        proof = prove_tautology(z, q)
    except NotTautology as e:
        print(f"COUNTERMODEL {e.countermodel.describe()}", file=err)
        return EXIT_NEGATIVE
    text = dump_proof(proof)
    if args.output is None:
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"OK {render(proof.conclusion)} ({len(proof)} lines) -> {args.output}", file=out)
    return EXIT_OK


def _verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
    except OSError as e:
        raise _UsageError(f"cannot read {args.path}: {e.strerror}") from None
    try:
        proof = load_proof(text)
        concl = check(proof)
    except (ProofFormatError, ProofError) as e:
        print(f"FAIL {e}", file=out)
        return EXIT_NEGATIVE
    if proof.hypotheses:
        hyps = ", ".join(render(h) for h in proof.hypotheses)
        print(f"OK {hyps} |- {render(concl)}", file=out)
    else:
        print(f"OK {render(concl)}", file=out)
    return EXIT_OK


def _stats(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    z = _formula(args.formula)
    t = expand(z)
    print(f"tableau_nodes: {len(t)}", file=out)
    print(f"branches: {t.branch_count()}", file=out)
    if not is_closed(t):
        print(f"COUNTERMODEL {tautology(z).describe()}", file=err)
        return EXIT_NEGATIVE
    d = prune(to_q(t, z))
    print(f"uq_steps: {step_count(d)}", file=out)
    print(f"proof_lines: {len(prove_tautology(z))}", file=out)
    return EXIT_OK


_COMMANDS = {
    "check": _check,
    "tableau": _tableau,
    "prove": _prove,
    "verify": _verify,
    "stats": _stats,
}


def run(argv: Optional[Sequence[str]] = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args, out, err)
    except _UsageError as e:
        parser.print_usage(err)
        print(f"qtableau: error: {e}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
