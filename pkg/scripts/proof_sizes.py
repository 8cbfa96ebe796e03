"""Tableau, derivation and proof sizes over a bounded formula enumeration.

Writes one CSV row per tautology and prints a per-size summary:

    python3 scripts/proof_sizes.py --max-connectives 4 -o sizes.csv
"""
from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from collections import defaultdict
from dataclasses import dataclass, field

from qtableau.semantics import Tautology, enumerate_formulas, tautology
from qtableau.syntax import render, size
from qtableau.tableau import expand, to_q
from qtableau.uq import prove_tautology, prune, step_count


@dataclass
class Config:
    variables: list[str] = field(default_factory=lambda: ["p", "q"])
    max_connectives: int = 4
    output: str | None = None


def parse_args(argv=None) -> Config:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--variables", default="p,q", help="comma-separated variable names")
    ap.add_argument("--max-connectives", type=int, default=4)
    ap.add_argument("-o", "--output", help="CSV path (default: no CSV)")
    a = ap.parse_args(argv)
    return Config(a.variables.split(","), a.max_connectives, a.output)


def measure(cfg: Config) -> list[dict]:
    rows = []
    for f in enumerate_formulas(cfg.variables, cfg.max_connectives):
        if not isinstance(tautology(f), Tautology):
            continue
        t = expand(f)
        start = time.perf_counter()
        proof = prove_tautology(f)
        rows.append({
            "formula": render(f),
            "connectives": size(f),
            "tableau_nodes": len(t),
            "branches": t.branch_count(),
            "uq_steps": step_count(prune(to_q(t, f))),
            "proof_lines": len(proof),
            "seconds": round(time.perf_counter() - start, 4),
        })
    return rows


def summarize(rows: list[dict]) -> None:
    by_size = defaultdict(list)
    for r in rows:
        by_size[r["connectives"]].append(r)
    print(f"{'size':>4} {'count':>6} {'nodes':>7} {'steps':>7} {'lines(mean)':>12} {'lines(max)':>11}")
    for n in sorted(by_size):
        rs = by_size[n]
        print(f"{n:>4} {len(rs):>6} "
              f"{statistics.mean(r['tableau_nodes'] for r in rs):>7.1f} "
              f"{statistics.mean(r['uq_steps'] for r in rs):>7.1f} "
              f"{statistics.mean(r['proof_lines'] for r in rs):>12.1f} "
              f"{max(r['proof_lines'] for r in rs):>11}")


def main(argv=None) -> int:
    cfg = parse_args(argv)
    rows = measure(cfg)
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    summarize(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
