#!/usr/bin/env python3
"""Tabulate class counts for every congruence across a mix of structured and
seeded random automata, check each count against its proven bound, and exit
nonzero if any bound breaks or any phase blows its class budget."""

from __future__ import annotations

import argparse

from buchicong import DEFAULT_CLASS_BUDGET, gen_bn, gen_bn_dbw, random_nbw
from buchicong.cli import DEFAULT_SEED, run_bounds_suite

COLUMNS = (
    "id",
    "n",
    "deterministic",
    "classical",
    "subset",
    "improved_max",
    "improved_sum",
    "optimal",
    "optimal_progress_max",
    "optimal_progress_sum",
    "macro_improved",
    "macro_optimal",
    "bounds_ok",
    "budget_exceeded",
)


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bn", default="2 3", help="swap-family sizes, space separated")
    p.add_argument(
        "--bn-dbw", default="2 3", help="deterministic variant sizes, space separated"
    )
    p.add_argument("--random", type=int, default=20, help="number of seeded automata")
    p.add_argument("--states", type=int, default=4, help="max states per random automaton")
    p.add_argument("--symbols", default="a b", help="random automaton alphabet")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=DEFAULT_CLASS_BUDGET)
    return p.parse_args(argv)


def build_automata(args):
    out = []
    for tok in args.bn.split():
        out.append((f"bn{tok}", gen_bn(int(tok))))
    for tok in args.bn_dbw.split():
        out.append((f"bn-dbw{tok}", gen_bn_dbw(int(tok))))
    symbols = tuple(args.symbols.split())
    for i in range(args.random):
        size = 2 + i % max(1, args.states - 1)
        out.append((f"rnd{args.seed + i}n{size}", random_nbw(args.seed + i, size, symbols)))
    return out


def print_table(rows) -> None:
    cells = [COLUMNS]
    for row in rows:
        cells.append(tuple(str(getattr(row, c)) for c in COLUMNS))
    widths = [max(len(line[i]) for line in cells) for i in range(len(COLUMNS))]
    for line in cells:
        print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())


def main(argv=None) -> int:
    args = parse_args(argv)
    rows = run_bounds_suite(build_automata(args), args.budget)
    print_table(rows)
    broken = [r.id for r in rows if not r.bounds_ok]
    blown = [r.id for r in rows if r.budget_exceeded]
    print()
    if broken or blown:
        print(f"bounds table: FAIL (broken: {broken}, budget exceeded: {blown})")
        return 1
    print(f"bounds table: PASS ({len(rows)} automata, every class count within bound)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
