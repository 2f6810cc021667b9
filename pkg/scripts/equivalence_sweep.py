#!/usr/bin/env python3
"""Cross-check both complement variants against the lasso membership oracle on
every ultimately periodic word within the decomposition bounds, per automaton:
family verdicts, translated-automaton verdicts, product emptiness, and the
state-count bound.  Exits nonzero on any disagreement."""

from __future__ import annotations

import argparse

from buchicong import DEFAULT_CLASS_BUDGET, gen_bn, random_nbw
from buchicong.cli import DEFAULT_SEED, run_equivalence_suite

COLUMNS = (
    "id",
    "n",
    "variant",
    "corpus",
    "fdfw_mismatches",
    "nbw_mismatches",
    "disjoint",
    "macrostates",
    "nbw_states",
    "nbw_within_bound",
)


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bn", default="2 3", help="swap-family sizes, space separated")
    p.add_argument("--random", type=int, default=15, help="number of seeded automata")
    p.add_argument("--states", type=int, default=4, help="max states per random automaton")
    p.add_argument("--symbols", default="a b", help="random automaton alphabet")
    p.add_argument("--max-u", type=int, default=3, help="corpus prefix length bound")
    p.add_argument("--max-v", type=int, default=3, help="corpus period length bound")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=DEFAULT_CLASS_BUDGET)
    return p.parse_args(argv)


def build_automata(args):
    out = []
    for tok in args.bn.split():
        out.append((f"bn{tok}", gen_bn(int(tok))))
    symbols = tuple(args.symbols.split())
    for i in range(args.random):
        size = 2 + i % max(1, args.states - 1)
        out.append((f"rnd{args.seed + i}n{size}", random_nbw(args.seed + i, size, symbols)))
    return out


def main(argv=None) -> int:
    args = parse_args(argv)
    rows = []
    for aid, a in build_automata(args):
        rows.extend(run_equivalence_suite(aid, a, args.max_u, args.max_v, args.budget))

    cells = [COLUMNS]
    for row in rows:
        cells.append(tuple(str(getattr(row, c)) for c in COLUMNS))
    widths = [max(len(line[i]) for line in cells) for i in range(len(COLUMNS))]
    for line in cells:
        print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())

    words = sum(r.corpus for r in rows)
    bad = [
        r
        for r in rows
        if r.fdfw_mismatches or r.nbw_mismatches or not r.disjoint or not r.nbw_within_bound
    ]
    print()
    if bad:
        print(f"equivalence sweep: FAIL ({[r.id + '/' + r.variant for r in bad]})")
        return 1
    print(
        f"equivalence sweep: PASS ({len(rows)} complement runs, "
        f"{words} word verdicts, all oracle-exact, disjoint, and within bound)"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
