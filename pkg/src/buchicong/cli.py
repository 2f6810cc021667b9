"""Command-line surface and experiment harness.

Every reporting subcommand emits TSV on stdout (header row first) and the
same data as one JSON document with --json.  Reports are byte-identical
across runs for the same inputs and flags; wall-clock columns only appear
where an interface pins them (classes) or where --timings asks for them.

Exit codes: 0 success, 1 a bound/equivalence/saturation/containment check
failed, 2 malformed input or usage, 3 class budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from dataclasses import dataclass

from .automata import (
    Nbw,
    ParseError,
    UpWord,
    enumerate_upwords,
    intersect,
    is_empty,
    lasso_membership,
    parse_nbw,
    parse_word,
    serialize_nbw,
)
from .families import gen_bn, gen_bn_dbw, random_nbw
from .fdfw import (
    Fdfw,
    accepts_upword,
    check_saturation_sampled,
    complement_fdfw_improved,
    complement_fdfw_optimal,
    containment,
    fdfw_to_nbw,
    nbw_state_bound,
    parse_fdfw,
    serialize_dfw,
    serialize_fdfw,
)
from .preorder import optimal_leading_congruence, optimal_progress_congruence
from .profiles import (
    DEFAULT_CLASS_BUDGET,
    BudgetExceededError,
    CongruenceDfw,
    classical_congruence,
    progress_congruence_improved,
    subset_congruence,
)

DEFAULT_SEED = 1729

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3


def _env_budget() -> int:
    raw = os.environ.get("CONGRUENCE_BUDGET")
    if raw is None:
        return DEFAULT_CLASS_BUDGET
    try:
        val = int(raw)
        if val < 1:
            raise ValueError
    except ValueError:
        raise SystemExit(
            f"CONGRUENCE_BUDGET must be a positive integer, got {raw!r}"
        ) from None
    return val


def _budget(args) -> int:
    return args.budget if args.budget is not None else _env_budget()


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_nbw(path: str) -> Nbw:
    return parse_nbw(_read_text(path))


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(columns: list[str], rows: list[dict], as_json: bool) -> None:
    if as_json:
        doc = [{c: row.get(c) for c in columns} for row in rows]
        print(json.dumps(doc, indent=2))
        return
    print("\t".join(columns))
    for row in rows:
        print("\t".join(_cell(row.get(c)) for c in columns))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _join_word(word) -> str:
    return " ".join(word)


# --- classes -----------------------------------------------------------------


def _relation_builders(a: Nbw, relation: str, context: tuple[str, ...], budget: int):
    """(relation name, zero-argument builder) pairs for one --relation choice."""
    if relation == "classical":
        yield "classical", lambda: classical_congruence(a, budget)
    elif relation == "subset":
        yield "subset", lambda: subset_congruence(a, budget)
    elif relation == "optimal":
        yield "optimal", lambda: optimal_leading_congruence(a, budget)
    elif relation == "improved-progress":
        lead = subset_congruence(a, budget)
        cls = lead.classes[lead.run(context)]
        name = f"improved-progress[{_join_word(cls.witness)}]"
        yield name, lambda: progress_congruence_improved(a, cls.payload, budget)
    elif relation == "optimal-progress":
        lead = optimal_leading_congruence(a, budget)
        cls = lead.classes[lead.run(context)]
        name = f"optimal-progress[{_join_word(cls.witness)}]"
        yield name, lambda: optimal_progress_congruence(a, cls.payload, budget)
    else:  # all
        yield "classical", lambda: classical_congruence(a, budget)
        lead = subset_congruence(a, budget)
        yield "subset", lambda: lead
        for cls in lead.classes:
            yield (
                f"improved-progress[{_join_word(cls.witness)}]",
                lambda cls=cls: progress_congruence_improved(a, cls.payload, budget),
            )
        olead = optimal_leading_congruence(a, budget)
        yield "optimal", lambda: olead
        for cls in olead.classes:
            yield (
                f"optimal-progress[{_join_word(cls.witness)}]",
                lambda cls=cls: optimal_progress_congruence(a, cls.payload, budget),
            )


def _max_witness_len(dfw: CongruenceDfw) -> int:
    lens = [len(c.witness) for c in dfw.classes if c.witness is not None]
    return max(lens) if lens else 0


def cmd_classes(args) -> int:
    a = _load_nbw(args.infile)
    budget = _budget(args)
    context = parse_word(a.alphabet, args.u)
    if args.dump and args.relation == "all":
        print("--dump needs one concrete --relation", file=sys.stderr)
        return EXIT_BAD_INPUT
    rows = []
    dumped: CongruenceDfw | None = None
    for name, build in _relation_builders(a, args.relation, context, budget):
        t0 = time.perf_counter()
        dfw = build()
        elapsed = int(round((time.perf_counter() - t0) * 1000))
        rows.append(
            {
                "relation": name,
                "classes": len(dfw),
                "max_witness_len": _max_witness_len(dfw),
                "elapsed_ms": elapsed,
            }
        )
        dumped = dfw
    if args.dump and dumped is not None:
        _write_text(args.dump, serialize_dfw(dumped))
        wit_lines = ["class\twitness\talternates"]
        for c in dumped.classes:
            wit = "" if c.witness is None else _join_word(c.witness)
            alts = "|".join(_join_word(w) for w in c.alternates)
            wit_lines.append(f"c{c.cid}\t{wit}\t{alts}")
        _write_text(args.dump + ".witnesses.tsv", "\n".join(wit_lines) + "\n")
    _emit(["relation", "classes", "max_witness_len", "elapsed_ms"], rows, args.json)
    return EXIT_OK


# --- complement / to-nbw -----------------------------------------------------


_VARIANTS = {"optimal": complement_fdfw_optimal, "improved": complement_fdfw_improved}


def cmd_complement(args) -> int:
    a = _load_nbw(args.infile)
    t0 = time.perf_counter()
    f = _VARIANTS[args.variant](a, _budget(args))
    elapsed = int(round((time.perf_counter() - t0) * 1000))
    if args.out:
        _write_text(args.out, serialize_fdfw(f))
    leading, progress = f.size()
    row = {
        "variant": args.variant,
        "leading_classes": leading,
        "progress_classes": progress,
        "accepting_classes": sum(len(p.accepting) for p in f.progress.values()),
        "macrostates": leading + progress,
    }
    cols = ["variant", "leading_classes", "progress_classes", "accepting_classes", "macrostates"]
    if args.timings:
        row["elapsed_ms"] = elapsed
        cols.append("elapsed_ms")
    _emit(cols, [row], args.json)
    return EXIT_OK


def cmd_to_nbw(args) -> int:
    if args.fdfw:
        f = parse_fdfw(_read_text(args.fdfw))
        source = args.fdfw
    else:
        if not args.infile:
            print("to-nbw needs --in with --variant, or --fdfw", file=sys.stderr)
            return EXIT_BAD_INPUT
        a = _load_nbw(args.infile)
        f = _VARIANTS[args.variant](a, _budget(args))
        source = args.variant
    nbw = fdfw_to_nbw(f)
    if args.out:
        _write_text(args.out, serialize_nbw(nbw))
    bound = nbw_state_bound(f)
    row = {
        "source": source,
        "nbw_states": len(nbw.states),
        "state_bound": bound,
        "within_bound": len(nbw.states) <= bound,
    }
    _emit(["source", "nbw_states", "state_bound", "within_bound"], [row], args.json)
    return EXIT_OK


# --- member / contains ---------------------------------------------------------


def cmd_member(args) -> int:
    a = _load_nbw(args.infile)
    u = parse_word(a.alphabet, args.u)
    v = parse_word(a.alphabet, args.v)
    if not v:
        print("--v must be a non-empty period", file=sys.stderr)
        return EXIT_BAD_INPUT
    w = UpWord(u, v)
    row: dict = {"u": _join_word(u), "v": _join_word(v), "via": args.via}
    if args.via == "oracle":
        verdict = lasso_membership(a, w)
        row["accepted"] = verdict.accepted
        row["witness_stem"] = (
            _join_word(verdict.witness.stem_letters) if verdict.witness else None
        )
        row["witness_cycle"] = (
            _join_word(verdict.witness.cycle_letters) if verdict.witness else None
        )
        cols = ["u", "v", "via", "accepted", "witness_stem", "witness_cycle"]
    else:
        # the complement family accepts exactly the words outside L(A), so
        # membership is its negated verdict
        f = _VARIANTS[args.via.removeprefix("complement-")](a, _budget(args))
        row["accepted"] = not accepts_upword(f, w)
        cols = ["u", "v", "via", "accepted"]
    _emit(cols, [row], args.json)
    return EXIT_OK


def cmd_contains(args) -> int:
    a = _load_nbw(args.left)
    b = _load_nbw(args.right)
    holds, cex = containment(a, b, _budget(args))
    row = {
        "holds": holds,
        "counterexample_prefix": _join_word(cex.prefix) if cex else None,
        "counterexample_period": _join_word(cex.period) if cex else None,
    }
    _emit(["holds", "counterexample_prefix", "counterexample_period"], [row], args.json)
    return EXIT_OK if holds else EXIT_CHECK_FAILED


# --- family --------------------------------------------------------------------


def cmd_family(args) -> int:
    if args.variant == "bn":
        a = gen_bn(args.n)
    elif args.variant == "bn-dbw":
        a = gen_bn_dbw(args.n)
    else:
        a = random_nbw(args.seed, args.n, tuple(args.symbols.split()))
    _write_text(args.out, serialize_nbw(a))
    return EXIT_OK


# --- saturation-check ------------------------------------------------------------


def _fmt_decomp(d: UpWord) -> str:
    return f"{_join_word(d.prefix)},{_join_word(d.period)}"


def cmd_saturation_check(args) -> int:
    if args.fdfw:
        f = parse_fdfw(_read_text(args.fdfw))
    else:
        if not args.infile:
            print("saturation-check needs --in with --variant, or --fdfw", file=sys.stderr)
            return EXIT_BAD_INPUT
        a = _load_nbw(args.infile)
        f = _VARIANTS[args.variant](a, _budget(args))
    violations = check_saturation_sampled(f, args.max_u, args.max_v, cap=args.cap)
    rows = [
        {
            "word_prefix": _join_word(v.word.prefix),
            "word_period": _join_word(v.word.period),
            "captured": "|".join(_fmt_decomp(d) for d in v.captured),
            "uncaptured": "|".join(_fmt_decomp(d) for d in v.uncaptured),
        }
        for v in violations
    ]
    _emit(["word_prefix", "word_period", "captured", "uncaptured"], rows, args.json)
    return EXIT_OK if not violations else EXIT_CHECK_FAILED


# --- bounds suite ----------------------------------------------------------------


@dataclass
class StatsRow:
    """Per-automaton bound measurements; None marks a phase that exceeded its
    class budget (recorded in budget_exceeded, never aborting the table)."""

    id: str
    n: int
    deterministic: bool
    classical: int | None = None
    subset: int | None = None
    improved_max: int | None = None
    improved_sum: int | None = None
    optimal: int | None = None
    optimal_progress_max: int | None = None
    optimal_progress_sum: int | None = None
    macro_improved: int | None = None
    macro_optimal: int | None = None
    bounds_ok: bool = True
    budget_exceeded: str = ""
    elapsed_ms: int | None = None


def run_bounds_suite(automata: list[tuple[str, Nbw]], budget: int) -> list[StatsRow]:
    """Compute every congruence per automaton, check the per-relation class
    bounds, and account complement macrostates per variant."""
    rows = []
    for aid, a in automata:
        n = len(a.states)
        row = StatsRow(aid, n, a.is_deterministic() and a.is_complete())
        blown: list[str] = []
        t0 = time.perf_counter()

        def guarded(phase: str, thunk):
            try:
                return thunk()
            except BudgetExceededError:
                blown.append(phase)
                return None

        cls = guarded("classical", lambda: len(classical_congruence(a, budget)))
        row.classical = cls

        lead = guarded("subset", lambda: subset_congruence(a, budget))
        if lead is not None:
            row.subset = len(lead)
            sizes = []
            for c in lead.classes:
                got = guarded(
                    f"improved[{_join_word(c.witness)}]",
                    lambda c=c: len(progress_congruence_improved(a, c.payload, budget)),
                )
                if got is not None:
                    sizes.append(got)
            if len(sizes) == len(lead.classes):
                row.improved_max = max(sizes)
                row.improved_sum = sum(sizes)
                row.macro_improved = row.subset + row.improved_sum

        olead = guarded("optimal", lambda: optimal_leading_congruence(a, budget))
        if olead is not None:
            row.optimal = len(olead)
            sizes = []
            for c in olead.classes:
                got = guarded(
                    f"optimal-progress[{_join_word(c.witness)}]",
                    lambda c=c: len(optimal_progress_congruence(a, c.payload, budget)),
                )
                if got is not None:
                    sizes.append(got)
            if len(sizes) == len(olead.classes):
                row.optimal_progress_max = max(sizes)
                row.optimal_progress_sum = sum(sizes)
                row.macro_optimal = row.optimal + row.optimal_progress_sum

        checks = []
        if row.classical is not None:
            checks.append(row.classical <= 3 ** (n * n))
        if row.subset is not None:
            checks.append(row.subset <= 2**n)
        if row.improved_max is not None:
            checks.append(row.improved_max <= 3 ** (n * n))
            if row.deterministic:
                checks.append(row.improved_sum <= 2 * n * n)
        if row.optimal is not None:
            checks.append(row.optimal <= n**n)
        if row.optimal_progress_max is not None:
            checks.append(row.optimal_progress_max <= n**n * (n + 1) ** n)
        row.bounds_ok = all(checks)
        row.budget_exceeded = ";".join(blown)
        row.elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
        rows.append(row)
    return rows


_BOUNDS_COLUMNS = [
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
]


def _parse_int_list(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok.strip()]


def _suite_automata(args) -> list[tuple[str, Nbw]]:
    out: list[tuple[str, Nbw]] = []
    for n in _parse_int_list(args.bn):
        out.append((f"bn{n}", gen_bn(n)))
    for n in _parse_int_list(args.bn_dbw):
        out.append((f"bn-dbw{n}", gen_bn_dbw(n)))
    symbols = tuple(args.symbols.split())
    for i in range(args.random):
        size = 2 + i % max(1, args.states - 1) if args.states > 1 else 1
        seed = args.seed + i
        out.append((f"rnd{seed}n{size}", random_nbw(seed, size, symbols)))
    return out


def cmd_bounds_suite(args) -> int:
    rows = run_bounds_suite(_suite_automata(args), _budget(args))
    cols = list(_BOUNDS_COLUMNS)
    if args.timings:
        cols.append("elapsed_ms")
    dicts = [dataclasses.asdict(r) for r in rows]
    _emit(cols, dicts, args.json)
    failed = any(r.bounds_ok is False for r in rows)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# --- equivalence suite -------------------------------------------------------------


@dataclass
class EquivRow:
    """Per (automaton, variant) comparison of complement-family acceptance,
    complement-automaton acceptance, and the negated lasso oracle over the
    whole corpus, plus the exact product-emptiness check."""

    id: str
    n: int
    variant: str
    corpus: int
    fdfw_mismatches: int
    nbw_mismatches: int
    disjoint: bool
    macrostates: int
    nbw_states: int
    nbw_within_bound: bool
    elapsed_ms: int | None = None


def run_equivalence_suite(
    aid: str, a: Nbw, max_u: int, max_v: int, budget: int
) -> list[EquivRow]:
    corpus: list[UpWord] = []
    seen: set[UpWord] = set()
    for w in enumerate_upwords(a.alphabet, max_u, max_v):
        c = w.canonical()
        if c not in seen:
            seen.add(c)
            corpus.append(c)
    oracle = {w: lasso_membership(a, w).accepted for w in corpus}
    rows = []
    for variant, builder in (("optimal", complement_fdfw_optimal), ("improved", complement_fdfw_improved)):
        t0 = time.perf_counter()
        f = builder(a, budget)
        nbw = fdfw_to_nbw(f)
        fdfw_mis = sum(1 for w in corpus if accepts_upword(f, w) == oracle[w])
        nbw_mis = sum(
            1 for w in corpus if lasso_membership(nbw, w).accepted == oracle[w]
        )
        disjoint = is_empty(intersect(a, nbw))[0]
        leading, progress = f.size()
        rows.append(
            EquivRow(
                id=aid,
                n=len(a.states),
                variant=variant,
                corpus=len(corpus),
                fdfw_mismatches=fdfw_mis,
                nbw_mismatches=nbw_mis,
                disjoint=disjoint,
                macrostates=leading + progress,
                nbw_states=len(nbw.states),
                nbw_within_bound=len(nbw.states) <= nbw_state_bound(f),
                elapsed_ms=int(round((time.perf_counter() - t0) * 1000)),
            )
        )
    return rows


_EQUIV_COLUMNS = [
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
]


def cmd_equiv_suite(args) -> int:
    budget = _budget(args)
    rows: list[EquivRow] = []
    if args.infile:
        rows.extend(
            run_equivalence_suite(args.infile, _load_nbw(args.infile), args.max_u, args.max_v, budget)
        )
    for aid, a in _suite_automata(args):
        rows.extend(run_equivalence_suite(aid, a, args.max_u, args.max_v, budget))
    cols = list(_EQUIV_COLUMNS)
    if args.timings:
        cols.append("elapsed_ms")
    dicts = [dataclasses.asdict(r) for r in rows]
    _emit(cols, dicts, args.json)
    failed = any(r.fdfw_mismatches or r.nbw_mismatches or not r.disjoint for r in rows)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# --- argument parsing -----------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, budget: bool = True, json_flag: bool = True):
    if budget:
        p.add_argument("--budget", type=int, default=None, help="class budget override")
    if json_flag:
        p.add_argument("--json", action="store_true", help="emit JSON instead of TSV")


def _add_suite_selection(p: argparse.ArgumentParser, bn_default: str, random_default: int):
    p.add_argument("--bn", default=bn_default, help="comma list of permutation family sizes")
    p.add_argument("--bn-dbw", dest="bn_dbw", default="", help="comma list of deterministic family sizes")
    p.add_argument("--random", type=int, default=random_default, help="number of random automata")
    p.add_argument("--states", type=int, default=4, help="max states of random automata")
    p.add_argument("--symbols", default="a b", help="alphabet of random automata")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="base RNG seed")
    p.add_argument("--timings", action="store_true", help="append wall-clock column")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="buchicong",
        description="Congruence-based complementation toolkit for Büchi automata",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", help="congruence class statistics")
    p.add_argument("--in", dest="infile", required=True, help="automaton file (nbw/HOA)")
    p.add_argument(
        "--relation",
        default="all",
        choices=["classical", "subset", "optimal", "improved-progress", "optimal-progress", "all"],
    )
    p.add_argument("--u", default="", help="context word for progress relations")
    p.add_argument("--dump", default=None, help="write the quotient DFW here (plus .witnesses.tsv)")
    _add_common(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("complement", help="build a complement family")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--variant", required=True, choices=["optimal", "improved"])
    p.add_argument("--out", default=None, help="write the family file here")
    p.add_argument("--timings", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("to-nbw", help="translate a family to a Büchi automaton")
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--variant", default="optimal", choices=["optimal", "improved"])
    p.add_argument("--fdfw", default=None, help="translate this family file instead")
    p.add_argument("--out", default=None, help="write the automaton here")
    _add_common(p)
    p.set_defaults(func=cmd_to_nbw)

    p = sub.add_parser("member", help="ultimately periodic membership")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--u", default="", help="prefix word")
    p.add_argument("--v", required=True, help="period word (non-empty)")
    p.add_argument(
        "--via",
        default="oracle",
        choices=["oracle", "complement-optimal", "complement-improved"],
        help="oracle checks the automaton; complement-* check its complement family",
    )
    _add_common(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("contains", help="language containment L(a) within L(b)")
    p.add_argument("left", help="automaton file for the left language")
    p.add_argument("right", help="automaton file for the right language")
    _add_common(p)
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("family", help="emit a benchmark family automaton")
    p.add_argument("--variant", required=True, choices=["bn", "bn-dbw", "random"])
    p.add_argument("--n", type=int, required=True, help="family size / state count")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random variant")
    p.add_argument("--symbols", default="a b", help="alphabet for random variant")
    p.add_argument("--out", default=None)
    _add_common(p, budget=False, json_flag=False)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("saturation-check", help="probe saturation on a word corpus")
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--variant", default="optimal", choices=["optimal", "improved"])
    p.add_argument("--fdfw", default=None, help="check this family file instead")
    p.add_argument("--max-u", dest="max_u", type=int, default=3)
    p.add_argument("--max-v", dest="max_v", type=int, default=3)
    p.add_argument("--cap", type=int, default=8, help="examples kept per violation side")
    _add_common(p)
    p.set_defaults(func=cmd_saturation_check)

    p = sub.add_parser("bounds-suite", help="class-count bound table")
    _add_suite_selection(p, bn_default="3", random_default=5)
    _add_common(p)
    p.set_defaults(func=cmd_bounds_suite)

    p = sub.add_parser("equiv-suite", help="complement pipeline equivalence table")
    p.add_argument("--in", dest="infile", default=None, help="also include this automaton file")
    _add_suite_selection(p, bn_default="3", random_default=5)
    p.add_argument("--max-u", dest="max_u", type=int, default=3)
    p.add_argument("--max-v", dest="max_v", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=cmd_equiv_suite)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except BudgetExceededError as e:
        print(f"budget error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
