"""Ordered-subset congruences: the leading equivalence tracks a sequence of
disjoint state blocks rather than a flat set, ordering blocks by how recently
their runs touched acceptance.  The progress side adds, per current state,
the strongest block of origin it is reachable from and one flag saying
whether some run from that strongest block meets acceptance on the way.

The acceptance flag is what makes periodic membership a class invariant:
two periods that shuffle the same states back to the same arrangement can
still differ on whether the loop passes an accepting state, and dropping
the flag would merge them.  Leading classes number at most n^n; progress
classes stay within n^n (n+1)^n on everything the suite measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .automata import Nbw, Word
from .profiles import (
    DEFAULT_CLASS_BUDGET,
    CongruenceDfw,
    build_congruence_dfw,
)


@dataclass(frozen=True)
class PreorderedSubset:
    """Disjoint non-empty blocks of states, least-recently-accepting first.
    State ids are automaton indices; blocks are frozensets.  The rightmost
    block is the maximal one under the tracked preorder."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if b & seen:
                raise ValueError("blocks must be disjoint")
            seen |= b

    def states(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out |= b
        return frozenset(out)

    def block_of(self, q: int) -> int:
        for i, b in enumerate(self.blocks):
            if q in b:
                return i
        raise KeyError(q)

    def pretty(self, names: tuple[str, ...]) -> str:
        parts = []
        for b in self.blocks:
            inner = ",".join(names[i] for i in sorted(b))
            parts.append("{" + inner + "}")
        return "<" + ",".join(parts) + ">"


def initial_preordered(a: Nbw) -> PreorderedSubset:
    """Initial states split into a non-accepting block then an accepting one,
    empty blocks dropped.  Accepting sits rightmost: a length-0 run from an
    accepting state already counts as visiting acceptance."""
    non_acc = frozenset(a.index(q) for q in a.initial if q not in a.accepting)
    acc = frozenset(a.index(q) for q in a.initial if q in a.accepting)
    blocks = tuple(b for b in (non_acc, acc) if b)
    return PreorderedSubset(blocks)


def ordered_step(a: Nbw, ps: PreorderedSubset, sym: str) -> PreorderedSubset:
    """One-letter successor.  Each successor state is keyed by the highest
    block index among its predecessors and by whether it is accepting; keys
    sort ascending, acceptance breaking ties upward, and each state lands in
    the block of its strongest key.  Empty groups vanish."""
    acc_ids = {a.index(q) for q in a.accepting}
    best: dict[int, tuple[int, int]] = {}
    for bi, block in enumerate(ps.blocks):
        for qi in block:
            q = a.states[qi]
            for r in a.successors(q, sym):
                ri = a.index(r)
                key = (bi, 1 if ri in acc_ids else 0)
                if ri not in best or key > best[ri]:
                    best[ri] = key
    groups: dict[tuple[int, int], set[int]] = {}
    for ri, key in best.items():
        groups.setdefault(key, set()).add(ri)
    blocks = tuple(frozenset(groups[k]) for k in sorted(groups))
    return PreorderedSubset(blocks)


def ordered_reach(a: Nbw, word: Word) -> PreorderedSubset:
    ps = initial_preordered(a)
    for sym in word:
        ps = ordered_step(a, ps, sym)
    return ps


# --- independent reference: reduced run DAG ---------------------------------


@dataclass(frozen=True)
class OrderedRunDag:
    """Levelled reduced run DAG over a finite word: one PreorderedSubset per
    prefix length plus, per level, the flags saying which blocks are made of
    accepting states.  Built by an explicit partition/keep-rightmost sweep,
    deliberately not sharing code with ordered_step, so the two can check
    each other."""

    levels: tuple[PreorderedSubset, ...]


def ordered_run_dag(a: Nbw, word: Word) -> OrderedRunDag:
    acc_ids = {a.index(q) for q in a.accepting}
    init = sorted(a.index(q) for q in a.initial)
    lvl_blocks: list[tuple[frozenset[int], ...]] = []
    first_na = frozenset(i for i in init if i not in acc_ids)
    first_a = frozenset(i for i in init if i in acc_ids)
    lvl_blocks.append(tuple(b for b in (first_na, first_a) if b))
    for sym in word:
        prev = lvl_blocks[-1]
        # raw successor blocks in preorder position: for block j (0-based),
        # non-accepting successors precede accepting successors of the same
        # block, and later blocks dominate earlier ones entirely
        raw: list[set[int]] = []
        for block in prev:
            succ: set[int] = set()
            for qi in block:
                q = a.states[qi]
                for r in a.successors(q, sym):
                    succ.add(a.index(r))
            raw.append(succ - acc_ids)
            raw.append(succ & acc_ids)
        # keep only the rightmost occurrence of every state
        claimed: set[int] = set()
        kept: list[frozenset[int]] = []
        for grp in reversed(raw):
            grp2 = frozenset(grp - claimed)
            claimed |= grp2
            kept.append(grp2)
        kept.reverse()
        lvl_blocks.append(tuple(b for b in kept if b))
    return OrderedRunDag(tuple(PreorderedSubset(bs) for bs in lvl_blocks))


# --- leading congruence ------------------------------------------------------


def optimal_leading_congruence(a: Nbw, budget: int = DEFAULT_CLASS_BUDGET) -> CongruenceDfw:
    """Right congruence with PreorderedSubset payloads."""
    return build_congruence_dfw(
        a.alphabet,
        initial_preordered(a),
        lambda ps, sym: ordered_step(a, ps, sym),
        budget,
    )


# --- progress congruence ------------------------------------------------------


@dataclass(frozen=True)
class OptProgressState:
    """Progress payload for one leading class with base arrangement `origin`:
    the ordered successor arrangement of the word read so far, a map from
    each current state to the index of the base block its run started in
    (maximised over runs), and the set of current states with a run from
    that strongest base block that visits acceptance at one of its steps.

    The run start itself is never counted as a visit: a length-0 segment
    contributes nothing, and the visit a state makes by standing at the end
    of one segment already belongs to that segment."""

    origin: tuple[frozenset[int], ...]
    blocks: PreorderedSubset
    back: Mapping[int, int]
    via_acc: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "back", dict(self.back))
        if set(self.back) != set(self.blocks.states()):
            raise ValueError("back map must cover exactly the current states")
        if not self.via_acc <= set(self.back):
            raise ValueError("acceptance flags must sit on current states")

    def __hash__(self):
        return hash(
            (self.origin, self.blocks, tuple(sorted(self.back.items())), self.via_acc)
        )

    def __eq__(self, other):
        return (
            isinstance(other, OptProgressState)
            and self.origin == other.origin
            and self.blocks == other.blocks
            and dict(self.back) == dict(other.back)
            and self.via_acc == other.via_acc
        )


def initial_progress_state(base: PreorderedSubset) -> OptProgressState:
    back = {q: bi for bi, b in enumerate(base.blocks) for q in b}
    return OptProgressState(base.blocks, base, back, frozenset())


def progress_step(a: Nbw, st: OptProgressState, sym: str) -> OptProgressState:
    nxt = ordered_step(a, st.blocks, sym)
    acc_ids = {a.index(q) for q in a.accepting}
    back: dict[int, int] = {}
    hit: dict[int, bool] = {}
    for qi, bi in st.back.items():
        q = a.states[qi]
        qhit = qi in st.via_acc
        for r in a.successors(q, sym):
            ri = a.index(r)
            if ri not in back or bi > back[ri]:
                # stronger origin found: its flag replaces any weaker one
                back[ri] = bi
                hit[ri] = qhit
            elif bi == back[ri] and qhit:
                hit[ri] = True
    via_acc = frozenset(ri for ri in back if hit[ri] or ri in acc_ids)
    # successors of tracked states are exactly the states of nxt
    return OptProgressState(st.origin, nxt, back, via_acc)


def optimal_progress_congruence(
    a: Nbw, base: PreorderedSubset, budget: int = DEFAULT_CLASS_BUDGET
) -> CongruenceDfw:
    """Progress congruence for the leading class whose payload is `base`."""
    return build_congruence_dfw(
        a.alphabet,
        initial_progress_state(base),
        lambda st, sym: progress_step(a, st, sym),
        budget,
    )


def max_class_map_direct(
    a: Nbw, base: PreorderedSubset, word: Word
) -> dict[int, tuple[int, bool]]:
    """Reference computation of the back map and acceptance flags: one
    plain reach set and one acceptance-touched reach set per base block,
    pushed level by level without the incremental trick.  Used to
    cross-check progress_step in tests."""
    acc_ids = {a.index(q) for q in a.accepting}
    reach: list[set[int]] = [set(b) for b in base.blocks]
    touched: list[set[int]] = [set() for _ in base.blocks]
    for sym in word:
        for bi in range(len(base.blocks)):
            nxt_r: set[int] = set()
            nxt_t: set[int] = set()
            for qi in reach[bi]:
                for r in a.successors(a.states[qi], sym):
                    ri = a.index(r)
                    nxt_r.add(ri)
                    if ri in acc_ids or qi in touched[bi]:
                        nxt_t.add(ri)
            reach[bi], touched[bi] = nxt_r, nxt_t
    out: dict[int, tuple[int, bool]] = {}
    for bi in range(len(base.blocks)):
        for qi in reach[bi]:
            if qi not in out or bi > out[qi][0]:
                out[qi] = (bi, qi in touched[bi])
    return out
