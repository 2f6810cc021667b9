"""Ordered-subset congruences: arrangements, the levelled run DAG reference,
and the acceptance-flagged progress payloads."""

from __future__ import annotations

import pytest
from hypothesis import given

from buchicong import (
    Alphabet,
    Nbw,
    OptProgressState,
    PreorderedSubset,
    initial_preordered,
    optimal_leading_congruence,
    optimal_progress_congruence,
    ordered_reach,
    ordered_run_dag,
    ordered_step,
    reach,
)
from buchicong import random_nbw
from buchicong.preorder import (
    initial_progress_state,
    max_class_map_direct,
    progress_step,
)
from conftest import seeded_nbws, words
from test_automata import inf_many


def arrangement(a: Nbw, *groups: tuple[str, ...]) -> PreorderedSubset:
    return PreorderedSubset(
        tuple(frozenset(a.index(q) for q in grp) for grp in groups)
    )


# --- arrangements ---------------------------------------------------------------


def test_blocks_must_be_disjoint_and_non_empty():
    with pytest.raises(ValueError):
        PreorderedSubset((frozenset(),))
    with pytest.raises(ValueError):
        PreorderedSubset((frozenset({0}), frozenset({0, 1})))


def test_initial_split_puts_accepting_rightmost():
    ab = Alphabet(("a",))
    trans = {("p", "a"): frozenset({"p"}), ("f", "a"): frozenset({"f"})}
    a = Nbw(ab, ("p", "f"), frozenset({"p", "f"}), trans, frozenset({"f"}))
    got = initial_preordered(a)
    assert got == arrangement(a, ("p",), ("f",))


def test_initial_split_drops_empty_sides(b3):
    # the only initial state is accepting, so one block remains
    assert initial_preordered(b3) == arrangement(b3, ("q",))


def test_ordered_step_on_permutation_family(b3):
    start = initial_preordered(b3)
    assert ordered_step(b3, start, "1") == arrangement(b3, ("q1",))
    assert ordered_step(b3, start, "0") == arrangement(b3, ("q0",))
    hub = arrangement(b3, ("q0",))
    split = ordered_step(b3, hub, "0")
    # the sink is accepting and newly reached, so it outranks the hub
    assert split == arrangement(b3, ("q0",), ("qm1",))
    assert ordered_step(b3, split, "2") == split
    assert split.pretty(b3.states) == "<{q0},{qm1}>"


def test_ordered_step_tolerates_dying_runs():
    ab = Alphabet(("a",))
    a = Nbw(ab, ("p",), frozenset({"p"}), {}, frozenset())
    assert ordered_reach(a, ("a",)) == PreorderedSubset(())


@given(seeded_nbws(), words(max_len=5))
def test_ordered_reach_is_fold_of_steps(a, w):
    ps = initial_preordered(a)
    for sym in w:
        ps = ordered_step(a, ps, sym)
    assert ordered_reach(a, w) == ps


@given(seeded_nbws(), words(max_len=5))
def test_run_dag_levels_match_arrangement_prefixes(a, w):
    dag = ordered_run_dag(a, w)
    assert len(dag.levels) == len(w) + 1
    for i in range(len(w) + 1):
        assert dag.levels[i] == ordered_reach(a, w[:i])


# --- leading congruence ------------------------------------------------------------


def test_leading_classes_on_permutation_family(b3):
    lead = optimal_leading_congruence(b3)
    assert len(lead) == 6
    witnesses = {c.witness for c in lead.classes}
    assert witnesses == {(), ("0",), ("1",), ("2",), ("3",), ("0", "0")}


def test_arrangement_states_equal_reachable_set(b3):
    lead = optimal_leading_congruence(b3)
    for c in lead.classes:
        ids = frozenset(b3.index(q) for q in reach(b3, c.witness))
        assert c.payload.states() == ids


@given(seeded_nbws())
def test_arrangement_count_refines_subset_count(a):
    from buchicong import subset_congruence

    # each arrangement flattens to one subset, so the quotient is no coarser
    lead = optimal_leading_congruence(a)
    flat = subset_congruence(a)
    assert len(lead) >= len(flat)
    for c in lead.classes:
        want = frozenset(a.index(q) for q in flat.classes[flat.run(c.witness)].payload)
        assert c.payload.states() == want


def test_dead_class_pushes_two_state_arrangements_past_the_live_cap():
    # A two-state automaton reaches at most 4 live arrangements, the cap the
    # bounds suite checks per state count.  An incomplete one also reaches the
    # dead arrangement, so the total class count lands one past that cap.
    # The bound pool in conftest therefore starts at three states, where the
    # cap exceeds the total number of arrangements outright.
    a = random_nbw(1741, 2)
    lead = optimal_leading_congruence(a)
    live = [c for c in lead.classes if c.payload.blocks]
    dead = [c for c in lead.classes if not c.payload.blocks]
    assert len(live) == 4
    assert len(dead) == 1
    assert len(lead) == 5 > 2**2


# --- progress congruence --------------------------------------------------------------


def test_progress_sizes_on_permutation_family(b3):
    lead = optimal_leading_congruence(b3)
    sizes = {
        c.witness: len(optimal_progress_congruence(b3, c.payload))
        for c in lead.classes
    }
    assert sizes == {
        (): 12,
        ("0",): 2,
        ("1",): 9,
        ("2",): 9,
        ("3",): 9,
        ("0", "0"): 2,
    }


def test_acceptance_flag_separates_silent_and_visiting_loops(b3):
    # both periods return {q1} to its own arrangement, but only the second
    # passes through the accepting hub on the way
    lead = optimal_leading_congruence(b3)
    base = lead.classes[lead.run(("1",))].payload
    prog = optimal_progress_congruence(b3, base)
    silent = prog.run(("2",))
    visiting = prog.run(("1", "1"))
    assert silent != visiting
    q1 = b3.index("q1")
    assert prog.classes[silent].payload.blocks == base
    assert prog.classes[visiting].payload.blocks == base
    assert prog.classes[silent].payload.via_acc == frozenset()
    assert prog.classes[visiting].payload.via_acc == frozenset({q1})


def test_progress_state_validates_its_maps():
    base = PreorderedSubset((frozenset({0}),))
    with pytest.raises(ValueError):
        OptProgressState(base.blocks, base, {}, frozenset())
    with pytest.raises(ValueError):
        OptProgressState(base.blocks, base, {0: 0}, frozenset({1}))


@given(seeded_nbws(), words(max_len=2), words(max_len=4))
def test_progress_payload_matches_reference_map(a, u, w):
    base = ordered_reach(a, u)
    state = initial_progress_state(base)
    for sym in w:
        state = progress_step(a, state, sym)
    direct = max_class_map_direct(a, base, w)
    assert dict(state.back) == {qi: bi for qi, (bi, _) in direct.items()}
    assert state.via_acc == frozenset(
        qi for qi, (_, hit) in direct.items() if hit
    )
    assert state.blocks == ordered_reach(a, u + w)
