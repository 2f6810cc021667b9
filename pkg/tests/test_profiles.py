"""Pair profiles, their congruences, and the folded periodic membership test."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from buchicong import (
    Alphabet,
    BudgetExceededError,
    Nbw,
    Profile,
    UpWord,
    classical_congruence,
    compose,
    epsilon_profile,
    lasso_membership,
    letter_profile,
    periodic_membership_from_profile,
    progress_congruence_improved,
    reach,
    step,
    subset_congruence,
    word_profile,
)
from buchicong.profiles import restrict
from conftest import seeded_nbws, words
from test_automata import inf_many


def brute_profile(a: Nbw, word) -> Profile:
    """Independent reference: track (state, visited-acceptance) pairs per
    source state, letter by letter, with no mask arithmetic."""
    n = len(a.states)
    out_r = [0] * n
    out_rf = [0] * n
    for i, q in enumerate(a.states):
        frontier = {(q, q in a.accepting)}
        for sym in word:
            nxt = set()
            for state, hit in frontier:
                for r in a.successors(state, sym):
                    nxt.add((r, hit or r in a.accepting))
            frontier = nxt
        for state, hit in frontier:
            j = a.index(state)
            out_r[i] |= 1 << j
            if hit:
                out_rf[i] |= 1 << j
    return Profile(n, tuple(out_r), tuple(out_rf))


# --- profile values ---------------------------------------------------------------


def test_profile_rejects_visit_outside_reach():
    with pytest.raises(ValueError):
        Profile(1, (0,), (1,))
    with pytest.raises(ValueError):
        Profile(2, (1,), (0,))


def test_epsilon_profile_is_identity_with_accepting_diagonal():
    a = inf_many("a", "b")
    p = epsilon_profile(a)
    assert p.reach == tuple(1 << i for i in range(len(a.states)))
    hit, wait = a.index("hit"), a.index("wait")
    assert p.reach_f[hit] == 1 << hit
    assert p.reach_f[wait] == 0


def test_letter_profile_marks_either_endpoint():
    a = inf_many("a", "b")
    hit, wait = a.index("hit"), a.index("wait")
    p = letter_profile(a, "a")
    # every a-move lands on the accepting state, so reach and reach_f agree
    assert p.reach == p.reach_f
    q = letter_profile(a, "b")
    # b-moves land on the waiting state; only the accepting source is marked
    assert q.reach[hit] == 1 << wait and q.reach_f[hit] == 1 << wait
    assert q.reach[wait] == 1 << wait and q.reach_f[wait] == 0


def test_to_triples_reads_back_the_masks():
    a = inf_many("a", "b")
    text = letter_profile(a, "b").to_triples(a.states)
    assert "hit => wait" in text
    assert "wait -> wait" in text


@given(seeded_nbws(), words(max_len=4))
def test_word_profile_matches_run_enumeration(a, w):
    assert word_profile(a, w) == brute_profile(a, w)


@given(seeded_nbws(), words(max_len=3), words(max_len=3))
def test_profile_composition_is_concatenation(a, x, y):
    got = compose(word_profile(a, x), word_profile(a, y))
    assert got == word_profile(a, x + y)


def test_compose_rejects_size_mismatch():
    with pytest.raises(ValueError):
        compose(Profile(1, (1,), (0,)), Profile(2, (1, 2), (0, 0)))


# --- restriction and periodic membership ----------------------------------------------


def test_restrict_zeroes_foreign_rows():
    a = inf_many("a", "b")
    wait = a.index("wait")
    rp = restrict(word_profile(a, ("b",)), frozenset({wait}))
    assert rp.sources == frozenset({wait})
    assert rp.profile.reach[a.index("hit")] == 0
    assert rp.image() == frozenset({wait})


def test_periodic_membership_requires_stable_image():
    a = inf_many("a", "b")
    wait = a.index("wait")
    bad = restrict(word_profile(a, ("a",)), frozenset({wait}))
    with pytest.raises(ValueError):
        periodic_membership_from_profile(a, bad)


def test_periodic_membership_on_known_loops():
    a = inf_many("a", "b")
    hit, wait = a.index("hit"), a.index("wait")
    stays_out = restrict(word_profile(a, ("b",)), frozenset({wait}))
    assert not periodic_membership_from_profile(a, stays_out)
    stays_in = restrict(word_profile(a, ("a",)), frozenset({hit}))
    assert periodic_membership_from_profile(a, stays_in)
    # a two-letter loop through the accepting state, seen from outside it
    round_trip = restrict(word_profile(a, ("a", "b")), frozenset({wait}))
    assert periodic_membership_from_profile(a, round_trip)


def run_set(a: Nbw, start: frozenset[str], word) -> frozenset[str]:
    cur = start
    for sym in word:
        cur = step(a, cur, sym)
    return cur


@given(seeded_nbws(max_states=3), words(max_len=3).filter(bool))
def test_periodic_membership_agrees_with_oracle(a, v):
    # walk the subset orbit of v until it repeats, then fold the cycle into
    # one longer period whose source set is stable
    orbit = [a.initial]
    while True:
        nxt = run_set(a, orbit[-1], v)
        if nxt in orbit:
            h = orbit.index(nxt)
            p = len(orbit) - h
            break
        orbit.append(nxt)
    sources = orbit[h]
    if not sources:
        return
    period = v * p
    stem = v * h
    src_ids = frozenset(a.index(q) for q in sources)
    rp = restrict(word_profile(a, period), src_ids)
    assert rp.image() == src_ids
    want = lasso_membership(a, UpWord(stem, period)).accepted
    assert periodic_membership_from_profile(a, rp) == want


# --- congruence structures ---------------------------------------------------------------


def test_classical_class_count_on_permutation_family(b3):
    assert len(classical_congruence(b3)) == 65


def test_subset_classes_on_permutation_family(b3):
    lead = subset_congruence(b3)
    assert len(lead) == 6
    payloads = {c.payload for c in lead.classes}
    assert payloads == {
        frozenset({"q"}),
        frozenset({"q1"}),
        frozenset({"q2"}),
        frozenset({"q3"}),
        frozenset({"q0"}),
        frozenset({"q0", "qm1"}),
    }


def test_improved_progress_sizes_on_permutation_family(b3):
    lead = subset_congruence(b3)
    sizes = {
        c.witness: len(progress_congruence_improved(b3, c.payload))
        for c in lead.classes
    }
    assert sizes == {
        (): 6,
        ("0",): 2,
        ("1",): 9,
        ("2",): 9,
        ("3",): 9,
        ("0", "0"): 2,
    }


def test_budget_stops_exploration(b3):
    with pytest.raises(BudgetExceededError) as err:
        subset_congruence(b3, budget=3)
    assert err.value.budget == 3
    assert err.value.count == 3


def test_witnesses_are_shortest_lex_and_alternates_stay_in_class(b3):
    lead = subset_congruence(b3)
    for c in lead.classes:
        assert reach(b3, c.witness) == c.payload
        for alt in c.alternates:
            assert reach(b3, alt) == c.payload
            assert len(alt) >= len(c.witness)
    by_payload = {c.payload: c.witness for c in lead.classes}
    assert by_payload[frozenset({"q0", "qm1"})] == ("0", "0")
    assert by_payload[frozenset({"q"})] == ()


def test_dfw_run_and_accepting_helpers(b3):
    lead = subset_congruence(b3)
    assert lead.run(()) == lead.initial
    assert lead.payload_of(("1", "1")) == frozenset({"q"})
    with pytest.raises(ValueError):
        lead.accepts(("1",))
    marked = lead.with_accepting(frozenset({lead.run(("0",))}))
    assert marked.accepts(("0",))
    assert not marked.accepts(())
