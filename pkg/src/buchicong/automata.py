"""Büchi automata on infinite words: data model, text formats, run semantics,
and the lasso-product membership oracle that everything else is checked against.

Words are tuples of symbol tokens.  Ultimately periodic words are kept as an
explicit (prefix, period) decomposition; the same infinite word has many such
decompositions and every operation here is invariant under redecomposition.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

Word = tuple[str, ...]

_RESERVED_TOKENS = {"->"}


class ParseError(ValueError):
    """Malformed automaton text.  Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class AlphabetMismatchError(ValueError):
    """Binary operation applied to automata over different alphabets."""


def _check_token(tok: str, kind: str, line: int | None = None) -> str:
    if not tok or len(tok.split()) != 1 or tok in _RESERVED_TOKENS:
        raise ParseError(f"invalid {kind} token {tok!r}", line)
    return tok


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free symbol list.  The declared order is the tie-break
    order used for canonical witnesses and deterministic iteration everywhere."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        for a in self.symbols:
            _check_token(a, "symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("duplicate alphabet symbols")

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, a: object) -> bool:
        return a in self.symbols


@dataclass(frozen=True)
class UpWord:
    """Ultimately periodic word prefix . period^omega, period non-empty."""

    prefix: Word
    period: Word

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be non-empty")

    def canonical(self) -> "UpWord":
        """Shortest-prefix, primitive-period representation of the same word.

        The period is reduced to its primitive root, then the prefix is rolled
        back while its last letter matches the period's last letter.  Every
        decomposition of the infinite word then starts at or after this prefix
        and uses a power of a rotation of this period.
        """
        v = self.period
        d = len(v)
        for k in range(1, len(v)):
            if len(v) % k == 0 and v == v[:k] * (len(v) // k):
                d = k
                break
        v = v[:d]
        u = self.prefix
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1:] + v[:-1]
        return UpWord(u, v)

    def __str__(self) -> str:
        return f"({' '.join(self.prefix)}, {' '.join(self.period)})"


@dataclass(frozen=True)
class Lasso:
    """Concrete accepting run shape: a stem followed by a cycle that revisits
    its first state.  cycle_states[0] is re-entered after the last cycle letter."""

    stem_states: tuple[str, ...]
    stem_letters: Word
    cycle_states: tuple[str, ...]
    cycle_letters: Word

    def word(self) -> UpWord:
        return UpWord(self.stem_letters, self.cycle_letters)


@dataclass(frozen=True)
class MembershipVerdict:
    accepted: bool
    witness: Lasso | None


@dataclass(frozen=True)
class Nbw:
    """Nondeterministic Büchi automaton.  Missing (state, symbol) entries in
    `transitions` mean the empty successor set.  State identity is the string
    id; `states` fixes the canonical iteration order."""

    alphabet: Alphabet
    states: tuple[str, ...]
    initial: frozenset[str]
    transitions: Mapping[tuple[str, str], frozenset[str]]
    accepting: frozenset[str]
    _order: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state ids")
        for q in self.states:
            _check_token(q, "state")
        known = set(self.states)
        if not self.initial <= known:
            raise ValueError("initial states not declared")
        if not self.accepting <= known:
            raise ValueError("accepting states not declared")
        for (q, a), targets in self.transitions.items():
            if q not in known or not targets <= known:
                raise ValueError(f"transition on undeclared state: {(q, a)}")
            if a not in self.alphabet:
                raise ValueError(f"transition on undeclared symbol: {(q, a)}")
        object.__setattr__(self, "_order", {q: i for i, q in enumerate(self.states)})

    def index(self, q: str) -> int:
        return self._order[q]

    def sort_states(self, qs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(qs, key=self._order.__getitem__))

    def successors(self, q: str, a: str) -> frozenset[str]:
        return self.transitions.get((q, a), frozenset())

    def is_deterministic(self) -> bool:
        return len(self.initial) <= 1 and all(
            len(v) <= 1 for v in self.transitions.values()
        )

    def is_complete(self) -> bool:
        return len(self.initial) >= 1 and all(
            self.successors(q, a) for q in self.states for a in self.alphabet
        )


def step(a: Nbw, subset: frozenset[str], sym: str) -> frozenset[str]:
    """One-symbol successor of a state set."""
    out: set[str] = set()
    for q in subset:
        out |= a.successors(q, sym)
    return frozenset(out)


def reach(a: Nbw, word: Iterable[str]) -> frozenset[str]:
    """States reachable from the initial set along `word`."""
    cur = a.initial
    for sym in word:
        cur = step(a, cur, sym)
    return cur


def _find_accepting_lasso(
    inits: list,
    expand: Callable[[object], list[tuple[str, object]]],
    is_acc: Callable[[object], bool],
):
    """Search a finite edge-labelled graph for a reachable cycle through a node
    satisfying is_acc.  Returns (stem_nodes, stem_letters, cycle_nodes,
    cycle_letters) or None.  Deterministic: nodes are explored in BFS order."""
    adj: dict = {}
    parent: dict = {}
    order: list = []
    dq = deque()
    for node in inits:
        if node not in parent:
            parent[node] = None
            order.append(node)
            dq.append(node)
    while dq:
        node = dq.popleft()
        edges = expand(node)
        adj[node] = edges
        for letter, nxt in edges:
            if nxt not in parent:
                parent[nxt] = (node, letter)
                order.append(nxt)
                dq.append(nxt)

    comp = _tarjan_components(order, adj)
    cyclic: set[int] = set()
    comp_sizes: dict[int, int] = {}
    for node in order:
        comp_sizes[comp[node]] = comp_sizes.get(comp[node], 0) + 1
    for node in order:
        cid = comp[node]
        if comp_sizes[cid] > 1:
            cyclic.add(cid)
        elif any(nxt == node for _, nxt in adj[node]):
            cyclic.add(cid)

    target = None
    for node in order:
        if is_acc(node) and comp[node] in cyclic:
            target = node
            break
    if target is None:
        return None

    stem_nodes: list = [target]
    stem_letters: list[str] = []
    cur = target
    while parent[cur] is not None:
        cur, letter = parent[cur]
        stem_nodes.append(cur)
        stem_letters.append(letter)
    stem_nodes.reverse()
    stem_letters.reverse()

    # Shortest way back to the target inside its own component.
    tgt_comp = comp[target]
    back: dict = {}
    dq = deque()
    found = None
    for letter, nxt in adj[target]:
        if nxt == target:
            found = (target, letter, None)
            break
        if comp.get(nxt) == tgt_comp and nxt not in back:
            back[nxt] = (target, letter)
            dq.append(nxt)
    while found is None and dq:
        node = dq.popleft()
        for letter, nxt in adj[node]:
            if nxt == target:
                found = (node, letter, back)
                break
            if comp.get(nxt) == tgt_comp and nxt not in back:
                back[nxt] = (node, letter)
                dq.append(nxt)
        if found:
            break
    assert found is not None, "node in cyclic component must close a cycle"

    last, last_letter, _ = found
    cycle_nodes: list = []
    cycle_letters: list[str] = [last_letter]
    cur = last
    while cur != target:
        cycle_nodes.append(cur)
        prev, letter = back[cur]
        cycle_letters.append(letter)
        cur = prev
    cycle_nodes.append(target)
    cycle_nodes.reverse()
    cycle_letters.reverse()
    return tuple(stem_nodes), tuple(stem_letters), tuple(cycle_nodes), tuple(cycle_letters)


def _tarjan_components(order: list, adj: dict) -> dict:
    """Iterative Tarjan SCC; returns node -> component id."""
    index: dict = {}
    low: dict = {}
    onstack: set = set()
    stack: list = []
    comp: dict = {}
    counter = 0
    ncomp = 0
    for root in order:
        if root in index:
            continue
        work: list = [(root, 0)]
        while work:
            node, ei = work.pop()
            if ei == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                onstack.add(node)
            recurse = False
            edges = adj[node]
            while ei < len(edges):
                nxt = edges[ei][1]
                ei += 1
                if nxt not in index:
                    work.append((node, ei))
                    work.append((nxt, 0))
                    recurse = True
                    break
                if nxt in onstack:
                    low[node] = min(low[node], index[nxt])
            if recurse:
                continue
            if low[node] == index[node]:
                while True:
                    x = stack.pop()
                    onstack.discard(x)
                    comp[x] = ncomp
                    if x == node:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return comp


def lasso_membership(a: Nbw, w: UpWord) -> MembershipVerdict:
    """Ground-truth membership of the ultimately periodic word in L(a).

    Builds the product of the automaton with the lasso-shaped word graph
    (one position per letter of prefix and period, period positions cyclic)
    and searches for a reachable cycle through an accepting state.
    """
    for sym in w.prefix + w.period:
        if sym not in a.alphabet:
            raise ValueError(f"symbol {sym!r} not in alphabet")
    lu, lv = len(w.prefix), len(w.period)
    total = lu + lv

    def letter_at(pos: int) -> str:
        return w.prefix[pos] if pos < lu else w.period[pos - lu]

    def next_pos(pos: int) -> int:
        return pos + 1 if pos + 1 < total else lu

    def expand(node):
        q, pos = node
        sym = letter_at(pos)
        np = next_pos(pos)
        return [(sym, (r, np)) for r in a.sort_states(a.successors(q, sym))]

    inits = [(q, 0) for q in a.sort_states(a.initial)]
    hit = _find_accepting_lasso(inits, expand, lambda n: n[0] in a.accepting)
    if hit is None:
        return MembershipVerdict(False, None)
    stem_nodes, stem_letters, cycle_nodes, cycle_letters = hit
    return MembershipVerdict(
        True,
        Lasso(
            tuple(n[0] for n in stem_nodes),
            stem_letters,
            tuple(n[0] for n in cycle_nodes),
            cycle_letters,
        ),
    )


def is_empty(a: Nbw) -> tuple[bool, Lasso | None]:
    """Language emptiness; returns (empty, witness lasso when non-empty)."""

    def expand(q):
        out = []
        for sym in a.alphabet:
            for r in a.sort_states(a.successors(q, sym)):
                out.append((sym, r))
        return out

    hit = _find_accepting_lasso(
        a.sort_states(a.initial), expand, lambda q: q in a.accepting
    )
    if hit is None:
        return True, None
    stem_nodes, stem_letters, cycle_nodes, cycle_letters = hit
    return False, Lasso(stem_nodes, stem_letters, cycle_nodes, cycle_letters)


def intersect(a: Nbw, b: Nbw) -> Nbw:
    """Büchi intersection via the usual two-copy counter; only the reachable
    part is kept, so the result has at most 2|a||b| states."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("intersection needs a shared alphabet")

    def name(p: str, q: str, c: int) -> str:
        return f"({p},{q},{c})"

    start = [
        (p, q, 0)
        for p in a.sort_states(a.initial)
        for q in b.sort_states(b.initial)
    ]
    seen: dict[tuple[str, str, int], None] = dict.fromkeys(start)
    order = list(seen)
    trans: dict[tuple[str, str], frozenset[str]] = {}
    i = 0
    while i < len(order):
        p, q, c = order[i]
        i += 1
        if c == 0:
            nc = 1 if p in a.accepting else 0
        else:
            nc = 0 if q in b.accepting else 1
        for sym in a.alphabet:
            targets = []
            for pp in a.sort_states(a.successors(p, sym)):
                for qq in b.sort_states(b.successors(q, sym)):
                    node = (pp, qq, nc)
                    if node not in seen:
                        seen[node] = None
                        order.append(node)
                    targets.append(name(*node))
            if targets:
                trans[(name(p, q, c), sym)] = frozenset(targets)
    states = tuple(name(*n) for n in order)
    if not states:
        states = ("(dead)",)
        return Nbw(a.alphabet, states, frozenset(), {}, frozenset())
    return Nbw(
        a.alphabet,
        states,
        frozenset(name(*n) for n in start),
        trans,
        frozenset(name(p, q, c) for (p, q, c) in order if c == 1 and q in b.accepting),
    )


def _words_upto(alphabet: Alphabet, lo: int, hi: int) -> Iterator[Word]:
    for length in range(lo, hi + 1):
        yield from itertools.product(alphabet.symbols, repeat=length)


def enumerate_upwords(alphabet: Alphabet, max_u: int, max_v: int) -> Iterator[UpWord]:
    """All (prefix, period) pairs with |prefix| <= max_u, 1 <= |period| <= max_v,
    ordered by (|u|, u, |v|, v) in alphabet order.  Pairs are distinct even when
    they denote the same infinite word; callers needing word identity can key by
    UpWord.canonical()."""
    if max_v < 1:
        raise ValueError("max_v must be at least 1")
    for u in _words_upto(alphabet, 0, max_u):
        for v in _words_upto(alphabet, 1, max_v):
            yield UpWord(u, v)


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Word from CLI text: whitespace-separated tokens, or one symbol per
    character when the alphabet is single-character.  Empty text is epsilon."""
    text = text.strip()
    if not text:
        return ()
    parts = text.split()
    if len(parts) == 1 and parts[0] not in alphabet:
        if all(len(a) == 1 for a in alphabet):
            parts = list(parts[0])
    for p in parts:
        if p not in alphabet:
            raise ValueError(f"symbol {p!r} not in alphabet")
    return tuple(parts)


# --- text formats ---------------------------------------------------------


def serialize_nbw(a: Nbw) -> str:
    lines = [
        "nbw",
        "alphabet: " + " ".join(a.alphabet.symbols),
        "states: " + " ".join(a.states),
        "initial: " + " ".join(a.sort_states(a.initial)),
        "accepting: " + " ".join(a.sort_states(a.accepting)),
    ]
    for q in a.states:
        for sym in a.alphabet:
            targets = a.successors(q, sym)
            if targets:
                lines.append(f"trans: {q} {sym} -> " + " ".join(a.sort_states(targets)))
    return "\n".join(lines) + "\n"


def _meaningful_lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_nbw(text: str | bytes) -> Nbw:
    """Parse the native `nbw` format or the restricted HOA-style subset
    (see README).  Serialization always emits the native format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = list(_meaningful_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    no, head = lines[0]
    if head == "nbw":
        return _parse_native(lines[1:])
    if head.startswith("HOA:"):
        return _parse_hoa(lines[1:])
    raise ParseError(f"unknown format header {head!r}", no)


def _parse_native(lines: list[tuple[int, str]]) -> Nbw:
    alphabet: Alphabet | None = None
    states: tuple[str, ...] | None = None
    initial: list[str] = []
    accepting: list[str] = []
    seen_initial = seen_accepting = False
    trans: dict[tuple[str, str], set[str]] = {}
    raw_trans: list[tuple[int, list[str]]] = []
    for no, line in lines:
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise ParseError("duplicate alphabet line", no)
            try:
                alphabet = Alphabet(tuple(line.split(":", 1)[1].split()))
            except ValueError as e:
                raise ParseError(str(e), no) from None
        elif line.startswith("states:"):
            if states is not None:
                raise ParseError("duplicate states line", no)
            states = tuple(line.split(":", 1)[1].split())
            if len(set(states)) != len(states):
                raise ParseError("duplicate state declaration", no)
        elif line.startswith("initial:"):
            if seen_initial:
                raise ParseError("duplicate initial line", no)
            seen_initial = True
            initial = line.split(":", 1)[1].split()
        elif line.startswith("accepting:"):
            if seen_accepting:
                raise ParseError("duplicate accepting line", no)
            seen_accepting = True
            accepting = line.split(":", 1)[1].split()
        elif line.startswith("trans:"):
            raw_trans.append((no, line.split(":", 1)[1].split()))
        else:
            raise ParseError(f"unrecognized line {line!r}", no)
    if alphabet is None:
        raise ParseError("missing alphabet line")
    if states is None:
        raise ParseError("missing states line")
    if not seen_initial:
        raise ParseError("missing initial line")
    known = set(states)
    for group, kind in ((initial, "initial"), (accepting, "accepting")):
        for q in group:
            if q not in known:
                raise ParseError(f"undeclared {kind} state {q!r}")
    for no, toks in raw_trans:
        if len(toks) < 3 or toks[2] != "->":
            raise ParseError("expected 'trans: <state> <symbol> -> <state>...'", no)
        src, sym, targets = toks[0], toks[1], toks[3:]
        if src not in known:
            raise ParseError(f"undeclared state {src!r}", no)
        if sym not in alphabet:
            raise ParseError(f"undeclared symbol {sym!r}", no)
        for t in targets:
            if t not in known:
                raise ParseError(f"undeclared state {t!r}", no)
        trans.setdefault((src, sym), set()).update(targets)
    return Nbw(
        alphabet,
        states,
        frozenset(initial),
        {k: frozenset(v) for k, v in trans.items()},
        frozenset(accepting),
    )


def _parse_hoa(lines: list[tuple[int, str]]) -> Nbw:
    n_states: int | None = None
    starts: list[int] = []
    alphabet: Alphabet | None = None
    acceptance_ok = False
    body_at = None
    for i, (no, line) in enumerate(lines):
        if line == "--BODY--":
            body_at = i + 1
            break
        if line.startswith("States:"):
            n_states = int(line.split(":", 1)[1])
        elif line.startswith("Start:"):
            starts.extend(int(t) for t in line.split(":", 1)[1].split())
        elif line.startswith("Alphabet:"):
            try:
                alphabet = Alphabet(tuple(line.split(":", 1)[1].split()))
            except ValueError as e:
                raise ParseError(str(e), no) from None
        elif line.startswith("Acceptance:"):
            acceptance_ok = line.split(":", 1)[1].strip() in ("Buchi", "1 Inf(0)")
        # other headers tolerated and ignored
    if n_states is None or alphabet is None or body_at is None:
        raise ParseError("HOA subset needs States:, Alphabet: and --BODY--")
    if not acceptance_ok:
        raise ParseError("HOA subset needs 'Acceptance: Buchi'")
    states = tuple(f"s{i}" for i in range(n_states))
    accepting: set[str] = set()
    trans: dict[tuple[str, str], set[str]] = {}
    cur: str | None = None
    for no, line in lines[body_at:]:
        if line == "--END--":
            break
        if line.startswith("State:"):
            rest = line.split(":", 1)[1].split()
            idx = int(rest[0])
            if not 0 <= idx < n_states:
                raise ParseError(f"state index {idx} out of range", no)
            cur = states[idx]
            if any(tok.startswith("{") for tok in rest[1:]):
                accepting.add(cur)
        else:
            if cur is None:
                raise ParseError("edge before any State: line", no)
            toks = line.split()
            if len(toks) != 2:
                raise ParseError("expected '<symbol> <target-index>'", no)
            sym, tgt = toks[0], int(toks[1])
            if sym not in alphabet:
                raise ParseError(f"undeclared symbol {sym!r}", no)
            if not 0 <= tgt < n_states:
                raise ParseError(f"state index {tgt} out of range", no)
            trans.setdefault((cur, sym), set()).add(states[tgt])
    for s in starts:
        if not 0 <= s < n_states:
            raise ParseError(f"start index {s} out of range")
    return Nbw(
        alphabet,
        states,
        frozenset(states[s] for s in starts),
        {k: frozenset(v) for k, v in trans.items()},
        frozenset(accepting),
    )
