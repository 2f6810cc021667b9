"""Families of deterministic transition systems over congruence classes: one
leading structure classifying finite prefixes plus, per leading class, a
progress structure classifying candidate periods.

Acceptance of an ultimately periodic word is decided through its
decompositions.  A decomposition (u, v) is accepted when reading v loops on
u's leading class (normalized) and v lands in an accepting progress class
(captured).  A family is saturated when, for every ultimately periodic word,
all normalized decompositions agree; the complement builders below produce
saturated families, and saturation of arbitrary families can be probed on
samples.

The conversion to a nondeterministic Büchi automaton pins one accepting
progress class per run and tracks the leading round trip inside each gadget,
which keeps it sound for any saturated family, not only the constructed ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .automata import (
    Alphabet,
    Nbw,
    ParseError,
    UpWord,
    Word,
    _meaningful_lines,
    enumerate_upwords,
    intersect,
    is_empty,
    lasso_membership,
)
from .preorder import (
    OptProgressState,
    optimal_leading_congruence,
    optimal_progress_congruence,
)
from .profiles import (
    DEFAULT_CLASS_BUDGET,
    CongruenceDfw,
    DfwClass,
    RestrictedProfile,
    periodic_membership_from_profile,
    progress_congruence_improved,
    subset_congruence,
)

# A decomposition of an ultimately periodic word is the same (prefix, period)
# data as the word itself, viewed as one of its cuts.
Decomposition = UpWord


@dataclass(frozen=True, eq=False)
class Fdfw:
    """Leading structure plus one progress structure per leading class id.
    Progress structures carry accepting sets; the leading one never does.
    `saturated` is a promise made by the builder, trusted by the fast
    acceptance path and checkable with check_saturation_sampled."""

    alphabet: Alphabet
    leading: CongruenceDfw
    progress: Mapping[int, CongruenceDfw]
    saturated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "progress", dict(self.progress))
        if set(self.progress) != set(range(len(self.leading))):
            raise ValueError("need exactly one progress structure per leading class")
        for cid, prog in self.progress.items():
            if prog.alphabet != self.alphabet or self.leading.alphabet != self.alphabet:
                raise ValueError("alphabet mismatch inside family")
            if prog.accepting is None:
                raise ValueError(f"progress structure {cid} lacks an accepting set")

    def size(self) -> tuple[int, int]:
        """(leading classes, total progress classes)."""
        return len(self.leading), sum(len(p) for p in self.progress.values())


def leading_class(f: Fdfw, word: Word) -> int:
    return f.leading.run(word)


def is_normalized(f: Fdfw, prefix: Word, period: Word) -> bool:
    m = f.leading.run(prefix)
    return f.leading.run(period, start=m) == m


def is_captured(f: Fdfw, prefix: Word, period: Word) -> bool:
    return f.progress[f.leading.run(prefix)].accepts(period)


def accepts_decomposition(f: Fdfw, prefix: Word, period: Word) -> bool:
    if not period:
        raise ValueError("period must be non-empty")
    return is_normalized(f, prefix, period) and is_captured(f, prefix, period)


# --- acceptance over all decompositions -------------------------------------


def _accepting_power(f: Fdfw, m: int, rot: Word) -> int | None:
    """Smallest j >= 1 such that rot^j both returns to leading class m and is
    captured there, or None when no power works.  The walk over (leading,
    progress) state pairs cycles within |leading| * |progress| steps."""
    lead = f.leading
    prog = f.progress[m]
    seen: set[tuple[int, int]] = set()
    mm, pp = m, prog.initial
    j = 0
    while True:
        mm = lead.run(rot, start=mm)
        pp = prog.run(rot, start=pp)
        j += 1
        if mm == m and pp in prog.accepting:
            return j
        if (mm, pp) in seen:
            return None
        seen.add((mm, pp))


def _positions(f: Fdfw, w: UpWord) -> Iterator[tuple[Word, Word, int]]:
    """(prefix, rotated period, leading class of prefix) for every cut
    position that can start a decomposition of w.  w must be canonical, so
    cut positions range over the prefix end plus enough period turns to see
    every (leading class, phase) pair at least once."""
    u, r = w.prefix, w.period
    lead = f.leading
    m = lead.run(u)
    prefix = list(u)
    for t in range(len(r) * (len(lead) + 1) + 1):
        phase = t % len(r)
        yield tuple(prefix), r[phase:] + r[:phase], m
        sym = r[phase]
        prefix.append(sym)
        m = lead.table[(m, sym)]


def find_accepting_decomposition(f: Fdfw, w: UpWord) -> UpWord | None:
    """Some accepted decomposition of the infinite word, or None.  Every
    decomposition of w is a cut position plus a power of the rotated period;
    verdicts depend only on (leading class, phase), which bounds the search."""
    w = w.canonical()
    memo: set[tuple[int, int]] = set()
    for prefix, rot, m in _positions(f, w):
        key = (m, (len(prefix) - len(w.prefix)) % len(w.period))
        if key in memo:
            continue
        memo.add(key)
        j = _accepting_power(f, m, rot)
        if j is not None:
            return UpWord(prefix, rot * j)
    return None


def accepts_upword_general(f: Fdfw, w: UpWord) -> bool:
    """Acceptance by existence of some accepted decomposition.  Always sound;
    the reference semantics for arbitrary families."""
    return find_accepting_decomposition(f, w) is not None


def normalize_decomposition(f: Fdfw, d: UpWord) -> UpWord:
    """The normalized decomposition (u v^h, v^k) of the given pair with
    minimal h >= 0, then minimal k >= 1, such that the leading class of
    u v^h recurs at u v^(h+k).  Both h and k are at most the number of
    leading classes, and the result denotes the same infinite word."""
    u, v = d.prefix, d.period
    lead = f.leading
    seen: dict[int, int] = {}
    m = lead.run(u)
    i = 0
    while m not in seen:
        seen[m] = i
        m = lead.run(v, start=m)
        i += 1
    h = seen[m]
    k = i - h
    return UpWord(u + v * h, v * k)


def accepts_upword_saturated(f: Fdfw, w: UpWord, strict: bool = False) -> bool:
    """Acceptance decided on one pumped normalized decomposition.  Equals the
    general semantics exactly when the family is saturated; strict=True pays
    for the general check and raises on disagreement."""
    norm = normalize_decomposition(f, w)
    verdict = accepts_decomposition(f, norm.prefix, norm.period)
    if strict:
        general = accepts_upword_general(f, w)
        if general != verdict:
            raise SaturationViolation(
                w.canonical(),
                (norm,) if verdict else (),
                () if verdict else (norm,),
            )
    return verdict


def accepts_upword(f: Fdfw, w: UpWord) -> bool:
    """Dispatch: the pumped fast path for families built saturated, the full
    decomposition search otherwise."""
    if f.saturated:
        return accepts_upword_saturated(f, w)
    return accepts_upword_general(f, w)


# --- saturation probing ------------------------------------------------------


@dataclass(frozen=True)
class SaturationViolation(Exception):
    """One ultimately periodic word with disagreeing normalized
    decompositions: some captured, some not."""

    word: UpWord
    captured: tuple[UpWord, ...]
    uncaptured: tuple[UpWord, ...]

    def __str__(self):
        return (
            f"word {self.word}: captured {[str(d) for d in self.captured]}, "
            f"uncaptured {[str(d) for d in self.uncaptured]}"
        )


def _normalized_verdicts(
    f: Fdfw, w: UpWord, cap: int
) -> tuple[list[UpWord], list[UpWord]]:
    """Normalized decompositions of canonical w split by capturedness, each
    list truncated to `cap` entries.  Positions are not deduplicated, so the
    reported examples keep their natural cut points."""
    lead = f.leading
    captured: list[UpWord] = []
    uncaptured: list[UpWord] = []
    for prefix, rot, m in _positions(f, w):
        prog = f.progress[m]
        seen: set[tuple[int, int]] = set()
        mm, pp = m, prog.initial
        while True:
            mm = lead.run(rot, start=mm)
            pp = prog.run(rot, start=pp)
            if (mm, pp) in seen:
                break
            seen.add((mm, pp))
            if mm == m:
                j = len(seen)  # powers checked so far, current included
                target = captured if pp in prog.accepting else uncaptured
                if len(target) < cap:
                    target.append(UpWord(prefix, rot * j))
        if len(captured) >= cap and len(uncaptured) >= cap:
            break
    return captured, uncaptured


def check_saturation_sampled(
    f: Fdfw, max_prefix: int, max_period: int, cap: int = 8
) -> list[SaturationViolation]:
    """Scan all ultimately periodic words within the given decomposition
    bounds (up to word identity) and report every word whose normalized
    decompositions disagree."""
    seen: set[UpWord] = set()
    out: list[SaturationViolation] = []
    for w in enumerate_upwords(f.alphabet, max_prefix, max_period):
        c = w.canonical()
        if c in seen:
            continue
        seen.add(c)
        cap_list, unc_list = _normalized_verdicts(f, c, cap)
        if cap_list and unc_list:
            out.append(SaturationViolation(c, tuple(cap_list), tuple(unc_list)))
    return out


def containment(a: Nbw, b: Nbw, budget: int = DEFAULT_CLASS_BUDGET) -> tuple[bool, UpWord | None]:
    """Language containment L(a) subseteq L(b), decided by intersecting a
    with the complement pipeline of b.  Returns (holds, counterexample):
    the counterexample is an ultimately periodic word in L(a) \\ L(b)."""
    comp = fdfw_to_nbw(complement_fdfw_optimal(b, budget))
    empty, lasso = is_empty(intersect(a, comp))
    if empty:
        return True, None
    return False, lasso.word().canonical()


# --- complement builders -----------------------------------------------------


def complement_fdfw_optimal(a: Nbw, budget: int = DEFAULT_CLASS_BUDGET) -> Fdfw:
    """Complement family over the ordered-subset congruences.  A progress
    class is accepting when its payload returns to the base arrangement
    (normalized for every member) and pairing the leading witness with a
    non-empty member yields a word outside L(a), checked with the lasso
    oracle.  Classes whose only member is the empty word never matter as
    periods and are left non-accepting."""
    lead = optimal_leading_congruence(a, budget)
    progress: dict[int, CongruenceDfw] = {}
    for cls in lead.classes:
        base = cls.payload
        prog = optimal_progress_congruence(a, base, budget)
        acc: set[int] = set()
        for pcls in prog.classes:
            st: OptProgressState = pcls.payload
            if st.blocks != base:
                continue
            v = pcls.witness or (pcls.alternates[0] if pcls.alternates else None)
            if v is None:
                continue
            if not lasso_membership(a, UpWord(cls.witness, v)).accepted:
                acc.add(pcls.cid)
        progress[cls.cid] = prog.with_accepting(frozenset(acc))
    return Fdfw(a.alphabet, lead, progress, saturated=True)


def complement_fdfw_improved(a: Nbw, budget: int = DEFAULT_CLASS_BUDGET) -> Fdfw:
    """Complement family over the subset leading congruence and restricted
    pair profiles.  Acceptance is read off the payload alone: the profile
    image must re-create the source set and the folded periodic membership
    test must fail."""
    lead = subset_congruence(a, budget)
    progress: dict[int, CongruenceDfw] = {}
    for cls in lead.classes:
        sources: frozenset[str] = cls.payload
        src_ids = frozenset(a.index(q) for q in sources)
        prog = progress_congruence_improved(a, sources, budget)
        acc: set[int] = set()
        for pcls in prog.classes:
            rp: RestrictedProfile = pcls.payload
            if rp.image() != src_ids:
                continue
            if not periodic_membership_from_profile(a, rp):
                acc.add(pcls.cid)
        progress[cls.cid] = prog.with_accepting(frozenset(acc))
    return Fdfw(a.alphabet, lead, progress, saturated=True)


def complement_saturated_fdfw(f: Fdfw) -> Fdfw:
    """Family for the complemented word language of a saturated family: same
    structures, every progress accepting set flipped.  Decomposition
    acceptance demands normalized AND captured, so flipping capture verdicts
    complements exactly the words all of whose normalized decompositions
    agreed, which saturation guarantees is all of them."""
    progress = {
        cid: p.with_accepting(frozenset(range(len(p))) - p.accepting)
        for cid, p in f.progress.items()
    }
    return Fdfw(f.alphabet, f.leading, progress, saturated=f.saturated)


# --- conversion to a Büchi automaton -----------------------------------------


def _accepting_composition_closed(f: Fdfw, q: int) -> bool:
    """True when concatenating members of any two accepting classes of q's
    progress DFW always lands in an accepting class again.  Running the DFW
    from a class on another class's witness computes the concatenation class:
    both progress payloads compose, so the landing class does not depend on
    which member stands in for the second class."""
    prog = f.progress[q]
    acc = prog.accepting
    witness_of = {c.cid: c.witness for c in prog.classes}
    for f1 in acc:
        for f2 in acc:
            w2 = witness_of[f2]
            if w2 is None or prog.run(w2, start=f1) not in acc:
                return False
    return True


def fdfw_to_nbw(f: Fdfw) -> Nbw:
    """Büchi automaton for the omega-language induced by the family: words
    decomposable as u v1 v2 ... where u reaches some leading class q and every
    block vi both returns the leading structure to q and ends captured.

    Gadgets track the progress state and the leading round trip and may close
    a block exactly at (acceptance, q).  When q's accepting classes are
    closed under composition, one shared gadget may close at any of them:
    a word chopped into blocks from several such classes regroups, by
    Ramsey's theorem on the finitely many composition classes, into blocks
    of one single accepting class, which the family already rules on.
    Without closure each accepting class gets its own gadget, pinned so that
    every block of a run ends in that same class; mixing unrelated accepting
    classes is unsound.  Relays between blocks are the accepting states.
    The result is trimmed to states that can still reach an accepting
    cycle."""
    lead = f.leading
    la = f.alphabet
    # fa == -1 marks a shared gadget closing at any accepting class
    shared = {
        cls.cid: _accepting_composition_closed(f, cls.cid) for cls in lead.classes
    }

    def close_ids(q: int, fa: int) -> frozenset[int]:
        return f.progress[q].accepting if fa == -1 else frozenset({fa})

    def lname(m: int) -> str:
        return f"L{m}"

    def gname(q: int, fa: int, p: int, m: int) -> str:
        return f"G{q}.{fa}.{p}.{m}"

    def rname(q: int, fa: int) -> str:
        return f"R{q}.{fa}"

    accepting: set[str] = set()
    trans: dict[tuple[str, str], set[str]] = {}
    init_name = lname(lead.initial)
    order: list[str] = []
    kind: dict[str, tuple] = {}

    def discover(name: str, info: tuple) -> str:
        if name not in kind:
            kind[name] = info
            order.append(name)
        return name

    discover(init_name, ("L", lead.initial))
    i = 0
    while i < len(order):
        name = order[i]
        i += 1
        info = kind[name]
        for sym in la:
            targets: list[str] = []
            if info[0] == "L":
                m = info[1]
                m2 = lead.table[(m, sym)]
                targets.append(discover(lname(m2), ("L", m2)))
                # the next letter may instead start the first block at class m
                if f.progress[m].accepting:
                    pins = [-1] if shared[m] else sorted(f.progress[m].accepting)
                    for fa in pins:
                        targets.extend(
                            _block_entries(f, m, fa, close_ids(m, fa), sym, discover, gname, rname)
                        )
            elif info[0] == "G":
                q, fa, p, m = info[1:]
                prog = f.progress[q]
                p2 = prog.table[(p, sym)]
                m2 = lead.table[(m, sym)]
                targets.append(discover(gname(q, fa, p2, m2), ("G", q, fa, p2, m2)))
                if p2 in close_ids(q, fa) and m2 == q:
                    targets.append(discover(rname(q, fa), ("R", q, fa)))
            else:
                q, fa = info[1:]
                targets.extend(
                    _block_entries(f, q, fa, close_ids(q, fa), sym, discover, gname, rname)
                )
            if targets:
                trans[(name, sym)] = set(targets)
    for name, info in kind.items():
        if info[0] == "R":
            accepting.add(name)

    trimmed = _trim_to_accepting_cycles(la, order, trans, accepting, init_name)
    if trimmed is None:
        return Nbw(la, ("dead",), frozenset({"dead"}), {}, frozenset())
    return trimmed


def _block_entries(
    f: Fdfw, q: int, fa: int, closes: frozenset[int], sym: str, discover, gname, rname
) -> list[str]:
    """Targets for the first letter of a block of gadget (q, fa)."""
    prog = f.progress[q]
    p1 = prog.table[(prog.initial, sym)]
    m1 = f.leading.table[(q, sym)]
    out = [discover(gname(q, fa, p1, m1), ("G", q, fa, p1, m1))]
    if p1 in closes and m1 == q:
        out.append(discover(rname(q, fa), ("R", q, fa)))
    return out


def _trim_to_accepting_cycles(
    alphabet: Alphabet,
    order: list[str],
    trans: dict[tuple[str, str], set[str]],
    accepting: set[str],
    init_name: str,
) -> Nbw | None:
    from .automata import _tarjan_components

    adj = {
        name: [
            (sym, tgt)
            for sym in alphabet
            for tgt in sorted(trans.get((name, sym), ()))
        ]
        for name in order
    }
    comp = _tarjan_components(order, adj)
    sizes: dict[int, int] = {}
    for name in order:
        sizes[comp[name]] = sizes.get(comp[name], 0) + 1
    seeds = [
        name
        for name in order
        if name in accepting
        and (sizes[comp[name]] > 1 or any(t == name for _, t in adj[name]))
    ]
    if not seeds:
        return None
    rev: dict[str, list[str]] = {name: [] for name in order}
    for name in order:
        for _, tgt in adj[name]:
            rev[tgt].append(name)
    useful: set[str] = set(seeds)
    stack = list(seeds)
    while stack:
        node = stack.pop()
        for pred in rev[node]:
            if pred not in useful:
                useful.add(pred)
                stack.append(pred)
    if init_name not in useful:
        return None
    kept = tuple(name for name in order if name in useful)
    kept_set = set(kept)
    new_trans = {
        (name, sym): frozenset(t for t in tgts if t in kept_set)
        for (name, sym), tgts in trans.items()
        if name in kept_set and any(t in kept_set for t in tgts)
    }
    return Nbw(
        alphabet,
        kept,
        frozenset({init_name}),
        new_trans,
        frozenset(a for a in accepting if a in kept_set),
    )


def nbw_state_bound(f: Fdfw) -> int:
    """Budget the conversion is measured against: the leading copy plus, per
    leading class, a leading-sized band of every progress structure and one
    relay."""
    lead_n = len(f.leading)
    return lead_n + sum(lead_n * len(p) + 1 for p in f.progress.values())


# --- text formats ------------------------------------------------------------


def _serialize_dfw_block(dfw: CongruenceDfw, prefix: str) -> list[str]:
    names = [f"{prefix}{c.cid}" for c in dfw.classes]
    lines = [
        "states: " + " ".join(names),
        f"initial: {names[dfw.initial]}",
    ]
    if dfw.accepting is not None:
        lines.append("accepting: " + " ".join(names[c] for c in sorted(dfw.accepting)))
    for cid in range(len(names)):
        for sym in dfw.alphabet:
            lines.append(f"trans: {names[cid]} {sym} -> {names[dfw.table[(cid, sym)]]}")
    return lines


def serialize_dfw(dfw: CongruenceDfw, prefix: str = "c") -> str:
    lines = ["dfw", "alphabet: " + " ".join(dfw.alphabet.symbols)]
    lines.extend(_serialize_dfw_block(dfw, prefix))
    return "\n".join(lines) + "\n"


def serialize_fdfw(f: Fdfw) -> str:
    lines = [
        "fdfw",
        "alphabet: " + " ".join(f.alphabet.symbols),
        f"saturated: {'true' if f.saturated else 'false'}",
        "leading:",
    ]
    lines.extend(_serialize_dfw_block(f.leading, "m"))
    for cid in range(len(f.leading)):
        lines.append(f"progress m{cid}:")
        lines.extend(_serialize_dfw_block(f.progress[cid], "n"))
    return "\n".join(lines) + "\n"


def _parse_dfw_block(
    alphabet: Alphabet,
    lines: list[tuple[int, str]],
    want_accepting: bool,
) -> CongruenceDfw:
    names: tuple[str, ...] | None = None
    initial: str | None = None
    accepting: list[str] | None = None
    raw_trans: list[tuple[int, list[str]]] = []
    for no, line in lines:
        if line.startswith("states:"):
            if names is not None:
                raise ParseError("duplicate states line", no)
            names = tuple(line.split(":", 1)[1].split())
            if not names or len(set(names)) != len(names):
                raise ParseError("states must be non-empty and distinct", no)
        elif line.startswith("initial:"):
            toks = line.split(":", 1)[1].split()
            if initial is not None or len(toks) != 1:
                raise ParseError("need exactly one initial state", no)
            initial = toks[0]
        elif line.startswith("accepting:"):
            if accepting is not None:
                raise ParseError("duplicate accepting line", no)
            accepting = line.split(":", 1)[1].split()
        elif line.startswith("trans:"):
            raw_trans.append((no, line.split(":", 1)[1].split()))
        else:
            raise ParseError(f"unrecognized line {line!r}", no)
    if names is None or initial is None:
        raise ParseError("block needs states and initial lines")
    if initial not in names:
        raise ParseError(f"undeclared initial state {initial!r}")
    if accepting is not None and not want_accepting:
        raise ParseError("leading block must not carry an accepting line")
    ids = {nm: i for i, nm in enumerate(names)}
    table: dict[tuple[int, str], int] = {}
    for no, toks in raw_trans:
        if len(toks) != 4 or toks[2] != "->":
            raise ParseError("expected 'trans: <state> <symbol> -> <state>'", no)
        src, sym, tgt = toks[0], toks[1], toks[3]
        if src not in ids or tgt not in ids:
            raise ParseError("undeclared state in transition", no)
        if sym not in alphabet:
            raise ParseError(f"undeclared symbol {sym!r}", no)
        if (ids[src], sym) in table:
            raise ParseError(f"duplicate transition for {src!r} on {sym!r}", no)
        table[(ids[src], sym)] = ids[tgt]
    for nm in names:
        for sym in alphabet:
            if (ids[nm], sym) not in table:
                raise ParseError(f"missing transition for {nm!r} on {sym!r}")
    acc_ids = None
    if want_accepting:
        acc_set = accepting or []
        for nm in acc_set:
            if nm not in ids:
                raise ParseError(f"undeclared accepting state {nm!r}")
        acc_ids = frozenset(ids[nm] for nm in acc_set)
    witnesses = _bfs_witnesses(alphabet, table, ids[initial], len(names))
    classes = tuple(
        DfwClass(i, witnesses[i], names[i]) for i in range(len(names))
    )
    return CongruenceDfw(alphabet, classes, table, ids[initial], acc_ids)


def _bfs_witnesses(
    alphabet: Alphabet, table: dict[tuple[int, str], int], initial: int, n: int
) -> list[Word | None]:
    out: list[Word | None] = [None] * n
    out[initial] = ()
    queue = [initial]
    qi = 0
    while qi < len(queue):
        cur = queue[qi]
        qi += 1
        for sym in alphabet:
            nxt = table[(cur, sym)]
            if out[nxt] is None:
                out[nxt] = out[cur] + (sym,)
                queue.append(nxt)
    return out


def parse_fdfw(text: str | bytes) -> Fdfw:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = list(_meaningful_lines(text))
    if not lines or lines[0][1] != "fdfw":
        raise ParseError("expected 'fdfw' header", lines[0][0] if lines else 1)
    alphabet: Alphabet | None = None
    saturated = False
    idx = 1
    while idx < len(lines):
        no, line = lines[idx]
        if line.startswith("alphabet:"):
            try:
                alphabet = Alphabet(tuple(line.split(":", 1)[1].split()))
            except ValueError as e:
                raise ParseError(str(e), no) from None
            idx += 1
        elif line.startswith("saturated:"):
            val = line.split(":", 1)[1].strip()
            if val not in ("true", "false"):
                raise ParseError("saturated must be true or false", no)
            saturated = val == "true"
            idx += 1
        else:
            break
    if alphabet is None:
        raise ParseError("missing alphabet line")
    # split the remainder into blocks
    blocks: list[tuple[int, str, list[tuple[int, str]]]] = []
    for no, line in lines[idx:]:
        if line == "leading:":
            blocks.append((no, "leading", []))
        elif line.startswith("progress ") and line.endswith(":"):
            blocks.append((no, line[len("progress "):-1].strip(), []))
        elif blocks:
            blocks[-1][2].append((no, line))
        else:
            raise ParseError(f"content before any block: {line!r}", no)
    if not blocks or blocks[0][1] != "leading":
        raise ParseError("first block must be 'leading:'")
    leading = _parse_dfw_block(alphabet, blocks[0][2], want_accepting=False)
    name_to_cid = {cls.payload: cls.cid for cls in leading.classes}
    progress: dict[int, CongruenceDfw] = {}
    for no, name, body in blocks[1:]:
        if name == "leading":
            raise ParseError("duplicate leading block", no)
        if name not in name_to_cid:
            raise ParseError(f"progress block for unknown leading class {name!r}", no)
        cid = name_to_cid[name]
        if cid in progress:
            raise ParseError(f"duplicate progress block for {name!r}", no)
        progress[cid] = _parse_dfw_block(alphabet, body, want_accepting=True)
    missing = set(range(len(leading))) - set(progress)
    if missing:
        raise ParseError(f"missing progress blocks for {len(missing)} leading classes")
    return Fdfw(alphabet, leading, progress, saturated=saturated)
