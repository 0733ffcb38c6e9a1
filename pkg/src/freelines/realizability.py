"""Combinatorial and pseudoline realizability searches, with witnesses.

Two exact engines decide whether a quadruple-bounded weak combinatorics can
exist at two levels of abstraction:

* partial linear spaces - place the n4 quadruple blocks and n3 triple blocks
  on d abstract lines so that two blocks share at most one element (double
  points are implied by the leftover pairs).  Backtracking over blocks in
  lexicographic order with pair bitmasks, per-element capacity bounds and a
  first-block symmetry fix; exhaustion proves non-existence.

* wiring diagrams - sweep d wires from the identity order to the full
  reversal through block-reversal events; an event of size k reverses k
  adjacent wires that are pairwise uncrossed and crosses them all at one
  point.  A pair is crossed exactly when it is inverted in the current
  order, and events need strictly ascending runs, so crossed pairs can never
  uncross: the search state is just (permutation, remaining event budgets).
  Depth-first search memoizes failed states, which both removes duplicate
  work and keeps a completed search a genuine proof of non-existence.

Witnesses are revalidated on emission and round-trip through JSON.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Iterable

from .combinatorics import WeakCombinatorics

ProgressFn = Callable[[int, float], None]
_PROGRESS_EVERY = 1 << 18


class SearchStatus(str, Enum):
    WITNESS_FOUND = "witness-found"
    EXHAUSTED_NONE = "exhausted-none"
    LIMIT_REACHED = "limit-reached"


@dataclass(frozen=True)
class SearchLimits:
    """Node and wall-clock budgets.  ``max_nodes=None`` means the per-search
    default; 0 disables the node limit.  Time limits are off by default
    (they would make outcomes machine-dependent)."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    def node_cap(self, default: int) -> int | None:
        if self.max_nodes is None:
            return default
        return None if self.max_nodes == 0 else self.max_nodes


DEFAULT_WIRING_NODES = 5_000_000
DEFAULT_PACKING_NODES = 20_000_000


class _LimitReached(Exception):
    pass


class _Ticker:
    """Counts search nodes against the limits."""

    def __init__(self, limits: SearchLimits, default_nodes: int, progress: ProgressFn | None):
        self.nodes = 0
        self.cap = limits.node_cap(default_nodes)
        self.deadline = None if limits.max_seconds is None else time.monotonic() + limits.max_seconds
        self.progress = progress
        self.started = time.monotonic()

    def tick(self) -> None:
        self.nodes += 1
        if self.cap is not None and self.nodes > self.cap:
            raise _LimitReached
        if self.nodes % _PROGRESS_EVERY == 0:
            now = time.monotonic()
            if self.deadline is not None and now > self.deadline:
                raise _LimitReached
            if self.progress is not None:
                self.progress(self.nodes, now - self.started)

    def elapsed(self) -> float:
        return time.monotonic() - self.started


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialLinearSpace:
    """Blocks of size 3 or 4 on the ground set 1..d, pairwise sharing <= 1
    element (equivalently, no pair of points lies in two blocks)."""

    d: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(sorted(tuple(sorted(b)) for b in self.blocks)))

    def block_counts(self) -> dict[int, int]:
        tally: dict[int, int] = {}
        for block in self.blocks:
            tally[len(block)] = tally.get(len(block), 0) + 1
        return tally

    def implied_wc(self) -> WeakCombinatorics:
        """Counts realized when every uncovered pair becomes a double point."""
        covered = sum(len(b) * (len(b) - 1) // 2 for b in self.blocks)
        counts = self.block_counts()
        counts[2] = self.d * (self.d - 1) // 2 - covered
        return WeakCombinatorics.from_counts(self.d, counts)


def validate_partial_linear_space(pls: PartialLinearSpace) -> WeakCombinatorics:
    """Check all invariants and return the realized weak combinatorics."""
    seen_pairs: set[tuple[int, int]] = set()
    for block in pls.blocks:
        if len(set(block)) != len(block):
            raise ValueError(f"block {block} repeats an element")
        if len(block) not in (3, 4):
            raise ValueError(f"block {block} must have size 3 or 4")
        if block[0] < 1 or block[-1] > pls.d:
            raise ValueError(f"block {block} leaves the ground set 1..{pls.d}")
        for pair in combinations(block, 2):
            if pair in seen_pairs:
                raise ValueError(f"pair {pair} lies in two blocks")
            seen_pairs.add(pair)
    return pls.implied_wc()


@dataclass(frozen=True)
class WiringDiagram:
    """A sweep of d wires: each event ``(position, size)`` reverses that many
    adjacent wires; after all events every pair has crossed exactly once."""

    d: int
    events: tuple[tuple[int, int], ...]

    def counts(self) -> dict[int, int]:
        tally: dict[int, int] = {}
        for _, size in self.events:
            tally[size] = tally.get(size, 0) + 1
        return tally

    def realized_wc(self) -> WeakCombinatorics:
        return WeakCombinatorics.from_counts(self.d, self.counts())


def validate_wiring_diagram(diagram: WiringDiagram) -> WeakCombinatorics:
    """Replay the events; return the realized counts.

    Each event must reverse a strictly ascending run (its wires pairwise
    uncrossed) and the final order must be the full reversal, which makes
    every pair cross exactly once.
    """
    perm = list(range(1, diagram.d + 1))
    for position, size in diagram.events:
        if size < 2 or position < 0 or position + size > diagram.d:
            raise ValueError(f"event {(position, size)} does not fit on {diagram.d} wires")
        run = perm[position : position + size]
        if any(run[i] >= run[i + 1] for i in range(len(run) - 1)):
            raise ValueError(f"event {(position, size)} hits wires {run} that are not pairwise uncrossed")
        perm[position : position + size] = run[::-1]
    if perm != list(range(diagram.d, 0, -1)):
        raise ValueError("events do not cross every pair of wires exactly once")
    return diagram.realized_wc()


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    witness: PartialLinearSpace | WiringDiagram | None
    nodes: int
    elapsed: float

    def __post_init__(self) -> None:
        if (self.witness is not None) != (self.status is SearchStatus.WITNESS_FOUND):
            raise ValueError("witness present iff status is witness-found")


# ---------------------------------------------------------------------------
# packing search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PackingResult:
    """Largest found family of k-subsets pairwise sharing <= 1 element.

    ``proved_optimal`` is True only when the backtracking ran to exhaustion;
    on a node-limit stop the size is just a lower bound.
    """

    max_blocks: int
    witness: PartialLinearSpace
    proved_optimal: bool
    nodes: int
    elapsed: float


def _pair_masks(ground: int, blocks: list[tuple[int, ...]]) -> list[int]:
    index = {pair: i for i, pair in enumerate(combinations(range(1, ground + 1), 2))}
    masks = []
    for block in blocks:
        mask = 0
        for pair in combinations(block, 2):
            mask |= 1 << index[pair]
        masks.append(mask)
    return masks


def packing_max(
    v: int,
    block_size: int,
    limits: SearchLimits = SearchLimits(),
    progress: ProgressFn | None = None,
) -> PackingResult:
    """Exact maximum number of ``block_size``-subsets of a ``v``-set that
    pairwise share at most one element.

    Exhaustive backtracking in lexicographic order.  The first block is
    pinned to {1,...,k} (any packing can be relabeled that way), candidate
    lists are filtered by pair masks, and subtrees are cut with the bound

        #chosen + min(#candidates, free_pairs // C(k,2), free_capacity // k)

    where each element can lie in at most floor((v-1)/(k-1)) blocks.
    """
    if block_size not in (3, 4):
        raise ValueError("block size must be 3 or 4")
    if v < 3:
        raise ValueError("ground set must have at least 3 elements")
    ticker = _Ticker(limits, DEFAULT_PACKING_NODES, progress)
    if v < block_size:
        return PackingResult(0, PartialLinearSpace(v, ()), True, 0, ticker.elapsed())

    blocks = list(combinations(range(1, v + 1), block_size))
    masks = _pair_masks(v, blocks)
    ppb = block_size * (block_size - 1) // 2
    cap = (v - 1) // (block_size - 1)
    usage = [0] * (v + 1)
    total_pairs = v * (v - 1) // 2

    best = 0
    best_blocks: tuple[int, ...] = ()
    chosen: list[int] = []

    def dfs(used_mask: int, free_pairs: int, free_capacity: int, cands: list[int]) -> None:
        nonlocal best, best_blocks
        ticker.tick()
        if len(chosen) > best:
            best = len(chosen)
            best_blocks = tuple(chosen)
        if len(chosen) + min(len(cands), free_pairs // ppb, free_capacity // block_size) <= best:
            return
        for i, bi in enumerate(cands):
            mask = masks[bi]
            if mask & used_mask:
                continue
            if any(usage[e] >= cap for e in blocks[bi]):
                continue
            rest = [bj for bj in cands[i + 1 :] if masks[bj] & (used_mask | mask) == 0]
            chosen.append(bi)
            for e in blocks[bi]:
                usage[e] += 1
            dfs(used_mask | mask, free_pairs - ppb, free_capacity - block_size, rest)
            for e in blocks[bi]:
                usage[e] -= 1
            chosen.pop()

    proved = True
    try:
        # relabeling maps the lexicographically smallest block of any packing
        # to {1..k}, so the maximum is attained with block 0 present
        chosen.append(0)
        for e in blocks[0]:
            usage[e] += 1
        dfs(masks[0], total_pairs - ppb, v * cap - block_size, list(range(1, len(blocks))))
    except _LimitReached:
        proved = False
    witness = PartialLinearSpace(v, tuple(blocks[i] for i in best_blocks))
    validate_partial_linear_space(witness)
    return PackingResult(best, witness, proved, ticker.nodes, ticker.elapsed())


# ---------------------------------------------------------------------------
# partial linear space search
# ---------------------------------------------------------------------------


def partial_linear_space_exists(
    wc: WeakCombinatorics,
    limits: SearchLimits = SearchLimits(),
    progress: ProgressFn | None = None,
) -> SearchOutcome:
    """Is there a family of n4 quadruple and n3 triple blocks on d elements,
    pairwise sharing at most one element?

    Consistency makes the double count automatic, so only the 3- and
    4-blocks are placed.  Quadruples are chosen first (lexicographically
    ascending, the first one pinned by relabeling), then triples.
    Exhaustion of the tree is a proof of non-existence.
    """
    if not wc.is_consistent():
        raise ValueError(f"{wc} is not consistent")
    if not wc.is_quadruple_bounded():
        raise ValueError(f"{wc} has points of multiplicity above 4")
    d, n3, n4 = wc.d, wc.n3, wc.n4
    ticker = _Ticker(limits, DEFAULT_PACKING_NODES, progress)

    if n3 == 0 and n4 == 0:
        witness = PartialLinearSpace(d, ())
        return SearchOutcome(SearchStatus.WITNESS_FOUND, witness, 0, ticker.elapsed())

    quads = list(combinations(range(1, d + 1), 4)) if n4 else []
    trips = list(combinations(range(1, d + 1), 3)) if n3 else []
    qmasks = _pair_masks(d, quads)
    tmasks = _pair_masks(d, trips)
    chosen: list[tuple[int, ...]] = []

    def triples_dfs(used_mask: int, need: int, cands: list[int]) -> bool:
        ticker.tick()
        if need == 0:
            return True
        if len(cands) < need:
            return False
        for i, ti in enumerate(cands):
            if len(cands) - i < need:
                return False
            mask = tmasks[ti]
            rest = [tj for tj in cands[i + 1 :] if tmasks[tj] & (used_mask | mask) == 0]
            chosen.append(trips[ti])
            if triples_dfs(used_mask | mask, need - 1, rest):
                return True
            chosen.pop()
        return False

    def start_triples(used_mask: int) -> bool:
        if n3 == 0:
            return True
        cands = [i for i, mask in enumerate(tmasks) if mask & used_mask == 0]
        if n4 == 0:
            # no quadruple stage pinned the labels yet, so the relabeling
            # argument pins the lexicographically smallest triple instead
            first = tmasks[0]
            chosen.append(trips[0])
            rest = [i for i in cands if i != 0 and tmasks[i] & first == 0]
            if triples_dfs(first, n3 - 1, rest):
                return True
            chosen.pop()
            return False
        return triples_dfs(used_mask, n3, cands)

    def quads_dfs(used_mask: int, need: int, cands: list[int]) -> bool:
        ticker.tick()
        if need == 0:
            return start_triples(used_mask)
        if len(cands) < need:
            return False
        for i, qi in enumerate(cands):
            if len(cands) - i < need:
                return False
            mask = qmasks[qi]
            rest = [qj for qj in cands[i + 1 :] if qmasks[qj] & (used_mask | mask) == 0]
            chosen.append(quads[qi])
            if quads_dfs(used_mask | mask, need - 1, rest):
                return True
            chosen.pop()
        return False

    try:
        if n4 > 0:
            chosen.append(quads[0])
            rest = [i for i in range(1, len(quads)) if qmasks[i] & qmasks[0] == 0]
            found = quads_dfs(qmasks[0], n4 - 1, rest)
        else:
            found = start_triples(0)
    except _LimitReached:
        return SearchOutcome(SearchStatus.LIMIT_REACHED, None, ticker.nodes, ticker.elapsed())

    if not found:
        return SearchOutcome(SearchStatus.EXHAUSTED_NONE, None, ticker.nodes, ticker.elapsed())
    witness = PartialLinearSpace(d, tuple(chosen))
    realized = validate_partial_linear_space(witness)
    if realized != wc:
        raise AssertionError(f"witness realizes {realized}, expected {wc}")
    return SearchOutcome(SearchStatus.WITNESS_FOUND, witness, ticker.nodes, ticker.elapsed())


# ---------------------------------------------------------------------------
# wiring diagram search
# ---------------------------------------------------------------------------


def wiring_search(
    wc: WeakCombinatorics,
    limits: SearchLimits = SearchLimits(),
    progress: ProgressFn | None = None,
) -> SearchOutcome:
    """Search for a wiring diagram realizing the given counts.

    States are (permutation, remaining budgets); moves reverse a strictly
    ascending run of length k with n_k budget left.  Since an ascending run
    is exactly a set of pairwise-uncrossed adjacent wires, and budgets sum to
    C(d,2) crossings by consistency, reaching zero budgets is equivalent to
    reaching the full reversal with every pair crossed once.  Failed states
    are memoized, so a completed search without witness is exhaustive.
    """
    if not wc.is_consistent():
        raise ValueError(f"{wc} is not consistent")
    if not wc.is_quadruple_bounded():
        raise ValueError(f"{wc} has points of multiplicity above 4")
    if wc.d < 3:
        raise ValueError("wiring diagrams need at least 3 wires")
    d = wc.d
    sizes = tuple(sorted((k for k, _ in wc.counts), reverse=True))
    budget0 = tuple(wc.n(k) for k in sizes)
    start = tuple(range(1, d + 1))
    failed: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    ticker = _Ticker(limits, DEFAULT_WIRING_NODES, progress)

    def dfs(perm: tuple[int, ...], budgets: tuple[int, ...]) -> tuple[tuple[int, int], ...] | None:
        if not any(budgets):
            return ()
        ticker.tick()
        key = (perm, budgets)
        if key in failed:
            return None
        for which, k in enumerate(sizes):
            if budgets[which] == 0:
                continue
            next_budgets = budgets[:which] + (budgets[which] - 1,) + budgets[which + 1 :]
            for p in range(d - k + 1):
                run = perm[p : p + k]
                ascending = True
                for i in range(k - 1):
                    if run[i] >= run[i + 1]:
                        ascending = False
                        break
                if not ascending:
                    continue
                child = perm[:p] + run[::-1] + perm[p + k :]
                tail = dfs(child, next_budgets)
                if tail is not None:
                    return ((p, k),) + tail
        failed.add(key)
        return None

    try:
        events = dfs(start, budget0)
    except _LimitReached:
        return SearchOutcome(SearchStatus.LIMIT_REACHED, None, ticker.nodes, ticker.elapsed())
    if events is None:
        return SearchOutcome(SearchStatus.EXHAUSTED_NONE, None, ticker.nodes, ticker.elapsed())
    witness = WiringDiagram(d, events)
    realized = validate_wiring_diagram(witness)
    if realized != wc:
        raise AssertionError(f"witness realizes {realized}, expected {wc}")
    return SearchOutcome(SearchStatus.WITNESS_FOUND, witness, ticker.nodes, ticker.elapsed())


# ---------------------------------------------------------------------------
# witness serialization
# ---------------------------------------------------------------------------


def witness_to_json(witness: PartialLinearSpace | WiringDiagram) -> str:
    """Stable JSON form (no timings, fixed key order), ending in a newline."""
    if isinstance(witness, PartialLinearSpace):
        payload = {
            "type": "partial-linear-space",
            "d": witness.d,
            "blocks": [list(b) for b in witness.blocks],
        }
    elif isinstance(witness, WiringDiagram):
        payload = {
            "type": "wiring-diagram",
            "d": witness.d,
            "events": [list(e) for e in witness.events],
        }
    else:
        raise TypeError(f"not a witness: {witness!r}")
    return json.dumps(payload, indent=2) + "\n"


def witness_from_json(text: str) -> PartialLinearSpace | WiringDiagram:
    payload = json.loads(text)
    kind = payload.get("type")
    if kind == "partial-linear-space":
        return PartialLinearSpace(int(payload["d"]), tuple(tuple(map(int, b)) for b in payload["blocks"]))
    if kind == "wiring-diagram":
        return WiringDiagram(int(payload["d"]), tuple((int(p), int(k)) for p, k in payload["events"]))
    raise ValueError(f"unknown witness type {kind!r}")


def validate_witness(
    witness: PartialLinearSpace | WiringDiagram,
    expected: WeakCombinatorics | None = None,
) -> WeakCombinatorics:
    """Revalidate a (possibly re-parsed) witness; returns the realized counts
    and checks them against ``expected`` when given."""
    if isinstance(witness, PartialLinearSpace):
        realized = validate_partial_linear_space(witness)
    elif isinstance(witness, WiringDiagram):
        realized = validate_wiring_diagram(witness)
    else:
        raise TypeError(f"not a witness: {witness!r}")
    if expected is not None and realized != expected:
        raise ValueError(f"witness realizes {realized}, expected {expected}")
    return realized
