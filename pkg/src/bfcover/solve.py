"""Geodesic cover as set cover: greedy, exact branch-and-bound, counting
lower bounds and the closed forms used as oracles.

Targets (vertices, or edges as sorted id pairs) are numbered and every
candidate geodesic becomes a Python-int bitmask over that numbering.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cover import Cover
from .graph import (
    DEFAULT_ENUM_GUARD,
    Graph,
    Path,
    build_graph,
    edge_key,
    enumerate_maximal_geodesics,
    geodesic_defect,
    path_edges,
)


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    BUDGET_EXCEEDED = "budget_exceeded"


class BoundPremiseError(ValueError):
    """A candidate covers more special targets than the assumed maximum."""


def enum_guard() -> int:
    return int(os.environ.get("BFCOVER_ENUM_GUARD", DEFAULT_ENUM_GUARD))


@dataclass
class CoverInstance:
    graph: Graph
    candidates: list[Path]
    targets: list
    mode: str = "vertex"

    def covered_by(self, p: Sequence[int]) -> set:
        return set(p) if self.mode == "vertex" else set(path_edges(p))


def make_instance(
    g: Graph,
    mode: str = "vertex",
    candidates: Iterable[Sequence[int]] | None = None,
    targets: Iterable | None = None,
    guard: int | None = None,
) -> CoverInstance:
    """Build a validated instance; candidates default to all maximal geodesics."""
    if mode not in ("vertex", "edge"):
        raise ValueError(f"unknown mode {mode!r}")
    if candidates is None:
        cands = enumerate_maximal_geodesics(g, guard if guard is not None else enum_guard())
    else:
        cands = [tuple(p) for p in candidates]
        for i, p in enumerate(cands):
            reason = geodesic_defect(g, p)
            if reason is not None:
                raise ValueError(f"candidate {i} is not a geodesic ({reason})")
    if targets is None:
        tgt = list(range(g.n)) if mode == "vertex" else g.edges()
    elif mode == "vertex":
        tgt = sorted(set(int(t) for t in targets))
    else:
        tgt = sorted({edge_key(int(a), int(b)) for a, b in targets})
    return CoverInstance(g, cands, tgt, mode)


@dataclass
class SolveResult:
    cover: Cover | None
    status: Status
    lower_bound: int
    nodes_explored: int = 0
    upper_bound: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int | None:
        return None if self.cover is None else len(self.cover)


def _masks(inst: CoverInstance) -> tuple[int, list[int]]:
    index = {t: i for i, t in enumerate(inst.targets)}
    masks = []
    for p in inst.candidates:
        m = 0
        for t in inst.covered_by(p):
            i = index.get(t)
            if i is not None:
                m |= 1 << i
        masks.append(m)
    return (1 << len(inst.targets)) - 1, masks


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _simple_bound(universe: int, masks: list[int]) -> int:
    if universe == 0:
        return 0
    best = max((m & universe).bit_count() for m in masks) if masks else 0
    return _ceil_div(universe.bit_count(), best) if best else 0


def _cover(inst: CoverInstance, chosen: Iterable[int]) -> Cover:
    return Cover(paths=[inst.candidates[i] for i in chosen], mode=inst.mode, targets=list(inst.targets))


def _greedy(universe: int, masks: list[int]) -> list[int] | None:
    uncovered = universe
    chosen = []
    while uncovered:
        best_i, best_gain = -1, 0
        for i, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_i < 0:
            return None
        chosen.append(best_i)
        uncovered &= ~masks[best_i]
    return chosen


def greedy_cover(inst: CoverInstance) -> SolveResult:
    """Largest-gain-first greedy cover; ties go to the lower candidate index."""
    universe, masks = _masks(inst)
    lb = _simple_bound(universe, masks)
    chosen = _greedy(universe, masks)
    if chosen is None:
        return SolveResult(None, Status.INFEASIBLE, lb)
    return SolveResult(_cover(inst, chosen), Status.FEASIBLE, lb, upper_bound=len(chosen))


def _reduce(masks: list[int]) -> list[int]:
    """Indices of candidates surviving dedup and strict-subset dominance."""
    first: dict[int, int] = {}
    for i, m in enumerate(masks):
        if m and m not in first:
            first[m] = i
    uniq = sorted(first, key=lambda m: (-m.bit_count(), first[m]))
    kept: list[int] = []
    for m in uniq:
        if not any(m | k == k for k in kept):
            kept.append(m)
    return sorted(first[m] for m in kept)


class _Budget(Exception):
    pass


def _target_mask(inst: CoverInstance, targets: Iterable) -> int:
    index = {t: i for i, t in enumerate(inst.targets)}
    m = 0
    for t in targets:
        key = t if inst.mode == "vertex" else edge_key(*t)
        if key in index:
            m |= 1 << index[key]
    return m


def exact_cover(
    inst: CoverInstance,
    budget: int = 10**7,
    special: Sequence[Iterable] = (),
) -> SolveResult:
    """Minimum cover by branch and bound.

    Branches on the uncovered target hit by the fewest candidates; a node is
    pruned when ``chosen + ceil(uncovered / max gain)`` reaches the incumbent.
    Each set in ``special`` (e.g. the degree-2 vertices) adds the same
    counting bound restricted to that set. Greedy supplies the first
    incumbent. If ``budget`` nodes are exceeded the best cover found is
    returned with the root lower bound.
    """
    universe, all_masks = _masks(inst)
    subsets = [universe] + [_target_mask(inst, t) & universe for t in special]
    if universe == 0:
        return SolveResult(_cover(inst, []), Status.OPTIMAL, 0, upper_bound=0)
    union = 0
    for m in all_masks:
        union |= m
    if union & universe != universe:
        return SolveResult(None, Status.INFEASIBLE, _simple_bound(universe, all_masks))

    keep = _reduce(all_masks)
    masks = [all_masks[i] for i in keep]
    root_lb = max(_simple_bound(t, masks) for t in subsets)
    greedy = _greedy(universe, masks)
    assert greedy is not None
    best = list(greedy)

    hitting: dict[int, list[int]] = {}
    for ci, m in enumerate(masks):
        x = m
        while x:
            low = x & -x
            hitting.setdefault(low.bit_length() - 1, []).append(ci)
            x ^= low

    nodes = 0
    chosen: list[int] = []

    def search(uncovered: int) -> None:
        nonlocal nodes, best
        nodes += 1
        if nodes > budget:
            raise _Budget
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        gains = [(m & uncovered).bit_count() for m in masks]
        bound = _ceil_div(uncovered.bit_count(), max(gains))
        for t in subsets[1:]:
            t &= uncovered
            if t:
                bound = max(bound, _ceil_div(t.bit_count(), max((m & t).bit_count() for m in masks)))
        if len(chosen) + bound >= len(best):
            return
        pivot, pivot_n = -1, 0
        x = uncovered
        while x:
            low = x & -x
            e = low.bit_length() - 1
            k = len(hitting[e])
            if pivot < 0 or k < pivot_n:
                pivot, pivot_n = e, k
            x ^= low
        for ci in sorted(hitting[pivot], key=lambda c: (-gains[c], c)):
            chosen.append(ci)
            search(uncovered & ~masks[ci])
            chosen.pop()
            if len(best) <= root_lb:
                return

    status = Status.OPTIMAL
    if len(best) > root_lb:
        try:
            search(universe)
        except _Budget:
            status = Status.BUDGET_EXCEEDED
    lower = len(best) if status is Status.OPTIMAL else root_lb
    return SolveResult(
        _cover(inst, [keep[i] for i in best]),
        status,
        lower,
        nodes_explored=nodes,
        upper_bound=len(best),
        meta={"candidates": len(all_masks), "reduced_candidates": len(masks), "greedy": len(greedy)},
    )


def counting_lower_bound(
    inst: CoverInstance, special_targets: Iterable, per_path_max: int
) -> int:
    """``ceil(|special| / per_path_max)``, after checking no candidate beats the max."""
    if per_path_max < 1:
        raise ValueError("per_path_max must be >= 1")
    if inst.mode == "vertex":
        special = set(special_targets)
    else:
        special = {edge_key(*e) for e in special_targets}
    if not special:
        return 0
    for i, p in enumerate(inst.candidates):
        k = len(inst.covered_by(p) & special)
        if k > per_path_max:
            raise BoundPremiseError(
                f"candidate {i} covers {k} special targets, more than {per_path_max}"
            )
    return _ceil_div(len(special), per_path_max)


def bf_lower_bounds(r: int) -> tuple[int, int]:
    """(vertex, edge) geodesic cover lower bounds for BF(r)."""
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    return _ceil_div(1 << (r + 1), 3), 1 << r


def complete_bipartite(r: int) -> Graph:
    """K_{r,r}: side X is ``0..r-1``, side Y is ``r..2r-1``."""
    return build_graph(2 * r, [(x, r + y) for x in range(r) for y in range(r)])


def krr_cover(r: int) -> Cover:
    """A cover of K_{r,r} by ``ceil(2r/3)`` length-2 paths.

    Each path takes its centre from the side with fewer uncovered vertices
    and both ends from the other side, padding with covered vertices once a
    side runs out.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    sides = [list(range(r)), list(range(r, 2 * r))]
    todo = [list(sides[0]), list(sides[1])]
    paths: list[Path] = []
    while todo[0] or todo[1]:
        c = 0 if len(todo[0]) <= len(todo[1]) else 1
        o = 1 - c
        centre = todo[c].pop(0) if todo[c] else sides[c][0]
        ends = todo[o][:2]
        del todo[o][:2]
        for v in sides[o]:
            if len(ends) == 2:
                break
            if v not in ends:
                ends.append(v)
        paths.append((ends[0], centre, ends[1]))
    return Cover(paths=paths, mode="vertex")
