"""Partition of E(BF(r)) into ``2**(r-1)`` edge-disjoint isometric cycles of
length ``4r``, and the split of each cycle into two edge-disjoint
diametrals, giving an edge geodesic partition of size ``2**r``.

The BF(3) base case is found by exhaustive search. Larger dimensions are
obtained by lifting: BF(r) minus level 0 is two copies of BF(r-1) (rows
below / above ``2**(r-1)``, shifted up one level), and each cycle of the
smaller partition yields two cycles joined through level 0.
"""

from __future__ import annotations

import functools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .butterfly import ButterflyGraph, build_butterfly
from .cover import Cover
from .graph import Path, edge_key, geodesics_between, is_isometric_cycle, path_edges


class PartitionError(RuntimeError):
    pass


@dataclass(frozen=True)
class IsoCycle:
    vertices: Path
    anchors: tuple[int, int]

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        c = self.vertices
        return [edge_key(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def arcs(self) -> tuple[Path, Path]:
        """The two anchor-to-anchor halves, both oriented from ``anchors[0]``."""
        c = self.vertices
        i = c.index(self.anchors[0])
        rot = c[i:] + c[:i]
        k = rot.index(self.anchors[1])
        first = rot[: k + 1]
        second = (rot[k:] + rot[:1])[::-1]
        return first, second


@dataclass(frozen=True)
class CyclePartition:
    r: int
    cycles: tuple[IsoCycle, ...]

    def __len__(self) -> int:
        return len(self.cycles)


def make_cycle(bf: ButterflyGraph, vertices: Sequence[int]) -> IsoCycle:
    """Wrap a cycle in canonical orientation.

    Starts at the smaller level-0 anchor and walks toward the smaller of
    its two cycle neighbours.
    """
    vs = tuple(vertices)
    anchors = sorted(v for v in vs if bf.level(v) == 0)
    if len(anchors) != 2:
        raise PartitionError(f"cycle has {len(anchors)} level-0 vertices, expected 2")
    i = vs.index(anchors[0])
    rot = vs[i:] + vs[:i]
    if rot[-1] < rot[1]:
        rot = rot[:1] + rot[1:][::-1]
    return IsoCycle(rot, (anchors[0], anchors[1]))


def _isometric_candidates(bf: ButterflyGraph) -> list[IsoCycle]:
    g = bf.graph
    L = 4 * bf.r
    out: dict[Path, IsoCycle] = {}
    U = bf.U
    for ai, a in enumerate(U):
        for b in U[ai + 1 :]:
            geos = geodesics_between(g, a, b)
            if not geos or len(geos[0]) - 1 != 2 * bf.r:
                continue
            for i, p in enumerate(geos):
                inner = set(p[1:-1])
                for q in geos[i + 1 :]:
                    if inner.isdisjoint(q[1:-1]):
                        cyc = make_cycle(bf, p + q[-2:0:-1])
                        if len(cyc) == L and cyc.vertices not in out and is_isometric_cycle(g, cyc.vertices):
                            out[cyc.vertices] = cyc
    return [out[k] for k in sorted(out)]


def _exact_partition(edges: list[tuple[int, int]], cands: list[IsoCycle]) -> list[IsoCycle] | None:
    by_edge: dict[tuple[int, int], list[int]] = {e: [] for e in edges}
    cand_edges = [frozenset(c.edges()) for c in cands]
    for i, es in enumerate(cand_edges):
        for e in es:
            by_edge[e].append(i)
    chosen: list[int] = []
    used: set[tuple[int, int]] = set()

    def search() -> bool:
        free = [e for e in edges if e not in used]
        if not free:
            return True
        e = min(free, key=lambda x: (len(by_edge[x]), x))
        for i in by_edge[e]:
            if used.isdisjoint(cand_edges[i]):
                chosen.append(i)
                used.update(cand_edges[i])
                if search():
                    return True
                used.difference_update(cand_edges[i])
                chosen.pop()
        return False

    return [cands[i] for i in chosen] if search() else None


@functools.lru_cache(maxsize=None)
def base_cycles_bf3() -> CyclePartition:
    """Four edge-disjoint isometric 12-cycles partitioning E(BF(3)).

    Found by search over pairs of internally disjoint diametrals between
    opposite-colour level-0 vertices, followed by an exact-cover backtrack
    over the 48 edges.
    """
    bf = build_butterfly(3)
    cands = _isometric_candidates(bf)
    found = _exact_partition(bf.graph.edges(), cands)
    if found is None:
        raise PartitionError("no partition of E(BF(3)) into isometric 12-cycles found")
    part = CyclePartition(3, tuple(found))
    check_partition(bf, part)
    return part


def lift_partition(prev: CyclePartition, bf: ButterflyGraph) -> CyclePartition:
    """Lift a partition of BF(r-1) to BF(r).

    For each cycle ``u-P-w-Q-u`` with anchors ``u, w``, two cycles are formed
    from the copies ``C'`` (same rows) and ``C''`` (rows + 2**(r-1)):
    ``a-u'-P'-w'-x-w''-P''-u''-a`` and ``b-u'-Q'-w'-y-w''-Q''-u''-b``, where
    ``a, b`` / ``x, y`` are the level-0 vertices adjacent to both copies of
    ``u`` / ``w``.
    """
    r = bf.r
    if prev.r != r - 1 or r < 4:
        raise PartitionError(f"cannot lift a BF({prev.r}) partition into BF({r})")
    small_rows = 1 << (r - 1)
    g = bf.graph

    def low(v: int) -> int:
        j, s = divmod(v, small_rows)
        return bf.id(j + 1, s)

    def high(v: int) -> int:
        j, s = divmod(v, small_rows)
        return bf.id(j + 1, s + small_rows)

    cycles: list[IsoCycle] = []
    for cyc in prev.cycles:
        P, Q = cyc.arcs()
        su, sw = cyc.anchors[0] % small_rows, cyc.anchors[1] % small_rows
        a, b = bf.id(0, su), bf.id(0, su + small_rows)
        x, y = bf.id(0, sw), bf.id(0, sw + small_rows)
        for top, arc, far in ((a, P, x), (b, Q, y)):
            seq = (top,) + tuple(map(low, arc)) + (far,) + tuple(map(high, arc[::-1]))
            for i in range(len(seq)):
                if not g.has_edge(seq[i], seq[(i + 1) % len(seq)]):
                    raise PartitionError(
                        f"lifted cycle breaks at {bf.coord(seq[i])}-{bf.coord(seq[(i + 1) % len(seq)])}"
                    )
            cycles.append(make_cycle(bf, seq))
    return CyclePartition(r, tuple(cycles))


def check_partition(
    bf: ButterflyGraph,
    part: CyclePartition,
    isometry: str = "full",
    jobs: int = 1,
) -> None:
    """Raise ``PartitionError`` unless ``part`` is a valid cycle partition.

    ``isometry`` is ``"full"``, ``"sampled"`` (every tenth cycle) or
    ``"none"``.
    """
    r, g = bf.r, bf.graph
    if len(part.cycles) != 1 << (r - 1):
        raise PartitionError(f"{len(part.cycles)} cycles, expected {1 << (r - 1)}")
    seen: set[tuple[int, int]] = set()
    for cyc in part.cycles:
        if len(cyc) != 4 * r:
            raise PartitionError(f"cycle of length {len(cyc)}, expected {4 * r}")
        if len(set(cyc.vertices)) != len(cyc):
            raise PartitionError("cycle repeats a vertex")
        level0 = sorted(v for v in cyc.vertices if bf.level(v) == 0)
        if level0 != sorted(cyc.anchors):
            raise PartitionError(f"cycle level-0 vertices {level0} are not its anchors")
        P, Q = cyc.arcs()
        if len(P) - 1 != 2 * r or len(Q) - 1 != 2 * r:
            raise PartitionError("anchors are not antipodal on the cycle")
        for e in cyc.edges():
            if not g.has_edge(*e):
                raise PartitionError(f"{e} is not an edge of BF({r})")
            if e in seen:
                raise PartitionError(f"edge {e} used twice")
            seen.add(e)
    if len(seen) != g.edge_count():
        raise PartitionError(f"cycles cover {len(seen)} of {g.edge_count()} edges")

    if isometry == "none":
        return
    if isometry == "full":
        chosen = list(part.cycles)
    elif isometry == "sampled":
        chosen = list(part.cycles[::10])
    else:
        raise ValueError(f"unknown isometry mode {isometry!r}")
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            ok = list(ex.map(lambda c: is_isometric_cycle(g, c.vertices), chosen))
    else:
        ok = [is_isometric_cycle(g, c.vertices) for c in chosen]
    bad = [c for c, good in zip(chosen, ok) if not good]
    if bad:
        raise PartitionError(f"{len(bad)} cycles are not isometric, e.g. {bf.coords(bad[0].vertices)}")


def edge_cycle_partition(
    r: int, bf: ButterflyGraph | None = None, isometry: str | None = None, jobs: int = 1
) -> CyclePartition:
    """``2**(r-1)`` isometric ``4r``-cycles partitioning E(BF(r)), r >= 3.

    Every cycle is checked for isometry unless ``isometry`` says otherwise;
    the base case and the first lift are always checked in full.
    """
    if r < 3:
        raise PartitionError(f"cycle partition needs r >= 3, got {r}")
    part = base_cycles_bf3()
    for k in range(4, r + 1):
        step_bf = bf if (bf is not None and k == r) else build_butterfly(k)
        part = lift_partition(part, step_bf)
        if k == 4 and r > 4:
            check_partition(step_bf, part)
    if bf is None:
        bf = build_butterfly(r)
    if isometry is None:
        isometry = "full"
    check_partition(bf, part, isometry=isometry, jobs=jobs)
    return part


def split_to_diametrals(part: CyclePartition, bf: ButterflyGraph | None = None) -> Cover:
    """Cut every cycle at its two anchors: ``2**r`` edge-disjoint diametrals."""
    if bf is None:
        bf = build_butterfly(part.r)
    paths: list[Path] = []
    for cyc in part.cycles:
        P, Q = cyc.arcs()
        if len(P) != len(Q):
            raise PartitionError(f"anchors {cyc.anchors} are not antipodal")
        paths.extend((P, Q))
    return Cover(paths=paths, mode="edge", r=part.r)


def count_24_on_path(bf: ButterflyGraph, p: Sequence[int]) -> int:
    g = bf.graph
    return sum(1 for a, b in path_edges(p) if {g.degree(a), g.degree(b)} == {2, 4})
