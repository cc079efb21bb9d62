"""Undirected graph substrate: BFS distances, geodesic predicates, enumeration
of maximal geodesics and coverage accounting.

Vertices are dense integer ids ``0..n-1``. Paths are tuples of ids.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

Path = tuple[int, ...]
Edge = tuple[int, int]

DEFAULT_ENUM_GUARD = 10**6


class GraphError(ValueError):
    """Malformed graph input (bad id, self-loop, ...)."""


class NotGeodesicError(ValueError):
    pass


class NotACycleError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    """Enumeration stopped at the guard; ``partial`` holds what was found."""

    def __init__(self, guard: int, partial: list[Path]):
        super().__init__(f"enumeration guard of {guard} paths exceeded")
        self.guard = guard
        self.partial = partial


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph with a memoized BFS distance oracle.

    The memo is an LRU cache of single-source distance lists guarded by a
    lock, so concurrent readers are safe. Capacity is bounded so memory
    stays linear in ``n`` for large graphs. A family with a closed-form
    distance can supply it as ``metric``; pair queries then skip search.
    """

    __slots__ = ("n", "adjacency", "labels", "metric", "_memo", "_memo_cap", "_lock")

    def __init__(
        self,
        n: int,
        adjacency: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        memo_capacity: int | None = None,
        metric: Callable[[int, int], int] | None = None,
    ):
        self.n = n
        self.metric = metric
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adjacency)
        self.labels = tuple(labels) if labels is not None else None
        if memo_capacity is None:
            memo_capacity = max(64, (1 << 24) // max(n, 1))
        self._memo_cap = memo_capacity
        self._memo: OrderedDict[int, list[int]] = OrderedDict()
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            return False
        adj = self.adjacency[u]
        # adjacency lists are sorted and short
        return v in adj

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return min(bfs_distances(self, 0)) >= 0

    def clear_cache(self) -> None:
        with self._lock:
            self._memo.clear()

    def _cached(self, src: int) -> list[int] | None:
        with self._lock:
            d = self._memo.get(src)
            if d is not None:
                self._memo.move_to_end(src)
            return d

    def _store(self, src: int, dist: list[int]) -> None:
        with self._lock:
            self._memo[src] = dist
            self._memo.move_to_end(src)
            while len(self._memo) > self._memo_cap:
                self._memo.popitem(last=False)


def build_graph(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Sequence[str] | None = None,
    metric: Callable[[int, int], int] | None = None,
) -> Graph:
    """Build a graph on ids ``0..n-1``; duplicate edges are merged.

    >>> g = build_graph(3, [(0, 1), (1, 0)])
    >>> g.edge_count()
    1
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    if labels is not None and len(labels) != n:
        raise GraphError(f"expected {n} labels, got {len(labels)}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an id outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at edge {(u, v)}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, [sorted(a) for a in adj], labels, metric=metric)


def bfs_distances(g: Graph, src: int) -> list[int]:
    """Unweighted single-source distances; unreachable vertices get -1.

    The returned list is shared with the cache and must not be mutated.
    """
    if not 0 <= src < g.n:
        raise GraphError(f"source {src} outside [0, {g.n})")
    cached = g._cached(src)
    if cached is not None:
        return cached
    adj = g.adjacency
    dist = [-1] * g.n
    dist[src] = 0
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    g._store(src, dist)
    return dist


def distance(g: Graph, u: int, v: int) -> int:
    if u == v:
        if not 0 <= u < g.n:
            raise GraphError(f"vertex {u} outside [0, {g.n})")
        return 0
    cached = g._cached(u)
    if cached is not None:
        return cached[v]
    cached = g._cached(v)
    if cached is not None:
        return cached[u]
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"vertex pair {(u, v)} outside [0, {g.n})")
    if g.metric is not None:
        return g.metric(u, v)
    return _bidirectional_distance(g, u, v)


def _bidirectional_distance(g: Graph, u: int, v: int) -> int:
    # One-off pair query: grow the smaller frontier, finish the layer on contact.
    adj = g.adjacency
    du, dv = {u: 0}, {v: 0}
    fu, fv = [u], [v]
    while fu and fv:
        if len(fu) <= len(fv):
            frontier, mine, theirs = fu, du, dv
        else:
            frontier, mine, theirs = fv, dv, du
        depth = mine[frontier[0]] + 1
        best = -1
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y in mine:
                    continue
                mine[y] = depth
                nxt.append(y)
                if y in theirs:
                    cand = depth + theirs[y]
                    if best < 0 or cand < best:
                        best = cand
        if best >= 0:
            return best
        if frontier is fu:
            fu = nxt
        else:
            fv = nxt
    return -1


def geodesic_defect(g: Graph, p: Sequence[int]) -> str | None:
    """Return ``None`` if ``p`` is a geodesic of ``g``, else a reason code.

    Reason codes: ``empty``, ``bad-vertex``, ``repeated-vertex``,
    ``not-adjacent``, ``not-shortest``.
    """
    if len(p) == 0:
        return "empty"
    for v in p:
        if not (isinstance(v, int) and 0 <= v < g.n):
            return "bad-vertex"
    if len(set(p)) != len(p):
        return "repeated-vertex"
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            return "not-adjacent"
    if distance(g, p[0], p[-1]) != len(p) - 1:
        return "not-shortest"
    return None


def is_geodesic(g: Graph, p: Sequence[int]) -> bool:
    return geodesic_defect(g, p) is None


def _endpoint_extendable(g: Graph, end: int, other: int, length: int) -> bool:
    dist = bfs_distances(g, other)
    return any(dist[x] == length + 1 for x in g.adjacency[end])


def is_maximal_pair(g: Graph, u: int, v: int) -> bool:
    """True iff u-v geodesics cannot be extended past either endpoint."""
    d = distance(g, u, v)
    return not (_endpoint_extendable(g, u, v, d) or _endpoint_extendable(g, v, u, d))


def is_maximal_geodesic(g: Graph, p: Sequence[int]) -> bool:
    reason = geodesic_defect(g, p)
    if reason is not None:
        raise NotGeodesicError(f"not a geodesic ({reason}): {list(p)}")
    return is_maximal_pair(g, p[0], p[-1])


def canonical_path(p: Sequence[int]) -> Path:
    """Orient a path so the smaller endpoint id comes first."""
    p = tuple(p)
    return p if p[0] <= p[-1] else p[::-1]


def geodesics_between(g: Graph, u: int, v: int) -> list[Path]:
    """All shortest u-v paths, by DFS over the shortest-path DAG."""
    dv = bfs_distances(g, v)
    if dv[u] < 0:
        return []
    adj = g.adjacency
    out: list[Path] = []
    stack: list[int] = [u]

    def walk(x: int) -> None:
        if x == v:
            out.append(tuple(stack))
            return
        want = dv[x] - 1
        for y in adj[x]:
            if dv[y] == want:
                stack.append(y)
                walk(y)
                stack.pop()

    walk(u)
    return out


def count_geodesics_between(g: Graph, u: int, v: int) -> int:
    """Number of shortest u-v paths (DAG path counting, no enumeration)."""
    du = bfs_distances(g, u)
    dv = bfs_distances(g, v)
    d = du[v]
    if d < 0:
        return 0
    layers: dict[int, list[int]] = {}
    for x in range(g.n):
        if du[x] >= 0 and du[x] + dv[x] == d:
            layers.setdefault(du[x], []).append(x)
    count = {u: 1}
    for k in range(1, d + 1):
        for x in layers[k]:
            count[x] = sum(count.get(y, 0) for y in g.adjacency[x] if du[y] == k - 1)
    return count[v]


def _collect(
    g: Graph, pairs: Iterable[tuple[int, int]], guard: int
) -> list[Path]:
    found: list[Path] = []
    for u, v in pairs:
        paths = geodesics_between(g, u, v)
        if len(found) + len(paths) > guard:
            found.extend(paths[: guard - len(found)])
            raise GuardExceeded(guard, found)
        found.extend(paths)
    return found


def enumerate_maximal_geodesics(g: Graph, guard: int = DEFAULT_ENUM_GUARD) -> list[Path]:
    """Every maximal geodesic of a connected graph, each once in canonical form.

    Maximality depends only on the endpoint pair, so pairs are filtered
    first and then all shortest paths between surviving pairs are listed.
    """
    if not g.is_connected():
        raise GraphError("graph must be connected")
    if g.n == 1:
        return [(0,)]
    pairs = (
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if is_maximal_pair(g, u, v)
    )
    return _collect(g, pairs, guard)


def enumerate_geodesics(g: Graph, guard: int = DEFAULT_ENUM_GUARD) -> list[Path]:
    """Every geodesic (including single vertices), canonical orientation."""
    pairs = ((u, v) for u in range(g.n) for v in range(u, g.n))
    return _collect(g, pairs, guard)


def is_isometric_cycle(g: Graph, c: Sequence[int]) -> bool:
    """True iff the cycle metric on ``c`` equals the graph metric."""
    c = tuple(c)
    L = len(c)
    if L < 3 or len(set(c)) != L:
        raise NotACycleError(f"not a simple cycle: {list(c)}")
    for i in range(L):
        if not g.has_edge(c[i], c[(i + 1) % L]):
            raise NotACycleError(f"{c[i]} and {c[(i + 1) % L]} are not adjacent")
    metric = g.metric
    for i in range(L):
        if metric is None:
            dist = bfs_distances(g, c[i])
            d_to = dist.__getitem__
        else:
            d_to = lambda y, x=c[i]: metric(x, y)  # noqa: E731
        for j in range(i + 1, L):
            k = j - i
            if d_to(c[j]) != min(k, L - k):
                return False
    return True


def path_edges(p: Sequence[int]) -> list[Edge]:
    return [edge_key(a, b) for a, b in zip(p, p[1:])]


@dataclass
class CoverageReport:
    mode: str
    total: int
    covered: int
    missing: list = field(default_factory=list)
    invalid_paths: list[int] = field(default_factory=list)
    path_count: int = 0
    edge_disjoint: bool = True

    @property
    def valid(self) -> bool:
        return not self.missing and not self.invalid_paths

    @property
    def is_partition(self) -> bool:
        return self.valid and self.edge_disjoint


def coverage_report(
    g: Graph,
    paths: Sequence[Sequence[int]],
    mode: str = "vertex",
    targets: Iterable | None = None,
) -> CoverageReport:
    """Check that ``paths`` are geodesics covering ``targets``.

    In edge mode targets are ``(u, v)`` pairs in either orientation and an
    edge counts as covered when some path traverses it. ``edge_disjoint``
    reports whether no edge is traversed twice across all paths.
    """
    if mode not in ("vertex", "edge"):
        raise ValueError(f"unknown mode {mode!r}")
    invalid = [i for i, p in enumerate(paths) if not is_geodesic(g, p)]
    seen_edges: set[Edge] = set()
    disjoint = True
    for p in paths:
        for e in path_edges(p):
            if e in seen_edges:
                disjoint = False
            seen_edges.add(e)
    if mode == "vertex":
        universe = list(range(g.n)) if targets is None else sorted(set(targets))
        hit: set = {v for p in paths for v in p}
    else:
        universe = g.edges() if targets is None else sorted({edge_key(*e) for e in targets})
        hit = seen_edges
    missing = [t for t in universe if t not in hit]
    return CoverageReport(
        mode=mode,
        total=len(universe),
        covered=len(universe) - len(missing),
        missing=missing,
        invalid_paths=invalid,
        path_count=len(paths),
        edge_disjoint=disjoint,
    )
