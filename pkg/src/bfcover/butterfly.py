"""The r-dimensional butterfly BF(r): topology, coloring and closed-form routing.

Vertex ``[j, s]`` (level ``j``, row ``s``) has dense id ``j * 2**r + s``.
The edge step between levels ``j`` and ``j + 1`` either keeps the row or
flips bit ``r - 1 - j`` (bit 0 is least significant), so edges out of
level 0 flip the most significant bit and edges into level r flip the
least significant one.

Boundary vertices are also named with 1-based indices following the row
order: ``u_i = [0, i - 1]`` and ``w_i = [r, i - 1]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

from .graph import Graph, Path, build_graph

Coord = tuple[int, int]


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"


class ButterflyError(ValueError):
    pass


@dataclass(frozen=True)
class ButterflyGraph:
    r: int
    graph: Graph

    @property
    def rows(self) -> int:
        return 1 << self.r

    def id(self, j: int, s: int) -> int:
        if not (0 <= j <= self.r and 0 <= s < self.rows):
            raise ButterflyError(f"[{j}, {s}] is not a vertex of BF({self.r})")
        return j * self.rows + s

    def coord(self, v: int) -> Coord:
        return divmod(v, self.rows)

    def vid(self, v: int | Sequence[int]) -> int:
        """Accept either a dense id or a ``(level, row)`` pair."""
        if isinstance(v, int):
            if not 0 <= v < self.graph.n:
                raise ButterflyError(f"vertex id {v} outside BF({self.r})")
            return v
        j, s = v
        return self.id(j, s)

    def level(self, v: int) -> int:
        return v // self.rows

    def row(self, v: int) -> int:
        return v % self.rows

    def coords(self, path: Sequence[int]) -> list[Coord]:
        return [self.coord(v) for v in path]

    def u(self, i: int) -> int:
        """1-based level-0 vertex ``u_i``."""
        return self.id(0, i - 1)

    def w(self, i: int) -> int:
        """1-based level-r vertex ``w_i``."""
        return self.id(self.r, i - 1)

    def u_index(self, v: int) -> int:
        return self.row(v) + 1

    def w_index(self, v: int) -> int:
        return self.row(v) + 1

    @property
    def U(self) -> list[int]:
        return [self.u(i) for i in range(1, self.rows + 1)]

    @property
    def W(self) -> list[int]:
        return [self.w(i) for i in range(1, self.rows + 1)]

    @property
    def A(self) -> list[int]:
        return self.U[: self.rows // 2]

    @property
    def B(self) -> list[int]:
        return self.U[self.rows // 2 :]

    @property
    def C(self) -> list[int]:
        return self.W[: self.rows // 2]

    @property
    def D(self) -> list[int]:
        return self.W[self.rows // 2 :]


def vertex_label(j: int, s: int) -> str:
    return f"L{j}R{s}"


def butterfly_edges(r: int) -> list[tuple[int, int]]:
    n_rows = 1 << r
    edges = []
    for j in range(r):
        bit = 1 << (r - 1 - j)
        for s in range(n_rows):
            a = j * n_rows + s
            edges.append((a, (j + 1) * n_rows + s))
            edges.append((a, (j + 1) * n_rows + (s ^ bit)))
    return edges


def butterfly_metric(r: int) -> Callable[[int, int], int]:
    """Closed-form BF(r) distance on vertex ids.

    A walk from level j to level k must cross every edge level i whose bit
    ``r-1-i`` differs between the rows; the cheapest such walk sweeps the
    level span [lo, hi] once, entering from whichever end is closer.
    """
    n_rows = 1 << r
    mask = n_rows - 1

    def dist(u: int, v: int) -> int:
        j, k = u >> r, v >> r
        if j > k:
            j, k = k, j
        x = (u ^ v) & mask
        lo, hi = j, k
        if x:
            lo = min(lo, r - x.bit_length())
            hi = max(hi, r + 1 - (x & -x).bit_length())
        return (hi - lo) + min((j - lo) + (hi - k), (hi - j) + (k - lo))

    return dist


def build_butterfly(r: int) -> ButterflyGraph:
    """Construct BF(r) for ``r >= 1``."""
    if r < 1:
        raise ButterflyError(f"butterfly dimension must be >= 1, got {r}")
    n_rows = 1 << r
    labels = [vertex_label(j, s) for j in range(r + 1) for s in range(n_rows)]
    g = build_graph((r + 1) * n_rows, butterfly_edges(r), labels, metric=butterfly_metric(r))
    return ButterflyGraph(r, g)


def color(bf: ButterflyGraph, v: int | Coord) -> Color:
    """Red/blue coloring of the boundary levels.

    Level 0: ``u_i`` is red iff ``i`` is even (odd row). Level r: the first
    half of the rows is red, the second half blue.
    """
    v = bf.vid(v)
    j, s = bf.coord(v)
    if j == 0:
        return Color.RED if (s + 1) % 2 == 0 else Color.BLUE
    if j == bf.r:
        return Color.RED if s < bf.rows // 2 else Color.BLUE
    raise ButterflyError(f"[{j}, {s}] is an interior vertex; colors are undefined there")


def level_row_on_route(u_row: int, w_row: int, j: int, r: int) -> int:
    """Row at level ``j`` on the unique route from ``[0, u_row]`` to ``[r, w_row]``.

    Top ``j`` bits come from ``w_row``, the remaining low bits from ``u_row``.
    """
    low = (1 << (r - j)) - 1
    return (w_row & ~low) | (u_row & low)


def route(bf: ButterflyGraph, u: int | Coord, w: int | Coord) -> Path:
    """The unique geodesic from a level-0 vertex to a level-r vertex."""
    u, w = bf.vid(u), bf.vid(w)
    if bf.level(u) != 0 or bf.level(w) != bf.r:
        raise ButterflyError("route needs a level-0 start and a level-r end")
    ur, wr = bf.row(u), bf.row(w)
    return tuple(bf.id(j, level_row_on_route(ur, wr, j, bf.r)) for j in range(bf.r + 1))


def diametral(
    bf: ButterflyGraph, middle: int | Coord, end1: int | Coord, end2: int | Coord
) -> Path:
    """The diametral from ``end1`` through ``middle`` to ``end2`` (length 2r).

    ``middle`` sits on one boundary level and both ends on the other, with
    the ends in opposite colors.
    """
    m, a, b = bf.vid(middle), bf.vid(end1), bf.vid(end2)
    lm, la, lb = bf.level(m), bf.level(a), bf.level(b)
    if lm == 0 and la == lb == bf.r:
        first = route(bf, m, a)[::-1]
        second = route(bf, m, b)
    elif lm == bf.r and la == lb == 0:
        first = route(bf, a, m)
        second = route(bf, b, m)[::-1]
    else:
        raise ButterflyError(
            "diametral needs the middle on one boundary level and both ends on the other"
        )
    if color(bf, a) == color(bf, b):
        raise ButterflyError(
            f"not a diametral pair: {bf.coord(a)} and {bf.coord(b)} share a color"
        )
    return first + second[1:]


def is_24_edge(g: Graph, u: int, v: int) -> bool:
    return {g.degree(u), g.degree(v)} == {2, 4}


def edges_24(bf: ButterflyGraph) -> list[tuple[int, int]]:
    g = bf.graph
    return [e for e in g.edges() if is_24_edge(g, *e)]


def count_24_edges(bf: ButterflyGraph) -> int:
    return len(edges_24(bf))


def degree_histogram(g: Graph) -> dict[int, int]:
    hist: dict[int, int] = {}
    for v in range(g.n):
        d = g.degree(v)
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))
