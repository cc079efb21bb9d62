"""Readers and writers for topologies, covers, partitions and solver files.

All writers are byte-stable: edges are emitted in sorted id order and JSON
uses a fixed key order with one record per line where that helps diffs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Sequence

from .butterfly import ButterflyGraph, build_butterfly, vertex_label
from .cover import Cover
from .edge_partition import CyclePartition
from .graph import Graph, GraphError, build_graph
from .solve import CoverInstance, SolveResult, complete_bipartite, make_instance


class FormatError(ValueError):
    """Malformed input file."""


@dataclass
class LoadedGraph:
    graph: Graph
    r: int | None = None
    fmt: str = "json"

    @property
    def butterfly(self) -> ButterflyGraph | None:
        return ButterflyGraph(self.r, self.graph) if self.r is not None else None


def _dump(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


# --- topology -------------------------------------------------------------


def topology_json(g: Graph, r: int | None = None) -> str:
    if r is not None:
        rows = 1 << r
        vertices: list = [list(divmod(v, rows)) for v in range(g.n)]
    else:
        vertices = [g.label(v) for v in range(g.n)]
    doc = {"r": r, "n": g.n, "vertices": vertices, "edges": [list(e) for e in g.edges()]}
    return _dump(doc)


def topology_dot(g: Graph, r: int | None = None) -> str:
    name = f"BF{r}" if r is not None else "G"
    lines = [f"graph {name} {{", "  rankdir=TB;", "  node [shape=circle];"]
    if r is not None:
        rows = 1 << r
        for j in range(r + 1):
            names = " ".join(f"{vertex_label(j, s)};" for s in range(rows))
            lines.append(f"  {{ rank=same; {names} }}")
    else:
        for v in range(g.n):
            lines.append(f'  n{v} [label="{g.label(v)}"];')
    node = (lambda v: g.label(v)) if r is not None else (lambda v: f"n{v}")
    for u, v in g.edges():
        lines.append(f"  {node(u)} -- {node(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def topology_edgelist(g: Graph, r: int | None = None) -> str:
    if r is not None:
        head = [
            f"# butterfly r={r} n={g.n} m={g.edge_count()}",
            "# vertex id = level * 2^r + row; label L<level>R<row>",
        ]
    else:
        head = [f"# graph n={g.n} m={g.edge_count()}"]
    return "\n".join(head + [f"{u} {v}" for u, v in g.edges()]) + "\n"


WRITERS = {"json": topology_json, "dot": topology_dot, "edgelist": topology_edgelist}


def write_topology(g: Graph, fmt: str, r: int | None = None) -> str:
    try:
        return WRITERS[fmt](g, r)
    except KeyError:
        raise FormatError(f"unknown topology format {fmt!r}") from None


def _butterfly_or_generic(n: int, edges: list, r: int | None, labels=None) -> Graph:
    if r is not None:
        bf = build_butterfly(r)
        g = build_graph(n, edges)
        if g.adjacency != bf.graph.adjacency:
            raise FormatError(f"edges do not form BF({r})")
        return bf.graph
    return build_graph(n, edges, labels)


def parse_topology_json(text: str) -> LoadedGraph:
    try:
        doc = json.loads(text)
        r = doc.get("r")
        n = int(doc["n"])
        edges = [(int(a), int(b)) for a, b in doc["edges"]]
        verts = doc.get("vertices")
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad topology JSON: {exc}") from None
    labels = None
    if r is None and verts is not None:
        labels = [str(x) for x in verts]
    try:
        return LoadedGraph(_butterfly_or_generic(n, edges, r, labels), r, "json")
    except GraphError as exc:
        raise FormatError(str(exc)) from None


_HEADER = re.compile(r"#\s*butterfly\s+r=(\d+)\s+n=(\d+)")
_GRAPH_HEADER = re.compile(r"#\s*graph\s+n=(\d+)")


def parse_edgelist(text: str) -> LoadedGraph:
    r = n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            m = _HEADER.match(s)
            if m:
                r, n = int(m.group(1)), int(m.group(2))
            m = _GRAPH_HEADER.match(s)
            if m:
                n = int(m.group(1))
            continue
        parts = s.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {s!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer id in {s!r}") from None
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return LoadedGraph(_butterfly_or_generic(n, edges, r), r, "edgelist")
    except GraphError as exc:
        raise FormatError(str(exc)) from None


_DOT_NAME = re.compile(r"graph\s+BF(\d+)\s*\{")
_DOT_EDGE = re.compile(r"^\s*(\w+)\s*--\s*(\w+)\s*;")
_DOT_LABELED = re.compile(r'^\s*n(\d+)\s*\[label="([^"]*)"\]')
_LR = re.compile(r"L(\d+)R(\d+)$")


def parse_dot(text: str) -> LoadedGraph:
    """Read back the DOT dialect produced by ``topology_dot``."""
    m = _DOT_NAME.search(text)
    r = int(m.group(1)) if m else None
    labels: dict[int, str] = {}
    raw_edges = []
    for line in text.splitlines():
        lm = _DOT_LABELED.match(line)
        if lm:
            labels[int(lm.group(1))] = lm.group(2)
        em = _DOT_EDGE.match(line)
        if em:
            raw_edges.append((em.group(1), em.group(2)))
        elif "--" in line:
            raise FormatError(f"bad DOT edge line {line.strip()!r}")
    if r is not None:
        rows = 1 << r

        def to_id(name: str) -> int:
            mm = _LR.match(name)
            if not mm:
                raise FormatError(f"bad butterfly node name {name!r}")
            return int(mm.group(1)) * rows + int(mm.group(2))

        n = (r + 1) * rows
        label_list = None
    else:

        def to_id(name: str) -> int:
            if not name.startswith("n") or not name[1:].isdigit():
                raise FormatError(f"bad node name {name!r}")
            return int(name[1:])

        n = len(labels)
        if n == 0:
            raise FormatError("DOT graph declares no vertices")
        label_list = [labels.get(v, str(v)) for v in range(n)]
    edges = [(to_id(a), to_id(b)) for a, b in raw_edges]
    try:
        return LoadedGraph(_butterfly_or_generic(n, edges, r, label_list), r, "dot")
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def sniff_format(text: str) -> str:
    s = text.lstrip()
    if s.startswith("{"):
        return "json"
    if s.startswith("graph"):
        return "dot"
    return "edgelist"


def read_topology(text: str, fmt: str | None = None) -> LoadedGraph:
    fmt = fmt or sniff_format(text)
    readers = {"json": parse_topology_json, "dot": parse_dot, "edgelist": parse_edgelist}
    if fmt not in readers:
        raise FormatError(f"unknown topology format {fmt!r}")
    return readers[fmt](text)


# --- covers and partitions -----------------------------------------------


def _path_out(path: Sequence[int], r: int | None) -> list:
    if r is None:
        return list(path)
    rows = 1 << r
    return [list(divmod(v, rows)) for v in path]


def _path_in(raw: Sequence, r: int | None) -> tuple[int, ...]:
    out = []
    for x in raw:
        if isinstance(x, list):
            if r is None or len(x) != 2:
                raise FormatError(f"coordinate {x} needs a butterfly dimension")
            j, s = int(x[0]), int(x[1])
            if not (0 <= j <= r and 0 <= s < 1 << r):
                raise FormatError(f"[{j}, {s}] is not a vertex of BF({r})")
            out.append(j * (1 << r) + s)
        elif isinstance(x, int):
            out.append(x)
        else:
            raise FormatError(f"bad path element {x!r}")
    return tuple(out)


def cover_to_dict(cover: Cover) -> dict:
    return {
        "r": cover.r,
        "mode": cover.mode,
        "size": len(cover),
        "paths": [_path_out(p, cover.r) for p in cover.paths],
    }


def cover_json(cover: Cover) -> str:
    d = cover_to_dict(cover)
    body = ",\n".join(json.dumps(p, separators=(",", ":")) for p in d["paths"])
    head = json.dumps({k: d[k] for k in ("r", "mode", "size")}, separators=(",", ":"))
    return head[:-1] + ',"paths":[\n' + body + "\n]}\n"


def parse_cover(text: str, r: int | None = None) -> Cover:
    try:
        doc = json.loads(text)
        paths_raw = doc["paths"]
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad cover JSON: {exc}") from None
    rr = doc.get("r", r)
    if r is not None and rr is not None and rr != r:
        raise FormatError(f"cover is for r={rr} but the graph has r={r}")
    mode = doc.get("mode", "vertex")
    if mode not in ("vertex", "edge"):
        raise FormatError(f"unknown cover mode {mode!r}")
    paths = [_path_in(p, rr) for p in paths_raw]
    if "size" in doc and doc["size"] != len(paths):
        raise FormatError(f"cover declares size {doc['size']} but lists {len(paths)} paths")
    return Cover(paths=paths, mode=mode, r=rr)


def partition_json(part: CyclePartition, diametrals: Cover | None) -> str:
    r = part.r
    doc = {
        "r": r,
        "cycles": [_path_out(c.vertices, r) for c in part.cycles],
        "diametrals": [_path_out(p, r) for p in diametrals.paths] if diametrals else [],
    }
    return _dump(doc)


# --- solver instances ------------------------------------------------------


def parse_instance(text: str, guard: int | None = None) -> tuple[CoverInstance, int | None]:
    """Instance JSON: ``{"graph": ..., "mode": ..., "candidates": ..., "targets": ...}``.

    ``graph`` is ``{"butterfly": r}``, ``{"complete_bipartite": r}``, or an
    inline topology ``{"n": n, "edges": [[u, v], ...]}``.
    """
    try:
        doc = json.loads(text)
        gspec = doc["graph"]
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad instance JSON: {exc}") from None
    r = None
    if "butterfly" in gspec:
        r = int(gspec["butterfly"])
        g = build_butterfly(r).graph
    elif "complete_bipartite" in gspec:
        g = complete_bipartite(int(gspec["complete_bipartite"]))
    else:
        g = parse_topology_json(json.dumps({"r": gspec.get("r"), **gspec})).graph
        r = gspec.get("r")
    mode = doc.get("mode", "vertex")
    cands = doc.get("candidates")
    if cands is not None:
        cands = [_path_in(p, r) for p in cands]
    targets = doc.get("targets")
    if targets is not None and mode == "vertex":
        targets = [_path_in([t], r)[0] for t in targets]
    elif targets is not None:
        targets = [_path_in(e, r) for e in targets]
    try:
        return make_instance(g, mode, cands, targets, guard), r
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def result_json(res: SolveResult, r: int | None = None) -> str:
    cover = None
    if res.cover is not None:
        cover = cover_to_dict(Cover(res.cover.paths, res.cover.mode, r))
    doc = {
        "status": res.status.value,
        "size": res.size,
        "lower_bound": res.lower_bound,
        "upper_bound": res.upper_bound,
        "nodes_explored": res.nodes_explored,
        "cover": cover,
    }
    return _dump(doc)
