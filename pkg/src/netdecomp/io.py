"""Edge-list and JSON file formats.

Edge list::

    # comments start with '#'
    n m
    u v        (m lines)

Labels that are not integers in ``[0, n)`` are remapped to dense ids in order
of first appearance.

Decomposition JSON (``schema = "netdecomp.decomposition/1"``)::

    {"schema", "n", "params": {"variant", "k", "lambda", "c", "seed"},
     "blocks_used", "success",
     "vertices": [{"block", "center", "cluster_id"}, ...],   # null when unassigned
     "stats": {...} | null}

``block`` is the phase index in which the vertex joined.  All JSON is written
with sorted keys and a fixed indent so equal inputs give byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .decomposition import AlgoParams, Cluster, Decomposition, RunStats
from .graph import Graph

DECOMPOSITION_SCHEMA = "netdecomp.decomposition/1"


class FormatError(ValueError):
    """Malformed input file; ``lineno`` is 1-based when known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g))


def parse_edge_list(text: str) -> tuple[Graph, list[str]]:
    """Parse edge-list text; returns the graph and the label of each dense id."""
    header = None
    raw: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        parts = body.split()
        if len(parts) != 2:
            raise FormatError(f"expected two fields, got {len(parts)}", lineno)
        if header is None:
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise FormatError("header must be 'n m' with integer n and m", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise FormatError("n and m must be nonnegative", lineno)
            continue
        raw.append((parts[0], parts[1], lineno))
    if header is None:
        raise FormatError("missing 'n m' header")
    n, m = header
    if len(raw) != m:
        raise FormatError(f"header announces {m} edges, found {len(raw)}")

    def _dense(tok: str) -> int | None:
        try:
            x = int(tok)
        except ValueError:
            return None
        return x if 0 <= x < n else None

    if all(_dense(a) is not None and _dense(b) is not None for a, b, _ in raw):
        labels = [str(i) for i in range(n)]
        ids = {str(i): i for i in range(n)}
    else:
        ids, labels = {}, []
        for a, b, lineno in raw:
            for tok in (a, b):
                if tok not in ids:
                    if len(labels) == n:
                        raise FormatError(f"more than n={n} distinct vertex labels", lineno)
                    ids[tok] = len(labels)
                    labels.append(tok)
        labels.extend(f"_isolated{i}" for i in range(len(labels), n))
    seen = set()
    edges = []
    for a, b, lineno in raw:
        u, v = ids[a], ids[b]
        if u == v:
            raise FormatError(f"self-loop at {a}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {a} {b}", lineno)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges), labels


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())[0]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def decomposition_to_dict(d: Decomposition, params: AlgoParams, stats: RunStats | None = None) -> dict:
    cluster_of = d.cluster_of
    vertices = []
    for v in range(d.n):
        if d.block_of[v] < 0:
            vertices.append({"block": None, "center": None, "cluster_id": None})
        else:
            vertices.append({"block": d.block_of[v], "center": d.center_of[v], "cluster_id": cluster_of[v]})
    return {
        "schema": DECOMPOSITION_SCHEMA,
        "n": d.n,
        "params": params.to_dict(),
        "blocks_used": d.blocks_used,
        "success": d.success,
        "vertices": vertices,
        "stats": stats.to_dict() if stats is not None else None,
    }


def _field(obj: Mapping, key: str, where: str):
    if not isinstance(obj, Mapping) or key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    return obj[key]


def decomposition_from_dict(data: Mapping) -> tuple[Decomposition, AlgoParams, RunStats | None]:
    if _field(data, "schema", "decomposition") != DECOMPOSITION_SCHEMA:
        raise FormatError(f"unsupported schema {data['schema']!r}")
    n = _field(data, "n", "decomposition")
    verts = _field(data, "vertices", "decomposition")
    if not isinstance(n, int) or not isinstance(verts, list) or len(verts) != n:
        raise FormatError(f"'vertices' must list exactly n={n} entries")
    block_of, center_of, groups = [], [], {}
    for v, entry in enumerate(verts):
        where = f"vertices[{v}]"
        b = _field(entry, "block", where)
        c = _field(entry, "center", where)
        cid = _field(entry, "cluster_id", where)
        if b is None:
            block_of.append(-1)
            center_of.append(-1)
            continue
        if not all(isinstance(x, int) for x in (b, c, cid)):
            raise FormatError(f"{where}: block, center and cluster_id must be integers or all null")
        block_of.append(b)
        center_of.append(c)
        groups.setdefault(cid, []).append(v)
    clusters = []
    for cid in sorted(groups):
        members = tuple(groups[cid])
        clusters.append(Cluster(members, block_of[members[0]], center_of[members[0]]))
    d = Decomposition(
        tuple(block_of),
        tuple(center_of),
        tuple(clusters),
        int(_field(data, "blocks_used", "decomposition")),
        bool(_field(data, "success", "decomposition")),
    )
    try:
        params = AlgoParams.from_dict(_field(data, "params", "decomposition"))
        stats = RunStats.from_dict(data["stats"]) if data.get("stats") is not None else None
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad params or stats: {exc}") from None
    return d, params, stats


def save_decomposition(path, d: Decomposition, params: AlgoParams, stats: RunStats | None = None) -> None:
    Path(path).write_text(dumps(decomposition_to_dict(d, params, stats)))


def load_decomposition(path) -> tuple[Decomposition, AlgoParams, RunStats | None]:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno) from None
    return decomposition_from_dict(data)
