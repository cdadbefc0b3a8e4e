"""Undirected simple graphs, generators and induced-subgraph traversal.

Vertices are dense integer ids ``0..n-1``.  Vertex sets are accepted either
as an iterable of ids or as a boolean mask of length ``n``; traversal is
always restricted to the induced subgraph of such a set, without copying.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

INFINITE_DIAMETER = math.inf

GENERATOR_KINDS = ("path", "cycle", "grid", "complete", "hypercube", "gnp", "random-tree", "star", "empty")


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable adjacency-list graph.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.  Use
    :meth:`from_edges` to build one; the constructor trusts its input.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` of the symmetric adjacency matrix."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adjacency])
        indices = np.fromiter(
            (w for a in self.adjacency for w in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    @cached_property
    def directed_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """``(src, dst)`` arrays with one entry per edge direction."""
        indptr, indices = self.csr
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(indptr))
        return src, indices

    def check_invariants(self) -> None:
        """Raise ``ValueError`` if symmetry, loop-freeness or range fails."""
        for u, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"duplicate neighbour entries at {u}")
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbour {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if u not in self.adjacency[v]:
                    raise ValueError(f"asymmetric adjacency: {u}->{v}")

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.adjacency))


def as_mask(g: Graph, s) -> np.ndarray:
    """Normalise a vertex set (ids or boolean mask) to a boolean mask."""
    if isinstance(s, np.ndarray) and s.dtype == bool:
        if s.shape != (g.n,):
            raise ValueError(f"mask has shape {s.shape}, expected ({g.n},)")
        return s
    mask = np.zeros(g.n, dtype=bool)
    ids = np.fromiter((int(v) for v in s), dtype=np.int64)
    if ids.size:
        if ids.min() < 0 or ids.max() >= g.n:
            raise ValueError(f"vertex ids must lie in [0, {g.n})")
        mask[ids] = True
    return mask


def as_ids(s) -> list[int]:
    """Sorted id list of a vertex set given as ids or a boolean mask."""
    if isinstance(s, np.ndarray) and s.dtype == bool:
        return np.flatnonzero(s).tolist()
    return sorted({int(v) for v in s})


def bfs_distances(g: Graph, alive, source: int, limit: int | None = None) -> dict[int, int]:
    """Hop distances from ``source`` inside the subgraph induced by ``alive``.

    Unreachable vertices are absent.  With ``limit`` the search stops at that
    depth, so only vertices within ``limit`` hops are returned.
    """
    mask = as_mask(g, alive)
    if not (0 <= source < g.n) or not mask[source]:
        raise ValueError(f"source {source} is not in the alive set")
    dist = {source: 0}
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in adj[u]:
            if mask[w] and w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def connected_components(g: Graph, s) -> list[list[int]]:
    """Components of the subgraph induced by ``s``, ordered by smallest id."""
    mask = as_mask(g, s)
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for v in np.flatnonzero(mask):
        if seen[v]:
            continue
        comp = bfs_distances(g, mask, int(v))
        ids = sorted(comp)
        seen[ids] = True
        out.append(ids)
    return out


def _induced_csr(g: Graph, members: list[int]) -> csr_matrix:
    pos = {v: i for i, v in enumerate(members)}
    rows, cols = [], []
    for v in members:
        for w in g.adjacency[v]:
            j = pos.get(w)
            if j is not None:
                rows.append(pos[v])
                cols.append(j)
    k = len(members)
    return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(k, k))


def strong_diameter(g: Graph, members) -> float:
    """Largest distance measured inside the induced subgraph of ``members``.

    Returns ``INFINITE_DIAMETER`` when the members are disconnected and 0 for
    a singleton or an empty set.
    """
    ids = as_ids(members)
    if len(ids) <= 1:
        return 0
    dist = shortest_path(_induced_csr(g, ids), method="D", unweighted=True, directed=False)
    top = dist.max()
    return INFINITE_DIAMETER if np.isinf(top) else int(top)


def weak_diameter(g: Graph, members) -> float:
    """Largest distance between members, measured in the whole graph."""
    ids = as_ids(members)
    if len(ids) <= 1:
        return 0
    full = _induced_csr(g, list(range(g.n)))
    dist = shortest_path(full, method="D", unweighted=True, directed=False, indices=ids)[:, ids]
    top = dist.max()
    return INFINITE_DIAMETER if np.isinf(top) else int(top)


def _from_networkx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def generate(kind: str, n: int = 0, params: Mapping | None = None, seed: int = 0) -> Graph:
    """Build a deterministic graph of the given family.

    ``params`` holds family options: ``p`` for ``gnp``, ``rows``/``cols`` for
    ``grid`` (``n`` is then ignored; a bare ``n`` must be a perfect square),
    ``dim`` for ``hypercube`` (alternatively ``n`` a power of two).
    ``seed`` only matters for ``gnp`` and ``random-tree``.
    """
    params = dict(params or {})
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {GENERATOR_KINDS}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if kind == "empty":
        return Graph.from_edges(n, [])
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        if n < 3:
            raise ValueError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "star":
        return Graph.from_edges(n, [(0, i) for i in range(1, n)])
    if kind == "complete":
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "grid":
        rows, cols = params.get("rows"), params.get("cols")
        if rows is None or cols is None:
            side = math.isqrt(n)
            if side * side != n:
                raise ValueError(f"grid needs rows/cols or a square n, got n={n}")
            rows = cols = side
        rows, cols = int(rows), int(cols)
        if rows < 0 or cols < 0:
            raise ValueError("grid dimensions must be nonnegative")
        edges = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    edges.append((v, v + 1))
                if r + 1 < rows:
                    edges.append((v, v + cols))
        return Graph.from_edges(rows * cols, edges)
    if kind == "hypercube":
        dim = params.get("dim")
        if dim is None:
            if n < 1 or n & (n - 1):
                raise ValueError(f"hypercube needs dim or n a power of two, got n={n}")
            dim = n.bit_length() - 1
        dim = int(dim)
        size = 1 << dim
        return Graph.from_edges(size, [(v, v ^ (1 << b)) for v in range(size) for b in range(dim) if v < v ^ (1 << b)])
    if kind == "gnp":
        if "p" not in params:
            raise ValueError("gnp needs an edge probability p")
        p = float(params["p"])
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"gnp edge probability must lie in [0, 1], got {p}")
        return _from_networkx(nx.gnp_random_graph(n, p, seed=seed))
    # random-tree
    if n <= 1:
        return Graph.from_edges(n, [])
    return _from_networkx(nx.random_labeled_tree(n, seed=seed))
