"""Synchronous round engine for one carving phase.

Each alive vertex ``v`` holds a radius ``r_v`` and starts with its own token
``(origin=v, hops=0)``.  In every round each vertex sends the (at most) two
tokens with the largest shifted value ``m = r_origin - hops`` to all alive
neighbours, with ``hops`` incremented; a token is only sent while
``hops <= floor(r_origin)``.  Receivers keep, per origin, the token with the
fewest hops and then retain their top two by ``m`` (ties broken by lower
origin id).  After ``max floor(r_v)`` rounds a vertex joins the block iff
``m1 - m2 > 1``, where ``m2 = 0`` when it holds a single token.

The round loop is vectorised over directed edges.  Once a round leaves every
state unchanged the remaining rounds would resend the same messages, so the
loop stops there; ``rounds`` still reports the full schedule length.

:func:`run_phase_reference` applies the same join rule with full
information (truncated BFS from every origin) and is used as an oracle.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Mapping

import numpy as np

from .graph import Graph, as_mask, bfs_distances
from .randomness import phase_radii

WORDS_PER_TOKEN = 3
MAX_TOKENS_PER_MESSAGE = 2


@dataclass(frozen=True)
class Token:
    origin: int
    radius_value: float
    hops: int

    @property
    def shifted(self) -> float:
        return self.radius_value - self.hops


@dataclass
class PhaseStats:
    phase: int
    beta: float | None
    alive: int
    joined: int
    rounds: int
    active_rounds: int
    max_tokens_per_edge: int
    ev_count: int

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping) -> "PhaseStats":
        return cls(**d)


@dataclass
class PhaseResult:
    block: list[int]
    centers: dict[int, int]
    center_hops: dict[int, int]
    stats: PhaseStats
    radii: np.ndarray = field(repr=False)
    # final top-two state, kept for inspection; -1 marks an empty slot
    state_origin: np.ndarray = field(repr=False)
    state_hops: np.ndarray = field(repr=False)

    def tokens_at(self, y: int) -> list[Token]:
        out = []
        for slot in range(2):
            o = int(self.state_origin[y, slot])
            if o >= 0:
                out.append(Token(o, float(self.radii[o]), int(self.state_hops[y, slot])))
        return out


def _radii_array(g: Graph, mask: np.ndarray, radii) -> np.ndarray:
    r = np.full(g.n, np.nan)
    if isinstance(radii, Mapping):
        for v, x in radii.items():
            r[int(v)] = float(x)
    else:
        arr = np.asarray(radii, dtype=np.float64)
        if arr.shape != (g.n,):
            raise ValueError(f"radii array has shape {arr.shape}, expected ({g.n},)")
        r[mask] = arr[mask]
    missing = mask & np.isnan(r)
    if missing.any():
        raise ValueError(f"no radius for alive vertex {int(np.flatnonzero(missing)[0])}")
    if (r[mask] < 0).any():
        raise ValueError("radii must be nonnegative")
    r[~mask] = np.nan
    return r


def _first_in_group(*keys: np.ndarray) -> np.ndarray:
    """Boolean marking the first element of each run of equal key tuples."""
    size = keys[0].size
    first = np.ones(size, dtype=bool)
    if size > 1:
        change = np.zeros(size - 1, dtype=bool)
        for key in keys:
            change |= key[1:] != key[:-1]
        first[1:] = change
    return first


def _merge_top_two(recv, orig, hops, r, n):
    """Dedup per (receiver, origin) by min hops, then keep top two by shifted value."""
    order = np.lexsort((hops, orig, recv))
    recv, orig, hops = recv[order], orig[order], hops[order]
    keep = _first_in_group(recv, orig)
    recv, orig, hops = recv[keep], orig[keep], hops[keep]

    m = r[orig] - hops
    order = np.lexsort((orig, -m, recv))
    recv, orig, hops = recv[order], orig[order], hops[order]
    starts = _first_in_group(recv)
    idx = np.arange(recv.size)
    rank = idx - np.maximum.accumulate(np.where(starts, idx, 0))
    sel = rank < 2

    new_o = np.full((n, 2), -1, dtype=np.int64)
    new_h = np.zeros((n, 2), dtype=np.int64)
    new_o[recv[sel], rank[sel]] = orig[sel]
    new_h[recv[sel], rank[sel]] = hops[sel]
    return new_o, new_h


def run_phase_with_radii(
    g: Graph,
    alive,
    radii,
    *,
    k: int | None = None,
    phase: int = 0,
    beta: float | None = None,
) -> PhaseResult:
    """Run one phase of top-two token forwarding with the given radii.

    ``radii`` is a mapping ``vertex -> r_v`` or a length-``n`` array (entries
    of dead vertices are ignored).  ``k`` is only used to count vertices with
    ``r_v >= k + 1``; it never truncates a broadcast.
    """
    mask = as_mask(g, alive)
    n = g.n
    r = _radii_array(g, mask, radii)
    alive_ids = np.flatnonzero(mask)
    reach = np.where(mask, np.floor(np.where(mask, r, 0.0)), -1.0).astype(np.int64)

    state_o = np.full((n, 2), -1, dtype=np.int64)
    state_h = np.zeros((n, 2), dtype=np.int64)
    state_o[alive_ids, 0] = alive_ids

    src, dst = g.directed_edges
    on = mask[src] & mask[dst]
    src, dst = src[on], dst[on]

    r_max = int(reach[alive_ids].max()) if alive_ids.size else 0
    max_tokens = 0
    active_rounds = 0
    for rnd in range(1, r_max + 1):
        send_o = state_o[src]
        send_h = state_h[src] + 1
        valid = (send_o >= 0) & (send_h <= reach[np.maximum(send_o, 0)])
        if src.size:
            per_edge = valid.sum(axis=1)
            max_tokens = max(max_tokens, int(per_edge.max()))
        if not valid.any():
            break
        have = state_o[alive_ids] >= 0
        hold_recv = np.repeat(alive_ids[:, None], 2, axis=1)[have]
        recv = np.concatenate([hold_recv, np.repeat(dst[:, None], 2, axis=1)[valid]])
        orig = np.concatenate([state_o[alive_ids][have], send_o[valid]])
        hops = np.concatenate([state_h[alive_ids][have], send_h[valid]])
        new_o, new_h = _merge_top_two(recv, orig, hops, r, n)
        if np.array_equal(new_o, state_o) and np.array_equal(new_h, state_h):
            break
        state_o, state_h = new_o, new_h
        active_rounds = rnd
    assert max_tokens <= MAX_TOKENS_PER_MESSAGE

    joined_mask = np.zeros(n, dtype=bool)
    if alive_ids.size:
        o1, h1 = state_o[alive_ids, 0], state_h[alive_ids, 0]
        o2, h2 = state_o[alive_ids, 1], state_h[alive_ids, 1]
        m1 = r[o1] - h1
        m2 = np.where(o2 >= 0, r[np.maximum(o2, 0)] - h2, 0.0)
        joined_mask[alive_ids] = (m1 - m2) > 1
    block = np.flatnonzero(joined_mask).tolist()
    centers = {y: int(state_o[y, 0]) for y in block}
    center_hops = {y: int(state_h[y, 0]) for y in block}

    ev = int(np.count_nonzero(r[alive_ids] >= k + 1)) if k is not None else 0
    stats = PhaseStats(
        phase=phase,
        beta=beta,
        alive=int(alive_ids.size),
        joined=len(block),
        rounds=r_max,
        active_rounds=active_rounds,
        max_tokens_per_edge=max_tokens,
        ev_count=ev,
    )
    return PhaseResult(block, centers, center_hops, stats, r, state_o, state_h)


def run_phase_distributed(
    g: Graph,
    alive,
    beta: float,
    master_seed: int,
    phase: int,
    k: int | None = None,
) -> PhaseResult:
    """Sample every alive vertex's radius from its derived stream and run the phase."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    mask = as_mask(g, alive)
    ids = np.flatnonzero(mask)
    r = np.full(g.n, np.nan)
    r[ids] = phase_radii(master_seed, phase, ids, beta)
    return run_phase_with_radii(g, mask, r, k=k, phase=phase, beta=beta)


def run_phase_reference(g: Graph, alive, radii) -> tuple[list[int], dict[int, int]]:
    """Full-information evaluation of the join rule.

    Every alive ``y`` learns ``r_v - d(y, v)`` for every origin with
    ``d(y, v) <= floor(r_v)`` (distances in the alive subgraph), orders them
    by value (lower origin first on ties) and joins iff the top value exceeds
    the runner-up, or 0 if there is none, by more than 1.
    """
    mask = as_mask(g, alive)
    if isinstance(radii, Mapping):
        rad = {int(v): float(x) for v, x in radii.items()}
    else:
        arr = np.asarray(radii, dtype=np.float64)
        rad = {int(v): float(arr[v]) for v in np.flatnonzero(mask)}
    heard: dict[int, list[tuple[float, int]]] = {}
    for y in np.flatnonzero(mask).tolist():
        heard[y] = [(rad[y], y)]
    for v in heard:
        reach = math.floor(rad[v])
        if reach < 1:
            continue
        for y, d in bfs_distances(g, mask, v, limit=reach).items():
            if y != v:
                heard[y].append((rad[v] - d, v))
    block, centers = [], {}
    for y, values in heard.items():
        values.sort(key=lambda t: (-t[0], t[1]))
        m1, center = values[0]
        m2 = values[1][0] if len(values) > 1 else 0.0
        if m1 - m2 > 1:
            block.append(y)
            centers[y] = center
    return block, centers


def congestion_report(stats) -> int:
    """Maximum words sent over one edge direction in one round.

    Accepts a :class:`PhaseStats`, a list of them, or anything with a
    ``phase_stats`` attribute (such as a run's statistics).
    """
    if isinstance(stats, PhaseStats):
        return WORDS_PER_TOKEN * stats.max_tokens_per_edge
    phases = getattr(stats, "phase_stats", stats)
    return max((WORDS_PER_TOKEN * p.max_tokens_per_edge for p in phases), default=0)
