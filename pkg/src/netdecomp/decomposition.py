"""Phase schedules for the three regimes and the carving driver.

``basic``
    ``ceil((cn)^(1/k) ln(cn))`` phases, all at ``beta = ln(cn)/k``.
``staged``
    stages ``i = 0..ceil(ln n)``; stage ``i`` runs ``ceil(2 (cn/e^i)^(1/k))``
    phases at ``beta_i = ln(cn/e^i)/k``.
``inverse``
    ``lambda`` phases at ``beta = ln(cn)/k_eff`` with
    ``k_eff = ceil((cn)^(1/lambda) ln(cn))``.

Every real-valued count is rounded up.  ``n`` is clamped to at least 1 inside
the formulas so that the empty graph still has a well-defined schedule.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Mapping

import numpy as np

from .engine import PhaseStats, WORDS_PER_TOKEN, run_phase_distributed
from .graph import Graph, connected_components

VARIANTS = ("basic", "staged", "inverse")
MIN_C = {"basic": 3.0, "staged": 5.0, "inverse": 3.0}


def _ln_cn(c: float, n: int) -> float:
    return math.log(c * max(n, 1))


def max_radius_parameter(c: float, n: int) -> int:
    """Upper bound accepted for ``k`` and ``lambda``: ``max(1, ceil(ln(cn)))``."""
    return max(1, math.ceil(_ln_cn(c, n)))


def default_k(c: float, n: int) -> int:
    return max(1, math.ceil(_ln_cn(c, n)))


@dataclass(frozen=True)
class AlgoParams:
    """Regime selector and parameters.

    ``k`` defaults to ``ceil(ln(cn))`` for ``basic`` and ``staged`` when left
    as ``None``; ``lam`` (the block budget) is required for ``inverse``.
    """

    variant: str = "basic"
    k: int | None = None
    lam: int | None = None
    c: float = 10.0
    seed: int = 0

    def resolved(self, n: int) -> "AlgoParams":
        """Fill in the default ``k`` and check every range for ``n`` vertices."""
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        c = float(self.c)
        if not c > MIN_C[self.variant]:
            raise ValueError(f"c must exceed {MIN_C[self.variant]:g} for {self.variant}, got {c:g}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        upper = max_radius_parameter(c, n)
        if self.variant == "inverse":
            if self.lam is None:
                raise ValueError("inverse variant needs lambda")
            if not 1 <= self.lam <= upper:
                raise ValueError(f"lambda must satisfy 1 <= lambda <= {upper} (ceil ln(cn)), got {self.lam}")
            return AlgoParams(self.variant, None, int(self.lam), c, int(self.seed))
        k = default_k(c, n) if self.k is None else self.k
        if not 1 <= k <= upper:
            raise ValueError(f"k must satisfy 1 <= k <= {upper} (ceil ln(cn)), got {k}")
        return AlgoParams(self.variant, int(k), self.lam, c, int(self.seed))

    def to_dict(self) -> dict:
        return {"variant": self.variant, "k": self.k, "lambda": self.lam, "c": self.c, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: Mapping) -> "AlgoParams":
        return cls(d["variant"], d.get("k"), d.get("lambda"), float(d["c"]), int(d["seed"]))


@dataclass(frozen=True)
class PhaseSpec:
    index: int
    stage: int
    beta: float
    round_hint: int


@dataclass(frozen=True)
class Schedule:
    phases: tuple[PhaseSpec, ...]
    k_eff: int
    stage_count: int

    @property
    def max_phases(self) -> int:
        return len(self.phases)


def build_schedule(params: AlgoParams, n: int) -> Schedule:
    params = params.resolved(n)
    c = params.c
    L = _ln_cn(c, n)
    if params.variant == "basic":
        k = params.k
        total = math.ceil((c * max(n, 1)) ** (1 / k) * L)
        beta = L / k
        return Schedule(tuple(PhaseSpec(t, 0, beta, k) for t in range(total)), k, 1)
    if params.variant == "staged":
        k = params.k
        stages = math.ceil(math.log(max(n, 1))) + 1
        phases = []
        for i in range(stages):
            shrunk = c * max(n, 1) / math.e**i
            s_i = math.ceil(2 * shrunk ** (1 / k))
            beta_i = math.log(shrunk) / k
            start = len(phases)
            phases.extend(PhaseSpec(start + j, i, beta_i, k) for j in range(s_i))
        return Schedule(tuple(phases), k, stages)
    lam = params.lam
    k_eff = math.ceil((c * max(n, 1)) ** (1 / lam) * L)
    beta = L / k_eff
    return Schedule(tuple(PhaseSpec(t, 0, beta, k_eff) for t in range(lam)), k_eff, 1)


def block_bound(params: AlgoParams, n: int) -> float:
    """Colour budget the regime's guarantee promises."""
    params = params.resolved(n)
    cn = params.c * max(n, 1)
    if params.variant == "basic":
        return math.ceil(cn ** (1 / params.k) * math.log(cn))
    if params.variant == "staged":
        return 4 * params.k * cn ** (1 / params.k)
    return params.lam


def diameter_bound(params: AlgoParams, n: int) -> int:
    """``2 k_eff - 2``, the strong diameter promised for runs without radius overflow."""
    return 2 * build_schedule(params, n).k_eff - 2


@dataclass(frozen=True)
class Cluster:
    members: tuple[int, ...]
    block_index: int
    center: int


@dataclass
class Decomposition:
    """Per-vertex block and centre (``-1`` when unassigned) plus the clusters.

    ``block_of`` holds the phase index in which a vertex joined.  Clusters are
    ordered by block then smallest member; ``cluster_of`` indexes into them.
    """

    block_of: tuple[int, ...]
    center_of: tuple[int, ...]
    clusters: tuple[Cluster, ...]
    blocks_used: int
    success: bool

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def cluster_of(self) -> tuple[int, ...]:
        out = [-1] * self.n
        for i, cl in enumerate(self.clusters):
            for v in cl.members:
                out[v] = i
        return tuple(out)

    def compact_colors(self) -> tuple[int, ...]:
        """Block ids renumbered ``0..blocks_used-1`` in phase order."""
        ids = sorted({b for b in self.block_of if b >= 0})
        remap = {b: i for i, b in enumerate(ids)}
        return tuple(remap.get(b, -1) for b in self.block_of)


def assemble(g: Graph, block_of, center_of) -> Decomposition:
    """Derive clusters, colour count and success flag from per-vertex labels."""
    block_of = tuple(int(b) for b in block_of)
    center_of = tuple(int(x) for x in center_of)
    by_block: dict[int, list[int]] = {}
    for v, b in enumerate(block_of):
        if b >= 0:
            by_block.setdefault(b, []).append(v)
    clusters = []
    for b in sorted(by_block):
        for comp in connected_components(g, by_block[b]):
            clusters.append(Cluster(tuple(comp), b, center_of[comp[0]]))
    success = all(b >= 0 for b in block_of)
    return Decomposition(block_of, center_of, tuple(clusters), len(by_block), success)


def unassigned(d: Decomposition) -> list[int]:
    return [v for v, b in enumerate(d.block_of) if b < 0]


@dataclass
class RunStats:
    phases_executed: int
    total_rounds: int
    active_rounds: int
    blocks_used: int
    ev_count: int
    max_tokens_per_edge: int
    survivors: list[int]
    success: bool
    phase_stats: list[PhaseStats] = field(default_factory=list)

    @property
    def max_words_per_edge(self) -> int:
        return WORDS_PER_TOKEN * self.max_tokens_per_edge

    def to_dict(self) -> dict:
        d = asdict(self)
        d["max_words_per_edge"] = self.max_words_per_edge
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "RunStats":
        d = dict(d)
        d.pop("max_words_per_edge", None)
        d["phase_stats"] = [PhaseStats.from_dict(p) for p in d.get("phase_stats", [])]
        return cls(**d)


def decompose(g: Graph, params: AlgoParams, schedule: Schedule | None = None) -> tuple[Decomposition, RunStats]:
    """Carve blocks phase by phase until the graph is exhausted or the schedule ends.

    A supplied ``schedule`` overrides the regime's own (useful to study
    truncated budgets).  Radius overflow (``r_v >= k_eff + 1``) is counted in
    the statistics, never prevented.
    """
    params = params.resolved(g.n)
    if schedule is None:
        schedule = build_schedule(params, g.n)
    alive = np.ones(g.n, dtype=bool)
    block_of = np.full(g.n, -1, dtype=np.int64)
    center_of = np.full(g.n, -1, dtype=np.int64)
    survivors = [g.n]
    phase_stats = []
    for spec in schedule.phases:
        if not alive.any():
            break
        res = run_phase_distributed(g, alive, spec.beta, params.seed, spec.index, k=schedule.k_eff)
        if res.block:
            ids = np.asarray(res.block)
            block_of[ids] = spec.index
            center_of[ids] = [res.centers[y] for y in res.block]
            alive[ids] = False
        survivors.append(int(alive.sum()))
        phase_stats.append(res.stats)
    d = assemble(g, block_of, center_of)
    stats = RunStats(
        phases_executed=len(phase_stats),
        total_rounds=sum(p.rounds for p in phase_stats),
        active_rounds=sum(p.active_rounds for p in phase_stats),
        blocks_used=d.blocks_used,
        ev_count=sum(p.ev_count for p in phase_stats),
        max_tokens_per_edge=max((p.max_tokens_per_edge for p in phase_stats), default=0),
        survivors=survivors,
        success=d.success,
        phase_stats=phase_stats,
    )
    return d, stats
