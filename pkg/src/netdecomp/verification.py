"""Exact validators and Monte Carlo checks of the probabilistic guarantees.

Monte Carlo checks compare an empirical frequency with a proven upper bound
using a one-sided normal-approximation slack of three standard errors,
``sigma = sqrt(p (1 - p) / trials)`` with ``p`` the empirical frequency.
Trial ``i`` of a run-level check uses master seed ``params.seed + i``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Iterator

import numpy as np

from .decomposition import (
    AlgoParams,
    Decomposition,
    RunStats,
    block_bound,
    build_schedule,
    decompose,
    diameter_bound,
)
from .engine import run_phase_reference, run_phase_with_radii
from .graph import Graph, as_mask, strong_diameter
from .randomness import phase_radii

SIGMAS = 3.0


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float | int | None = None
    bound: float | int | None = None
    witness: object = None
    exact: bool = True
    note: str = ""


@dataclass
class ValidationReport:
    checks: list[CheckResult]

    @property
    def exact_ok(self) -> bool:
        """True iff every exact structural check passed."""
        return all(c.passed for c in self.checks if c.exact)

    @property
    def all_ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "exact_ok": self.exact_ok,
            "all_ok": self.all_ok,
            "checks": [asdict(c) for c in self.checks],
        }


def _partition_check(g: Graph, d: Decomposition) -> CheckResult:
    if d.n != g.n:
        return CheckResult("partition", False, witness={"reason": f"decomposition covers {d.n} vertices, graph has {g.n}"})
    for v in range(g.n):
        if d.block_of[v] < 0:
            return CheckResult("partition", False, witness={"reason": "unassigned vertex", "vertex": v})
    owner = [-1] * g.n
    for i, cl in enumerate(d.clusters):
        for v in cl.members:
            if not 0 <= v < g.n:
                return CheckResult("partition", False, witness={"reason": "member out of range", "cluster": i, "vertex": v})
            if owner[v] >= 0:
                return CheckResult("partition", False, witness={"reason": "vertex in two clusters", "vertex": v, "clusters": [owner[v], i]})
            owner[v] = i
            if d.block_of[v] != cl.block_index:
                return CheckResult(
                    "partition", False,
                    witness={"reason": "vertex block differs from its cluster's block", "vertex": v, "cluster": i,
                             "vertex_block": d.block_of[v], "cluster_block": cl.block_index},
                )
    for v in range(g.n):
        if owner[v] < 0:
            return CheckResult("partition", False, witness={"reason": "vertex in no cluster", "vertex": v})
    return CheckResult("partition", True)


def _connectivity_check(g: Graph, d: Decomposition, diameters: list[float]) -> CheckResult:
    for i, (cl, diam) in enumerate(zip(d.clusters, diameters)):
        if math.isinf(diam):
            return CheckResult("cluster-connectivity", False, witness={"reason": "disconnected cluster", "cluster": i})
        if cl.center not in cl.members:
            return CheckResult("cluster-connectivity", False, witness={"reason": "center outside cluster", "cluster": i, "center": cl.center})
        for v in cl.members:
            if 0 <= v < d.n and d.center_of[v] != cl.center:
                return CheckResult(
                    "cluster-connectivity", False,
                    witness={"reason": "members disagree on center", "cluster": i, "vertex": v,
                             "vertex_center": d.center_of[v], "cluster_center": cl.center},
                )
    return CheckResult("cluster-connectivity", True)


def _coloring_check(g: Graph, d: Decomposition) -> CheckResult:
    owner = [-1] * g.n
    for i, cl in enumerate(d.clusters):
        for v in cl.members:
            if 0 <= v < g.n:
                owner[v] = i
    for u, v in g.edges():
        bu, bv = d.block_of[u], d.block_of[v]
        if bu >= 0 and bu == bv and owner[u] != owner[v]:
            return CheckResult("proper-coloring", False, witness={"edge": [u, v], "block": bu, "clusters": [owner[u], owner[v]]})
    return CheckResult("proper-coloring", True)


def validate(g: Graph, d: Decomposition, params: AlgoParams, stats: RunStats | None = None) -> ValidationReport:
    """Check a decomposition exactly against every structural guarantee.

    The diameter bound only holds when no vertex overflowed its radius
    budget; with a positive overflow count in ``stats`` a violation is
    reported but does not fail the check.  The overflow entry itself is not
    an exact check.
    """
    params = params.resolved(g.n)
    checks = [_partition_check(g, d)]
    in_range = checks[0].passed or d.n == g.n
    diameters = [strong_diameter(g, [v for v in cl.members if 0 <= v < g.n]) if in_range else 0 for cl in d.clusters]
    checks.append(_connectivity_check(g, d, diameters))

    ev = stats.ev_count if stats is not None else None
    bound = diameter_bound(params, g.n)
    finite = [x for x in diameters if not math.isinf(x)]
    worst = max(finite, default=0)
    diam = CheckResult("strong-diameter", worst <= bound, worst, bound)
    if not diam.passed:
        diam.witness = {"cluster": int(np.argmax([x if not math.isinf(x) else -1 for x in diameters]))}
        if ev:
            diam.passed = True
            diam.note = "bound waived: radius overflow occurred in this run"
    checks.append(diam)

    checks.append(_coloring_check(g, d) if in_range else CheckResult("proper-coloring", False, witness={"reason": "size mismatch"}))

    used = len({b for b in d.block_of if b >= 0})
    bb = block_bound(params, g.n)
    blocks = CheckResult("block-count", used <= bb and used == d.blocks_used, used, bb)
    if used != d.blocks_used:
        blocks.witness = {"reason": "blocks_used does not match block labels", "recorded": d.blocks_used}
    checks.append(blocks)

    checks.append(
        CheckResult("radius-overflow", ev == 0 if ev is not None else True, ev, 0, exact=False,
                    note="" if ev is not None else "no run statistics supplied")
    )
    return ValidationReport(checks)


@dataclass
class MonteCarloResult:
    trials: int
    frequency: float
    bound: float
    stderr: float
    passed: bool
    label: str = ""

    @classmethod
    def one_sided(cls, hits: int, trials: int, bound: float, label: str = "") -> "MonteCarloResult":
        if trials < 1:
            raise ValueError("need at least one trial")
        p = hits / trials
        se = math.sqrt(p * (1 - p) / trials)
        return cls(trials, p, bound, se, p <= bound + SIGMAS * se, label)

    def within_two_sided(self) -> bool:
        return abs(self.frequency - self.bound) <= SIGMAS * self.stderr

    def to_dict(self) -> dict:
        return asdict(self)


def iter_runs(g: Graph, params: AlgoParams, trials: int) -> Iterator[tuple[Decomposition, RunStats]]:
    """Independent decompositions with seeds ``params.seed + i``."""
    for i in range(trials):
        yield decompose(g, replace(params, seed=params.seed + i))


def check_order_statistics(q: int, d_values, beta: float, trials: int, seed: int = 0) -> MonteCarloResult:
    """Estimate how often the two largest ``delta_j - d_j`` lie within 1.

    ``delta_j`` are i.i.d. ``Exp(beta)``.  With ``q = 1`` the runner-up is
    taken as 0, so the frequency estimates ``Pr[delta <= 1] = 1 - e^-beta``.
    """
    if q < 1:
        raise ValueError(f"q must be at least 1, got {q}")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    d = np.asarray(d_values, dtype=np.float64)
    if d.shape != (q,):
        raise ValueError(f"expected {q} shift values, got {d.size}")
    if (d < 0).any() or (np.diff(d) < 0).any():
        raise ValueError("shift values must be nonnegative and sorted non-decreasing")
    rng = np.random.default_rng(seed)
    hits = 0
    chunk = max(1, min(trials, 2_000_000 // q))
    done = 0
    while done < trials:
        size = min(chunk, trials - done)
        vals = rng.exponential(1 / beta, size=(size, q)) - d
        if q == 1:
            top, second = vals[:, 0], np.zeros(size)
        else:
            part = np.partition(vals, q - 2, axis=1)
            top, second = part[:, q - 1], part[:, q - 2]
        hits += int(np.count_nonzero(top - second <= 1))
        done += size
    return MonteCarloResult.one_sided(hits, trials, 1 - math.exp(-beta), "order statistics within 1")


@dataclass
class SurvivalPoint:
    phase: int
    empirical: float
    bound: float
    stderr: float
    passed: bool


@dataclass
class SurvivalCurve:
    trials: int
    points: list[SurvivalPoint] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.points)

    def to_dict(self) -> dict:
        return asdict(self)


def survival_curve(g: Graph, params: AlgoParams, trials: int) -> SurvivalCurve:
    """Fraction of (vertex, trial) pairs still unassigned after each phase.

    Phase ``t`` is paired with the bound ``(1 - (cn)^(-1/k))^t``.
    """
    params = params.resolved(g.n)
    if params.variant != "basic":
        raise ValueError("survival_curve applies to the basic variant")
    return survival_from_stats(g.n, params, [stats for _, stats in iter_runs(g, params, trials)])


def survival_from_stats(n: int, params: AlgoParams, runs: list[RunStats]) -> SurvivalCurve:
    params = params.resolved(n)
    total = build_schedule(params, n).max_phases
    trials = len(runs)
    alive = np.zeros((trials, total + 1))
    for i, stats in enumerate(runs):
        alive[i, : len(stats.survivors)] = stats.survivors
    frac = alive.mean(axis=0) / max(n, 1)
    frac[0] = 1.0
    join = (params.c * max(n, 1)) ** (-1 / params.k)
    curve = SurvivalCurve(trials)
    for t in range(total + 1):
        p = float(frac[t])
        se = math.sqrt(max(p * (1 - p), 0.0) / trials)
        bound = (1 - join) ** t
        curve.points.append(SurvivalPoint(t, p, bound, se, p <= bound + SIGMAS * se))
    return curve


def staged_survival(g: Graph, params: AlgoParams, trials: int) -> SurvivalCurve:
    """Survival at the first phase of each stage against ``e^(-2i)``.

    Point ``i`` is the fraction of (vertex, trial) pairs still unassigned
    when stage ``i`` begins.
    """
    params = params.resolved(g.n)
    if params.variant != "staged":
        raise ValueError("staged_survival applies to the staged variant")
    schedule = build_schedule(params, g.n)
    starts = [next(p.index for p in schedule.phases if p.stage == i) for i in range(schedule.stage_count)]
    alive = np.zeros((trials, schedule.max_phases + 1))
    for t, (_, stats) in enumerate(iter_runs(g, params, trials)):
        alive[t, : len(stats.survivors)] = stats.survivors
    frac = alive.mean(axis=0) / max(g.n, 1)
    curve = SurvivalCurve(trials)
    for i, start in enumerate(starts):
        p = float(frac[start]) if g.n else 0.0
        se = math.sqrt(max(p * (1 - p), 0.0) / trials)
        bound = math.exp(-2 * i)
        curve.points.append(SurvivalPoint(i, p, bound, se, p <= bound + SIGMAS * se))
    return curve


def ev_frequency(g: Graph, params: AlgoParams, trials: int) -> MonteCarloResult:
    """Fraction of runs with at least one radius overflow, against ``2/c`` (``4/c`` staged)."""
    params = params.resolved(g.n)
    hits = sum(stats.ev_count > 0 for _, stats in iter_runs(g, params, trials))
    factor = 4 if params.variant == "staged" else 2
    return MonteCarloResult.one_sided(hits, trials, factor / params.c, "runs with radius overflow")


def run_failed(g: Graph, params: AlgoParams, stats: RunStats) -> bool:
    """A run misses its guarantee if it leaves vertices, overspends colours or overflows."""
    return (not stats.success) or stats.blocks_used > block_bound(params, g.n) or stats.ev_count > 0


def failure_frequency(g: Graph, params: AlgoParams, trials: int) -> MonteCarloResult:
    """Fraction of runs missing the guarantee, against ``3/c`` (``5/c`` staged)."""
    params = params.resolved(g.n)
    hits = sum(run_failed(g, params, stats) for _, stats in iter_runs(g, params, trials))
    factor = 5 if params.variant == "staged" else 3
    return MonteCarloResult.one_sided(hits, trials, factor / params.c, "runs missing the guarantee")


@dataclass
class EquivalenceResult:
    trials: int
    mismatches: list[dict]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def compare_phase(g: Graph, alive, radii) -> dict | None:
    """Run both evaluations on fixed radii; return a reproduction record on mismatch."""
    mask = as_mask(g, alive)
    dist = run_phase_with_radii(g, mask, radii)
    ref_block, ref_centers = run_phase_reference(g, mask, radii)
    if dist.block == ref_block and dist.centers == ref_centers:
        return None
    if isinstance(radii, dict):
        saved = {int(v): float(x) for v, x in radii.items()}
    else:
        saved = [None if np.isnan(x) else float(x) for x in np.asarray(radii, dtype=np.float64)]
    return {
        "n": g.n,
        "edges": g.edges(),
        "alive": np.flatnonzero(mask).tolist(),
        "radii": saved,
        "distributed": {"block": dist.block, "centers": dist.centers},
        "reference": {"block": ref_block, "centers": ref_centers},
    }


def oracle_equivalence(g: Graph, beta: float, trials: int, seed: int = 0, alive=None) -> EquivalenceResult:
    """Compare top-two forwarding with the full-information rule on sampled radii.

    Trial ``t`` draws every radius from the stream of phase ``t``.
    """
    mask = np.ones(g.n, dtype=bool) if alive is None else as_mask(g, alive)
    ids = np.flatnonzero(mask)
    mismatches = []
    for t in range(trials):
        r = np.full(g.n, np.nan)
        r[ids] = phase_radii(seed, t, ids, beta)
        bad = compare_phase(g, mask, r)
        if bad is not None:
            bad["trial"] = t
            mismatches.append(bad)
    return EquivalenceResult(trials, mismatches)
