import math
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

from netdecomp.decomposition import (
    AlgoParams,
    Schedule,
    assemble,
    block_bound,
    build_schedule,
    decompose,
    diameter_bound,
    unassigned,
)
from netdecomp.engine import run_phase_reference
from netdecomp.graph import connected_components, generate, strong_diameter
from netdecomp.io import decomposition_to_dict, load_decomposition
from netdecomp.randomness import phase_radii

GOLDEN = Path(__file__).parent / "data" / "golden_gnp200_p005_seed7.json"


def test_basic_schedule_at_k_equal_ln_cn():
    n, k = 10, 5
    c = math.exp(k) / n  # ln(cn) == k, so (cn)^(1/k) == e
    s = build_schedule(AlgoParams("basic", k=k, c=c), n)
    assert all(p.beta == pytest.approx(1.0) for p in s.phases)
    assert s.max_phases == math.ceil(math.e * k) == 14
    assert s.k_eff == k


@pytest.mark.parametrize("n", [1, 2, 50, 200, 1000, 5000])
@pytest.mark.parametrize("c", [5.01, 20.0, 100.0])
def test_staged_total_within_block_budget(n, c):
    for k in range(1, math.ceil(math.log(c * n)) + 1):
        s = build_schedule(AlgoParams("staged", k=k, c=c), n)
        assert s.max_phases <= 4 * k * (c * n) ** (1 / k)
        assert s.stage_count == math.ceil(math.log(n)) + 1


def test_staged_stage_parameters():
    n, c, k = 200, 20.0, 6
    s = build_schedule(AlgoParams("staged", k=k, c=c), n)
    for i in range(s.stage_count):
        phases = [p for p in s.phases if p.stage == i]
        assert len(phases) == math.ceil(2 * (c * n / math.e**i) ** (1 / k))
        assert all(p.beta == pytest.approx(math.log(c * n / math.e**i) / k) for p in phases)
    betas = [p.beta for p in s.phases]
    assert betas == sorted(betas, reverse=True)
    assert [p.index for p in s.phases] == list(range(s.max_phases))


def test_inverse_single_block():
    n, c = 300, 10.0
    s = build_schedule(AlgoParams("inverse", lam=1, c=c), n)
    assert s.max_phases == 1
    assert s.k_eff == math.ceil(c * n * math.log(c * n))
    assert s.phases[0].beta == pytest.approx(math.log(c * n) / s.k_eff)


def test_inverse_schedule():
    n, c, lam = 500, 10.0, 3
    s = build_schedule(AlgoParams("inverse", lam=lam, c=c), n)
    assert s.max_phases == lam
    assert s.k_eff == math.ceil((c * n) ** (1 / lam) * math.log(c * n))
    assert diameter_bound(AlgoParams("inverse", lam=lam, c=c), n) <= 2 * (c * n) ** (1 / lam) * math.log(c * n)
    assert block_bound(AlgoParams("inverse", lam=lam, c=c), n) == lam


def test_default_k():
    p = AlgoParams("basic", c=10).resolved(200)
    assert p.k == math.ceil(math.log(2000)) == 8


@pytest.mark.parametrize(
    "params,match",
    [
        (AlgoParams("basic", k=3, c=3.0), "c must exceed 3"),
        (AlgoParams("staged", k=3, c=5.0), "c must exceed 5"),
        (AlgoParams("inverse", c=10), "needs lambda"),
        (AlgoParams("inverse", lam=0, c=10), "lambda must satisfy"),
        (AlgoParams("basic", k=0, c=10), "k must satisfy"),
        (AlgoParams("basic", k=50, c=10), "k must satisfy"),
        (AlgoParams("nope", k=2, c=10), "variant"),
        (AlgoParams("basic", k=2, c=10, seed=-1), "seed"),
    ],
)
def test_invalid_params_name_the_bound(params, match):
    with pytest.raises(ValueError, match=match):
        build_schedule(params, 100)


@pytest.mark.parametrize("variant,extra", [("basic", {}), ("staged", {"c": 10.0}), ("inverse", {"lam": 1})])
def test_single_vertex(variant, extra):
    g = generate("empty", 1)
    d, stats = decompose(g, AlgoParams(variant, **extra))
    assert d.success and d.blocks_used == 1
    assert len(d.clusters) == 1 and d.clusters[0].members == (0,)
    assert strong_diameter(g, d.clusters[0].members) == 0


def test_empty_graph():
    g = generate("empty", 0)
    d, stats = decompose(g, AlgoParams("basic"))
    assert d.success and d.blocks_used == 0 and unassigned(d) == []
    assert stats.phases_executed == 0


def test_edgeless_graph_gives_singletons():
    g = generate("empty", 40)
    d, _ = decompose(g, AlgoParams("basic", seed=4))
    assigned = [v for v in range(40) if d.block_of[v] >= 0]
    assert sorted(v for cl in d.clusters for v in cl.members) == assigned
    assert all(len(cl.members) == 1 and cl.center == cl.members[0] for cl in d.clusters)


def test_truncated_schedule_leaves_vertices():
    g = generate("path", 400)
    params = AlgoParams("basic", seed=1).resolved(400)
    one = build_schedule(params, 400)
    one = Schedule(one.phases[:1], one.k_eff, 1)
    d, stats = decompose(g, params, schedule=one)
    assert not d.success and unassigned(d)
    assert stats.phases_executed == 1


def test_successful_run_has_no_unassigned():
    g = generate("grid", 0, {"rows": 10, "cols": 10})
    d, stats = decompose(g, AlgoParams("basic", seed=2))
    assert d.success and unassigned(d) == []


@pytest.mark.parametrize("variant,extra", [("basic", {}), ("staged", {"c": 20.0, "k": 5}), ("inverse", {"lam": 2})])
def test_run_invariants(variant, extra):
    g = generate("gnp", 150, {"p": 0.04}, seed=9)
    for seed in range(5):
        params = AlgoParams(variant, seed=seed, **extra)
        d, stats = decompose(g, params)
        assert stats.survivors[0] == g.n
        assert all(a >= b for a, b in zip(stats.survivors, stats.survivors[1:]))
        assert stats.total_rounds == sum(p.rounds for p in stats.phase_stats)
        assert stats.phases_executed <= build_schedule(params, g.n).max_phases
        assert stats.success == (stats.survivors[-1] == 0)
        # clusters are exactly the components of each block, and blocks colour the supergraph
        cluster_of = d.cluster_of
        for b in set(x for x in d.block_of if x >= 0):
            members = [v for v in range(g.n) if d.block_of[v] == b]
            comps = connected_components(g, members)
            assert sorted(comps) == sorted([list(cl.members) for cl in d.clusters if cl.block_index == b])
        for u, v in g.edges():
            if d.block_of[u] >= 0 and d.block_of[u] == d.block_of[v]:
                assert cluster_of[u] == cluster_of[v]
        for cl in d.clusters:
            assert cl.center in cl.members
            assert {d.center_of[v] for v in cl.members} == {cl.center}


def test_deterministic_runs():
    g = generate("gnp", 120, {"p": 0.05}, seed=1)
    a = decompose(g, AlgoParams("basic", seed=77))
    b = decompose(g, AlgoParams("basic", seed=77))
    assert a == b
    assert a[0].block_of != decompose(g, AlgoParams("basic", seed=78))[0].block_of


def test_compact_colors():
    g = generate("path", 4)
    d = assemble(g, [3, 3, 7, -1], [0, 0, 2, -1])
    assert d.blocks_used == 2 and not d.success
    assert d.compact_colors() == (0, 0, 1, -1)


def test_golden_snapshot():
    g = generate("gnp", 200, {"p": 0.05}, seed=7)
    params = AlgoParams("basic", c=10, seed=7)
    d, stats = decompose(g, params)
    golden, gparams, gstats = load_decomposition(GOLDEN)
    assert gparams == params.resolved(200)
    assert (d, stats) == (golden, gstats)

    # replay every phase through the full-information rule with the same radii
    alive = np.ones(g.n, dtype=bool)
    for ps in gstats.phase_stats:
        ids = np.flatnonzero(alive)
        r = np.full(g.n, np.nan)
        r[ids] = phase_radii(params.seed, ps.phase, ids, ps.beta)
        block, centers = run_phase_reference(g, alive, r)
        assert block == [v for v in range(g.n) if golden.block_of[v] == ps.phase]
        assert all(golden.center_of[y] == centers[y] for y in block)
        alive[block] = False
    assert not alive.any()
