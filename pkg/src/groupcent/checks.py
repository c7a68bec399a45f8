"""Property-check suites runnable from the CLI and reused by the test suite.

Three families: diminishing-returns sampling for the harmonic objective,
instrumented never-undershoot checks for every pruning bound, and
greedy/local-search quality floors against the exhaustive oracle on small
sweeps.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .centrality import (DisconnectedRemovalError, group_farness_raw,
                         group_harmonic, patched_distances, removal_cost,
                         state_init)
from .closeness import LevelBuckets, farness_decrease, local_search_closeness
from .generators import (directed_strongly_connected, layered_dag,
                         mixed_regime_graphs, undirected_connected)
from .graph import multi_source_sssp
from .harmonic import (BaseDistances, graph_reach_info, greedy_harmonic,
                       local_search_harmonic, pruned_marginal_gain)
from .oracles import exhaustive_best
from .reporting import AlgoConfig

DIRECTED_FLOOR = 1 - 2 / math.e
UNDIRECTED_FLOOR = (1 - 1 / math.e) / 2
FLOOR_SLACK = 1e-9


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    checked: int
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked} checks, {len(self.violations)} violations"
        return line


def submodularity_check(num_graphs: int = 50, min_triples: int = 1000,
                        seed: int = 1, graphs=None) -> CheckOutcome:
    """Diminishing returns of the harmonic objective: adding a vertex to a
    subset gains at least as much as adding it to a superset."""
    rng = random.Random(seed)
    if graphs is None:
        graphs = mixed_regime_graphs(num_graphs, seed=seed + 1)
    per_graph = max(1, -(-min_triples // len(graphs)))
    out = CheckOutcome(name="submodularity", passed=True, checked=0)
    for g in graphs:
        n = g.n
        for _ in range(per_graph):
            size_t = rng.randrange(1, min(n - 1, 6))
            t_set = sorted(rng.sample(range(n), size_t))
            size_s = rng.randrange(1, size_t + 1)
            s_set = sorted(rng.sample(t_set, size_s))
            v = rng.choice([x for x in range(n) if x not in t_set])
            gh_s = group_harmonic(g, s_set).value
            gh_sv = group_harmonic(g, s_set + [v]).value
            gh_t = group_harmonic(g, t_set).value
            gh_tv = group_harmonic(g, t_set + [v]).value
            out.checked += 1
            if (gh_sv - gh_s) < (gh_tv - gh_t) - 1e-9:
                out.passed = False
                out.violations.append(
                    f"S={s_set} T={t_set} v={v}: {gh_sv - gh_s} < {gh_tv - gh_t} "
                    f"on edges {g.edges()}")
    return out


def bound_check(cases_per_regime: int = 200, seed: int = 2,
                graphs=None) -> CheckOutcome:
    """Every intermediate pruning bound must dominate the exact quantity the
    completed traversal reports: marginal-gain bounds within 1e-9 (floats),
    farness-decrease bounds exactly (integers)."""
    out = CheckOutcome(name="bounds", passed=True, checked=0)
    rng = random.Random(seed)
    for weights in ((1,), (1, 2, 3)):
        done = 0
        while done < cases_per_regime:
            if graphs is not None:
                g = graphs[done % len(graphs)]
            elif (pick := rng.randrange(3)) == 0:
                g = layered_dag(rng, 3, 3, weights=weights)
            else:
                g = (directed_strongly_connected(rng.randrange(6, 16), rng, weights=weights)
                     if pick == 1 else
                     undirected_connected(rng.randrange(6, 16), rng, weights=weights))
            group = sorted(rng.sample(range(g.n), rng.randrange(1, min(4, g.n))))
            u = rng.choice([x for x in range(g.n) if x not in group])
            dist = multi_source_sssp(g, group)
            reach, comp = graph_reach_info(g)
            base = BaseDistances(g, dist, reach, comp)
            rec: list = []
            res = pruned_marginal_gain(g, base, u, record=rec)
            done += 1
            out.checked += len(rec)
            for b in rec:
                if b < res.value - 1e-9:
                    out.passed = False
                    out.violations.append(
                        f"gain bound {b} < exact {res.value} for u={u} "
                        f"S={group} edges={g.edges()}")
    from .graph import is_connected
    if graphs is not None and not any(is_connected(g) for g in graphs):
        out.notes.append("given graph not (strongly) connected; "
                         "farness bounds checked on generated graphs instead")
        graphs = None
    for weights in ((1,), (1, 2, 3)):
        done = 0
        while done < cases_per_regime:
            if graphs is not None:
                g = graphs[done % len(graphs)]
                if not is_connected(g):
                    continue
            else:
                directed = bool(rng.randrange(2))
                g = (directed_strongly_connected(rng.randrange(6, 14), rng, weights=weights)
                     if directed else
                     undirected_connected(rng.randrange(6, 14), rng, weights=weights))
            k = rng.randrange(2, 4)
            if k >= g.n:
                continue
            group = sorted(rng.sample(range(g.n), k))
            state = state_init(g, group)
            u = rng.choice(group)
            try:
                removal_cost(state, u)
            except DisconnectedRemovalError:
                continue
            dbase = patched_distances(state, u)
            buckets = LevelBuckets.from_distances(dbase)
            v = rng.choice([x for x in range(g.n) if x not in group])
            rec = []
            res = farness_decrease(g, dbase, buckets, v, record=rec)
            without_u = [m for m in group if m != u]
            swapped = sorted(set(without_u) | {v})
            oracle = group_farness_raw(g, without_u) - group_farness_raw(g, swapped)
            done += 1
            out.checked += len(rec) + 1
            if res.value != oracle:
                out.passed = False
                out.violations.append(
                    f"decrease {res.value} != oracle {oracle} for u={u} v={v} "
                    f"S={group} edges={g.edges()}")
            for b in rec:
                if b < res.value:
                    out.passed = False
                    out.violations.append(
                        f"decrease bound {b} < exact {res.value} for u={u} v={v} "
                        f"S={group} edges={g.edges()}")
    return out


def harmonic_sweep(directed: bool, graphs_per_n: int = 24, ns=(5, 6, 7, 8, 9),
                   ks=(1, 2, 3), weights=(1, 2), seed: int = 3,
                   with_local_search: bool = True):
    """Greedy (and optionally local search) vs the exhaustive optimum on a
    deterministic family of connected instances. One row per (graph, k)."""
    rows = []
    base_seed = seed + (1000 if directed else 0)
    for n in ns:
        for s in range(graphs_per_n):
            rng = random.Random(base_seed * 100003 + n * 1009 + s)
            g = (directed_strongly_connected(n, rng, weights=weights) if directed
                 else undirected_connected(n, rng, weights=weights))
            for k in ks:
                if k > g.n:
                    continue
                cfg = AlgoConfig(k=k, deterministic=True)
                opt = exhaustive_best(g, k, "harmonic").objective_value
                greedy = greedy_harmonic(g, k, cfg)
                row = {
                    "n": n, "seed": s, "k": k, "lam": g.lambda_ratio,
                    "opt": opt, "greedy": greedy.objective_value,
                    "round_gains": greedy.round_gains, "graph": g,
                }
                if with_local_search:
                    ls = local_search_harmonic(g, k, cfg)
                    row["ls"] = ls.objective_value
                rows.append(row)
    return rows


def closeness_sweep(graphs_per_n: int = 20, ns=(5, 6, 7, 8, 9), ks=(1, 2, 3),
                    weights=(1, 2), eps: float = 0.001, seed: int = 4):
    """Single-swap local search vs the exhaustive optimum on connected
    instances, alternating directed and undirected."""
    rows = []
    for n in ns:
        for s in range(graphs_per_n):
            rng = random.Random(seed * 99991 + n * 613 + s)
            directed = bool(s % 2)
            g = (directed_strongly_connected(n, rng, weights=weights) if directed
                 else undirected_connected(n, rng, weights=weights))
            for k in ks:
                if k >= g.n:
                    continue
                cfg = AlgoConfig(k=k, eps=eps, deterministic=True)
                opt = exhaustive_best(g, k, "closeness").raw_farness
                ls = local_search_closeness(g, k, cfg)
                rows.append({
                    "n": n, "seed": s, "k": k, "directed": directed,
                    "opt_raw": opt, "ls_raw": ls.raw_farness, "graph": g,
                })
    return rows


def oracle_check(graphs_per_n: int = 4, seed: int = 5) -> CheckOutcome:
    """Reduced-size quality floors: Greedy vs the exhaustive optimum above
    the proven ratio, local search never below greedy, single-swap farness
    within 5x of optimum."""
    out = CheckOutcome(name="oracle", passed=True, checked=0)
    for directed in (True, False):
        floor_const = DIRECTED_FLOOR if directed else UNDIRECTED_FLOOR
        rows = harmonic_sweep(directed, graphs_per_n=graphs_per_n,
                              ns=(5, 7, 9), seed=seed)
        ratios = []
        for row in rows:
            out.checked += 1
            ratio = row["greedy"] / row["opt"] if row["opt"] > 0 else 1.0
            ratios.append(ratio)
            floor = row["lam"] * floor_const
            if ratio < floor - FLOOR_SLACK:
                out.passed = False
                out.violations.append(
                    f"greedy ratio {ratio:.6f} below floor {floor:.6f} on "
                    f"n={row['n']} seed={row['seed']} k={row['k']}")
            if row["ls"] < row["greedy"] - 1e-9:
                out.passed = False
                out.violations.append(
                    f"local search {row['ls']} below greedy {row['greedy']} on "
                    f"n={row['n']} seed={row['seed']} k={row['k']}")
        label = "directed" if directed else "undirected"
        out.notes.append(f"{label} greedy/opt mean ratio "
                         f"{sum(ratios) / len(ratios):.4f} over {len(ratios)} instances")
    for row in closeness_sweep(graphs_per_n=2, ns=(5, 7, 9), seed=seed + 1):
        out.checked += 1
        if row["ls_raw"] > 5 * row["opt_raw"]:
            out.passed = False
            out.violations.append(
                f"swap search farness {row['ls_raw']} exceeds 5x optimum "
                f"{row['opt_raw']} on n={row['n']} seed={row['seed']} k={row['k']}")
    return out


ALL_SUITES = {
    "submodularity": submodularity_check,
    "bounds": bound_check,
    "oracle": oracle_check,
}
