"""Greedy and swap-based local-search minimization of group farness.

Farness is kept as the raw integer sum of distances, so every bound,
threshold, and acceptance test below is exact arithmetic: acceptance
compares integers against a Fraction threshold (1 - eps/Q) * raw, and the
pruning certificates are integer upper bounds on the farness decrease a
candidate can deliver. Pruning therefore never changes which swaps commit,
only how much work is spent rejecting the losers.

For a swap (u out, v in) the evaluation base is the group without u, whose
distances come from the nearest/second-nearest state in O(n). A pruned
traversal from v visits only vertices strictly closer to v than to that
base; after each completed level it bounds the still-achievable decrease by
promoting at most a frontier-fanout's worth of unexplored vertices to the
next level and parking the rest one level further.
"""

from __future__ import annotations

import time
from bisect import bisect_left
from collections import deque
from fractions import Fraction
from heapq import heappop, heappush
from math import floor as int_floor
from typing import NamedTuple

from .centrality import (DisconnectedRemovalError, group_farness_raw,
                         patched_distances, removal_cost, state_init)
from .graph import Graph, UNREACHABLE, is_connected, multi_source_sssp, sssp
from .parallel import EvalPool
from .reporting import AlgoConfig, RunReport, graph_summary


class DisconnectedGraphError(ValueError):
    """Closeness algorithms require a (strongly) connected graph."""


class SwapCandidate(NamedTuple):
    remove_vertex: int
    add_vertex: int
    removal_cost: int
    add_estimate: float


class DecreaseResult(NamedTuple):
    is_exact: bool
    value: int  # exact farness decrease, or a still-valid upper bound


class LevelBuckets:
    """Suffix count/sum queries over a snapshot of base distances.

    Kept sorted by (distance, vertex id); members sit at distance 0 and
    never enter the suffixes the bounds query.
    """

    __slots__ = ("pairs", "_dists", "_suffix_sum")

    def __init__(self, pairs):
        self.pairs = pairs
        self._dists = [d for d, _ in pairs]
        total = 0
        suffix = [0] * (len(pairs) + 1)
        for i in range(len(pairs) - 1, -1, -1):
            total += self._dists[i]
            suffix[i] = total
        self._suffix_sum = suffix

    @classmethod
    def from_distances(cls, dists):
        pairs = sorted((d, x) for x, d in enumerate(dists))
        if pairs and pairs[-1][0] == UNREACHABLE:
            raise ValueError("unreachable vertex in farness context")
        return cls(pairs)

    def count_ge(self, t: int) -> int:
        return len(self.pairs) - bisect_left(self._dists, t)

    def sum_ge(self, t: int) -> int:
        return self._suffix_sum[bisect_left(self._dists, t)]

    def vertices_ge(self, t: int):
        return [x for _, x in self.pairs[bisect_left(self._dists, t):]]


class _SuffixTracker:
    """Count/sum of recorded values at or above a nondecreasing threshold."""

    __slots__ = ("_heap", "cnt", "total")

    def __init__(self):
        self._heap = []
        self.cnt = 0
        self.total = 0

    def add(self, value):
        heappush(self._heap, value)
        self.cnt += 1
        self.total += value

    def stats_ge(self, t):
        h = self._heap
        while h and h[0] < t:
            self.cnt -= 1
            self.total -= heappop(h)
        return self.cnt, self.total


def add_estimate(state, v: int) -> float:
    """Scan priority for candidate v: far and high-fanout first.

    Pure heuristic, affects evaluation order only."""
    return float(state.dist_nearest[v] * (1 + state.graph.out_degree(v)))


def farness_decrease(g: Graph, dbase, buckets: LevelBuckets, v: int,
                     stop_below=None, record=None) -> DecreaseResult:
    """Raw-farness decrease from adding v to the group behind ``dbase``.

    Aborts (returning the current upper bound) as soon as the bound drops
    below ``stop_below``; with ``stop_below=None`` the result is exact.
    ``record`` collects every intermediate bound for instrumentation.
    """
    if g.unit_weights:
        return _decrease_unit(g, dbase, buckets, v, stop_below, record)
    return _decrease_weighted(g, dbase, buckets, v, stop_below, record)


def _decrease_unit(g, dbase, buckets, v, stop_below, record):
    n, indptr, targets = g.n, g.indptr, g.targets
    undirected = not g.directed
    seen = bytearray(n)
    seen[v] = 1
    level = [v]
    dec = dbase[v]
    near = _SuffixTracker()   # explored, queried at threshold i+2
    far = _SuffixTracker()    # explored, queried at threshold i+3
    near.add(dbase[v])
    far.add(dbase[v])
    i = 0
    while True:
        fanout = 0
        for x in level:
            fanout += indptr[x + 1] - indptr[x]
            if undirected and i > 0:
                fanout -= 1
        ecnt2, _ = near.stats_ge(i + 2)
        avail_next = buckets.count_ge(i + 2) - ecnt2
        promoted = fanout if fanout < avail_next else avail_next
        ecnt3, esum3 = far.stats_ge(i + 3)
        ucnt3 = buckets.count_ge(i + 3) - ecnt3
        usum3 = buckets.sum_ge(i + 3) - esum3
        # every vertex promoted to the next level is worth exactly one more
        # than its parked value, so only the promoted count matters
        bound = dec + promoted + (usum3 - (i + 2) * ucnt3)
        if record is not None:
            record.append(bound)
        if stop_below is not None and bound < stop_below:
            return DecreaseResult(False, bound)
        nd = i + 1
        nxt = []
        for x in level:
            for j in range(indptr[x], indptr[x + 1]):
                y = targets[j]
                if not seen[y] and nd < dbase[y]:
                    seen[y] = 1
                    dec += dbase[y] - nd
                    near.add(dbase[y])
                    far.add(dbase[y])
                    nxt.append(y)
        if not nxt:
            return DecreaseResult(True, dec)
        level = nxt
        i = nd


def _decrease_weighted(g, dbase, buckets, v, stop_below, record):
    n, indptr, targets, wts = g.n, g.indptr, g.targets, g.weights
    tentative = [UNREACHABLE] * n
    tentative[v] = 0
    done = bytearray(n)
    heap = [(0, v)]
    dec = 0
    tracker = _SuffixTracker()
    while heap:
        d, x = heappop(heap)
        if done[x]:
            continue
        done[x] = 1
        dec += dbase[x] - d
        tracker.add(dbase[x])
        for j in range(indptr[x], indptr[x + 1]):
            y = targets[j]
            ny = d + wts[j]
            if not done[y] and ny < dbase[y] and ny < tentative[y]:
                tentative[y] = ny
                heappush(heap, (ny, y))
        if not heap:
            break
        ecnt, esum = tracker.stats_ge(d + 1)
        ucnt = buckets.count_ge(d + 1) - ecnt
        usum = buckets.sum_ge(d + 1) - esum
        bound = dec + (usum - d * ucnt)
        if record is not None:
            record.append(bound)
        if stop_below is not None and bound < stop_below:
            return DecreaseResult(False, bound)
    return DecreaseResult(True, dec)


def _farness_of_singleton(g, v, stop_above=None):
    """Raw farness of {v} with an optional integer abort threshold.

    The partial sum of settled distances plus (remaining count) * (current
    radius) is a valid lower bound, so the scan can stop once it proves the
    total exceeds ``stop_above``."""
    n, indptr, targets = g.n, g.indptr, g.targets
    if g.unit_weights:
        dist = [-1] * n
        dist[v] = 0
        q = deque([v])
        total = 0
        visited = 1
        while q:
            x = q.popleft()
            nd = dist[x] + 1
            for j in range(indptr[x], indptr[x + 1]):
                y = targets[j]
                if dist[y] < 0:
                    dist[y] = nd
                    total += nd
                    visited += 1
                    q.append(y)
            if stop_above is not None and q:
                lower = total + (n - visited) * (dist[q[0]])
                if lower > stop_above:
                    return False, lower
        return True, total
    wts = g.weights
    tentative = [UNREACHABLE] * n
    tentative[v] = 0
    done = bytearray(n)
    heap = [(0, v)]
    total = 0
    visited = 0
    while heap:
        d, x = heappop(heap)
        if done[x]:
            continue
        done[x] = 1
        visited += 1
        total += d
        for j in range(indptr[x], indptr[x + 1]):
            y = targets[j]
            ny = d + wts[j]
            if not done[y] and ny < tentative[y]:
                tentative[y] = ny
                heappush(heap, (ny, y))
        if stop_above is not None and heap:
            lower = total + (n - visited) * d
            if lower > stop_above:
                return False, lower
    return True, total


def _require_connected(g):
    if not is_connected(g):
        raise DisconnectedGraphError(
            "graph is not (strongly) connected; extract the largest component first")


def _closeness_report(g, algorithm, group, cfg, t0, stats, swap_sequence=()):
    members = sorted(group)
    raw = group_farness_raw(g, members)
    return RunReport(
        algorithm=algorithm,
        group=members,
        objective_kind="closeness",
        objective_value=g.n / raw if raw else float("inf"),
        raw_farness=raw,
        iterations=stats.get("iterations", 0),
        swaps_committed=stats.get("swaps", 0),
        candidates_evaluated=stats.get("evaluated", 0),
        traversals_pruned=stats.get("pruned", 0),
        wall_time_millis=(time.perf_counter() - t0) * 1000.0,
        config=cfg.echo(),
        graph=graph_summary(g),
        swap_sequence=list(swap_sequence),
    )


def _closeness_start_vertex(g):
    """Vertex of maximum closeness (minimum total distance), ties to the
    smallest id."""
    best_v = 0
    best_total = None
    for u in range(g.n):
        total = sum(sssp(g, u))
        if best_total is None or total < best_total:
            best_total = total
            best_v = u
    return best_v


def greedy_closeness(g: Graph, k: int, cfg: AlgoConfig | None = None) -> RunReport:
    """Plain greedy: each round adds the candidate whose inclusion shrinks
    raw farness the most. Within a round, a candidate's traversal aborts as
    soon as its decrease bound proves it cannot strictly beat the incumbent,
    which keeps ties resolving to the smallest id exactly as an unpruned
    argmin scan would. Bounds are never reused across rounds."""
    cfg = cfg or AlgoConfig(k=k)
    _require_connected(g)
    if not 1 <= k < g.n:
        raise ValueError(f"k={k} out of range for n={g.n} (closeness needs k < n)")
    t0 = time.perf_counter()
    group = [_closeness_start_vertex(g)]
    stats = {"evaluated": g.n, "pruned": 0, "iterations": k}
    width = cfg.effective_workers()
    with EvalPool(width) as pool:
        while len(group) < k:
            dbase = multi_source_sssp(g, group)
            buckets = LevelBuckets.from_distances(dbase)
            in_group = set(group)
            candidates = [v for v in range(g.n) if v not in in_group]
            best_dec = 0
            best_v = -1
            for lo in range(0, len(candidates), width):
                batch = candidates[lo:lo + width]
                floor = best_dec + 1  # abort once the bound cannot strictly beat
                results = pool.map(
                    lambda cand: farness_decrease(g, dbase, buckets, cand, floor), batch)
                for v, res in zip(batch, results):
                    stats["evaluated"] += 1
                    if res.is_exact:
                        if res.value > best_dec:
                            best_dec, best_v = res.value, v
                    else:
                        stats["pruned"] += 1
            group.append(best_v)
    return _closeness_report(g, "greedy-c", group, cfg, t0, stats)


def local_search_closeness(g: Graph, k: int, cfg: AlgoConfig | None = None,
                           use_pruning: bool = True) -> RunReport:
    """Single-swap local search started from the greedy group.

    Members are scanned by ascending removal cost, candidates by descending
    add estimate; degree-1 candidates are skipped on undirected unit-weight
    graphs, where the unique neighbor always does at least as well. The
    first swap whose exact new farness clears (1 - eps/(k(n-k))) * current
    commits, both loops restart, and the search stops when a full pass
    commits nothing."""
    cfg = cfg or AlgoConfig(k=k)
    _require_connected(g)
    if not 1 <= k < g.n:
        raise ValueError(f"k={k} out of range for n={g.n} (closeness needs k < n)")
    t0 = time.perf_counter()
    n = g.n
    group = list(greedy_closeness(g, k, cfg).group)
    stats = {"evaluated": 0, "pruned": 0, "iterations": 0}
    swaps: list[SwapCandidate] = []
    q_size = k * (n - k)
    shrink = 1 - Fraction(str(cfg.eps)) / q_size
    exclude_deg1 = g.unit_weights and not g.directed
    width = cfg.effective_workers()
    with EvalPool(width) as pool:
        improved = True
        while improved:
            improved = False
            stats["iterations"] += 1
            state = state_init(g, group)
            raw = state.raw_farness
            threshold = shrink * raw
            members = []
            if k == 1:
                members.append((0, group[0]))
            else:
                for u in group:
                    try:
                        members.append((removal_cost(state, u), u))
                    except DisconnectedRemovalError:
                        continue  # unremovable member
            members.sort()
            candidates_all = sorted(
                (v for v in range(n) if v not in state.member_set
                 and not (exclude_deg1 and g.out_degree(v) == 1)),
                key=lambda v: (-add_estimate(state, v), v))
            for cost_u, u in members:
                if k == 1:
                    committed = _scan_singleton(g, pool, width, candidates_all,
                                                threshold, stats, use_pruning)
                else:
                    dbase = patched_distances(state, u)
                    buckets = LevelBuckets.from_distances(dbase)
                    floor = raw + cost_u - threshold if use_pruning else None
                    committed = _scan_pairs(g, pool, width, candidates_all, dbase,
                                            buckets, raw, cost_u, threshold,
                                            floor, stats)
                if committed is not None:
                    v, new_raw = committed
                    est = add_estimate(state, v)
                    swaps.append(SwapCandidate(u, v, cost_u, est))
                    group = sorted(set(group) - {u} | {v})
                    improved = True
                    break
    stats["swaps"] = len(swaps)
    return _closeness_report(g, "ls-c", group, cfg, t0, stats, swap_sequence=swaps)


def _scan_pairs(g, pool, width, candidates, dbase, buckets, raw, cost_u,
                threshold, floor, stats):
    for lo in range(0, len(candidates), width):
        batch = candidates[lo:lo + width]
        results = pool.map(
            lambda cand: farness_decrease(g, dbase, buckets, cand, floor), batch)
        for v, res in zip(batch, results):
            stats["evaluated"] += 1
            if not res.is_exact:
                stats["pruned"] += 1
                continue
            new_raw = raw + cost_u - res.value
            if new_raw <= threshold:
                return v, new_raw
    return None


def _scan_singleton(g, pool, width, candidates, threshold, stats, use_pruning):
    stop_above = int_floor(threshold) if use_pruning else None
    for lo in range(0, len(candidates), width):
        batch = candidates[lo:lo + width]
        results = pool.map(
            lambda cand: _farness_of_singleton(g, cand, stop_above), batch)
        for v, (exact, total) in zip(batch, results):
            stats["evaluated"] += 1
            if not exact:
                stats["pruned"] += 1
                continue
            if total <= threshold:
                return v, total
    return None


def multi_swap_closeness(g: Graph, k: int, p: int,
                         cfg: AlgoConfig | None = None) -> RunReport:
    """Composite moves: drop the p cheapest members, then re-add candidates
    in estimate order until the group is full again, keeping the move only
    if farness shrinks by the acceptance factor (with Q = C(n-k+p, p)).
    When a full candidate scan produces no acceptable composition, the
    previous group is restored and the search stops. This explores a
    restricted neighborhood, so unlike the single-swap search it carries no
    ratio guarantee; it is reported as a heuristic mode."""
    from math import comb

    cfg = cfg or AlgoConfig(k=k, p=p)
    _require_connected(g)
    if not 1 <= k < g.n:
        raise ValueError(f"k={k} out of range for n={g.n} (closeness needs k < n)")
    if not 1 < p < k:
        raise ValueError(f"p={p} must satisfy 1 < p < k")
    t0 = time.perf_counter()
    group = list(greedy_closeness(g, k, cfg).group)
    stats = {"evaluated": 0, "pruned": 0, "iterations": 0}
    swaps = []
    shrink = 1 - Fraction(str(cfg.eps)) / comb(g.n - k + p, p)
    while True:
        stats["iterations"] += 1
        old_group = list(group)
        state = state_init(g, group)
        raw_old = state.raw_farness
        threshold = shrink * raw_old
        for _ in range(p):
            costs = []
            for u in group:
                try:
                    costs.append((removal_cost(state, u), u))
                except DisconnectedRemovalError:
                    continue
            _, drop = min(costs)
            group = [m for m in group if m != drop]
            state = state_init(g, group)
        candidates = sorted((v for v in range(g.n) if v not in state.member_set),
                            key=lambda v: (-add_estimate(state, v), v))
        accepted = False
        for v in candidates:
            group = sorted(group + [v])
            state = state_init(g, group)
            stats["evaluated"] += 1
            if len(group) < k:
                continue
            if state.raw_farness <= threshold:
                accepted = True
                swaps.append(tuple(sorted(set(old_group) - set(group))) +
                             tuple(sorted(set(group) - set(old_group))))
                break
            costs = []
            for u in group:
                try:
                    costs.append((removal_cost(state, u), u))
                except DisconnectedRemovalError:
                    continue
            _, drop = min(costs)
            group = [m for m in group if m != drop]
            state = state_init(g, group)
        if not accepted:
            group = old_group
            break
    stats["swaps"] = len(swaps)
    return _closeness_report(g, "multiswap-c", group, cfg, t0, stats,
                             swap_sequence=swaps)
