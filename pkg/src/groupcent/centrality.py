"""Group centrality objectives and the incremental group-distance state.

Group-harmonic centrality of a group S sums reciprocal distances from S to
every outside vertex (unreachable vertices contribute zero). Group farness
is kept internally as the raw integer sum of distances; group closeness
(n / raw) and normalized farness (raw / n) are derived views, so all swap
acceptance thresholds can be compared in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappop, heappush

from .graph import Graph, UNREACHABLE, multi_source_sssp


class DisconnectedFarnessError(ValueError):
    """Some vertex is unreachable from the group, so farness is undefined."""


class DisconnectedRemovalError(ValueError):
    """Removing this member would leave some vertex uncovered."""


@dataclass(frozen=True)
class ObjectiveValue:
    kind: str  # "harmonic" | "closeness" | "farness"
    value: float
    raw_sum: int | None = None


def harmonic_sum(dist, members) -> float:
    """Sum of reciprocal distances over vertices outside ``members``."""
    total = 0.0
    for x, d in enumerate(dist):
        if x in members or d == UNREACHABLE:
            continue
        total += 1.0 / d
    return total


def group_harmonic(g: Graph, group) -> ObjectiveValue:
    members = set(group)
    _validate_group(g, members)
    dist = multi_source_sssp(g, members)
    return ObjectiveValue("harmonic", harmonic_sum(dist, members))


def group_farness_raw(g: Graph, group) -> int:
    """Exact integer sum of dist(S, v) over v outside S."""
    members = set(group)
    _validate_group(g, members)
    dist = multi_source_sssp(g, members)
    total = 0
    for x, d in enumerate(dist):
        if x in members:
            continue
        if d == UNREACHABLE:
            raise DisconnectedFarnessError(f"vertex {x} unreachable from group")
        total += d
    return total


def closeness_value(raw: int, n: int) -> ObjectiveValue:
    return ObjectiveValue("closeness", n / raw, raw)


def farness_value(raw: int, n: int) -> ObjectiveValue:
    return ObjectiveValue("farness", raw / n, raw)


def _validate_group(g, members):
    if not members:
        raise ValueError("empty group")
    for u in members:
        if not 0 <= u < g.n:
            raise ValueError(f"vertex {u} out of range")


@dataclass
class GroupDistanceState:
    """Nearest / second-nearest member distances for a current group.

    ``dist_second[x]`` is the distance from the group without x's nearest
    member, which makes the farness increase of any single removal an O(n)
    scan. ``raw_farness`` is None when some vertex is unreachable from the
    group (harmonic contexts tolerate that, farness contexts must not).
    """

    graph: Graph = field(repr=False)
    members: tuple[int, ...]
    member_set: frozenset[int] = field(repr=False)
    dist_nearest: list = field(repr=False)
    nearest_member: list = field(repr=False)
    dist_second: list = field(repr=False)
    raw_farness: int | None


def state_init(g: Graph, group) -> GroupDistanceState:
    """Single traversal keeping the best two labels with distinct origins.

    Labels pop in (distance, origin) order, so at ties the nearest member
    recorded for a vertex is the one with the smallest id.
    """
    members = sorted(set(group))
    _validate_group(g, members)
    n, indptr, targets, wts = g.n, g.indptr, g.targets, g.weights
    nearest = [UNREACHABLE] * n
    rep = [-1] * n
    second = [UNREACHABLE] * n
    heap = [(0, s, s) for s in members]
    while heap:
        d, r, x = heappop(heap)
        if rep[x] == r or second[x] != UNREACHABLE:
            continue
        if rep[x] == -1:
            rep[x] = r
            nearest[x] = d
        else:
            second[x] = d
        for i in range(indptr[x], indptr[x + 1]):
            y = targets[i]
            if second[y] == UNREACHABLE and rep[y] != r:
                heappush(heap, (d + wts[i], r, y))
    member_set = frozenset(members)
    raw: int | None = 0
    for x in range(n):
        if x in member_set:
            continue
        d = nearest[x]
        if d == UNREACHABLE:
            raw = None
            break
        raw += d
    return GroupDistanceState(
        graph=g,
        members=tuple(members),
        member_set=member_set,
        dist_nearest=nearest,
        nearest_member=rep,
        dist_second=second,
        raw_farness=raw,
    )


def removal_cost(state: GroupDistanceState, u: int) -> int:
    """Exact raw-farness increase from dropping member u, in one O(n) scan."""
    if u not in state.member_set:
        raise ValueError(f"{u} is not a group member")
    if len(state.members) < 2:
        raise ValueError("removal from a single-member group")
    rep = state.nearest_member
    d1 = state.dist_nearest
    d2 = state.dist_second
    cost = 0
    for x in range(state.graph.n):
        if x == u or x in state.member_set:
            continue
        if rep[x] == u:
            if d2[x] == UNREACHABLE:
                raise DisconnectedRemovalError(
                    f"removing {u} disconnects vertex {x}")
            cost += d2[x] - d1[x]
    if d2[u] == UNREACHABLE:
        raise DisconnectedRemovalError(f"removing {u} leaves it uncovered")
    return cost + d2[u]


def patched_distances(state: GroupDistanceState, u: int) -> list:
    """Distances from the group without member u, derived in O(n)."""
    if u not in state.member_set:
        raise ValueError(f"{u} is not a group member")
    rep = state.nearest_member
    d2 = state.dist_second
    out = state.dist_nearest.copy()
    for x in range(state.graph.n):
        if rep[x] == u:
            out[x] = d2[x]
    return out


def state_apply_swap(state: GroupDistanceState, u: int, v: int) -> GroupDistanceState:
    """State for (S + v) - u, rebuilt from scratch."""
    if u not in state.member_set:
        raise ValueError(f"{u} is not a group member")
    if v in state.member_set:
        raise ValueError(f"{v} already in group")
    new_members = [m for m in state.members if m != u] + [v]
    return state_init(state.graph, new_members)
