"""Graph representation, edge-list parsing, and shortest-path kernels.

Vertices are dense integers ``0..n-1``. Edge weights are positive integers,
so every finite distance is an exact int. ``UNREACHABLE`` (float infinity)
marks missing paths: reciprocals vanish (``1.0/inf == 0.0``) and comparisons
behave, without any "large finite number" sentinel tricks.

Edge-list text format: one edge per line, ``u v [w]`` with integer tokens.
Lines starting with ``%`` or ``#`` and blank lines are ignored. File vertex
ids are arbitrary non-negative integers and are remapped to ``0..n-1`` in
first-appearance order.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from collections import deque
from heapq import heappop, heappush

UNREACHABLE = math.inf


class GraphError(ValueError):
    """Invalid graph input."""


class EdgeListFormatError(GraphError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class IsolatedVertexError(GraphError):
    pass


class Graph:
    """Immutable weighted graph in compressed adjacency form.

    Undirected graphs store each edge in both adjacency lists with equal
    weight; directed graphs additionally keep a reverse-adjacency view.
    Duplicate edges are collapsed keeping the minimum weight and self-loops
    are dropped, so distances are always well defined.
    """

    __slots__ = (
        "n", "directed", "indptr", "targets", "weights",
        "rindptr", "rtargets", "rweights",
        "min_weight", "max_weight", "unit_weights", "_edges",
    )

    def __init__(self, n: int, edges, directed: bool = False, check_isolated: bool = True):
        if n < 1:
            raise GraphError("empty graph")
        dedup: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if w < 1:
                raise GraphError(f"nonpositive weight {w} on edge ({u},{v})")
            if u == v:
                continue
            key = (u, v) if directed else (min(u, v), max(u, v))
            old = dedup.get(key)
            if old is None or w < old:
                dedup[key] = w
        canonical = sorted((u, v, w) for (u, v), w in dedup.items())
        if check_isolated:
            touched = set()
            for u, v, _ in canonical:
                touched.add(u)
                touched.add(v)
            if len(touched) != n:
                missing = sorted(set(range(n)) - touched)
                raise IsolatedVertexError(f"isolated vertices: {missing}")

        self.n = n
        self.directed = directed
        self._edges = canonical
        self.indptr, self.targets, self.weights = _build_csr(n, canonical, directed, reverse=False)
        if directed:
            self.rindptr, self.rtargets, self.rweights = _build_csr(n, canonical, directed, reverse=True)
        else:
            self.rindptr, self.rtargets, self.rweights = self.indptr, self.targets, self.weights
        ws = [w for _, _, w in canonical]
        self.min_weight = min(ws) if ws else 1
        self.max_weight = max(ws) if ws else 1
        self.unit_weights = self.max_weight == 1

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def lambda_ratio(self) -> float:
        """Ratio of smallest to largest edge weight (1.0 when unweighted)."""
        return self.min_weight / self.max_weight

    def out_degree(self, u: int) -> int:
        return self.indptr[u + 1] - self.indptr[u]

    def in_degree(self, u: int) -> int:
        return self.rindptr[u + 1] - self.rindptr[u]

    def neighbors(self, u: int):
        lo, hi = self.indptr[u], self.indptr[u + 1]
        return list(zip(self.targets[lo:hi], self.weights[lo:hi]))

    def in_neighbors(self, u: int):
        lo, hi = self.rindptr[u], self.rindptr[u + 1]
        return list(zip(self.rtargets[lo:hi], self.rweights[lo:hi]))

    def edges(self):
        """Canonical edge triples (u, v, w); one per undirected edge."""
        return list(self._edges)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(f"{int(self.directed)}\n{self.n}\n".encode())
        for u, v, w in self._edges:
            h.update(f"{u} {v} {w}\n".encode())
        return h.hexdigest()[:16]


def _build_csr(n, edges, directed, reverse):
    deg = [0] * n
    for u, v, _ in edges:
        if reverse:
            u, v = v, u
        deg[u] += 1
        if not directed:
            deg[v] += 1
    indptr = [0] * (n + 1)
    for i in range(n):
        indptr[i + 1] = indptr[i] + deg[i]
    targets = [0] * indptr[n]
    weights = [0] * indptr[n]
    cursor = indptr[:-1].copy()
    for u, v, w in edges:
        if reverse:
            u, v = v, u
        targets[cursor[u]] = v
        weights[cursor[u]] = w
        cursor[u] += 1
        if not directed:
            targets[cursor[v]] = u
            weights[cursor[v]] = w
            cursor[v] += 1
    # sort each adjacency slice by target id for deterministic traversal order
    for u in range(n):
        lo, hi = indptr[u], indptr[u + 1]
        if hi - lo > 1:
            order = sorted(zip(targets[lo:hi], weights[lo:hi]))
            targets[lo:hi] = [t for t, _ in order]
            weights[lo:hi] = [w for _, w in order]
    return indptr, targets, weights


def load_edge_list(path, directed: bool = False, weighted: bool = False,
                   on_isolated: str = "drop") -> Graph:
    """Parse a whitespace edge list into a Graph.

    ``on_isolated`` controls what happens to vertices left without any edge
    after self-loop removal: "drop" (default, with a warning) or "fail".
    """
    if on_isolated not in ("drop", "fail"):
        raise ValueError("on_isolated must be 'drop' or 'fail'")
    remap: dict[int, int] = {}
    triples: list[tuple[int, int, int]] = []
    expected = 3 if weighted else 2
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line[0] in "%#":
                continue
            tokens = line.split()
            if len(tokens) != expected:
                raise EdgeListFormatError(
                    line_no, f"expected {expected} tokens, got {len(tokens)}")
            try:
                nums = [int(t) for t in tokens]
            except ValueError:
                raise EdgeListFormatError(line_no, f"non-integer token in {line!r}") from None
            fu, fv = nums[0], nums[1]
            w = nums[2] if weighted else 1
            if fu < 0 or fv < 0:
                raise EdgeListFormatError(line_no, "negative vertex id")
            if w < 1:
                raise EdgeListFormatError(line_no, f"nonpositive weight {w}")
            for fid in (fu, fv):
                if fid not in remap:
                    remap[fid] = len(remap)
            triples.append((remap[fu], remap[fv], w))
    if not triples:
        raise GraphError(f"{path}: empty graph")
    n = len(remap)
    touched = set()
    for u, v, _ in triples:
        if u != v:
            touched.add(u)
            touched.add(v)
    if len(touched) != n:
        missing = sorted(set(range(n)) - touched)
        if on_isolated == "fail":
            raise IsolatedVertexError(f"{path}: isolated vertices {missing}")
        warnings.warn(f"{path}: dropping {len(missing)} isolated vertices")
        keep = sorted(touched)
        compress = {old: new for new, old in enumerate(keep)}
        triples = [(compress[u], compress[v], w) for u, v, w in triples if u != v]
        n = len(keep)
        if n == 0:
            raise GraphError(f"{path}: empty graph")
    return Graph(n, triples, directed=directed)


def sssp(g: Graph, source: int):
    """Exact distances from one source; UNREACHABLE where no path exists."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    return _shortest_paths(g, (source,))


def multi_source_sssp(g: Graph, sources):
    """Elementwise-minimum distances from a nonempty set of sources."""
    seeds = sorted(set(sources))
    if not seeds:
        raise ValueError("empty source set")
    for s in seeds:
        if not 0 <= s < g.n:
            raise ValueError(f"source {s} out of range")
    return _shortest_paths(g, seeds)


def _shortest_paths(g, seeds):
    n, indptr, targets = g.n, g.indptr, g.targets
    dist = [UNREACHABLE] * n
    if g.unit_weights:
        q = deque(seeds)
        for s in seeds:
            dist[s] = 0
        while q:
            u = q.popleft()
            nd = dist[u] + 1
            for i in range(indptr[u], indptr[u + 1]):
                v = targets[i]
                if nd < dist[v]:
                    dist[v] = nd
                    q.append(v)
        return dist
    wts = g.weights
    heap = [(0, s) for s in seeds]
    for s in seeds:
        dist[s] = 0
    done = bytearray(n)
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = 1
        for i in range(indptr[u], indptr[u + 1]):
            v = targets[i]
            nd = d + wts[i]
            if nd < dist[v]:
                dist[v] = nd
                heappush(heap, (nd, v))
    return dist


def connected_component_ids(g: Graph):
    """Per-vertex component id for the underlying undirected structure."""
    n = g.n
    comp = [-1] * n
    cid = 0
    for root in range(n):
        if comp[root] != -1:
            continue
        comp[root] = cid
        q = deque([root])
        while q:
            u = q.popleft()
            for v, _ in _all_touching(g, u):
                if comp[v] == -1:
                    comp[v] = cid
                    q.append(v)
        cid += 1
    return comp, cid


def _all_touching(g, u):
    yield from zip(g.targets[g.indptr[u]:g.indptr[u + 1]],
                   g.weights[g.indptr[u]:g.indptr[u + 1]])
    if g.directed:
        yield from zip(g.rtargets[g.rindptr[u]:g.rindptr[u + 1]],
                       g.rweights[g.rindptr[u]:g.rindptr[u + 1]])


def strongly_connected_components(g: Graph):
    """Iterative Tarjan. Returns (comp ids, count); components are numbered
    in emission order, which is reverse topological order of the condensation
    (every arc leaving a component points at a lower-numbered one)."""
    n, indptr, targets = g.n, g.indptr, g.targets
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comp = [-1] * n
    counter = 0
    cid = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            u, off = work[-1]
            if off == 0:
                index[u] = low[u] = counter
                counter += 1
                stack.append(u)
                on_stack[u] = 1
            descended = False
            for i in range(indptr[u] + off, indptr[u + 1]):
                v = targets[i]
                if index[v] == -1:
                    work[-1] = (u, i - indptr[u] + 1)
                    work.append((v, 0))
                    descended = True
                    break
                if on_stack[v] and index[v] < low[u]:
                    low[u] = index[v]
            if descended:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
            if low[u] == index[u]:
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp[w] = cid
                    if w == u:
                        break
                cid += 1
    return comp, cid


def is_connected(g: Graph) -> bool:
    """Connected (undirected) or strongly connected (directed)."""
    if g.n == 1:
        return True

    def covers_all(indptr, targets):
        seen = bytearray(g.n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for i in range(indptr[u], indptr[u + 1]):
                v = targets[i]
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    stack.append(v)
        return count == g.n

    if not covers_all(g.indptr, g.targets):
        return False
    return not g.directed or covers_all(g.rindptr, g.rtargets)


def largest_component(g: Graph) -> Graph:
    """Induced subgraph on the largest (strongly) connected vertex set.

    Ties go to the component containing the smallest vertex id; surviving
    ids are remapped densely in ascending order.
    """
    if g.directed:
        comp, cid = strongly_connected_components(g)
    else:
        comp, cid = connected_component_ids(g)
    groups: list[list[int]] = [[] for _ in range(cid)]
    for v in range(g.n):
        groups[comp[v]].append(v)
    best = min(groups, key=lambda vs: (-len(vs), vs[0]))
    keep = set(best)
    remap = {old: new for new, old in enumerate(sorted(best))}
    edges = [(remap[u], remap[v], w) for u, v, w in g._edges
             if u in keep and v in keep]
    return Graph(len(best), edges, directed=g.directed, check_isolated=False)


def reachable_counts(g: Graph):
    """r(u): number of vertices reachable from u, u included.

    Undirected graphs use component sizes. Directed graphs compute exact
    reachable-set sizes on the strongly-connected condensation with bitset
    unions, which is quadratic in the component count; fine at the scales
    this library targets.
    """
    n = g.n
    if not g.directed:
        comp, cid = connected_component_ids(g)
        sizes = [0] * cid
        for v in range(n):
            sizes[comp[v]] += 1
        return [sizes[comp[v]] for v in range(n)]
    comp, cid = strongly_connected_components(g)
    sizes = [0] * cid
    for v in range(n):
        sizes[comp[v]] += 1
    succ: list[set[int]] = [set() for _ in range(cid)]
    indptr, targets = g.indptr, g.targets
    for u in range(n):
        cu = comp[u]
        for i in range(indptr[u], indptr[u + 1]):
            cv = comp[targets[i]]
            if cv != cu:
                succ[cu].add(cv)
    masks = [0] * cid
    counts = [0] * cid
    for c in range(cid):  # successors always have smaller ids
        m = 1 << c
        for d in succ[c]:
            m |= masks[d]
        masks[c] = m
        total = 0
        mm = m
        while mm:
            lsb = mm & -mm
            total += sizes[lsb.bit_length() - 1]
            mm ^= lsb
        counts[c] = total
    return [counts[comp[v]] for v in range(n)]
