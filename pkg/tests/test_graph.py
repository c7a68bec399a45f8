import random
from itertools import combinations

import pytest

from groupcent.graph import (EdgeListFormatError, Graph, GraphError,
                             IsolatedVertexError, UNREACHABLE, is_connected,
                             largest_component, load_edge_list,
                             multi_source_sssp, reachable_counts, sssp)
from groupcent.generators import random_graph


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoader:
    def test_smallest_path(self, tmp_path):
        g = load_edge_list(write(tmp_path, "0 1\n1 2\n"))
        assert g.n == 3
        assert g.num_edges == 2
        assert g.unit_weights

    def test_comment_styles_skipped(self, tmp_path):
        g = load_edge_list(write(tmp_path, "% percent header\n# hash comment\n\n0 1\n"))
        assert g.n == 2

    def test_weighted_lambda(self, tmp_path):
        g = load_edge_list(write(tmp_path, "0 1 2\n1 2 1\n"), weighted=True)
        assert sorted(w for _, _, w in g.edges()) == [1, 2]
        assert g.lambda_ratio == 0.5

    def test_malformed_line_reports_number(self, tmp_path):
        with pytest.raises(EdgeListFormatError, match="line 3"):
            load_edge_list(write(tmp_path, "0 1\n1 2\nbroken line here\n"))

    def test_token_count_mismatch(self, tmp_path):
        with pytest.raises(EdgeListFormatError, match="line 1"):
            load_edge_list(write(tmp_path, "0 1 7\n"))  # weighted line, unweighted parse

    def test_nonpositive_weight(self, tmp_path):
        with pytest.raises(EdgeListFormatError, match="nonpositive"):
            load_edge_list(write(tmp_path, "0 1 0\n"), weighted=True)

    def test_empty_graph(self, tmp_path):
        with pytest.raises(GraphError, match="empty"):
            load_edge_list(write(tmp_path, "% nothing here\n"))

    def test_duplicate_edges_keep_min_weight(self, tmp_path):
        g = load_edge_list(write(tmp_path, "0 1 5\n1 0 2\n"), weighted=True)
        assert g.edges() == [(0, 1, 2)]

    def test_self_loop_only_vertex_dropped_with_warning(self, tmp_path):
        with pytest.warns(UserWarning, match="isolated"):
            g = load_edge_list(write(tmp_path, "5 5\n0 1\n"))
        assert g.n == 2

    def test_isolated_fail_mode(self, tmp_path):
        with pytest.raises(IsolatedVertexError):
            load_edge_list(write(tmp_path, "5 5\n0 1\n"), on_isolated="fail")

    def test_first_appearance_remap(self, tmp_path):
        g = load_edge_list(write(tmp_path, "30 10\n10 20\n"))
        # 30 -> 0, 10 -> 1, 20 -> 2
        assert g.edges() == [(0, 1, 1), (1, 2, 1)]

    def test_negative_id_rejected(self, tmp_path):
        with pytest.raises(EdgeListFormatError, match="negative"):
            load_edge_list(write(tmp_path, "0 1\n-2 1\n"))


class TestLargestComponent:
    def test_two_triangles_tie_to_smallest_id(self):
        edges = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
        g = largest_component(Graph(6, edges))
        assert g.n == 3
        assert g.edges() == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]

    def test_directed_two_cycle_with_dangling_arc(self):
        g = Graph(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1)], directed=True)
        lc = largest_component(g)
        assert lc.n == 2
        assert lc.edges() == [(0, 1, 1), (1, 0, 1)]

    def test_connected_graph_identity(self):
        g = Graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
        lc = largest_component(g)
        assert lc.n == 4
        assert lc.edges() == g.edges()


class TestShortestPaths:
    def test_unit_path(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1)])
        assert sssp(g, 0) == [0, 1, 2]

    def test_directed_arc_has_no_reverse_path(self):
        g = Graph(2, [(0, 1, 1)], directed=True)
        assert sssp(g, 1) == [UNREACHABLE, 0]

    def test_weighted_relaxation(self):
        g = Graph(3, [(0, 1, 3), (0, 2, 1), (2, 1, 1)])
        assert sssp(g, 0)[1] == 2

    def test_multi_source_single_matches_sssp(self):
        rng = random.Random(0)
        g = random_graph(12, rng)
        for s in range(g.n):
            assert multi_source_sssp(g, [s]) == sssp(g, s)

    def test_multi_source_path_ends(self):
        g = Graph(5, [(i, i + 1, 1) for i in range(4)])
        assert multi_source_sssp(g, [0, 4]) == [0, 1, 2, 1, 0]

    def test_multi_source_empty_rejected(self):
        g = Graph(2, [(0, 1, 1)])
        with pytest.raises(ValueError):
            multi_source_sssp(g, [])

    def test_multi_source_is_elementwise_min_exhaustive(self):
        # every source subset of size <= 4 on a random 15-vertex graph
        rng = random.Random(1)
        g = random_graph(15, rng, weights=(1, 2, 3))
        per_source = [sssp(g, s) for s in range(g.n)]
        for size in range(1, 5):
            for subset in combinations(range(g.n), size):
                expected = [min(per_source[s][v] for s in subset)
                            for v in range(g.n)]
                assert multi_source_sssp(g, subset) == expected

    def test_undirected_distances_symmetric(self):
        rng = random.Random(2)
        for _ in range(5):
            g = random_graph(10, rng, weights=(1, 2))
            table = [sssp(g, s) for s in range(g.n)]
            for u in range(g.n):
                for v in range(g.n):
                    assert table[u][v] == table[v][u]

    def test_edge_relaxation_triangle_inequality(self):
        rng = random.Random(3)
        for directed in (False, True):
            g = random_graph(12, rng, directed=directed, weights=(1, 2, 3))
            for s in range(g.n):
                d = sssp(g, s)
                for u, v, w in g.edges():
                    if d[u] != UNREACHABLE:
                        assert d[v] <= d[u] + w
                    if not directed and d[v] != UNREACHABLE:
                        assert d[u] <= d[v] + w


class TestReachableCounts:
    def test_connected_undirected_all_n(self):
        rng = random.Random(4)
        g = random_graph(9, rng)
        assert reachable_counts(g) == [9] * 9

    def test_directed_path(self):
        g = Graph(3, [(0, 1, 1), (1, 2, 1)], directed=True)
        assert reachable_counts(g) == [3, 2, 1]

    def _dfs_counts(self, g):
        counts = []
        for s in range(g.n):
            seen = {s}
            stack = [s]
            while stack:
                u = stack.pop()
                for v, _ in g.neighbors(u):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            counts.append(len(seen))
        return counts

    def test_matches_dfs_oracle_small(self):
        rng = random.Random(5)
        for _ in range(20):
            n = rng.randrange(4, 14)
            edges = [(rng.randrange(n), rng.randrange(n), 1) for _ in range(3 * n)]
            edges += [(i, (i + 1) % n, 1) for i in range(n)]  # avoid isolated
            g = Graph(n, edges, directed=True)
            assert reachable_counts(g) == self._dfs_counts(g)

    def test_matches_dfs_oracle_200(self):
        rng = random.Random(6)
        n = 200
        edges = [(rng.randrange(n), rng.randrange(n), 1) for _ in range(500)]
        edges += [(i, (i + 1) % n, 1) for i in range(0, n - 1, 2)]
        edges += [(i, rng.randrange(n), 1) for i in range(n)]
        g = Graph(n, edges, directed=True)
        assert reachable_counts(g) == self._dfs_counts(g)


def test_is_connected():
    assert is_connected(Graph(3, [(0, 1, 1), (1, 2, 1)]))
    assert not is_connected(Graph(4, [(0, 1, 1), (2, 3, 1)]))
    assert is_connected(Graph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)], directed=True))
    assert not is_connected(Graph(3, [(0, 1, 1), (1, 2, 1)], directed=True))
