import random

import pytest

from torex.polyring import zvar
from torex.trees import (
    ExtremalTree,
    NotALeaf,
    TreeError,
    aut_order_brute,
    canonicalize,
    depth,
    enumerate_trees,
    mon,
    parse_code,
    smoothings,
)


def partitions_count(n):
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


class TestEnumeration:
    @pytest.mark.parametrize(
        "g,max_edges,count", [(4, 3, 4), (5, 4, 10), (6, 5, 24)]
    )
    def test_inventory_counts(self, g, max_edges, count):
        trees = enumerate_trees(g, max_edges)
        assert len(trees) == count
        assert [t.code for t in trees] == sorted(t.code for t in trees)
        assert all(t.genus == g and t.n_edges <= max_edges for t in trees)

    def test_each_class_once(self):
        codes = [t.code for t in enumerate_trees(6, 5)]
        assert len(codes) == len(set(codes))

    @pytest.mark.parametrize("g", range(2, 9))
    def test_irreducible_count_is_partitions(self, g):
        trees = enumerate_trees(g, g - 1)
        irr = [t for t in trees if t.is_irreducible()]
        assert len(irr) == partitions_count(g - 1)

    def test_validation(self):
        with pytest.raises(TreeError):
            ExtremalTree.from_code("(2(1))")  # bad root genus
        with pytest.raises(TreeError):
            ExtremalTree.from_code("(1(0(1)))")  # 2-valent genus-0 vertex
        with pytest.raises(TreeError):
            ExtremalTree.from_code("(1(0(0)(1)))")  # genus-0 leaf


class TestAutomorphisms:
    def test_known_orders(self):
        assert ExtremalTree.star([1, 1, 1, 1]).aut_order == 24
        assert ExtremalTree.star([1, 1, 1, 1, 1]).aut_order == 120
        assert ExtremalTree.from_code("(1(4))").aut_order == 1

    def test_genus6_weight_list(self):
        irr = [t for t in enumerate_trees(6, 5) if t.is_irreducible()]
        assert sorted(t.aut_order for t in irr) == [1, 1, 1, 2, 2, 6, 120]

    def test_brute_force_agreement(self):
        for g in range(2, 7):
            for t in enumerate_trees(g, g - 1):
                if t.n_vertices <= 8:
                    assert t.aut_order == aut_order_brute(t), t.code


class TestCanonicalCode:
    def test_relabeling_invariance(self):
        rng = random.Random(42)
        for t in enumerate_trees(6, 5):
            ids = list(range(t.n_vertices))
            for _ in range(5):
                perm = ids[:]
                rng.shuffle(perm)
                genera = {perm[v]: t.genera[v] for v in ids}
                edges = [(perm[u], perm[w]) for u, w in t.edges()]
                rng.shuffle(edges)
                code, _ = canonicalize(genera, edges, perm[0])
                assert ExtremalTree(code).code == t.code

    def test_parse_roundtrip(self):
        for t in enumerate_trees(5, 4):
            assert ExtremalTree.from_code(t.code).code == t.code

    def test_parse_rejects_garbage(self):
        for bad in ["", "(1", "1)", "(1)x", "(x)"]:
            with pytest.raises(TreeError):
                parse_code(bad)


class TestSmoothings:
    def test_depth_one_pair(self):
        t = ExtremalTree.from_code("(1(0(1)(2)))")
        records = smoothings(t)
        targets = sorted(r.target.code for r in records)
        assert targets == ["(1(1)(2))", "(1(3))"]

    def test_irreducible_has_none(self):
        for code in ["(1(1)(2))", "(1(4))", "(1(1)(1)(1))"]:
            assert smoothings(ExtremalTree.from_code(code)) == []

    def test_deep_tree_has_six(self):
        t = ExtremalTree.from_code("(1(0(0(1)(1))(3)))")
        records = smoothings(t)
        assert len(records) == 6
        assert sorted(r.target.code for r in records) == [
            "(1(0(1)(1)(3)))",
            "(1(0(1)(1))(3))",
            "(1(0(2)(3)))",
            "(1(1)(1)(3))",
            "(1(2)(3))",
            "(1(5))",
        ]

    def test_strict_partial_order(self):
        for t in enumerate_trees(6, 5):
            for rec in smoothings(t):
                assert rec.target.n_edges < t.n_edges
                assert rec.target.genus == t.genus

    def test_edge_maps_are_injective(self):
        for t in enumerate_trees(6, 5):
            for rec in smoothings(t):
                sources = [src for _, src in rec.edge_map]
                assert len(sources) == len(set(sources))
                assert len(rec.edge_map) == rec.target.n_edges
                assert set(sources) | set(rec.contracted) == set(
                    range(1, t.n_edges + 1)
                )


class TestMonomials:
    def test_one_edge_leaf(self):
        t = ExtremalTree.from_code("(1(4))")
        assert mon(t, 1) == ((zvar(1), 1),)

    def test_depth_one_leaf(self):
        t = ExtremalTree.from_code("(1(0(1)(2)))")
        leaf = next(v for v in t.leaves() if t.genera[v] == 1)
        assert mon(t, leaf) == tuple(sorted(((zvar(1), 1), (zvar(2), 1))))

    def test_root_adjacent_leaf_in_mixed_tree(self):
        t = ExtremalTree.from_code("(1(0(1)(3))(1))")
        leaf = next(v for v in t.leaves() if t.parent[v] == 0)
        assert mon(t, leaf) == ((zvar(2), 1),)

    def test_rejects_non_leaf(self):
        t = ExtremalTree.from_code("(1(0(1)(2)))")
        with pytest.raises(NotALeaf):
            mon(t, 0)
        with pytest.raises(NotALeaf):
            mon(t, 1)


class TestDepth:
    def test_known_depths(self):
        assert depth(ExtremalTree.from_code("(1(5))")) == 0
        assert depth(ExtremalTree.from_code("(1(0(1)(2)))")) == 1
        assert depth(ExtremalTree.from_code("(1(0(0(1)(1))(3)))")) == 2

    def test_matches_longest_chain_oracle(self):
        # brute-force longest degeneration chain over the whole poset
        trees = enumerate_trees(6, 5)
        preds = {
            t.code: {r.target.code for r in smoothings(t)} for t in trees
        }
        longest = {}

        def chain(code):
            if code not in longest:
                below = preds[code]
                longest[code] = 0 if not below else 1 + max(chain(b) for b in below)
            return longest[code]
        for t in trees:
            assert depth(t) == chain(t.code), t.code


class TestJson:
    def test_schema_fields(self):
        t = ExtremalTree.from_code("(1(0(1)(2)))")
        data = t.to_json()
        assert data["genus"] == 4
        assert data["root"] == 0
        assert {v["id"] for v in data["vertices"]} == set(range(4))
        assert sorted(data["edges"]) == [[0, 1], [1, 2], [1, 3]]
        assert data["aut"] == 1
        assert data["code"] == t.code
