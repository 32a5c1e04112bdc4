"""Rooted genus-labeled trees indexing product-locus strata.

An extremal tree has a genus-1 root, genus-0 internal vertices of
valence >= 3, and leaves of positive genus.  Vertices of the canonical
form are numbered in depth-first order with children sorted by
canonical code; edges carry 1-based labels assigned in breadth-first
order (these are the z-variable indices used everywhere downstream).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial

from .polyring import Monomial, zvar


class TreeError(Exception):
    pass


class NotALeaf(TreeError):
    pass


Code = tuple  # nested (genus, (child codes...)) structure


def _code_str(code: Code) -> str:
    g, kids = code
    return "(%d%s)" % (g, "".join(_code_str(k) for k in kids))


def parse_code(s: str) -> Code:
    """Parse the printable canonical code back into its nested form."""
    pos = 0

    def node() -> Code:
        nonlocal pos
        if pos >= len(s) or s[pos] != "(":
            raise TreeError("expected '(' at %d in %r" % (pos, s))
        pos += 1
        start = pos
        while pos < len(s) and (s[pos].isdigit() or s[pos] == "-"):
            pos += 1
        if start == pos:
            raise TreeError("expected genus at %d in %r" % (pos, s))
        g = int(s[start:pos])
        kids = []
        while pos < len(s) and s[pos] == "(":
            kids.append(node())
        if pos >= len(s) or s[pos] != ")":
            raise TreeError("expected ')' at %d in %r" % (pos, s))
        pos += 1
        return (g, tuple(kids))

    out = node()
    if pos != len(s):
        raise TreeError("trailing input at %d in %r" % (pos, s))
    return out


def _code_aut(code: Code) -> int:
    g, kids = code
    order = 1
    for k in kids:
        order *= _code_aut(k)
    i = 0
    while i < len(kids):
        j = i
        while j < len(kids) and kids[j] == kids[i]:
            j += 1
        order *= factorial(j - i)
        i = j
    return order


def _code_edges(code: Code) -> int:
    g, kids = code
    return len(kids) + sum(_code_edges(k) for k in kids)


class ExtremalTree:
    """Canonical extremal tree.

    Attributes
    ----------
    genera : tuple of int, genus per vertex (vertex 0 is the root)
    parent : tuple, parent vertex id per vertex (None for the root)
    children : tuple of tuples, children in canonical order
    edge_label : dict, (parent, child) vertex pair -> 1-based z index
    code : printable canonical form
    aut_order : order of the root- and genus-preserving automorphism group
    """

    __slots__ = (
        "genera",
        "parent",
        "children",
        "edge_label",
        "code_struct",
        "code",
        "aut_order",
    )

    def __init__(self, code: Code):
        _validate_code(code)
        self.code_struct = code
        self.code = _code_str(code)
        self.aut_order = _code_aut(code)
        genera = []
        parent = []
        children = []

        def build(node: Code, par) -> int:
            vid = len(genera)
            genera.append(node[0])
            parent.append(par)
            children.append([])
            if par is not None:
                children[par].append(vid)
            for kid in node[1]:
                build(kid, vid)
            return vid

        build(code, None)
        self.genera = tuple(genera)
        self.parent = tuple(parent)
        self.children = tuple(tuple(c) for c in children)
        # breadth-first edge labels
        label = {}
        queue = [0]
        nxt = 1
        while queue:
            v = queue.pop(0)
            for w in self.children[v]:
                label[(v, w)] = nxt
                nxt += 1
                queue.append(w)
        self.edge_label = label

    # -- construction -------------------------------------------------

    @staticmethod
    def from_code(s: str) -> "ExtremalTree":
        return ExtremalTree(parse_code(s))

    @staticmethod
    def from_vertex_data(genera, edges, root) -> "ExtremalTree":
        """Canonicalize an arbitrary labeling of an extremal tree."""
        code, _ = canonicalize(genera, edges, root)
        return ExtremalTree(code)

    @staticmethod
    def star(leaf_genera) -> "ExtremalTree":
        kids = tuple(sorted((g, ()) for g in leaf_genera))
        return ExtremalTree((1, kids))

    # -- basic structure ------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_edges(self) -> int:
        return len(self.genera) - 1

    @property
    def genus(self) -> int:
        return sum(self.genera)

    def valence(self, v: int) -> int:
        return len(self.children[v]) + (0 if v == 0 else 1)

    def leaves(self) -> list:
        return [v for v in range(1, self.n_vertices) if not self.children[v]]

    def is_irreducible(self) -> bool:
        return all(self.parent[v] == 0 for v in range(1, self.n_vertices))

    def edges(self) -> list:
        """Edges as (parent, child) pairs in label order."""
        return sorted(self.edge_label, key=lambda e: self.edge_label[e])

    def path_labels(self, v: int) -> list:
        """z labels on the minimal path from vertex v up to the root."""
        out = []
        while self.parent[v] is not None:
            out.append(self.edge_label[(self.parent[v], v)])
            v = self.parent[v]
        return sorted(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtremalTree) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return "ExtremalTree(%s)" % self.code

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "root": 0,
            "vertices": [
                {"id": v, "genus": self.genera[v]} for v in range(self.n_vertices)
            ],
            "edges": [[u, w] for (u, w) in self.edges()],
            "aut": self.aut_order,
            "code": self.code,
        }


def _validate_code(code: Code, is_root: bool = True) -> None:
    g, kids = code
    if is_root:
        if g != 1:
            raise TreeError("root genus must be 1, got %d" % g)
        if not kids:
            raise TreeError("root must have at least one child")
    else:
        if not kids:
            if g < 1:
                raise TreeError("leaf genus must be positive")
        else:
            if g != 0:
                raise TreeError("internal vertex genus must be 0")
            if len(kids) + 1 < 3:
                raise TreeError("internal vertex valence must be >= 3")
    if list(kids) != sorted(kids):
        raise TreeError("children not in canonical order")
    for k in kids:
        _validate_code(k, is_root=False)


def canonicalize(genera, edges, root):
    """Canonical code of a genus-labeled rooted tree plus the vertex map.

    genera: map vertex -> genus; edges: iterable of unordered pairs.
    Returns (code, vertex_map) where vertex_map sends original vertex
    ids to canonical depth-first ids.
    """
    adj: dict = {v: [] for v in genera}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)

    def code_of(v, par) -> Code:
        kids = sorted(code_of(w, v) for w in adj[v] if w != par)
        return (genera[v], tuple(kids))

    code = code_of(root, None)
    # rebuild the map by descending both structures in parallel
    vertex_map = {}
    counter = [0]

    def assign(v, par, node: Code):
        vertex_map[v] = counter[0]
        counter[0] += 1
        kid_codes = [(code_of(w, v), w) for w in adj[v] if w != par]
        kid_codes.sort(key=lambda t: t[0])
        # children with equal codes are interchangeable; any stable
        # assignment yields the same canonical tree
        for kc, w in kid_codes:
            assign(w, v, kc)

    assign(root, None, code)
    return code, vertex_map


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _subtree_codes(h: int, edge_budget: int) -> tuple:
    """Canonical subtree codes of total genus h using <= edge_budget edges
    strictly below the subtree root (the edge to the parent not counted)."""
    out = [(h, ())] if h >= 1 else []
    if h >= 2 and edge_budget >= 2:
        # genus-0 vertex with >= 2 child subtrees of total genus h
        for kids in _child_multisets(h, edge_budget, None, 2):
            out.append((0, kids))
    return tuple(sorted(set(out)))


def _child_multisets(h: int, edge_budget: int, max_code, min_children: int) -> list:
    """Non-increasing tuples of subtree codes with genera summing to h.

    Each child consumes its own edges plus the edge joining it to the
    parent.  max_code bounds the first element (for canonical ordering).
    """
    results = []

    def rec(remaining: int, budget: int, bound, count: int, acc: list):
        if remaining == 0:
            if count >= min_children:
                results.append(tuple(reversed(acc)))
            return
        if budget < 1:
            return
        for h1 in range(1, remaining + 1):
            for sub in _subtree_codes(h1, budget - 1):
                if bound is not None and sub > bound:
                    continue
                cost = _code_edges(sub) + 1
                if cost > budget:
                    continue
                acc.append(sub)
                rec(remaining - h1, budget - cost, sub, count + 1, acc)
                acc.pop()

    rec(h, edge_budget, max_code, 0, [])
    return results


def enumerate_trees(g: int, max_edges: int) -> list:
    """All isomorphism classes of extremal trees of genus g with at most
    max_edges edges, in canonical-code order."""
    if g < 2:
        raise TreeError("genus must be >= 2")
    if max_edges < 1:
        raise TreeError("max_edges must be >= 1")
    codes = set()
    for kids in _child_multisets(g - 1, max_edges, None, 1):
        codes.add((1, tuple(sorted(kids))))
    return sorted((ExtremalTree(c) for c in codes), key=lambda t: t.code)


def aut_order(t: ExtremalTree) -> int:
    return t.aut_order


def aut_order_brute(t: ExtremalTree) -> int:
    """Automorphism order by explicit permutation search (small trees)."""
    from itertools import permutations

    n = t.n_vertices
    edges = {frozenset(e) for e in t.edges()}
    count = 0
    for perm in permutations(range(1, n)):
        full = (0,) + perm
        if any(t.genera[full[v]] != t.genera[v] for v in range(n)):
            continue
        if all(frozenset((full[u], full[w])) in edges for u, w in edges):
            count += 1
    return count


# ---------------------------------------------------------------------------
# smoothings / degenerations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Smoothing:
    """A tree T' this tree degenerates from, with its edge correspondence.

    edge_map sends each canonical z label of the target to the z label
    of the corresponding (non-contracted) edge of the degenerate tree;
    contracted holds the z labels of the edges collapsed inside parts.
    """

    target: ExtremalTree
    edge_map: tuple  # tuple of (target z label, source z label)
    contracted: frozenset

    def mapped_labels(self) -> list:
        return sorted(src for _, src in self.edge_map)


def smoothings(t: ExtremalTree) -> list:
    """All smoothing records, one per valid edge-contraction subset."""
    n = t.n_vertices
    edge_list = t.edges()  # in label order, label = index + 1
    out = []
    for r in range(1, len(edge_list) + 1):
        for subset in combinations(range(len(edge_list)), r):
            rec = _try_contract(t, edge_list, set(subset))
            if rec is not None:
                out.append(rec)
    out.sort(key=lambda s: (s.target.code, sorted(s.contracted)))
    return out


def _try_contract(t: ExtremalTree, edge_list, contracted_idx):
    # union-find over the contracted edges
    parent = list(range(t.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in contracted_idx:
        u, w = edge_list[i]
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw

    part_of = [find(v) for v in range(t.n_vertices)]
    part_ids = sorted(set(part_of))
    genus = {p: 0 for p in part_ids}
    for v in range(t.n_vertices):
        genus[part_of[v]] += t.genera[v]
    quotient_edges = []
    for i, (u, w) in enumerate(edge_list):
        if i not in contracted_idx:
            quotient_edges.append((part_of[u], part_of[w]))
    root_part = part_of[0]
    if genus[root_part] != 1:
        return None
    # validate quotient as an extremal tree
    valence = {p: 0 for p in part_ids}
    for u, w in quotient_edges:
        valence[u] += 1
        valence[w] += 1
    for p in part_ids:
        if p == root_part:
            continue
        if valence[p] == 1:
            if genus[p] < 1:
                return None
        else:
            if genus[p] != 0 or valence[p] < 3:
                return None
    code, vmap = canonicalize(genus, quotient_edges, root_part)
    target = ExtremalTree(code)
    edge_map = []
    for i, (u, w) in enumerate(edge_list):
        if i in contracted_idx:
            continue
        cu, cw = vmap[part_of[u]], vmap[part_of[w]]
        pair = (cu, cw) if (cu, cw) in target.edge_label else (cw, cu)
        edge_map.append((target.edge_label[pair], i + 1))
    contracted = frozenset(i + 1 for i in contracted_idx)
    return Smoothing(target=target, edge_map=tuple(sorted(edge_map)), contracted=contracted)


def mon(t: ExtremalTree, v: int) -> Monomial:
    """Product of edge variables on the root path of leaf v."""
    if v <= 0 or v >= t.n_vertices or t.children[v]:
        raise NotALeaf("vertex %d is not a leaf" % v)
    return tuple(sorted((zvar(i), 1) for i in t.path_labels(v)))


_depth_cache: dict = {}


def depth(t: ExtremalTree) -> int:
    """Length of the longest chain of nontrivial degenerations ending here."""
    got = _depth_cache.get(t.code)
    if got is not None:
        return got
    _depth_cache[t.code] = 0  # placeholder; smoothings strictly shrink edges
    records = smoothings(t)
    d = 0 if not records else 1 + max(depth(r.target) for r in records)
    _depth_cache[t.code] = d
    return d
