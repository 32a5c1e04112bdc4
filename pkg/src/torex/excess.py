"""Excess-intersection contributions attached to extremal trees.

Every tree T with n edges and k leaves has a torus-equivariant local
model: coordinates z_e on C^n, a rank (g-1) bundle with total Chern
class

    c(N) = prod_leaves (1 + sum_{e in path(v)} z_e) * prod_j (1 + l_j),

and a section whose components are the leaf path monomials.  The
contribution Cont_T is the homogeneous degree g-1-n polynomial in the
z_e and the formal Chern classes c_i(N) solving

    Cont_T * prod_e z_e  =  c_{g-1}(N) - sum_{T'} (prod_{e in E(T')} z_e) * Cont_{T'}

over all smoothings T' of T; irreducible trees (no smoothings) are the
base case.  A closed formula computes the same polynomial as the degree
g-1-n part of the Taylor part of

    (-1)^k * prod_v (1 + sum_{e in path(v)} z_e)^(val(v)-2) / prod_e z_e

multiplied by the formal total class c(N).  The two routes are kept
independent and cross-checked against each other.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .polyring import (
    Poly,
    cvar,
    elem_sym_rewrite,
    lvar,
    prod,
    zvar,
)
from .trees import ExtremalTree, enumerate_trees, smoothings


class ExcessError(Exception):
    pass


class NotIrreducible(ExcessError):
    pass


class MissingSmoothing(ExcessError):
    pass


@dataclass(frozen=True)
class LocalModel:
    tree: ExtremalTree
    g: int
    k: int
    n: int
    ell_count: int
    leaf_factor: Poly  # prod over leaves of (1 + sum of path z's)
    total_chern: Poly  # leaf_factor * prod_j (1 + l_j)


def local_model(t: ExtremalTree, g: int) -> LocalModel:
    if t.genus != g:
        raise ExcessError("tree has genus %d, expected %d" % (t.genus, g))
    k = len(t.leaves())
    n = t.n_edges
    ell_count = g - 1 - k
    if ell_count < 0:
        raise ExcessError("more leaves than g-1")
    A = Poly.const(1)
    for v in t.leaves():
        s = Poly.const(1)
        for i in t.path_labels(v):
            s = s + Poly.var(zvar(i))
        A = A * s
    total = A
    for j in range(1, ell_count + 1):
        total = total * (Poly.const(1) + Poly.var(lvar(j)))
    return LocalModel(tree=t, g=g, k=k, n=n, ell_count=ell_count,
                      leaf_factor=A, total_chern=total)


@dataclass(frozen=True)
class Contribution:
    """Cont_T in the edge variables z_e and formal Chern classes c_i."""

    tree: ExtremalTree
    g: int
    poly: Poly

    @property
    def degree(self) -> int:
        return self.g - 1 - self.tree.n_edges

    def __str__(self) -> str:
        return str(self.poly)


def _formal_total_class(max_deg: int) -> Poly:
    out = Poly.const(1)
    for i in range(1, max_deg + 1):
        out = out + Poly.var(cvar(i))
    return out


def base_contribution(t: ExtremalTree, g: int) -> Contribution:
    """Excess class of an irreducible component, in (Z, c(N)) form."""
    if not t.is_irreducible():
        raise NotIrreducible(t.code)
    lm = local_model(t, g)
    d = g - 1 - lm.k
    denom = prod(
        (Poly.const(1) + Poly.var(zvar(i)) for i in range(1, lm.n + 1))
    )
    series = (_formal_total_class(d) * denom.series_inverse(d)).truncate(d)
    return Contribution(tree=t, g=g, poly=series.graded_part(d))


def recursion_contribution(t: ExtremalTree, g: int, cache: dict) -> Contribution:
    """Solve the inductive equation for Cont_T.

    cache maps canonical codes of all smoothings of t to their
    Contributions (transported automatically through each edge map).
    """
    lm = local_model(t, g)
    rhs = lm.total_chern.graded_part(g - 1)
    for rec in smoothings(t):
        got = cache.get(rec.target.code)
        if got is None:
            raise MissingSmoothing(rec.target.code)
        transported = _transport(got.poly, rec.edge_map, lm)
        factor = Poly.const(1)
        for src in rec.mapped_labels():
            factor = factor * Poly.var(zvar(src))
        rhs = rhs - factor * transported
    all_edges = tuple(sorted((zvar(i), 1) for i in range(1, lm.n + 1)))
    quotient = rhs.exact_divide(all_edges)
    poly = elem_sym_rewrite(quotient, lm.ell_count, lm.leaf_factor)
    d = g - 1 - lm.n
    if d < 0:
        if not poly.is_zero():
            raise ExcessError("tree with %d >= %d edges has nonzero class" % (lm.n, g))
        poly = Poly.zero()
    elif not poly.is_homogeneous(d):
        raise ExcessError("contribution of %s not homogeneous of degree %d" % (t.code, d))
    return Contribution(tree=t, g=g, poly=poly)


def _transport(poly: Poly, edge_map, lm: LocalModel) -> Poly:
    """Rewrite a cached contribution inside the local model of a
    degeneration: edge variables move through the edge map and the
    formal Chern classes become the model's factorized ones."""
    rename = {zvar(tgt): zvar(src) for tgt, src in edge_map}
    out = poly.rename(rename)
    cvals = {}
    for v in out.variables():
        if v[0] == "c":
            cvals[v] = lm.total_chern.graded_part(v[1])
    if cvals:
        out = out.substitute(cvals)
    return out


def pixton_contribution(t: ExtremalTree, g: int) -> Contribution:
    """Closed formula for Cont_T via the Taylor-part expansion."""
    lm = local_model(t, g)
    d = g - 1 - lm.n
    if d < 0:
        return Contribution(tree=t, g=g, poly=Poly.zero())
    max_num_deg = g - 1  # numerator degree needed before dividing by prod z_e
    num = Poly.const(1)
    for v in range(t.n_vertices):
        s = Poly.const(1)
        for i in t.path_labels(v):
            s = s + Poly.var(zvar(i))
        e = t.valence(v) - 2
        if e >= 0:
            num = (num * s ** e).truncate(max_num_deg)
        else:
            inv = s.series_inverse(max_num_deg)
            num = (num * inv ** (-e)).truncate(max_num_deg)
    if lm.k % 2:
        num = -num
    all_edges = tuple(sorted((zvar(i), 1) for i in range(1, lm.n + 1)))
    taylor = num.laurent_divide(all_edges).taylor_part().truncate(d)
    poly = (taylor * _formal_total_class(d)).graded_part(d)
    return Contribution(tree=t, g=g, poly=poly)


def all_contributions(g: int, method: str = "recursion", max_edges: int | None = None,
                      cache_dir: str | None = None, jobs: int = 1) -> dict:
    """Contributions of every extremal tree of genus g, keyed by code.

    Recursion fills the table in order of increasing depth (each depth
    level only needs the previous ones); the closed formula treats the
    trees independently.  Results are keyed in canonical-code order.
    """
    if method not in ("recursion", "pixton"):
        raise ExcessError("unknown method %r" % method)
    if max_edges is None:
        max_edges = g - 1
    memo_key = (g, method, max_edges)
    got = _MEMO.get(memo_key)
    if got is not None:
        if cache_dir and not os.path.exists(_cache_path(cache_dir, g, method, max_edges)):
            _cache_store(cache_dir, g, method, max_edges, got)
        return dict(got)
    cached = _cache_load(cache_dir, g, method, max_edges)
    if cached is not None:
        _MEMO[memo_key] = cached
        return dict(cached)
    trees = enumerate_trees(g, max_edges)
    table: dict = {}
    if method == "pixton":
        _for_each(trees, lambda t: table.__setitem__(t.code, pixton_contribution(t, g)), jobs)
    else:
        from .trees import depth

        by_depth: dict = {}
        for t in trees:
            by_depth.setdefault(depth(t), []).append(t)
        for levelno in sorted(by_depth):
            level = by_depth[levelno]
            results = {}
            _for_each(
                level,
                lambda t: results.__setitem__(
                    t.code, recursion_contribution(t, g, table)
                ),
                jobs,
            )
            table.update(results)
    out = {t.code: table[t.code] for t in trees}
    _MEMO[memo_key] = out
    _cache_store(cache_dir, g, method, max_edges, out)
    return dict(out)


_MEMO: dict = {}


def _for_each(items, fn, jobs: int) -> None:
    if jobs <= 1:
        for it in items:
            fn(it)
        return
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        list(pool.map(fn, items))


def _cache_path(cache_dir, g, method, max_edges):
    return os.path.join(cache_dir, "contrib-g%d-%s-e%d.json" % (g, method, max_edges))


def _cache_load(cache_dir, g, method, max_edges):
    if not cache_dir:
        return None
    path = _cache_path(cache_dir, g, method, max_edges)
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    out = {}
    for entry in data["contributions"]:
        t = ExtremalTree.from_code(entry["code"])
        out[t.code] = Contribution(tree=t, g=g, poly=Poly.from_json(entry["poly"]))
    return out


def _cache_store(cache_dir, g, method, max_edges, table) -> None:
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    data = {
        "genus": g,
        "method": method,
        "max_edges": max_edges,
        "contributions": [
            {"code": code, "poly": cont.poly.to_json()}
            for code, cont in table.items()
        ],
    }
    path = _cache_path(cache_dir, g, method, max_edges)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
