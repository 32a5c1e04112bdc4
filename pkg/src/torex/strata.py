"""Decorated boundary strata: the bracket form of the pullback formula.

A contribution polynomial in edge and Chern variables becomes a class on
the product of vertex moduli by the substitutions

    z_e   ->  -(psi'_e + psi''_e)      (cotangent classes at the node)
    c(N)  ->  prod over leaves of genus >= 2 of (1 - lam_1 + lam_2 - ...)

with the top lambda class of every leaf dropped, psi classes set to zero
on 3-valent genus-0 and on 1-valent genus-1 factors, and everything
truncated vertexwise above degree 2 g(v) - 3 + val(v).  Marking m of a
vertex is its m-th incident edge, the edge toward the root first and the
child edges in canonical order.

The assembled pullback is a weighted sum over all contributing trees
with weights 1/|Aut|; each bracket summand stores one monomial per
vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .excess import Contribution, all_contributions
from .polyring import (
    Monomial,
    Poly,
    lamvar,
    mono_degree,
    mono_mul,
    mono_str,
    psivar,
    zvar,
)
from .trees import ExtremalTree


class StrataError(Exception):
    pass


@dataclass(frozen=True)
class VertexTerm:
    """One vertex's decoration inside a bracket summand."""

    vertex: int
    mono: Monomial  # in untagged lam/psi variables

    def __str__(self) -> str:
        return mono_str(self.mono)


@dataclass(frozen=True)
class Summand:
    coeff: Fraction
    vertex_terms: tuple  # one VertexTerm per vertex, in vertex order

    def render(self) -> list:
        return [str(vt) for vt in self.vertex_terms]


@dataclass(frozen=True)
class TreeTerm:
    tree: ExtremalTree
    summands: tuple  # of Summand, coefficients already weighted by 1/aut


@dataclass(frozen=True)
class StrataExpression:
    genus: int
    terms: tuple  # of TreeTerm, in canonical-code order


def _factor_is_rigid(t: ExtremalTree, v: int) -> bool:
    """Vertices whose moduli factor carries no psi classes."""
    g, val = t.genera[v], t.valence(v)
    return (g == 0 and val == 3) or (g == 1 and val == 1)


def _truncation_bound(t: ExtremalTree, v: int) -> int:
    return 2 * t.genera[v] - 3 + t.valence(v)


def marking_index(t: ExtremalTree, v: int, edge) -> int:
    """1-based marking of the given incident edge at vertex v; the edge
    toward the root comes first, then child edges in canonical order."""
    incident = []
    if v != 0:
        incident.append((t.parent[v], v))
    incident.extend((v, w) for w in t.children[v])
    return incident.index(edge) + 1


def _edge_substitution(t: ExtremalTree) -> dict:
    subs = {}
    for (u, w), label in t.edge_label.items():
        acc = Poly.zero()
        for vert in (u, w):
            if not _factor_is_rigid(t, vert):
                m = marking_index(t, vert, (u, w))
                acc = acc - Poly.var(psivar(m, vert))
        subs[zvar(label)] = acc
    return subs


def _chern_substitution(t: ExtremalTree, max_deg: int) -> dict:
    total = Poly.const(1)
    for v in t.leaves():
        h = t.genera[v]
        if h >= 2:
            factor = Poly.const(1)
            for j in range(1, h):
                factor = factor + Poly.const((-1) ** j) * Poly.var(lamvar(j, v))
            total = total * factor
    return {
        ("c", i): total.graded_part(i) for i in range(1, max_deg + 1)
    }


def substitute_stratum(c: Contribution) -> list:
    """Expand a contribution into bracket summands (coeff, vertex monos)."""
    t = c.tree
    subs = _edge_substitution(t)
    subs.update(_chern_substitution(t, max(c.degree, 0)))
    missing = {v for v in c.poly.variables() if v not in subs}
    if missing:
        raise StrataError("unexpected variables %r" % (missing,))
    expanded = c.poly.substitute(subs)
    bounds = [_truncation_bound(t, v) for v in range(t.n_vertices)]
    out = []
    for mono, coeff in expanded.sorted_terms():
        per_vertex: dict = {}
        for var, e in mono:
            per_vertex.setdefault(var[1], [])
            per_vertex[var[1]].append((var, e))
        keep = True
        vterms = []
        for v in range(t.n_vertices):
            vm = tuple(
                sorted(((var[0], -1) + var[2:], e) for var, e in per_vertex.get(v, []))
            )
            if mono_degree(vm) > bounds[v]:
                keep = False
                break
            vterms.append(VertexTerm(vertex=v, mono=vm))
        if keep:
            out.append(Summand(coeff=coeff, vertex_terms=tuple(vterms)))
    return out


def stratum_class(c: Contribution, weight: Fraction = Fraction(1)) -> tuple:
    """Summands of a contribution with an overall rational weight."""
    return tuple(
        Summand(coeff=weight * s.coeff, vertex_terms=s.vertex_terms)
        for s in substitute_stratum(c)
    )


def assemble_pullback(g: int, method: str = "recursion",
                      cache_dir: str | None = None, jobs: int = 1) -> StrataExpression:
    """The full decorated-strata expression of the pullback class."""
    table = all_contributions(g, method=method, cache_dir=cache_dir, jobs=jobs)
    terms = []
    for code in sorted(table):
        cont = table[code]
        weight = Fraction(1, cont.tree.aut_order)
        summands = stratum_class(cont, weight)
        terms.append(TreeTerm(tree=cont.tree, summands=summands))
    return StrataExpression(genus=g, terms=tuple(terms))


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def check_degree_balance(s: StrataExpression) -> bool:
    """Tree codimension plus decoration degree equals g - 1 everywhere."""
    for term in s.terms:
        n = term.tree.n_edges
        for sm in term.summands:
            deco = sum(mono_degree(vt.mono) for vt in sm.vertex_terms)
            if n + deco != s.genus - 1:
                return False
    return True


def check_vanishing_discipline(s: StrataExpression) -> bool:
    """No lambda on the root, genus-0, or genus-1 vertices; nothing at
    all on rigid factors."""
    for term in s.terms:
        t = term.tree
        for sm in term.summands:
            for vt in sm.vertex_terms:
                v = vt.vertex
                for var, _ in vt.mono:
                    if var[0] == "lam" and t.genera[v] <= 1:
                        return False
                    if _factor_is_rigid(t, v) and vt.mono:
                        return False
    return True


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def serialize(s: StrataExpression, format: str = "json") -> bytes:
    if format == "json":
        return _to_json_bytes(s)
    if format == "admcycles-text":
        return _to_audit_text(s).encode("utf-8")
    raise StrataError("unknown format %r" % format)


def _to_json_obj(s: StrataExpression) -> dict:
    return {
        "genus": s.genus,
        "terms": [
            {
                "tree": term.tree.to_json(),
                "aut": term.tree.aut_order,
                "summands": [
                    {"coeff": str(sm.coeff), "vertex_polys": sm.render()}
                    for sm in term.summands
                ],
            }
            for term in s.terms
        ],
    }


def _to_json_bytes(s: StrataExpression) -> bytes:
    if not s.terms:
        return b"[]"
    return json.dumps(_to_json_obj(s), indent=1).encode("utf-8")


def parse_json(data: bytes) -> StrataExpression:
    if data == b"[]":
        return StrataExpression(genus=0, terms=())
    obj = json.loads(data.decode("utf-8"))
    terms = []
    for entry in obj["terms"]:
        tree = ExtremalTree.from_code(entry["tree"]["code"])
        summands = []
        for sm in entry["summands"]:
            vterms = tuple(
                VertexTerm(vertex=v, mono=parse_vertex_mono(text))
                for v, text in enumerate(sm["vertex_polys"])
            )
            summands.append(
                Summand(coeff=Fraction(sm["coeff"]), vertex_terms=vterms)
            )
        terms.append(TreeTerm(tree=tree, summands=tuple(summands)))
    return StrataExpression(genus=obj["genus"], terms=tuple(terms))


def parse_vertex_mono(text: str) -> Monomial:
    """Parse a per-vertex monomial like 'lam1*psi2^3' (or '1')."""
    if text == "1":
        return ()
    mono: Monomial = ()
    for tok in text.split("*"):
        if "^" in tok:
            name, _, etext = tok.partition("^")
            e = int(etext)
        else:
            name, e = tok, 1
        if name.startswith("lam"):
            var = lamvar(int(name[3:]))
        elif name.startswith("psi"):
            var = psivar(int(name[3:]))
        else:
            raise StrataError("bad vertex variable %r" % tok)
        mono = mono_mul(mono, ((var, e),))
    return mono


def _to_audit_text(s: StrataExpression) -> str:
    """Human-auditable listing, one block per stratum, suitable for entry
    into external tautological-ring software."""
    lines = ["genus %d, %d strata" % (s.genus, len(s.terms))]
    for term in s.terms:
        t = term.tree
        vdesc = ", ".join(
            "v%d(g=%d,n=%d)" % (v, t.genera[v], t.valence(v))
            for v in range(t.n_vertices)
        )
        edesc = ", ".join("z%d=(%d-%d)" % (t.edge_label[e], e[0], e[1]) for e in t.edges())
        lines.append("stratum %s  aut=%d" % (t.code, t.aut_order))
        lines.append("  vertices: %s" % vdesc)
        lines.append("  edges: %s" % edesc)
        if not term.summands:
            lines.append("  class: 0")
            continue
        for sm in term.summands:
            lines.append(
                "  %s * [%s]" % (sm.coeff, ", ".join(sm.render()))
            )
    return "\n".join(lines) + "\n"


def expression_equal(a: StrataExpression, b: StrataExpression) -> bool:
    return a.genus == b.genus and _normal_form(a) == _normal_form(b)


def _normal_form(s: StrataExpression) -> dict:
    out: dict = {}
    for term in s.terms:
        for sm in term.summands:
            key = (term.tree.code, tuple(vt.mono for vt in sm.vertex_terms))
            out[key] = out.get(key, Fraction(0)) + sm.coeff
    return {k: v for k, v in out.items() if v}
