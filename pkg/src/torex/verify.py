"""Built-in reference checks.

Each check replays one published worked value against the library and is
identified by a short slug.  The CLI `verify-paper` subcommand runs the
whole table and reports one pass/fail line per check.
"""

from __future__ import annotations

from fractions import Fraction

from . import agring, constants, products, strata
from .excess import all_contributions
from .polyring import Poly, cvar, lamvar, lvar, psivar, zvar, elem_sym_rewrite
from .trees import ExtremalTree, depth, enumerate_trees, mon, smoothings


def _z(i):
    return Poly.var(zvar(i))


def _c(i):
    return Poly.var(cvar(i))


def _ell(j):
    return Poly.var(lvar(j))


def _contribution(g, code, method="recursion"):
    return all_contributions(g, method=method)[code].poly


def _bracket_set(g, code):
    cont = all_contributions(g)[code]
    return {
        tuple(s.render()): s.coeff for s in strata.substitute_stratum(cont)
    }


def _check_tree_counts():
    return [len(enumerate_trees(g, m)) for g, m in ((4, 3), (5, 4), (6, 5))] == [4, 10, 24]


def _check_aut_weights():
    irr = [t for t in enumerate_trees(6, 5) if t.is_irreducible()]
    return sorted(t.aut_order for t in irr) == [1, 1, 1, 2, 2, 6, 120]


def _check_smoothing_counts():
    two = len(smoothings(ExtremalTree.from_code("(1(0(1)(2)))")))
    six = len(smoothings(ExtremalTree.from_code("(1(0(0(1)(1))(3)))")))
    none = len(smoothings(ExtremalTree.from_code("(1(1)(2))")))
    return (two, six, none) == (2, 6, 0)


def _check_depths():
    return (
        depth(ExtremalTree.from_code("(1(5))")) == 0
        and depth(ExtremalTree.from_code("(1(0(1)(2)))")) == 1
        and depth(ExtremalTree.from_code("(1(0(0(1)(1))(3)))")) == 2
    )


def _check_mon():
    t = ExtremalTree.from_code("(1(0(1)(2)))")
    leaf_a = next(v for v in t.leaves() if t.genera[v] == 1)
    want = tuple(sorted(((zvar(1), 1), (zvar(2), 1))))
    weird = ExtremalTree.from_code("(1(0(1)(3))(1))")
    leaf_c = next(v for v in weird.leaves() if weird.parent[v] == 0)
    return mon(t, leaf_a) == want and mon(weird, leaf_c) == ((zvar(2), 1),)


def _check_graded_leaf():
    # degree-2 part of c(E^dual) / (1 - psi_1) on a genus-3 leaf
    ps = Poly.var(psivar(1, 0))
    ce = Poly.const(1) - Poly.var(lamvar(1, 0)) + Poly.var(lamvar(2, 0))
    series = (ce * (Poly.const(1) - ps).series_inverse(2)).graded_part(2)
    want = (
        Poly.var(lamvar(2, 0))
        - Poly.var(lamvar(1, 0)) * ps
        + ps * ps
    )
    return series == want


def _check_rewrite_example():
    # z2 + z3 - 3 l1 - 3 l2 with A = (1+z1+z2)(1+z1+z3)
    p = _z(2) + _z(3) - 3 * _ell(1) - 3 * _ell(2)
    A = (1 + _z(1) + _z(2)) * (1 + _z(1) + _z(3))
    got = elem_sym_rewrite(p, 2, A)
    want = -3 * _c(1) + 6 * _z(1) + 4 * _z(2) + 4 * _z(3)
    return got == want


def _check_contributions():
    cases = [
        (4, "(1(0(1)(2)))", Poly.const(-3)),
        (5, "(1(0(1)(3)))", -3 * _c(1) + 6 * _z(1) + 4 * _z(2) + 4 * _z(3)),
        (6, "(1(0(1)(4)))",
         -3 * _c(2) + _c(1) * (6 * _z(1) + 4 * _z(2) + 4 * _z(3))
         - 10 * _z(1) ** 2 - 10 * _z(1) * (_z(2) + _z(3))
         - 5 * (_z(2) + _z(3)) ** 2 + 5 * _z(2) * _z(3)),
        (5, "(1(0(1)(1)(2)))", Poly.const(-4)),
        (6, "(1(0(1)(1)(3)))",
         -4 * _c(1) + 10 * _z(1) + 5 * (_z(2) + _z(3) + _z(4))),
        (6, "(1(0(1)(1)(1)(2)))", Poly.const(-5)),
        (6, "(1(0(1)(3))(1))",
         -3 * _c(1) + 6 * _z(1) + 3 * _z(2) + 4 * (_z(3) + _z(4))),
        (6, "(1(0(0(1)(1))(3)))", Poly.const(15)),
    ]
    return all(_contribution(g, code) == want for g, code, want in cases)


def _check_pixton_matches():
    for g in range(2, 7):
        rec = all_contributions(g, "recursion")
        pix = all_contributions(g, "pixton")
        if any(rec[k].poly != pix[k].poly for k in rec):
            return False
    return True


def _check_contribution_tables():
    tab4 = all_contributions(4)
    if tab4["(1(0(1)(2)))"].poly != Poly.const(-3):
        return False
    tab5 = all_contributions(5)
    four_edge = sorted(
        str(c.poly)
        for c in tab5.values()
        if c.tree.n_edges == 4 and not c.tree.is_irreducible()
    )
    if four_edge != ["-3", "-3", "-4"]:
        return False
    tab6 = all_contributions(6)
    triples = [
        c for c in tab6.values()
        if c.tree.n_edges == 5
        and sum(1 for v in range(c.tree.n_vertices)
                if c.tree.genera[v] == 0) == 2
    ]
    return len(triples) == 4 and all(c.poly == Poly.const(15) for c in triples)


def _check_strata_brackets():
    ab6 = _bracket_set(6, "(1(0(1)(4)))")
    want_ab6 = {
        ("1", "1", "1", "lam2"): Fraction(-3),
        ("1", "1", "1", "lam1*psi1"): Fraction(4),
        ("1", "1", "1", "psi1^2"): Fraction(-5),
    }
    ab5 = _bracket_set(5, "(1(0(1)(3)))")
    want_ab5 = {
        ("1", "1", "1", "lam1"): Fraction(3),
        ("1", "1", "1", "psi1"): Fraction(-4),
    }
    a4 = _bracket_set(4, "(1(3))")
    want_a4 = {
        ("1", "lam2"): Fraction(1),
        ("1", "lam1*psi1"): Fraction(-1),
        ("1", "psi1^2"): Fraction(1),
    }
    return ab6 == want_ab6 and ab5 == want_ab5 and a4 == want_a4


def _check_pullback_weights():
    expr = strata.assemble_pullback(6)
    byc = {term.tree.code: term for term in expr.terms}
    g_term = byc["(1(1)(1)(1)(1)(1))"]
    ok_g = (
        len(g_term.summands) == 1
        and g_term.summands[0].coeff == Fraction(1, 120)
        and all(str(vt) == "1" for vt in g_term.summands[0].vertex_terms)
    )
    ten = len(strata.assemble_pullback(5).terms) == 10
    return ok_g and ten


def _check_constants():
    pc = constants.product_coefficient
    vals = (pc(4), pc(5), pc(7)) == (
        Fraction(20),
        Fraction(11),
        Fraction(1),
    )
    g6 = pc(6) == Fraction(2730, 691) and constants.coefficient_discrepancy(6) == Fraction(2370, 691)
    tail = constants.hodge_constants(1).tail_integral == Fraction(1, 24)
    series = constants.series_identity_check(20)
    return vals and g6 and tail and series


def _check_ring():
    red = agring.reduce
    lam = agring.lam
    ok1 = red(4, lam(1) * lam(1)) == red(4, 2 * lam(2))
    ok2 = all(red(g, lam(g - 1) * lam(g - 1)).is_zero() for g in range(2, 8))
    ok3 = all(red(g, lam(g)).is_zero() for g in range(1, 8))
    socle = agring.schur_wedge2(3) == agring.TautClassAg.make(
        3, {frozenset((1, 2)): Fraction(1)}
    )
    return ok1 and ok2 and ok3 and socle


def _check_virtual():
    minus = agring.TautClassAg.make(4 // 2, {frozenset((1,)): Fraction(-1)})
    got = agring.virtual_class_product(4, 2)
    trivial = agring.virtual_class_product(2, 1)
    one = agring.TautClassAg.make(1, {frozenset(): Fraction(1)})
    return got == (minus, minus) and trivial == (one, one)


def _check_products():
    P = products.Partition.make
    two = len(products.extremal_refinements(P([1, 4]), P([2, 3]))) == 2
    one = len(products.extremal_refinements(P([1, 5]), P([3, 3]))) == 1
    zero = products.zeroint_check(P([1, 4]), P([2, 3]))
    euler = products.euler_tensor_reduce(2, 2).is_zero()
    split = products.hodge_split_pullback(5, P([2, 3]), 4) == {}
    return two and one and zero and euler and split


CHECKS = [
    ("tree-inventory-counts", _check_tree_counts),
    ("tree-aut-weights-g6", _check_aut_weights),
    ("smoothing-counts", _check_smoothing_counts),
    ("degeneration-depths", _check_depths),
    ("leaf-path-monomials", _check_mon),
    ("graded-part-genus3-leaf", _check_graded_leaf),
    ("symmetric-rewrite-two-lines", _check_rewrite_example),
    ("worked-contributions", _check_contributions),
    ("closed-formula-agreement-g2-6", _check_pixton_matches),
    ("contribution-tables-g4-g5-g6", _check_contribution_tables),
    ("bracket-substitutions", _check_strata_brackets),
    ("pullback-weights", _check_pullback_weights),
    ("projection-coefficients", _check_constants),
    ("lambda-ring-relations", _check_ring),
    ("virtual-product-classes", _check_virtual),
    ("product-locus-vanishing", _check_products),
]


def run_checks(names=None) -> list:
    """Run the reference checks; returns (slug, passed) pairs."""
    results = []
    for slug, fn in CHECKS:
        if names and slug not in names:
            continue
        try:
            ok = bool(fn())
        except Exception:
            ok = False
        results.append((slug, ok))
    return results
