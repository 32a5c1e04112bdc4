"""Exact multivariate polynomial arithmetic over Q.

Sparse representation: a polynomial is a dict mapping monomials to
nonzero Fractions.  A monomial is a sorted tuple of (variable, exponent)
pairs with nonzero exponents; a variable is a plain tuple

    ('z', i)          edge variable, degree 1
    ('l', j)          line-bundle class, degree 1
    ('c', i)          formal Chern class, degree i
    ('lam', v, i)     lambda class on vertex v (v = -1 when untagged), degree i
    ('psi', v, m)     cotangent class at marking m of vertex v, degree 1

Variables order by tuple comparison; monomials by graded lexicographic
order.  Negative exponents are tolerated only transiently inside the
Laurent helpers (`laurent_divide`); every public result is a true
polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Variable = tuple
Monomial = tuple  # sorted tuple of (Variable, int) pairs

ONE_MONO: Monomial = ()


class PolyError(Exception):
    pass


class NotDivisible(PolyError):
    """Exact division failed; the divisibility invariant was violated."""


class NotUnitConstantTerm(PolyError):
    """Series inversion requires constant term 1."""


class NotSymmetric(PolyError):
    """Input was not symmetric in the line-bundle variables."""


class ResidualEll(PolyError):
    """Line-bundle variables survived elimination (internal bug)."""


def zvar(i: int) -> Variable:
    return ("z", i)


def lvar(j: int) -> Variable:
    return ("l", j)


def cvar(i: int) -> Variable:
    return ("c", i)


def lamvar(i: int, vertex: int = -1) -> Variable:
    return ("lam", vertex, i)


def psivar(m: int, vertex: int = -1) -> Variable:
    return ("psi", vertex, m)


def var_degree(v: Variable) -> int:
    ns = v[0]
    if ns == "c":
        return v[1]
    if ns in ("lam", "e"):
        return v[2]
    return 1


def var_name(v: Variable) -> str:
    ns = v[0]
    if ns == "z":
        return "z%d" % v[1]
    if ns == "l":
        return "l%d" % v[1]
    if ns == "c":
        return "c%d" % v[1]
    if ns == "lam":
        return "lam%d" % v[2] if v[1] < 0 else "lam%d@%d" % (v[2], v[1])
    if ns == "psi":
        return "psi%d" % v[2] if v[1] < 0 else "psi%d@%d" % (v[2], v[1])
    if ns == "e":
        return "e%s%d" % (v[1], v[2])
    raise ValueError("unknown variable %r" % (v,))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        ne = exps.get(v, 0) + e
        if ne:
            exps[v] = ne
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e * var_degree(v) for v, e in m)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else "%s^%d" % (var_name(v), e))
    return "*".join(parts)


def _mono_sort_key(m: Monomial):
    # graded, then lexicographic in the variable order
    return (mono_degree(m), m)


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if c:
                    t[m] = c if isinstance(c, Fraction) else Fraction(c)
        self._t = t

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly({ONE_MONO: c}) if c else Poly()

    @staticmethod
    def var(v: Variable) -> "Poly":
        return Poly({((v, 1),): Fraction(1)})

    # -- inspection --------------------------------------------------

    @property
    def terms(self) -> dict:
        return self._t

    def is_zero(self) -> bool:
        return not self._t

    def is_laurent(self) -> bool:
        return any(e < 0 for m in self._t for _, e in m)

    def constant_term(self) -> Fraction:
        return self._t.get(ONE_MONO, Fraction(0))

    def degree(self) -> int:
        """Total Chow degree (0 for the zero polynomial)."""
        if not self._t:
            return 0
        return max(mono_degree(m) for m in self._t)

    def variables(self) -> set:
        return {v for m in self._t for v, _ in m}

    def coeff(self, m: Monomial) -> Fraction:
        return self._t.get(m, Fraction(0))

    def is_homogeneous(self, d: int) -> bool:
        return all(mono_degree(m) == d for m in self._t)

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly._coerce(other)
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other) -> "Poly":
        other = Poly._coerce(other)
        t = dict(self._t)
        for m, c in other._t.items():
            nc = t.get(m, 0) + c
            if nc:
                t[m] = nc
            else:
                t.pop(m, None)
        out = Poly.__new__(Poly)
        out._t = t
        return out

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out._t = {m: -c for m, c in self._t.items()}
        return out

    def __sub__(self, other) -> "Poly":
        return self + (-Poly._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = Poly._coerce(other)
        a, b = self._t, other._t
        if len(a) > len(b):
            a, b = b, a
        t: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                nc = t.get(m, 0) + c1 * c2
                if nc:
                    t[m] = nc
                else:
                    t.pop(m, None)
        out = Poly.__new__(Poly)
        out._t = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power; use series_inverse")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- graded structure ----------------------------------------------

    def graded_part(self, d: int) -> "Poly":
        """Terms of Chow degree exactly d."""
        return Poly({m: c for m, c in self._t.items() if mono_degree(m) == d})

    def truncate(self, max_deg: int) -> "Poly":
        """Drop all terms of Chow degree greater than max_deg."""
        return Poly({m: c for m, c in self._t.items() if mono_degree(m) <= max_deg})

    def homogeneous_degrees(self) -> list:
        return sorted({mono_degree(m) for m in self._t})

    # -- division ------------------------------------------------------

    def exact_divide(self, m: Monomial) -> "Poly":
        """Exact quotient by a monomial; raises NotDivisible otherwise."""
        neg = tuple((v, -e) for v, e in m)
        t = {}
        for mono, c in self._t.items():
            q = mono_mul(mono, neg)
            if any(e < 0 for _, e in q):
                raise NotDivisible("term %s not divisible by %s" % (mono_str(mono), mono_str(m)))
            t[q] = c
        out = Poly.__new__(Poly)
        out._t = t
        return out

    def laurent_divide(self, m: Monomial) -> "Poly":
        """Quotient by a monomial, permitting negative exponents (transient)."""
        neg = tuple((v, -e) for v, e in m)
        out = Poly.__new__(Poly)
        out._t = {mono_mul(mono, neg): c for mono, c in self._t.items()}
        return out

    def taylor_part(self) -> "Poly":
        """Drop every term carrying a negative exponent."""
        return Poly(
            {m: c for m, c in self._t.items() if all(e >= 0 for _, e in m)}
        )

    def series_inverse(self, max_deg: int) -> "Poly":
        """Inverse modulo degree > max_deg; constant term must equal 1."""
        if self.constant_term() != 1:
            raise NotUnitConstantTerm("constant term %s != 1" % self.constant_term())
        u = (self - 1).truncate(max_deg)
        result = Poly.const(1)
        power = Poly.const(1)
        for _ in range(max_deg):
            power = (power * (-u)).truncate(max_deg)
            if power.is_zero():
                break
            result = result + power
        return result

    # -- substitution ----------------------------------------------------

    def rename(self, mapping: Mapping[Variable, Variable]) -> "Poly":
        """Rename variables (an injective relabeling)."""
        t = {}
        for m, c in self._t.items():
            nm = tuple(sorted((mapping.get(v, v), e) for v, e in m))
            t[nm] = t.get(nm, 0) + c
        return Poly(t)

    def substitute(self, values: Mapping[Variable, "Poly"]) -> "Poly":
        """Substitute polynomials for variables (others left alone)."""
        cache: dict = {}

        def vpow(v: Variable, e: int) -> Poly:
            key = (v, e)
            got = cache.get(key)
            if got is None:
                got = values[v] ** e
                cache[key] = got
            return got

        out = Poly.zero()
        for m, c in self._t.items():
            factor = Poly.const(c)
            for v, e in m:
                if v in values:
                    factor = factor * vpow(v, e)
                else:
                    factor = factor * Poly({((v, e),): Fraction(1)})
            out = out + factor
        return out

    # -- canonical text / JSON --------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self._t.items(), key=lambda kv: _mono_sort_key(kv[0]))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        chunks = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if m == ONE_MONO:
                body = str(mag)
            elif mag == 1:
                body = mono_str(m)
            else:
                body = "%s*%s" % (mag, mono_str(m))
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self) -> str:
        return "Poly(%s)" % self

    def to_json(self) -> list:
        out = []
        for m, c in self.sorted_terms():
            out.append([str(c), [[list(v), e] for v, e in m]])
        return out

    @staticmethod
    def from_json(data: Iterable) -> "Poly":
        t = {}
        for coeff, mono in data:
            m = tuple(sorted((tuple(v), e) for v, e in mono))
            t[m] = Fraction(coeff)
        return Poly(t)


# ---------------------------------------------------------------------------
# module-level operation aliases
# ---------------------------------------------------------------------------


def graded_part(p: Poly, d: int) -> Poly:
    return p.graded_part(d)


def exact_divide(p: Poly, m: Monomial) -> Poly:
    return p.exact_divide(m)


def taylor_part(p: Poly) -> Poly:
    return p.taylor_part()


def series_inverse(p: Poly, max_deg: int) -> Poly:
    return p.series_inverse(max_deg)


def prod(polys: Iterable[Poly], max_deg: int | None = None) -> Poly:
    out = Poly.const(1)
    for p in polys:
        out = out * p
        if max_deg is not None:
            out = out.truncate(max_deg)
    return out


# ---------------------------------------------------------------------------
# elementary-symmetric elimination of the line-bundle variables
# ---------------------------------------------------------------------------


def elementary_symmetric(vs: list, i: int) -> Poly:
    """e_i of the given variables."""
    from itertools import combinations

    if i == 0:
        return Poly.const(1)
    if i > len(vs):
        return Poly.zero()
    t = {}
    for combo in combinations(vs, i):
        m = tuple(sorted((v, 1) for v in combo))
        t[m] = Fraction(1)
    return Poly(t)


def _split_ell(m: Monomial):
    ell = tuple((v, e) for v, e in m if v[0] == "l")
    rest = tuple((v, e) for v, e in m if v[0] != "l")
    return ell, rest


def symmetric_decompose(p: Poly, ell_count: int) -> dict:
    """Write p = sum q_a(rest) * e^a(l1..lm); keys are e-exponent tuples.

    Raises NotSymmetric when p is not symmetric in the l-variables.
    """
    ells = [lvar(j) for j in range(1, ell_count + 1)]
    result: dict = {}
    f = p
    while not f.is_zero():
        # leading l-exponent vector, lexicographic in (l1, ..., lm)
        best = None
        for m in f.terms:
            expmap = dict(m)
            vec = tuple(expmap.get(v, 0) for v in ells)
            if best is None or vec > best:
                best = vec
        if best is None or all(x == 0 for x in best):
            # l-free remainder: an e-exponent of all zeros
            key = (0,) * ell_count
            result[key] = result.get(key, Poly.zero()) + f
            break
        if any(best[i] < best[i + 1] for i in range(len(best) - 1)):
            raise NotSymmetric("leading exponent %s is not dominant" % (best,))
        # coefficient of the leading l-monomial
        lead_mono = tuple(sorted((v, e) for v, e in zip(ells, best) if e))
        q = Poly.zero()
        for m, c in f.terms.items():
            ell, rest = _split_ell(m)
            if ell == lead_mono:
                q = q + Poly({rest: c})
        epows = tuple(
            best[i] - (best[i + 1] if i + 1 < len(best) else 0)
            for i in range(len(best))
        )
        key = epows
        result[key] = result.get(key, Poly.zero()) + q
        eprod = Poly.const(1)
        for i, a in enumerate(epows):
            if a:
                eprod = eprod * elementary_symmetric(ells, i + 1) ** a
        f = f - q * eprod
    return {k: v for k, v in result.items() if not v.is_zero()}


def elem_sym_rewrite(p: Poly, ell_count: int, A: Poly, max_deg: int | None = None) -> Poly:
    """Eliminate l-variables from p using e_i(l) = [c(N)/A]_i.

    The total class c(N) is kept formal (variables c1, c2, ...); A is the
    l-free factor of the local model's total Chern class.  The result is
    the unique polynomial in the edge and Chern variables equal to p.
    """
    if ell_count == 0:
        if any(v[0] == "l" for v in p.variables()):
            raise ResidualEll("l-variables present with ell_count = 0")
        return p
    decomp = symmetric_decompose(p, ell_count)
    need = max_deg if max_deg is not None else p.degree()
    cser = Poly.const(1)
    for i in range(1, need + 1):
        cser = cser + Poly.var(cvar(i))
    subs_series = (cser * A.series_inverse(need)).truncate(need)
    s = {i: subs_series.graded_part(i) for i in range(1, ell_count + 1)}
    out = Poly.zero()
    for epows, q in decomp.items():
        factor = q
        for i, a in enumerate(epows):
            if a:
                factor = factor * s[i + 1] ** a
        out = out + factor
    if any(v[0] == "l" for v in out.variables()):
        raise ResidualEll("elimination left l-variables behind")
    return out
