"""Intersections of product loci: extremal common refinements, excess
bundles, and the polynomial-level vanishing of their Euler classes.

A common refinement of two partitions with assignment data is a matrix
of nonnegative integers whose row sums give one partition and column
sums the other; it is extremal exactly when no two refinement parts sit
in the same row and the same column, i.e. when each matrix cell holds
at most one part.  The excess bundle of a component is the sum of
E_a^dual (x) E_b^dual over pairs of parts lying in different rows and
different columns; its Euler class vanishes because the top Chern class
of every Hodge factor does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .polyring import Poly


class ProductsError(Exception):
    pass


class GenusMismatch(ProductsError):
    pass


class RankTooLarge(ProductsError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple  # weakly decreasing positive integers

    @staticmethod
    def make(parts) -> "Partition":
        parts = tuple(sorted(parts, reverse=True))
        if not parts or any(p < 1 for p in parts):
            raise ProductsError("parts must be positive, got %r" % (parts,))
        return Partition(parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class RefinementComponent:
    """An extremal common refinement with its assignment data.

    cells: sorted tuple of (row, col, part); sigma is the multiset of
    parts; excess_bundle lists the (a, b) rank pairs of its summands.
    """

    sigma: Partition
    cells: tuple
    excess_bundle: tuple

    def assignment_rows(self, n_rows: int) -> tuple:
        """I_1..I_l: for each part of the first partition, the refinement
        parts (by position in cells) grouped into it."""
        return tuple(
            tuple(idx for idx, (i, _, _) in enumerate(self.cells) if i == r)
            for r in range(n_rows)
        )

    def assignment_cols(self, n_cols: int) -> tuple:
        """J_1..J_k: the analogous grouping for the second partition."""
        return tuple(
            tuple(idx for idx, (_, j, _) in enumerate(self.cells) if j == c)
            for c in range(n_cols)
        )

    def __str__(self) -> str:
        bundle = " + ".join("E%d*E%d" % ab for ab in self.excess_bundle)
        return "sigma=%s excess=[%s]" % (self.sigma, bundle or "0")


def _matrices(rows: tuple, cols: tuple):
    """Nonnegative integer matrices with the given row and column sums
    and at most one part per cell is NOT required here; extremality is
    exactly the matrix form, so each matrix is one candidate."""

    nr, nc = len(rows), len(cols)

    def rec(r: int, remaining_cols: tuple, acc: list):
        if r == nr:
            if all(x == 0 for x in remaining_cols):
                yield tuple(acc)
            return
        # distribute rows[r] over the nc columns
        def fill(c: int, left: int, row: list):
            if c == nc:
                if left == 0:
                    acc.append(tuple(row))
                    new_cols = tuple(
                        remaining_cols[j] - row[j] for j in range(nc)
                    )
                    if all(x >= 0 for x in new_cols):
                        yield from rec(r + 1, new_cols, acc)
                    acc.pop()
                return
            for v in range(0, min(left, remaining_cols[c]) + 1):
                row.append(v)
                yield from fill(c + 1, left - v, row)
                row.pop()

        yield from fill(0, rows[r], [])

    yield from rec(0, cols, [])


def _canonical_matrix(matrix: tuple, rows: tuple, cols: tuple) -> tuple:
    """Minimum of the column-major key over row permutations fixing the
    row sums and column permutations fixing the column sums.

    For a fixed row order the best column order is obtained by sorting
    the columns within each equal-sum group, so only row permutations
    are enumerated.
    """
    row_groups = _equal_groups(rows)
    col_groups = _equal_groups(cols)
    best = None
    for rp in _group_permutations(len(rows), row_groups):
        rm = [tuple(matrix[i][j] for i in rp) for j in range(len(cols))]  # columns
        key = []
        for grp in col_groups:
            key.extend(sorted(rm[j] for j in grp))
        cand = tuple(key)
        if best is None or cand < best:
            best = cand
    # rebuild the matrix row-major from the canonical column tuple
    ncols = len(cols)
    nrows = len(rows)
    return tuple(tuple(best[j][i] for j in range(ncols)) for i in range(nrows))


def _equal_groups(values: tuple) -> list:
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] != values[start]:
            groups.append(list(range(start, i)))
            start = i
    return groups


def _group_permutations(n: int, groups: list):
    """Permutations of range(n) permuting only within the given groups."""
    pools = [list(permutations(grp)) for grp in groups]

    def rec(i: int, acc: list):
        if i == len(pools):
            perm = [0] * n
            for grp, choice in zip(groups, acc):
                for src, dst in zip(grp, choice):
                    perm[src] = dst
            yield tuple(perm)
            return
        for choice in pools[i]:
            acc.append(choice)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def extremal_refinements(p: Partition, q: Partition) -> list:
    """All extremal common refinements of p and q, up to reordering."""
    if p.total != q.total:
        raise GenusMismatch((p.total, q.total))
    rows, cols = p.parts, q.parts
    seen = set()
    out = []
    for matrix in _matrices(rows, cols):
        canon = _canonical_matrix(matrix, rows, cols)
        if canon in seen:
            continue
        seen.add(canon)
        cells = []
        for i, row in enumerate(canon):
            for j, v in enumerate(row):
                if v:
                    cells.append((i, j, v))
        cells = tuple(sorted(cells))
        sigma = Partition.make([v for _, _, v in cells])
        bundle = []
        for (i1, j1, v1), (i2, j2, v2) in combinations(cells, 2):
            if i1 != i2 and j1 != j2:
                bundle.append(tuple(sorted((v1, v2))))
        out.append(
            RefinementComponent(
                sigma=sigma, cells=cells, excess_bundle=tuple(sorted(bundle))
            )
        )
    out.sort(key=lambda comp: (comp.sigma.parts, comp.cells))
    return out


# ---------------------------------------------------------------------------
# Euler class of a tensor product in the elementary symmetric basis
# ---------------------------------------------------------------------------


def _ex(i: int) -> Poly:
    """Elementary symmetric e_i of the first block of Chern roots."""
    return Poly.var(("e", "x", i))


def _ey(j: int) -> Poly:
    """Elementary symmetric e_j of the second block of Chern roots."""
    return Poly.var(("e", "y", j))


@lru_cache(maxsize=None)
def euler_tensor_e_basis(a: int, b: int) -> Poly:
    """prod_{i<=a, j<=b} (x_i + y_j) written in the elementary symmetric
    generators e_i(x), e_j(y), via the Sylvester resultant of
    f(t) = prod (t - x_i) and h(t) = prod (t + y_j):

        prod h(x_i) = Res_t(f, h).
    """
    if a < 1 or b < 1:
        raise RankTooLarge("ranks must be >= 1")
    if a * b > 25:
        raise RankTooLarge("rank product %d exceeds 25" % (a * b))
    # f coefficients, highest degree first: t^a - e1 t^(a-1) + ...
    f = [Poly.const(1)] + [
        Poly.const((-1) ** i) * _ex(i) for i in range(1, a + 1)
    ]
    # h coefficients: t^b + e1(y) t^(b-1) + ... + e_b(y)
    h = [Poly.const(1)] + [_ey(j) for j in range(1, b + 1)]
    n = a + b
    rows = []
    for s in range(b):  # b rows of f coefficients
        rows.append([Poly.zero()] * s + f + [Poly.zero()] * (b - 1 - s))
    for s in range(a):  # a rows of h coefficients
        rows.append([Poly.zero()] * s + h + [Poly.zero()] * (a - 1 - s))

    memo: dict = {}

    def minor(i: int, colmask: int) -> Poly:
        if i == n:
            return Poly.const(1)
        key = (i, colmask)
        got = memo.get(key)
        if got is not None:
            return got
        acc = Poly.zero()
        pos = 0
        for j in range(n):
            bit = 1 << j
            if colmask & bit:
                continue
            e = rows[i][j]
            if not e.is_zero():
                term = e * minor(i + 1, colmask | bit)
                acc = acc + (term if pos % 2 == 0 else -term)
            pos += 1
        memo[key] = acc
        return acc

    return minor(0, 0)


def euler_tensor_reduce(a: int, b: int) -> Poly:
    """The e-basis Euler class of the tensor product with the top classes
    e_a(x) and e_b(y) set to zero; the reduction is always zero."""
    expr = euler_tensor_e_basis(a, b)
    zero = Poly.zero()
    return expr.substitute({("e", "x", a): zero, ("e", "y", b): zero})


def zeroint_check(p: Partition, q: Partition) -> bool:
    """True when every extremal refinement component of the two loci has
    an excess bundle whose Euler class reduces to zero once the top
    Chern class of every Hodge factor is set to zero.

    Duplicate components under reordering carry identical excess
    bundles, so the raw matrix enumeration is checked directly.
    """
    if len(p) < 2 or len(q) < 2:
        raise ProductsError("both partitions need at least 2 parts")
    any_component = False
    for matrix in _matrices(p.parts, q.parts):
        any_component = True
        cells = [
            (i, j, v)
            for i, row in enumerate(matrix)
            for j, v in enumerate(row)
            if v
        ]
        bundle = {
            tuple(sorted((v1, v2)))
            for (i1, j1, v1), (i2, j2, v2) in combinations(cells, 2)
            if i1 != i2 and j1 != j2
        }
        # a direct sum's Euler class vanishes as soon as one tensor
        # factor reduces to zero (euler_tensor_reduce is cached)
        if not any(euler_tensor_reduce(a, b).is_zero() for a, b in bundle):
            return False
    return any_component


# ---------------------------------------------------------------------------
# Hodge-class splitting on a product locus
# ---------------------------------------------------------------------------


def hodge_split_pullback(g: int, partition: Partition, m: int) -> dict:
    """Restriction of lambda_m to the product locus of the partition, as
    a sum of exterior tensor products of factorwise lambda classes.

    Returns {(a_1, .., a_l): coefficient} over compositions of m with
    a_i <= g_i; terms carrying any top class a_i = g_i are deleted since
    the top Hodge class vanishes on each factor.
    """
    if partition.total != g:
        raise GenusMismatch((partition.total, g))
    if m < 0 or m > g:
        raise ProductsError("degree %d out of range" % m)
    parts = partition.parts
    out: dict = {}

    def rec(i: int, left: int, acc: list):
        if i == len(parts):
            if left == 0:
                out[tuple(acc)] = out.get(tuple(acc), Fraction(0)) + 1
            return
        for a in range(0, min(left, parts[i] - 1) + 1):
            acc.append(a)
            rec(i + 1, left - a, acc)
            acc.pop()

    rec(0, m, [])
    return out
