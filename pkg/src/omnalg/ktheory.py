"""K-group computations via exact integer linear algebra.

Provides a hand-rolled Smith normal form over Z, cokernel/kernel
extraction, the six-term splice for the algebra A(m, n), the fixed-point
algebra of the flip symmetry (both parities of m, with the even-parity
discrepancy surfaced rather than silenced), and the Pimsner-Voiculescu
recomputation over localized integers Z[1/d].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

IntMatrix = List[List[int]]


def identity_matrix(k: int) -> IntMatrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a or not b:
        return []
    assert len(a[0]) == len(b), "dimension mismatch"
    return [[sum(a[i][l] * b[l][j] for l in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def mat_vec(a: IntMatrix, v: List[int]) -> List[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def determinant(m: IntMatrix) -> Fraction:
    """Exact determinant by fraction-based elimination (small matrices)."""
    k = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, k):
            f = a[r][col] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def smith_normal_form(mat: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with U*mat*V = D diagonal, d_1 | d_2 | ..., U and V unimodular."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [[int(x) for x in row] for row in mat]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or
                                abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            moved = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        # remainder is smaller than the pivot: promote it
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            break
        # divisibility chain: pivot must divide the remaining block
        fix = None
        for i in range(t + 1, rows):
            if any(a[i][j] % a[t][t] for j in range(t + 1, cols)):
                fix = i
                break
        if fix is not None:
            add_row(t, fix, 1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


@dataclass(frozen=True)
class FGAbelianGroup:
    """Finitely generated abelian group Z^free_rank + sum of Z_{d_i}."""

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = 1
        for d in self.torsion:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
            if d % prev:
                raise ValueError(f"divisibility chain broken: {self.torsion}")
            prev = d

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = (["Z"] if self.free_rank == 1 else
                 [f"Z^{self.free_rank}"] if self.free_rank else [])
        parts += [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json_obj(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


TRIVIAL_GROUP = FGAbelianGroup()


def _factorize(x: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def invariant_factors(cyclic_orders: List[int]) -> Tuple[int, ...]:
    """Rewrite a direct sum of cyclic groups as a divisibility chain."""
    exps: Dict[int, List[int]] = {}
    for t in cyclic_orders:
        if t <= 1:
            continue
        for p, e in _factorize(t).items():
            exps.setdefault(p, []).append(e)
    depth = max((len(v) for v in exps.values()), default=0)
    factors = [1] * depth
    for p, es in exps.items():
        for slot, e in enumerate(sorted(es, reverse=True)):
            factors[slot] *= p ** e
    return tuple(sorted(f for f in factors if f > 1))


def direct_sum(a: FGAbelianGroup, b: FGAbelianGroup) -> FGAbelianGroup:
    return FGAbelianGroup(a.free_rank + b.free_rank,
                          invariant_factors(list(a.torsion) + list(b.torsion)))


def _diagonal_entries(d: IntMatrix) -> List[int]:
    rows = len(d)
    cols = len(d[0]) if rows else 0
    return [d[i][i] for i in range(min(rows, cols))]


def cokernel(mat: IntMatrix) -> FGAbelianGroup:
    """Z^rows / column span of mat."""
    rows = len(mat)
    _, d, _ = smith_normal_form(mat)
    diag = _diagonal_entries(d)
    rank = sum(1 for x in diag if x)
    return FGAbelianGroup(rows - rank, tuple(x for x in diag if x > 1))


def kernel(mat: IntMatrix) -> FGAbelianGroup:
    """Kernel of the map Z^cols -> Z^rows; always free."""
    cols = len(mat[0]) if mat else 0
    _, d, _ = smith_normal_form(mat)
    rank = sum(1 for x in _diagonal_entries(d) if x)
    return FGAbelianGroup(cols - rank, ())


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def class_order(mat: IntMatrix, v: List[int]) -> Optional[int]:
    """Order of v + im(mat) in the cokernel; None when infinite."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    u, d, _ = smith_normal_form(mat)
    y = mat_vec(u, v)
    order = 1
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di == 0:
            if y[i] != 0:
                return None
        elif y[i] % di:
            order = _lcm(order, di // gcd(di, y[i] % di))
    return order


def six_term_kgroups(m: int, n: int) -> Tuple[FGAbelianGroup, FGAbelianGroup]:
    """K-groups of A(m, n) from the six-term sequence of the bimodule.

    The module class acts as multiplication by n on K0(C(T)) = Z and by m
    on K1(C(T)) = Z, so K0 = coker(1-n) + ker(1-m) and K1 = coker(1-m) +
    ker(1-n).  The splice splits because the kernels are free; that
    assumption is asserted loudly.
    """
    if m < 1 or n < 1 or gcd(m, n) != 1:
        raise ValueError(f"need coprime m, n >= 1, got ({m}, {n})")
    ck_n, kr_n = cokernel([[1 - n]]), kernel([[1 - n]])
    ck_m, kr_m = cokernel([[1 - m]]), kernel([[1 - m]])
    for kr in (kr_n, kr_m):
        if kr.torsion:
            raise AssertionError("six-term splitting assumption violated: "
                                 f"non-free kernel {kr}")
    return direct_sum(ck_n, kr_m), direct_sum(ck_m, kr_n)


def flip_fixed_matrix(m_parity: str, n: int) -> IntMatrix:
    """Module-class matrix on K0 of the order-two crossed product base ring.

    Generators e0, e1, e2; e0 maps to n*e0, e1 to e1 + (n-1)*c and e2 to
    n*c, where the auxiliary class c is e2 for odd parameter parity and
    e1 for even.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if m_parity == "odd":
        return [[n, 0, 0],
                [0, 1, 0],
                [0, n - 1, n]]
    if m_parity == "even":
        return [[n, 0, 0],
                [0, n, n],
                [0, 0, 0]]
    raise ValueError("m_parity must be 'odd' or 'even'")


def symmetry_fixed_kgroups(m_parity: str, n: int) -> dict:
    """K-groups of the fixed-point algebra of the flip z -> z^{-1}.

    Computes coker/ker of I - Y by Smith normal form and compares against
    the published values; for even parity the computed K0 genuinely
    disagrees with the published single Z_{n-1}, and the report carries
    both answers plus an explicit flag instead of hiding either.
    """
    y = flip_fixed_matrix(m_parity, n)
    mat = [[int(i == j) - y[i][j] for j in range(3)] for i in range(3)]
    k0 = cokernel(mat)
    k1 = kernel(mat)
    if k1.torsion:
        raise AssertionError("kernel of I - Y must be free")
    unit_order = class_order(mat, [1, 0, 0])
    orders = {f"e{i}": class_order(mat, [int(j == i) for j in range(3)])
              for i in range(3)}
    if m_parity == "odd":
        ref_k0 = FGAbelianGroup(1, invariant_factors([n - 1, n - 1]))
        ref_k1 = FGAbelianGroup(1, ())
        ref_unit_order = n - 1
    else:
        ref_k0 = FGAbelianGroup(0, invariant_factors([n - 1]))
        ref_k1 = TRIVIAL_GROUP
        ref_unit_order = 1
    return {
        "m_parity": m_parity,
        "n": n,
        "matrix": mat,
        "computed_k0": k0,
        "computed_k1": k1,
        "reference_k0": ref_k0,
        "reference_k1": ref_k1,
        "agrees_k0": k0 == ref_k0,
        "agrees_k1": k1 == ref_k1,
        "unit_class_order": unit_order,
        "reference_unit_class_order": ref_unit_order,
        "agrees_unit_class": unit_order == ref_unit_order,
        "generator_orders": orders,
    }


@dataclass(frozen=True)
class LocalizedMap:
    """x -> (1-c)x on the localized integers Z[1/d]."""

    d: int
    c: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("localization denominator must be >= 1")


@dataclass(frozen=True)
class LocalizedGroup:
    """Either the localized module Z[1/d] itself, or a finite group."""

    localized_free: bool
    d: int = 1
    finite: FGAbelianGroup = field(default_factory=FGAbelianGroup)

    def __str__(self) -> str:
        if self.localized_free:
            return "Z" if self.d == 1 else f"Z[1/{self.d}]"
        return str(self.finite)

    def as_fg(self) -> FGAbelianGroup:
        if not self.localized_free:
            return self.finite
        if self.d == 1:
            return FGAbelianGroup(1, ())
        raise ValueError(f"Z[1/{self.d}] is not finitely generated")


def localized_coker_ker(lm: LocalizedMap) -> Tuple[LocalizedGroup, LocalizedGroup]:
    """Cokernel and kernel of x -> (1-c)x on Z[1/d].

    For c = 1 the map is zero.  Otherwise it is injective, and the
    cokernel is cyclic of order |1-c| with every prime factor shared
    with d removed (those factors act invertibly on Z[1/d]).
    """
    if lm.c == 1:
        free = LocalizedGroup(True, lm.d)
        return free, free
    t = abs(1 - lm.c)
    while (g := gcd(t, lm.d)) > 1:
        t //= g
    coker = LocalizedGroup(False, lm.d, FGAbelianGroup(0, (t,) if t > 1 else ()))
    return coker, LocalizedGroup(False, lm.d)


def pv_dual_action_kgroups(m: int, n: int) -> Tuple[FGAbelianGroup, FGAbelianGroup]:
    """K-groups recomputed through the dual-action Pimsner-Voiculescu splice.

    The dual generator acts on K0 of the gauge-fixed subalgebra, Z[1/n],
    as division by n, and on K1 = Z[1/m] as division by m; the PV
    sequence therefore involves multiplication by (1-n) and (1-m) on the
    localized modules.  Must agree with six_term_kgroups.
    """
    if n < 2:
        raise ValueError("dual-action computation needs n >= 2")
    if m < 1 or gcd(m, n) != 1:
        raise ValueError(f"need coprime m, n, got ({m}, {n})")
    coker_n, ker_n = localized_coker_ker(LocalizedMap(n, n))
    coker_m, ker_m = localized_coker_ker(LocalizedMap(m, m))
    k0 = direct_sum(coker_n.as_fg(), ker_m.as_fg())
    k1 = direct_sum(coker_m.as_fg(), ker_n.as_fg())
    return k0, k1
