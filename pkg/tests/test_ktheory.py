"""Integer matrix reductions and the K-group computations built on them."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from omnalg.ktheory import (FGAbelianGroup, LocalizedGroup, LocalizedMap,
                            class_order, cokernel, determinant, direct_sum,
                            invariant_factors, kernel, localized_coker_ker,
                            mat_mul, pv_dual_action_kgroups, six_term_kgroups,
                            smith_normal_form, symmetry_fixed_kgroups)


def int_det(mat):
    # permutation expansion; fine for the k <= 4 minors used here
    k = len(mat)
    total = 0
    for perm in itertools.permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(k):
            prod *= mat[i][perm[i]]
        total += sign * prod
    return total


def minor_gcd(mat, k):
    rows, cols = len(mat), len(mat[0])
    g = 0
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            g = math.gcd(g, int_det([[mat[r][c] for c in cs] for r in rs]))
    return g


def test_smith_normal_form_random_sweep():
    rng = random.Random(101)
    shapes = [(2, 2), (3, 3), (3, 2), (2, 4), (4, 4)]
    for trial in range(40):
        rows, cols = shapes[trial % len(shapes)]
        mat = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        u, d, v = smith_normal_form(mat)
        assert mat_mul(mat_mul(u, mat), v) == d
        assert abs(determinant(u)) == 1
        assert abs(determinant(v)) == 1
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        nonzero = [x for x in diag if x != 0]
        assert all(x > 0 for x in nonzero)
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        # d_1 ... d_k equals the gcd of all k x k minors
        prod = 1
        for k, dk in enumerate(diag, start=1):
            prod *= dk
            assert abs(prod) == minor_gcd(mat, k)


def test_invariant_factors_normalization():
    assert invariant_factors([4, 6, 1]) == (2, 12)
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([1, 1]) == ()
    assert invariant_factors([]) == ()


def test_fg_group_basics():
    assert str(FGAbelianGroup(2, ())) == "Z^2"
    assert str(FGAbelianGroup(0, ())) == "0"
    assert str(FGAbelianGroup(1, (5,))) == "Z + Z_5"
    assert str(FGAbelianGroup(0, (2, 12))) == "Z_2 + Z_12"
    assert FGAbelianGroup(0, (2, 12)).to_json_obj() == {"free_rank": 0,
                                                        "torsion": [2, 12]}
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (4, 6))  # not a divisibility chain
    s = direct_sum(FGAbelianGroup(1, (2,)), FGAbelianGroup(0, (3,)))
    assert s == FGAbelianGroup(1, (6,))


def test_cokernel_kernel_examples():
    assert cokernel([[2]]) == FGAbelianGroup(0, (2,))
    assert cokernel([[0]]) == FGAbelianGroup(1, ())
    assert cokernel([[1]]) == FGAbelianGroup(0, ())
    assert cokernel([[2, 0], [0, 3]]) == FGAbelianGroup(0, (6,))
    assert kernel([[2]]) == FGAbelianGroup(0, ())
    assert kernel([[0]]) == FGAbelianGroup(1, ())
    assert kernel([[1, 1], [1, 1]]) == FGAbelianGroup(1, ())


def test_class_order_examples():
    assert class_order([[2]], [1]) == 2
    assert class_order([[2]], [2]) == 1
    assert class_order([[0]], [1]) is None
    assert class_order([[2, 0], [0, 3]], [1, 1]) == 6
    assert class_order([[2, 0], [0, 3]], [0, 1]) == 3


def test_six_term_tables():
    assert six_term_kgroups(1, 2) == (FGAbelianGroup(1, ()), FGAbelianGroup(1, ()))
    assert six_term_kgroups(2, 3) == (FGAbelianGroup(0, (2,)),
                                      FGAbelianGroup(0, ()))
    assert six_term_kgroups(5, 3) == (FGAbelianGroup(0, (2,)),
                                      FGAbelianGroup(0, (4,)))
    for n in range(2, 13):
        k0, k1 = six_term_kgroups(1, n)
        assert k0 == FGAbelianGroup(1, (n - 1,) if n > 2 else ())
        assert k1 == FGAbelianGroup(1, ())
    for m in range(2, 13):
        k0, k1 = six_term_kgroups(m, 1)
        assert k0 == FGAbelianGroup(1, ())
        assert k1 == FGAbelianGroup(1, (m - 1,) if m > 2 else ())


def test_six_term_rejects_bad_params():
    with pytest.raises(ValueError):
        six_term_kgroups(2, 4)
    with pytest.raises(ValueError):
        six_term_kgroups(0, 1)


def in_localization(q: Fraction, d: int) -> bool:
    den = q.denominator
    while (g := math.gcd(den, d)) > 1:
        den //= g
    return den == 1


def test_localized_coker_matches_coset_oracle():
    # order of 1 in Z[1/d]/(1-c): smallest k with k/(1-c) in Z[1/d]
    for d in range(1, 7):
        for c in range(-6, 7):
            if c == 1:
                continue
            coker, ker = localized_coker_ker(LocalizedMap(d, c))
            expect = next(k for k in range(1, abs(1 - c) + 1)
                          if in_localization(Fraction(k, 1 - c), d))
            got = coker.finite.torsion[0] if coker.finite.torsion else 1
            assert not coker.localized_free
            assert got == expect
            assert ker == LocalizedGroup(False, d)


def test_localized_examples():
    free, _ = localized_coker_ker(LocalizedMap(2, 1))
    assert free.localized_free and str(free) == "Z[1/2]"
    with pytest.raises(ValueError):
        free.as_fg()
    assert str(LocalizedGroup(True, 1)) == "Z"
    coker, _ = localized_coker_ker(LocalizedMap(3, 3))
    assert coker.finite == FGAbelianGroup(0, (2,))
    coker, _ = localized_coker_ker(LocalizedMap(2, 5))
    assert coker.finite == FGAbelianGroup(0, ())  # 4 is invertible in Z[1/2]
    with pytest.raises(ValueError):
        LocalizedMap(0, 2)


def test_dual_action_agrees_with_six_term():
    for m in range(1, 13):
        for n in range(2, 13):
            if math.gcd(m, n) != 1:
                continue
            assert pv_dual_action_kgroups(m, n) == six_term_kgroups(m, n)
    with pytest.raises(ValueError):
        pv_dual_action_kgroups(3, 1)


def test_symmetry_fixed_odd_family():
    r3 = symmetry_fixed_kgroups("odd", 3)
    assert r3["matrix"] == [[-2, 0, 0], [0, 0, 0], [0, -2, -2]]
    assert str(r3["computed_k0"]) == "Z + Z_2 + Z_2"
    assert str(r3["computed_k1"]) == "Z"
    assert r3["unit_class_order"] == 2
    assert r3["generator_orders"] == {"e0": 2, "e1": None, "e2": 2}
    for n in range(2, 11):
        r = symmetry_fixed_kgroups("odd", n)
        assert r["agrees_k0"] and r["agrees_k1"]
        assert r["agrees_unit_class"]
        assert r["computed_k1"].torsion == ()


def test_symmetry_fixed_even_family():
    for n in range(2, 11):
        r = symmetry_fixed_kgroups("even", n)
        assert r["agrees_k1"]
        assert r["agrees_k0"] == (n == 2)
        assert r["computed_k1"].torsion == ()
    r4 = symmetry_fixed_kgroups("even", 4)
    assert str(r4["computed_k0"]) == "Z_3 + Z_3"
    assert str(r4["reference_k0"]) == "Z_3"
    assert r4["unit_class_order"] == 3
    with pytest.raises(ValueError):
        symmetry_fixed_kgroups("both", 3)
