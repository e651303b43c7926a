"""Affine-map separation on label windows and solenoid periodic-point reps."""

from fractions import Fraction

import pytest

from omnalg.algebra import AlgebraParams, Monomial
from omnalg.representations import (SolenoidPeriodicPoint, coincidence_points,
                                    coordinate_diagonal, exact_period,
                                    isometry_image, isometry_preimage,
                                    monomial_affine_map, precompose_shift_inverse,
                                    relation_residuals, shift_unitary,
                                    solenoid_orbits, solenoid_periodic_points,
                                    solenoid_rep_check, window_labels)

F = Fraction
P12 = AlgebraParams(1, 2)
P23 = AlgebraParams(2, 3)


def test_isometry_image_examples():
    assert isometry_image(P12, 1, "A", F(0)) == -1  # 2q + (j - 2)
    assert isometry_image(P12, 2, "A", F(0)) == 0
    assert isometry_image(P12, 1, "B", F(0)) == 0   # 2q + (j - 1)
    assert isometry_image(P12, 2, "B", F(0)) == 1
    assert isometry_image(P23, 1, "A", F(2)) == 2   # (3/2)q + (j - 2)


def test_isometry_preimage():
    assert isometry_preimage(P12, 1, "A", F(3)) == 2
    assert isometry_preimage(P12, 1, "A", F(4)) is None  # 4 is not odd
    for q in window_labels(2, 4, 1):
        for j in (1, 2, 3):
            img = isometry_image(P23, j, "A", q)
            assert isometry_preimage(P23, j, "A", img) == q


def test_monomial_affine_map_examples():
    m = monomial_affine_map(P12, Monomial((1,), 0, ()), "A")
    assert (m.scale, m.offset, m.conditions) == (F(2), F(-1), ())
    z5 = monomial_affine_map(P12, Monomial((), 5, ()), "A")
    assert (z5.scale, z5.offset) == (F(1), F(5))
    # S_1* is the half map defined on odd labels
    star = monomial_affine_map(P12, Monomial((), 0, (1,)), "A")
    assert (star.scale, star.offset) == (F(1, 2), F(1, 2))
    assert star.apply(F(3)) == 2
    assert star.apply(F(2)) is None
    # words compose: S_1 z^2 acts as q -> 2(q + 2) - 1
    comp = monomial_affine_map(P12, Monomial((1,), 2, ()), "A")
    assert (comp.scale, comp.offset) == (F(2), F(3))
    # (2,3): S_1 S_2* shifts by -1 but only on labels with (2/3)q integral
    cross = monomial_affine_map(P23, Monomial((1,), 0, (2,)), "A")
    assert cross.apply(F(1)) is None
    assert cross.apply(F(3, 2)) == F(1, 2)
    with pytest.raises(ValueError):
        monomial_affine_map(AlgebraParams(3, 1), Monomial((1,), 0, ()), "A")


def test_window_labels():
    assert window_labels(1, 4, 0) == [F(k) for k in range(-4, 5)]
    assert window_labels(1, 3, 2) == [F(k) for k in range(-3, 4)]  # m = 1 stays integral
    labels = window_labels(2, 2, 1)
    assert labels == [F(-2), F(-1), F(-1, 2), F(0), F(1, 2), F(1), F(2)]


def test_relation_residuals_frozen_report():
    r = relation_residuals(P12, "A", 64, 3)
    assert r["pass"] and r["violations"] == []
    assert r["coverage"] == 1.0
    assert r["grown_window"] == {"num_bound": 129, "exp_bound": 0}
    assert r["checks"] == {"shift": 129, "wrap": 129,
                           "orthogonality": 516, "partition": 129}
    assert r["checked"] == 903


def test_relation_residuals_both_variants():
    for params in (P12, P23):
        for variant in ("A", "B"):
            r = relation_residuals(params, variant, 64, 2)
            assert r["pass"]
            assert r["coverage"] == 1.0
            assert r["violations"] == []


def test_coincidence_points():
    # z and z^2 translate by different amounts: never equal
    c = coincidence_points(P12, Monomial((), 1, ()), Monomial((), 2, ()), "A")
    assert c.kind == "empty" and c.points == ()
    # S_1 (q -> 2q - 1) meets z^{-1} (q -> q - 1) exactly at q = 0
    c = coincidence_points(P12, Monomial((1,), 0, ()), Monomial((), -1, ()), "A")
    assert c.kind == "point" and c.points == (F(0),)
    # S_1 S_1* is the identity on its domain: overlap, not a point
    c = coincidence_points(P12, Monomial((1,), 0, (1,)), Monomial((), 0, ()), "A")
    assert c.kind == "overlap"
    with pytest.raises(ValueError):
        coincidence_points(P12, Monomial((), 1, ()), Monomial((), 1, ()), "A")


def test_periodic_point_counts():
    # exact-period counts by inclusion-exclusion over divisors
    for m, expect in ((2, [1, 2, 6, 12]), (3, [2, 6, 24, 72])):
        got = [len(solenoid_periodic_points(m, k)) for k in (1, 2, 3, 4)]
        assert got == expect


def test_periodic_point_validation():
    with pytest.raises(ValueError):
        SolenoidPeriodicPoint(2, 2, 0)  # exact period 1, not 2
    with pytest.raises(ValueError):
        SolenoidPeriodicPoint(2, 2, 3)  # residue out of range
    with pytest.raises(ValueError):
        SolenoidPeriodicPoint(1, 1, 0)


def test_exact_period():
    assert exact_period(2, 2, 3) == 1  # 3 = 0 mod 3
    assert exact_period(2, 4, 5) == 2  # 5 -> 10 -> 5 mod 15
    assert exact_period(2, 4, 1) == 4
    assert exact_period(3, 2, 4) == 1  # 3 * 4 = 4 mod 8


def test_orbits_partition_the_points():
    for m, k in ((2, 2), (2, 3), (3, 2), (2, 4)):
        orbits = solenoid_orbits(m, k)
        residues = sorted(p.residue for p in solenoid_periodic_points(m, k))
        flat = sorted(r for orbit in orbits for r in orbit)
        assert flat == residues
        mod = m ** k - 1
        for orbit in orbits:
            assert len(orbit) == k
            assert set((r * m) % mod for r in orbit) == set(orbit)


def test_coordinates_satisfy_shift_consistency():
    for m, k in ((2, 3), (3, 2), (2, 4)):
        for pt in solenoid_periodic_points(m, k):
            coords = pt.coordinates()
            mod = pt.modulus
            for i in range(k):
                assert (m * coords[(i + 1) % k]) % mod == coords[i] % mod
            assert pt.coordinate_phase(0) == F(coords[0], mod)


def test_shift_unitary_structure():
    u = shift_unitary(3, F(1, 2))
    assert u.is_unitary()
    assert u.cells == {(0, 2): F(1, 2), (1, 0): F(0), (2, 1): F(0)}
    assert (u @ u.adjoint()).cells == {(i, i): F(0) for i in range(3)}
    for size in (1, 2, 4):
        assert shift_unitary(size, F(1, 3)).is_unitary()


def test_precompose_shift_inverse():
    # the inverse shift sends x_0 to x_0^m and x_i to x_{i-1}
    assert precompose_shift_inverse(2, {0: 1}) == {0: 2}
    assert precompose_shift_inverse(2, {1: 1}) == {0: 1}
    assert precompose_shift_inverse(2, {1: -2, 0: 1}) == {}
    assert precompose_shift_inverse(3, {2: 1, 0: 2}) == {1: 1, 0: 6}


def test_solenoid_rep_check_sweep():
    phases = (F(0), F(1, 3), F(1, 2))
    exps = ({0: 1}, {1: -2}, {0: 2, 1: 1})
    for m in (2, 3):
        for k in (1, 2, 3):
            for pt in solenoid_periodic_points(m, k):
                for phase in phases:
                    for e in exps:
                        r = solenoid_rep_check(pt, phase, e)
                        assert r["pass"]
                        assert r["unitary"] and r["covariance_exact"]
                        assert r["float_residual"] < 1e-12


def test_orientation_separation_needs_period_three():
    # rotating a 2-cycle forward or backward is the same permutation, so
    # the wrong orientation only dies from period 3 on
    pt2 = solenoid_periodic_points(2, 2)[0]
    r2 = solenoid_rep_check(pt2, F(0), {0: 1})
    assert not r2["orientations_distinct"]
    for pt in solenoid_periodic_points(2, 3):
        r3 = solenoid_rep_check(pt, F(0), {0: 1})
        assert r3["orientations_distinct"]
        assert not r3["wrong_orientation_holds"]


def test_distinct_points_have_distinct_diagonals():
    pts = solenoid_periodic_points(2, 2)
    d0 = coordinate_diagonal(pts[0], {0: 1})
    d1 = coordinate_diagonal(pts[1], {0: 1})
    assert d0.cells != d1.cells
