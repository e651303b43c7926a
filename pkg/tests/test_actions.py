"""Finite symmetries: rotation weights, the inversion, fixed-point rewriting."""

import random

import pytest

from omnalg.actions import (GeneratorWord, fixed_point_rewrite, inversion_apply,
                            is_rotation_fixed, reduce_exponent, rotation_modulus,
                            rotation_weight, subalgebra_witness_power,
                            subalgebra_witness_zk)
from omnalg.algebra import AlgebraParams, Element, Monomial

P12 = AlgebraParams(1, 2)
P13 = AlgebraParams(1, 3)
P23 = AlgebraParams(2, 3)
P25 = AlgebraParams(2, 5)
P35 = AlgebraParams(3, 5)


def test_rotation_modulus():
    assert rotation_modulus(P13) == 2
    assert rotation_modulus(P25) == 3
    assert rotation_modulus(AlgebraParams(5, 2)) == 3
    for params in (P12, P23, AlgebraParams(1, 1)):
        with pytest.raises(ValueError):
            rotation_modulus(params)


def test_rotation_weight_examples():
    assert rotation_weight(P13, Monomial((2,), 1, (1, 1))) == 0
    assert rotation_weight(P13, Monomial((), 1, ())) == 1
    assert rotation_weight(P13, Monomial((3,), 0, ())) == 0
    assert rotation_weight(P25, Monomial((2,), 0, (1,))) == 1
    assert rotation_weight(P25, Monomial((), -1, ())) == 2


def test_is_rotation_fixed_matches_weight():
    rng = random.Random(53)
    for _ in range(100):
        params = (P13, P25, P35)[rng.randrange(3)]
        mon = Monomial(tuple(rng.randint(1, params.n) for _ in range(rng.randint(0, 3))),
                       rng.randint(-5, 5),
                       tuple(rng.randint(1, params.n) for _ in range(rng.randint(0, 3))))
        assert is_rotation_fixed(params, mon) == (rotation_weight(params, mon) == 0)


def test_inversion_fixes_defining_relations():
    # the images of both sides of each relation must still agree
    for params in (P12, P23, P13, P35):
        z = Element.unitary(params, 1)
        s = {i: Element.isometry(params, i) for i in range(1, params.n + 1)}
        for i in range(1, params.n):
            assert (inversion_apply(z * s[i]) - inversion_apply(s[i + 1])).is_zero()
        wrap = s[1] * Element.unitary(params, params.m)
        assert (inversion_apply(z * s[params.n]) - inversion_apply(wrap)).is_zero()


def test_inversion_involution_and_structure():
    rng = random.Random(59)
    for params in (P12, P23, P13):
        z = Element.unitary(params, 1)
        assert (inversion_apply(z) - z.adjoint()).is_zero()
        s1 = Element.isometry(params, 1)
        assert (inversion_apply(s1) - s1).is_zero()
        for _ in range(25):
            mu = tuple(rng.randint(1, params.n) for _ in range(rng.randint(0, 2)))
            nu = tuple(rng.randint(1, params.n) for _ in range(rng.randint(0, 2)))
            x = Element.monomial(params, mu, rng.randint(-3, 3), nu)
            y = Element.monomial(params, nu, rng.randint(-3, 3), mu)
            assert (inversion_apply(inversion_apply(x)) - x).is_zero()
            assert (inversion_apply(x.adjoint())
                    - inversion_apply(x).adjoint()).is_zero()
            assert (inversion_apply(x * y)
                    - inversion_apply(x) * inversion_apply(y)).is_zero()


def test_generator_word_validation():
    with pytest.raises(ValueError):
        GeneratorWord(P13, (("z", 3),))  # exponent not in 2Z
    with pytest.raises(ValueError):
        GeneratorWord(P13, (("destroy", 1),))
    w = GeneratorWord(P13, (("z", 2), ("create",), ("annihilate",)))
    assert str(w) == "z^2 S1 S1*"
    expect = (Element.unitary(P13, 2) * Element.isometry(P13, 1)
              * Element.isometry(P13, 1).adjoint())
    assert (w.to_element() - expect).is_zero()
    empty = GeneratorWord(P13, ())
    assert str(empty) == "1"
    assert empty.to_element() == Element.unit(P13)


def test_fixed_point_rewrite_frozen_example():
    w = fixed_point_rewrite(P13, Monomial((2,), 1, (1, 1)))
    assert str(w) == "z^4 S1 z^0 S1* z^0 S1* z^0"
    assert w.exponents() == [4, 0, 0, 0]
    x = Element.monomial(P13, (2,), 1, (1, 1))
    assert (w.to_element() - x).is_zero()


def test_fixed_point_rewrite_rejects_moving_monomials():
    with pytest.raises(ValueError, match="weight"):
        fixed_point_rewrite(P13, Monomial((2,), 0, (1, 1)))
    with pytest.raises(ValueError, match="weight"):
        fixed_point_rewrite(P25, Monomial((), 1, ()))


def test_fixed_point_rewrite_round_trip_sweep():
    rng = random.Random(61)
    for params in (P13, P35, P25, AlgebraParams(1, 4)):
        mod = rotation_modulus(params)
        done = 0
        while done < 50:
            mu = tuple(rng.randint(1, params.n) for _ in range(rng.randint(0, 3)))
            nu = tuple(rng.randint(1, params.n) for _ in range(rng.randint(0, 3)))
            k = rng.randint(-6, 6)
            w = rotation_weight(params, Monomial(mu, k, nu))
            mon = Monomial(mu, k - w + mod * rng.randint(0, 1), nu)
            assert is_rotation_fixed(params, mon)
            word = fixed_point_rewrite(params, mon)
            assert all(e % mod == 0 for e in word.exponents())
            assert (word.to_element()
                    - Element.monomial(params, mon.mu, mon.k, mon.nu)).is_zero()
            done += 1


def test_reduce_exponent():
    assert reduce_exponent(6, 2) == 3
    assert reduce_exponent(12, 2) == 3
    assert reduce_exponent(9, 3) == 1
    assert reduce_exponent(5, 3) == 5


def test_subalgebra_witness_zk():
    r = subalgebra_witness_zk(P12, 6)
    assert r["pass"] and r["kind"] == "zk"
    assert r["reduced_k"] == 3
    assert r["l_table"] == [0, 1] and r["p_table"] == [0, 1]
    assert all(entry["ok"] for entry in r["relations"].values())
    assert set(r["relations"]) == {"shift", "wrap", "orthogonality", "completeness"}
    # powers of n reduce all the way down to z itself
    assert subalgebra_witness_zk(P12, 4)["reduced_k"] == 1
    for params in (P12, P23):
        for k in (1, 3, 5):
            assert subalgebra_witness_zk(params, k)["pass"]
    with pytest.raises(ValueError):
        subalgebra_witness_zk(P12, 0)


def test_subalgebra_witness_power():
    for params, k in ((P12, 1), (P12, 2), (P12, 3), (P23, 1)):
        r = subalgebra_witness_power(params, k)
        assert r["pass"] and r["kind"] == "power" and r["k"] == k
    with pytest.raises(ValueError, match="size bound"):
        subalgebra_witness_power(P12, 7)
    with pytest.raises(ValueError):
        subalgebra_witness_power(P12, 0)
    # a larger bound admits the same check
    assert subalgebra_witness_power(P12, 7, size_bound=200)["pass"]
