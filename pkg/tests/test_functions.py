"""Piecewise polynomial functions on the circle: arithmetic, dilation, transfer."""

import json
import math
import random
from fractions import Fraction

import pytest

from omnalg.functions import (NUMERIC, PiecewiseFunction, dilate,
                              function_from_json_obj, function_to_json_obj,
                              integrate, support_pieces, transfer, winding)

F = Fraction


def sawtooth():
    # f(t) = t
    return PiecewiseFunction.polynomial((F(0), F(1)))


def test_breakpoint_validation():
    with pytest.raises(ValueError):
        PiecewiseFunction([F(1, 4), F(1, 2)], [(F(1),), (F(2),)])  # must start at 0
    with pytest.raises(ValueError):
        PiecewiseFunction([F(0), F(1, 2), F(1, 2)], [(F(1),), (F(2),), (F(3),)])
    with pytest.raises(ValueError):
        PiecewiseFunction([F(0), F(3, 2)], [(F(1),), (F(2),)])  # live in [0, 1)
    with pytest.raises(ValueError):
        PiecewiseFunction([F(0), F(1, 2)], [(F(1),)])  # one piece per breakpoint


def test_adjacent_equal_pieces_merge():
    f = PiecewiseFunction([F(0), F(1, 2)], [(F(5),), (F(5),)])
    assert f.breakpoints == (F(0),)
    assert f.pieces == ((F(5),),)


def test_evaluate_exact():
    f = sawtooth()
    assert f.evaluate(F(0)) == 0
    assert f.evaluate(F(3, 7)) == F(3, 7)
    assert f.evaluate(F(5, 4)) == F(1, 4)  # arguments reduce mod 1
    assert f.evaluate(F(-1, 4)) == F(3, 4)
    g = PiecewiseFunction.indicator(F(1, 4), F(1, 2))
    assert g.evaluate(F(1, 4)) == 1  # left-closed pieces
    assert g.evaluate(F(1, 2)) == 0
    assert g.evaluate(F(3, 8)) == 1
    assert support_pieces(g) == [(F(1, 4), F(1, 2))]


def test_from_segments_fills_gaps_with_zero():
    f = PiecewiseFunction.from_segments([(F(1, 2), F(3, 4), (F(2),))])
    assert f.evaluate(F(0)) == 0
    assert f.evaluate(F(5, 8)) == 2
    assert f.evaluate(F(7, 8)) == 0
    with pytest.raises(ValueError):
        PiecewiseFunction.from_segments([(F(0), F(1, 2), (F(1),)),
                                         (F(1, 4), F(3, 4), (F(1),))])


SAMPLE_TS = [F(k, 48) for k in range(48)] + [F(k, 7) for k in range(7)]


def random_function(rng):
    cuts = sorted({F(rng.randint(0, 11), 12) for _ in range(3)} | {F(0)})
    pieces = []
    for _ in cuts:
        deg = rng.randint(0, 2)
        pieces.append(tuple(F(rng.randint(-3, 3)) for _ in range(deg + 1)))
    return PiecewiseFunction(cuts, pieces)


def test_pointwise_arithmetic():
    rng = random.Random(31)
    for _ in range(25):
        f = random_function(rng)
        g = random_function(rng)
        s, p, d = f + g, f * g, f - g
        for t in SAMPLE_TS:
            assert s.evaluate(t) == f.evaluate(t) + g.evaluate(t)
            assert p.evaluate(t) == f.evaluate(t) * g.evaluate(t)
            assert d.evaluate(t) == f.evaluate(t) - g.evaluate(t)
        assert (F(3) * f).evaluate(F(1, 3)) == 3 * f.evaluate(F(1, 3))
    with pytest.raises(ValueError):
        sawtooth().scale(0.5)  # floats stay out of the exact backend


def test_dilate_samples():
    rng = random.Random(37)
    for _ in range(25):
        f = random_function(rng)
        for d in (2, 3):
            g = dilate(f, d)
            for t in SAMPLE_TS:
                assert g.evaluate(t) == f.evaluate((d * t) % 1)
    with pytest.raises(ValueError):
        dilate(sawtooth(), 0)


def test_transfer_definition_and_properties():
    rng = random.Random(41)
    for _ in range(25):
        f = random_function(rng)
        tf = transfer(f)
        for t in SAMPLE_TS:
            assert tf.evaluate(t) == F(1, 2) * (f.evaluate(t / 2)
                                                + f.evaluate((t + 1) / 2))
        assert integrate(tf) == integrate(f)
        # transfer is a left inverse of dilation by 2
        assert (transfer(dilate(f, 2)) - f).is_zero


def test_integrate_examples():
    assert integrate(sawtooth()) == F(1, 2)
    assert integrate(PiecewiseFunction.indicator(F(1, 4), F(5, 8))) == F(3, 8)
    assert integrate(PiecewiseFunction.zero()) == 0
    assert integrate(PiecewiseFunction.polynomial((F(0), F(0), F(1)))) == F(1, 3)


def test_winding_examples():
    assert winding(sawtooth()) == 1
    assert winding(PiecewiseFunction.constant(F(7))) == 0
    two = PiecewiseFunction([F(0), F(1, 2)], [(F(0), F(2)), (F(-1), F(2))])
    assert winding(two) == 2
    rev = PiecewiseFunction.polynomial((F(0), F(-2)))
    assert winding(rev) == -2


def test_winding_rejects_bad_curves():
    # non-integer jump at 1/2 means the exponential loop is not closed
    broken = PiecewiseFunction([F(0), F(1, 2)], [(F(0), F(1)), ()])
    with pytest.raises(ValueError, match="discontinuous"):
        winding(broken)
    quad = PiecewiseFunction.polynomial((F(0), F(0), F(1)))
    with pytest.raises(ValueError, match="linear"):
        winding(quad)


def test_is_zero_and_partition():
    halves = (PiecewiseFunction.indicator(F(0), F(1, 2))
              + PiecewiseFunction.indicator(F(1, 2), F(1)))
    assert (halves - PiecewiseFunction.one()).is_zero
    assert not (halves - PiecewiseFunction.constant(F(4, 5))).is_zero


def test_serialization_round_trip_exact():
    rng = random.Random(43)
    for _ in range(10):
        f = random_function(rng)
        blob = json.dumps(function_to_json_obj(f))
        assert function_from_json_obj(json.loads(blob)) == f


def test_serialization_round_trip_numeric():
    f = PiecewiseFunction([F(0)], [(((1 + 2j, 0.5j), F(1, 2)),)], NUMERIC)
    blob = json.dumps(function_to_json_obj(f))
    assert function_from_json_obj(json.loads(blob)) == f
    g = sawtooth().to_numeric()
    assert function_from_json_obj(function_to_json_obj(g)) == g


def test_numeric_backend_agrees_on_samples():
    rng = random.Random(47)
    for _ in range(10):
        f = random_function(rng)
        g = f.to_numeric()
        # sample piece midpoints: float rounding at a breakpoint may select
        # the neighbouring piece, which is fine but not comparable
        for lo, hi in f.piece_bounds():
            t = (lo + hi) / 2
            assert math.isclose(abs(g(float(t)) - float(f.evaluate(t))), 0.0,
                                abs_tol=1e-12)


def test_numeric_conjugate():
    f = PiecewiseFunction([F(0)], [(((1j,), F(1, 3)),)], NUMERIC)
    g = f.conjugate()
    for t in (0.0, 0.21, 0.73):
        assert abs(g(t) - f(t).conjugate()) < 1e-12
    assert sawtooth().conjugate() == sawtooth()  # exact data is real


def test_numeric_functions_refuse_exact_queries():
    f = sawtooth().to_numeric()
    with pytest.raises(ValueError):
        integrate(f)
    with pytest.raises(ValueError):
        winding(f)
    with pytest.raises(ValueError):
        f.evaluate(F(1, 4))
