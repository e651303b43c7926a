"""The distinguished projection in the (1, 2) circle-correspondence algebra.

The construction lives over m = 1, n = 2: two generating isometries, the
doubling endomorphism phi(f) = f(2t), and a 2x2 matrix P built from bump
functions a_0, b_0 and off-diagonal square roots a_1, b_1.  Two
independent verifications are provided.  The exact path checks the
sufficient piecewise-polynomial identities that force P^2 = P, entirely
in rational arithmetic.  The numeric path assembles P, squares it with
the operator rewriting rules, and samples the residual kernel on a
uniform grid; the square roots prevent this path from being exact, which
is why the functions travel as callables rather than polynomial pieces.

The printed form of b_0 in the source material is internally
inconsistent; ``build_canonical_data`` returns the unique
piecewise-linear completion that satisfies every verification identity
below together with the published trace 7/16 and K-theory class -4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .functions import PiecewiseFunction, dilate, integrate, winding

# -- exact data and conditions -------------------------------------------


@dataclass(frozen=True)
class ProjectionData:
    a0: PiecewiseFunction
    b0: PiecewiseFunction
    a1sq: PiecewiseFunction
    b1sq: PiecewiseFunction
    delta1: PiecewiseFunction
    delta2: PiecewiseFunction


def build_canonical_data() -> ProjectionData:
    """Canonical bump data: a_0 as printed, b_0 reconstructed."""
    F = Fraction
    a0 = PiecewiseFunction.from_segments([
        (F(1, 2), F(3, 4), (F(-2), F(4))),
        (F(3, 4), F(7, 8), (F(7), F(-8))),
    ])
    b0 = PiecewiseFunction.from_segments([
        (F(0), F(1, 4), (F(1),)),
        (F(1, 4), F(3, 8), (F(3), F(-8))),
        (F(1, 2), F(3, 4), (F(-2), F(4))),
        (F(3, 4), F(1), (F(1),)),
    ])
    delta1 = PiecewiseFunction.indicator(F(3, 4), F(7, 8))
    delta2 = PiecewiseFunction.indicator(F(1, 4), F(3, 8))
    a1sq = (dilate(a0, 2) - dilate(a0 * a0, 2)) * delta1
    b1sq = (dilate(b0, 2) - dilate(b0 * b0, 2)) * delta2
    return ProjectionData(a0, b0, a1sq, b1sq, delta1, delta2)


def _first_nonzero_point(f: PiecewiseFunction) -> Optional[Fraction]:
    for (lo, hi), piece in zip(f.piece_bounds(), f.pieces):
        if not piece:
            continue
        for j in range(8):
            t = lo + (hi - lo) * Fraction(j, 8)
            if f.evaluate(t) != 0:
                return t
    return None


def _first_negative_point(f: PiecewiseFunction) -> Optional[Fraction]:
    # quadratic pieces: check endpoints and the interior critical point
    for (lo, hi), piece in zip(f.piece_bounds(), f.pieces):
        candidates = [lo, lo + (hi - lo) * Fraction(1, 2)]
        if len(piece) == 3 and piece[2] != 0:
            crit = -piece[1] / (2 * piece[2])
            if lo < crit < hi:
                candidates.append(crit)
        for t in candidates:
            if f.evaluate(t) < 0:
                return t
    return None


def check_conditions(data: ProjectionData) -> dict:
    """Exact verification of the identities that make P a projection.

    Identities involving the bare square roots are checked at the squared
    level, which is equivalent for nonnegative data.  Each entry reports
    pass/fail plus a witness point for the first failure.
    """
    d = data
    phi_a0 = dilate(d.a0, 2)
    phi_b0 = dilate(d.b0, 2)
    one = PiecewiseFunction.one()
    zero_checks: Dict[str, PiecewiseFunction] = {
        "a_split": phi_a0 - dilate(d.a0 * d.a0, 2)
                   - (d.a1sq + d.b1sq + dilate(d.a1sq, 2)),
        "b_split": phi_b0 - dilate(d.b0 * d.b0, 2)
                   - (d.a1sq + d.b1sq + dilate(d.b1sq, 2)),
        "a_unit_on_support": d.a1sq * ((d.a0 + phi_a0 - one) * (d.a0 + phi_a0 - one)),
        "b_unit_on_support": d.b1sq * ((d.b0 + phi_b0 - one) * (d.b0 + phi_b0 - one)),
        "a_shift_orth_a": d.a1sq * dilate(d.a1sq, 2),
        "a_shift_orth_b": d.a1sq * dilate(d.b1sq, 2),
        "b_shift_orth_a": d.b1sq * dilate(d.a1sq, 2),
        "b_shift_orth_b": d.b1sq * dilate(d.b1sq, 2),
        "cross_disjoint": d.a1sq * d.b1sq,
        "a_partition": (d.a0 + phi_b0 - one) * d.delta1,
        "b_partition": (phi_a0 + d.b0 - one) * d.delta2,
    }
    identities: Dict[str, dict] = {}
    for name, diff in zero_checks.items():
        point = _first_nonzero_point(diff)
        identities[name] = {"pass": point is None,
                            "first_failure": None if point is None else str(point)}
    for name, f in (("a_sq_nonneg", d.a1sq), ("b_sq_nonneg", d.b1sq)):
        point = _first_negative_point(f)
        identities[name] = {"pass": point is None,
                            "first_failure": None if point is None else str(point)}
    return {"identities": identities,
            "pass": all(entry["pass"] for entry in identities.values())}


def kms_trace(data: ProjectionData) -> Fraction:
    """Value of the canonical trace-like state on P: (int a_0 + int b_0)/2.

    The off-diagonal terms carry gauge degree +-1 and die under the state;
    the dilated diagonal entries integrate like their originals.
    """
    return (integrate(data.a0) + integrate(data.b0)) / 2


def k0_class(data: ProjectionData) -> int:
    """K_0-class of P via the boundary map to winding numbers."""
    return (winding(dilate(data.a0 * data.delta1, 2))
            + winding(dilate(data.b0 * data.delta2, 2)))


def telescoping_identity(data: ProjectionData, power: int) -> dict:
    """Check sum_{j<power-1} x0^j * x1sq = (x0 - x0^power) * delta, both blocks.

    Holds for every power >= 1 because x1sq = (x0 - x0^2) * delta on its
    support; the corresponding printed display mixes the two blocks, so
    both consistent versions are verified here.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    report = {"power": power}
    for key, x0, x1sq, delta in (("a_version", data.a0, data.a1sq, data.delta1),
                                 ("b_version", data.b0, data.b1sq, data.delta2)):
        lhs = PiecewiseFunction.zero()
        x_pow = PiecewiseFunction.one()
        for _ in range(power - 1):
            lhs = lhs + x_pow * x1sq
            x_pow = x_pow * x0
        x_pow = x_pow * x0  # now x0^power
        rhs = (x0 - x_pow) * delta
        report[key] = (lhs - rhs).is_zero
    report["pass"] = report["a_version"] and report["b_version"]
    return report


# -- numeric engine --------------------------------------------------------


class CircleFn:
    """Callable function on the circle; ops build new closures."""

    __slots__ = ("fn",)

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, t: float) -> complex:
        return self.fn(t % 1.0)

    @classmethod
    def const(cls, c) -> "CircleFn":
        c = complex(c)
        return cls(lambda t: c)

    @classmethod
    def from_exact(cls, pw: PiecewiseFunction) -> "CircleFn":
        return cls(lambda t: complex(pw.evaluate_float(t)))

    @classmethod
    def sqrt_of(cls, pw: PiecewiseFunction) -> "CircleFn":
        # clamps tiny negatives from the indicator edges
        return cls(lambda t: complex(math.sqrt(max(float(pw.evaluate_float(t)), 0.0))))

    def __mul__(self, other: "CircleFn") -> "CircleFn":
        f, g = self.fn, other.fn
        return CircleFn(lambda t: f(t) * g(t))

    def conjugate(self) -> "CircleFn":
        f = self.fn
        return CircleFn(lambda t: complex(f(t)).conjugate())

    def dilated(self, d: int) -> "CircleFn":
        if d == 1:
            return self
        f = self.fn
        return CircleFn(lambda t: f((d * t) % 1.0))


FN_ONE = CircleFn.const(1.0)


def contract_through(i: int, j: int, h: CircleFn) -> CircleFn:
    """S_i* h S_j as a function: average of h over halved points with phase."""
    d = j - i

    def fn(t: float) -> complex:
        s0 = t / 2.0
        s1 = (t + 1.0) / 2.0
        return 0.5 * (cmath.exp(2j * cmath.pi * d * s0) * h(s0)
                      + cmath.exp(2j * cmath.pi * d * s1) * h(s1))

    return CircleFn(fn)


@dataclass(frozen=True)
class FETerm:
    """left * S_mu * S_nu^adj * right, words over {1, 2}."""
    left: CircleFn
    mu: Tuple[int, ...]
    nu: Tuple[int, ...]
    right: CircleFn


FnLike = Union[CircleFn, PiecewiseFunction, int, float, complex]


def _as_fn(f: FnLike) -> CircleFn:
    if isinstance(f, CircleFn):
        return f
    if isinstance(f, PiecewiseFunction):
        return CircleFn.from_exact(f)
    return CircleFn.const(f)


class FuncElement:
    """Finite sum of sandwich terms over the two-isometry algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[FETerm] = ()):
        self.terms = tuple(terms)

    @classmethod
    def sandwich(cls, mu: Sequence[int], f: FnLike, nu: Sequence[int]) -> "FuncElement":
        """S_mu f S_nu*; the middle function is pushed left through S_mu."""
        mu, nu = tuple(mu), tuple(nu)
        if not all(x in (1, 2) for x in mu + nu):
            raise ValueError("letters must be 1 or 2")
        left = _as_fn(f).dilated(2 ** len(mu))
        return cls((FETerm(left, mu, nu, FN_ONE),))

    @classmethod
    def function(cls, f: FnLike) -> "FuncElement":
        return cls((FETerm(_as_fn(f), (), (), FN_ONE),))

    def __add__(self, other: "FuncElement") -> "FuncElement":
        return FuncElement(self.terms + other.terms)

    def __sub__(self, other: "FuncElement") -> "FuncElement":
        minus = [FETerm(CircleFn.const(-1.0) * t.left, t.mu, t.nu, t.right)
                 for t in other.terms]
        return FuncElement(self.terms + tuple(minus))

    def __mul__(self, other: "FuncElement") -> "FuncElement":
        out: List[FETerm] = []
        for s in self.terms:
            for t in other.terms:
                out.append(_term_product(s, t))
        return FuncElement(out)

    def adjoint(self) -> "FuncElement":
        return FuncElement([FETerm(t.right.conjugate(), t.nu, t.mu,
                                   t.left.conjugate()) for t in self.terms])


def _term_product(s: FETerm, t: FETerm) -> FETerm:
    h = s.right * t.left
    nu = list(s.nu)
    alpha = list(t.mu)
    while nu and alpha:
        h = contract_through(nu.pop(0), alpha.pop(0), h)
    if not nu:
        left = s.left * h.dilated(2 ** len(s.mu))
        return FETerm(left, s.mu + tuple(alpha), t.nu, t.right)
    right = h.dilated(2 ** len(t.nu)) * t.right
    return FETerm(s.left, s.mu, t.nu + tuple(nu), right)


def _word_phase(word: Tuple[int, ...], t: float) -> complex:
    acc = complex(1.0)
    cur = t
    for letter in word:
        if letter == 2:
            acc *= cmath.exp(2j * cmath.pi * cur)
        cur = (2.0 * cur) % 1.0
    return acc


def sample_element(elem: FuncElement, grid: int) -> float:
    """Sup of the sampled operator kernel of the element.

    In the defining circle representation, a term contributes along the
    correspondence x = (2^a t + j) / 2^b; contributions sharing the same
    affine line are summed before taking absolute values, so exact
    operator cancellations show up as zeros here.
    """
    buckets: Dict[Tuple[Fraction, Fraction], List[complex]] = {}
    ts = [i / grid for i in range(grid)]
    for term in elem.terms:
        a, b = len(term.mu), len(term.nu)
        pow_a, pow_b = 2 ** a, 2 ** b
        for j in range(pow_b):
            key = (Fraction(pow_a, pow_b), Fraction(j, pow_b) % 1)
            acc = buckets.setdefault(key, [0j] * grid)
            for idx, t in enumerate(ts):
                x = ((pow_a * t + j) / pow_b) % 1.0
                amp = (term.left(t) * _word_phase(term.mu, t) / pow_b
                       * _word_phase(term.nu, x).conjugate() * term.right(x))
                acc[idx] += amp
    worst = 0.0
    for acc in buckets.values():
        for v in acc:
            worst = max(worst, abs(v))
    return worst


def _matrix_of(data: ProjectionData) -> List[List[FuncElement]]:
    a1 = CircleFn.sqrt_of(data.a1sq)
    b1 = CircleFn.sqrt_of(data.b1sq)
    phi_a0 = CircleFn.from_exact(dilate(data.a0, 2))
    phi_b0 = CircleFn.from_exact(dilate(data.b0, 2))
    S = FuncElement.sandwich
    p11 = S((1,), a1, ()) + FuncElement.function(phi_a0) + S((), a1, (1,))
    p12 = S((2,), a1, ()) + S((), b1, (2,))
    p21 = S((2,), b1, ()) + S((), a1, (2,))
    p22 = S((1,), b1, ()) + FuncElement.function(phi_b0) + S((), b1, (1,))
    return [[p11, p12], [p21, p22]]


def assemble_and_square(data: ProjectionData, grid: int = 4096) -> dict:
    """Assemble P, square it by operator rewriting, sample the residual.

    Returns the sampled sup of |P^2 - P| entrywise, the same figure on a
    doubled grid for stability, and the sampled self-adjointness defect.
    """
    if grid < 2 or grid & (grid - 1):
        raise ValueError("grid must be a power of two")
    p = _matrix_of(data)
    p2 = [[p[i][0] * p[0][j] + p[i][1] * p[1][j] for j in range(2)]
          for i in range(2)]
    residual = max(sample_element(p2[i][j] - p[i][j], grid)
                   for i in range(2) for j in range(2))
    doubled = max(sample_element(p2[i][j] - p[i][j], 2 * grid)
                  for i in range(2) for j in range(2))
    adj_defect = max(sample_element(p[i][j] - p[j][i].adjoint(), grid)
                     for i in range(2) for j in range(2))
    return {
        "grid": grid,
        "residual": residual,
        "residual_doubled": doubled,
        "grid_stable": abs(residual - doubled) < 1e-9,
        "self_adjoint_defect": adj_defect,
        "pass": residual < 1e-9 and abs(residual - doubled) < 1e-9
                and adj_defect == 0.0,
    }
