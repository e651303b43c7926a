"""Normal-form monomial calculus for the circle correspondence algebras.

The algebra A(m, n), for coprime integers m, n >= 1, is generated by a
unitary z and isometries S_1, ..., S_n subject to

    z S_i  = S_{i+1}         (1 <= i < n)
    z S_n  = S_1 z^m
    S_i* S_j = 0             (i != j)
    S_1 S_1* + ... + S_n S_n* = 1

Every element is a finite Q(i)-linear combination of monomials
S_mu z^k S_nu* where mu, nu are words in {1..n} and k is an integer.
Those monomials span the dense *-subalgebra but are not linearly
independent (the unit relation above is one dependency), so structural
equality of term dictionaries is weaker than equality in the algebra.
Use `Element.is_zero` for the latter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Tuple, Union

from .exact import QQI_ZERO, QQi, Scalar, frac_str, parse_frac

Word = Tuple[int, ...]


@dataclass(frozen=True)
class AlgebraParams:
    """Parameter pair (m, n) of the algebra; must be coprime positives."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("m and n must be integers")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"m, n must be >= 1, got ({self.m}, {self.n})")
        if gcd(self.m, self.n) != 1:
            raise ValueError(f"m and n must be coprime, got ({self.m}, {self.n})")

    def check_letter(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"isometry index {i} outside 1..{self.n}")

    def check_word(self, word: Iterable[int]) -> Word:
        w = tuple(word)
        for i in w:
            self.check_letter(i)
        return w


class Monomial(NamedTuple):
    """A spanning monomial S_mu z^k S_nu*."""

    mu: Word
    k: int
    nu: Word

    def gauge_degree(self) -> int:
        return len(self.mu) - len(self.nu)


def all_words(n: int, length: int) -> Iterator[Word]:
    """All words of the given length over the letters 1..n."""
    return product(range(1, n + 1), repeat=length)


def shift_through(params: AlgebraParams, k: int, j: int) -> Tuple[int, int]:
    """Commute z^k past a single isometry: z^k S_j = S_{j'} z^{k'}.

    Repeated use of z S_i = S_{i+1} and z S_n = S_1 z^m gives, with
    floor division toward minus infinity,

        j' = ((j - 1 + k) mod n) + 1
        k' = m * ((j - 1 + k) // n)
    """
    params.check_letter(j)
    t = j - 1 + k
    return t % params.n + 1, params.m * (t // params.n)


def push_exponent(params: AlgebraParams, k: int, word: Word) -> Tuple[Word, int]:
    """Commute z^k past S_word: z^k S_word = S_{word'} z^{k'}."""
    out = []
    for j in word:
        j2, k = shift_through(params, k, j)
        out.append(j2)
    return tuple(out), k


def mul_monomials(params: AlgebraParams, a: Monomial, b: Monomial) -> Union[Monomial, None]:
    """Product of two spanning monomials, or None when it vanishes.

    S_nu* S_alpha is S_rest when nu is a prefix of alpha, S_rest* when
    alpha is a prefix of nu, and 0 otherwise; the surviving z-power is
    then pushed through the leftover word.
    """
    nu, alpha = a.nu, b.mu
    la, lb = len(nu), len(alpha)
    if la <= lb:
        if nu != alpha[:la]:
            return None
        rest = alpha[la:]
        w, k2 = push_exponent(params, a.k, rest)
        return Monomial(a.mu + w, k2 + b.k, b.nu)
    if alpha != nu[:lb]:
        return None
    rest = nu[lb:]
    w, c = push_exponent(params, -b.k, rest)
    return Monomial(a.mu, a.k - c, b.nu + w)


class Element:
    """A finite Q(i)-linear combination of spanning monomials."""

    __slots__ = ("params", "_terms")

    def __init__(self, params: AlgebraParams,
                 terms: Union[dict, Iterable[Tuple[Monomial, Scalar]], None] = None):
        self.params = params
        merged: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mon, coeff in items:
                c = QQi.of(coeff)
                if c.is_zero():
                    continue
                acc = merged.get(mon, QQI_ZERO) + c
                if acc.is_zero():
                    merged.pop(mon, None)
                else:
                    merged[mon] = acc
        self._terms = merged

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, params: AlgebraParams) -> "Element":
        return cls(params)

    @classmethod
    def unit(cls, params: AlgebraParams) -> "Element":
        return cls(params, {Monomial((), 0, ()): QQi.of(1)})

    @classmethod
    def isometry(cls, params: AlgebraParams, i: int) -> "Element":
        params.check_letter(i)
        return cls(params, {Monomial((i,), 0, ()): QQi.of(1)})

    @classmethod
    def unitary(cls, params: AlgebraParams, k: int = 1) -> "Element":
        return cls(params, {Monomial((), k, ()): QQi.of(1)})

    @classmethod
    def monomial(cls, params: AlgebraParams, mu: Iterable[int], k: int,
                 nu: Iterable[int], coeff: Scalar = 1) -> "Element":
        return cls(params, {Monomial(params.check_word(mu), k,
                                     params.check_word(nu)): QQi.of(coeff)})

    # -- container views ----------------------------------------------

    def items(self) -> Iterator[Tuple[Monomial, QQi]]:
        return iter(self._terms.items())

    def coefficient(self, mon: Monomial) -> QQi:
        return self._terms.get(mon, QQI_ZERO)

    def term_count(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        # structural: same merged term dictionaries, not algebra equality
        if not isinstance(other, Element):
            return NotImplemented
        return self.params == other.params and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.params, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "<0>"
        bits = []
        for mon in sorted(self._terms):
            c = self._terms[mon]
            s_mu = "".join(f"S{i}" for i in mon.mu) or ""
            s_nu = "".join(f"S{i}*" for i in reversed(mon.nu)) or ""
            z = f"z^{mon.k}" if mon.k else ""
            body = (s_mu + z + s_nu) or "1"
            bits.append(f"({c}){body}")
        return " + ".join(bits)

    # -- ring operations ----------------------------------------------

    def _require_same(self, other: "Element") -> None:
        if self.params != other.params:
            raise ValueError("elements live over different (m, n) parameters")

    def __add__(self, other: "Element") -> "Element":
        self._require_same(other)
        terms = dict(self._terms)
        out = Element(self.params, terms)
        for mon, c in other._terms.items():
            acc = out._terms.get(mon, QQI_ZERO) + c
            if acc.is_zero():
                out._terms.pop(mon, None)
            else:
                out._terms[mon] = acc
        return out

    def __neg__(self) -> "Element":
        return Element(self.params, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scaled(self, s: Scalar) -> "Element":
        c = QQi.of(s)
        return Element(self.params, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other: Union["Element", Scalar]) -> "Element":
        if not isinstance(other, Element):
            return self.scaled(other)
        self._require_same(other)
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mon = mul_monomials(self.params, ma, mb)
                if mon is None:
                    continue
                acc = out.get(mon, QQI_ZERO) + ca * cb
                if acc.is_zero():
                    out.pop(mon, None)
                else:
                    out[mon] = acc
        return Element(self.params, out)

    def __rmul__(self, other: Scalar) -> "Element":
        return self.scaled(other)

    def __pow__(self, e: int) -> "Element":
        if e < 0:
            raise ValueError("negative powers are not defined for general elements")
        acc = Element.unit(self.params)
        for _ in range(e):
            acc = acc * self
        return acc

    def adjoint(self) -> "Element":
        return Element(self.params, {Monomial(m.nu, -m.k, m.mu): c.conjugate()
                                     for m, c in self._terms.items()})

    # -- gauge structure ----------------------------------------------

    def gauge_degrees(self) -> set:
        return {m.gauge_degree() for m in self._terms}

    def degree_part(self, d: int) -> "Element":
        return Element(self.params, {m: c for m, c in self._terms.items()
                                     if m.gauge_degree() == d})

    def gauge_expectation(self) -> "Element":
        """Conditional expectation onto the gauge-fixed subalgebra."""
        return self.degree_part(0)

    def canonical_endo(self) -> "Element":
        """The endomorphism x -> sum_i S_i x S_i*."""
        out: dict = {}
        for mon, c in self._terms.items():
            for i in range(1, self.params.n + 1):
                lifted = Monomial((i,) + mon.mu, mon.k, (i,) + mon.nu)
                acc = out.get(lifted, QQI_ZERO) + c
                if acc.is_zero():
                    out.pop(lifted, None)
                else:
                    out[lifted] = acc
        return Element(self.params, out)

    def kms_state(self) -> QQi:
        """The gauge-invariant state: S_mu z^k S_nu* -> [mu=nu][k=0] n^-|mu|."""
        total = QQI_ZERO
        for mon, c in self._terms.items():
            if mon.k == 0 and mon.mu == mon.nu:
                total = total + c * Fraction(1, self.params.n ** len(mon.mu))
        return total

    # -- zero testing ---------------------------------------------------

    def refine_to_level(self, level: int) -> "Element":
        """Rewrite so every term has |nu| = level, via sum_d S_d S_d* = 1.

        S_mu z^k S_nu* = sum over words d of length (level - |nu|) of
        S_mu (z^k S_d) (S_nu S_d)*, with z^k pushed through S_d.
        """
        n = self.params.n
        out: dict = {}
        for mon, c in self._terms.items():
            pad = level - len(mon.nu)
            if pad < 0:
                raise ValueError(f"term already has |nu| > {level}")
            if pad == 0:
                targets = [mon]
            else:
                targets = []
                for delta in all_words(n, pad):
                    w, k2 = push_exponent(self.params, mon.k, delta)
                    targets.append(Monomial(mon.mu + w, k2, mon.nu + delta))
            for t in targets:
                acc = out.get(t, QQI_ZERO) + c
                if acc.is_zero():
                    out.pop(t, None)
                else:
                    out[t] = acc
        return Element(self.params, out)

    def _forward_map(self, mu: Word, k: int) -> Tuple[Fraction, Fraction]:
        """(slope, offset) of w -> S_mu z^k acting on basis labels in Z[1/m].

        Uses the shift model S_j: q -> (n/m) q + (j - 2); the composite on
        e_{w} after S_nu* has stripped nu is affine with slope (n/m)^|mu|.
        """
        r = Fraction(self.params.n, self.params.m)
        slope = r ** len(mu)
        off = slope * k
        for pos, letter in enumerate(mu, start=1):
            off += r ** (len(mu) - pos) * (letter - 2)
        return slope, off

    def is_zero(self) -> bool:
        """Exact zero test via the separating shift representation.

        Refines all terms to a common |nu| level and merges; distinct
        refined triples act by distinct partial affine maps on the basis
        of the shift representation, so the merged combination is checked
        by sampling integer basis labels away from the finitely many
        pairwise coincidence points and requiring every image bucket to
        cancel.
        """
        if self.params.n == 1:
            raise ValueError(
                "zero test requires n >= 2: the shift representation used "
                "for separation is not guaranteed faithful when n = 1")
        if not self._terms:
            return True
        level = max(len(mon.nu) for mon in self._terms)
        refined = self.refine_to_level(level)
        if not refined._terms:
            return True
        groups: dict = {}
        for mon, c in refined._terms.items():
            groups.setdefault(mon.nu, []).append((mon.mu, mon.k, c))
        for terms in groups.values():
            maps = [(*self._forward_map(mu, k), c) for mu, k, c in terms]
            excluded = set()
            for (a1, b1, _), (a2, b2, _) in combinations(maps, 2):
                if a1 != a2:
                    excluded.add((b2 - b1) / (a1 - a2))
            g = len(maps)
            needed = g * (g - 1) // 2 + g + 1
            w = 0
            tested = 0
            while tested < needed:
                if Fraction(w) in excluded:
                    w += 1
                    continue
                buckets: dict = {}
                for a, b, c in maps:
                    img = a * w + b
                    buckets[img] = buckets.get(img, QQI_ZERO) + c
                if any(not v.is_zero() for v in buckets.values()):
                    return False
                tested += 1
                w += 1
        return True

    # -- serialization --------------------------------------------------

    def to_json_obj(self) -> list:
        out = []
        for mon in sorted(self._terms):
            c = self._terms[mon]
            out.append({"mu": list(mon.mu), "k": mon.k, "nu": list(mon.nu),
                        "re": frac_str(c.re), "im": frac_str(c.im)})
        return out

    @classmethod
    def from_json_obj(cls, params: AlgebraParams, obj: list) -> "Element":
        terms = []
        for rec in obj:
            mon = Monomial(params.check_word(rec["mu"]), int(rec["k"]),
                           params.check_word(rec["nu"]))
            # omitted coefficients mean the bare monomial
            coeff = QQi(parse_frac(rec.get("re", "1")),
                        parse_frac(rec.get("im", "0")))
            terms.append((mon, coeff))
        return cls(params, terms)
