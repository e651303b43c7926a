"""Dimension-growth entropy machinery and the matrix compression map.

The growth estimate tracks the exact linear dimension of the span of a
monomial window together with its images under the canonical
endomorphism, term by term.  Dimensions are ranks of exact coefficient
matrices: every element is refined so all annihilation words share one
length, at which point distinct triples are linearly independent and a
sparse echelon pass over Gaussian-rational rows gives the rank with no
sampling involved.

The compression map sends x to the matrix (S_mu^* x S_nu) over all
length-r words; for admissible inputs each entry collapses to a single
partial-isometry monomial, only two consecutive unitary exponents occur
across the whole matrix, and each monomial's positions form a partial
permutation pattern, which is the structure theorem verified by
``rho_matrix``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraParams, Element, Monomial, all_words
from .exact import QQi

Word = Tuple[int, ...]


def word_value(word: Word, n: int) -> int:
    """Base-n value of a word: sum of (letter - 1) * n^position."""
    total = 0
    for i, letter in enumerate(word):
        if not 1 <= letter <= n:
            raise ValueError(f"letter {letter} outside 1..{n}")
        total += (letter - 1) * n ** i
    return total


def window_size(params: AlgebraParams, s: int) -> int:
    n = params.n
    words = sum(n ** a for a in range(s + 1))
    return words * words * (2 * n ** s + 1)


def monomial_window(params: AlgebraParams, s: int,
                    size_bound: int = 200_000) -> List[Monomial]:
    """All monomials with word lengths <= s and |exponent| <= n^s."""
    if s < 0:
        raise ValueError("window parameter must be >= 0")
    count = window_size(params, s)
    if count > size_bound:
        raise ValueError(f"window size {count} exceeds bound {size_bound}")
    words: List[Word] = []
    for length in range(s + 1):
        words.extend(all_words(params.n, length))
    kmax = params.n ** s
    out = [Monomial(mu, k, nu)
           for mu in words for k in range(-kmax, kmax + 1) for nu in words]
    assert len(out) == count
    return out


# -- exact rank over refined rows ----------------------------------------


class _Echelon:
    """Incremental sparse echelon over the Gaussian rationals."""

    def __init__(self) -> None:
        self.pivots: Dict[Monomial, Dict[Monomial, QQi]] = {}

    def insert(self, row: Dict[Monomial, QQi]) -> bool:
        """Reduce row against the basis; returns True if rank grew."""
        row = {k: v for k, v in row.items() if not v.is_zero()}
        while row:
            key = min(row)
            coeff = row[key]
            piv = self.pivots.get(key)
            if piv is None:
                self.pivots[key] = {k: v / coeff for k, v in row.items()}
                return True
            for k, v in piv.items():
                delta = row.get(k, QQi.of(0)) - coeff * v
                if delta.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = delta
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _refined_row(elem: Element, level: int) -> Dict[Monomial, QQi]:
    return dict(elem.refine_to_level(level).items())


def span_dimension(elements: Sequence[Element],
                   term_bound: int = 2_000_000) -> int:
    """Exact dimension of the linear span of the given elements.

    Refines everything to a common annihilation-word length; at that
    level distinct monomials are linearly independent, so the dimension
    is the rank of the sparse coefficient matrix.
    """
    elems = [e for e in elements if e]
    if not elems:
        return 0
    params = elems[0].params
    if params.n < 2:
        raise ValueError("span dimension requires n >= 2; the single-isometry "
                         "algebra admits no faithful common refinement")
    level = max(len(mon.nu) for e in elems for mon, _ in e.items())
    cost = sum(params.n ** (level - len(mon.nu))
               for e in elems for mon, _ in e.items())
    if cost > term_bound:
        raise ValueError(f"refined term count {cost} exceeds bound {term_bound}")
    ech = _Echelon()
    for e in elems:
        ech.insert(_refined_row(e, level))
    return ech.rank


# -- growth table -----------------------------------------------------------


@dataclass(frozen=True)
class EntropyRow:
    depth: int
    dimension: int
    slope: Optional[float]
    normalized: float


@dataclass(frozen=True)
class EntropyTable:
    m: int
    n: int
    s: int
    rows: Tuple[EntropyRow, ...]
    truncated: bool = False
    warning: Optional[str] = None

    @property
    def growth_rate(self) -> Optional[float]:
        for row in reversed(self.rows):
            if row.slope is not None:
                return row.slope
        # truncation can stop the sweep before any row exists
        return self.rows[-1].normalized if self.rows else None

    def dimensions(self) -> List[int]:
        return [row.dimension for row in self.rows]

    def to_json_obj(self) -> dict:
        return {
            "m": self.m, "n": self.n, "s": self.s,
            "rows": [{"N": r.depth, "dimension": r.dimension,
                      "slope": r.slope, "normalized": r.normalized}
                     for r in self.rows],
            "growth_rate": self.growth_rate,
            "log_n": math.log(self.n),
            "truncated": self.truncated,
            "warning": self.warning,
        }


def entropy_estimate(params: AlgebraParams, s: int, n_max: int,
                     term_bound: int = 5_000_000) -> EntropyTable:
    """Dimension growth of the window under the canonical endomorphism.

    Tracks D_N = dim span of the window monomials together with the
    individual terms of their first N-1 endomorphism images.  Terms of
    the level-l image all share annihilation length l + s at most, so
    one refinement level serves every batch and ranks accumulate in a
    single echelon pass.  Requires m = 1.
    """
    if params.m != 1:
        raise ValueError("growth estimate requires m = 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = params.n
    window = monomial_window(params, s)
    level = (n_max - 1) + s
    ech = _Echelon()
    rows: List[EntropyRow] = []
    batch = window
    truncated = False
    warning = None
    prev_dim: Optional[int] = None
    spent = 0
    for depth in range(1, n_max + 1):
        cost = sum(n ** (level - len(mon.nu)) for mon in batch)
        if spent + cost > term_bound:
            truncated = True
            warning = (f"stopped at depth {depth - 1}: refined term count "
                       f"{spent + cost} would exceed bound {term_bound}")
            break
        spent += cost
        for mon in batch:
            elem = Element.monomial(params, mon.mu, mon.k, mon.nu)
            ech.insert(_refined_row(elem, level))
        dim = ech.rank
        slope = None if prev_dim is None else math.log(dim) - math.log(prev_dim)
        rows.append(EntropyRow(depth, dim, slope, math.log(dim) / depth))
        prev_dim = dim
        batch = [Monomial((i,) + mon.mu, mon.k, (i,) + mon.nu)
                 for mon in batch for i in range(1, n + 1)]
    for earlier, later in zip(rows, rows[1:]):
        assert later.dimension >= earlier.dimension
    return EntropyTable(params.m, params.n, s, tuple(rows), truncated, warning)


# -- matrix compression map -------------------------------------------------


def _iterate_endo(elem: Element, times: int) -> Element:
    for _ in range(times):
        elem = elem.canonical_endo()
    return elem


def rho_matrix(params: AlgebraParams, mon: Monomial, r: int, l: int,
               s: Optional[int] = None) -> Tuple[List[List[Element]], dict]:
    """Compress the l-th endomorphism image of a monomial to matrix form.

    Returns the n^r x n^r matrix with entry (mu, nu) = S_mu^* Phi^l(x) S_nu
    plus a report checking the structure theorem: each entry is a single
    coefficient-one monomial whose surviving word has length equal to the
    input's creation/annihilation surplus, at most two consecutive unitary
    exponents occur across the matrix, the base exponent respects the
    window bound, and the positions carrying any fixed monomial form a
    partial permutation.
    """
    if params.m != 1:
        raise ValueError("matrix compression requires m = 1")
    if s is None:
        s = max(len(mon.mu), len(mon.nu))
    if len(mon.mu) > s or len(mon.nu) > s:
        raise ValueError(f"word length {max(len(mon.mu), len(mon.nu))} "
                         f"violates the window bound s = {s}")
    if abs(mon.k) > params.n ** s:
        raise ValueError(f"exponent {mon.k} violates the window bound "
                         f"n^s = {params.n ** s}")
    if not 1 <= l <= r - s:
        raise ValueError(f"iteration depth {l} violates 1 <= l <= r - s = {r - s}")

    x = _iterate_endo(Element.monomial(params, mon.mu, mon.k, mon.nu), l)
    words = list(all_words(params.n, r))
    lifts = []
    for w in words:
        acc = Element.unit(params)
        for letter in w:
            acc = acc * Element.isometry(params, letter)
        lifts.append(acc)
    # surplus letters survive into each entry as a word of this length
    surplus = len(mon.mu) - len(mon.nu)
    want_mu, want_nu = max(surplus, 0), max(-surplus, 0)
    matrix: List[List[Element]] = []
    groups: Dict[Monomial, List[Tuple[int, int]]] = {}
    entries_ok = True
    nonzero = 0
    for i in range(len(words)):
        row: List[Element] = []
        left = lifts[i].adjoint() * x
        for j in range(len(words)):
            entry = left * lifts[j]
            row.append(entry)
            if not entry:
                continue
            nonzero += 1
            terms = list(entry.items())
            if len(terms) != 1:
                entries_ok = False
                continue
            emon, coeff = terms[0]
            if (len(emon.mu) != want_mu or len(emon.nu) != want_nu
                    or coeff != QQi.of(1)):
                entries_ok = False
                continue
            groups.setdefault(emon, []).append((i, j))
        matrix.append(row)

    exps = sorted({g.k for g in groups})
    consecutive = (len(exps) <= 1
                   or (len(exps) == 2 and exps[1] == exps[0] + 1))
    kbound = params.n ** s
    if not exps:
        q_bound_ok = True
    elif len(exps) == 2:
        q_bound_ok = abs(exps[0]) <= kbound
    else:
        q_bound_ok = abs(exps[0]) <= kbound or abs(exps[0] - 1) <= kbound
    partial_perm = True
    for positions in groups.values():
        rows_seen = [i for i, _ in positions]
        cols_seen = [j for _, j in positions]
        if len(set(rows_seen)) != len(rows_seen) or len(set(cols_seen)) != len(cols_seen):
            partial_perm = False
    report = {
        "size": len(words),
        "nonzero_entries": nonzero,
        "surplus_word_length": surplus,
        "entries_well_formed": entries_ok,
        "exponents": exps,
        "consecutive": consecutive,
        "base_exponent_bounded": q_bound_ok,
        "partial_permutations": partial_perm,
        "pass": entries_ok and consecutive and q_bound_ok and partial_perm,
    }
    return matrix, report
