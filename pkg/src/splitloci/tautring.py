"""Graded Artinian quotients Q[k1,...,kw]/I with weighted variables.

Verifies, by degreewise exact linear algebra over the rationals, the
ring-theoretic properties asserted of the built-in kappa-class ideals:
Hilbert function, socle degrees and dimensions, the Gorenstein pairing
test, the Artinian vanishing window, and minimal-generator counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .polynomial import Poly

Exponents = Tuple[int, ...]


def _var(i: int) -> str:
    return "k%d" % (i + 1)


def monomials(d: int, weights: Sequence[int]) -> List[Exponents]:
    """All exponent vectors of weighted degree exactly d, lex order."""
    if d < 0:
        raise ValueError("negative degree")
    out: List[Exponents] = []

    def rec(i: int, remaining: int, acc: Tuple[int, ...]):
        if i == len(weights):
            if remaining == 0:
                out.append(acc)
            return
        w = weights[i]
        for e in range(remaining // w, -1, -1):
            rec(i + 1, remaining - e * w, acc + (e,))

    rec(0, d, ())
    return out


def _mono_exponents(mono, nvars: int) -> Exponents:
    exps = dict(mono)
    return tuple(exps.get(_var(i), 0) for i in range(nvars))


def _poly_from_exponents(exps: Exponents, coeff=1) -> Poly:
    mono = tuple((_var(i), e) for i, e in enumerate(exps) if e)
    return Poly({tuple(sorted(mono)): Fraction(coeff)})


def weighted_degree(p: Poly, weights: Sequence[int]) -> int:
    wmap = {_var(i): w for i, w in enumerate(weights)}
    return p.weighted_degree(wmap)


def is_homogeneous(p: Poly, weights: Sequence[int]) -> bool:
    wmap = {_var(i): w for i, w in enumerate(weights)}
    return p.is_homogeneous(wmap)


class WeightedIdeal:
    """Generator list over Q[k1..kw] with kappa_i of the given weight."""

    def __init__(self, weights: Sequence[int], generators: Sequence[Poly]):
        self.weights = tuple(int(w) for w in weights)
        self.generators = [g for g in generators]
        if any(g.is_zero() for g in self.generators):
            raise ValueError("zero generator")
        self.homogeneous = [is_homogeneous(g, self.weights)
                            for g in self.generators]

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def generator_degrees(self) -> List[int]:
        return [weighted_degree(g, self.weights) for g in self.generators]


def _rank(rows: List[List[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][c]
        m[rank] = [x / inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [row[:] for row in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _vector(p: Poly, basis: List[Exponents], nvars: int) -> List[Fraction]:
    index = {m: i for i, m in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for mono, coeff in p.terms.items():
        vec[index[_mono_exponents(mono, nvars)]] += coeff
    return vec


def _ideal_rows(ideal: WeightedIdeal, d: int,
                min_cofactor_degree: int = 0) -> List[List[Fraction]]:
    """Coefficient vectors of m*g_j spanning I_d (or (m.I)_d with
    min_cofactor_degree = 1), over the monomial basis of degree d."""
    weights = ideal.weights
    basis = monomials(d, weights)
    rows: List[List[Fraction]] = []
    for g, hom in zip(ideal.generators, ideal.homogeneous):
        if not hom:
            raise ValueError("homogenize first")
        dg = weighted_degree(g, weights)
        if d < dg:
            continue
        for exps in monomials(d - dg, weights):
            if min_cofactor_degree and sum(exps) < min_cofactor_degree:
                continue
            prod = _poly_from_exponents(exps) * g
            rows.append(_vector(prod, basis, ideal.nvars))
    return rows


def graded_ideal_rank(ideal: WeightedIdeal, d: int) -> int:
    return _rank(_ideal_rows(ideal, d))


def hilbert(ideal: WeightedIdeal, d_max: int) -> List[int]:
    """hilbert[d] = dim of the degree-d piece of the quotient ring."""
    return [len(monomials(d, ideal.weights)) - graded_ideal_rank(ideal, d)
            for d in range(d_max + 1)]


def _membership_constraints(ideal: WeightedIdeal, d: int,
                            var_index: int) -> List[List[Fraction]]:
    """Linear constraints on x in degree d saying k_i * x lies in I."""
    weights = ideal.weights
    basis_d = monomials(d, weights)
    target = d + weights[var_index]
    basis_t = monomials(target, weights)
    index_t = {m: i for i, m in enumerate(basis_t)}
    rref, pivots = _rref(_ideal_rows(ideal, target))
    nonpivots = [c for c in range(len(basis_t)) if c not in pivots]
    # multiplication by k_i maps monomial columns injectively
    constraints: List[List[Fraction]] = []
    for np_col in nonpivots:
        row = [Fraction(0)] * len(basis_d)
        for j, mono in enumerate(basis_d):
            shifted = list(mono)
            shifted[var_index] += 1
            col = index_t[tuple(shifted)]
            # residual coefficient of column np_col after reducing e_col
            value = Fraction(1) if col == np_col else Fraction(0)
            for rr, pc in zip(rref, pivots):
                if pc == col:
                    value -= rr[np_col]
                    break
            row[j] = value
        constraints.append(row)
    return constraints


def _kernel_basis(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    if not rows:
        return [[Fraction(1 if i == j else 0) for i in range(ncols)]
                for j in range(ncols)]
    rref, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(rref, pivots):
            vec[pc] = -row[f]
        out.append(vec)
    return out


def socle(ideal: WeightedIdeal, d_max: int) -> Tuple[List[int], List[int]]:
    """Degrees d <= d_max - max(weight) with nonzero socle, and their
    dimensions; x is in the socle iff every k_i * x lies in I."""
    degrees: List[int] = []
    dims: List[int] = []
    top = d_max - max(ideal.weights)
    for d in range(top + 1):
        basis_d = monomials(d, ideal.weights)
        constraints: List[List[Fraction]] = []
        for i in range(ideal.nvars):
            constraints.extend(_membership_constraints(ideal, d, i))
        kernel = _kernel_basis(constraints, len(basis_d))
        dim_kernel = len(kernel)
        dim_ideal = graded_ideal_rank(ideal, d)
        dim_socle = dim_kernel - dim_ideal
        if dim_socle:
            degrees.append(d)
            dims.append(dim_socle)
    return degrees, dims


def artinian_check(ideal: WeightedIdeal, g: int,
                   d_max: Optional[int] = None) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Look for max(weight) consecutive vanishing degrees at or above
    g-1; once found, every higher degree vanishes too, because any
    monomial of higher degree factors through the window."""
    if d_max is None:
        d_max = g + 6
    w = max(ideal.weights)
    h = hilbert(ideal, d_max)
    for start in range(g - 1, d_max - w + 2):
        if start + w - 1 <= d_max and all(h[start + i] == 0 for i in range(w)):
            return True, (start, start + w - 1)
    return False, None


def _quotient_basis(ideal: WeightedIdeal, d: int) -> Tuple[List[Exponents], List[List[Fraction]], List[int]]:
    basis = monomials(d, ideal.weights)
    rref, pivots = _rref(_ideal_rows(ideal, d))
    nonpivots = [c for c in range(len(basis)) if c not in pivots]
    return basis, rref, nonpivots


def _reduce_vector(vec: List[Fraction], rref: List[List[Fraction]],
                   pivots: List[int]) -> List[Fraction]:
    out = vec[:]
    for row, pc in zip(rref, pivots):
        if out[pc] != 0:
            f = out[pc]
            out = [a - f * b for a, b in zip(out, row)]
    return out


def gorenstein_check(ideal: WeightedIdeal, g: int,
                     d_max: Optional[int] = None) -> dict:
    """Socle must be 1-dimensional in its top degree D, and every
    multiplication pairing R^i x R^{D-i} -> R^D must have full rank."""
    if d_max is None:
        d_max = g + 6
    degrees, dims = socle(ideal, d_max)
    report = {"socle_degrees": degrees, "socle_dims": dims,
              "gorenstein": False, "pairings": []}
    if len(degrees) != 1 or dims != [1]:
        report["diagnostic"] = "socle is not 1-dimensional in a single degree"
        return report
    top = degrees[0]
    h = hilbert(ideal, top)
    if any(h[i] != h[top - i] for i in range(top + 1)):
        report["diagnostic"] = "hilbert function is not symmetric"
        return report

    basis_top = monomials(top, ideal.weights)
    rref_top, pivots_top = _rref(_ideal_rows(ideal, top))
    nonpivot_top = [c for c in range(len(basis_top)) if c not in pivots_top]
    coord = nonpivot_top[0]

    def top_coordinate(p: Poly) -> Fraction:
        vec = _vector(p, basis_top, ideal.nvars)
        reduced = _reduce_vector(vec, rref_top, pivots_top)
        return reduced[coord]

    ok = True
    for i in range(top // 2 + 1):
        basis_i = monomials(i, ideal.weights)
        _, rref_i, nonpiv_i = _quotient_basis(ideal, i)[0:3]
        basis_j = monomials(top - i, ideal.weights)
        _, rref_j, nonpiv_j = _quotient_basis(ideal, top - i)[0:3]
        if len(nonpiv_i) != len(nonpiv_j):
            ok = False
            report["pairings"].append({"degree": i, "full_rank": False})
            continue
        pairing = []
        for ci in nonpiv_i:
            row = []
            u = _poly_from_exponents(basis_i[ci])
            for cj in nonpiv_j:
                v = _poly_from_exponents(basis_j[cj])
                row.append(top_coordinate(u * v))
            pairing.append(row)
        full = _rank(pairing) == len(nonpiv_i)
        ok = ok and full
        report["pairings"].append({"degree": i, "dim": len(nonpiv_i),
                                   "full_rank": full})
    report["gorenstein"] = ok
    return report


def minimal_generators(ideal: WeightedIdeal,
                       d_max: Optional[int] = None) -> Dict[int, int]:
    """dim I_d / (m . I)_d per degree; nonzero entries count a minimal
    generating set."""
    if d_max is None:
        d_max = max(ideal.generator_degrees())
    out: Dict[int, int] = {}
    for d in range(d_max + 1):
        full = _rank(_ideal_rows(ideal, d))
        inner = _rank(_ideal_rows(ideal, d, min_cofactor_degree=1))
        if full - inner:
            out[d] = full - inner
    return out


def ci_verdict(ideal: WeightedIdeal) -> bool:
    return sum(minimal_generators(ideal).values()) <= ideal.nvars


# ---------------------------------------------------------------------------
# built-in ideals

def _k(i: int, e: int = 1) -> Poly:
    return Poly.var(_var(i - 1), e)


def builtin_ideal(g: int, interpretation: Optional[str] = None) -> WeightedIdeal:
    """The printed kappa-class ideals for g in {7, 8, 9}.

    The third genus-7 generator mixes weighted degrees 4 and 5 as
    printed, so a reading must be chosen: "printed-split" replaces it by
    its homogeneous parts (a graded ideal containing an inhomogeneous
    element contains them), "emended" reads the k1^4 term as k1^5.
    """
    if g == 7:
        k1, k2 = _k(1), _k(2)
        g1 = 2423 * k1 ** 2 * k2 - 52632 * k2 ** 2
        g2 = 1152000 * k2 ** 2 - 2423 * k1 ** 4
        if interpretation == "printed-split":
            gens = [g1, g2, 16000 * k1 ** 3 * k2, -731 * k1 ** 4]
        elif interpretation == "emended":
            gens = [g1, g2, 16000 * k1 ** 3 * k2 - 731 * k1 ** 5]
        else:
            raise ValueError("unknown interpretation")
        return WeightedIdeal((1, 2), gens)
    if interpretation not in (None, "printed"):
        raise ValueError("unknown interpretation")
    if g == 8:
        k1, k2 = _k(1), _k(2)
        gens = [
            714894336 * k2 ** 2 + 55211328 * k1 ** 2 * k2 - 1058587 * k1 ** 4,
            62208000 * k1 * k2 ** 2 - 95287 * k1 ** 5,
            144000 * k1 ** 3 * k2 - 5617 * k1 ** 5,
        ]
        return WeightedIdeal((1, 2), gens)
    if g == 9:
        k1, k2, k3 = _k(1), _k(2), _k(3)
        gens = [
            5195 * k1 ** 4 + 3644694 * k1 * k3 + 749412 * k2 ** 2
            - 265788 * k1 ** 2 * k2,
            33859814400 * k2 * k3 - 95311440 * k1 ** 3 * k2
            + 2288539 * k1 ** 5,
            19151377 * k1 ** 5 + 16929907200 * k1 * k2 ** 2
            - 114345520 * k1 ** 3 * k2,
            1422489600 * k3 ** 2 - 983 * k1 ** 6,
            1185408000 * k2 ** 3 - 47543 * k1 ** 6,
        ]
        return WeightedIdeal((1, 2, 3), gens)
    raise ValueError("no built-in ideal for genus %d" % g)


@dataclass
class QuotientReport:
    genus: int
    interpretation: Optional[str]
    weights: List[int]
    generator_degrees: List[int]
    hilbert: List[int]
    socle_degrees: List[int]
    socle_dims: List[int]
    gorenstein: bool
    artinian: bool
    artinian_window: Optional[List[int]]
    minimal_generator_count: int
    minimal_generators_by_degree: Dict[int, int]
    ci_verdict: bool
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "genus": self.genus,
            "weights": self.weights,
            "generator_degrees": self.generator_degrees,
            "hilbert": self.hilbert,
            "socle_degrees": self.socle_degrees,
            "socle_dims": self.socle_dims,
            "gorenstein": self.gorenstein,
            "artinian": self.artinian,
            "artinian_window": self.artinian_window,
            "minimal_generator_count": self.minimal_generator_count,
            "minimal_generators_by_degree": {
                str(k): v for k, v in sorted(self.minimal_generators_by_degree.items())},
            "ci_verdict": self.ci_verdict,
        }
        if self.interpretation is not None:
            out["interpretation"] = self.interpretation
        if self.notes:
            out["notes"] = self.notes
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def quotient_report(g: int, interpretation: Optional[str] = None,
                    d_max: Optional[int] = None) -> QuotientReport:
    ideal = builtin_ideal(g, interpretation)
    if d_max is None:
        d_max = g + 6
    h = hilbert(ideal, d_max)
    degrees, dims = socle(ideal, d_max)
    gor = gorenstein_check(ideal, g, d_max)
    art, window = artinian_check(ideal, g, d_max)
    mingens = minimal_generators(ideal)
    notes = []
    if degrees == [g - 2] and dims == [1]:
        notes.append("socle sits in degree g-2 = %d with dimension 1" % (g - 2))
    else:
        notes.append("socle does not sit in degree g-2 = %d with dimension 1"
                     % (g - 2))
    return QuotientReport(
        genus=g,
        interpretation=interpretation,
        weights=list(ideal.weights),
        generator_degrees=ideal.generator_degrees(),
        hilbert=h,
        socle_degrees=degrees,
        socle_dims=dims,
        gorenstein=gor["gorenstein"],
        artinian=art,
        artinian_window=None if window is None else list(window),
        minimal_generator_count=sum(mingens.values()),
        minimal_generators_by_degree=mingens,
        ci_verdict=ci_verdict(ideal),
        notes=notes,
    )
