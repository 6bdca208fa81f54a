"""Groebner bases over the rationals, by Buchberger's algorithm.

Division and basis computation are exact.  A basis can optionally carry a
transformation matrix expressing each basis element as a combination of the
original generators, which is what lets callers hand out membership
certificates over the generators they actually supplied instead of over the
computed basis.

Set `VERIFY_DIVISION = True` (the test suite does) to re-check the division
identity f = sum(q_i * d_i) + r and the irreducibility of every remainder on
every division call.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .poly import (
    Polynomial,
    PolyRing,
    RingMismatchError,
    mono_coprime,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    monomial_key,
)

# re-checked on every call to divide() when True; tests switch this on
VERIFY_DIVISION = False


@dataclass(frozen=True)
class DivisionResult:
    """f = sum(quotients[i] * divisors[i]) + remainder, remainder irreducible."""

    quotients: tuple
    remainder: Polynomial


def divide(f: Polynomial, divisors: Sequence[Polynomial], key=None) -> DivisionResult:
    """Multivariate division of f by an ordered list of divisors.

    Ties go to the first divisor whose leading monomial divides the current
    working term, so the result is deterministic in the divisor order.  No
    remainder monomial is divisible by any divisor's leading monomial.
    """
    ring = f.ring
    if key is None:
        key = monomial_key(ring.order)
    divisors = list(divisors)
    leads = []
    for d in divisors:
        if d.ring != ring:
            raise RingMismatchError("divisor from a different ring")
        leads.append(None if d.is_zero() else d.leading_term(key))

    quotients = [dict() for _ in divisors]
    remainder: dict = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=key)
        c = work[m]
        for idx, lt in enumerate(leads):
            if lt is not None and mono_divides(lt[0], m):
                qm = mono_div(m, lt[0])
                qc = c / lt[1]
                for dm, dc in divisors[idx].terms.items():
                    t = tuple(a + b for a, b in zip(dm, qm))
                    s = work.get(t, 0) - qc * dc
                    if s:
                        work[t] = s
                    else:
                        work.pop(t, None)
                q = quotients[idx]
                s = q.get(qm, 0) + qc
                if s:
                    q[qm] = s
                else:
                    del q[qm]
                break
        else:
            remainder[m] = c
            del work[m]

    result = DivisionResult(
        tuple(Polynomial._make(ring, q) for q in quotients),
        Polynomial._make(ring, remainder),
    )
    if VERIFY_DIVISION:
        _check_division(f, divisors, leads, result)
    return result


def _check_division(f, divisors, leads, result):
    total = result.remainder
    for q, d in zip(result.quotients, divisors):
        total = total + q * d
    if total != f:
        raise RuntimeError("division identity violated")
    for m in result.remainder.terms:
        for lt in leads:
            if lt is not None and mono_divides(lt[0], m):
                raise RuntimeError("reducible remainder")


def normal_form(f: Polynomial, divisors: Sequence[Polynomial], key=None) -> Polynomial:
    return divide(f, divisors, key).remainder


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis under `order`, elements sorted largest lead first.

    `transform`, present when the basis was computed with tracking, satisfies
    elements[j] == sum(transform[j][i] * generators[i] for all i).
    """

    ring: PolyRing
    order: object
    elements: tuple
    generators: tuple
    transform: Optional[tuple] = None

    def key(self):
        return monomial_key(self.order)

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> tuple:
        key = self.key()
        return tuple(g.leading_monomial(key) for g in self.elements)

    def divide(self, f: Polynomial) -> DivisionResult:
        return divide(f, self.elements, self.key())

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.divide(f).remainder

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def contains_one(self) -> bool:
        # the reduced basis of the unit ideal is exactly [1]
        return len(self.elements) == 1 and self.elements[0].is_constant() and not self.elements[0].is_zero()

    def lift_to_generators(self, quotients: Sequence[Polynomial]) -> tuple:
        """Turn cofactors over basis elements into cofactors over generators.

        Given q with f = sum(q[j] * elements[j]) + r, returns c with
        f = sum(c[i] * generators[i]) + r.
        """
        if self.transform is None:
            raise ValueError("basis was computed without tracking")
        out = [self.ring.zero() for _ in self.generators]
        for j, q in enumerate(quotients):
            if q.is_zero():
                continue
            for i, t in enumerate(self.transform[j]):
                if not t.is_zero():
                    out[i] = out[i] + q * t
        return tuple(out)

    def membership_certificate(self, f: Polynomial):
        """(cofactors over generators, remainder); f is a member iff r == 0."""
        res = self.divide(f)
        return self.lift_to_generators(res.quotients), res.remainder


def groebner_basis(
    generators: Iterable[Polynomial],
    order=None,
    ring: Optional[PolyRing] = None,
    track: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal the generators span.

    Pairs are processed in increasing lcm order; the coprime-lead and chain
    criteria prune useless reductions.  Intermediate elements are kept
    primitive with integer coefficients, the final basis is monic and
    interreduced.
    """
    gens = list(generators)
    if ring is None:
        if not gens:
            raise ValueError("need a ring to build the basis of the zero ideal")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
    if order is None:
        order = ring.order
    key = monomial_key(order)
    ngens = len(gens)

    def unit_vector(i: int, scale: Fraction) -> list:
        row = [ring.zero()] * ngens
        row[i] = ring.const(scale)
        return row

    polys: list = []
    coeffs: list = []  # cofactor rows over the original generators
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        prim, c = g.primitive_part()
        polys.append(prim)
        if track:
            coeffs.append(unit_vector(i, 1 / c))

    heap: list = []
    pending: set = set()

    def push_pairs(new: int):
        lm_new = polys[new].leading_monomial(key)
        for old in range(new):
            lcm = mono_lcm(polys[old].leading_monomial(key), lm_new)
            heapq.heappush(heap, (mono_degree(lcm), key(lcm), old, new))
            pending.add((old, new))

    for n in range(len(polys)):
        push_pairs(n)

    def chain_skip(i: int, j: int, lcm) -> bool:
        for k in range(len(polys)):
            if k == i or k == j:
                continue
            if not mono_divides(polys[k].leading_monomial(key), lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik not in pending and pjk not in pending:
                return True
        return False

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lm_i, lc_i = polys[i].leading_term(key)
        lm_j, lc_j = polys[j].leading_term(key)
        if mono_coprime(lm_i, lm_j):
            continue
        lcm = mono_lcm(lm_i, lm_j)
        if chain_skip(i, j, lcm):
            continue

        mi, mj = mono_div(lcm, lm_i), mono_div(lcm, lm_j)
        s = polys[i].mul_term(mi, 1 / lc_i) - polys[j].mul_term(mj, 1 / lc_j)
        res = divide(s, polys, key)
        r = res.remainder
        if r.is_zero():
            continue
        prim, c = r.primitive_part()
        if track:
            row = [
                coeffs[i][t].mul_term(mi, 1 / lc_i) - coeffs[j][t].mul_term(mj, 1 / lc_j)
                for t in range(ngens)
            ]
            for k, q in enumerate(res.quotients):
                if q.is_zero():
                    continue
                for t in range(ngens):
                    if not coeffs[k][t].is_zero():
                        row[t] = row[t] - q * coeffs[k][t]
            coeffs.append([p.scale(1 / c) for p in row])
        polys.append(prim)
        push_pairs(len(polys) - 1)

    basis, rows = _reduce_basis(polys, coeffs if track else None, ring, key)

    transform = None
    if track:
        transform = tuple(tuple(row) for row in rows)
        if VERIFY_DIVISION:
            for g, row in zip(basis, transform):
                acc = ring.zero()
                for t, gen in zip(row, gens):
                    acc = acc + t * gen
                if acc != g:
                    raise RuntimeError("transformation identity violated")

    return GroebnerBasis(ring, order, tuple(basis), tuple(gens), transform)


def _reduce_basis(polys, coeffs, ring, key):
    """Minimal, interreduced, monic basis sorted largest lead first."""
    order_idx = sorted(range(len(polys)), key=lambda i: key(polys[i].leading_monomial(key)))
    kept: list = []
    kept_rows: list = []
    for i in order_idx:
        lm = polys[i].leading_monomial(key)
        if any(mono_divides(g.leading_monomial(key), lm) for g in kept):
            continue
        kept.append(polys[i])
        if coeffs is not None:
            kept_rows.append(list(coeffs[i]))

    # tail-reduce each element against the others (leads are incomparable,
    # so each element's lead survives and one sweep lands on the reduced form)
    for idx in range(len(kept)):
        others = kept[:idx] + kept[idx + 1 :]
        res = divide(kept[idx], others, key)
        kept[idx] = res.remainder
        if coeffs is not None:
            row = kept_rows[idx]
            other_rows = kept_rows[:idx] + kept_rows[idx + 1 :]
            for q, orow in zip(res.quotients, other_rows):
                if q.is_zero():
                    continue
                for t in range(len(row)):
                    if not orow[t].is_zero():
                        row[t] = row[t] - q * orow[t]

    for idx in range(len(kept)):
        lc = kept[idx].leading_coefficient(key)
        kept[idx] = kept[idx].scale(1 / lc)
        if coeffs is not None:
            kept_rows[idx] = [p.scale(1 / lc) for p in kept_rows[idx]]

    final = sorted(range(len(kept)), key=lambda i: key(kept[i].leading_monomial(key)), reverse=True)
    basis = [kept[i] for i in final]
    rows = [kept_rows[i] for i in final] if coeffs is not None else None
    return basis, rows
