"""Ideals of a polynomial ring and the operations the rest of the package
needs: membership with certificates, intersection, elimination, Krull
dimension of the quotient, its vector-space dimension, coprimality, and
radical membership.

An `Ideal` is identified by its ordered generator tuple.  Groebner bases are
computed lazily per monomial order and cached on the handle (the cache is the
only mutable state; a lock makes the handle safe to share across threads).
"""

from __future__ import annotations

import itertools
import threading
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, groebner_basis
from .poly import (
    EliminationOrder,
    Polynomial,
    PolyRing,
    RingMismatchError,
)


class _Infinite:
    """Sentinel for an infinite vector-space dimension."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


def _fresh_name(ring: PolyRing, base: str) -> str:
    if base not in ring.variables:
        return base
    k = 0
    while f"{base}{k}" in ring.variables:
        k += 1
    return f"{base}{k}"


def _insert_var(f: Polynomial, ext: PolyRing, at: int) -> Polynomial:
    terms = {m[:at] + (0,) + m[at:]: c for m, c in f.terms.items()}
    return Polynomial._make(ext, terms)


def _remove_var(f: Polynomial, base: PolyRing, at: int) -> Polynomial:
    terms = {}
    for m, c in f.terms.items():
        if m[at]:
            raise ValueError("polynomial still involves the removed variable")
        terms[m[:at] + m[at + 1 :]] = c
    return Polynomial._make(base, terms)


class Ideal:
    """An ideal of QQ[x1..xn] given by a finite ordered generator list."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial]):
        gens = tuple(generators)
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
        self.ring = ring
        self.generators = gens
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.generators) or "0"
        return f"Ideal({inside})"

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideals live in different rings")
        gens = tuple(f * g for f in self.generators for g in other.generators)
        return Ideal(self.ring, gens)

    # -- Groebner machinery

    def groebner(self, order=None, track: bool = False) -> GroebnerBasis:
        if order is None:
            order = self.ring.order
        with self._lock:
            cached = self._cache.get(order)
            if cached is not None and (not track or cached.transform is not None):
                return cached
            gb = groebner_basis(self.generators, order=order, ring=self.ring, track=track)
            self._cache[order] = gb
            return gb

    def is_zero(self) -> bool:
        return self.groebner().is_zero_ideal()

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def contains_one(self) -> bool:
        return self.groebner().contains_one()

    def normal_form(self, f: Polynomial) -> Polynomial:
        return self.groebner().normal_form(f)

    def membership_certificate(self, f: Polynomial):
        """(cofactors over the generators, remainder); member iff r == 0."""
        return self.groebner(track=True).membership_certificate(f)

    def unit_certificate(self) -> tuple:
        """Cofactors c with 1 == sum(c[i] * generators[i]); ideal must be unit."""
        cof, rem = self.membership_certificate(self.ring.one())
        if not rem.is_zero():
            raise ValueError("ideal does not contain 1")
        return cof

    # -- elimination and intersection

    def eliminate(self, keep: Sequence[int]) -> "Ideal":
        """Contraction to the subring on the kept variables, as an ideal of
        the ambient ring (its generators only involve kept variables).

        Uses a block order with the discarded variables largest, so the
        basis elements free of them generate the contraction.
        """
        kept = set(keep)
        if not kept:
            raise ValueError("must keep at least one variable")
        for i in kept:
            if not 0 <= i < self.ring.nvars:
                raise ValueError(f"variable index {i} out of range")
        elim = tuple(i for i in range(self.ring.nvars) if i not in kept)
        if not elim:
            return self
        gb = self.groebner(EliminationOrder(elim, self.ring.nvars))
        dropped = set(elim)
        return Ideal(
            self.ring, tuple(g for g in gb.elements if not (g.support() & dropped))
        )

    def intersect(self, other: "Ideal") -> "Ideal":
        """I cap J, by eliminating an auxiliary scalar t from t*I + (1-t)*J."""
        if self.ring != other.ring:
            raise RingMismatchError("ideals live in different rings")
        ring = self.ring
        tname = _fresh_name(ring, "t")
        ext = PolyRing((tname,) + ring.variables, ring.order)
        t = ext.var(tname)
        one_minus_t = ext.one() - t
        gens = [t * _insert_var(f, ext, 0) for f in self.generators]
        gens += [one_minus_t * _insert_var(g, ext, 0) for g in other.generators]
        gb = groebner_basis(gens, order=EliminationOrder((0,), ext.nvars), ring=ext)
        kept = [g for g in gb.elements if 0 not in g.support()]
        return Ideal(ring, tuple(_remove_var(g, ring, 0) for g in kept))

    # -- numerical invariants of the quotient

    def krull_dim(self) -> int:
        """Krull dimension of ring/ideal (the zero ideal gives nvars)."""
        gb = self.groebner()
        if gb.contains_one():
            raise ValueError("quotient by the unit ideal is the zero ring")
        n = self.ring.nvars
        supports = [
            frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()
        ]
        for size in range(n, -1, -1):
            for subset in itertools.combinations(range(n), size):
                chosen = set(subset)
                if all(not s <= chosen for s in supports):
                    return size
        raise AssertionError("unreachable: the empty set is always independent")

    def quotient_vdim(self):
        """dim_QQ of ring/ideal: a non-negative int, or INFINITE.

        Finite exactly when every variable has a pure power among the leading
        monomials; then the monomials outside the lead staircase are counted.
        """
        gb = self.groebner()
        if gb.contains_one():
            raise ValueError("quotient by the unit ideal is the zero ring")
        lms = gb.leading_monomials()
        n = self.ring.nvars
        bound = [None] * n
        for m in lms:
            sup = [i for i, e in enumerate(m) if e]
            if len(sup) == 1:
                i = sup[0]
                if bound[i] is None or m[i] < bound[i]:
                    bound[i] = m[i]
        if any(b is None for b in bound):
            return INFINITE
        count = 0
        for m in itertools.product(*(range(b) for b in bound)):
            if not any(all(x >= y for x, y in zip(m, lm)) for lm in lms):
                count += 1
        return count

    # -- relations with other ideals and elements

    def is_coprime(self, other: "Ideal") -> bool:
        """True when the two ideals sum to the whole ring."""
        return (self + other).contains_one()

    def radical_member(self, f: Polynomial) -> bool:
        """True when some power of f lies in the ideal.

        Decided without computing the radical: f is in the radical exactly
        when the ideal extended by 1 - z*f, for a fresh variable z, is the
        unit ideal.
        """
        if f.ring != self.ring:
            raise RingMismatchError("element from a different ring")
        ring = self.ring
        zname = _fresh_name(ring, "z")
        ext = PolyRing(ring.variables + (zname,), ring.order)
        z = ext.var(zname)
        gens = [_insert_var(g, ext, ring.nvars) for g in self.generators]
        gens.append(ext.one() - z * _insert_var(f, ext, ring.nvars))
        return groebner_basis(gens, ring=ext).contains_one()
