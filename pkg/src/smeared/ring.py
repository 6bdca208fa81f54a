"""The subring R of a polynomial ring S cut out by a family of ideals.

Given proper, nonzero, pairwise coprime ideals I_1..I_n of S = QQ[x1..xd],
this module works with R = the intersection of the subrings k + I_i: the
polynomials that restrict to a constant on each zero set Z(I_i).  Each Z(I_i)
behaves like a single "smeared" point of Spec R: membership in R hands back
the vector of constants, evaluation at the i-th smeared point is the i-th
constant, and a partition of unity splits 1 across any one ideal against the
rest.

The interesting dichotomy is in `verdicts`: R is noetherian exactly when
every quotient S/I_i is zero-dimensional, and S is a depiction of R (R and S
agree away from the union of the Z(I_i), with matching spectra) exactly when
every S/I_i has dimension at least one.  For a positive-dimensional I_i,
`chain_witness` certifies a finite prefix of the strictly ascending chain
gR < (g, gh)R < (g, gh, gh^2)R < ... that witnesses the failure of the
noetherian property.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .ideals import Ideal, _fresh_name, _insert_var
from .linalg import IncrementalRank, kernel_basis
from .poly import (
    GREVLEX,
    Polynomial,
    PolyRing,
    RingMismatchError,
    monomial_key,
    monomials_up_to_degree,
)


class NoChainError(ValueError):
    """The quotient is zero-dimensional: k + I is noetherian there and no
    strictly ascending chain of the certified form exists."""


class ChainSelectionError(RuntimeError):
    """Bounded search found no direction with zero elimination ideal."""


@dataclass(frozen=True)
class SmearedRingConfig:
    """R = intersection of (QQ + I_i) inside ring; immutable once built.

    `radical_asserted[i]` records the caller's promise that I_i is radical;
    the verdicts rely on it and validate() can spot-check it.
    """

    ring: PolyRing
    ideals: tuple
    radical_asserted: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ideals", tuple(self.ideals))
        if not self.ideals:
            raise ValueError("need at least one ideal")
        for ideal in self.ideals:
            if ideal.ring != self.ring:
                raise RingMismatchError("ideal from a different ring")
        flags = tuple(self.radical_asserted) or (True,) * len(self.ideals)
        if len(flags) != len(self.ideals):
            raise ValueError("one radicality flag per ideal")
        object.__setattr__(self, "radical_asserted", flags)

    @property
    def n(self) -> int:
        return len(self.ideals)

    def check_index(self, i: int):
        if not 0 <= i < self.n:
            raise IndexError(f"ideal index {i} out of range (0..{self.n - 1})")


@dataclass(frozen=True)
class Violation:
    kind: str
    ideals: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    radicality_checked: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class MembershipCertificate:
    """Outcome of testing f against every ideal's normal form.

    Member iff NF(f, I_i) is a constant for every i; `constants` is then the
    vector of those constants.  On failure, `witness_index` is the first bad
    ideal and `nonconstant_remainder` its normal form.
    """

    member: bool
    constants: Optional[tuple] = None
    witness_index: Optional[int] = None
    nonconstant_remainder: Optional[Polynomial] = None


@dataclass(frozen=True)
class PartitionWitness:
    """1 = a + b with a in I_i, b in every other I_j, both in R."""

    index: int
    a: Polynomial
    b: Polynomial
    a_membership: MembershipCertificate
    b_membership: MembershipCertificate


@dataclass(frozen=True)
class ChainWitness:
    """Certificate that gR < (g, gh)R < ... is strict for `length` steps.

    `evidence[j]` is the normal form of h^j modulo I_i; their linear
    independence over QQ is exactly strictness of each inclusion.
    """

    index: int
    g: Polynomial
    h: Polynomial
    length: int
    evidence: tuple


@dataclass(frozen=True)
class Verdicts:
    noetherian: bool
    depicted_by_S: bool
    per_ideal_dims: tuple
    gdim_lower_bounds: tuple


@dataclass(frozen=True)
class LocusEvidence:
    """What happened at one ideal: the first generator that refuted
    membership of the point in Z(I_i), or the fact that all vanished."""

    index: int
    on_variety: bool
    generator_index: Optional[int] = None
    value: Optional[Fraction] = None


@dataclass(frozen=True)
class LocusReport:
    in_locus: bool
    evidence: tuple


@dataclass(frozen=True)
class ConstancyReport:
    index: int
    expected: Fraction
    values: tuple
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


# ---------------------------------------------------------------------------
# validation


def _radicality_candidates(ideal: Ideal):
    """Monomials properly dividing a generator's leading monomial.

    Cheap spot-check fodder: if such a monomial lies in the radical but not
    in the ideal, the ideal is certainly not radical.  Finding nothing proves
    nothing.
    """
    ring = ideal.ring
    seen = set()
    for g in ideal.generators:
        if g.is_zero():
            continue
        lm = g.leading_monomial(monomial_key(GREVLEX))
        for cand in itertools.product(*(range(e + 1) for e in lm)):
            if cand == lm or sum(cand) == 0 or cand in seen:
                continue
            seen.add(cand)
            yield ring.monomial(cand)


def validate(config: SmearedRingConfig, check_radicality: bool = False) -> ValidationReport:
    """Check the hypotheses the whole theory rests on.

    Per ideal: proper, nonzero, and non-maximal (a maximal I_i would make
    QQ + I_i all of S, so the ideal contributes nothing and should be dropped
    from the configuration instead).  Per pair: coprime, i.e. the zero sets
    are disjoint.  Optionally spot-checks asserted radicality.
    """
    violations = []
    proper = []
    for i, ideal in enumerate(config.ideals):
        if ideal.contains_one():
            violations.append(
                Violation("not_proper", (i,), f"ideal {i} is the unit ideal")
            )
            proper.append(False)
            continue
        proper.append(True)
        if ideal.is_zero():
            violations.append(Violation("zero", (i,), f"ideal {i} is the zero ideal"))
            continue
        if ideal.quotient_vdim() == 1:
            violations.append(
                Violation(
                    "maximal",
                    (i,),
                    f"ideal {i} is maximal (residue dimension 1); the constants "
                    "together with a maximal ideal already fill the whole ring, "
                    "so drop this ideal from the configuration",
                )
            )
    for i, j in itertools.combinations(range(config.n), 2):
        if not proper[i] or not proper[j]:
            continue
        if not config.ideals[i].is_coprime(config.ideals[j]):
            violations.append(
                Violation(
                    "not_coprime",
                    (i, j),
                    f"ideals {i} and {j} are not coprime (their zero sets meet)",
                )
            )
    if check_radicality:
        for i, ideal in enumerate(config.ideals):
            if not config.radical_asserted[i] or not proper[i]:
                continue
            for cand in _radicality_candidates(ideal):
                if ideal.radical_member(cand) and not ideal.contains(cand):
                    violations.append(
                        Violation(
                            "not_radical",
                            (i,),
                            f"ideal {i} asserted radical, but {cand} lies in the "
                            "radical and not in the ideal",
                        )
                    )
                    break
    return ValidationReport(tuple(violations), radicality_checked=check_radicality)


# ---------------------------------------------------------------------------
# membership and evaluation


def member(f: Polynomial, config: SmearedRingConfig) -> MembershipCertificate:
    """Does f restrict to a constant on every configured zero set?"""
    if f.ring != config.ring:
        raise RingMismatchError("polynomial from a different ring")
    constants = []
    for i, ideal in enumerate(config.ideals):
        nf = ideal.normal_form(f)
        if not nf.is_constant():
            return MembershipCertificate(
                member=False, witness_index=i, nonconstant_remainder=nf
            )
        constants.append(nf.constant_value())
    return MembershipCertificate(member=True, constants=tuple(constants))


def evaluate_at_smeared_point(f: Polynomial, i: int, config: SmearedRingConfig) -> Fraction:
    """Value of f at the i-th smeared point (the constant f takes on Z(I_i))."""
    config.check_index(i)
    cert = member(f, config)
    if not cert.member:
        raise ValueError(
            f"polynomial is not in the subring: normal form modulo ideal "
            f"{cert.witness_index} is {cert.nonconstant_remainder}"
        )
    return cert.constants[i]


# ---------------------------------------------------------------------------
# partition of unity


def _intersect_others(config: SmearedRingConfig, i: int) -> Ideal:
    rest = [ideal for j, ideal in enumerate(config.ideals) if j != i]
    acc = rest[0]
    for nxt in rest[1:]:
        acc = acc.intersect(nxt)
    return acc


def partition_of_unity(i: int, config: SmearedRingConfig) -> PartitionWitness:
    """Split 1 = a + b with a in I_i and b in every other ideal.

    Both pieces land in R: a is 0 on Z(I_i) and 1 on the other zero sets, b
    the reverse.  All claimed invariants are re-verified before returning;
    a failure there means the engine itself is broken.
    """
    config.check_index(i)
    if config.n < 2:
        raise ValueError("a partition of unity needs at least two ideals")
    ideal_i = config.ideals[i]
    others = _intersect_others(config, i)
    combined = ideal_i + others
    cof = combined.unit_certificate()
    k = len(ideal_i.generators)
    ring = config.ring
    a = ring.zero()
    for c, g in zip(cof[:k], ideal_i.generators):
        a = a + c * g
    b = ring.zero()
    for c, g in zip(cof[k:], others.generators):
        b = b + c * g

    if a + b != ring.one():
        raise RuntimeError("partition does not sum to 1")
    if not ideal_i.contains(a):
        raise RuntimeError("partition piece a escaped its ideal")
    for j, ideal in enumerate(config.ideals):
        if j != i and not ideal.contains(b):
            raise RuntimeError("partition piece b escaped a complementary ideal")
    a_cert = member(a, config)
    b_cert = member(b, config)
    if not (a_cert.member and b_cert.member):
        raise RuntimeError("partition pieces are not members of the subring")
    return PartitionWitness(i, a, b, a_cert, b_cert)


# ---------------------------------------------------------------------------
# verdicts


def verdicts(config: SmearedRingConfig) -> Verdicts:
    """Noetherianity and depiction, decided by the per-ideal dimensions.

    R is noetherian iff every dim S/I_i = 0; S depicts R iff every
    dim S/I_i >= 1.  The dimensions double as lower bounds for the geometric
    dimension of each smeared point.
    """
    dims = tuple(ideal.krull_dim() for ideal in config.ideals)
    return Verdicts(
        noetherian=all(d == 0 for d in dims),
        depicted_by_S=all(d >= 1 for d in dims),
        per_ideal_dims=dims,
        gdim_lower_bounds=dims,
    )


def noetherian_verdict(config: SmearedRingConfig) -> Verdicts:
    return verdicts(config)


def depiction_verdict(config: SmearedRingConfig) -> Verdicts:
    return verdicts(config)


# ---------------------------------------------------------------------------
# locus


def locus_member(point: Sequence, config: SmearedRingConfig) -> LocusReport:
    """Is the point in the locus where R and S agree?

    That locus is the complement of the union of the zero sets: the point is
    in it iff, for every ideal, some generator is nonzero at the point.
    """
    if len(point) != config.ring.nvars:
        raise ValueError(
            f"point has {len(point)} coordinates, ring has {config.ring.nvars} variables"
        )
    evidence = []
    for i, ideal in enumerate(config.ideals):
        hit = None
        for gi, g in enumerate(ideal.generators):
            v = g.evaluate(point)
            if v:
                hit = (gi, v)
                break
        if hit is None:
            evidence.append(LocusEvidence(i, on_variety=True))
        else:
            evidence.append(
                LocusEvidence(i, on_variety=False, generator_index=hit[0], value=hit[1])
            )
    return LocusReport(
        in_locus=all(not e.on_variety for e in evidence), evidence=tuple(evidence)
    )


# ---------------------------------------------------------------------------
# ascending chain


def _zero_elimination_direction(ideal: Ideal) -> Optional[Polynomial]:
    """A variable x_j with I meeting QQ[x_j] trivially, if one exists."""
    for j in range(ideal.ring.nvars):
        if ideal.eliminate({j}).is_zero():
            return ideal.ring.var(ideal.ring.variables[j])
    return None


def _fallback_direction(ideal: Ideal, attempts: int = 16) -> Optional[Polynomial]:
    """Random small-integer linear forms, tested through a fresh variable u:
    I meets QQ[form] trivially iff eliminating everything but u from
    I + (u - form) leaves the zero ideal."""
    ring = ideal.ring
    rng = random.Random(1729)
    ext = PolyRing(ring.variables + (_fresh_name(ring, "u"),), ring.order)
    lifted = [_insert_var(g, ext, ring.nvars) for g in ideal.generators]
    u = ext.var(ext.variables[-1])
    seen = set()
    for _ in range(attempts):
        coeffs = tuple(rng.randint(-3, 3) for _ in range(ring.nvars))
        if not any(coeffs) or coeffs in seen:
            continue
        seen.add(coeffs)
        form_ext = ext.zero()
        for c, name in zip(coeffs, ring.variables):
            form_ext = form_ext + ext.var(name).scale(c)
        probe = Ideal(ext, tuple(lifted) + (u - form_ext,))
        if probe.eliminate({ring.nvars}).is_zero():
            form = ring.zero()
            for c, name in zip(coeffs, ring.variables):
                form = form + ring.var(name).scale(c)
            return form
    return None


def chain_witness(i: int, length: int, config: SmearedRingConfig) -> ChainWitness:
    """Certify `length` strict steps of the chain gR < (g, gh)R < ...

    Requires dim S/I_i >= 1.  h is picked so that I_i contains no nonzero
    polynomial in h alone; then g*h^(l+1) lies in (g, g*h, ..., g*h^l)R iff
    NF(h^(l+1)) falls in the span of the earlier normal forms, and the chosen
    h makes every step independent.
    """
    config.check_index(i)
    if length < 0:
        raise ValueError("chain length must be non-negative")
    ideal = config.ideals[i]
    if ideal.krull_dim() == 0:
        raise NoChainError(
            f"dim of the quotient by ideal {i} is 0; the chain construction "
            "needs positive dimension"
        )
    h = _zero_elimination_direction(ideal)
    if h is None:
        h = _fallback_direction(ideal)
    if h is None:
        raise ChainSelectionError(
            f"no direction with zero elimination ideal found for ideal {i} "
            "after bounded random search"
        )
    g = next((p for p in ideal.generators if not p.is_zero()), None)
    if g is None:
        raise ValueError("chain needs a nonzero generator")

    evidence = []
    power = config.ring.one()
    for _ in range(length + 1):
        evidence.append(ideal.normal_form(power))
        power = power * h
    monos = sorted({m for nf in evidence for m in nf.terms}, key=monomial_key(GREVLEX))
    tracker = IncrementalRank()
    for nf in evidence:
        if not tracker.add([nf.terms.get(m, Fraction(0)) for m in monos]):
            raise RuntimeError(
                "normal forms of powers became dependent although the chosen "
                "direction promised independence; engine bug"
            )
    return ChainWitness(i, g, h, length, tuple(evidence))


# ---------------------------------------------------------------------------
# finite-dimensional slices of R


def r_basis(d: int, config: SmearedRingConfig) -> list:
    """A QQ-basis of {f in R : deg f <= d}.

    Sets up one exact linear system: writing f over all monomials of degree
    at most d, f is in R iff for each ideal the nonconstant part of the
    normal form of f vanishes.  The kernel of that constraint matrix, read
    along monomials in descending grevlex order, is the basis.
    """
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    ring = config.ring
    key = monomial_key(GREVLEX)
    unknowns = sorted(monomials_up_to_degree(ring.nvars, d), key=key, reverse=True)
    rows = []
    for ideal in config.ideals:
        nfs = [ideal.normal_form(ring.monomial(m)) for m in unknowns]
        constraint_monomials = sorted(
            {m for nf in nfs for m in nf.terms if sum(m) > 0}, key=key
        )
        for cm in constraint_monomials:
            rows.append([nf.terms.get(cm, Fraction(0)) for nf in nfs])
    basis = []
    for vec in kernel_basis(rows, len(unknowns)):
        terms = {m: c for m, c in zip(unknowns, vec) if c}
        basis.append(Polynomial(ring, terms))
    return basis


# ---------------------------------------------------------------------------
# constancy on a zero set


def smeared_constancy_check(
    f: Polynomial, i: int, points: Sequence[Sequence], config: SmearedRingConfig
) -> ConstancyReport:
    """Evaluate a member of R at sample points of Z(I_i); all values must be
    the i-th constant of its membership certificate.  A mismatch would mean
    the engine is wrong, so it is reported rather than raised."""
    config.check_index(i)
    expected = evaluate_at_smeared_point(f, i, config)
    ideal = config.ideals[i]
    values = []
    mismatches = []
    for pi, point in enumerate(points):
        for g in ideal.generators:
            if g.evaluate(point):
                raise ValueError(
                    f"point {pi} is not on the zero set of ideal {i}: "
                    f"generator {g} does not vanish there"
                )
        v = f.evaluate(point)
        values.append(v)
        if v != expected:
            mismatches.append(pi)
    return ConstancyReport(i, expected, tuple(values), tuple(mismatches))
