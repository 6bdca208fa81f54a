"""The subring layer: validation, membership, partitions, verdicts, loci,
chains, finite slices, constancy."""

import random
from fractions import Fraction

import pytest

import smeared as sm
from smeared import Ideal, PolyRing, RingMismatchError, SmearedRingConfig


def test_config_rejects_bad_shapes(R2):
    x = R2.var("x")
    with pytest.raises(ValueError):
        SmearedRingConfig(R2, ())
    with pytest.raises(ValueError):
        SmearedRingConfig(R2, (Ideal(R2, (x,)),), (True, False))
    other = PolyRing(("a",))
    with pytest.raises(RingMismatchError):
        SmearedRingConfig(R2, (Ideal(other, (other.var("a"),)),))


def test_validate_three_lines(three_lines):
    report = sm.validate(three_lines)
    assert report.ok
    assert report.violations == ()


def test_validate_not_coprime(R2):
    config = SmearedRingConfig(
        R2, (Ideal(R2, (R2.var("x"),)), Ideal(R2, (R2.var("y"),)))
    )
    report = sm.validate(config)
    assert not report.ok
    assert [(v.kind, v.ideals) for v in report.violations] == [("not_coprime", (0, 1))]


def test_validate_maximal(R2):
    config = SmearedRingConfig(R2, (Ideal(R2, (R2.var("x"), R2.var("y"))),))
    report = sm.validate(config)
    assert [v.kind for v in report.violations] == ["maximal"]


def test_validate_unit_and_zero(R2):
    x = R2.var("x")
    config = SmearedRingConfig(R2, (Ideal(R2, (x, x - 1)), Ideal(R2, ())))
    kinds = {v.kind for v in sm.validate(config).violations}
    assert kinds == {"not_proper", "zero"}


def test_validate_radicality_spot_check(R2):
    x = R2.var("x")
    config = SmearedRingConfig(R2, (Ideal(R2, (x**2,)),))
    assert sm.validate(config).ok  # structural hypotheses fine
    report = sm.validate(config, check_radicality=True)
    assert [v.kind for v in report.violations] == ["not_radical"]
    assert report.radicality_checked
    # honest flags suppress the check
    humble = SmearedRingConfig(R2, (Ideal(R2, (x**2,)),), (False,))
    assert sm.validate(humble, check_radicality=True).ok


def test_member_examples(three_lines, R2):
    x, y = R2.var("x"), R2.var("y")
    cert = sm.member(x, three_lines)
    assert cert.member and cert.constants == (0, 1, 2)
    cert = sm.member(y, three_lines)
    assert not cert.member
    assert cert.witness_index == 0
    assert cert.nonconstant_remainder == y
    cert = sm.member(x * (x - 1) * (x - 2) * y, three_lines)
    assert cert.member and cert.constants == (0, 0, 0)


def test_member_ring_mismatch(three_lines):
    other = PolyRing(("a",))
    with pytest.raises(RingMismatchError):
        sm.member(other.var("a"), three_lines)


def test_products_of_generators_have_zero_constants(three_lines, R2):
    rng = random.Random(61)
    gens = [ideal.generators[0] for ideal in three_lines.ideals]
    for _ in range(10):
        f = R2.one()
        for g in gens:
            f = f * g
        f = f * R2.const(rng.randint(1, 5)) + R2.zero()
        cert = sm.member(f, three_lines)
        assert cert.member and cert.constants == (0, 0, 0)


def test_closure_under_ring_operations(three_lines):
    rng = random.Random(67)
    basis = sm.r_basis(5, three_lines)
    for _ in range(15):
        f, g = rng.choice(basis), rng.choice(basis)
        cf, cg = sm.member(f, three_lines), sm.member(g, three_lines)
        assert cf.member and cg.member
        csum = sm.member(f + g, three_lines)
        cprod = sm.member(f * g, three_lines)
        assert csum.member and cprod.member
        assert csum.constants == tuple(a + b for a, b in zip(cf.constants, cg.constants))
        assert cprod.constants == tuple(a * b for a, b in zip(cf.constants, cg.constants))


def test_evaluate_at_smeared_point(three_lines, R2):
    x, y = R2.var("x"), R2.var("y")
    assert sm.evaluate_at_smeared_point(x, 1, three_lines) == 1
    f = x * (x - 1) * (x - 2) * y
    for i in range(3):
        assert sm.evaluate_at_smeared_point(f, i, three_lines) == 0
    with pytest.raises(ValueError):
        sm.evaluate_at_smeared_point(y, 0, three_lines)
    with pytest.raises(IndexError):
        sm.evaluate_at_smeared_point(x, 3, three_lines)


def test_evaluation_is_a_homomorphism(three_lines, R2):
    x = R2.var("x")
    f = x * (x - 1)
    g = x + 3
    for i in range(3):
        vf = sm.evaluate_at_smeared_point(f, i, three_lines)
        vg = sm.evaluate_at_smeared_point(g, i, three_lines)
        assert sm.evaluate_at_smeared_point(f + g, i, three_lines) == vf + vg
        assert sm.evaluate_at_smeared_point(f * g, i, three_lines) == vf * vg


def test_partition_of_unity_invariants(three_lines, R2):
    for i in range(3):
        w = sm.partition_of_unity(i, three_lines)
        assert w.a + w.b == R2.one()
        assert three_lines.ideals[i].contains(w.a)
        for j in range(3):
            if j != i:
                assert three_lines.ideals[j].contains(w.b)
                # distinctness of the smeared points: a is in I_i, not in I_j
                assert not three_lines.ideals[j].contains(w.a)
        assert not three_lines.ideals[i].contains(w.b)
        expected_a = tuple(Fraction(0 if j == i else 1) for j in range(3))
        assert w.a_membership.constants == expected_a
        assert w.b_membership.constants == tuple(1 - c for c in expected_a)


def test_partition_needs_two_ideals(R2):
    config = SmearedRingConfig(R2, (Ideal(R2, (R2.var("x"),)),))
    with pytest.raises(ValueError):
        sm.partition_of_unity(0, config)


def test_verdicts_three_lines(three_lines):
    v = sm.verdicts(three_lines)
    assert not v.noetherian
    assert v.depicted_by_S
    assert v.per_ideal_dims == (1, 1, 1)
    assert v.gdim_lower_bounds == v.per_ideal_dims
    assert sm.noetherian_verdict(three_lines) == v
    assert sm.depiction_verdict(three_lines) == v


def test_locus_examples(three_lines):
    assert sm.locus_member([3, 5], three_lines).in_locus
    report = sm.locus_member([0, 7], three_lines)
    assert not report.in_locus
    assert report.evidence[0].on_variety
    assert not report.evidence[1].on_variety
    report = sm.locus_member([1, -2], three_lines)
    assert not report.in_locus
    assert report.evidence[1].on_variety
    with pytest.raises(ValueError):
        sm.locus_member([1], three_lines)


def test_locus_false_iff_on_some_zero_set(three_lines, R2):
    rng = random.Random(71)
    for _ in range(40):
        if rng.random() < 0.4:
            point = [Fraction(rng.choice([0, 1, 2])), Fraction(rng.randint(-5, 5))]
        else:
            point = [
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            ]
        report = sm.locus_member(point, three_lines)
        on_some = any(
            all(g.evaluate(point) == 0 for g in ideal.generators)
            for ideal in three_lines.ideals
        )
        assert report.in_locus == (not on_some)


def test_chain_witness_vertical_line(three_lines, R2):
    w = sm.chain_witness(0, 8, three_lines)
    assert w.h == R2.var("y")
    assert w.g == R2.var("x")
    assert w.length == 8
    assert [str(nf) for nf in w.evidence] == [
        "1", "y", "y^2", "y^3", "y^4", "y^5", "y^6", "y^7", "y^8"
    ]


def test_chain_witness_hyperbola(R2):
    x, y = R2.var("x"), R2.var("y")
    config = SmearedRingConfig(R2, (Ideal(R2, (x * y - 1,)),))
    w = sm.chain_witness(0, 10, config)
    assert w.h == x
    assert len(w.evidence) == 11


def test_chain_witness_dim_zero_fails(R2):
    x, y = R2.var("x"), R2.var("y")
    config = SmearedRingConfig(R2, (Ideal(R2, (x**2 - x, y)),))
    with pytest.raises(sm.NoChainError):
        sm.chain_witness(0, 5, config)


def test_chain_witness_arg_checks(three_lines):
    with pytest.raises(ValueError):
        sm.chain_witness(0, -1, three_lines)
    with pytest.raises(IndexError):
        sm.chain_witness(5, 3, three_lines)


def test_r_basis_degree_zero(three_lines, R2):
    basis = sm.r_basis(0, three_lines)
    assert len(basis) == 1
    assert basis[0].is_constant()
    with pytest.raises(ValueError):
        sm.r_basis(-1, three_lines)


def test_r_basis_members_and_monotone(three_lines):
    prev = 0
    for d in range(6):
        basis = sm.r_basis(d, three_lines)
        assert len(basis) >= prev
        prev = len(basis)
        for p in basis:
            assert sm.member(p, three_lines).member


def test_corollary_configs(R2):
    x, y = R2.var("x"), R2.var("y")
    single_line = SmearedRingConfig(R2, (Ideal(R2, (x,)),))
    v = sm.verdicts(single_line)
    assert not v.noetherian and v.depicted_by_S

    two_points = SmearedRingConfig(R2, (Ideal(R2, (x**2 - x, y)),))
    v = sm.verdicts(two_points)
    assert v.noetherian and not v.depicted_by_S

    mixed = SmearedRingConfig(
        R2, (Ideal(R2, (x**2 - x, y)), Ideal(R2, (y - 1,)))
    )
    assert sm.validate(mixed).ok
    v = sm.verdicts(mixed)
    assert not v.noetherian and not v.depicted_by_S


def test_constancy_check(three_lines, R2):
    x, y = R2.var("x"), R2.var("y")
    f = x * (x - 1) * (x - 2) * y + 7
    report = sm.smeared_constancy_check(
        f, 0, [(0, 0), (0, 1), (0, -5)], three_lines
    )
    assert report.ok
    assert report.expected == 7
    assert report.values == (7, 7, 7)

    rng = random.Random(73)
    points = [(2, Fraction(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(6)]
    report = sm.smeared_constancy_check(x, 2, points, three_lines)
    assert report.ok and report.expected == 2

    with pytest.raises(ValueError):
        sm.smeared_constancy_check(f, 0, [(1, 0)], three_lines)
