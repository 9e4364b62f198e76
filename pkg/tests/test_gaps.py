import random
from decimal import Decimal, getcontext
from fractions import Fraction

import mpmath
import pytest

from dioph import (
    DomainError,
    HilbertCube,
    abc_identity_quality,
    antigap_audit,
    bdkn_2x2_configs,
    bennett_gamma,
    bennett_lambda,
    check_a0X,
    check_gap,
    factorize,
    gap_floor,
    growth_floor_sequence,
)


def test_gap_floor_examples():
    assert gap_floor(3, 1, 2, 4) == 108
    assert gap_floor(3, -2, 2, 4) == Fraction(27, 2)
    assert gap_floor(4, 1, 1, 1) == 4
    with pytest.raises(DomainError):
        gap_floor(2, 1, 1, 1)
    with pytest.raises(DomainError):
        gap_floor(3, 0, 1, 1)


def test_gap_floor_monotonicity():
    # increasing x*z raises the floor, increasing |n| lowers it
    assert gap_floor(3, 1, 3, 4) > gap_floor(3, 1, 2, 4)
    assert gap_floor(3, 2, 2, 4) < gap_floor(3, 1, 2, 4)
    assert gap_floor(5, -3, 7, 9) == gap_floor(5, 3, 9, 7)


def test_check_gap_examples():
    v = check_gap(3, 1, 1, 2, 1, 2)
    assert not v.hypotheses_met  # x*z = 1 < 2
    v = check_gap(3, 1, 2, 3, 4, 5)
    assert not v.hypotheses_met  # 2*4+1 = 9 is not a cube
    with pytest.raises(DomainError):
        check_gap(3, 1, 2, 1, 1, 2)


def test_check_gap_on_harvested_quadruple():
    # ({1, 14}, {2, 9}) is a cube configuration for shift -1:
    # 1*2-1=1, 1*9-1=8, 14*2-1=27, 14*9-1=125
    v = check_gap(3, -1, 1, 14, 2, 9)
    assert v.hypotheses_met
    assert v.inequality_holds
    assert v.lhs == 14 * 9


def test_growth_floor_examples():
    g = growth_floor_sequence(4, 1, 8, 2, 3)
    assert g.theta == Fraction(3, 2)
    assert g.b1_hypothesis_met
    values = [m * 2**e for m, e in g.floors]
    expected = [2.0, 2**1.5, 2**2.25]
    for got, want in zip(values, expected):
        assert want * (1 - 1e-12) <= got <= want

    g = growth_floor_sequence(5, 1, 5, 3, 2)
    assert g.theta == 2
    values = [m * 2**e for m, e in g.floors]
    for got, want in zip(values, [3, 9]):
        assert want * (1 - 1e-12) <= got <= want

    with pytest.raises(DomainError):
        growth_floor_sequence(4, 1, 4, 2, 1)  # theta would be exactly 1


def test_growth_floor_lower_bound_property():
    # floors never exceed the true value b1**(theta**(i-1))
    g = growth_floor_sequence(4, 2, Fraction(9, 2), 37, 5)
    with mpmath.workdps(120):
        for i, (mant, e2) in enumerate(g.floors):
            true = mpmath.mpf(37) ** (
                mpmath.mpf(g.theta.numerator) / g.theta.denominator
            ) ** i
            assert mpmath.mpf(mant) * mpmath.mpf(2) ** e2 <= true
    assert not g.b1_hypothesis_met  # 37 < 2 * 2**4.5


def test_check_a0X_small_dimension():
    cube = HilbertCube(a0=1, generators=(6, 13))
    v = check_a0X(cube, 3, 3)
    assert not v.hypotheses_met


def test_check_a0X_unverified_counterexample_candidate():
    # a synthetic (unverified) cube with d = 10 and a huge top-half
    # product: the inequality fails, but so do the hypotheses, exactly
    # the contrapositive framing
    cube = HilbertCube(a0=1, generators=tuple(range(2, 12)))
    v = check_a0X(cube, 3, 1)
    assert not v.hypotheses_met
    assert not v.inequality_holds
    assert v.lhs >= v.rhs


def test_bennett_gamma_examples():
    gamma, ok = bennett_gamma(0, 1, 3)
    assert gamma == Fraction(36, 5) and ok
    gamma, ok = bennett_gamma(0, 2, 3)
    assert gamma == Fraction(36, 5) and ok
    gamma, ok = bennett_gamma(-3, -1, 0)
    assert gamma == Fraction(36, 5) and ok
    with pytest.raises(DomainError):
        bennett_gamma(1, 2, 3)  # no zero entry
    with pytest.raises(DomainError):
        bennett_gamma(0, 3, 2)


def test_bennett_gamma_seeded_enclosure():
    rng = random.Random(3302)
    for _ in range(2000):
        vals = _random_c_triple(rng, 10**3)
        gamma, ok = bennett_gamma(*vals)
        assert ok, vals


def test_bennett_gamma_arith_progression_boundary():
    # when c2-c1 == c1-c0 the lower end of the enclosure is attained
    # exactly, so the strict form fails there (and only there)
    gamma, ok = bennett_gamma(0, 456, 912)
    assert gamma == Fraction(912**3, 6)
    assert not ok
    gamma, ok = bennett_gamma(-5, 0, 5)
    assert gamma == Fraction(10**3, 6)
    assert not ok


def _random_c_triple(rng, M):
    # uniform valid triples with a zero entry, excluding the exact
    # arithmetic-progression boundary where the strict enclosure is
    # attained with equality
    while True:
        zero_pos = rng.randrange(3)
        others = sorted(rng.sample(range(-M, M + 1), 2))
        if zero_pos == 0 and 0 < others[0]:
            c = (0, others[0], others[1])
        elif zero_pos == 1 and others[0] < 0 < others[1]:
            c = (others[0], 0, others[1])
        elif zero_pos == 2 and others[1] < 0:
            c = (others[0], others[1], 0)
        else:
            continue
        if c[2] - c[1] != c[1] - c[0]:
            return c


def _decimal_lambda(N, c0, c1, c2, gamma):
    # independent oracle: stdlib Decimal logarithms at 60 digits
    getcontext().prec = 60
    top = (Decimal(33) * N * gamma.numerator / gamma.denominator).ln()
    prod = Decimal(((c0 - c1) * (c0 - c2) * (c1 - c2)) ** 2)
    bottom = (Decimal(17) * N * N / (10 * prod)).ln()
    return 1 + top / bottom


def test_bennett_lambda_against_decimal_oracle():
    res = bennett_lambda(10**6, 0, 1, 3)
    assert res.hypothesis_met and res.in_range
    oracle = _decimal_lambda(10**6, 0, 1, 3, res.gamma)
    assert abs(float(res.value) - float(oracle)) < 1e-12
    assert abs(float(res.value) - 1.78) < 0.01


def test_bennett_lambda_hypothesis_report():
    res = bennett_lambda(100, 0, 1, 3)  # 100 <= 3**9
    assert not res.hypothesis_met
    assert res.notes


def test_bennett_lambda_decreasing_toward_three_halves():
    vals = [float(bennett_lambda(N, 0, 1, 3).value) for N in (10**6, 10**9, 10**12)]
    assert vals[0] > vals[1] > vals[2] > 1.5


def test_bennett_lambda_degenerate():
    with pytest.raises(DomainError):
        bennett_lambda(1, 0, 1, 3)  # 1.7 * 1 / 36 < 1 makes the log <= 0


def test_antigap_small_a3():
    # genuine BD_2(-11) pair: {1,3,5} x {12,60}
    v = antigap_audit(1, 3, 5, 12, 60, -11)
    assert not v.hypotheses_met
    assert any("a3 = 5 < 7" in note for note in v.notes)
    # the residual machinery still runs and lands under the ceiling
    assert v.residual_within_bound
    assert v.residual_bound == Fraction(5 * 11, 1 * 17**2)


def test_antigap_b1_too_small():
    # genuine BD_2(1) pair: {1,3,120} x {8,1680}
    v = antigap_audit(1, 3, 120, 8, 1680, 1)
    assert not v.hypotheses_met
    assert any("b1 <=" in note for note in v.notes)
    assert v.inequality_holds  # 1680 < 8**120 regardless


def test_antigap_rejects_non_bd_pair():
    with pytest.raises(DomainError):
        antigap_audit(1, 2, 3, 4, 5, 7)
    with pytest.raises(DomainError):
        antigap_audit(3, 2, 5, 12, 60, -11)  # bad ordering


def test_antigap_residual_matches_brute_recomputation():
    # recompute the two residuals naively at high precision
    a1, a2, a3, b1, b2, n = 1, 3, 5, 12, 60, -11
    v = antigap_audit(a1, a2, a3, b1, b2, n)
    with mpmath.workdps(80):
        rr = mpmath.sqrt(a1 * b1 + n)
        ss = mpmath.sqrt(a2 * b1 + n)
        tt = mpmath.sqrt(a3 * b1 + n)
        xx = mpmath.sqrt(a1 * b2 + n)
        yy = mpmath.sqrt(a2 * b2 + n)
        zz = mpmath.sqrt(a3 * b2 + n)
        t1 = rr * mpmath.sqrt(a3) / (tt * mpmath.sqrt(a1))
        t2 = ss * mpmath.sqrt(a3) / (tt * mpmath.sqrt(a2))
        r1 = abs(t1 - a3 * rr * xx / (a1 * tt * zz))
        r2 = abs(t2 - a3 * ss * yy / (a2 * tt * zz))
        brute = max(r1, r2)
        assert abs(float(v.residual_max) - float(brute)) < 1e-30


def test_identity_examples():
    holds, quality = abc_identity_quality(1, 3, 8, 120, 2, 1)
    assert holds
    # 9*361 - 121*25 = 224 = 1*2*112 and the radical comes from factorize
    rad = 1
    for p, _ in factorize(3249 * 3025 * 224).factors:
        rad *= p
    with mpmath.workdps(30):
        expected = mpmath.log(3249) / mpmath.log(rad)
    assert abs(float(quality) - float(expected)) < 1e-12

    holds, _ = abc_identity_quality(1, 2, 5, 145, 2, -1)
    assert holds  # 4*289 - 144*9 = -140 = (-1)*1*140


def test_identity_on_harvested_configs():
    for k, n in ((3, -1), (2, 1), (2, -1)):
        for x, y, z, w in bdkn_2x2_configs(k, n, 1200):
            if x != y and z != w:
                holds, _ = abc_identity_quality(x, y, z, w, k, n)
                assert holds, (k, n, x, y, z, w)


def test_identity_degenerate():
    with pytest.raises(DomainError):
        abc_identity_quality(1, 1, 8, 120, 2, 1)
    with pytest.raises(DomainError):
        abc_identity_quality(1, 2, 3, 4, 2, 1)  # not a BD pair
