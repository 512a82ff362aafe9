import cmath
import math
from fractions import Fraction

import pytest

from weylchar.poisson import (
    PoissonKernelParams,
    binomial_reexpansion_check,
    chi_tau_tauprime,
    embedded_trace_values,
    kernel,
    kstep_semigroup_check,
    poisson_mass,
    poisson_series_check,
    stirling_identity,
    tv_bound,
)

F = Fraction


def test_kernel_examples():
    p1 = PoissonKernelParams((1,))
    assert abs(kernel(p1, (0,), (0,)) - math.exp(-1)) < 1e-15
    assert kernel(p1, (2,), (1,)) == 0.0
    p12 = PoissonKernelParams((1, 2))
    assert abs(kernel(p12, (0, 0), (1, 0)) - math.exp(-3)) < 1e-15


def test_kernel_rows_sum_to_one():
    for rates in ((1,), (F(1, 2), 2), (1, 1, F(3, 2))):
        params = PoissonKernelParams(rates)
        import itertools

        total = 0.0
        for y in itertools.product(range(25), repeat=params.m):
            total += kernel(params, (0,) * params.m, y)
        assert abs(total - 1) < 1e-8


def test_kernel_validation():
    with pytest.raises(ValueError):
        PoissonKernelParams(())
    with pytest.raises(ValueError):
        PoissonKernelParams((0,))
    with pytest.raises(ValueError):
        kernel(PoissonKernelParams((1,)), (0, 0), (0,))


def test_kstep_semigroup():
    rep1 = kstep_semigroup_check(PoissonKernelParams((1,)), 1, truncation=30)
    assert rep1.max_deviation < 1e-15
    rep2 = kstep_semigroup_check(PoissonKernelParams((1,)), 2, truncation=40)
    assert rep2.max_deviation < 1e-12 and rep2.passed
    rep3 = kstep_semigroup_check(PoissonKernelParams((F(1, 2), F(1, 2))), 3, truncation=18)
    assert rep3.max_deviation < 1e-10 and rep3.passed
    with pytest.raises(ValueError):
        kstep_semigroup_check(PoissonKernelParams((1,)), 0)


def test_tv_bound_examples():
    assert abs(tv_bound(1, 4) - math.exp(-4) * 64 / 3) < 1e-15
    assert tv_bound(1, 100) < 0.09
    with pytest.raises(ValueError):
        tv_bound(1, 0)


def test_tv_bound_monotone_and_vanishing():
    for a in (F(1, 3), F(1), F(5, 2)):
        start = math.ceil(1 / float(a))
        vals = [tv_bound(a, k) for k in range(start, start + 200)]
        assert all(x >= y for x, y in zip(vals, vals[1:]))
        # large-k shape ~ sqrt(2/(pi t)), hence vanishing
        t = float(a) * (start + 199)
        assert abs(vals[-1] - math.sqrt(2 / (math.pi * t))) < 0.15 * vals[-1]
        assert vals[-1] < 1.2 * math.sqrt(2 / (math.pi * t))


def test_tv_bound_matches_direct_series():
    for t in (F(1, 2), F(4), F(17, 3)):
        k = 1
        tf = float(t)
        direct = sum(
            abs(poisson_mass(tf, x) - poisson_mass(tf, x - 1)) for x in range(0, 400)
        )
        assert abs(tv_bound(t, k) - direct) < 1e-12


def test_stirling_identity_values():
    r4 = stirling_identity(F(4))
    assert r4.closed_form == F(61, 3)
    assert r4.relative_deviation < 1e-12
    assert abs(r4.damped - math.exp(-4) * 61 / 3) < 1e-12
    r1 = stirling_identity(F(1))
    assert r1.closed_form == 1
    r100 = stirling_identity(F(100), max_terms=300)
    asym = 1 / math.sqrt(2 * math.pi * 100)
    assert abs(r100.peak_mass - asym) < 0.1 * asym
    with pytest.raises(ValueError):
        stirling_identity(0)


def test_stirling_partial_sums_converge():
    for t in (0.5, 1.0, 4.0, 10.0, 100.0):
        rep = stirling_identity(t, max_terms=300)
        assert rep.relative_deviation <= 1e-10, t


def test_chi_tau_tauprime():
    assert chi_tau_tauprime([0]) == 1
    s = 0.3
    assert abs(chi_tau_tauprime([-2 * s]) - math.exp(-2 * s)) < 1e-15
    vals = [complex(-0.1, 0.7), complex(-0.5, -0.2)]
    out = chi_tau_tauprime(vals, [complex(-0.3, 0.1)])
    assert abs(out) <= 1
    assert abs(abs(out) - math.exp(-0.1 - 0.5 - 0.3)) < 1e-12
    with pytest.raises(ValueError):
        chi_tau_tauprime([complex(0.2, 0)])


def test_poisson_series_identity():
    tau = (1 + 1j) / 2
    rep = poisson_series_check([1], [], 2, [tau], truncation=60)
    assert rep.passed and rep.deviation < 1e-10
    assert abs(rep.closed - cmath.exp(2 * (tau - 1))) < 1e-14
    rep_ab = poisson_series_check([F(1)], [F(1)], 3, [tau], truncation=80)
    assert rep_ab.passed
    # a = b: modulus equals exp(2 n a Re(tau - 1))
    assert abs(abs(rep_ab.closed) - math.exp(2 * 3 * (tau.real - 1))) < 1e-12


def test_poisson_series_trivial_unitary():
    rep = poisson_series_check([1, 2], [1], 2, [1.0, 1.0], [1.0], truncation=50)
    assert abs(rep.closed - 1) < 1e-14 and abs(rep.series - 1) < 1e-10


def test_poisson_series_random_sweep():
    import random

    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(1, 4)
        a = [F(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(rng.randint(1, 2))]
        b = [F(rng.randint(1, 2)) for _ in range(rng.randint(0, 2))]
        tau = []
        for _ in a:
            ang = rng.uniform(0, 2 * math.pi)
            r = rng.uniform(0, 1)
            tau.append(r * cmath.exp(1j * ang))
        taup = [rng.uniform(0, 1) * cmath.exp(1j * rng.uniform(0, 7)) for _ in b]
        rep = poisson_series_check(a, b, n, tau, taup, truncation=90)
        assert rep.passed, (a, b, n)


def test_embedded_trace_values():
    tau = (0.2 + 0.5j,)
    (emb,) = embedded_trace_values(tau, 2, 6)
    assert abs(emb - (2 * tau[0] + 4) / 6) < 1e-15
    with pytest.raises(ValueError):
        embedded_trace_values(tau, 3, 3)


def test_binomial_reexpansion():
    tau = (1 + 1j) / 2
    rep = binomial_reexpansion_check([1], 2, 5, [tau], truncation=80)
    assert rep.passed
    assert rep.character_deviation < 1e-10
    assert rep.binomial_deviation < 1e-10
    assert rep.row_mass_deviation < 1e-10
    rep2 = binomial_reexpansion_check([F(1, 2), F(2)], 1, 4, [0.3 + 0.4j, -0.5 + 0.1j])
    assert rep2.passed


def test_lattice_distribution_invariants():
    from weylchar.poisson import LatticeDistribution, kernel_row

    row = kernel_row(PoissonKernelParams((1, F(1, 2))), 2, truncation=30)
    total = sum(row.probs.values())
    assert total <= 1 + 1e-12
    assert total + row.tail_bound >= 1 - 1e-9
    with pytest.raises(ValueError):
        LatticeDistribution({(0,): 0.5}, 0.0)  # huge missing mass, tiny bound
