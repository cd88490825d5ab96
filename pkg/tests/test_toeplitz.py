import math
import random

import pytest
from mpmath import mp, mpc, mpf

from predlab.arcs import ArcSet
from predlab.covariance import (CovarianceSequence, covariances_arcset,
                                covariances_arfima0d0, covariances_for,
                                covariances_ma1)
from predlab.models import ConstDensity, Ma1Density
from predlab.toeplitz import (levinson, optimal_polynomial,
                              sigma2_via_determinants,
                              toeplitz_quadratic_form)

PI = math.pi


def _random_posdef_sequence(rng, n, bits=256, complex_ok=False):
    """Spectral-mass construction: r(t) = sum w_i e^{-i t theta_i} is a
    positive-definite Hermitian sequence for positive weights."""
    with mp.workprec(bits + 32):
        k = rng.randint(n + 1, n + 6)
        ws = [mpf(rng.uniform(0.1, 1.0)) for _ in range(k)]
        ths = [mpf(rng.uniform(-math.pi, math.pi)) for _ in range(k)]
        vals = []
        for t in range(n + 1):
            acc = mpc(0)
            for w, th in zip(ws, ths):
                acc += w * mp.exp(mpc(0, -t) * th)
            vals.append(acc)
        if not complex_ok:
            # symmetrize the mass to get a real sequence
            vals = [v.real for v in vals]
        return CovarianceSequence(values=tuple(vals), precision_bits=bits,
                                  abs_error_bound=mpf(0), source="synthetic",
                                  is_real=not complex_ok)


def test_white_noise_trace():
    cov = covariances_ma1(0.0, 1.0, 20, 128)
    tr = levinson(cov, 20)
    assert all(s == 1 for s in tr.sigma2)
    assert all(v == 0 for v in tr.verblunsky)


def test_ma1_unit_root_sigma2():
    cov = covariances_ma1(1.0, 1.0, 40, 256)
    tr = levinson(cov, 40)
    with mp.workprec(280):
        worst = max(abs(tr.sigma2[n] - mpf(n + 2) / (n + 1)) for n in range(41))
        assert worst < mpf(10) ** -70


def test_determinant_oracle_ma1():
    cov = covariances_ma1(1.0, 1.0, 8, 192)
    with mp.workprec(220):
        assert abs(sigma2_via_determinants(cov, 4) - mpf(6) / 5) < mpf(10) ** -50


@pytest.mark.parametrize("seed", range(10))
def test_levinson_vs_determinants_random(seed):
    rng = random.Random(1000 + seed)
    cov = _random_posdef_sequence(rng, 8)
    tr = levinson(cov, 8)
    with mp.workprec(280):
        for n in range(1, 9):
            d = sigma2_via_determinants(cov, n)
            assert abs(tr.sigma2[n] - d) / d < mpf(10) ** -20


@pytest.mark.parametrize("seed", range(5))
def test_levinson_vs_determinants_complex(seed):
    rng = random.Random(77 + seed)
    cov = _random_posdef_sequence(rng, 6, complex_ok=True)
    tr = levinson(cov, 6)
    assert not tr.is_real
    with mp.workprec(280):
        for n in range(1, 7):
            d = sigma2_via_determinants(cov, n)
            assert abs(tr.sigma2[n] - d) / abs(d) < mpf(10) ** -20


def test_product_identity():
    cov = covariances_arfima0d0(0.25, 60, 256)
    tr = levinson(cov, 60)
    with mp.workprec(280):
        prod = tr.r0
        for n in range(1, 61):
            prod *= (1 - abs(tr.verblunsky[n - 1]) ** 2)
            assert abs(tr.sigma2[n] - prod) <= tr.sigma2[n] * mpf(2) ** (-(256 - 24))


def test_ratio_identity():
    cov = covariances_arfima0d0(0.25, 30, 192)
    tr = levinson(cov, 30)
    with mp.workprec(220):
        for n in range(1, 30):
            lhs = tr.sigma2[n + 1] / tr.sigma2[n]
            rhs = 1 - abs(tr.verblunsky[n]) ** 2
            assert abs(lhs - rhs) < mpf(10) ** -45


def test_degeneracy_flag():
    # exponentially decaying errors must hit the precision floor at low
    # working precision; the recursion stops cleanly with partial output
    arcs = ArcSet.single(PI / 2, PI)
    cov = covariances_arcset(arcs, 200, 64)
    tr = levinson(cov, 200)
    assert 20 < tr.degenerate_at <= 200
    assert tr.usable_n == tr.degenerate_at - 1
    assert all(s > 0 for s in tr.sigma2)


def test_warning_on_insufficient_accuracy():
    vals = (mpf(2), mpf(-1), mpf(0), mpf(0), mpf(0), mpf(0))
    cov = CovarianceSequence(values=vals, precision_bits=192,
                             abs_error_bound=mpf("5e-2"), source="synthetic")
    tr = levinson(cov, 5)
    assert tr.warnings


def test_optimal_polynomial_white_noise():
    cov = covariances_ma1(0.0, 1.0, 6, 128)
    tr = levinson(cov, 6)
    p = optimal_polynomial(tr, 4)
    assert p[0] == 1 and all(c == 0 for c in p[1:])


def test_optimal_polynomial_first_step_minimality():
    # p_1(z) = z - conj(v_1); a grid search around the coefficient cannot
    # find a smaller weighted norm
    arcs = ArcSet.single(PI / 2, PI)
    cov = covariances_arcset(arcs, 4, 192)
    tr = levinson(cov, 4)
    p1 = optimal_polynomial(tr, 1)
    with mp.workprec(220):
        assert abs(p1[1] + mp.conj(tr.verblunsky[0])) < mpf(10) ** -40
        base = toeplitz_quadratic_form(cov, p1)
        assert abs(base - tr.sigma2[1]) < mpf(10) ** -40
        for dre in (-0.01, 0.01):
            for dim in (-0.01, 0.0, 0.01):
                cand = (p1[0], p1[1] + mpc(dre, dim))
                assert toeplitz_quadratic_form(cov, cand) > base


def test_optimal_polynomial_norm_is_sigma2_by_quadrature():
    # || p_3 ||^2 under the unit-root MA(1) density, via direct quadrature
    f = Ma1Density(1.0, 1.0)
    cov = covariances_ma1(1.0, 1.0, 3, 192)
    tr = levinson(cov, 3)
    p3 = optimal_polynomial(tr, 3)
    from predlab.quadrature import adaptive_integral
    with mp.workprec(220):
        def integrand(lam):
            z = mp.exp(mpc(0, 1) * lam)
            acc = mpc(0)
            for c in p3:
                acc = acc * z + c
            return abs(acc) ** 2 * f._eval(lam)
        val, err, _ = adaptive_integral(integrand, [(-mp.pi, mp.pi)], prec=192,
                                        target=mpf(10) ** -40)
        assert abs(val - tr.sigma2[3]) < mpf(10) ** -35


def test_monotone_in_density():
    # indicator of an arc is dominated by the constant 1 on the circle
    arcs = ArcSet.single(PI / 2, PI)
    cov_arc = covariances_arcset(arcs, 20, 256)
    cov_one = covariances_for(ConstDensity(1.0), 20, 256)
    tr_arc = levinson(cov_arc, 20)
    tr_one = levinson(cov_one, 20)
    for n in range(21):
        assert tr_arc.sigma2[n] <= tr_one.sigma2[n] * (1 + mpf(10) ** -40)


def test_scaling_property():
    cov = covariances_arfima0d0(0.25, 12, 192)
    tr = levinson(cov, 12)
    tr3 = levinson(cov.scaled(3.0), 12)
    with mp.workprec(220):
        for n in range(13):
            assert abs(tr3.sigma2[n] - 3 * tr.sigma2[n]) < tr.sigma2[n] * mpf(10) ** -45


def test_rotation_property():
    # modulated covariances leave sigma2 unchanged
    arcs = ArcSet.symmetric_pair(0.0, 1.0, 0.5)
    cov = covariances_arcset(arcs, 16, 256)
    tr = levinson(cov, 16)
    trm = levinson(cov.modulated(0.9), 16)
    with mp.workprec(280):
        for n in range(17):
            assert abs(trm.sigma2[n] - tr.sigma2[n]) <= tr.sigma2[n] * mpf(10) ** -45


def test_trace_csv_columns():
    cov = covariances_ma1(0.5, 1.0, 5, 128)
    tr = levinson(cov, 5)
    lines = tr.to_csv().strip().splitlines()
    assert lines[2] == "n,sigma2,v,ratio,nth_root"
    assert len(lines) == 9
