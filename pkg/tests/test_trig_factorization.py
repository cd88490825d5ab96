import math
import random

import pytest
from mpmath import mp, mpc, mpf

from predlab.factorization import (FactorizationError, eval_factor,
                                   fejer_riesz, log_abs_poly_integral,
                                   trig_geometric_mean, unit_circle_zeros)
from predlab.trig import TrigPolynomial


def test_eval_is_real_and_matches_closed_form():
    with mp.workprec(160):
        t = TrigPolynomial.sin_power(1, 0.4)
        for lam in [-3.0, -1.2, 0.0, 0.4, 2.5]:
            v = t.eval(mpf(lam))
            assert abs(v - mp.sin(mpf(lam) - mpf(0.4)) ** 2) < mpf("1e-40")


def test_one_minus_cos_factor():
    # 2 - 2cos(lam) = |1 - e^{i lam}|^2, so the factor is 1 - z and G = 1
    with mp.workprec(160):
        t = TrigPolynomial.one_minus_cos(2.0)
        s = fejer_riesz(t, 128)
        assert abs(abs(s[0]) ** 2 - 1) < mpf("1e-30")
        for lam in [0.3, 1.1, -2.2]:
            assert abs(eval_factor(s, lam) - t.eval(lam)) < mpf("1e-30")


def test_sin_squared_constant_term():
    with mp.workprec(160):
        for lam0 in (0.0, 1.0, math.pi / 2):
            t = TrigPolynomial.sin_power(1, lam0)
            s = fejer_riesz(t, 128)
            assert abs(abs(s[0]) ** 2 - mpf(1) / 4) < mpf("1e-30")


def test_constant_polynomial():
    with mp.workprec(160):
        assert abs(trig_geometric_mean(TrigPolynomial.constant(3.0), 128) - 3) < mpf("1e-30")


def _random_nonneg(rng, deg):
    # build |s|^2 from a random complex polynomial, so nonnegativity is
    # guaranteed and the reconstruction target is known exactly
    s = [mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(deg + 1)]
    coeffs = []
    for m in range(deg + 1):
        acc = mpc(0)
        for k in range(deg + 1 - m):
            acc += s[k + m] * mp.conj(s[k])
        coeffs.append(acc)
    return TrigPolynomial(coeffs=tuple(coeffs))


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5, 6])
def test_random_reconstruction(seed):
    rng = random.Random(seed)
    with mp.workprec(300):
        deg = rng.randint(1, 6)
        t = _random_nonneg(rng, deg)
        s = fejer_riesz(t, 256)
        assert s[0].real > 0 and abs(s[0].imag) < mpf("1e-40")
        scale = max(abs(mpc(c)) for c in t.coeffs)
        for j in range(17):
            lam = -math.pi + 2 * math.pi * j / 17
            assert abs(eval_factor(s, lam) - t.eval(lam)) < scale * mpf("1e-40")
        # factor is zero-free in the open disk
        if len(s) > 1:
            import mpmath
            roots = mpmath.polyroots(list(reversed(list(s))), maxsteps=400, extraprec=200)
            assert all(abs(w) >= 1 - 1e-9 for w in roots)


def test_negative_polynomial_rejected_with_witness():
    with mp.workprec(160):
        bad = TrigPolynomial.from_coeffs([mpf("0.1"), mpc(1, 0)])
        with pytest.raises(FactorizationError) as exc:
            fejer_riesz(bad, 128)
        assert "lambda" in str(exc.value)


def test_unit_circle_zero_orders():
    with mp.workprec(260):
        assert unit_circle_zeros(TrigPolynomial.sin_power(1, 0.0)) == pytest.approx(
            [(0.0, 2), (math.pi, 2)])
        zz = unit_circle_zeros(TrigPolynomial.sin_power(2, 0.5))
        assert [o for _, o in zz] == [4, 4]
        assert any(abs(l - 0.5) < 1e-8 for l, _ in zz)


def test_log_abs_poly_closed_forms(workprec300):
    # int log|lam| over the period gives (pi/e) as geometric mean
    v = mp.exp(log_abs_poly_integral([0.0, 1.0], 212) / (2 * mp.pi))
    assert abs(v - mp.pi / mp.e) < mpf("1e-40")
    v2 = mp.exp(log_abs_poly_integral([1.0, 0.0, 1.0], 212) / (2 * mp.pi))
    expect = mp.exp(mp.log(1 + mp.pi ** 2) - 2 + 2 / mp.pi * mp.atan(mp.pi))
    assert abs(v2 - expect) < mpf("1e-40")
    assert float(v2) == pytest.approx(3.3, abs=0.02)
