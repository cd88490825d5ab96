import math

import pytest
from mpmath import mp, mpf

from predlab.arcs import ArcSet
from predlab.models import (AbsAlgebraicPower, AbsTrigPower,
                            ArfimaDensity, ArmaDensity,
                            ConstBound, ConstDensity, ExpOddSin,
                            ExpZeroOriginDensity, ExpZeroPiDensity,
                            HatPollaczekDensity, IntegrabilityError,
                            Ma1Density, ModelError, NegTrigPower,
                            PollaczekDensity, RatioOfTrigPolys,
                            TabulatedDensity, describe, make_arc_restricted,
                            multiply_factor)
from predlab.trig import TrigPolynomial

PI = math.pi

ALL_EVEN_MODELS = [
    Ma1Density(1.0, 1.0),
    Ma1Density(0.5, 2.0),
    ArmaDensity(psi=(1.0, -0.4), theta=(1.0, 0.2), sigma2=1.0),
    ArfimaDensity(0.25),
    ArfimaDensity(-0.3),
    PollaczekDensity(1.0),
    HatPollaczekDensity(0.7),
    ExpZeroOriginDensity(1.0),
    ExpZeroPiDensity(1.0),
    ConstDensity(0.5),
]


def test_ma1_zero_at_origin():
    f = Ma1Density(1.0, 1.0)
    assert f.eval(mpf(0)) == 0


def test_pollaczek_peak_value():
    with mp.workprec(160):
        f = PollaczekDensity(1.3)
        assert abs(f.eval(mp.pi / 2) - 1) < mpf("1e-40")
        assert abs(f.eval(-mp.pi / 2) - 1) < mpf("1e-40")
        assert f.eval(mpf(0)) == 0 and f.eval(mp.pi) == 0


def test_pollaczek_contact_profiles():
    # f ~ 2 e^a exp(-a pi/lam) at the origin.  Near +-pi the same shape
    # appears with the identical constant 2 e^a (the nearby-zero factor
    # contributes e^a there as well, which the coarse asymptotic display
    # 2 exp(-a pi/(pi-lam)) drops).  Deep in the tail the values underflow
    # past any precision, so the comparison runs through log_eval.
    with mp.workprec(220):
        a = mpf("1.0")
        f = PollaczekDensity(1.0)
        for k in (1, 2, 3, 4):
            lam = mpf(10) ** (-k)
            ratio = mp.exp(f.log_eval(lam) - (mp.log(2) + a - a * mp.pi / lam))
            assert abs(ratio - 1) < 2 * lam
        for k in (2, 3, 4):
            lam = mp.pi - mpf(10) ** (-k)
            ratio = mp.exp(f.log_eval(lam) - (mp.log(2) + a - a * mp.pi / (mp.pi - lam)))
            assert abs(ratio - 1) < 2 * mpf(10) ** (-k)


def test_hat_pollaczek_is_normalized_product():
    with mp.workprec(200):
        a = 0.8
        f = HatPollaczekDensity(a)
        f1 = ExpZeroOriginDensity(a)
        f2 = ExpZeroPiDensity(a)
        for lam in (0.3, 1.0, PI / 2, 2.7):
            lhs = f.eval(mpf(lam))
            rhs = mp.e ** (4 * mpf(a)) * f1.eval(mpf(lam)) * f2.eval(mpf(lam))
            assert abs(lhs - rhs) <= mpf("1e-45") * max(lhs, mpf(1))
        assert abs(f.eval(mp.pi / 2) - 1) < mpf("1e-40")


@pytest.mark.parametrize("f", ALL_EVEN_MODELS, ids=lambda f: f.spec_string()[:24])
def test_evenness_on_grid(f):
    with mp.workprec(120):
        for j in range(0, 1000, 7):
            lam = mpf(-3.14) + mpf("6.28") * j / 1000
            assert abs(f.eval(lam) - f.eval(-lam)) <= mpf("1e-25") * (1 + f.eval(lam))


def test_arma_positivity_and_bounds():
    f = ArmaDensity(psi=(1.0, -0.5), theta=(1.0, 0.3), sigma2=2.0)
    with mp.workprec(120):
        vals = [f.eval(mpf(-3.14) + mpf("6.28") * j / 500) for j in range(501)]
    assert min(vals) > 0
    assert f.lower > 0
    assert min(vals) >= f.lower * 0.999 and max(vals) <= f.upper * 1.001


def test_arma_rejects_unit_root():
    with pytest.raises(ModelError):
        ArmaDensity(psi=(1.0,), theta=(1.0, -1.0), sigma2=1.0)


def test_arfima_requires_d_below_half():
    with pytest.raises(Exception):
        ArfimaDensity(0.5)


def test_arc_restriction_membership():
    arcs = ArcSet.symmetric_pair(0.0, 1.0, 0.5)
    f = make_arc_restricted(ConstDensity(1.0), arcs)
    assert f.eval(mpf("0.3")) == 0          # inside the gap
    assert f.eval(mpf("0.8")) == 1          # inside an arc
    assert f.eval(mpf("-0.8")) == 1


def test_arc_restriction_full_circle_is_base():
    f = make_arc_restricted(ConstDensity(1.0 / (2 * PI)), ArcSet.full())
    assert f.support is None
    with mp.workprec(100):
        assert f.eval(mpf("1.1")) == mpf(1.0 / (2 * PI))


def test_indicator_of_half_circle():
    f = make_arc_restricted(ConstDensity(1.0), ArcSet.single(PI / 2, PI))
    assert f.eval(mpf("1.0")) == 1
    assert f.eval(mpf("-1.0")) == 0


def test_product_composes_zero_metadata():
    g = AbsTrigPower(ConstBound(1.0), TrigPolynomial.sin_power(1, 0.0), 1.0)
    f = multiply_factor(PollaczekDensity(1.0), g)
    locs = {round(z.location, 6): z for z in f.zeros}
    assert set(locs) == {0.0, round(PI, 6)}
    assert locs[0.0].exp_rate == 1.0 and locs[0.0].poly_order == 2.0
    assert locs[round(PI, 6)].poly_order == 2.0


def test_product_constant_factor():
    g = RatioOfTrigPolys(ConstBound(2.5), TrigPolynomial.constant(1.0),
                         TrigPolynomial.constant(1.0))
    f = multiply_factor(ConstDensity(1.0 / (2 * PI)), g)
    with mp.workprec(100):
        assert abs(f.eval(mpf("0.4")) - mpf(2.5) * mpf(1.0 / (2 * PI))) < mpf("1e-25")


def test_non_integrable_product_rejected():
    # pole of order 2 sits where the base density is positive and bounded
    g = NegTrigPower(ConstBound(1.0), TrigPolynomial.sin_power(1, 1.0), 1.0)
    with pytest.raises(IntegrabilityError) as exc:
        multiply_factor(PollaczekDensity(1.0), g)
    assert "lambda" in str(exc.value)


def test_compensated_negative_power_accepted():
    base = multiply_factor(PollaczekDensity(1.0),
                           AbsTrigPower(ConstBound(1.0),
                                        TrigPolynomial.sin_power(2, 0.0), 1.0))
    ok = multiply_factor(base, NegTrigPower(ConstBound(1.0),
                                            TrigPolynomial.sin_power(1, 0.0), 1.0))
    zero_locs = {round(z.location, 6) for z in ok.zeros}
    assert zero_locs == {0.0, round(PI, 6)}
    assert not ok.poles


def test_fractional_negative_power_side_condition():
    # alpha = 0.5 needs f*t^-(floor(alpha)+1) integrable, i.e. order 2
    # compensation; a bare positive base fails it
    g = NegTrigPower(ConstBound(1.0), TrigPolynomial.sin_power(1, 0.9), 0.5)
    with pytest.raises(IntegrabilityError):
        multiply_factor(ConstDensity(1.0), g)


def test_factor_bounds_respected():
    h = ExpOddSin([0.3, -0.1])
    with mp.workprec(100):
        for j in range(64):
            lam = -PI + 2 * PI * (j + 0.5) / 64
            v = h.eval(mpf(lam))
            assert h.lower * 0.999 <= float(v) <= h.upper * 1.001


def test_tabulated_requires_declared_bounds():
    f = TabulatedDensity(lambda lam: 2 + mp.cos(lam), 1.0, 3.0, even=True)
    with mp.workprec(100):
        assert abs(f.eval(mpf(0)) - 3) < mpf("1e-20")
    with pytest.raises(ModelError):
        TabulatedDensity(lambda lam: 2 + mp.cos(lam), 1.5, 3.0, even=True)


def test_describe_reports_structure():
    d = describe(HatPollaczekDensity(2.0))
    assert d["kind"] == "hat_pollaczek"
    assert d["support"] == "full-circle"
    assert len(d["zeros"]) == 2
    assert all(z["exp_rate"] == 2.0 for z in d["zeros"])
    assert d["szego"] == "deterministic"

    d2 = describe(Ma1Density(0.5, 1.0))
    assert not d2["zeros"]
    assert d2["ess_inf"] > 0
    assert d2["szego"] == "nondeterministic"

    d3 = describe(make_arc_restricted(ConstDensity(1.0), ArcSet.single(PI / 2, PI)))
    assert d3["szego"] == "deterministic"
    assert d3["ess_inf"] == 0


def test_algebraic_power_metadata():
    g = AbsAlgebraicPower(ConstBound(1.0), [0.0, 1.0], -0.5)
    assert g.poles and g.poles[0].order == pytest.approx(0.5)
    f = multiply_factor(Ma1Density(0.5, 1.0), g)
    assert f.poles[0].order == pytest.approx(0.5)
