import math

import pytest

from predlab.grammar import (SpecParseError, parse_arcs, parse_density,
                             parse_factor)
from predlab.models import Ma1Density, multiply_factor, AbsTrigPower, ConstBound
from predlab.trig import TrigPolynomial

ROUND_TRIP_SPECS = [
    "const(1.0)",
    "ma1:b=1.0,sigma2=1.0",
    "ma1:b=0.5,sigma2=2.0",
    "arma:psi=[1.0,-0.5],theta=[1.0,0.3],sigma2=2.0",
    "arfima:d=0.25,inner={arma:psi=[1.0],theta=[1.0],sigma2=1.0}",
    "arfima:d=-0.3,inner={arma:psi=[1.0],theta=[1.0],sigma2=1.0}",
    "pollaczek:a=1.0",
    "hat_pollaczek:a=0.5",
    "expzero0:a=1.0",
    "expzeropi:a=2.0",
    "arc:base=const(1.0),arcs=[(1.5707963267948966,0.7853981633974483)]",
    "arc:base={ma1:b=0.5,sigma2=1.0},arcs=[(0.0,0.5)]",
    "product:f=pollaczek:a=1.0;g=abs_trig_pow(h=const(1.0),t=sin2,alpha=2.0)",
    "product:f=ma1:b=0.5,sigma2=1.0;g=ratio_trig(h=const(2.0),t1=sin2(lambda0=0.5),t2=const(1.0))",
    "product:f=pollaczek:a=1.0;g=abs_alg_pow(h=const(1.0),q=[0.0,1.0],alpha=0.5)",
]


@pytest.mark.parametrize("spec", ROUND_TRIP_SPECS)
def test_round_trip(spec):
    d = parse_density(spec)
    printed = d.spec_string()
    d2 = parse_density(printed)
    assert d2.spec_string() == printed
    assert d2 == d


def test_documented_short_forms():
    d = parse_density("ma1:b=1,sigma2=1")
    assert isinstance(d, Ma1Density) and d.b == 1.0
    arcs = parse_arcs("[(1.5708,0.7854)]")
    assert arcs.total_length == pytest.approx(2 * 0.7854)
    assert parse_arcs("full").is_full_circle


def test_factor_parsing():
    g = parse_factor("abs_trig_pow(h=const(1.0),t=sin2k(k=2,lambda0=0.0),alpha=1.0)")
    assert g.form == "abs_trig_pow"
    g2 = parse_factor("neg_trig_pow(h=const(1.0),t=sin2,alpha=1.0)")
    assert g2.poles
    g3 = parse_factor("expsin-free") if False else parse_factor(
        "ratio_trig(h=expsin([0.2,-0.1]),t1=const(1.0),t2=const(1.0))")
    assert g3.form == "ratio_trig"


def test_product_round_trip_preserves_value():
    import mpmath
    spec = "product:f=ma1:b=0.5,sigma2=1.0;g=abs_trig_pow(h=const(1.0),t=sin2,alpha=1.0)"
    d = parse_density(spec)
    d2 = parse_density(d.spec_string())
    with mpmath.mp.workprec(120):
        for lam in (0.3, 1.7, -2.0):
            assert abs(d.eval(mpmath.mpf(lam)) - d2.eval(mpmath.mpf(lam))) < mpmath.mpf("1e-25")


@pytest.mark.parametrize("bad", [
    "pollaczekk:a=1",
    "ma1:b=",
    "arc:base=const(1.0)",
    "product:f=pollaczek:a=1.0",
    "tabulated:anything",
    "",
    "coeffs nonsense",
])
def test_parse_errors(bad):
    with pytest.raises(SpecParseError):
        parse_density(bad)


def test_programmatic_product_round_trips():
    d = multiply_factor(Ma1Density(0.5, 1.0),
                        AbsTrigPower(ConstBound(1.0), TrigPolynomial.sin_power(1, 0.3), 2.0))
    d2 = parse_density(d.spec_string())
    assert d2.spec_string() == d.spec_string()
