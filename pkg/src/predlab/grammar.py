"""Mini-grammar for density, factor and arc specifications.

The strings are what the CLI and config files speak, and every model
object prints itself back into the same grammar, so
parse(d.spec_string()) == d round-trips.

Examples:
    const(1.0)
    ma1:b=1,sigma2=1
    arma:psi=[1.0,-0.5],theta=[1.0],sigma2=1
    arfima:d=0.25,inner=arma:psi=[1.0],theta=[1.0],sigma2=1.0
    pollaczek:a=1.0
    hat_pollaczek:a=2.0 / expzero0:a=1.0 / expzeropi:a=1.0
    arc:base=const(1),arcs=[(1.5708,0.7854)]
    product:f=pollaczek:a=1;g=abs_trig_pow(h=const(1),t=sin2,alpha=2)

Factor forms: ratio_trig(h=...,t1=...,t2=...), abs_trig_pow(h=...,t=...,
alpha=...), neg_trig_pow(h=...,t=...,alpha=...), abs_alg_pow(h=...,
q=[...],alpha=...).  Trig polynomials: sin2, sin2(lambda0=x),
sin2k(k=...,lambda0=...), omc(scale), const(c), coeffs([(re,im),...]).
Bounded h: const(c) or expsin([b1,...]).
"""
from __future__ import annotations

import re

from .arcs import ArcSet
from .models import (AbsAlgebraicPower, AbsTrigPower, ArcRestrictedDensity,
                     ArfimaDensity, ArmaDensity, ConstBound, ConstDensity,
                     ExpOddSin, ExpZeroOriginDensity, ExpZeroPiDensity,
                     Factor, HatPollaczekDensity, Ma1Density,
                     NegTrigPower, PollaczekDensity, ProductDensity,
                     RatioOfTrigPolys, SpectralDensity)
from .trig import TrigPolynomial


class SpecParseError(ValueError):
    pass


def _split_top(s: str, sep: str):
    """Split on sep at bracket depth zero."""
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _kv(parts):
    out = {}
    for p in parts:
        if not p:
            continue
        if "=" not in p:
            raise SpecParseError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        v = v.strip()
        if v.startswith("{") and v.endswith("}"):
            v = v[1:-1]
        out[k.strip()] = v
    return out


def _float(s: str, what: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise SpecParseError(f"bad number for {what}: {s!r}")


def _float_list(s: str, what: str):
    s = s.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise SpecParseError(f"{what} must be a [..] list, got {s!r}")
    inner = s[1:-1].strip()
    if not inner:
        return []
    return [_float(x, what) for x in _split_top(inner, ",")]


def parse_arcs(s: str) -> ArcSet:
    """[(center,half_length),...] -> ArcSet; 'full' is accepted."""
    s = s.strip()
    if s in ("full", "full-circle"):
        return ArcSet.full()
    if not (s.startswith("[") and s.endswith("]")):
        raise SpecParseError(f"arcs must look like [(c,h),...], got {s!r}")
    inner = s[1:-1].strip()
    pairs = re.findall(r"\(([^()]*)\)", inner)
    if not pairs:
        raise SpecParseError(f"no arcs found in {s!r}")
    arcs = []
    for p in pairs:
        nums = [x.strip() for x in p.split(",")]
        if len(nums) != 2:
            raise SpecParseError(f"arc needs (center,half_length), got ({p})")
        arcs.append((_float(nums[0], "arc center"), _float(nums[1], "arc half-length")))
    return ArcSet.from_arcs(arcs)


def _parse_trig(s: str) -> TrigPolynomial:
    s = s.strip()
    if s == "sin2":
        return TrigPolynomial.sin_power(1, 0.0)
    m = re.fullmatch(r"sin2\(lambda0=([^)]*)\)", s)
    if m:
        return TrigPolynomial.sin_power(1, _float(m.group(1), "lambda0"))
    m = re.fullmatch(r"sin2k\(k=([^,]*),lambda0=([^)]*)\)", s)
    if m:
        return TrigPolynomial.sin_power(int(float(m.group(1))), _float(m.group(2), "lambda0"))
    m = re.fullmatch(r"omc\(([^)]*)\)", s)
    if m:
        return TrigPolynomial.one_minus_cos(_float(m.group(1), "scale"))
    m = re.fullmatch(r"const\(([^)]*)\)", s)
    if m:
        return TrigPolynomial.constant(_float(m.group(1), "constant"))
    m = re.fullmatch(r"coeffs\(\[(.*)\]\)", s)
    if m:
        items = _split_top(m.group(1), ",")
        coeffs = []
        for it in items:
            it = it.strip()
            if it.startswith("("):
                re_im = it.strip("()").split(",")
                coeffs.append(complex(float(re_im[0]), float(re_im[1])))
            else:
                coeffs.append(complex(float(it), 0.0))
        return TrigPolynomial.from_coeffs(coeffs, label=s)
    raise SpecParseError(f"unknown trig polynomial {s!r}")


def _parse_h(s: str):
    s = s.strip()
    m = re.fullmatch(r"const\(([^)]*)\)", s)
    if m:
        return ConstBound(_float(m.group(1), "h constant"))
    m = re.fullmatch(r"expsin\(\[(.*)\]\)", s)
    if m:
        return ExpOddSin([_float(x, "expsin coeff") for x in m.group(1).split(",") if x.strip()])
    raise SpecParseError(f"unknown bounded function {s!r}")


def parse_factor(s: str) -> Factor:
    s = s.strip()
    m = re.fullmatch(r"(\w+)\((.*)\)", s)
    if not m:
        raise SpecParseError(f"factor must look like form(...), got {s!r}")
    form, body = m.group(1), m.group(2)
    kv = _kv(_split_top(body, ","))
    if form == "ratio_trig":
        return RatioOfTrigPolys(_parse_h(kv.get("h", "const(1.0)")),
                                _parse_trig(kv["t1"]), _parse_trig(kv["t2"]))
    if form == "abs_trig_pow":
        return AbsTrigPower(_parse_h(kv.get("h", "const(1.0)")),
                            _parse_trig(kv["t"]), _float(kv["alpha"], "alpha"))
    if form == "neg_trig_pow":
        return NegTrigPower(_parse_h(kv.get("h", "const(1.0)")),
                            _parse_trig(kv["t"]), _float(kv["alpha"], "alpha"))
    if form == "abs_alg_pow":
        return AbsAlgebraicPower(_parse_h(kv.get("h", "const(1.0)")),
                                 _float_list(kv["q"], "q"), _float(kv["alpha"], "alpha"))
    raise SpecParseError(f"unknown factor form {form!r}")


def parse_density(s: str) -> SpectralDensity:
    s = s.strip()
    if not s:
        raise SpecParseError("empty density spec")
    m = re.fullmatch(r"const\(([^)]*)\)", s)
    if m:
        return ConstDensity(_float(m.group(1), "constant"))
    if ":" not in s:
        raise SpecParseError(f"unknown density spec {s!r}")
    kind, body = s.split(":", 1)
    kind = kind.strip()
    if kind == "ma1":
        kv = _kv(_split_top(body, ","))
        return Ma1Density(_float(kv["b"], "b"), _float(kv.get("sigma2", "1"), "sigma2"))
    if kind == "arma":
        kv = _kv(_split_top(body, ","))
        return ArmaDensity(psi=_float_list(kv.get("psi", "[1.0]"), "psi"),
                           theta=_float_list(kv.get("theta", "[1.0]"), "theta"),
                           sigma2=_float(kv.get("sigma2", "1"), "sigma2"))
    if kind == "arfima":
        kv = _kv(_split_top(body, ","))
        inner = parse_density(kv["inner"]) if "inner" in kv else None
        return ArfimaDensity(_float(kv["d"], "d"), inner=inner)
    if kind == "pollaczek":
        kv = _kv(_split_top(body, ","))
        return PollaczekDensity(_float(kv["a"], "a"))
    if kind == "hat_pollaczek":
        kv = _kv(_split_top(body, ","))
        return HatPollaczekDensity(_float(kv["a"], "a"))
    if kind == "expzero0":
        kv = _kv(_split_top(body, ","))
        return ExpZeroOriginDensity(_float(kv["a"], "a"))
    if kind == "expzeropi":
        kv = _kv(_split_top(body, ","))
        return ExpZeroPiDensity(_float(kv["a"], "a"))
    if kind == "arc":
        kv = _kv(_split_top(body, ","))
        if "base" not in kv or "arcs" not in kv:
            raise SpecParseError("arc spec needs base=... and arcs=[...]")
        return ArcRestrictedDensity(parse_density(kv["base"]), parse_arcs(kv["arcs"]))
    if kind == "product":
        parts = _kv(_split_top(body, ";"))
        if "f" not in parts or "g" not in parts:
            raise SpecParseError("product spec needs f=...;g=...")
        return ProductDensity(parse_density(parts["f"]), parse_factor(parts["g"]))
    if kind == "tabulated":
        raise SpecParseError("tabulated densities carry user evaluators and "
                             "cannot be built from a spec string")
    raise SpecParseError(f"unknown density kind {kind!r}")


def print_density(f: SpectralDensity) -> str:
    return f.spec_string()
