"""Spectral density models and multiplicative factors.

The package works with a closed family of density kinds so that the
structural facts the rate analysis depends on (support arcs, zero
locations and contact orders, pole orders, essential bounds, evenness)
are attached at construction time and can be trusted downstream.  A
user-supplied evaluator is admitted only through ``TabulatedDensity``
with caller-declared bounds.

Evaluation conventions:
  * densities are nonnegative on [-pi, pi] and integrable;
  * ``log_eval`` returns log f(lam) computed in a numerically stable way
    (it is the primitive used by the geometric-mean quadrature, where
    f itself may underflow);
  * at a declared zero the evaluator returns exact 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .arcs import ArcSet, norm_angle
from .factorization import (log_abs_poly_integral, poly_real_roots_in_range,
                            trig_geometric_mean, unit_circle_zeros)
from .precision import workprec
from .trig import TrigPolynomial


class EvaluationError(ArithmeticError):
    pass


class IntegrabilityError(ValueError):
    pass


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ZeroSpec:
    """A point where the density vanishes.

    ``poly_order`` p means f ~ c|lam-loc|^p (p = 2k for smooth even
    contact); ``exp_rate`` a > 0 marks essential contact of the type
    exp(-a*pi/|lam-loc|), which violates the log-integrability condition
    no matter how small a is.  Both can be present after products.
    """
    location: float
    poly_order: float = 0.0
    exp_rate: float = 0.0


@dataclass(frozen=True)
class PoleSpec:
    """f ~ c|lam-loc|^{-order} with 0 < order < 1 (integrable)."""
    location: float
    order: float


def _canon_location(loc: float) -> float:
    """Normalize to (-pi, pi] with the boundary collapsed onto +pi."""
    x = norm_angle(loc)
    if math.pi - abs(x) < 1e-9:
        return math.pi
    return x


def _merge_points(zeros, poles):
    """Combine zero/pole lists at coincident locations, cancelling
    polynomial orders; exponential descriptors are unioned."""
    events = [(_canon_location(z.location), z.poly_order, z.exp_rate) for z in zeros]
    events += [(_canon_location(q.location), -q.order, 0.0) for q in poles]
    events.sort()
    merged = []  # [location, poly_order, exp_rate]
    for loc, p, e in events:
        if merged and loc - merged[-1][0] < 1e-8:
            merged[-1][1] += p
            merged[-1][2] = max(merged[-1][2], e)
        else:
            merged.append([loc, p, e])
    zs, ps = [], []
    for loc, p, e in merged:
        if e > 0 or p > 0:
            zs.append(ZeroSpec(location=loc, poly_order=max(p, 0.0), exp_rate=e))
        elif p < 0:
            ps.append(PoleSpec(location=loc, order=-p))
    return tuple(zs), tuple(ps)


class SpectralDensity:
    """Base class; subclasses fill in the metadata and _eval/_log_eval."""

    kind = "abstract"
    support = None            # ArcSet or None for the full circle
    zeros: tuple = ()
    poles: tuple = ()
    lower = None              # ess inf of f, when known
    upper = None              # ess sup of f, when known
    even = False

    # -- evaluation -----------------------------------------------------

    def eval(self, lam) -> mpf:
        lam = mpf(lam)
        if abs(lam) > mp.pi + mpf("1e-12"):
            raise EvaluationError(f"lambda={float(lam)} outside [-pi, pi]")
        v = self._eval(lam)
        if not mp.isfinite(v):
            raise EvaluationError(f"{self.kind} evaluation not finite at lambda={float(lam)}")
        return v

    def log_eval(self, lam) -> mpf:
        """log f(lam); returns -inf at an exact zero."""
        lam = mpf(lam)
        v = self._log_eval(lam)
        if mp.isnan(v):
            raise EvaluationError(f"{self.kind} log-evaluation NaN at lambda={float(lam)}")
        return v

    def _eval(self, lam):
        raise NotImplementedError

    def _log_eval(self, lam):
        v = self._eval(lam)
        return mp.log(v) if v > 0 else mpf("-inf")

    # -- metadata -------------------------------------------------------

    def spec_string(self) -> str:
        raise NotImplementedError

    def has_exponential_zero(self) -> bool:
        return any(z.exp_rate > 0 for z in self.zeros)

    def singular_points(self) -> list:
        """Sorted angles where panels must break (zeros, poles, arc ends)."""
        pts = {norm_angle(z.location) for z in self.zeros}
        pts.update(norm_angle(p.location) for p in self.poles)
        if self.support is not None:
            for a, b in self.support.intervals():
                pts.update((a, b))
        return sorted(pts)

    def describe(self) -> dict:
        from .geomean import szego_condition
        return {
            "kind": self.kind,
            "spec": self.spec_string(),
            "support": "full-circle" if self.support is None else str(self.support),
            "zeros": [
                {"location": z.location, "poly_order": z.poly_order, "exp_rate": z.exp_rate}
                for z in self.zeros
            ],
            "poles": [{"location": p.location, "order": p.order} for p in self.poles],
            "ess_inf": self.lower,
            "ess_sup": self.upper,
            "even": self.even,
            "szego": szego_condition(self),
        }

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec_string()}>"

    def __eq__(self, other):
        return isinstance(other, SpectralDensity) and self.spec_string() == other.spec_string()

    def __hash__(self):
        return hash(self.spec_string())


class ConstDensity(SpectralDensity):
    kind = "const"

    def __init__(self, value):
        value = float(value)
        if value <= 0:
            raise ModelError("constant density must be positive")
        self.value = value
        self.lower = value
        self.upper = value
        self.even = True

    def _eval(self, lam):
        return mpf(self.value)

    def _log_eval(self, lam):
        return mp.log(mpf(self.value))

    def spec_string(self):
        return f"const({self.value!r})"


class ArmaDensity(SpectralDensity):
    """sigma2/(2 pi) |theta(e^{-i lam})|^2 / |psi(e^{-i lam})|^2.

    Coefficient lists are given constant-term first; both polynomials must
    be free of unit-circle roots, which keeps the density bounded away
    from 0 and infinity (short memory).
    """

    kind = "arma"

    def __init__(self, psi=(1.0,), theta=(1.0,), sigma2=1.0):
        self.psi = tuple(float(c) for c in (psi or (1.0,)))
        self.theta = tuple(float(c) for c in (theta or (1.0,)))
        self.sigma2 = float(sigma2)
        if self.sigma2 <= 0:
            raise ModelError("sigma2 must be positive")
        if self.psi[0] == 0 or self.theta[0] == 0:
            raise ModelError("constant terms of psi and theta must be nonzero")
        for name, coeffs in (("psi", self.psi), ("theta", self.theta)):
            for root in _poly_roots(coeffs):
                if abs(abs(root) - 1.0) < 1e-8:
                    raise ModelError(f"{name} has a root on the unit circle; use ma1 for the boundary case")
        self.even = True
        self.lower, self.upper = self._grid_bounds()

    def _ratio_sq(self, lam):
        z = mp.exp(mpc(0, -1) * lam)
        num = _poly_eval(self.theta, z)
        den = _poly_eval(self.psi, z)
        return (abs(num) / abs(den)) ** 2

    def _eval(self, lam):
        return mpf(self.sigma2) / (2 * mp.pi) * self._ratio_sq(lam)

    def _grid_bounds(self, n=2048):
        with workprec(64):
            vals = [float(self._eval(-math.pi + 2 * math.pi * j / n)) for j in range(n + 1)]
        return min(vals), max(vals)

    def geometric_mean_closed(self):
        """G(f) = sigma2/(2 pi) * |theta_lead|^2 prod_{|w|>1}|w|^2 / (same for psi)."""
        with workprec(212):
            out = mpf(self.sigma2) / (2 * mp.pi)
            for coeffs, power in ((self.theta, 2), (self.psi, -2)):
                c = [mpf(x) for x in coeffs]
                while len(c) > 1 and c[-1] == 0:
                    c.pop()
                g = abs(c[-1])
                for w in _poly_roots(tuple(float(x) for x in c)):
                    if abs(w) > 1:
                        g *= abs(w)
                out *= g ** power
            return out

    def spec_string(self):
        return (f"arma:psi=[{','.join(repr(c) for c in self.psi)}],"
                f"theta=[{','.join(repr(c) for c in self.theta)}],sigma2={self.sigma2!r}")


class Ma1Density(SpectralDensity):
    """sigma2/(2 pi) |1 - b e^{i lam}|^2 with 0 <= b <= 1.

    Unlike ``ArmaDensity`` the unit-root case b = 1 is allowed; it puts a
    second-order zero at the origin.
    """

    kind = "ma1"

    def __init__(self, b, sigma2=1.0):
        self.b = float(b)
        self.sigma2 = float(sigma2)
        if not (0.0 <= self.b <= 1.0):
            raise ModelError("need 0 <= b <= 1")
        if self.sigma2 <= 0:
            raise ModelError("sigma2 must be positive")
        self.even = True
        self.lower = self.sigma2 / (2 * math.pi) * (1 - self.b) ** 2
        self.upper = self.sigma2 / (2 * math.pi) * (1 + self.b) ** 2
        if self.b == 1.0:
            self.zeros = (ZeroSpec(location=0.0, poly_order=2.0),)

    def _eval(self, lam):
        b = mpf(self.b)
        # |1 - b e^{i lam}|^2 = 1 + b^2 - 2 b cos(lam)
        return mpf(self.sigma2) / (2 * mp.pi) * (1 + b * b - 2 * b * mp.cos(lam))

    def geometric_mean_closed(self):
        # Fejer-Riesz factor of |1 - b z|^2 is 1 - b z, so G = sigma2/(2 pi)
        with workprec(212):
            return mpf(self.sigma2) / (2 * mp.pi)

    def spec_string(self):
        return f"ma1:b={self.b!r},sigma2={self.sigma2!r}"


class ArfimaDensity(SpectralDensity):
    """|1 - e^{-i lam}|^{-2d} * f_inner(lam) with d < 1/2, d != 0.

    Positive d puts an integrable pole of order 2d at the origin (long
    memory); negative d puts a zero of order 2|d| there (anti-persistent).
    """

    kind = "arfima"

    def __init__(self, d, inner=None):
        self.d = float(d)
        if not (self.d < 0.5) or self.d == 0.0:
            raise ModelError("need d < 1/2 and d != 0")
        self.inner = inner if inner is not None else ArmaDensity(sigma2=1.0)
        if not isinstance(self.inner, (ArmaDensity, ConstDensity, Ma1Density)):
            raise ModelError("inner density must be an ARMA-type model")
        if getattr(self.inner, "zeros", ()):
            raise ModelError("inner density must be bounded away from zero")
        self.even = self.inner.even
        if self.d > 0:
            self.poles = (PoleSpec(location=0.0, order=2 * self.d),)
            self.lower = self.inner.lower
        else:
            self.zeros = (ZeroSpec(location=0.0, poly_order=-2 * self.d),)
            self.lower = 0.0
            if self.inner.upper is not None:
                self.upper = self.inner.upper * float((2.0) ** (-2 * self.d))

    def _eval(self, lam):
        s = 2 * abs(mp.sin(lam / 2))
        if s == 0:
            return mpf("+inf") if self.d > 0 else mpf(0)
        return s ** (-2 * mpf(self.d)) * self.inner._eval(lam)

    def _log_eval(self, lam):
        s = 2 * abs(mp.sin(lam / 2))
        if s == 0:
            return mpf("+inf") if self.d > 0 else mpf("-inf")
        return -2 * mpf(self.d) * mp.log(s) + self.inner._log_eval(lam)

    def geometric_mean_closed(self):
        # G(|1-e^{-i lam}|^2) = 1, so the fractional factor drops out
        return self.inner.geometric_mean_closed()

    def spec_string(self):
        return f"arfima:d={self.d!r},inner={_wrap_spec(self.inner.spec_string())}"


def _phi_cot(lam, a):
    return (mpf(a) / 2) * mpmath.cot(lam)


class PollaczekDensity(SpectralDensity):
    """Even density 2 e^{2 lam phi}/(e^{2 pi phi} + 1), phi = (a/2) cot lam.

    Vanishes to exponential order at 0 and +-pi and peaks at exactly 1 at
    +-pi/2; the log-integral diverges, so the process is deterministic.
    Evaluation uses branch-selected exponentials so that no intermediate
    overflows regardless of precision.
    """

    kind = "pollaczek"

    def __init__(self, a):
        self.a = float(a)
        if self.a <= 0:
            raise ModelError("need a > 0")
        self.even = True
        self.lower = 0.0
        self.upper = 1.0
        self.zeros = (ZeroSpec(location=0.0, exp_rate=self.a),
                      ZeroSpec(location=math.pi, exp_rate=self.a))

    def _log_eval(self, lam):
        lam = abs(lam)
        if lam == 0 or lam >= mp.pi:
            return mpf("-inf")
        phi = _phi_cot(lam, self.a)
        x = 2 * mp.pi * phi
        # log(e^x + 1) without overflow; the correction term is skipped
        # entirely once it falls below the working resolution
        cut = (mp.prec + 48) * 0.6932
        if x > cut:
            softplus = x
        elif x < -cut:
            softplus = mpf(0)
        elif x > 0:
            softplus = x + mp.log1p(mp.exp(-x))
        else:
            softplus = mp.log1p(mp.exp(x))
        return mp.log(2) + 2 * lam * phi - softplus

    def _eval(self, lam):
        lam = abs(lam)
        if lam == 0 or lam >= mp.pi:
            return mpf(0)
        lv = self._log_eval(lam)
        # clamp to exact zero once the value cannot influence results at
        # the working precision
        if lv < -(mp.prec + 96) * 0.6932:
            return mpf(0)
        return mp.exp(lv)

    def spec_string(self):
        return f"pollaczek:a={self.a!r}"


class HatPollaczekDensity(SpectralDensity):
    """e^{4a} exp(-a pi^2/(|lam|(pi-|lam|))): same zero orders as the
    Pollaczek density at 0 and +-pi, peak value 1 at +-pi/2."""

    kind = "hat_pollaczek"

    def __init__(self, a):
        self.a = float(a)
        if self.a <= 0:
            raise ModelError("need a > 0")
        self.even = True
        self.lower = 0.0
        self.upper = 1.0
        self.zeros = (ZeroSpec(location=0.0, exp_rate=self.a),
                      ZeroSpec(location=math.pi, exp_rate=self.a))

    def _log_eval(self, lam):
        lam = abs(lam)
        if lam == 0 or lam >= mp.pi:
            return mpf("-inf")
        a = mpf(self.a)
        return 4 * a - a * mp.pi ** 2 / (lam * (mp.pi - lam))

    def _eval(self, lam):
        lv = self._log_eval(lam)
        if lv == mpf("-inf") or lv < -(mp.prec + 96) * mp.log(2):
            return mpf(0)
        return mp.exp(lv)

    def spec_string(self):
        return f"hat_pollaczek:a={self.a!r}"


class ExpZeroOriginDensity(SpectralDensity):
    """exp(-a pi / |lam|): a single essential zero at the origin."""

    kind = "expzero0"

    def __init__(self, a):
        self.a = float(a)
        if self.a <= 0:
            raise ModelError("need a > 0")
        self.even = True
        self.lower = 0.0
        self.upper = math.exp(-self.a)
        self.zeros = (ZeroSpec(location=0.0, exp_rate=self.a),)

    def _log_eval(self, lam):
        lam = abs(lam)
        if lam == 0:
            return mpf("-inf")
        return -mpf(self.a) * mp.pi / lam

    def _eval(self, lam):
        lv = self._log_eval(lam)
        if lv == mpf("-inf") or lv < -(mp.prec + 96) * mp.log(2):
            return mpf(0)
        return mp.exp(lv)

    def spec_string(self):
        return f"expzero0:a={self.a!r}"


class ExpZeroPiDensity(SpectralDensity):
    """exp(-a pi / (pi - |lam|)): essential zeros at +-pi."""

    kind = "expzeropi"

    def __init__(self, a):
        self.a = float(a)
        if self.a <= 0:
            raise ModelError("need a > 0")
        self.even = True
        self.lower = 0.0
        self.upper = math.exp(-self.a)
        self.zeros = (ZeroSpec(location=math.pi, exp_rate=self.a),)

    def _log_eval(self, lam):
        gap = mp.pi - abs(lam)
        if gap <= 0:
            return mpf("-inf")
        return -mpf(self.a) * mp.pi / gap

    def _eval(self, lam):
        lv = self._log_eval(lam)
        if lv == mpf("-inf") or lv < -(mp.prec + 96) * mp.log(2):
            return mpf(0)
        return mp.exp(lv)

    def spec_string(self):
        return f"expzeropi:a={self.a!r}"


class ArcRestrictedDensity(SpectralDensity):
    """base density on the given arcs, zero elsewhere."""

    kind = "arc"

    def __init__(self, base: SpectralDensity, arcs: ArcSet):
        if not isinstance(arcs, ArcSet):
            raise ModelError("support must be an ArcSet")
        self.base = base
        self.arcset = arcs
        # base must be positive a.e. on the support; spot check midpoints
        for a, b in arcs.intervals():
            mid = (a + b) / 2
            if base.eval(mpf(mid)) <= 0 and not base.has_exponential_zero():
                raise ModelError("base density vanishes inside the requested support")
        self.support = None if arcs.is_full_circle else arcs
        self.zeros = base.zeros
        self.poles = base.poles
        self.lower = 0.0 if self.support is not None else base.lower
        self.upper = base.upper
        self.even = base.even and arcs.is_conjugation_symmetric()

    def _eval(self, lam):
        if self.support is not None and not self.arcset.contains(float(lam)):
            return mpf(0)
        return self.base._eval(lam)

    def _log_eval(self, lam):
        if self.support is not None and not self.arcset.contains(float(lam)):
            return mpf("-inf")
        return self.base._log_eval(lam)

    def spec_string(self):
        return f"arc:base={_wrap_spec(self.base.spec_string())},arcs={self.arcset}"


class TabulatedDensity(SpectralDensity):
    """User evaluator with caller-declared bounds 0 < m <= f <= M."""

    kind = "tabulated"

    def __init__(self, fn, lower, upper, even=False, label="tabulated"):
        lower, upper = float(lower), float(upper)
        if not (0 < lower <= upper):
            raise ModelError("need declared bounds 0 < m <= M")
        self.fn = fn
        self.lower, self.upper = lower, upper
        self.even = bool(even)
        self.label = label
        for j in range(64):
            lam = -math.pi + 2 * math.pi * (j + 0.5) / 64
            v = float(fn(mpf(lam)))
            if not (lower * 0.999 <= v <= upper * 1.001):
                raise ModelError(f"evaluator leaves declared bounds at lambda={lam:.4f}")

    def _eval(self, lam):
        return mpf(self.fn(lam))

    def spec_string(self):
        return f"tabulated:{self.label}"


# ---------------------------------------------------------------------------
# multiplicative factors
# ---------------------------------------------------------------------------


class BoundedFunction:
    """Member of the two-sided bounded class: 0 < m <= h <= M."""

    lower = None
    upper = None
    even = False

    def eval(self, lam) -> mpf:
        raise NotImplementedError

    def log_eval(self, lam) -> mpf:
        return mp.log(self.eval(lam))

    def geometric_mean_closed(self):
        return None

    def spec_string(self) -> str:
        raise NotImplementedError


class ConstBound(BoundedFunction):
    def __init__(self, c):
        c = float(c)
        if c <= 0:
            raise ModelError("constant must be positive")
        self.c = c
        self.lower = self.upper = c
        self.even = True

    def eval(self, lam):
        return mpf(self.c)

    def log_eval(self, lam):
        return mp.log(mpf(self.c))

    def geometric_mean_closed(self):
        return mpf(self.c)

    def spec_string(self):
        return f"const({self.c!r})"


class ExpOddSin(BoundedFunction):
    """exp(sum_k b_k sin(k lam)): positive, bounded, odd exponent, G = 1."""

    def __init__(self, coeffs):
        self.coeffs = tuple(float(b) for b in coeffs)
        s = sum(abs(b) for b in self.coeffs)
        self.lower = math.exp(-s)
        self.upper = math.exp(s)
        self.even = all(b == 0 for b in self.coeffs)

    def _exponent(self, lam):
        return mp.fsum(mpf(b) * mp.sin((k + 1) * lam) for k, b in enumerate(self.coeffs))

    def eval(self, lam):
        return mp.exp(self._exponent(lam))

    def log_eval(self, lam):
        return self._exponent(lam)

    def geometric_mean_closed(self):
        return mpf(1)

    def spec_string(self):
        return f"expsin([{','.join(repr(b) for b in self.coeffs)}])"


class CallableBound(BoundedFunction):
    def __init__(self, fn, lower, upper, even=False, label="callable"):
        lower, upper = float(lower), float(upper)
        if not (0 < lower <= upper):
            raise ModelError("need 0 < m <= M")
        self.fn = fn
        self.lower, self.upper = lower, upper
        self.even = bool(even)
        self.label = label
        for j in range(64):
            lam = -math.pi + 2 * math.pi * (j + 0.5) / 64
            v = float(fn(mpf(lam)))
            if not (lower * 0.999 <= v <= upper * 1.001):
                raise ModelError(f"bounded evaluator leaves [m, M] at lambda={lam:.4f}")

    def eval(self, lam):
        return mpf(self.fn(lam))

    def spec_string(self):
        return f"callable({self.label})"


class Factor:
    """Multiplicative perturbation g applied to a density."""

    form = "abstract"
    zeros: tuple = ()
    poles: tuple = ()
    even = False

    def __init__(self, h: BoundedFunction):
        self.h = h

    def eval(self, lam) -> mpf:
        raise NotImplementedError

    def log_eval(self, lam) -> mpf:
        v = self.eval(lam)
        return mp.log(v) if v > 0 else mpf("-inf")

    def geometric_mean_closed(self):
        """Exact G(g) when every ingredient has a closed form, else None."""
        return None

    def spec_string(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec_string()}>"


class RatioOfTrigPolys(Factor):
    """g = h * t1/t2 with t1, t2 nonnegative trig polynomials."""

    form = "ratio_trig"

    def __init__(self, h, t1: TrigPolynomial, t2: TrigPolynomial, precision_bits=212):
        super().__init__(h)
        self.t1, self.t2 = t1, t2
        self._g1 = trig_geometric_mean(t1, precision_bits)  # also certifies nonnegativity
        self._g2 = trig_geometric_mean(t2, precision_bits)
        z1 = unit_circle_zeros(t1, precision_bits)
        z2 = unit_circle_zeros(t2, precision_bits)
        self.zeros = tuple(ZeroSpec(location=l, poly_order=o) for l, o in z1)
        self.poles = tuple(PoleSpec(location=l, order=o) for l, o in z2)
        self.even = h.even and _trig_even(t1) and _trig_even(t2)

    def eval(self, lam):
        den = self.t2.eval(lam)
        num = self.h.eval(lam) * self.t1.eval(lam)
        if den <= 0:
            return mpf("+inf") if num > 0 else mpf(0)
        return num / den

    def log_eval(self, lam):
        num = self.t1.eval(lam)
        den = self.t2.eval(lam)
        if num <= 0:
            return mpf("-inf")
        if den <= 0:
            return mpf("+inf")
        return self.h.log_eval(lam) + mp.log(num) - mp.log(den)

    def geometric_mean_closed(self):
        gh = self.h.geometric_mean_closed()
        if gh is None:
            return None
        with workprec(max(mp.prec, 212)):
            return gh * self._g1 / self._g2

    def spec_string(self):
        return (f"ratio_trig(h={self.h.spec_string()},t1={self.t1.spec_string()},"
                f"t2={self.t2.spec_string()})")


class AbsTrigPower(Factor):
    """g = h * |t|^alpha for an arbitrary real trig polynomial t, alpha > 0."""

    form = "abs_trig_pow"

    def __init__(self, h, t: TrigPolynomial, alpha, precision_bits=212):
        super().__init__(h)
        self.t = t
        self.alpha = float(alpha)
        if self.alpha <= 0:
            raise ModelError("need alpha > 0")
        if t.nonneg:
            # |t|^alpha = t^alpha; factor t directly (lower multiplicities)
            self._g_tsq = trig_geometric_mean(t, precision_bits) ** 2
            zz = [(l, 2 * o) for l, o in unit_circle_zeros(t, precision_bits)]
        else:
            tsq = t.times(t)
            self._g_tsq = trig_geometric_mean(tsq, precision_bits)
            zz = unit_circle_zeros(tsq, precision_bits)
        # t^2 vanishes to order 2m where |t|^alpha vanishes to order alpha*m
        self.zeros = tuple(ZeroSpec(location=l, poly_order=self.alpha * o / 2) for l, o in zz)
        self.even = h.even and _trig_even(t)

    def eval(self, lam):
        return self.h.eval(lam) * abs(self.t.eval(lam)) ** mpf(self.alpha)

    def log_eval(self, lam):
        v = abs(self.t.eval(lam))
        if v == 0:
            return mpf("-inf")
        return self.h.log_eval(lam) + mpf(self.alpha) * mp.log(v)

    def geometric_mean_closed(self):
        gh = self.h.geometric_mean_closed()
        if gh is None:
            return None
        with workprec(max(mp.prec, 212)):
            return gh * self._g_tsq ** (mpf(self.alpha) / 2)

    def spec_string(self):
        return (f"abs_trig_pow(h={self.h.spec_string()},t={self.t.spec_string()},"
                f"alpha={self.alpha!r})")


class NegTrigPower(Factor):
    """g = h * t^{-alpha} for nonnegative t, alpha > 0."""

    form = "neg_trig_pow"

    def __init__(self, h, t: TrigPolynomial, alpha, precision_bits=212):
        super().__init__(h)
        self.t = t
        self.alpha = float(alpha)
        if self.alpha <= 0:
            raise ModelError("need alpha > 0")
        self._g_t = trig_geometric_mean(t, precision_bits)
        zz = unit_circle_zeros(t, precision_bits)
        self.poles = tuple(PoleSpec(location=l, order=self.alpha * o) for l, o in zz)
        self.even = h.even and _trig_even(t)

    def eval(self, lam):
        den = self.t.eval(lam)
        if den <= 0:
            return mpf("+inf")
        return self.h.eval(lam) * den ** (-mpf(self.alpha))

    def log_eval(self, lam):
        den = self.t.eval(lam)
        if den <= 0:
            return mpf("+inf")
        return self.h.log_eval(lam) - mpf(self.alpha) * mp.log(den)

    def geometric_mean_closed(self):
        gh = self.h.geometric_mean_closed()
        if gh is None:
            return None
        with workprec(max(mp.prec, 212)):
            return gh * self._g_t ** (-mpf(self.alpha))

    def integrability_exponent(self) -> float:
        """Exponent k+1 used in the documented L1 side condition for
        non-integer alpha: f * t^{-(k+1)} must be integrable."""
        if self.alpha == int(self.alpha):
            return self.alpha
        return math.floor(self.alpha) + 1.0

    def spec_string(self):
        return (f"neg_trig_pow(h={self.h.spec_string()},t={self.t.spec_string()},"
                f"alpha={self.alpha!r})")


class AbsAlgebraicPower(Factor):
    """g = h * |q(lam)|^alpha for a real algebraic polynomial q."""

    form = "abs_alg_pow"

    def __init__(self, h, qcoeffs, alpha, precision_bits=212):
        super().__init__(h)
        self.qcoeffs = tuple(float(c) for c in qcoeffs)
        self.alpha = float(alpha)
        if all(c == 0 for c in self.qcoeffs):
            raise ModelError("q must not vanish identically")
        self._log_q_integral = log_abs_poly_integral(self.qcoeffs, precision_bits)
        roots = poly_real_roots_in_range(self.qcoeffs, precision_bits=precision_bits)
        zs, ps = [], []
        for loc, m in roots:
            order = abs(self.alpha) * m
            if self.alpha > 0:
                zs.append(ZeroSpec(location=loc, poly_order=order))
            else:
                ps.append(PoleSpec(location=loc, order=order))
        self.zeros = tuple(zs)
        self.poles = tuple(ps)
        self.even = h.even and all(c == 0 for c in self.qcoeffs[1::2])

    def _q(self, lam):
        acc = mpf(0)
        for c in reversed(self.qcoeffs):
            acc = acc * lam + mpf(c)
        return acc

    def eval(self, lam):
        v = abs(self._q(mpf(lam)))
        if v == 0:
            return mpf(0) if self.alpha > 0 else mpf("+inf")
        return self.h.eval(lam) * v ** mpf(self.alpha)

    def log_eval(self, lam):
        v = abs(self._q(mpf(lam)))
        if v == 0:
            return mpf("-inf") if self.alpha > 0 else mpf("+inf")
        return self.h.log_eval(lam) + mpf(self.alpha) * mp.log(v)

    def geometric_mean_closed(self):
        gh = self.h.geometric_mean_closed()
        if gh is None:
            return None
        with workprec(max(mp.prec, 212)):
            return gh * mp.exp(mpf(self.alpha) * self._log_q_integral / (2 * mp.pi))

    def spec_string(self):
        return (f"abs_alg_pow(h={self.h.spec_string()},"
                f"q=[{','.join(repr(c) for c in self.qcoeffs)}],alpha={self.alpha!r})")


class ProductDensity(SpectralDensity):
    """f * g with composed singularity metadata.

    Construction verifies integrability, combining the declared orders
    with a numerical check of the actual product; a non-integrable pole
    is rejected with its location named.
    """

    kind = "product"

    def __init__(self, base: SpectralDensity, factor: Factor, precision_bits=212):
        self.base = base
        self.factor = factor
        self.zeros, self.poles = _merge_points(
            tuple(base.zeros) + tuple(factor.zeros),
            tuple(base.poles) + tuple(factor.poles))
        self.support = base.support
        self.even = base.even and factor.even
        self.lower = None
        self.upper = None
        self._check_integrable(precision_bits)

    def _check_integrable(self, precision_bits):
        # metadata route first: a pole of total order >= 1 cannot be saved
        for p in self.poles:
            base_exp_zero = any(
                z.exp_rate > 0 and abs(norm_angle(z.location - p.location)) < 1e-9
                for z in self.base.zeros)
            if p.order >= 1.0 and not base_exp_zero:
                raise IntegrabilityError(
                    f"product is not integrable: pole of order {p.order:g} at "
                    f"lambda={p.location:.6f}")
        # documented side condition for fractional negative powers
        if isinstance(self.factor, NegTrigPower):
            k1 = self.factor.integrability_exponent()
            for p in self.factor.poles:
                base_order = 0.0
                for z in self.base.zeros:
                    if abs(norm_angle(z.location - p.location)) < 1e-9:
                        if z.exp_rate > 0:
                            base_order = math.inf
                        else:
                            base_order = z.poly_order
                if base_order != math.inf and base_order - (p.order / self.factor.alpha) * k1 <= -1.0:
                    raise IntegrabilityError(
                        f"side condition fails: f*t^-(floor(alpha)+1) has a non-integrable "
                        f"pole at lambda={p.location:.6f}")
        # numerical confirmation
        from .quadrature import adaptive_integral, QuadratureError
        try:
            with workprec(96):
                val, err, _ = adaptive_integral(
                    lambda x: self._eval(x), self._integration_intervals(),
                    prec=96, target=mpf("1e-6"), singular=self.singular_points(),
                    max_panels=4000)
        except QuadratureError as exc:
            raise IntegrabilityError(f"product integrability check failed to converge: {exc}")
        if not mp.isfinite(val):
            raise IntegrabilityError("product integral is not finite")

    def _integration_intervals(self):
        if self.support is None:
            return [(-math.pi, math.pi)]
        return self.support.intervals()

    def _eval(self, lam):
        return self.base._eval(lam) * self.factor.eval(lam)

    def _log_eval(self, lam):
        lb = self.base._log_eval(lam)
        lg = self.factor.log_eval(lam)
        if lb == mpf("-inf") or lg == mpf("-inf"):
            return mpf("-inf")
        return lb + lg

    def factor_geometric_mean(self):
        return self.factor.geometric_mean_closed()

    def spec_string(self):
        return f"product:f={_wrap_spec(self.base.spec_string(), seps=';')};g={self.factor.spec_string()}"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def make_arc_restricted(base: SpectralDensity, support: ArcSet) -> SpectralDensity:
    """Restrict ``base`` to a union of arcs (zero outside)."""
    return ArcRestrictedDensity(base, support)


def multiply_factor(f: SpectralDensity, g: Factor, precision_bits: int = 212) -> SpectralDensity:
    """Product density f*g; raises IntegrabilityError when f*g is not L1."""
    return ProductDensity(f, g, precision_bits=precision_bits)


def describe(f: SpectralDensity) -> dict:
    return f.describe()


def _wrap_spec(spec: str, seps: str = ",") -> str:
    """Brace-wrap a nested spec when it would confuse the outer splitter."""
    depth = 0
    for ch in spec:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch in seps and depth == 0:
            return "{" + spec + "}"
    return spec


def _trig_even(t: TrigPolynomial) -> bool:
    return all(abs(mpc(c).imag) < 1e-15 * (1 + abs(mpc(c))) for c in t.coeffs)


def _poly_eval(coeffs, z):
    acc = mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _poly_roots(coeffs):
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if len(c) == 1:
        return []
    return mpmath.polyroots([mpf(x) for x in reversed(c)], maxsteps=120, extraprec=80)
