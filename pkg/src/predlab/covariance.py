"""Fourier coefficients of spectral densities at controlled precision.

Covariances follow r(t) = int_{-pi}^{pi} e^{-i t lam} f(lam) d lam.  Closed
forms cover white noise, MA(1), pure arc indicators and ARFIMA(0,d,0);
everything else goes through the oscillation-aware batched quadrature.
Sequences are immutable; repeated pipeline runs inside one process reuse
cached results keyed by (density, N, precision, target).
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .arcs import ArcSet
from .models import (ArcRestrictedDensity, ArfimaDensity, ConstDensity,
                     Ma1Density, SpectralDensity)
from .precision import (GUARD_BITS, default_abs_target, min_abs_target,
                        validate_bits, workprec)
from .quadrature import fourier_batch


class CovarianceError(ValueError):
    pass


@dataclass(frozen=True)
class CovarianceSequence:
    """r(0..N) plus a per-entry absolute error bound.

    ``values`` are mpf for even densities and mpc otherwise; negative lags
    follow from Hermitian symmetry via :meth:`r`.
    """

    values: tuple
    precision_bits: int
    abs_error_bound: mpf
    source: str
    density_spec: str = ""
    is_real: bool = True

    def __post_init__(self):
        r0 = self.values[0].real if not self.is_real else self.values[0]
        if not r0 > 0:
            raise CovarianceError("r(0) must be positive (non-degenerate process)")

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def r(self, t: int):
        t = int(t)
        if abs(t) > self.n_max:
            raise IndexError(f"lag {t} beyond computed range {self.n_max}")
        v = self.values[abs(t)]
        if t < 0 and not self.is_real:
            return mp.conj(v)
        return v

    def r0(self) -> mpf:
        v = self.values[0]
        return v.real if not self.is_real else v

    def scaled(self, c) -> "CovarianceSequence":
        with workprec(self.precision_bits + GUARD_BITS):
            c = mpf(c)
            vals = tuple(c * v for v in self.values)
            err = abs(c) * self.abs_error_bound
        return CovarianceSequence(values=vals, precision_bits=self.precision_bits,
                                  abs_error_bound=err, source=self.source,
                                  density_spec=self.density_spec,
                                  is_real=self.is_real)

    def modulated(self, lambda0) -> "CovarianceSequence":
        """Covariances of the rotated density f(lam - lambda0):
        r'(t) = e^{-i t lambda0} r(t)."""
        with workprec(self.precision_bits + GUARD_BITS):
            lam0 = mpf(lambda0)
            vals = tuple(mp.exp(mpc(0, -1) * t * lam0) * self.values[t]
                         for t in range(len(self.values)))
        return CovarianceSequence(values=vals, precision_bits=self.precision_bits,
                                  abs_error_bound=self.abs_error_bound,
                                  source=self.source + "+modulated",
                                  density_spec="", is_real=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# density={self.density_spec} precision_bits={self.precision_bits} "
                  f"source={self.source}\n")
        buf.write("t,re_r,im_r,abs_error_bound\n")
        dps = max(17, int(self.precision_bits * 0.30103) + 2)
        eb = mp.nstr(self.abs_error_bound, 8)
        for t, v in enumerate(self.values):
            v = mpc(v)
            buf.write(f"{t},{mp.nstr(v.real, dps)},{mp.nstr(v.imag, dps)},{eb}\n")
        return buf.getvalue()


# -- closed forms -----------------------------------------------------------


def covariances_ma1(b, sigma2, N: int, precision_bits: int = 128) -> CovarianceSequence:
    """Exact MA(1) covariances: r(0) = sigma2(1+b^2), r(1) = -sigma2*b."""
    b, sigma2 = float(b), float(sigma2)
    if not (0.0 <= b <= 1.0) or sigma2 <= 0:
        raise CovarianceError("need 0 <= b <= 1 and sigma2 > 0")
    validate_bits(precision_bits)
    with workprec(precision_bits + GUARD_BITS):
        bb, ss = mpf(b), mpf(sigma2)
        vals = [ss * (1 + bb * bb), -ss * bb] + [mpf(0)] * max(0, N - 1)
    return CovarianceSequence(values=tuple(vals[: N + 1]), precision_bits=precision_bits,
                              abs_error_bound=mpf(0), source="closed-form",
                              density_spec=Ma1Density(b, sigma2).spec_string())


def covariances_arcset(arcs: ArcSet, N: int, precision_bits: int = 128) -> CovarianceSequence:
    """Indicator density on a union of arcs, integrated arc by arc."""
    validate_bits(precision_bits)
    if arcs.is_full_circle:
        with workprec(precision_bits + GUARD_BITS):
            vals = (2 * mp.pi,) + (mpf(0),) * int(N)
        return CovarianceSequence(values=vals, precision_bits=precision_bits,
                                  abs_error_bound=mpf(0), source="closed-form",
                                  density_spec="arc:base=const(1.0),arcs=full")
    with workprec(precision_bits + GUARD_BITS):
        intervals = [(mpf(a), mpf(b)) for a, b in arcs.intervals()]
        sym = arcs.is_conjugation_symmetric()
        vals = []
        for t in range(N + 1):
            if t == 0:
                acc = mp.fsum(b - a for a, b in intervals)
                vals.append(mpc(acc))
                continue
            acc = mpc(0)
            for a, b in intervals:
                # int_a^b e^{-i t lam} d lam
                acc += (mp.exp(mpc(0, -t) * a) - mp.exp(mpc(0, -t) * b)) / mpc(0, t)
            vals.append(acc)
        if sym:
            out = tuple(v.real for v in vals)
        else:
            out = tuple(vals)
    spec = ArcRestrictedDensity(ConstDensity(1.0), arcs).spec_string()
    return CovarianceSequence(values=out, precision_bits=precision_bits,
                              abs_error_bound=mpf(0), source="closed-form",
                              density_spec=spec, is_real=sym)


def covariances_arfima0d0(d, N: int, precision_bits: int = 128,
                          certify: bool = False) -> CovarianceSequence:
    """ARFIMA(0,d,0) with unit innovation variance.

    r(0) = Gamma(1-2d)/Gamma(1-d)^2 and r(t) = r(t-1)(t-1+d)/(t-d); with
    ``certify=True`` the first lags are cross-checked against quadrature
    to 1e-20 before the sequence is returned.
    """
    d = float(d)
    if not (d < 0.5) or d == 0.0:
        raise CovarianceError("need d < 1/2, d != 0")
    validate_bits(precision_bits)
    with workprec(precision_bits + GUARD_BITS):
        dd = mpf(d)
        vals = [mpmath.gamma(1 - 2 * dd) / mpmath.gamma(1 - dd) ** 2]
        for t in range(1, N + 1):
            vals.append(vals[-1] * (t - 1 + dd) / (t - dd))
    seq = CovarianceSequence(values=tuple(vals), precision_bits=precision_bits,
                             abs_error_bound=mpf(0), source="closed-form",
                             density_spec=ArfimaDensity(d).spec_string())
    if certify:
        q = covariances_quadrature(ArfimaDensity(d), min(N, 20),
                                   precision_bits=max(160, precision_bits),
                                   target_abs_error=mpf("1e-22"))
        worst = max(abs(seq.values[t] - q.values[t]) for t in range(min(N, 20) + 1))
        if worst > mpf("1e-20"):
            raise CovarianceError(f"recurrence failed certification: deviation {mp.nstr(worst, 5)}")
    return seq


# -- quadrature route -------------------------------------------------------


def covariances_quadrature(f: SpectralDensity, N: int, precision_bits: int,
                           target_abs_error=None) -> CovarianceSequence:
    """Quadrature covariances with per-entry absolute error <= target.

    The target must be attainable at the requested precision
    (target >= 2^-(precision_bits-16)); the default leaves GUARD_BITS of
    headroom.
    """
    validate_bits(precision_bits)
    with workprec(precision_bits + GUARD_BITS):
        target = mpf(target_abs_error) if target_abs_error is not None \
            else default_abs_target(precision_bits)
        if target < min_abs_target(precision_bits):
            raise CovarianceError(
                f"target_abs_error {mp.nstr(target, 5)} finer than precision floor "
                f"{mp.nstr(min_abs_target(precision_bits), 5)}; raise precision_bits")
        even = f.even
        if f.support is None:
            # the circle boundary must be the working-precision pi, or the
            # sliver beyond float(pi) is silently dropped
            intervals = [(-mp.pi, mp.pi)]
        else:
            intervals = f.support.intervals()
        if even:
            intervals = _fold_positive(intervals)
        singular = [s for s in f.singular_points() if s >= 0] if even else f.singular_points()
        vals, err = fourier_batch(lambda lam: f._eval(lam), int(N), prec=precision_bits,
                                  target=target, intervals=intervals,
                                  singular=singular, even=even)
    return CovarianceSequence(values=tuple(vals), precision_bits=precision_bits,
                              abs_error_bound=err, source="quadrature",
                              density_spec=f.spec_string(), is_real=even)


_CACHE: dict = {}


def covariances_for(f: SpectralDensity, N: int, precision_bits: int,
                    target_abs_error=None, prefer_closed: bool = True) -> CovarianceSequence:
    """Dispatcher: closed form when available, quadrature otherwise; cached."""
    key = (f.spec_string(), int(N), int(precision_bits),
           str(target_abs_error), bool(prefer_closed))
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    # a longer cached run at the same settings can be sliced
    for (spec, n2, bits, tgt, pc), seq in list(_CACHE.items()):
        if (spec, bits, tgt, pc) == (f.spec_string(), int(precision_bits),
                                     str(target_abs_error), bool(prefer_closed)) and n2 >= N:
            out = CovarianceSequence(values=seq.values[: N + 1],
                                     precision_bits=seq.precision_bits,
                                     abs_error_bound=seq.abs_error_bound,
                                     source=seq.source, density_spec=seq.density_spec,
                                     is_real=seq.is_real)
            _CACHE[key] = out
            return out
    seq = _generate(f, N, precision_bits, target_abs_error, prefer_closed)
    _CACHE[key] = seq
    return seq


def _generate(f, N, precision_bits, target_abs_error, prefer_closed):
    if prefer_closed:
        if isinstance(f, Ma1Density):
            return covariances_ma1(f.b, f.sigma2, N, precision_bits)
        if isinstance(f, ConstDensity):
            with workprec(precision_bits + GUARD_BITS):
                vals = (mpf(f.value) * 2 * mp.pi,) + (mpf(0),) * N
            return CovarianceSequence(values=vals, precision_bits=precision_bits,
                                      abs_error_bound=mpf(0), source="closed-form",
                                      density_spec=f.spec_string())
        if isinstance(f, ArfimaDensity) and getattr(f.inner, "kind", "") == "arma" \
                and f.inner.psi == (1.0,) and f.inner.theta == (1.0,):
            base = covariances_arfima0d0(f.d, N, precision_bits)
            return base if f.inner.sigma2 == 1.0 else base.scaled(f.inner.sigma2)
        if isinstance(f, ArcRestrictedDensity) and isinstance(f.base, ConstDensity):
            seq = covariances_arcset(f.arcset, N, precision_bits)
            return seq if f.base.value == 1.0 else seq.scaled(f.base.value)
    return covariances_quadrature(f, N, precision_bits, target_abs_error)


def clear_cache():
    _CACHE.clear()


def _fold_positive(intervals):
    """Fold symmetric intervals onto [0, pi] for even densities."""
    out = []
    for a, b in intervals:
        if b <= 0:
            out.append((-b, -a))
        elif a >= 0:
            out.append((a, b))
        else:
            out.append((mpf(0), b))
            out.append((mpf(0), -a))
    merged = []
    for a, b in sorted(out, key=lambda iv: (float(iv[0]), float(iv[1]))):
        if merged and a <= merged[-1][1] + 1e-15:
            merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
        else:
            merged.append((a, b))
    return merged
