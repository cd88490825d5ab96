"""Extreme eigenvalues of truncated Toeplitz matrices.

T_n(f) is the (n+1) x (n+1) matrix [r(t-s)] of Fourier coefficients of f.
Because r(t) = int e^{-i t lam} f d lam carries no 1/(2 pi), the symbol
whose essential range bounds the spectrum is 2*pi*f; all bounds and the
distribution check below are stated for that symbol.

The minimal eigenvalue is located by bisection on the shift xi: positive
definiteness of T_n - xi*I is decided by running the Levinson recursion
on the shifted sequence (r(0)-xi, r(1), ...).  A dense float64 solve is
kept as an oracle for moderate n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .covariance import CovarianceSequence, covariances_for
from .models import SpectralDensity
from .precision import GUARD_BITS, workprec
from .quadrature import adaptive_integral


class SandwichViolation(AssertionError):
    pass


@dataclass(frozen=True)
class EigenRecord:
    n: int                      # matrix size is n+1
    lambda_min: mpf
    lambda_max: object          # mpf or None when not computed
    precision_bits: int
    method: str                 # "bisection" or "dense"
    bracket: tuple = ()         # (lo, hi) enclosing lambda_min
    flag: str = ""              # "lower-bound-only" when bisection bottomed out


def _shifted(r: CovarianceSequence, xi):
    vals = (r.values[0] - xi,) + tuple(r.values[1:])
    return CovarianceSequence(values=vals, precision_bits=r.precision_bits,
                              abs_error_bound=r.abs_error_bound, source=r.source,
                              density_spec="", is_real=r.is_real)


def _is_pd(r: CovarianceSequence, n: int, xi) -> bool:
    """T_n - xi*I positive definite, tested through Levinson."""
    from .toeplitz import levinson
    if not (r.r0() - xi > 0):
        return False
    try:
        tr = levinson(_shifted(r, xi), n)
    except Exception:
        return False
    return tr.degenerate_at < 0


def min_eigenvalue(r: CovarianceSequence, n: int, precision_bits: int = None,
                   tol=None, compute_max: bool = False) -> EigenRecord:
    """Smallest eigenvalue of T_n by Levinson-positivity bisection.

    The bracket starts at (0, r(0)] (Rayleigh quotient of e_1 gives
    lambda_min <= r(0)).  When even the precision floor fails the
    positivity probe, the record is flagged as a lower bound only.
    """
    bits = precision_bits or r.precision_bits
    n = int(n)
    with workprec(bits + GUARD_BITS):
        r0 = r.r0()
        tol = mpf(tol) if tol is not None else r0 * mpf(2) ** (-(bits // 2))
        floor = r0 * mpf(2) ** (-(bits - 24))
        lo, hi = mpf(0), r0
        if not _is_pd(r, n, floor):
            return EigenRecord(n=n, lambda_min=floor, lambda_max=None,
                               precision_bits=bits, method="bisection",
                               bracket=(mpf(0), floor), flag="lower-bound-only")
        lo = floor
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if _is_pd(r, n, mid):
                lo = mid
            else:
                hi = mid
        lam_min = (lo + hi) / 2
        lam_max = None
        if compute_max:
            lam_max = _max_eigenvalue_bisect(r, n, bits, tol)
        return EigenRecord(n=n, lambda_min=lam_min, lambda_max=lam_max,
                           precision_bits=bits, method="bisection", bracket=(lo, hi))


def _max_eigenvalue_bisect(r: CovarianceSequence, n: int, bits: int, tol):
    """lambda_max via the negated-sequence reduction: the largest
    eigenvalue of T_n(f) is -lambda_min of T_n generated by -f."""
    with workprec(bits + GUARD_BITS):
        # probe mu*I - T_n pd  <=>  mu > lambda_max, on the sequence
        # (mu - r0, -r1, ..., -rn)
        row_bound = r.r0() + 2 * mp.fsum(abs(r.values[t]) for t in range(1, n + 1))
        lo, hi = r.r0(), row_bound

        def pd(mu):
            from .toeplitz import levinson
            vals = (mu - r.values[0],) + tuple(-v for v in r.values[1:])
            if not (vals[0].real if not r.is_real else vals[0]) > 0:
                return False
            seq = CovarianceSequence(values=vals, precision_bits=r.precision_bits,
                                     abs_error_bound=r.abs_error_bound,
                                     source=r.source, density_spec="", is_real=r.is_real)
            try:
                return levinson(seq, n).degenerate_at < 0
            except Exception:
                return False

        if pd(lo):
            hi = lo  # degenerate: all mass on the diagonal
            return lo
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if pd(mid):
                hi = mid
            else:
                lo = mid
        return (lo + hi) / 2


def dense_eigenvalues(r: CovarianceSequence, n: int) -> np.ndarray:
    """Float64 spectrum of T_n; the standard-precision oracle."""
    n = int(n)
    if r.is_real:
        row = np.array([float(r.values[t]) for t in range(n + 1)])
        T = np.empty((n + 1, n + 1))
        for i in range(n + 1):
            for j in range(n + 1):
                T[i, j] = row[abs(i - j)]
    else:
        T = np.empty((n + 1, n + 1), dtype=complex)
        for i in range(n + 1):
            for j in range(n + 1):
                T[i, j] = complex(r.r(j - i))
    return np.linalg.eigvalsh(T)


def min_eigenvalue_dense(r: CovarianceSequence, n: int) -> EigenRecord:
    vals = dense_eigenvalues(r, n)
    return EigenRecord(n=int(n), lambda_min=mpf(float(vals[0])),
                       lambda_max=mpf(float(vals[-1])),
                       precision_bits=53, method="dense")


def eigen_distribution_check(f: SpectralDensity, n: int, test_moments) -> list:
    """Eigenvalue-moment averages against symbol-moment integrals.

    Returns [(empirical_m, integral_m)] per requested moment m, where
    empirical_m = (1/(n+1)) sum lambda_k^m over the spectrum of T_n and
    integral_m = (1/2 pi) int (2 pi f(u))^m du.
    """
    n = int(n)
    if n > 400:
        raise ValueError("dense distribution check is limited to n <= 400")
    cov = covariances_for(f, n, 128)
    lam = dense_eigenvalues(cov, n)
    out = []
    with workprec(160):
        intervals = [(-mp.pi, mp.pi)] if f.support is None else f.support.intervals()
        for m in test_moments:
            m = int(m)
            emp = float(np.mean(lam ** m))
            val, _, _ = adaptive_integral(
                lambda x: (2 * mp.pi * f._eval(x)) ** m, intervals,
                prec=160, target=mpf("1e-12"), singular=f.singular_points())
            integ = float(val / (2 * mp.pi))
            out.append((emp, integ))
    return out


def sandwich_check(trace, eig_records, symbol_upper) -> dict:
    """lambda_min(T_n) <= sigma2_n <= M * lambda_min(T_n)/lambda_min(T_{n-1}).

    ``eig_records`` must contain records for every checked n and n-1;
    ``symbol_upper`` is the essential sup of the symbol 2*pi*f.  Margins
    are returned; a violation beyond combined numerical slack raises
    SandwichViolation, since it indicates an actual bug.
    """
    recs = {e.n: e for e in eig_records}
    M = mpf(symbol_upper)
    results = []
    with workprec(trace.precision_bits):
        for n in sorted(recs):
            if n - 1 not in recs or n < 1 or n > trace.usable_n:
                continue
            lam_n = recs[n].lambda_min
            lam_n1 = recs[n - 1].lambda_min
            s = trace.sigma2[n]
            slack = _slack(recs[n]) + _slack(recs[n - 1]) + abs(s) * mpf(2) ** (-(trace.precision_bits // 2))
            lower_margin = s - lam_n
            upper = M * lam_n / lam_n1
            upper_margin = upper - s
            if lower_margin < -slack or upper_margin < -upper * mpf("1e-6") - slack:
                raise SandwichViolation(
                    f"sandwich violated at n={n}: lambda={mp.nstr(lam_n, 10)}, "
                    f"sigma2={mp.nstr(s, 10)}, upper={mp.nstr(upper, 10)}")
            results.append({"n": n,
                            "lambda_min": float(lam_n),
                            "sigma2": float(s),
                            "upper_bound": float(upper),
                            "lower_margin": float(lower_margin),
                            "upper_margin": float(upper_margin)})
    return {"checked": results, "symbol_upper": float(M), "ok": True}


def _slack(rec: EigenRecord):
    if rec.bracket:
        return abs(rec.bracket[1] - rec.bracket[0])
    return abs(rec.lambda_min) * mpf("1e-10") + mpf("1e-13")
