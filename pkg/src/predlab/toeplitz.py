"""Levinson recursion, prediction traces and optimal polynomials.

Conventions, fixed once for the whole package:

  * sigma2[n] is the least mean-squared error predicting X(0) from the n
    most recent past values; sigma2[0] = r(0).
  * Equivalently sigma2[n] = D_n / D_{n-1} with D_n the determinant of
    the (n+1) x (n+1) matrix [r(t-s)].
  * verblunsky[n] (1-based) is conj of the n-th reflection coefficient,
    which for real sequences is the partial autocorrelation at lag n;
    sigma2[n] = r(0) * prod_{j<=n} (1 - |v_j|^2).

The recursion aborts cleanly when positive definiteness is lost within
working precision and returns a partial trace with a degeneracy flag.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .covariance import CovarianceSequence
from .precision import GUARD_BITS, workprec

CONVENTION = ("sigma2[n]=D_n/D_{n-1}, prediction from n past values; "
              "v_n = PACF(n) for real sequences")


class DegenerateMatrixError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PredictionTrace:
    """Per-step output of the Levinson recursion."""

    n_max: int
    sigma2: tuple                  # sigma2[0..n_max]
    verblunsky: tuple              # v_1..v_n_max
    precision_bits: int
    r0: mpf
    is_real: bool = True
    degenerate_at: int = -1        # first n where positivity failed; -1 if clean
    warnings: tuple = ()
    density_spec: str = ""
    convention: str = CONVENTION

    @property
    def usable_n(self) -> int:
        return self.n_max if self.degenerate_at < 0 else self.degenerate_at - 1

    def ratio_seq(self):
        """sigma2[n+1]/sigma2[n] for n = 0..usable_n-1."""
        return [self.sigma2[n + 1] / self.sigma2[n] for n in range(self.usable_n)]

    def nth_root_seq(self):
        """(sigma2[n])^(1/2n) for n = 1..usable_n."""
        with workprec(self.precision_bits):
            return [self.sigma2[n] ** (mpf(1) / (2 * n)) for n in range(1, self.usable_n + 1)]

    def to_csv(self) -> str:
        import io
        buf = io.StringIO()
        buf.write(f"# density={self.density_spec} precision_bits={self.precision_bits}\n")
        buf.write(f"# convention: {self.convention}\n")
        buf.write("n,sigma2,v,ratio,nth_root\n")
        dps = max(17, int(self.precision_bits * 0.30103) + 2)
        with workprec(self.precision_bits):
            for n in range(self.usable_n + 1):
                s = mp.nstr(self.sigma2[n], dps)
                v = "" if n == 0 else _num_str(self.verblunsky[n - 1], dps)
                ratio = "" if n + 1 > self.usable_n else mp.nstr(
                    self.sigma2[n + 1] / self.sigma2[n], dps)
                root = "" if n == 0 else mp.nstr(self.sigma2[n] ** (mpf(1) / (2 * n)), dps)
                buf.write(f"{n},{s},{v},{ratio},{root}\n")
        return buf.getvalue()

    def summary(self) -> dict:
        with workprec(self.precision_bits):
            return {
                "n_max": self.n_max,
                "usable_n": self.usable_n,
                "precision_bits": self.precision_bits,
                "convention": self.convention,
                "r0": mp.nstr(self.r0, 20),
                "degenerate_at": self.degenerate_at,
                "warnings": list(self.warnings),
                "density": self.density_spec,
                "sigma2_final": mp.nstr(self.sigma2[self.usable_n], 20),
            }


def _num_str(v, dps):
    v = mpc(v)
    if v.imag == 0:
        return mp.nstr(v.real, dps)
    return f"{mp.nstr(v.real, dps)}{'+' if v.imag >= 0 else '-'}{mp.nstr(abs(v.imag), dps)}j"


def levinson(r: CovarianceSequence, n_max: int) -> PredictionTrace:
    """Run the Levinson recursion for n = 1..n_max.

    Needs r(0..n_max).  Emits a warning annotation when the covariance
    error bound is no longer small against the running sigma2, and stops
    with a degeneracy flag when sigma2 falls below the precision floor.
    """
    n_max = int(n_max)
    if r.n_max < n_max:
        raise ValueError(f"covariances cover lags up to {r.n_max}, requested n_max={n_max}")
    bits = r.precision_bits
    real = r.is_real
    with workprec(bits + GUARD_BITS):
        r0 = r.r0()
        floor = r0 * mpf(2) ** (-(bits - 16))
        vals = [rv if real else mpc(rv) for rv in r.values[: n_max + 1]]
        sigma2 = [r0]
        vs = []
        warnings = []
        coeffs = []  # phi_{m,1..m}
        E = r0
        degenerate_at = -1
        warned = False
        for m in range(1, n_max + 1):
            acc = vals[m]
            for j in range(1, m):
                acc -= coeffs[j - 1] * vals[m - j]
            k = acc / E
            mag = abs(k)
            if mag >= 1:
                degenerate_at = m
                break
            if real:
                new = [coeffs[j - 1] - k * coeffs[m - 1 - j] for j in range(1, m)]
            else:
                new = [coeffs[j - 1] - k * mp.conj(coeffs[m - 1 - j]) for j in range(1, m)]
            new.append(k)
            coeffs = new
            E = E * (1 - mag * mag)
            if E <= floor:
                degenerate_at = m
                break
            sigma2.append(E)
            vs.append(k)
            if not warned and r.abs_error_bound > 0 and r.abs_error_bound * (m + 1) > E / 8:
                warnings.append(f"covariance error bound {mp.nstr(r.abs_error_bound, 3)} is "
                                f"no longer small against sigma2[{m}]")
                warned = True
        return PredictionTrace(n_max=n_max, sigma2=tuple(sigma2), verblunsky=tuple(vs),
                               precision_bits=bits, r0=r0, is_real=real,
                               degenerate_at=degenerate_at, warnings=tuple(warnings),
                               density_spec=r.density_spec)


def sigma2_via_determinants(r: CovarianceSequence, n: int) -> mpf:
    """D_n/D_{n-1} by dense LU determinants; oracle-scale only (n <= 12)."""
    n = int(n)
    if n > 12:
        raise ValueError("determinant oracle is limited to n <= 12")
    with workprec(r.precision_bits + GUARD_BITS):
        dn = _toeplitz_det(r, n)
        dn1 = _toeplitz_det(r, n - 1) if n >= 1 else mpf(1)
        if not dn1 > 0:
            raise DegenerateMatrixError(f"D_{n-1} = {mp.nstr(dn1, 8)} is not positive")
        return dn / dn1


def _toeplitz_det(r: CovarianceSequence, n: int):
    if n < 0:
        return mpf(1)
    A = mp.matrix(n + 1, n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            A[i, j] = r.r(j - i)
    d = mp.det(A)
    return d.real if isinstance(d, mpc) else d


def toeplitz_quadratic_form(r: CovarianceSequence, coeffs) -> mpf:
    """sum_{j,k} a_j conj(a_k) r(j-k): the mu-norm-squared of the
    polynomial with coefficient list ``coeffs`` (leading first)."""
    with workprec(r.precision_bits + GUARD_BITS):
        acc = mpf(0)
        cs = [mpc(c) for c in coeffs]
        for j in range(len(cs)):
            for k in range(len(cs)):
                acc += (cs[j] * mp.conj(cs[k]) * r.r(j - k)).real
        return acc


def optimal_polynomial(trace: PredictionTrace, n: int):
    """Monic optimal polynomial p_n rebuilt from the Verblunsky sequence.

    Uses the Szego recursion p_{m+1}(z) = z p_m(z) - conj(v_{m+1}) p*_m(z);
    coefficients are returned leading-first, so p(0) is the last entry and
    v_{n} = -conj(p_n(0)).
    """
    n = int(n)
    if n > trace.usable_n:
        raise ValueError(f"trace only supports n <= {trace.usable_n}")
    with workprec(trace.precision_bits + GUARD_BITS):
        p = [mpc(1)]
        for m in range(n):
            v = mpc(trace.verblunsky[m])
            rev = [mp.conj(c) for c in reversed(p)]
            p = [a - mp.conj(v) * b for a, b in zip(p + [mpc(0)], [mpc(0)] + rev)]
        if trace.is_real:
            return tuple(c.real for c in p)
        return tuple(p)
