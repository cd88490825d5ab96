"""Real-valued trigonometric polynomials on [-pi, pi].

A polynomial of degree nu is stored through its Fourier coefficients
c_0..c_nu; the negative-frequency coefficients are the conjugates, so
evaluation is always real.  Construction helpers cover the shapes used
throughout the package (constants, shifted sine powers, explicit
coefficient lists).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

from .precision import workprec


@dataclass(frozen=True)
class TrigPolynomial:
    """Trig polynomial sum_{|k|<=nu} c_k e^{ik*lam} with c_{-k} = conj(c_k).

    ``coeffs`` holds c_0..c_nu (c_0 must be real).  ``nonneg`` is set only
    after a successful spectral factorization certifies t >= 0.
    """

    coeffs: tuple
    label: str = ""
    nonneg: bool = field(default=False, compare=False)
    factor_hint: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("need at least the constant coefficient")
        c0 = mpc(self.coeffs[0])
        if abs(c0.imag) > abs(c0) * mpf(2) ** -40 + mpf(2) ** -60:
            raise ValueError("constant coefficient of a real trig polynomial must be real")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, lam) -> mpf:
        """Evaluate at a real angle; the result is real by symmetry."""
        z = mp.exp(mpc(0, 1) * mpf(lam))
        acc = mpc(0)
        for k in range(self.degree, 0, -1):
            acc = (acc + self.coeffs[k]) * z
        return mpc(self.coeffs[0]).real + 2 * acc.real

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(c) -> "TrigPolynomial":
        c = mpf(c)
        hint = (mp.sqrt(c),) if c >= 0 else ()
        return TrigPolynomial(coeffs=(c,), label=f"const({float(c)!r})",
                              nonneg=c >= 0, factor_hint=hint)

    @staticmethod
    def from_coeffs(coeffs, label: str = "") -> "TrigPolynomial":
        return TrigPolynomial(coeffs=tuple(mpc(c) for c in coeffs), label=label)

    @staticmethod
    def sin_power(k: int, lambda0: float = 0.0, precision_bits: int = 212) -> "TrigPolynomial":
        """sin^{2k}(lam - lambda0), a nonnegative polynomial of degree 2k."""
        k = int(k)
        if k < 1:
            raise ValueError("need k >= 1")
        with workprec(precision_bits + 32):
            lam0 = mpf(lambda0)
            # sin^2(lam - lam0): c0 = 1/2, c2 = -exp(-2i*lam0)/4
            base = {0: mpf(1) / 2, 2: -mp.exp(mpc(0, -2) * lam0) / 4, -2: -mp.exp(mpc(0, 2) * lam0) / 4}
            acc = dict(base)
            for _ in range(k - 1):
                acc = _convolve(acc, base)
            nu = 2 * k
            coeffs = tuple(mpc(acc.get(j, 0)) for j in range(nu + 1))
            # spectral factor is ((1 - e^{-2i*lam0} z^2)/2)^k, zero-free in the disk
            sfac = [mpc(1)]
            q = mp.exp(mpc(0, -2) * lam0)
            for _ in range(k):
                prev = sfac
                sfac = [mpc(0)] * (len(prev) + 2)
                for j, c in enumerate(prev):
                    sfac[j] += c / 2
                    sfac[j + 2] -= c * q / 2
        return TrigPolynomial(coeffs=coeffs, label=f"sin2k(k={k},lambda0={float(lambda0)!r})",
                              nonneg=True, factor_hint=tuple(sfac))

    @staticmethod
    def one_minus_cos(scale=2.0) -> "TrigPolynomial":
        """scale*(1 - cos lam); with scale=2 this is |1 - e^{i lam}|^2."""
        s = mpf(scale)
        hint = (mp.sqrt(s / 2), -mp.sqrt(s / 2)) if s >= 0 else ()
        return TrigPolynomial(coeffs=(s, -s / 2), label=f"omc({float(scale)!r})",
                              nonneg=s >= 0, factor_hint=hint)

    def times(self, other: "TrigPolynomial") -> "TrigPolynomial":
        a = {k: c for k, c in enumerate(self.coeffs)}
        a.update({-k: mp.conj(c) for k, c in enumerate(self.coeffs) if k})
        b = {k: c for k, c in enumerate(other.coeffs)}
        b.update({-k: mp.conj(c) for k, c in enumerate(other.coeffs) if k})
        prod = _convolve(a, b)
        nu = self.degree + other.degree
        hint = ()
        if self.factor_hint and other.factor_hint:
            hint = tuple(_poly_mul(self.factor_hint, other.factor_hint))
        return TrigPolynomial(coeffs=tuple(mpc(prod.get(j, 0)) for j in range(nu + 1)),
                              label="", nonneg=self.nonneg and other.nonneg,
                              factor_hint=hint)

    def certified_nonneg(self) -> "TrigPolynomial":
        return TrigPolynomial(coeffs=self.coeffs, label=self.label, nonneg=True)

    def scaled(self, c) -> "TrigPolynomial":
        c = mpf(c)
        hint = tuple(mp.sqrt(c) * mpc(x) for x in self.factor_hint) if (
            self.factor_hint and c >= 0) else ()
        return TrigPolynomial(coeffs=tuple(c * mpc(x) for x in self.coeffs),
                              label="", nonneg=self.nonneg and c >= 0, factor_hint=hint)

    def spec_string(self) -> str:
        if self.label:
            return self.label
        parts = []
        for c in self.coeffs:
            c = mpc(c)
            parts.append(f"({float(c.real)!r},{float(c.imag)!r})")
        return "coeffs([" + ",".join(parts) + "])"


def _poly_mul(a, b):
    out = [mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _convolve(a: dict, b: dict) -> dict:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, mpc(0)) + va * vb
    return out
