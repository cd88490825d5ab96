"""Spectral factorization of nonnegative trigonometric polynomials.

The factorization writes t(lam) = |s(e^{i lam})|^2 with s zero-free in the
open unit disk and s(0) > 0, by rooting the associated Laurent polynomial
and keeping one root of every (z, 1/conj(z)) pair.  Roots that land on the
unit circle must occur with even multiplicity for a nonnegative t; they are
snapped to the circle and split half-and-half.

Also provides the closed-form integral of log|q(lam)| for an algebraic
polynomial q, used for geometric means of |q|^alpha factors.
"""
from __future__ import annotations

import mpmath
from mpmath import mp, mpc, mpf

from .precision import workprec
from .trig import TrigPolynomial


class FactorizationError(ValueError):
    pass


def _roots_robust(poly_leading_first, precision_bits):
    """polyroots with escalating step budgets.

    Durand-Kerner converges only linearly at a multiple root (rate
    (m-1)/m), so polynomials with high-multiplicity circle zeros need far
    more iterations than the default.
    """
    last = None
    for steps, extra in ((120, precision_bits + 80), (800, precision_bits + 80)):
        try:
            return mpmath.polyroots(poly_leading_first, maxsteps=steps, extraprec=extra)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            last = exc
    # multiple roots cannot reach full precision (cluster radius floors at
    # eps^(1/m)); retry with a lower convergence demand
    for frac in (2, 4):
        try:
            with mp.workprec(max(80, (mp.prec // frac))):
                return mpmath.polyroots(poly_leading_first, maxsteps=2000,
                                        extraprec=precision_bits // frac + 60)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            last = exc
    raise FactorizationError(f"root finding did not converge: {last}")


def fejer_riesz(t: TrigPolynomial, precision_bits: int = 212):
    """Spectral factor of a nonnegative trig polynomial.

    Returns the coefficients (s_0, ..., s_nu) of the algebraic polynomial
    s(z) = s_0 + s_1 z + ... + s_nu z^nu with |s(e^{i lam})|^2 = t(lam),
    s(z) != 0 for |z| < 1 and s_0 > 0.

    Raises FactorizationError when t takes negative values; the message
    carries a witness angle.
    """
    with workprec(precision_bits + 64):
        nu = t.degree
        if t.factor_hint:
            # constructor supplied the factor analytically; normalize the
            # phase so the constant term is positive real
            s = [mpc(c) for c in t.factor_hint]
            s0 = s[0]
            if abs(s0) > 0:
                phase = mp.conj(s0) / abs(s0)
                return tuple(phase * c for c in s)
        _reject_if_negative(t, precision_bits)
        if nu == 0:
            c = mpc(t.coeffs[0]).real
            return (mp.sqrt(c),)
        # P(z) = z^nu * sum_k c_k z^k has the roots of t paired as (w, 1/conj(w))
        coeffs = [mpc(0)] * (2 * nu + 1)
        for k in range(nu + 1):
            coeffs[nu + k] = mpc(t.coeffs[k])
            coeffs[nu - k] = mp.conj(mpc(t.coeffs[k]))
        while abs(coeffs[-1]) == 0:
            # degenerate leading coefficient: treat as lower degree
            coeffs = coeffs[1:-1]
            nu -= 1
            if nu == 0:
                c = mpc(t.coeffs[0]).real
                return (mp.sqrt(c),)
        poly = list(reversed(coeffs))  # mpmath wants leading coefficient first
        roots = _roots_robust(poly, precision_bits)
        chosen = _select_factor_roots(roots, nu, precision_bits)
        # s(z) = gamma * prod (z - w_j); |gamma|^2 = c_nu / prod(-conj(w_j))
        denom = mpc(1)
        for w in chosen:
            denom *= -mp.conj(w)
        gamma_sq = mpc(t.coeffs[nu]) / denom
        if gamma_sq.real <= 0 or abs(gamma_sq.imag) > abs(gamma_sq) * mpf(2) ** (-precision_bits // 4):
            raise FactorizationError("inconsistent leading coefficient; polynomial is not nonnegative")
        gamma = mp.sqrt(abs(gamma_sq))
        s = [mpc(1)]
        for w in chosen:
            s = [a - w * b for a, b in zip(s + [mpc(0)], [mpc(0)] + s)]
        # s currently has leading coefficient 1 in z^nu with constant term last
        s = list(reversed(s))  # now s[0] is the constant term
        s = [gamma * c for c in s]
        # rotate the global phase so that s(0) is positive real
        s0 = s[0]
        if abs(s0) == 0:
            raise FactorizationError("factor vanishes at the origin; polynomial is degenerate")
        phase = mp.conj(s0) / abs(s0)
        s = [phase * c for c in s]
        return tuple(s)


def eval_factor(s, lam) -> mpf:
    """|s(e^{i lam})|^2 for a coefficient tuple from fejer_riesz."""
    z = mp.exp(mpc(0, 1) * mpf(lam))
    acc = mpc(0)
    for c in reversed(s):
        acc = acc * z + c
    return abs(acc) ** 2


def trig_geometric_mean(t: TrigPolynomial, precision_bits: int = 212) -> mpf:
    """G(t) = |s(0)|^2 for nonnegative t."""
    s = fejer_riesz(t, precision_bits)
    return abs(s[0]) ** 2


def unit_circle_zeros(t: TrigPolynomial, precision_bits: int = 212):
    """Real zeros of a nonnegative trig polynomial with their contact orders.

    Returns a list of (lambda0, order) where t(lam) ~ c*(lam-lambda0)**order
    near each zero; orders are even integers.  Distinct zeros closer than
    1e-6 radians are reported as one zero of combined order.
    """
    with workprec(precision_bits + 64):
        s = fejer_riesz(t, precision_bits)
        if len(s) == 1:
            return []
        roots = _roots_robust(list(reversed(list(s))), precision_bits)
        # multiple roots are computed fuzzily; collect everything near the
        # circle and confirm by evaluating t itself
        cands = sorted((float(mp.arg(w)) for w in roots if abs(abs(w) - 1) <= 1e-8))
        clusters = []
        for lam in cands:
            if clusters and lam - clusters[-1][0][-1] < 1e-6:
                clusters[-1][0].append(lam)
                clusters[-1][1] += 1
            else:
                clusters.append([[lam], 1])
        # join a cluster at -pi with one at +pi (same point on the circle)
        if len(clusters) > 1:
            lo, hi = clusters[0], clusters[-1]
            if (lo[0][0] + mp.pi) + (mp.pi - hi[0][-1]) < 1e-6:
                hi[1] += lo[1]
                clusters = clusters[1:]
        scale = sum(abs(mpc(c)) for c in t.coeffs) + mpf(1)
        out = []
        for lams, m in clusters:
            lam0 = sum(lams) / len(lams)
            if abs(t.eval(lam0)) <= scale * 1e-12:
                out.append((lam0, 2 * m))
        return sorted(out)


def log_abs_poly_integral(qcoeffs, precision_bits: int = 212) -> mpf:
    """Closed form of int_{-pi}^{pi} log|q(lam)| d lam.

    q is an algebraic polynomial in the real variable lam with real
    coefficients (constant term first).  Uses the antiderivative of
    log|lam - rho| per complex root rho.
    """
    with workprec(precision_bits + 64):
        coeffs = [mpf(c) for c in qcoeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) == 1:
            if coeffs[0] == 0:
                raise FactorizationError("q is identically zero")
            return 2 * mp.pi * mp.log(abs(coeffs[0]))
        lead = coeffs[-1]
        roots = _roots_robust(list(reversed(coeffs)), precision_bits)
        total = 2 * mp.pi * mp.log(abs(lead))
        for rho in roots:
            total += _log_abs_linear_integral(mpc(rho))
        return total


def poly_real_roots_in_range(qcoeffs, lo=-mp.pi, hi=mp.pi, precision_bits: int = 212):
    """Real roots of q inside [lo, hi], with multiplicities."""
    with workprec(precision_bits + 64):
        coeffs = [mpf(c) for c in qcoeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) == 1:
            return []
        roots = _roots_robust(list(reversed(coeffs)), precision_bits)
        snap = mpf(2) ** (-(precision_bits // 2))
        out = {}
        for rho in roots:
            rho = mpc(rho)
            if abs(rho.imag) <= snap and lo - 1e-12 <= rho.real <= hi + 1e-12:
                x = float(rho.real)
                key = min(out, key=lambda y: abs(y - x), default=None)
                if key is not None and abs(key - x) < 1e-9:
                    out[key] += 1
                else:
                    out[x] = 1
        return sorted(out.items())


def _log_abs_linear_integral(rho: mpc) -> mpf:
    """int_{-pi}^{pi} log|lam - rho| d lam for a complex root rho."""
    x, y = rho.real, abs(rho.imag)

    def F(lam):
        dx = lam - x
        if y == 0:
            if dx == 0:
                return mpf(0)
            return dx * mp.log(abs(dx)) - dx
        return dx * mp.log(mp.sqrt(dx * dx + y * y)) - dx + y * mp.atan(dx / y)

    return F(mp.pi) - F(-mp.pi)


def _reject_if_negative(t: TrigPolynomial, precision_bits: int):
    """Dense grid scan; raises with a witness angle when t dips negative."""
    n = max(64, 64 * t.degree)
    tol = -mpf(2) ** (-(precision_bits // 2))
    scale = sum(abs(mpc(c)) for c in t.coeffs) + mpf(1)
    for j in range(n):
        lam = -mp.pi + 2 * mp.pi * j / n
        v = t.eval(lam)
        if v < tol * scale:
            raise FactorizationError(f"polynomial is negative near lambda={float(lam):.6f} (value {float(v):.3e})")


def _select_factor_roots(roots, nu, precision_bits):
    """Pick the nu roots of the spectral factor from the 2*nu Laurent roots.

    Non-circle roots come in (w, 1/conj(w)) pairs; we keep the outside
    member.  Unit-circle roots of a nonnegative polynomial have even
    multiplicity; a multiplicity-m root is computed as a fuzzy cluster of m
    points near the circle, so classification retries with widening
    tolerances until the bookkeeping is consistent.
    """
    tols = [mpf(2) ** (-(precision_bits // 3)), mpf("1e-12"), mpf("1e-8"), mpf("1e-6")]
    for tol in tols:
        outside = [w for w in roots if abs(w) >= 1 + tol]
        near = [w for w in roots if abs(abs(w) - 1) < tol]
        clusters = _cluster_points(near, ctol=max(tol * 64, mpf("1e-9")))
        if any(m % 2 for _, m in clusters):
            continue
        half = []
        for w, m in clusters:
            half.extend([w / abs(w)] * (m // 2))
        if len(outside) + len(half) == nu:
            return outside + half
    raise FactorizationError(
        "could not split roots into conjugate-reciprocal pairs; polynomial is not nonnegative")


def _cluster_points(points, ctol):
    """Greedy complex-plane clustering; returns (centroid, count) pairs."""
    clusters = []
    for w in points:
        for c in clusters:
            if abs(w - c[0] / c[1]) <= ctol:
                c[0] += w
                c[1] += 1
                break
        else:
            clusters.append([w, 1])
    return [(c[0] / c[1], c[1]) for c in clusters]
