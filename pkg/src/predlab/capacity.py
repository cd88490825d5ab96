"""Transfinite diameters of arc unions and segments.

Closed forms are exact and preferred: single arcs, k equispaced equal
arcs, symmetric two-arc and four-arc configurations, full circle, and
line segments.  Configurations without a matching pattern get an honest
bracket from monotonicity (largest inscribed arc, smallest circumscribed
arc) and, on request, an n-point extremal-configuration estimate d_n,
which always sits above the true value and decreases with n.

The composition rules for preimages under polynomial maps and for the
projection of conjugation-symmetric sets onto the real axis are exposed
as separate operations so the closed forms can be cross-derived.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .arcs import ArcSet
from .precision import workprec

_TAU_PREC = 212


@dataclass(frozen=True)
class TauResult:
    value: object = None        # mpf, or None when only a bracket is known
    bracket: tuple = ()         # (lower, upper) when value is None
    method: str = ""
    n_points: int = 0
    flag: str = ""

    def best(self):
        if self.value is not None:
            return self.value
        return (self.bracket[0] + self.bracket[1]) / 2


def tau_segment(a: float, b: float) -> TauResult:
    """Transfinite diameter of [a, b]: one fourth of the length."""
    a, b = float(a), float(b)
    if not (a < b):
        raise ValueError("need a < b (a single point has transfinite diameter 0)")
    with workprec(_TAU_PREC):
        return TauResult(value=(mpf(b) - mpf(a)) / 4, method="closed-form-segment")


def tau_arcset(arcs: ArcSet, fekete_n: int = 0, rng_seed: int = 1) -> TauResult:
    """Pattern-matched closed forms; brackets for everything else.

    With ``fekete_n`` > 0 a non-matching configuration additionally runs
    the extremal-point estimator and reports its d_n alongside the
    bracket.
    """
    with workprec(_TAU_PREC):
        if arcs.is_full_circle:
            return TauResult(value=mpf(1), method="closed-form-arc")
        val = _tau_from_pattern(arcs.pattern)
        if val is not None:
            return TauResult(value=val, method="closed-form-arc")
        lengths = arcs.lengths
        gaps = arcs.gaps()
        k = len(lengths)
        equal_lengths = max(lengths) - min(lengths) < 1e-12
        if k == 1:
            beta = mpf(lengths[0])
            return TauResult(value=mp.sin(beta / 4), method="closed-form-arc")
        if equal_lengths and k == 2:
            alpha = mpf(lengths[0])
            delta = mpf(min(gaps)) / 2
            val = mp.sqrt(mp.sin(alpha / 2) * mp.sin(alpha / 2 + delta))
            return TauResult(value=val, method="closed-form-arc")
        if equal_lengths and _gaps_all_equal(gaps):
            alpha = mpf(lengths[0])
            return TauResult(value=mp.sin(k * alpha / 4) ** (mpf(1) / k),
                             method="closed-form-arc")
        if equal_lengths and k == 4 and _gaps_alternate(gaps):
            alpha = mpf(lengths[0])
            delta = mpf(min(gaps)) / 2
            # preimage of the two-arc set under z^2: fourth root taken as
            # iterated square roots so the degeneracy identities hold
            val = mp.sqrt(mp.sqrt(mp.sin(alpha) * mp.sin(alpha + 2 * delta)))
            return TauResult(value=val, method="closed-form-arc")
        lo = mp.sin(mpf(max(lengths)) / 4)
        hull = 2 * mp.pi - mpf(max(gaps))
        hi = mp.sin(hull / 4)
        n_pts = 0
        if fekete_n:
            _, dn, _ = fekete_points(arcs, fekete_n, rng_seed=rng_seed)
            hi = min(hi, mpf(dn))
            n_pts = int(fekete_n)
        return TauResult(bracket=(lo, hi), method="bracket", n_points=n_pts)


def _tau_from_pattern(pattern):
    """Closed form straight from the constructor parameters (exact)."""
    if not pattern:
        return None
    kind = pattern[0]
    if kind == "full":
        return mpf(1)
    if kind == "single":
        return mp.sin(mpf(pattern[1]) / 4)
    if kind == "pair":
        a, d = mpf(pattern[1]), mpf(pattern[2])
        return mp.sqrt(mp.sin(a / 2) * mp.sin(a / 2 + d))
    if kind == "quad":
        a, d = mpf(pattern[1]), mpf(pattern[2])
        return mp.sqrt(mp.sqrt(mp.sin(a) * mp.sin(a + 2 * d)))
    if kind == "equispaced":
        k, a = int(pattern[1]), mpf(pattern[2])
        if k == 1:
            return mp.sin(a / 4)
        return mp.sin(k * a / 4) ** (mpf(1) / k)
    return None


def _gaps_all_equal(gaps) -> bool:
    return max(gaps) - min(gaps) < 1e-12


def _gaps_alternate(gaps) -> bool:
    if len(gaps) != 4:
        return False
    return (abs(gaps[0] - gaps[2]) < 1e-12 and abs(gaps[1] - gaps[3]) < 1e-12)


def fekete_preimage_tau(tau_f, n: int, leading_coeff) -> mpf:
    """tau of the preimage under a degree-n polynomial with the given
    leading coefficient: (tau/|a|)^(1/n)."""
    n = int(n)
    if n < 1:
        raise ValueError("need polynomial degree n >= 1")
    a = abs(mpf(leading_coeff))
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    with workprec(_TAU_PREC):
        base = mpf(tau_f) / a
        if n == 1:
            return base
        if n == 2:
            return mp.sqrt(base)
        if n == 4:
            return mp.sqrt(mp.sqrt(base))
        return base ** (mpf(1) / n)


def robinson_project_tau(arcs: ArcSet) -> TauResult:
    """tau via projection onto the real axis, for conjugation-symmetric
    arc sets: tau(F) = sqrt(2 * tau(F^x))."""
    if not arcs.is_conjugation_symmetric():
        raise ValueError("projection route needs a set symmetric under conjugation")
    with workprec(_TAU_PREC):
        segs = []
        for c, h in arcs.arcs:
            lo, hi = c - h, c + h
            xs = [mp.cos(mpf(lo)), mp.cos(mpf(hi))]
            # cos is extremal inside the arc when it crosses 0 or +-pi
            if lo < 0 < hi:
                xs.append(mpf(1))
            if lo < math.pi < hi or lo < -math.pi < hi:
                xs.append(mpf(-1))
            segs.append((min(xs), max(xs)))
        merged = []
        for a, b in sorted(segs, key=lambda s: float(s[0])):
            if merged and a <= merged[-1][1] + mpf("1e-30"):
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        if len(merged) == 1:
            a, b = merged[0]
            tau_x = (b - a) / 4
            return TauResult(value=mp.sqrt(2 * tau_x), method="robinson-projection")
        lo = max((b - a) / 4 for a, b in merged)
        hull = merged[-1][1] - merged[0][0]
        return TauResult(bracket=(mp.sqrt(2 * lo), mp.sqrt(2 * hull / 4)),
                         method="robinson-projection")


def robinson_bounds_tau(tau_f, n: int, m, M) -> tuple:
    """Two-sided extension for rational maps p/q with m <= |q| <= M on the
    preimage: ([m*tau]^(1/n), [M*tau]^(1/n))."""
    n = int(n)
    m, M = mpf(m), mpf(M)
    if not (0 < m <= M) or n < 1:
        raise ValueError("need 0 < m <= M and n >= 1")
    with workprec(_TAU_PREC):
        t = mpf(tau_f)
        return ((m * t) ** (mpf(1) / n), (M * t) ** (mpf(1) / n))


# ---------------------------------------------------------------------------
# extremal point estimator
# ---------------------------------------------------------------------------


def fekete_points(arcs: ArcSet, n: int, rng_seed: int = 1, n_starts: int = 8,
                  sweeps: int = 120):
    """n-point maximizer of the normalized pairwise-distance product.

    Multi-start coordinate ascent over the angle parametrization; each
    coordinate update runs a golden-section search inside every arc
    interval.  Products are handled in log space.  Returns
    (angles, d_n, flag) with d_n = (prod |z_i - z_j|)^(2/(n(n-1))); the
    flag is "local" when fewer than two starts agree on the best value.
    """
    n = int(n)
    if not (2 <= n <= 64):
        raise ValueError("need 2 <= n <= 64")
    ivals = _circle_intervals(arcs)
    rng = np.random.default_rng(rng_seed)
    results = []
    for start in range(n_starts):
        theta = _start_config(ivals, n, rng, start)
        val, converged = _ascend(theta, ivals, sweeps)
        results.append((val, converged, tuple(np.sort(theta))))
    results.sort(key=lambda t: (-t[0], t[2]))
    best_val, best_converged, best_theta = results[0]
    flag = "" if best_converged else "local"
    log_dn = 2.0 * best_val / (n * (n - 1))
    return np.array(best_theta), mpf(math.exp(log_dn)), flag


def _circle_intervals(arcs: ArcSet):
    """Arcs as closed angle intervals [lo, hi] (hi may exceed pi to keep
    each arc contiguous)."""
    out = []
    for c, h in arcs.arcs:
        out.append((c - h, c + h))
    return out


def _start_config(ivals, n, rng, start_index):
    lengths = np.array([hi - lo for lo, hi in ivals])
    total = lengths.sum()
    if start_index == 0:
        # proportional placement with endpoint clustering, a good guess
        # for extremal configurations on arcs
        counts = np.maximum(1, np.round(lengths / total * n).astype(int))
        while counts.sum() > n:
            counts[np.argmax(counts)] -= 1
        while counts.sum() < n:
            counts[np.argmax(lengths / counts)] += 1
        pts = []
        for (lo, hi), k in zip(ivals, counts):
            j = np.arange(1, k + 1)
            x = np.cos((2 * j - 1) * np.pi / (2 * k))  # Chebyshev nodes
            pts.extend(((lo + hi) / 2 + (hi - lo) / 2 * x).tolist())
        return np.array(pts[:n])
    # random placement proportional to arc length
    pts = []
    for _ in range(n):
        u = rng.random() * total
        for (lo, hi), ln in zip(ivals, lengths):
            if u <= ln:
                pts.append(lo + u)
                break
            u -= ln
    return np.array(pts)


def _pair_energy(theta):
    d = np.abs(2.0 * np.sin((theta[:, None] - theta[None, :]) / 2.0))
    iu = np.triu_indices(len(theta), 1)
    vals = d[iu]
    if np.any(vals <= 0):
        return -np.inf
    return np.log(vals).sum()


def _coord_energy(theta, j, x):
    other = np.delete(theta, j)
    d = np.abs(2.0 * np.sin((x - other) / 2.0))
    if np.any(d <= 0):
        return -np.inf
    return np.log(d).sum()


def _ascend(theta, ivals, sweeps):
    n = len(theta)
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    moved = math.inf
    for sweep in range(sweeps):
        moved = 0.0
        for j in range(n):
            best_x, best_v = theta[j], _coord_energy(theta, j, theta[j])
            for lo, hi in ivals:
                a, b = lo, hi
                fa = _coord_energy(theta, j, a + 1e-13)
                fb = _coord_energy(theta, j, b - 1e-13)
                c = b - gr * (b - a)
                d = a + gr * (b - a)
                fc = _coord_energy(theta, j, c)
                fd = _coord_energy(theta, j, d)
                for _ in range(60):
                    if fc >= fd:
                        b, d, fd = d, c, fc
                        c = b - gr * (b - a)
                        fc = _coord_energy(theta, j, c)
                    else:
                        a, c, fc = c, d, fd
                        d = a + gr * (b - a)
                        fd = _coord_energy(theta, j, d)
                for x, v in ((c, fc), (d, fd), (lo, fa), (hi, fb)):
                    if v > best_v:
                        best_x, best_v = x, v
            moved = max(moved, abs(best_x - theta[j]))
            theta[j] = best_x
        if moved < 1e-8:
            break
    return _pair_energy(theta), moved < 1e-8
