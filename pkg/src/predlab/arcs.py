"""Finite unions of closed arcs of the unit circle.

Angles live in the fundamental domain (-pi, pi]; arcs crossing the cut at
+-pi are handled on the circle, so rotations and wrap-around behave
uniformly.  Disjointness and canonical ordering are enforced at
construction, and touching arcs are merged, which makes configurations
that degenerate into one another (for instance a symmetric pair whose gap
shrinks to zero) compare equal to their limit shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

TWO_PI = 2.0 * math.pi

# Endpoints closer than this are considered touching and get merged.
_MERGE_TOL = 1e-12


class ArcSetError(ValueError):
    pass


def norm_angle(theta: float) -> float:
    """Map an angle into (-pi, pi]."""
    t = math.fmod(float(theta), TWO_PI)
    if t <= -math.pi:
        t += TWO_PI
    elif t > math.pi:
        t -= TWO_PI
    return 0.0 if t == 0.0 else t


@dataclass(frozen=True)
class ArcSet:
    """Canonical finite union of disjoint closed arcs.

    ``arcs`` is a tuple of (center, half_length) pairs sorted by center,
    with centers in (-pi, pi] and half lengths in (0, pi].  Sets built by
    the named constructors carry a ``pattern`` tag holding the exact
    construction parameters, so the closed-form transfinite diameter can
    avoid a lossy round trip through the canonical arc geometry; equality
    ignores the tag.
    """

    arcs: tuple
    pattern: tuple = field(default=(), compare=False)

    # -- construction -------------------------------------------------

    @staticmethod
    def from_arcs(arcs) -> "ArcSet":
        items = []
        for center, half in arcs:
            center = norm_angle(center)
            half = float(half)
            if not (0.0 < half <= math.pi + _MERGE_TOL):
                raise ArcSetError(f"arc half-length must lie in (0, pi], got {half}")
            items.append((center, min(half, math.pi)))
        if not items:
            raise ArcSetError("an ArcSet needs at least one arc")
        total = sum(2.0 * h for _, h in items)
        if total >= TWO_PI - _MERGE_TOL:
            if total > TWO_PI + 1e-9:
                raise ArcSetError("total arc length exceeds the circle")
            return ArcSet(arcs=((0.0, math.pi),), pattern=("full",))
        merged = _merge_on_circle(items)
        return ArcSet(arcs=tuple(sorted(merged)))

    @staticmethod
    def full() -> "ArcSet":
        return ArcSet(arcs=((0.0, math.pi),), pattern=("full",))

    @staticmethod
    def single(center: float, length: float) -> "ArcSet":
        """One closed arc of the given total length centered at ``center``."""
        out = ArcSet.from_arcs([(center, length / 2.0)])
        if len(out.arcs) == 1 and not out.pattern:
            out = ArcSet(arcs=out.arcs, pattern=("single", float(length)))
        return out

    @staticmethod
    def symmetric_pair(center: float, arc_length: float, half_gap: float) -> "ArcSet":
        """Two arcs of equal length separated by an angular gap of
        2*half_gap, placed symmetrically about ``center``."""
        a, d = float(arc_length), float(half_gap)
        if a <= 0 or d < 0 or a + d > math.pi + _MERGE_TOL:
            raise ArcSetError("need arc_length > 0, half_gap >= 0, arc_length + half_gap <= pi")
        if d == 0.0:
            return ArcSet.single(center, 2.0 * a)
        out = ArcSet.from_arcs([(center + d + a / 2.0, a / 2.0),
                                (center - d - a / 2.0, a / 2.0)])
        if len(out.arcs) == 2:
            out = ArcSet(arcs=out.arcs, pattern=("pair", a, d))
        return out

    @staticmethod
    def symmetric_quad(center: float, arc_length: float, half_gap: float) -> "ArcSet":
        """Four arcs of equal length: a symmetric pair plus its antipodal
        mirror image."""
        a, d = float(arc_length), float(half_gap)
        if a <= 0 or d < 0 or a + d > math.pi / 2.0 + _MERGE_TOL:
            raise ArcSetError("need arc_length + half_gap <= pi/2 for the four-arc set")
        base = [(center + d + a / 2.0, a / 2.0), (center - d - a / 2.0, a / 2.0)]
        mirror = [(c + math.pi, h) for c, h in base]
        out = ArcSet.from_arcs(base + mirror)
        if len(out.arcs) == 4:
            out = ArcSet(arcs=out.arcs, pattern=("quad", a, d))
        elif len(out.arcs) == 2 and d == 0.0:
            out = ArcSet(arcs=out.arcs, pattern=("pair", 2.0 * a, (math.pi - 2.0 * a) / 2.0))
        return out

    @staticmethod
    def equispaced(k: int, arc_length: float, phase: float = 0.0) -> "ArcSet":
        """k arcs of equal length with equally spaced centers."""
        k = int(k)
        if k < 1:
            raise ArcSetError("need k >= 1")
        a = float(arc_length)
        if a <= 0 or k * a > TWO_PI + _MERGE_TOL:
            raise ArcSetError("arcs of that length cannot fit disjointly")
        out = ArcSet.from_arcs([(phase + j * TWO_PI / k, a / 2.0) for j in range(k)])
        if len(out.arcs) == k:
            out = ArcSet(arcs=out.arcs, pattern=("equispaced", k, a))
        return out

    # -- basic geometry ------------------------------------------------

    @property
    def lengths(self) -> tuple:
        return tuple(2.0 * h for _, h in self.arcs)

    @property
    def total_length(self) -> float:
        return sum(self.lengths)

    @property
    def is_full_circle(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0][1] >= math.pi - _MERGE_TOL

    def contains(self, theta: float) -> bool:
        t = norm_angle(theta)
        for c, h in self.arcs:
            d = abs(norm_angle(t - c))
            if d <= h + _MERGE_TOL:
                return True
        return False

    def gaps(self) -> list:
        """Angular lengths of the complementary gaps, in circular order."""
        if self.is_full_circle:
            return []
        ordered = sorted(self.arcs, key=lambda a: norm_angle(a[0] - a[1]))
        out = []
        for i, (c, h) in enumerate(ordered):
            c2, h2 = ordered[(i + 1) % len(ordered)]
            gap = (norm_angle(c2 - h2) - norm_angle(c + h)) % TWO_PI
            out.append(gap)
        return out

    def intervals(self) -> list:
        """Closed intervals [a, b] within [-pi, pi] covering the set.

        Arcs that cross the cut at +-pi are split in two, so every
        returned interval satisfies -pi <= a < b <= pi.
        """
        out = []
        for c, h in self.arcs:
            lo, hi = c - h, c + h
            if lo < -math.pi:
                out.append((-math.pi, hi))
                out.append((lo + TWO_PI, math.pi))
            elif hi > math.pi:
                out.append((lo, math.pi))
                out.append((-math.pi, hi - TWO_PI))
            else:
                out.append((lo, hi))
        return sorted((a, b) for a, b in out if b - a > 0)

    def rotated(self, theta0: float) -> "ArcSet":
        out = ArcSet.from_arcs([(c + theta0, h) for c, h in self.arcs])
        if self.pattern and len(out.arcs) == len(self.arcs):
            out = ArcSet(arcs=out.arcs, pattern=self.pattern)
        return out

    def is_conjugation_symmetric(self, tol: float = 1e-9) -> bool:
        """True when the set is invariant under theta -> -theta."""
        for c, h in self.arcs:
            target = norm_angle(-c)
            if not any(abs(norm_angle(c2 - target)) <= tol and abs(h2 - h) <= tol
                       for c2, h2 in self.arcs):
                return False
        return True

    def __str__(self) -> str:
        inner = ",".join(f"({c!r},{h!r})" for c, h in self.arcs)
        return f"[{inner}]"


def _merge_on_circle(items):
    """Sort arcs around the circle, reject overlaps, merge touching ones."""
    # (start, length) representation on the circle
    segs = sorted((norm_angle(c - h), 2.0 * h) for c, h in items)
    n = len(segs)
    if n > 1:
        # going once around, lengths plus gaps must close up to 2*pi;
        # any overlap inflates the apparent gap by a full turn
        total = sum(ln for _, ln in segs)
        for i in range(n):
            s, ln = segs[i]
            s2, _ = segs[(i + 1) % n]
            gap = (s2 - (s + ln)) % TWO_PI
            if gap > TWO_PI - _MERGE_TOL:
                gap = 0.0
            total += gap
        if total > TWO_PI + 1e-9:
            raise ArcSetError("arcs overlap; an ArcSet must be pairwise disjoint")
    # merge chains of touching arcs
    changed = True
    while changed and len(segs) > 1:
        changed = False
        for i in range(len(segs)):
            s, ln = segs[i]
            j = (i + 1) % len(segs)
            s2, ln2 = segs[j]
            gap = (s2 - (s + ln)) % TWO_PI
            if gap <= _MERGE_TOL or gap >= TWO_PI - _MERGE_TOL:
                merged = (s, ln + ln2)
                segs = [seg for k, seg in enumerate(segs) if k not in (i, j)]
                segs.append(merged)
                segs.sort()
                changed = True
                break
    out = []
    for s, ln in segs:
        out.append((norm_angle(s + ln / 2.0), ln / 2.0))
    return out
