"""Exact planar predicates on rational or integer coordinates.

Everything here works on plain tuples ``(x, y)`` whose entries are ``int`` or
``Fraction``; no floating point enters a decision. The audit code scales a whole
picture to integers first (see :func:`integer_scale`) because ``int`` arithmetic
is an order of magnitude faster than ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction


def orient(a, b, c):
    """Twice the signed area of ``abc``: positive for a left turn."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def sign(x) -> int:
    return (x > 0) - (x < 0)


def on_segment(p, a, b) -> bool:
    """``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _lerp(a, b, num, den):
    # a + (b - a) * num / den as exact Fractions
    return (
        Fraction(a[0]) + Fraction((b[0] - a[0]) * num, den),
        Fraction(a[1]) + Fraction((b[1] - a[1]) * num, den),
    )


def segment_intersection(a, b, c, d):
    """Intersection of closed segments ``ab`` and ``cd``.

    Returns ``None``, ``("point", p)`` or ``("overlap", (p, q))`` for a collinear
    overlap of positive length. Points come back as Fraction pairs.
    """
    if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
        return None
    if max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]):
        return None
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if d1 == 0 and d2 == 0:
        # collinear: project on the dominant axis
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a, b), key=lambda p: p[axis])
        lo2, hi2 = sorted((c, d), key=lambda p: p[axis])
        lo = lo1 if lo1[axis] >= lo2[axis] else lo2
        hi = hi1 if hi1[axis] <= hi2[axis] else hi2
        if lo[axis] > hi[axis]:
            return None
        lo = (Fraction(lo[0]), Fraction(lo[1]))
        hi = (Fraction(hi[0]), Fraction(hi[1]))
        if lo == hi:
            return ("point", lo)
        return ("overlap", (lo, hi))
    if sign(d1) * sign(d2) > 0 or sign(d3) * sign(d4) > 0:
        return None
    if d1 == 0:
        return ("point", (Fraction(a[0]), Fraction(a[1])))
    if d2 == 0:
        return ("point", (Fraction(b[0]), Fraction(b[1])))
    if d3 == 0:
        return ("point", (Fraction(c[0]), Fraction(c[1])))
    if d4 == 0:
        return ("point", (Fraction(d[0]), Fraction(d[1])))
    return ("point", _lerp(a, b, d1, d1 - d2))


def segments_meet(a, b, c, d) -> bool:
    return segment_intersection(a, b, c, d) is not None


def point_segment_dist2(p, a, b) -> Fraction:
    """Squared distance from ``p`` to the closed segment ``ab`` (exact)."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    px, py = p[0] - a[0], p[1] - a[1]
    den = dx * dx + dy * dy
    if den == 0:
        return Fraction(px * px + py * py)
    t = Fraction(px * dx + py * dy, 1) / den
    if t <= 0:
        return Fraction(px * px + py * py)
    if t >= 1:
        qx, qy = p[0] - b[0], p[1] - b[1]
        return Fraction(qx * qx + qy * qy)
    cx, cy = px - t * dx, py - t * dy
    return Fraction(cx * cx + cy * cy)


def segment_dist2(a, b, c, d) -> Fraction:
    """Squared distance between closed segments; zero iff they meet."""
    if segments_meet(a, b, c, d):
        return Fraction(0)
    return min(
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    )


def dist2(p, q) -> Fraction:
    return Fraction((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)


def sqrt_lower(x: Fraction, bits: int = 40) -> Fraction:
    """A rational ``r`` with ``0 <= r <= sqrt(x)`` and relative error about ``2**-bits``."""
    x = Fraction(x)
    if x <= 0:
        return Fraction(0)
    # choose a scale 4**s so that the integer square root has ``bits`` significant bits
    s = max(0, bits - (x.numerator.bit_length() - x.denominator.bit_length()) // 2)
    scaled = (x.numerator << (2 * s)) // x.denominator
    return Fraction(math.isqrt(scaled), 1 << s)


def sqrt_upper(x: Fraction, bits: int = 40) -> Fraction:
    """A rational ``r >= sqrt(x)`` close to it."""
    x = Fraction(x)
    if x <= 0:
        return Fraction(0)
    r = sqrt_lower(x, bits)
    step = Fraction(1, 1 << max(bits, 1)) * max(r, Fraction(1, 1 << bits))
    while r * r < x:
        r += step
    return r


def approx_unit(v, bits: int = 30):
    """``v`` divided by a rational approximation of its length."""
    n2 = Fraction(v[0]) ** 2 + Fraction(v[1]) ** 2
    if n2 == 0:
        raise ValueError("zero vector has no direction")
    r = Fraction(math.sqrt(float(n2))).limit_denominator(1 << bits)
    if r == 0:
        r = sqrt_lower(n2, bits) or Fraction(1, 1 << bits)
    return (Fraction(v[0]) / r, Fraction(v[1]) / r)


def snap(x: Fraction, k: int) -> Fraction:
    """Round to the dyadic grid ``2**-k``."""
    return Fraction(round(x * (1 << k)), 1 << k)


def snap_point(p, k: int):
    return (snap(p[0], k), snap(p[1], k))


def circle_point(center, radius: Fraction, theta: float, bits: int = 24):
    """Exact rational point on the circle at (approximately) angle ``theta``.

    Uses ``((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`` with a rational ``t`` close
    to ``tan(theta / 2)``; the angle ``pi`` is handled separately.
    """
    theta = math.remainder(theta, 2 * math.pi)
    if abs(abs(theta) - math.pi) < 1e-12:
        return (Fraction(center[0]) - radius, Fraction(center[1]))
    t = Fraction(math.tan(theta / 2)).limit_denominator(1 << bits)
    den = 1 + t * t
    return (
        Fraction(center[0]) + radius * (1 - t * t) / den,
        Fraction(center[1]) + radius * 2 * t / den,
    )


def integer_scale(points) -> int:
    """Least common multiple of all coordinate denominators."""
    den = 1
    for x, y in points:
        den = math.lcm(den, Fraction(x).denominator, Fraction(y).denominator)
    return den


def to_int(p, scale: int):
    return (int(Fraction(p[0]) * scale), int(Fraction(p[1]) * scale))
