"""Exact integer lattice geometry: cross products, primitive vectors, lifted angles.

All angular reasoning is done without floating point.  A direction is a
non-zero integer vector; a *lifted* direction additionally carries an integer
winding, so that its real angle is ``2*pi*winding + arg(v)`` with
``arg(v) in [0, 2*pi)``.  Comparisons reduce to sign tests on cross products
and quadrant indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

Vec = tuple[int, int]


def cross(u: Vec, w: Vec) -> int:
    """Standard cross product (a,b) x (c,d) = ad - bc."""
    return u[0] * w[1] - u[1] * w[0]


def dot(u: Vec, w: Vec) -> int:
    return u[0] * w[0] + u[1] * w[1]


def neg(u: Vec) -> Vec:
    return (-u[0], -u[1])


def add(u: Vec, w: Vec) -> Vec:
    return (u[0] + w[0], u[1] + w[1])


def sub(u: Vec, w: Vec) -> Vec:
    return (u[0] - w[0], u[1] - w[1])


def scale(k: int, u: Vec) -> Vec:
    return (k * u[0], k * u[1])


def rot90(u: Vec) -> Vec:
    """Rotate by +90 degrees."""
    return (-u[1], u[0])


def is_primitive(v: Vec) -> bool:
    return v != (0, 0) and gcd(abs(v[0]), abs(v[1])) == 1


def primitive_part(v: Vec) -> Vec:
    """The primitive vector on the same ray as v (v must be non-zero)."""
    if v == (0, 0):
        raise ValueError("zero vector has no direction")
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def parallel_coeff(s: Vec, v: Vec):
    """Return integer k with s = k*v, or None if s is not a multiple of v.

    v must be primitive; then any lattice multiple of v has an integer
    coefficient.
    """
    if s == (0, 0):
        return 0
    if cross(s, v) != 0:
        return None
    if v[0] != 0:
        k, r = divmod(s[0], v[0])
        if r != 0:
            return None
    else:
        k, r = divmod(s[1], v[1])
        if r != 0:
            return None
    return k if scale(k, v) == s else None


def same_ray(u: Vec, w: Vec) -> bool:
    """True iff u and w are positive multiples of each other (both non-zero)."""
    return cross(u, w) == 0 and dot(u, w) > 0


def _half_index(v: Vec) -> int:
    """0 if arg(v) in [0, pi), 1 if arg(v) in [pi, 2*pi)."""
    x, y = v
    if y > 0 or (y == 0 and x > 0):
        return 0
    return 1


def cmp_arg(u: Vec, w: Vec) -> int:
    """Compare arguments in [0, 2*pi): -1, 0, +1.  Both non-zero."""
    hu, hw = _half_index(u), _half_index(w)
    if hu != hw:
        return -1 if hu < hw else 1
    c = cross(u, w)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


@dataclass(frozen=True, order=False)
class Lifted:
    """A direction lifted to the universal cover of the circle of directions."""

    v: Vec
    winding: int = 0

    def __post_init__(self):
        if not is_primitive(self.v):
            raise ValueError(f"lifted direction must be primitive, got {self.v}")

    def antipode(self) -> "Lifted":
        """The lifted direction at angle exactly +pi from this one."""
        return Lifted(neg(self.v), self.winding + (1 if _half_index(self.v) == 1 else 0))

    def shift(self, turns: int) -> "Lifted":
        return Lifted(self.v, self.winding + turns)


def cmp_lifted(a: Lifted, b: Lifted) -> int:
    if a.winding != b.winding:
        return -1 if a.winding < b.winding else 1
    return cmp_arg(a.v, b.v)


def lifted_le(a: Lifted, b: Lifted) -> bool:
    return cmp_lifted(a, b) <= 0


def lifted_lt(a: Lifted, b: Lifted) -> bool:
    return cmp_lifted(a, b) < 0


def min_lift_above(prev: Lifted, v: Vec, strict: bool = True) -> Lifted:
    """Smallest lift of direction v (strictly) above prev."""
    v = primitive_part(v)
    c = cmp_arg(v, prev.v)
    if c > 0 or (not strict and c == 0):
        return Lifted(v, prev.winding)
    return Lifted(v, prev.winding + 1)


def max_lift_below(prev: Lifted, v: Vec, strict: bool = True) -> Lifted:
    """Largest lift of direction v (strictly) below prev."""
    v = primitive_part(v)
    c = cmp_arg(v, prev.v)
    if c < 0 or (not strict and c == 0):
        return Lifted(v, prev.winding)
    return Lifted(v, prev.winding - 1)


def run_within_halfplane(lo: Lifted, hi: Lifted, s: Vec,
                         strict_lo: bool = False, strict_hi: bool = False) -> bool:
    """Exact check that every direction in the lifted arc [lo, hi] satisfies
    cross(direction, s) >= 0.

    ``s`` is a non-zero lattice vector.  The good set of directions is the
    closed half-turn window [arg(s) - pi, arg(s)] modulo 2*pi; the arc fits
    iff its endpoints are good, its length is at most pi, and it is not the
    degenerate length-pi arc whose interior is the open bad half-turn.
    ``strict_*`` additionally demands a strict inequality at that endpoint
    (used for turning markers standing in for irrational slopes).

    Interior points of an arc passing this check satisfy the inequality
    strictly except where the arc endpoint itself is parallel to +-s.
    """
    if cmp_lifted(lo, hi) > 0:
        raise ValueError("arc endpoints out of order")
    c_lo = cross(lo.v, s)
    c_hi = cross(hi.v, s)
    if c_lo < 0 or (strict_lo and c_lo == 0):
        return False
    if c_hi < 0 or (strict_hi and c_hi == 0):
        return False
    anti = lo.antipode()
    c = cmp_lifted(hi, anti)
    if c > 0:
        return False
    if c == 0 and same_ray(lo.v, s):
        # the arc is exactly [arg(s), arg(s)+pi]: its interior is the bad arc
        return False
    return True


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def complement_to_basis(u: Vec, det_sign: int = 1) -> Vec:
    """Some v with det(u|v) = det_sign, for primitive u."""
    g, x, y = ext_gcd(u[0], u[1])
    assert g == 1
    # det(u | v) = u0*v1 - u1*v0 = det_sign; take v = det_sign * (-y, x)
    return (-det_sign * y, det_sign * x)


def solve_2x2(u: Vec, w: Vec, target: Vec):
    """Solve a*u + b*w = target over the rationals; return (a, b) as Fractions.

    Raises ZeroDivisionError if u, w are linearly dependent.
    """
    from fractions import Fraction

    d = cross(u, w)
    if d == 0:
        raise ZeroDivisionError("degenerate lattice basis")
    a = Fraction(cross(target, w), d)
    b = Fraction(cross(u, target), d)
    return a, b
