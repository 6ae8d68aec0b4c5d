"""Hand-built reference profiles used by tests, docs and the selftest suites."""

from __future__ import annotations

from fractions import Fraction

from .profile import LensData, Profile, family, make_profile, turning

F = Fraction


def profile_a() -> Profile:
    """Six families (1,0)+ (0,1)+ (0,1)- (1,0)- (1,0)+ (-1,0)+ with markers.

    Actions come from an explicit support polyline, so every differential pair
    strictly decreases the action.  The sweep passes an unrecorded (0,1)
    direction between the last two families.
    """
    nodes = [
        family(F(1, 8), (1, 0), 1, 8),
        family(F(2, 8), (0, 1), 1, 5),
        turning(F(5, 16), (-1, 3)),          # max marker
        family(F(3, 8), (0, 1), -1, 4),
        family(F(4, 8), (1, 0), -1, 3),
        turning(F(9, 16), (2, -1)),          # min marker
        family(F(5, 8), (1, 0), 1, 4),
        family(F(6, 8), (-1, 0), 1, 8),
    ]
    return make_profile("interval", nodes, F(9))


def square_circle_profile(actions=(2, 2, 2, 2), L=None) -> Profile:
    """Everywhere-convex winding-1 circle profile with the four axis directions."""
    a0, a1, a2, a3 = (F(a) for a in actions)
    nodes = [
        family(F(0), (1, 0), 1, a0),
        family(F(1, 4), (0, 1), 1, a1),
        family(F(1, 2), (-1, 0), 1, a2),
        family(F(3, 4), (0, -1), 1, a3),
    ]
    bound = L if L is not None else min(a0 + a1, a1 + a2, a2 + a3, a3 + a0)
    return make_profile("circle", nodes, bound, winding=1)


def two_lift_circle_profile() -> Profile:
    """Winding-1 circle profile with two concave dips hosting (-1,1) and (-1,-1).

    Supports the wrap-around pair with two relevant lifts differing only by
    the hyperbolic placement at x0 versus x0+1.
    """
    nodes = [
        family(F(0), (1, 0), 1, 4),
        turning(F(1, 8), (-2, 1)),           # max at ~153 degrees
        family(F(2, 8), (-1, 1), -1, 3),
        turning(F(3, 8), (-2, 3)),           # min at ~124 degrees
        turning(F(4, 8), (-1, -2)),          # max at ~243 degrees
        family(F(5, 8), (-1, -1), -1, 3),
        turning(F(6, 8), (-3, -2)),          # min at ~214 degrees
    ]
    return make_profile("circle", nodes, F(6), winding=1)


def s3_lens_profile(phi0=F(5, 16), phi1=F(7, 16), interior=((1, 1),),
                    interior_actions=(2,), a_e0=F(1), a_e1=F(1), L=F(5, 2)) -> Profile:
    """An S^3-type lens profile (p = 1) in the standard frame.

    u0 = (0,-1), v0 = (1,0); u1 = (-1,0), v1 = (0,1); interior families sweep
    the first quadrant between the boundary directions (1, phi0)~ and (phi1, 1)~.
    """
    lens = LensData((0, -1), (1, 0), phi0, a_e0, (-1, 0), (0, 1), phi1, a_e1)
    nodes = [family(F(i + 1, len(interior) + 1), v, 1, F(a))
             for i, (v, a) in enumerate(zip(interior, interior_actions))]
    return make_profile("lens", nodes, L, lens=lens)


def s3_triangle_profile(L=F(2)) -> Profile:
    """S^3 lens profile whose interior sweep contains the (1,0) direction.

    phi0 = -5/16 puts the boundary direction (16,-5) below the first axis, so
    the pair ({h at the (1,0) family}, empty) closes up through a single
    d1 = 1 edge into an index-one region.  Actions come from the polyline
    (1,0) -> (1,1) -> (0,2).
    """
    lens = LensData((0, -1), (1, 0), F(-5, 16), F(1), (-1, 0), (0, 1), F(7, 16), F(2))
    nodes = [
        family(F(1, 3), (1, 0), 1, 1),
        family(F(2, 3), (1, 1), 1, 2),
    ]
    return make_profile("lens", nodes, L, lens=lens)


def s3_chain_profile(L=F(4)) -> Profile:
    """Convex S^3 lens profile satisfying the companion sign conditions.

    Interior families (2,1), (1,1), (1,2) lie strictly inside the open first
    quadrant; actions come from the support polyline starting at (1,0) with a
    small push along the boundary direction (16,5), so the honest bound
    exceeds 4 and the class-0 window under L=4 holds well over 20 generators.
    """
    lens = LensData((0, -1), (1, 0), F(5, 16), F(1),
                    (-1, 0), (0, 1), F(7, 16), F(235, 128))
    nodes = [
        family(F(1, 4), (2, 1), 1, F(19, 8)),
        family(F(2, 4), (1, 1), 1, F(31, 16)),
        family(F(3, 4), (1, 2), 1, F(61, 16)),
    ]
    return make_profile("lens", nodes, L, lens=lens)


def s1s2_profile(interior=(((1, 1), 2), ((0, 1), 2), ((-1, 1), 2)),
                 phi0=F(5, 16), phi1=F(5, 16), L=F(5, 2)) -> Profile:
    """An S^1 x S^2 profile: u0 = u1 = (0,-1), interior sweeping the upper half."""
    lens = LensData((0, -1), (1, 0), phi0, F(1), (0, -1), (-1, 0), phi1, F(1))
    nodes = [family(F(i + 1, len(interior) + 1), v, 1, F(a))
             for i, (v, a) in enumerate(interior)]
    return make_profile("s1s2", nodes, L, lens=lens)
