"""Profiles built from explicit rational support curves, and random samplers.

A profile is *realizable* when its directions, convexities and actions come
from an honest curve a with a x a' > 0; then theorem-level facts (the action
filtration, d^2 = 0) hold on the nose.  The builders here construct a as a
polyline: a segment with tangent parallel to rot90(v) carries the orbit
family of direction v with action <a, v>, constant along the segment.
Segments whose two corner turns disagree become turning markers.  Every
direction swept at a corner or marker is an unrecorded family; the honest
action bound is the minimum action over all of those.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .lattice import (
    Lifted, Vec, add, cmp_arg, cross, dot, max_lift_below, min_lift_above,
    primitive_part, scale, sub,
)
from .profile import (
    FAMILY, TURNING, LensData, Node, Profile, family, make_profile, turning,
)

Point = tuple[Fraction, Fraction]


def _f(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def _pairing(p: Point, v: Vec) -> Fraction:
    return p[0] * v[0] + p[1] * v[1]


def _primitive_dir(step) -> Vec:
    """Primitive integer direction of a rational vector."""
    a, b = Fraction(step[0]), Fraction(step[1])
    den = a.denominator * b.denominator
    return primitive_part((int(a * den), int(b * den)))


def min_action_in_cone(p: Point, u: Vec, w: Vec) -> Fraction:
    """Minimal <p, d> over non-zero lattice d strictly inside the cone (u, w).

    Requires <p,u> > 0, <p,w> > 0 and cross(u,w) > 0 (a corner swept by less
    than half a turn).  Empty interiors report a huge sentinel value.
    """
    fu, fw = _pairing(p, u), _pairing(p, w)
    if fu <= 0 or fw <= 0 or cross(u, w) <= 0:
        raise ValueError("corner must subtend a positive cone with positive actions")
    f0 = fu + fw
    bx = int(max(abs(f0 / fu * u[0]), abs(f0 / fw * w[0]))) + 1
    by = int(max(abs(f0 / fu * u[1]), abs(f0 / fw * w[1]))) + 1
    best = None
    for dx in range(-bx, bx + 1):
        for dy in range(-by, by + 1):
            d = (dx, dy)
            if d == (0, 0) or cross(u, d) <= 0 or cross(d, w) <= 0:
                continue
            val = _pairing(p, d)
            if best is None or val < best:
                best = val
    return best if best is not None else f0 * 10 ** 6


@dataclass
class PolylineProfile:
    profile: Profile
    honest_L: Fraction
    family_positions: list[Fraction]


def _segments(vertices: list[Point], closed: bool):
    """(start, end, step) per polyline segment, collinear runs merged."""
    pts = [_f(p) for p in vertices]
    if closed and pts[0] != pts[-1]:
        pts.append(pts[0])
    segs = []
    for a, b in zip(pts, pts[1:]):
        step = sub(b, a)
        if step == (0, 0):
            raise ValueError("repeated polyline vertex")
        segs.append([a, b, step])
    merged = [segs[0]]
    for a, b, step in segs[1:]:
        pstep = merged[-1][2]
        if cross(pstep, step) == 0 and dot(pstep, step) > 0:
            merged[-1][1] = b
            merged[-1][2] = add(pstep, step)
        else:
            merged.append([a, b, step])
    if closed and len(merged) > 1:
        if cross(merged[-1][2], merged[0][2]) == 0 and dot(merged[-1][2], merged[0][2]) > 0:
            first = merged.pop(0)
            merged[-1][1] = first[1]
            merged[-1][2] = add(merged[-1][2], first[2])
    return [tuple(m) for m in merged]


def polyline_winding(tangents: list[Vec]) -> int:
    """Full turns of a closed tangent sequence (no U-turn corners allowed)."""
    lift = Lifted(_primitive_dir(tangents[0]), 0)
    for t in list(tangents[1:]) + [tangents[0]]:
        t = _primitive_dir(t)
        c = cross(lift.v, t)
        if c > 0:
            lift = min_lift_above(lift, t)
        elif c < 0:
            lift = max_lift_below(lift, t)
        elif t != lift.v:
            raise ValueError("U-turn corner in polyline")
    return lift.winding


def profile_from_polyline(vertices, geometry: str = "interval", L=None,
                          lens: LensData | None = None,
                          positions: list[Fraction] | None = None) -> PolylineProfile:
    """Build a profile from a support polyline (see module docstring)."""
    closed = geometry == "circle"
    segs = _segments(list(vertices), closed)
    n = len(segs)
    if n < 2:
        raise ValueError("polyline needs at least two segments")
    data = []
    for a, b, step in segs:
        t = _primitive_dir(step)
        v = (t[1], -t[0])
        act = _pairing(a, v)
        if act <= 0:
            raise ValueError(f"segment at {a} has non-positive action {act}")
        data.append((a, b, v, act))

    def turn(i, j) -> int:
        t = cross(_primitive_dir(segs[i][2]), _primitive_dir(segs[j][2]))
        if t == 0:
            raise ValueError("U-turn corner in polyline")
        return t

    kinds: list = []
    for i in range(n):
        turns = []
        if closed or i > 0:
            turns.append(turn((i - 1) % n, i))
        if closed or i + 1 < n:
            turns.append(turn(i, (i + 1) % n))
        signs = {t > 0 for t in turns}
        if len(signs) == 2:
            kinds.append(TURNING)
        else:
            kinds.append((FAMILY, 1 if signs == {True} else -1))

    invisible = []
    for i in range(n):
        if kinds[i] == TURNING:
            invisible.append(data[i][3])
        if not closed and i + 1 >= n:
            continue
        j = (i + 1) % n
        u, w = data[i][2], data[j][2]
        corner = data[i][1]
        if turn(i, j) > 0:
            invisible.append(min_action_in_cone(corner, u, w))
        else:
            invisible.append(min_action_in_cone(corner, w, u))
    honest = min(invisible) if invisible else max(d[3] for d in data) + 1
    bound = Fraction(L) if L is not None else honest

    if positions is None:
        if closed:
            positions = [Fraction(i, n) for i in range(n)]
        else:
            positions = [Fraction(i + 1, n + 1) for i in range(n)]
    nodes = []
    fam_pos = []
    for pos, (a, b, v, act), kind in zip(positions, data, kinds):
        if kind == TURNING:
            nodes.append(turning(pos, v))
        else:
            nodes.append(family(pos, v, kind[1], act))
            fam_pos.append(pos)

    winding = polyline_winding([s[2] for s in segs]) if closed else 0
    prof = make_profile(geometry, nodes, bound, winding=winding, lens=lens)
    return PolylineProfile(prof, honest, fam_pos)


# ---------------------------------------------------------------------------
# Random realizable profiles
# ---------------------------------------------------------------------------

_DIR_WHEEL = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1),
              (-1, 0), (-2, -1), (-1, -1), (-1, -2), (0, -1), (1, -2), (1, -1), (2, -1)]


def _closed_convex_steps(rng: random.Random, count: int) -> list[Vec]:
    """Tangent steps of a closed convex CCW polygon (sorted by angle, sum 0)."""
    idx = sorted(rng.sample(range(len(_DIR_WHEEL)), count))
    dirs = [_DIR_WHEEL[i] for i in idx]
    steps = []
    for v in dirs:
        l = rng.randint(1, 3)
        steps.append(scale(l, (-v[1], v[0])))
        steps.append(scale(l, (v[1], -v[0])))
    steps.sort(key=cmp_to_key(cmp_arg))
    return steps


def _walk(start: Point, steps: list[Vec]) -> list[Point]:
    verts = [_f(start)]
    for st in steps:
        verts.append((verts[-1][0] + st[0], verts[-1][1] + st[1]))
    return verts


def random_convex_polygon(rng: random.Random, count=None) -> list[Point]:
    """Vertices of a closed CCW convex lattice polygon around the origin."""
    count = count or rng.randint(3, 6)
    steps = _closed_convex_steps(rng, count)
    verts = _walk((0, 0), steps)
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    return [(v[0] - cx, v[1] - cy) for v in verts[:-1]]


def _dented(rng: random.Random, verts: list[Point]) -> list[Point]:
    """Pull one vertex inward, creating a concave stretch."""
    n = len(verts)
    i = rng.randrange(n)
    v = verts[i]
    out = list(verts)
    out[i] = (v[0] * Fraction(1, 2), v[1] * Fraction(1, 2))
    return out


def _stretch(rng: random.Random, verts: list[Point]) -> list[Point]:
    """Anisotropic rational stretch: widens the spread of family actions."""
    kx = Fraction(rng.choice((1, 1, 2, 3, 4)))
    ky = Fraction(rng.choice((1, 1, 2, 3, 4)))
    shear = rng.choice((0, 0, 1, -1))
    return [(kx * (x + shear * y), ky * y) for x, y in verts]


def _richness(prof: Profile) -> Fraction:
    acts = [f.action for f in prof.families() if f.action < prof.L]
    return max((prof.L / a for a in acts), default=Fraction(0))


def random_interval_profile(rng: random.Random, max_families=6,
                            richness=3) -> Profile:
    """A realizable interval profile: an arc of a convex polygon, maybe dented."""
    best = None
    for _ in range(500):
        poly = _stretch(rng, random_convex_polygon(rng))
        n = len(poly)
        k = rng.randint(3, max(3, min(n - 1, max_families)))
        start = rng.randrange(n)
        arc = [poly[(start + i) % n] for i in range(k + 1)]
        for _dent in range(rng.choice((0, 1, 1, 2))):
            if len(arc) < 4:
                break
            i = rng.randrange(1, len(arc) - 1)
            arc[i] = (arc[i][0] * Fraction(2, 3), arc[i][1] * Fraction(2, 3))
        try:
            built = profile_from_polyline(arc, "interval")
        except ValueError:
            continue
        prof = built.profile
        if prof.diagnostics:
            continue
        if len([f for f in prof.families() if f.action < prof.L]) < 2:
            continue
        if _richness(prof) >= richness:
            return prof
        if best is None or _richness(prof) > _richness(best):
            best = prof
    if best is None:
        raise RuntimeError("failed to sample an interval profile")
    return best


def random_circle_profile(rng: random.Random, winding=1, richness=3) -> Profile:
    """A realizable circle profile of winding 1 or 2."""
    best = None
    for _ in range(500):
        steps = _closed_convex_steps(rng, rng.randint(3, 5))
        if winding == 2:
            steps = steps + _closed_convex_steps(rng, rng.randint(3, 5))
        verts = _walk((0, 0), steps)
        xs = [v[0] for v in verts]
        ys = [v[1] for v in verts]
        cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
        verts = [(v[0] - cx, v[1] - cy) for v in verts[:-1]]
        verts = _stretch(rng, verts)
        if winding == 1 and rng.random() < 0.4:
            verts = _dented(rng, verts)
        try:
            built = profile_from_polyline(verts, "circle")
        except (ValueError, AssertionError):
            continue
        prof = built.profile
        if prof.diagnostics or prof.winding != winding:
            continue
        if len([f for f in prof.families() if f.action < prof.L]) < 3:
            continue
        if _richness(prof) >= richness:
            return prof
        if best is None or _richness(prof) > _richness(best):
            best = prof
    if best is None:
        raise RuntimeError("failed to sample a circle profile")
    return best


def random_lens_profile(rng: random.Random, s1s2=False) -> Profile:
    """A realizable lens (or s1s2) profile built around the standard S^3 frame."""
    from .lattice import complement_to_basis

    for _ in range(600):
        if s1s2:
            u0 = u1 = (0, -1)
        else:
            u0 = (0, -1)
            u1 = (-1, -rng.randint(0, 2))
        v0 = complement_to_basis(u0, 1)
        v1 = complement_to_basis(u1, -1)
        den = rng.choice((11, 13, 16, 17))
        phi0 = Fraction(rng.randint(1, den + 4), den)
        phi1 = Fraction(rng.randint(1, den + 4), den)
        d0 = primitive_part(sub(scale(phi0.denominator, v0), scale(phi0.numerator, u0)))
        d1 = primitive_part(sub(scale(phi1.denominator, v1), scale(phi1.numerator, u1)))
        if cross(d0, d1) <= 0:
            continue
        pool = [d for d in _DIR_WHEEL + [(1, 3), (3, 1), (2, 3), (3, 2)]
                if cross(d0, d) > 0 and cross(d, d1) > 0]
        if len(pool) < 2:
            continue
        count = rng.randint(2, min(4, len(pool)))
        dirs = sorted(rng.sample(pool, count),
                      key=cmp_to_key(lambda a, b: -cross(a, b)))
        a_e0 = Fraction(rng.randint(1, 3))
        a0_pt: Point = (a_e0 * (-u0[1]), a_e0 * u0[0])   # a(0) = A(e0) * rot90(u0)
        # strictness push along the boundary direction d0 (an unrecorded
        # family of action <a(0), d0>, large when phi0 has a big denominator)
        eps = Fraction(1, 16)
        cur = (a0_pt[0] - eps * d0[1], a0_pt[1] + eps * d0[0])
        inv = [_pairing(a0_pt, d0)]
        pts = [cur]
        acts = []
        ok = True
        for d in dirs:
            act = _pairing(cur, d)
            if act <= 0:
                ok = False
                break
            acts.append(act)
            t = (-d[1], d[0])
            step = Fraction(rng.randint(1, 4), 4)
            cur = (cur[0] + step * t[0], cur[1] + step * t[1])
            pts.append(cur)
        if not ok:
            continue
        # land on the ray of a(1) ~ -rot90(u1) along the d1 direction
        w = (u1[1], -u1[0])
        t1 = (-d1[1], d1[0])
        denom = cross(w, t1)
        if denom == 0:
            continue
        s = Fraction(-cross(w, pts[-1]), denom)
        if s <= 0:
            continue
        inv.append(_pairing(pts[-1], d1))
        end = (pts[-1][0] + s * t1[0], pts[-1][1] + s * t1[1])
        a_e1 = _pairing(end, v1)
        if a_e1 <= 0:
            continue
        # corner k sits at pts[k]; the last interior corner at pts[count]
        chain = [d0] + dirs + [d1]
        corner_pts = pts[:count + 1]
        try:
            for i in range(len(chain) - 1):
                if cross(chain[i], chain[i + 1]) <= 0:
                    raise ValueError
                inv.append(min_action_in_cone(corner_pts[i], chain[i], chain[i + 1]))
        except ValueError:
            continue
        bound = min(min(inv), 4 * min([a_e0, a_e1] + acts))
        lens = LensData(u0, v0, phi0, a_e0, u1, v1, phi1, a_e1)
        nodes = [family(Fraction(i + 1, count + 1), d, 1, act)
                 for i, (d, act) in enumerate(zip(dirs, acts))]
        prof = make_profile("s1s2" if s1s2 else "lens", nodes, bound, lens=lens)
        if prof.diagnostics:
            continue
        if not [f for f in prof.families() if f.action < prof.L]:
            continue
        return prof
    raise RuntimeError("failed to sample a lens profile")
