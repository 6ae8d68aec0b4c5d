"""Orbit sets, association to decorated paths/regions, generator enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .lattice import Vec, add, cross, parallel_coeff, scale, solve_2x2, sub
from .paths import DPath, Edge, OffsetRegion, Pos, Region
from .profile import ExtendedLens, Profile, elliptic_end_path, extend_lens, orbit_action

_EXT_CACHE: dict[int, ExtendedLens] = {}


def extension_of(p: Profile) -> ExtendedLens:
    ext = _EXT_CACHE.get(id(p))
    if ext is None or ext.base is not p:
        ext = extend_lens(p)
        _EXT_CACHE[id(p)] = ext
    return ext


@dataclass(frozen=True)
class OrbitSet:
    """An admissible orbit set: per-family (m_e, m_h), plus lens endpoint orbits."""

    interior: tuple[tuple[Pos, int, int], ...] = ()
    m0: int = 0
    m1: int = 0

    def __post_init__(self):
        object.__setattr__(self, "interior",
                           tuple(sorted((Fraction(x), me, mh)
                                        for x, me, mh in self.interior if me + mh > 0)))

    def is_admissible(self) -> bool:
        return all(mh <= 1 for _, _, mh in self.interior) and self.m0 >= 0 and self.m1 >= 0

    def is_empty(self) -> bool:
        return not self.interior and self.m0 == 0 and self.m1 == 0

    def interior_map(self) -> dict[Pos, tuple[int, int]]:
        return {x: (me, mh) for x, me, mh in self.interior}

    def action(self, p: Profile) -> Fraction:
        return orbit_action(self.interior_map(), p, self.m0, self.m1)


EMPTY = OrbitSet()


def interior_path(gamma: OrbitSet, p: Profile) -> DPath:
    """The a-compatible decorated path of the interior orbits."""
    fams = {n.x: n for n in p.families()}
    edges = {}
    for x, me, mh in gamma.interior:
        nd = fams.get(x)
        if nd is None:
            raise ValueError(f"no orbit family at {x}")
        edges[x] = Edge(nd.v, nd.convex, me, mh)
    return DPath(edges)


def associate_path(gamma: OrbitSet, p: Profile) -> DPath:
    """The unique a-compatible decorated path of the orbit set.

    For lens/s1s2 geometries the endpoint multiplicities expand through the
    special-partition end paths on the extended profile.
    """
    core = interior_path(gamma, p)
    if p.geometry not in ("lens", "s1s2"):
        if gamma.m0 or gamma.m1:
            raise ValueError("endpoint orbits need a lens geometry")
        return core
    ext = extension_of(p)
    edges = dict(core.edges)
    edges.update(elliptic_end_path(0, gamma.m0, ext).edges)
    edges.update(elliptic_end_path(1, gamma.m1, ext).edges)
    return DPath(edges)


def class_of(gamma: OrbitSet, p: Profile):
    """Homology class: a lattice vector, or an integer residue for lens/s1s2."""
    total = (0, 0)
    fams = {n.x: n for n in p.families()}
    for x, me, mh in gamma.interior:
        total = add(total, scale(me + mh, fams[x].v))
    if p.geometry in ("interval", "circle"):
        return total
    lens = p.lens
    total = add(total, add(scale(gamma.m0, lens.v0), scale(gamma.m1, lens.v1)))
    val = cross(lens.u0, total)
    pp = lens.p()
    return val % pp if pp else val


def lattice_class_rep(cls, p: Profile) -> Optional[Vec]:
    return cls if isinstance(cls, tuple) else None


@dataclass(frozen=True)
class LensExtra:
    d0_plus: int
    d0_minus: int
    d1_plus: int
    d1_minus: int


def solve_lens_d(alpha_path: DPath, beta_path: DPath, p: Profile,
                 d0: Optional[int] = None) -> tuple[int, int]:
    """Integers (d0, d1) with [P_beta] - [P_alpha] = d0 u0 + d1 u1.

    For s1s2 the caller supplies d0 and d1 is solved along the u-line."""
    lens = p.lens
    diff = sub(beta_path.path_class(), alpha_path.path_class())
    if p.geometry == "s1s2":
        if d0 is None:
            raise ValueError("s1s2 association needs the offset d")
        rest = sub(diff, scale(d0, lens.u0))
        d1 = parallel_coeff(rest, lens.u1)
        if d1 is None:
            raise ValueError("class difference not representable for this d")
        return d0, d1
    a, b = solve_2x2(lens.u0, lens.u1, diff)
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("orbit sets lie in different homology classes")
    return int(a), int(b)


def associate_region(alpha: OrbitSet, beta: OrbitSet, p: Profile,
                     extra=None):
    """The associated decorated region of a same-class pair.

    interval: Region; circle: OffsetRegion with sigma0 = extra (default 0);
    lens/s1s2: extended-interval Region with the d_i^+- closing edges, where
    extra is the imposed d for s1s2.
    """
    if p.geometry == "interval":
        return Region(associate_path(alpha, p), associate_path(beta, p))
    if p.geometry == "circle":
        sigma0 = extra if extra is not None else (0, 0)
        return OffsetRegion(associate_path(alpha, p), associate_path(beta, p), sigma0)
    lens = p.lens
    pa, pb = associate_path(alpha, p), associate_path(beta, p)
    d0, d1 = solve_lens_d(pa, pb, p, d0=extra if p.geometry == "s1s2" else None)
    ext = extension_of(p)
    e0, e1 = ext.end_pos
    p0 = dict(pa.edges)
    p1 = dict(pb.edges)
    for (d, u, pos) in ((d0, lens.u0, e0), (d1, lens.u1, e1)):
        if d > 0:
            p0[pos] = Edge(u, 1, d, 0)
        elif d < 0:
            p1[pos] = Edge(u, 1, -d, 0)
    return Region(DPath(p0), DPath(p1))


# ---------------------------------------------------------------------------
# Generator enumeration
# ---------------------------------------------------------------------------

def generators(p: Profile, cls, bound: Fraction) -> list[OrbitSet]:
    """All admissible orbit sets of class cls with action < bound, sorted."""
    bound = Fraction(bound)
    if bound > p.L:
        raise ValueError("bound exceeds the profile action bound L")
    fams = [n for n in p.families() if n.action < bound]
    out: list[OrbitSet] = []

    def dfs(i: int, budget: Fraction, acc: list):
        if i == len(fams):
            finish(acc, budget)
            return
        nd = fams[i]
        max_m = 0
        while (max_m + 1) * nd.action < budget:
            max_m += 1
        for m in range(max_m + 1):
            for mh in (0, 1) if m else (0,):
                if mh > m:
                    continue
                nxt = acc + [(nd.x, m - mh, mh)] if m else acc
                dfs(i + 1, budget - m * nd.action, nxt)

    def finish(acc: list, budget: Fraction):
        if p.geometry in ("lens", "s1s2"):
            lens = p.lens
            m0max = 0
            while (m0max + 1) * lens.action_e0 < budget:
                m0max += 1
            for m0 in range(m0max + 1):
                rem = budget - m0 * lens.action_e0
                m1max = 0
                while (m1max + 1) * lens.action_e1 < rem:
                    m1max += 1
                for m1 in range(m1max + 1):
                    cand = OrbitSet(tuple(acc), m0, m1)
                    if class_of(cand, p) == cls:
                        out.append(cand)
        else:
            cand = OrbitSet(tuple(acc))
            if class_of(cand, p) == cls:
                out.append(cand)

    dfs(0, bound, [])
    out.sort(key=lambda g: (g.interior, g.m0, g.m1))
    return out
