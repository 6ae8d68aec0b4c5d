"""Orbital-moment-map profiles: direction sweeps, actions, compatibility.

A profile records, for one of the four geometries, the ordered list of orbit
families (position, primitive direction, convexity, action) together with
turning markers where the direction sweep reverses.  Directions are lifted to
the universal cover (integer winding + primitive vector) during normalization,
so every angular test is an exact sign computation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .lattice import (
    Lifted, Vec, cmp_lifted, cross, is_primitive, max_lift_below,
    min_lift_above, primitive_part, run_within_halfplane, scale, sub,
)
from .partitions import floor_frac, p_plus
from .paths import DPath, Edge, OffsetRegion, Pos, Region, sigma_profile

FAMILY = "family"
TURNING = "turning"
JUNCTION = "junction"

GEOMETRIES = ("interval", "circle", "lens", "s1s2")


@dataclass(frozen=True)
class Node:
    x: Pos
    kind: str
    v: Vec
    convex: int = 0                     # +-1 for families
    action: Optional[Fraction] = None   # families only
    dir: Optional[Lifted] = None        # assigned by normalization
    turn: str = ""                      # "max"/"min", derived for turning nodes


def family(x, v: Vec, convex: int, action) -> Node:
    return Node(Fraction(x), FAMILY, v, convex, Fraction(action))


def turning(x, v: Vec) -> Node:
    return Node(Fraction(x), TURNING, v)


@dataclass(frozen=True)
class LensData:
    u0: Vec
    v0: Vec
    phi0: Fraction
    action_e0: Fraction
    u1: Vec
    v1: Vec
    phi1: Fraction
    action_e1: Fraction

    def boundary_dir(self, i: int) -> Vec:
        """Primitive direction of v_i - phi_i * u_i."""
        u, v, phi = (self.u0, self.v0, self.phi0) if i == 0 else (self.u1, self.v1, self.phi1)
        return primitive_part(sub(scale(phi.denominator, v), scale(phi.numerator, u)))

    def p(self) -> int:
        return abs(cross(self.u0, self.u1))


@dataclass(frozen=True)
class Profile:
    geometry: str
    nodes: tuple[Node, ...]
    L: Fraction
    winding: int = 0                    # circle only: n_a
    lens: Optional[LensData] = None
    diagnostics: tuple[str, ...] = field(default=())

    def families(self) -> list[Node]:
        return [n for n in self.nodes if n.kind == FAMILY]

    def family_at(self, x: Pos) -> Optional[Node]:
        for n in self.nodes:
            if n.kind == FAMILY and n.x == x:
                return n
        return None

    def min_action(self) -> Fraction:
        acts = [n.action for n in self.families()]
        if self.lens:
            acts += [self.lens.action_e0, self.lens.action_e1]
        return min(acts) if acts else self.L

    def cutoff_n(self) -> int:
        """N = L / (minimum action), rounded up (at least 1)."""
        return max(1, -floor_frac(-self.L / self.min_action()))


# ---------------------------------------------------------------------------
# Normalization: senses, windings, turning kinds
# ---------------------------------------------------------------------------

def _assign_senses(nodes: list[Node], wrap: bool) -> tuple[list[int], list[str]]:
    """Sense (+1 rising / -1 falling) of each gap between consecutive nodes.

    Gap i sits between node i and node (i+1) (cyclically when wrap).  A family
    forces both adjacent senses to its convexity; a turning flips the sense; a
    junction decouples its two sides.
    """
    n = len(nodes)
    count = n if wrap else n - 1
    senses = [0] * max(count, 0)
    diags: list[str] = []
    if count <= 0:
        return senses, diags

    def gaps_of(idx: int) -> tuple[Optional[int], Optional[int]]:
        left = (idx - 1) % count if wrap else (idx - 1 if idx - 1 >= 0 else None)
        right = idx % count if wrap else (idx if idx < count else None)
        return left, right

    def set_sense(i: int, val: int, why: str):
        if senses[i] == 0:
            senses[i] = val
        elif senses[i] != val:
            diags.append(f"inconsistent sweep sense ({why})")

    for idx, node in enumerate(nodes):
        if node.kind != FAMILY:
            continue
        left, right = gaps_of(idx)
        if left is not None:
            set_sense(left, node.convex, f"family at {node.x}")
        if right is not None:
            set_sense(right, node.convex, f"family at {node.x}")

    changed = True
    while changed:
        changed = False
        for idx, node in enumerate(nodes):
            if node.kind != TURNING:
                continue
            left, right = gaps_of(idx)
            lv = senses[left] if left is not None else 0
            rv = senses[right] if right is not None else 0
            if lv and rv and lv != -rv:
                diags.append(f"turning at {node.x} does not flip the sweep")
                return senses, diags
            if lv and not rv and right is not None:
                senses[right] = -lv
                changed = True
            if rv and not lv and left is not None:
                senses[left] = -rv
                changed = True

    for i, s in enumerate(senses):
        if s == 0:
            diags.append(f"sweep sense undetermined between nodes {i} and {i + 1}")
    return senses, diags


def _normalize(geometry: str, nodes: list[Node], winding: int) -> tuple[list[Node], list[str]]:
    """Assign lifted directions and turning kinds; collect diagnostics."""
    diags: list[str] = []
    if not nodes:
        return [], ["profile has no nodes"]
    for a, b in zip(nodes, nodes[1:]):
        if a.x >= b.x:
            diags.append(f"node positions not strictly increasing at {b.x}")
    if not any(n.kind == FAMILY for n in nodes):
        diags.append("profile has no orbit families")
    if diags:
        return nodes, diags
    wrap = geometry == "circle"
    senses, sense_diags = _assign_senses(nodes, wrap)
    if sense_diags:
        return nodes, diags + sense_diags

    out = [replace(nodes[0], dir=Lifted(primitive_part(nodes[0].v), 0))]
    for i in range(1, len(nodes)):
        prev = out[-1].dir
        if senses[i - 1] > 0:
            lift = min_lift_above(prev, nodes[i].v)
        else:
            lift = max_lift_below(prev, nodes[i].v)
        out.append(replace(nodes[i], dir=lift))

    n = len(out)
    count = n if wrap else n - 1
    for i, node in enumerate(out):
        if node.kind != TURNING:
            continue
        if wrap:
            in_sense = senses[(i - 1) % count]
        else:
            in_sense = senses[i - 1] if i - 1 >= 0 else -senses[i]
        out[i] = replace(node, turn="max" if in_sense > 0 else "min")

    if wrap:
        if winding < 1:
            diags.append("circle winding must be >= 1")
        elif count:
            first = out[0].dir.shift(winding)
            last = out[-1].dir
            if senses[-1] > 0:
                if cmp_lifted(last, first) >= 0:
                    diags.append("circle sweep does not close up with the declared winding")
                elif cmp_lifted(first, min_lift_above(last, out[0].v)) < 0:
                    diags.append("declared winding smaller than the recorded sweep")
            else:
                if cmp_lifted(last, first) <= 0:
                    diags.append("circle sweep does not close up with the declared winding")
    return out, diags


def make_profile(geometry: str, nodes: list[Node], L, winding: int = 0,
                 lens: Optional[LensData] = None) -> Profile:
    """Normalize raw nodes into a Profile, recording validation diagnostics."""
    L = Fraction(L)
    nodes = sorted(nodes, key=lambda nd: nd.x)
    diags: list[str] = []
    if geometry not in GEOMETRIES:
        return Profile(geometry, tuple(nodes), L, winding, lens,
                       (f"unknown geometry {geometry!r}",))
    if L <= 0:
        diags.append("action bound L must be positive")

    for nd in nodes:
        if nd.v == (0, 0):
            diags.append(f"node at {nd.x}: zero direction")
            continue
        if nd.kind == FAMILY:
            if nd.v != primitive_part(nd.v):
                diags.append(f"family at {nd.x}: direction must be primitive")
            if nd.convex not in (1, -1):
                diags.append(f"family at {nd.x}: convexity must be +1 or -1")
            if nd.action is None or nd.action <= 0:
                diags.append(f"family at {nd.x}: action must be a positive rational")
        if geometry == "circle" and not (0 <= nd.x < 1):
            diags.append(f"node at {nd.x}: circle positions lie in [0,1)")
        if geometry in ("lens", "s1s2") and not (0 < nd.x < 1):
            diags.append(f"node at {nd.x}: lens interior positions lie in (0,1)")

    if geometry in ("lens", "s1s2"):
        if lens is None:
            diags.append("lens geometry requires endpoint data")
        else:
            if cross(lens.u0, lens.v0) != 1:
                diags.append("det(u0|v0) must be +1")
            if cross(lens.u1, lens.v1) != -1:
                diags.append("det(u1|v1) must be -1")
            if not (is_primitive(lens.u0) and is_primitive(lens.u1)):
                diags.append("u0, u1 must be primitive")
            if geometry == "lens" and lens.p() == 0:
                diags.append("lens geometry requires independent u0, u1 (p != 0)")
            if geometry == "s1s2" and lens.p() != 0:
                diags.append("s1s2 geometry requires u1 = +-u0")
            if lens.action_e0 <= 0 or lens.action_e1 <= 0:
                diags.append("endpoint actions must be positive")
    elif lens is not None:
        diags.append(f"{geometry} geometry does not take endpoint data")

    if diags:
        return Profile(geometry, tuple(nodes), L, winding, lens, tuple(diags))

    normalized, ndiags = _normalize(geometry, nodes, winding)
    diags.extend(ndiags)
    prof = Profile(geometry, tuple(normalized), L, winding, lens, tuple(diags))

    if lens is not None and not diags:
        n_cut = prof.cutoff_n()
        for name, phi in (("phi0", lens.phi0), ("phi1", lens.phi1)):
            for m in range(1, n_cut):
                if (m * phi).denominator == 1:
                    diags.append(f"{name}: m*phi is an integer for m={m} < N={n_cut}")
                    break
        if not diags:
            try:
                extend_lens(prof)
            except ValueError as exc:
                diags.append(str(exc))
        prof = replace(prof, diagnostics=tuple(diags))
    return prof


def validate(p: Profile) -> list[str]:
    """Structural diagnostics recorded at construction (empty iff valid)."""
    return list(p.diagnostics)


# ---------------------------------------------------------------------------
# Sweep checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Checkpoint:
    x: Pos
    dir: Lifted
    strict: bool


class Sweep:
    """Ordered exact checkpoints of the direction sweep, unrollable on circles."""

    def __init__(self, checkpoints: list[Checkpoint], period: Optional[Fraction] = None,
                 turns_per_period: int = 0):
        self.checkpoints = sorted(checkpoints, key=lambda c: c.x)
        self.period = period
        self.turns = turns_per_period

    def window(self, a: Pos, b: Pos) -> list[Checkpoint]:
        """Checkpoints with positions in [a, b], unrolled if periodic."""
        if self.period is None:
            return [c for c in self.checkpoints if a <= c.x <= b]
        out = []
        k = floor_frac((a - self.checkpoints[-1].x) / self.period)
        while True:
            for c in self.checkpoints:
                x = c.x + k * self.period
                if x > b:
                    return out
                if x >= a:
                    out.append(Checkpoint(x, c.dir.shift(k * self.turns), c.strict))
            k += 1

    def arc_ok(self, a: Pos, b: Pos, s: Vec) -> bool:
        """True iff cross(direction, s) >= 0 over [a, b], strictly at markers."""
        cps = self.window(a, b)
        for c in cps:
            cr = cross(c.dir.v, s)
            if cr < 0 or (c.strict and cr == 0):
                return False
        for c1, c2 in zip(cps, cps[1:]):
            if cmp_lifted(c1.dir, c2.dir) <= 0:
                lo, hi = c1.dir, c2.dir
            else:
                lo, hi = c2.dir, c1.dir
            if not run_within_halfplane(lo, hi, s):
                return False
        return True


def sweep_of(p: Profile) -> Sweep:
    cps = [Checkpoint(n.x, n.dir, n.kind == TURNING) for n in p.nodes]
    if p.geometry == "circle":
        return Sweep(cps, period=Fraction(1), turns_per_period=p.winding)
    return Sweep(cps)


# ---------------------------------------------------------------------------
# Compatibility, positivity, action
# ---------------------------------------------------------------------------

class FamilyIndex:
    """Family lookup plus the direction sweep, for a profile or its extension."""

    def __init__(self, families: list[Node], sweep: Sweep):
        self.by_pos = {n.x: n for n in families}
        self.sweep = sweep

    def family(self, x: Pos) -> Optional[Node]:
        return self.by_pos.get(x)

    def sorted_families(self) -> list[Node]:
        return [self.by_pos[x] for x in sorted(self.by_pos)]


def family_index(p: Profile) -> FamilyIndex:
    return FamilyIndex(p.families(), sweep_of(p))


def a_compatible(path: DPath, fi: FamilyIndex) -> bool:
    """Every edge sits at a family with the same direction and convexity."""
    for x, e in path.edges.items():
        nd = fi.family(x)
        if nd is None or nd.v != e.v or nd.convex != e.c:
            return False
    return True


def a_positive(r: Region | OffsetRegion, fi: FamilyIndex) -> bool:
    """Exact a-positivity: cross(sweep direction, slice class) >= 0 everywhere."""
    if not (a_compatible(r.p0, fi) and a_compatible(r.p1, fi)):
        return False
    support = r.support
    levels = sigma_profile(r)
    if isinstance(r, OffsetRegion):
        if not support:
            return r.sigma0 == (0, 0) or fi.sweep.period is None
        for i, x in enumerate(support):
            s = levels[i][1]
            if s == (0, 0):
                continue
            nxt = support[i + 1] if i + 1 < len(support) else support[0] + 1
            if not fi.sweep.arc_ok(x, nxt, s):
                return False
        return True
    for i in range(len(support) - 1):
        s = levels[i][1]
        if s != (0, 0) and not fi.sweep.arc_ok(support[i], support[i + 1], s):
            return False
    return True


def orbit_action(interior: dict[Pos, tuple[int, int]], p: Profile,
                 m0: int = 0, m1: int = 0) -> Fraction:
    """Total action: multiplicities times family actions, plus endpoint orbits."""
    total = Fraction(0)
    fams = {n.x: n for n in p.families()}
    for x, (me, mh) in interior.items():
        nd = fams.get(x)
        if nd is None:
            raise ValueError(f"no orbit family at position {x}")
        total += (me + mh) * nd.action
    if m0 or m1:
        if p.lens is None:
            raise ValueError("endpoint multiplicities need a lens profile")
        total += m0 * p.lens.action_e0 + m1 * p.lens.action_e1
    return total


# ---------------------------------------------------------------------------
# Reflection duality
# ---------------------------------------------------------------------------

def _reflect_vec(v: Vec) -> Vec:
    return (v[1], v[0])


def reflect(p: Profile) -> Profile:
    """The duality profile: reflected directions, flipped convexities.

    Node positions are kept, so the angular order of the nodes reverses.  The
    induced family bijection is position-wise, and the differential matrix of
    the reflected profile is the transpose of the original's under it.
    """
    if p.geometry != "interval":
        raise ValueError("reflect supports interval profiles only")
    nodes = [Node(n.x, n.kind, _reflect_vec(n.v),
                  -n.convex if n.kind == FAMILY else 0, n.action)
             for n in p.nodes]
    return make_profile("interval", nodes, p.L)


# ---------------------------------------------------------------------------
# Lens extension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedLens:
    """Extension of a lens/s1s2 profile over [x0~, x1~] = [-1, 2].

    Junction checkpoints sit at 0 and 1; the V_i families in (-1,0) and (1,2)
    in angular order; the x_i~ families (direction u_i) at -1 and 2.
    ``w_pos[i]`` maps the primitive direction of w_{i,n} to its position.
    """

    base: Profile
    index: FamilyIndex
    w_pos: tuple[dict[Vec, Pos], dict[Vec, Pos]]
    end_pos: tuple[Pos, Pos]
    w_rep_n: tuple[dict[Vec, int], dict[Vec, int]]


def w_vector(lens: LensData, i: int, n: int) -> Vec:
    """w_{i,n} = n*v_i - floor(n*phi_i)*u_i."""
    u, v, phi = (lens.u0, lens.v0, lens.phi0) if i == 0 else (lens.u1, lens.v1, lens.phi1)
    return sub(scale(n, v), scale(floor_frac(n * phi), u))


def _cone_sorted(dirs: dict[Vec, int]) -> list[tuple[Vec, int]]:
    """Sort directions lying strictly within a common half turn, ascending."""
    def cmp(a, b):
        c = cross(a[0], b[0])
        return -1 if c > 0 else (1 if c < 0 else 0)
    return sorted(dirs.items(), key=functools.cmp_to_key(cmp))


def extend_lens(p: Profile) -> ExtendedLens:
    """Families of the extended profile on V_0 and V_1 plus sweep checkpoints."""
    if p.geometry not in ("lens", "s1s2") or p.lens is None:
        raise ValueError("extend_lens requires a lens or s1s2 profile")
    lens = p.lens
    n_cut = p.cutoff_n()
    w_pos: list[dict[Vec, Pos]] = [{}, {}]
    w_rep: list[dict[Vec, int]] = [{}, {}]
    fam_lists: list[list[tuple[Vec, int]]] = [[], []]
    for i in (0, 1):
        seen: dict[Vec, int] = {}
        for n in range(1, n_cut):
            d = primitive_part(w_vector(lens, i, n))
            if d not in seen:
                seen[d] = n
        fam_lists[i] = _cone_sorted(seen)
        w_rep[i] = dict(seen)

    e_act = (lens.action_e0, lens.action_e1)
    nodes: list[Node] = []
    end0, end1 = Fraction(-1), Fraction(2)
    nodes.append(Node(end0, FAMILY, lens.u0, 1,
                      e_act[0] * (1 + sum(n for _, n in fam_lists[0]))))
    k0 = len(fam_lists[0])
    for j, (d, n) in enumerate(fam_lists[0], start=1):
        x = Fraction(-1) + Fraction(j, k0 + 1)
        nodes.append(Node(x, FAMILY, d, 1, n * e_act[0]))
        w_pos[0][d] = x
    nodes.append(Node(Fraction(0), JUNCTION, lens.boundary_dir(0)))
    nodes.extend(Node(nd.x, nd.kind, nd.v, nd.convex, nd.action) for nd in p.nodes)
    nodes.append(Node(Fraction(1), JUNCTION, lens.boundary_dir(1)))
    k1 = len(fam_lists[1])
    for j, (d, n) in enumerate(fam_lists[1], start=1):
        x = Fraction(1) + Fraction(j, k1 + 1)
        nodes.append(Node(x, FAMILY, d, 1, n * e_act[1]))
        w_pos[1][d] = x
    nodes.append(Node(end1, FAMILY, lens.u1, 1,
                      e_act[1] * (1 + sum(n for _, n in fam_lists[1]))))

    normalized, diags = _normalize("interval", nodes, 0)
    if diags:
        raise ValueError("extended lens profile invalid: " + "; ".join(diags))
    sweep = Sweep([Checkpoint(n.x, n.dir, n.kind == TURNING) for n in normalized])
    fi = FamilyIndex([n for n in normalized if n.kind == FAMILY], sweep)
    return ExtendedLens(p, fi, (w_pos[0], w_pos[1]), (end0, end1),
                        (w_rep[0], w_rep[1]))


def elliptic_end_path(i: int, m: int, ext: ExtendedLens) -> DPath:
    """The all-elliptic convex path associated to the endpoint orbit (e_i, m)."""
    if m == 0:
        return DPath()
    if m >= ext.base.cutoff_n():
        raise ValueError(f"endpoint multiplicity {m} exceeds the action cutoff")
    lens = ext.base.lens
    phi = lens.phi0 if i == 0 else lens.phi1
    counts: dict[Pos, int] = {}
    dirs: dict[Pos, Vec] = {}
    for n in p_plus(phi, m):
        d = primitive_part(w_vector(lens, i, n))
        x = ext.w_pos[i].get(d)
        if x is None:
            raise ValueError(f"no extended family in direction {d}")
        counts[x] = counts.get(x, 0) + 1
        dirs[x] = d
    return DPath({x: Edge(dirs[x], 1, counts[x], 0) for x in counts})
