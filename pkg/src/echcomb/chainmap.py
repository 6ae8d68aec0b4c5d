"""The path-identity chain map from a class-0 lens complex into a T^3 complex."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .differential import coefficient_circle, coefficient_lens
from .homology import relative_index
from .lattice import Lifted, cross, min_lift_above, neg, run_within_halfplane
from .orbits import EMPTY, OrbitSet, associate_region, class_of, extension_of, generators
from .profile import FAMILY, Node, Profile, family, make_profile, turning, validate

F = Fraction


@dataclass(frozen=True)
class CompanionPair:
    lens_profile: Profile
    circle: Profile
    pos_map: dict            # extended-lens position -> circle position
    window_end: Fraction     # circle position of x1~


class CompanionError(ValueError):
    pass


def _window_pos(x: Fraction) -> Fraction:
    """Affine map [-1, 2] -> [0, 3/4]."""
    return (x + 1) / 4


def build_companion(p: Profile, arc_nodes: tuple[Node, ...] = ()) -> CompanionPair:
    """Assemble the circle profile whose window equals the extended lens profile.

    The window [x0~, x1~] maps onto [0, 3/4]; the declared return arc (turning
    markers with positions in (3/4, 1), carrying no orbit families) closes the
    circle.  The sign conditions cross(u_i, direction) > 0 on the interior and
    < 0 on the return arc are verified exactly; violations raise
    CompanionError naming the first offending node.
    """
    if p.geometry != "lens" or p.lens is None or p.lens.p() == 0:
        raise CompanionError("companion construction needs a lens profile with p != 0")
    ext = extension_of(p)
    lens = p.lens
    nodes = []
    pos_map = {}
    for nd in ext.index.sorted_families():
        x = _window_pos(nd.x)
        pos_map[nd.x] = x
        nodes.append(family(x, nd.v, nd.convex, nd.action))
    interior_turnings = [n for n in p.nodes if n.kind != FAMILY]
    for nd in interior_turnings:
        nodes.append(turning(_window_pos(nd.x), nd.v))
    for nd in arc_nodes:
        if not (F(3, 4) < nd.x < 1):
            raise CompanionError(f"return-arc node at {nd.x} outside (3/4, 1)")
        if nd.kind == FAMILY:
            raise CompanionError("return arc must not carry orbit families")
        nodes.append(nd)

    # interior sign conditions: (-1)^i * cross(u_i, dir) > 0 on I
    interior = [n for n in p.nodes]
    for nd in interior:
        for i, u in ((0, lens.u0), (1, lens.u1)):
            val = cross(u, nd.v) * (1 if i == 0 else -1)
            if val <= 0:
                raise CompanionError(
                    f"interior node at {nd.x} violates the sign condition for u{i}")
    # return arc: monotone rising run from u1 back to u0 one turn up, staying
    # where cross(u0, dir) < 0 and cross(u1, dir) > 0
    lift = Lifted(lens.u1, 0)
    arc_dirs = [lift]
    for nd in sorted(arc_nodes, key=lambda n: n.x):
        lift = min_lift_above(lift, nd.v)
        arc_dirs.append(lift)
    closing = min_lift_above(lift, lens.u0)
    arc_dirs.append(closing)
    for lo, hi in zip(arc_dirs, arc_dirs[1:]):
        for s in ((lens.u0), neg(lens.u1)):
            if not run_within_halfplane(lo, hi, s):
                raise CompanionError(
                    f"return arc leaves the allowed cone near direction {hi.v}")
    for nd in arc_nodes:
        if cross(lens.u0, nd.v) >= 0 or cross(lens.u1, nd.v) <= 0:
            raise CompanionError(f"return-arc node at {nd.x} violates the sign condition")

    sense_nodes = sorted(nodes, key=lambda n: n.x)
    total_l = sum(f.action for f in sense_nodes if f.kind == FAMILY) * 2
    circle = make_profile("circle", sense_nodes, total_l, winding=_companion_winding(p))
    diags = validate(circle)
    if diags:
        raise CompanionError("companion circle profile invalid: " + "; ".join(diags))
    return CompanionPair(p, circle, pos_map, _window_pos(ext.end_pos[1]))


def _companion_winding(p: Profile) -> int:
    """Turns of the companion sweep: window from u0 to u1 plus the return arc."""
    ext = extension_of(p)
    fams = ext.index.sorted_families()
    lift = fams[0].dir
    last = fams[-1].dir
    closing = min_lift_above(last, p.lens.u0)
    return closing.winding - fams[0].dir.winding


def phi(alpha: OrbitSet, cp: CompanionPair) -> OrbitSet:
    """The circle orbit set whose path is the alpha side of R_{alpha, empty}."""
    p = cp.lens_profile
    if class_of(alpha, p) != 0:
        raise ValueError("phi is defined on homology class 0")
    r = associate_region(alpha, EMPTY, p)
    if not r.p1.is_empty():
        raise ValueError("alpha side does not close with non-negative d")
    interior = []
    for x, e in r.p0.edges.items():
        interior.append((cp.pos_map[x], e.m_e, e.m_h))
    return OrbitSet(tuple(interior))


@dataclass(frozen=True)
class ChainMapLine:
    alpha: OrbitSet
    index_lens: int
    index_t3: int
    index_match: bool
    boundary_match: bool
    detail: str = ""

    def text(self) -> str:
        return (f"{_oid(self.alpha)}\t{self.index_lens}\t{self.index_t3}\t"
                f"{'ok' if self.index_match else 'FAIL'}\t"
                f"{'ok' if self.boundary_match else 'FAIL'}")


def _oid(g: OrbitSet) -> str:
    parts = []
    for x, me, mh in g.interior:
        if me:
            parts.append(f"e@{x}" + (f"*{me}" if me > 1 else ""))
        if mh:
            parts.append(f"h@{x}")
    if g.m0:
        parts.append(f"e0*{g.m0}")
    if g.m1:
        parts.append(f"e1*{g.m1}")
    return ",".join(parts) if parts else "empty"


@dataclass(frozen=True)
class ChainMapReport:
    lines: tuple[ChainMapLine, ...]
    ok: bool
    counterexample: Optional[str] = None

    def text(self) -> str:
        header = "alpha-id\tindex-lens\tindex-t3\tmatch\tboundary-match"
        return "\n".join([header] + [ln.text() for ln in self.lines])


def verify_chain_map(cp: CompanionPair, bound: Fraction) -> ChainMapReport:
    """Check index preservation and boundary commutation for class-0 generators."""
    p = cp.lens_profile
    circle = cp.circle
    lens_gens = generators(p, 0, bound)
    lines = []
    ok = True
    counterexample = None
    phis = {g: phi(g, cp) for g in lens_gens}
    for alpha in lens_gens:
        ia = relative_index(alpha, EMPTY, p)
        it = relative_index(phis[alpha], EMPTY, circle, extra=(0, 0))
        imatch = ia == it
        act_a = alpha.action(p)
        dl = {phis[beta] for beta in lens_gens
              if beta.action(p) < act_a and coefficient_lens(alpha, beta, p).value}
        act_t = phis[alpha].action(circle)
        candidates = generators(circle, (0, 0), act_t)
        dt = {gamma for gamma in candidates
              if coefficient_circle(phis[alpha], gamma, circle).value}
        bmatch = dl == dt
        if not (imatch and bmatch) and counterexample is None:
            counterexample = _oid(alpha)
        ok = ok and imatch and bmatch
        lines.append(ChainMapLine(alpha, ia, it, imatch, bmatch))
    return ChainMapReport(tuple(lines), ok, counterexample)
