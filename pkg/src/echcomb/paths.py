"""Decorated lattice paths and regions, their factorization, positivity and index.

A decorated path assigns to finitely many rational positions an edge: a
primitive lattice vector, a convexity sign, and elliptic / hyperbolic
multiplicities.  A region is a pair of compatible paths with equal total
class; an offset region adds a base slice class for circle geometries.
Everything here is exact integer / rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .lattice import Vec, add, cross, is_primitive, neg, parallel_coeff, scale, sub

Pos = Fraction


@dataclass(frozen=True)
class Edge:
    """One decorated edge: primitive vector, convexity, multiplicities."""

    v: Vec
    c: int
    m_e: int = 0
    m_h: int = 0

    def __post_init__(self):
        if not is_primitive(self.v):
            raise ValueError(f"edge vector must be primitive, got {self.v}")
        if self.c not in (1, -1):
            raise ValueError("convexity must be +1 or -1")
        if self.m_e < 0 or self.m_h < 0 or self.m_e + self.m_h == 0:
            raise ValueError("edge multiplicities must be non-negative, total >= 1")

    @property
    def m(self) -> int:
        return self.m_e + self.m_h

    def with_mult(self, m_e: int, m_h: int) -> "Edge":
        return Edge(self.v, self.c, m_e, m_h)


class DPath:
    """A decorated lattice path: a finite map position -> Edge."""

    __slots__ = ("edges",)

    def __init__(self, edges: dict[Pos, Edge] | Iterable[tuple[Pos, Edge]] = ()):
        d = dict(edges)
        self.edges: dict[Pos, Edge] = {x: e for x, e in sorted(d.items())}

    def __eq__(self, other):
        return isinstance(other, DPath) and self.edges == other.edges

    def __hash__(self):
        return hash(tuple(self.edges.items()))

    def __repr__(self):
        items = ", ".join(f"{x}:{e.v}c{e.c}e{e.m_e}h{e.m_h}" for x, e in self.edges.items())
        return f"DPath({items})"

    @property
    def support(self) -> tuple[Pos, ...]:
        return tuple(self.edges.keys())

    def edge_at(self, x: Pos) -> Optional[Edge]:
        return self.edges.get(x)

    def m_at(self, x: Pos) -> int:
        e = self.edges.get(x)
        return e.m if e else 0

    def m_total(self) -> int:
        return sum(e.m for e in self.edges.values())

    def path_class(self) -> Vec:
        total = (0, 0)
        for e in self.edges.values():
            total = add(total, scale(e.m, e.v))
        return total

    def is_empty(self) -> bool:
        return not self.edges

    def undecorated(self) -> tuple[tuple[Pos, Vec, int, int], ...]:
        return tuple((x, e.v, e.c, e.m) for x, e in self.edges.items())

    def translate(self, shift: Fraction) -> "DPath":
        return DPath({x + shift: e for x, e in self.edges.items()})

    def restrict(self, lo: Pos, hi: Pos) -> "DPath":
        return DPath({x: e for x, e in self.edges.items() if lo <= x <= hi})


def compatible(p: DPath, q: DPath) -> bool:
    """Equal vector and convexity wherever supports intersect."""
    for x, e in p.edges.items():
        f = q.edges.get(x)
        if f is not None and (f.v != e.v or f.c != e.c):
            return False
    return True


def path_union(p: DPath, q: DPath) -> DPath:
    """Union of compatible paths (multiplicities add)."""
    if not compatible(p, q):
        raise ValueError("paths are not compatible")
    edges = dict(p.edges)
    for x, f in q.edges.items():
        e = edges.get(x)
        if e is None:
            edges[x] = f
        else:
            edges[x] = Edge(e.v, e.c, e.m_e + f.m_e, e.m_h + f.m_h)
    return DPath(edges)


@dataclass(frozen=True)
class Region:
    """A decorated lattice region: a pair of compatible paths with equal class.

    Works for interval positions and for lifted (real-line) positions alike.
    """

    p0: DPath
    p1: DPath

    def __post_init__(self):
        if not compatible(self.p0, self.p1):
            raise ValueError("region paths are not compatible")
        if self.p0.path_class() != self.p1.path_class():
            raise ValueError("region paths have different total classes")

    def paths(self) -> tuple[DPath, DPath]:
        return (self.p0, self.p1)

    @property
    def support(self) -> tuple[Pos, ...]:
        return tuple(sorted(set(self.p0.edges) | set(self.p1.edges)))

    def is_empty(self) -> bool:
        return self.p0.is_empty() and self.p1.is_empty()

    def is_local(self) -> bool:
        """Underlying undecorated paths coincide."""
        return self.p0.undecorated() == self.p1.undecorated()

    def is_trivial(self) -> bool:
        """Decorated paths coincide exactly."""
        return self.p0 == self.p1

    def shared_data(self, x: Pos) -> tuple[Vec, int]:
        e = self.p0.edge_at(x) or self.p1.edge_at(x)
        return e.v, e.c

    def m_at(self, x: Pos) -> int:
        return self.p0.m_at(x) + self.p1.m_at(x)

    def translate(self, shift: Fraction) -> "Region":
        return Region(self.p0.translate(shift), self.p1.translate(shift))


@dataclass(frozen=True)
class OffsetRegion:
    """A region on circle positions [0,1) together with a base slice class."""

    p0: DPath
    p1: DPath
    sigma0: Vec = (0, 0)

    def __post_init__(self):
        if not compatible(self.p0, self.p1):
            raise ValueError("region paths are not compatible")
        if self.p0.path_class() != self.p1.path_class():
            raise ValueError("region paths have different total classes")
        for x in list(self.p0.edges) + list(self.p1.edges):
            if not (0 <= x < 1):
                raise ValueError("circle positions must lie in [0,1)")

    @property
    def support(self) -> tuple[Pos, ...]:
        return tuple(sorted(set(self.p0.edges) | set(self.p1.edges)))

    def m_at(self, x: Pos) -> int:
        return self.p0.m_at(x) + self.p1.m_at(x)


AnyRegion = Region | OffsetRegion


def slice_class(r: AnyRegion, x: Pos) -> Vec:
    """The slice class at x with the strict (left-limit) convention."""
    base = r.sigma0 if isinstance(r, OffsetRegion) else (0, 0)
    s = base
    for y, e in r.p0.edges.items():
        if y < x:
            s = sub(s, scale(e.m, e.v))
    for y, e in r.p1.edges.items():
        if y < x:
            s = add(s, scale(e.m, e.v))
    return s


def sigma_profile(r: AnyRegion) -> list[tuple[Pos, Vec]]:
    """Slice-class levels: [(x_i, sigma just after x_i's edges)] over the support.

    The slice class equals ``sigma just after x_i`` on (x_i, x_{i+1}] — in
    particular at x_{i+1} itself under the left-limit convention.  For offset
    regions the level after the last position wraps around to sigma0.
    """
    base = r.sigma0 if isinstance(r, OffsetRegion) else (0, 0)
    out = []
    s = base
    for x in r.support:
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        if e0:
            s = sub(s, scale(e0.m, e0.v))
        if e1:
            s = add(s, scale(e1.m, e1.v))
        out.append((x, s))
    return out


def local_index(r: AnyRegion, x: Pos) -> int:
    """Q_R(x) + CZ_R(x) of the decorated region at x."""
    e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
    if e0 is None and e1 is None:
        return 0
    v = (e0 or e1).v
    s = slice_class(r, x)
    q = (r.m_at(x)) * cross(v, s)
    cz = 0
    if e0:
        cz += e0.c * e0.m_e
    if e1:
        cz -= e1.c * e1.m_e
    return q + cz


def q_total(r: AnyRegion) -> int:
    """Sum of Q_R(x): the lattice area term of the index."""
    total = 0
    for x in r.support:
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        v = (e0 or e1).v
        total += r.m_at(x) * cross(v, slice_class(r, x))
    return total


def ech_index(r: AnyRegion) -> int:
    """The combinatorial ECH index: sum of local indices."""
    return sum(local_index(r, x) for x in r.support)


def minimal_decoration(r: Region) -> Region:
    """The unique minimal decoration of the underlying undecorated region."""

    def fix(path: DPath, side: int) -> DPath:
        out = {}
        for x, e in path.edges.items():
            if (side == 0 and e.c == 1) or (side == 1 and e.c == -1):
                out[x] = e.with_mult(0, e.m)
            else:
                out[x] = e.with_mult(e.m, 0)
        return DPath(out)

    return Region(fix(r.p0, 0), fix(r.p1, 1))


def decoration_distance(r: Region) -> int:
    """l1 distance of elliptic multiplicities to the minimal decoration."""
    m = minimal_decoration(r)
    dist = 0
    for path, mpath in ((r.p0, m.p0), (r.p1, m.p1)):
        for x, e in path.edges.items():
            dist += abs(e.m_e - mpath.edges[x].m_e)
    return dist


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------

def factorize(r: AnyRegion if False else Region) -> list[Region]:
    """The unique finest factorization into non-empty indecomposable regions.

    Cuts occur wherever the slice class vanishes between support positions,
    and also inside a support position whenever the slice class is a lattice
    multiple of the edge vector and the up/down walk of that position's copies
    can visit zero.  Local stacks shed into single bigons.  Decorations of the
    returned factors are inherited arbitrarily (splitting a position's copies
    assigns hyperbolic copies first to the earlier part); all undecorated
    quantities of the factors are canonical.
    """
    support = r.support
    if not support:
        return []
    factors: list[Region] = []
    acc0: dict[Pos, Edge] = {}
    acc1: dict[Pos, Edge] = {}

    def close():
        nonlocal acc0, acc1
        if acc0 or acc1:
            factors.append(Region(DPath(acc0), DPath(acc1)))
            acc0, acc1 = {}, {}

    def take(path: DPath, x: Pos, count: int, acc: dict[Pos, Edge], from_front: bool):
        """Move `count` copies of path's edge at x into acc (hyperbolic first
        if from_front, else elliptic first); return the remaining copies."""
        e = path.edge_at(x)
        if count == 0:
            return e
        if from_front:
            h = min(e.m_h, count)
            eh, ee = h, count - h
        else:
            ee = min(e.m_e, count)
            eh = count - ee
        if count > 0:
            acc[x] = Edge(e.v, e.c, ee, eh)
        rest = (e.m_e - ee, e.m_h - eh)
        if rest == (0, 0):
            return None
        return Edge(e.v, e.c, rest[0], rest[1])

    s = r.sigma0 if isinstance(r, OffsetRegion) else (0, 0)
    for x in support:
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        v, c = (e0 or e1).v, (e0 or e1).c
        m0 = e0.m if e0 else 0
        m1 = e1.m if e1 else 0
        b_minus = parallel_coeff(s, v)
        s_after = add(s, scale(m1 - m0, v)) if b_minus is not None else \
            add(s, add(scale(-m0, v), scale(m1, v)))
        cuts = False
        if b_minus is not None:
            d1 = max(b_minus, 0)
            u1 = max(-b_minus, 0)
            b_plus = b_minus - m0 + m1
            d2 = max(-b_plus, 0)
            u2 = max(b_plus, 0)
            k = m0 - d1 - d2
            if k >= 0 and d1 <= m0 and u1 <= m1:
                cuts = True
        if not cuts:
            if e0:
                acc0[x] = e0
            if e1:
                acc1[x] = e1
            s = s_after
            continue
        # attach the leading copies to the current factor and close it
        rem0 = take(r.p0, x, d1, acc0, True) if e0 else None
        rem1 = take(r.p1, x, u1, acc1, True) if e1 else None
        close()
        # k local bigons (each one elliptic/hyperbolic pair as available)
        avail0 = (rem0.m_e, rem0.m_h) if rem0 else (0, 0)
        avail1 = (rem1.m_e, rem1.m_h) if rem1 else (0, 0)
        for _ in range(k):
            te0 = 1 if avail0[0] > 0 else 0
            avail0 = (avail0[0] - te0, avail0[1] - (1 - te0))
            te1 = 1 if avail1[0] > 0 else 0
            avail1 = (avail1[0] - te1, avail1[1] - (1 - te1))
            factors.append(Region(DPath({x: Edge(v, c, te0, 1 - te0)}),
                                  DPath({x: Edge(v, c, te1, 1 - te1)})))
        # remaining copies start the next factor
        if avail0 != (0, 0):
            acc0[x] = Edge(v, c, avail0[0], avail0[1])
        if avail1 != (0, 0):
            acc1[x] = Edge(v, c, avail1[0], avail1[1])
        s = s_after
    close()
    return factors


def is_indecomposable(r: Region) -> bool:
    return len(factorize(r)) == 1


def factor_blocks(r: Region) -> list[Region]:
    """Coarse segmentation: maximal blocks separated by gaps where sigma vanishes.

    Cuts happen only between support positions (where the slice class is zero
    on the whole gap); multi-edge local stacks are kept whole.
    """
    support = r.support
    if not support:
        return []
    blocks: list[Region] = []
    acc0: dict[Pos, Edge] = {}
    acc1: dict[Pos, Edge] = {}
    s = (0, 0)
    for x in support:
        if s == (0, 0) and (acc0 or acc1):
            blocks.append(Region(DPath(acc0), DPath(acc1)))
            acc0, acc1 = {}, {}
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        if e0:
            acc0[x] = e0
            s = sub(s, scale(e0.m, e0.v))
        if e1:
            acc1[x] = e1
            s = add(s, scale(e1.m, e1.v))
    if acc0 or acc1:
        blocks.append(Region(DPath(acc0), DPath(acc1)))
    return blocks


def trivial_bigon_count(r: Region) -> dict[Pos, int]:
    """Number of local-bigon factors at each position (zero entries omitted)."""
    out: dict[Pos, int] = {}
    s = (0, 0)
    for x in r.support:
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        v = (e0 or e1).v
        m0 = e0.m if e0 else 0
        m1 = e1.m if e1 else 0
        b_minus = parallel_coeff(s, v)
        if b_minus is not None:
            b_plus = b_minus - m0 + m1
            k = m0 - max(b_minus, 0) - max(-b_plus, 0)
            if k > 0:
                out[x] = k
            s = add(s, scale(m1 - m0, v))
        else:
            s = add(s, add(scale(-m0, v), scale(m1, v)))
    return out


# ---------------------------------------------------------------------------
# Positivity, Morse-Bott quantities
# ---------------------------------------------------------------------------

NOT_POSITIVE = "not_positive"
POSITIVE = "positive"
MINIMALLY_POSITIVE = "minimally_positive"


def _indecomposable_positivity(r: Region) -> str:
    """Classification of a single non-local indecomposable region."""
    minimal = True
    levels = sigma_profile(r)
    s = (0, 0)
    for idx, x in enumerate(r.support):
        for i, path in ((0, r.p0), (1, r.p1)):
            e = path.edge_at(x)
            if e is None:
                continue
            cr = cross(e.v, s)
            if cr < 0:
                return NOT_POSITIVE
            if cr == 0 and e.c == (1 if i == 1 else -1):
                # equality allowed only if c != (-1)^(i+1)
                return NOT_POSITIVE
            if cr > 1:
                minimal = False
            elif cr == 1 and e.c == (1 if i == 0 else -1):
                # equality in the minimal clause allowed only if c != (-1)^i
                minimal = False
        s = levels[idx][1]
    if minimal:
        for _, val in levels:
            if val != (0, 0) and not is_primitive(val):
                minimal = False
                break
    return MINIMALLY_POSITIVE if minimal else POSITIVE


def classify_positivity(r: Region) -> str:
    """Positivity of a general region: worst verdict over its non-local factors."""
    order = {NOT_POSITIVE: 0, POSITIVE: 1, MINIMALLY_POSITIVE: 2}
    verdict = MINIMALLY_POSITIVE
    for f in factorize(r):
        if f.is_local():
            continue
        v = _indecomposable_positivity(f)
        if order[v] < order[verdict]:
            verdict = v
    return verdict


def morse_bott_index(r: Region) -> int:
    """Index of the minimal decoration of the underlying region."""
    return ech_index(minimal_decoration(r))


def loose_mult(r: Region) -> tuple[dict[Pos, int], int]:
    """Per-position loose multiplicity and its total."""
    per: dict[Pos, int] = {}
    for x in r.support:
        v, c = r.shared_data(x)
        m = r.p0.m_at(x) if c == 1 else r.p1.m_at(x)
        if m:
            per[x] = m
    return per, sum(per.values())


def sharing_mult(r1: Region, r2: Region) -> tuple[dict[Pos, int], int]:
    """Sharing multiplicity of regions (P0,P1), (P1,P2) along the middle path."""
    if r1.p1.undecorated() != r2.p0.undecorated():
        raise ValueError("regions do not share their middle path")
    r = Region(r1.p0, r2.p1)
    t = trivial_bigon_count(r)
    t1 = trivial_bigon_count(r1)
    t2 = trivial_bigon_count(r2)
    per: dict[Pos, int] = {}
    for x in sorted(set(r1.p1.edges) | set(t) | set(t1) | set(t2)):
        val = r1.p1.m_at(x) + t.get(x, 0) - t1.get(x, 0) - t2.get(x, 0)
        if val:
            per[x] = val
    return per, sum(per.values())


# ---------------------------------------------------------------------------
# The main-theorem decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Split:
    t1: Region
    middle: Region
    t2: Region


def _shed_option(e0: Optional[Edge], e1: Optional[Edge]):
    """How many (elliptic, hyperbolic) pairs to shed at a boundary position so
    that one side empties; None if neither side is decoration-dominated."""
    a = (e0.m_e, e0.m_h) if e0 else (0, 0)
    b = (e1.m_e, e1.m_h) if e1 else (0, 0)
    if a[0] <= b[0] and a[1] <= b[1]:
        return a
    if b[0] <= a[0] and b[1] <= a[1]:
        return b
    return None


def theorem_split(r: Region) -> Optional[Split]:
    """Write r as T1 * R' * T2 with T trivial and R' non-empty, non-local and
    indecomposable, shedding matched decorated pairs at the boundary of the
    single block whose decorated content differs.  None if impossible.
    """
    diff = [x for x in r.support if r.p0.edge_at(x) != r.p1.edge_at(x)]
    if not diff:
        return None
    r1, r2 = diff[0], diff[-1]

    def shed(x: Pos, pair):
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        ae, ah = pair
        trivial = {}
        if ae + ah > 0:
            v, c = r.shared_data(x)
            trivial[x] = Edge(v, c, ae, ah)
        rest = []
        for e in (e0, e1):
            if e is None:
                rest.append(None)
            else:
                me, mh = e.m_e - ae, e.m_h - ah
                rest.append(Edge(e.v, e.c, me, mh) if me + mh > 0 else None)
        return trivial, rest[0], rest[1]

    pair1 = _shed_option(r.p0.edge_at(r1), r.p1.edge_at(r1))
    pair2 = _shed_option(r.p0.edge_at(r2), r.p1.edge_at(r2)) if r2 != r1 else (0, 0)
    if pair1 is None or pair2 is None:
        return None
    triv1, rest1_0, rest1_1 = shed(r1, pair1)
    if r2 != r1:
        triv2, rest2_0, rest2_1 = shed(r2, pair2)
    else:
        triv2, rest2_0, rest2_1 = {}, rest1_0, rest1_1

    mid0 = {x: e for x, e in r.p0.edges.items() if r1 < x < r2}
    mid1 = {x: e for x, e in r.p1.edges.items() if r1 < x < r2}
    for x, e0x, e1x in ((r1, rest1_0, rest1_1),) + (((r2, rest2_0, rest2_1),) if r2 != r1 else ()):
        if e0x:
            mid0[x] = e0x
        if e1x:
            mid1[x] = e1x
    try:
        middle = Region(DPath(mid0), DPath(mid1))
    except ValueError:
        return None
    if middle.is_empty() or middle.is_local() or not is_indecomposable(middle):
        return None

    left0 = {x: e for x, e in r.p0.edges.items() if x < r1}
    left1 = {x: e for x, e in r.p1.edges.items() if x < r1}
    left0.update(triv1)
    left1.update(dict(triv1))
    right0 = {x: e for x, e in r.p0.edges.items() if x > r2}
    right1 = {x: e for x, e in r.p1.edges.items() if x > r2}
    right0.update(triv2)
    right1.update(dict(triv2))
    t1 = Region(DPath(left0), DPath(left1))
    t2 = Region(DPath(right0), DPath(right1))
    if not t1.is_trivial() or not t2.is_trivial():
        return None
    return Split(t1, middle, t2)
