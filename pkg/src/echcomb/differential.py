"""Differential coefficients per geometry and boundary-matrix assembly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .gf2 import BitMatrix
from .lattice import Vec
from .orbits import OrbitSet, associate_path, associate_region, class_of, extension_of
from .paths import (
    MINIMALLY_POSITIVE, DPath, Edge, Pos, Region, Split, _indecomposable_positivity,
    decoration_distance, ech_index, sigma_profile, theorem_split,
    trivial_bigon_count,
)
from .profile import FamilyIndex, Profile, family_index, sweep_of


class InvariantViolation(RuntimeError):
    """An engine-level guarantee failed (reported as exit code 2 by the CLI)."""


@dataclass(frozen=True)
class CoefficientReport:
    value: int
    witness: object = None
    reason: str = ""


def _middle_passes(split: Split, fi: FamilyIndex) -> bool:
    from .profile import a_positive

    mid = split.middle
    return (a_positive(mid, fi)
            and _indecomposable_positivity(mid) == MINIMALLY_POSITIVE
            and decoration_distance(mid) == 1)


def _interval_criteria(r: Region, fi: FamilyIndex) -> CoefficientReport:
    split = theorem_split(r)
    if split is None:
        return CoefficientReport(0, reason="no trivial*middle*trivial decomposition")
    if not _middle_passes(split, fi):
        return CoefficientReport(0, split, "middle factor fails the index-one criteria")
    return CoefficientReport(1, split)


def coefficient_interval(alpha: OrbitSet, beta: OrbitSet, p: Profile) -> CoefficientReport:
    if class_of(alpha, p) != class_of(beta, p):
        raise ValueError("orbit sets lie in different homology classes")
    r = associate_region(alpha, beta, p)
    return _interval_criteria(r, family_index(p))


# ---------------------------------------------------------------------------
# Circle: relevant lifts
# ---------------------------------------------------------------------------

class _CircleIndex(FamilyIndex):
    """Family lookup for lifted (real-line) positions of a circle profile."""

    def family(self, x: Pos):
        return self.by_pos.get(x % 1)


def _splits_of(e: Optional[Edge]):
    """All ways to keep (ae, ah) copies at the cut and send the rest up."""
    if e is None:
        yield None, None
        return
    for ae in range(e.m_e + 1):
        for ah in range(e.m_h + 1):
            keep = Edge(e.v, e.c, ae, ah) if ae + ah else None
            rest = (e.m_e - ae, e.m_h - ah)
            up = Edge(e.v, e.c, *rest) if sum(rest) else None
            yield keep, up


def candidate_lifts(pa: DPath, pb: DPath) -> list[Region]:
    """Normalized-window lifts of the pair: cut position plus a split of the
    cut family's copies between the two window ends."""
    support = sorted(set(pa.edges) | set(pb.edges))
    seen = {}
    for cut in support:
        before_a = {x + 1: e for x, e in pa.edges.items() if x < cut}
        before_b = {x + 1: e for x, e in pb.edges.items() if x < cut}
        after_a = {x: e for x, e in pa.edges.items() if x > cut}
        after_b = {x: e for x, e in pb.edges.items() if x > cut}
        for keep_a, up_a in _splits_of(pa.edge_at(cut)):
            for keep_b, up_b in _splits_of(pb.edge_at(cut)):
                p0 = dict(after_a)
                p1 = dict(after_b)
                if keep_a:
                    p0[cut] = keep_a
                if keep_b:
                    p1[cut] = keep_b
                for acc, up in ((p0, up_a), (p1, up_b)):
                    if up:
                        acc[cut + 1] = up
                p0.update(before_a)
                p1.update(before_b)
                region = Region(DPath(p0), DPath(p1))
                key = (tuple(region.p0.edges.items()), tuple(region.p1.edges.items()))
                seen.setdefault(key, region)
    return list(seen.values())


def lift_sigma0(lift: Region) -> Vec:
    """The base slice class of the offset region this lift projects to."""
    total = (0, 0)
    levels = sigma_profile(lift)
    support = lift.support
    if not support:
        return total
    import math

    from .lattice import add
    lo = support[0]
    hi = support[-1]
    n = math.floor(lo) + 1
    sigma = (0, 0)
    idx = 0
    while n <= hi:
        while idx < len(levels) and levels[idx][0] < n:
            sigma = levels[idx][1]
            idx += 1
        total = add(total, sigma)
        n += 1
    return total


def is_relevant_lift(lift: Region, p: Profile, fi: FamilyIndex) -> bool:
    support = lift.support
    if not support:
        return False
    x1 = support[0]
    if not (0 <= x1 < 1):
        return False
    if support[-1] > x1 + 1:
        return False
    split = theorem_split(lift)
    if split is None or not _middle_passes(split, fi):
        return False
    if trivial_bigon_count(lift).get(x1 + 1, 0):
        return False
    return True


def coefficient_circle(alpha: OrbitSet, beta: OrbitSet, p: Profile) -> CoefficientReport:
    if class_of(alpha, p) != class_of(beta, p):
        raise ValueError("orbit sets lie in different homology classes")
    pa, pb = associate_path(alpha, p), associate_path(beta, p)
    fi = _CircleIndex(p.families(), sweep_of(p))
    relevant = [lift for lift in candidate_lifts(pa, pb)
                if is_relevant_lift(lift, p, fi)]
    if len(relevant) == 1:
        return CoefficientReport(1, relevant)
    reason = "no relevant lift" if not relevant else f"{len(relevant)} relevant lifts"
    return CoefficientReport(0, relevant or None, reason)


# ---------------------------------------------------------------------------
# Lens and S1 x S2
# ---------------------------------------------------------------------------

def coefficient_lens(alpha: OrbitSet, beta: OrbitSet, p: Profile) -> CoefficientReport:
    if class_of(alpha, p) != class_of(beta, p):
        raise ValueError("orbit sets lie in different homology classes")
    r = associate_region(alpha, beta, p)
    return _interval_criteria(r, extension_of(p).index)


def coefficient_s1s2(alpha: OrbitSet, beta: OrbitSet, p: Profile) -> CoefficientReport:
    if class_of(alpha, p) != class_of(beta, p):
        raise ValueError("orbit sets lie in different homology classes")
    fi = extension_of(p).index
    passing = []
    for d in (0, 1):
        r = associate_region(alpha, beta, p, extra=d)
        rep = _interval_criteria(r, fi)
        if rep.value:
            passing.append((d, rep))
    if len(passing) == 1:
        d, rep = passing[0]
        return CoefficientReport(1, (d, rep.witness))
    if len(passing) == 2:
        return CoefficientReport(0, passing, "contributions at d=0 and d=1 cancel")
    return CoefficientReport(0, reason="no admissible d")


def coefficient(alpha: OrbitSet, beta: OrbitSet, p: Profile) -> CoefficientReport:
    fn = {"interval": coefficient_interval, "circle": coefficient_circle,
          "lens": coefficient_lens, "s1s2": coefficient_s1s2}[p.geometry]
    return fn(alpha, beta, p)


# ---------------------------------------------------------------------------
# Matrix assembly
# ---------------------------------------------------------------------------

def boundary_matrix(p: Profile, gens: list[OrbitSet],
                    check_action=True) -> BitMatrix:
    """Sparse GF(2) matrix with entry (beta-row, alpha-column) = <d alpha, beta>.

    Raises InvariantViolation if a non-zero coefficient fails to strictly
    decrease the action (possible only for non-realizable profiles)."""
    n = len(gens)
    actions = [g.action(p) for g in gens]
    entries = set()
    for col, alpha in enumerate(gens):
        for row, beta in enumerate(gens):
            if row == col:
                continue
            rep = coefficient(alpha, beta, p)
            if rep.value:
                if check_action and not actions[row] < actions[col]:
                    raise InvariantViolation(
                        f"non-zero coefficient without action decrease: "
                        f"{alpha} -> {beta}")
                entries.add((row, col))
    return BitMatrix(n, n, frozenset(entries))
