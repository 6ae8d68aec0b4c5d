"""Special partitions from maximal concave lattice paths under a rational line.

For a rational slope phi and a positive integer m, ``lambda_plus(phi, m)`` is
the maximal concave lattice path from (0,0) to (m, floor(m*phi)) lying weakly
below the line y = phi*x.  Its horizontal displacements between consecutive
lattice points give the incoming partition; the outgoing partition negates phi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd


def floor_frac(q: Fraction) -> int:
    """Floor toward minus infinity (works for negative rationals)."""
    return q.numerator // q.denominator


@dataclass(frozen=True)
class PartitionPath:
    phi: Fraction
    m: int
    vertices: tuple[tuple[int, int], ...]

    @property
    def entries(self) -> tuple[int, ...]:
        """Horizontal displacements between consecutive lattice points, sorted."""
        runs = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            runs.append(x1 - x0)
        return tuple(sorted(runs, reverse=True))

    def twice_area_under(self) -> int:
        """Twice the signed area between the path and the x-axis."""
        total = 0
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            total += (x1 - x0) * (y0 + y1)
        return total


def lambda_plus(phi: Fraction, m: int) -> PartitionPath:
    """The maximal concave lattice path below y = phi*x from (0,0) to (m, floor(m*phi)).

    Computed as the upper convex hull of the points (k, floor(k*phi)) for
    0 <= k <= m, subdivided at every lattice point it passes through.
    """
    phi = Fraction(phi)
    if m < 0:
        raise ValueError("multiplicity must be non-negative")
    if m == 0:
        return PartitionPath(phi, 0, ((0, 0),))
    pts = [(k, floor_frac(k * phi)) for k in range(m + 1)]
    # upper hull, left to right: keep turns that are right turns or straight
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # remove hull[-1] if it lies weakly below segment hull[-2]..p
            if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    # subdivide each hull segment at interior lattice points
    verts: list[tuple[int, int]] = [hull[0]]
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        dx, dy = x1 - x0, y1 - y0
        g = gcd(abs(dx), abs(dy))
        for t in range(1, g + 1):
            verts.append((x0 + t * (dx // g), y0 + t * (dy // g)))
    return PartitionPath(phi, m, tuple(verts))


def p_plus(phi: Fraction, m: int) -> tuple[int, ...]:
    """Incoming special partition of m for an elliptic orbit of rotation angle phi."""
    return lambda_plus(Fraction(phi), m).entries


def p_minus(phi: Fraction, m: int) -> tuple[int, ...]:
    """Outgoing special partition: p^-_phi(m) = p^+_{-phi}(m)."""
    return lambda_plus(-Fraction(phi), m).entries


def p_hyperbolic(m: int) -> tuple[int, ...]:
    """Both special partitions of a positive hyperbolic orbit: (1, ..., 1)."""
    return (1,) * m
