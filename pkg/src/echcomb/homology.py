"""Relative gradings and GF(2) homology of the boundary matrix."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .differential import boundary_matrix
from .gf2 import BitMatrix, d_squared, rank
from .orbits import OrbitSet, associate_region, class_of, generators
from .paths import OffsetRegion, ech_index
from .profile import Profile


def relative_index(alpha: OrbitSet, beta: OrbitSet, p: Profile, extra=None) -> int:
    """The combinatorial ECH index of the associated (extended) region.

    ``extra`` is the base slice class sigma0 on circles (default (0,0)) and
    the imposed d on s1s2 (default 0)."""
    if class_of(alpha, p) != class_of(beta, p):
        raise ValueError("orbit sets lie in different homology classes")
    if p.geometry == "circle":
        r = associate_region(alpha, beta, p, extra if extra is not None else (0, 0))
    elif p.geometry == "s1s2":
        r = associate_region(alpha, beta, p, extra if extra is not None else 0)
    else:
        r = associate_region(alpha, beta, p)
    return ech_index(r)


def grading_modulus(p: Profile, cls) -> int:
    """0 (Z-graded) for interval/lens; 2*gcd of the class for circle/s1s2."""
    if p.geometry == "circle":
        if cls != (0, 0):
            return 2 * gcd(abs(cls[0]), abs(cls[1]))
        return 0
    if p.geometry == "s1s2":
        return 2 * abs(cls) if cls else 0
    return 0


@dataclass(frozen=True)
class BettiReport:
    cls: object
    modulus: int
    base_index: int
    gradings: tuple[int, ...]
    table: tuple[tuple[int, int], ...]       # (grading, rank), sorted
    total_rank: int
    generator_count: int
    matrix_rank: int

    def lines(self) -> list[str]:
        cls_str = (f"{self.cls[0]},{self.cls[1]}" if isinstance(self.cls, tuple)
                   else str(self.cls))
        return [f"{cls_str}\t{g}\t{r}" for g, r in self.table]


def betti(p: Profile, cls, bound: Fraction, gens: Optional[list[OrbitSet]] = None,
          matrix: Optional[BitMatrix] = None) -> BettiReport:
    """Graded homology ranks of the filtered complex in one homology class."""
    if gens is None:
        gens = generators(p, cls, bound)
    if matrix is None:
        matrix = boundary_matrix(p, gens)
    witness = d_squared(matrix)
    if witness is not None:
        raise ValueError(f"boundary matrix does not square to zero: {witness}")
    modulus = grading_modulus(p, cls)
    if not gens:
        return BettiReport(cls, modulus, -1, (), (), 0, 0, rank(matrix))
    base = gens[0]
    gradings = []
    for g in gens:
        val = relative_index(g, base, p)
        gradings.append(val % modulus if modulus else val)
    # split the matrix by grading of the column generator
    by_grading: dict[int, list[int]] = {}
    for i, g in enumerate(gradings):
        by_grading.setdefault(g, []).append(i)
    ranks: dict[int, int] = {}
    for g, cols in by_grading.items():
        sub = frozenset((r, c) for (r, c) in matrix.entries if c in set(cols))
        ranks[g] = rank(BitMatrix(matrix.rows, matrix.cols, sub))
    table = []
    for g, cols in sorted(by_grading.items()):
        succ = (g + 1) % modulus if modulus else g + 1
        h = len(cols) - ranks.get(g, 0) - ranks.get(succ, 0)
        table.append((g, h))
    total = len(gens) - 2 * rank(matrix)
    return BettiReport(cls, modulus, 0, tuple(gradings), tuple(table), total,
                       len(gens), rank(matrix))
