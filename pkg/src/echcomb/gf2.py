"""Sparse GF(2) matrices: rank, d-squared verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    entries: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry ({r},{c}) out of bounds")

    def row_masks(self) -> list[int]:
        masks = [0] * self.rows
        for r, c in self.entries:
            masks[r] |= 1 << c
        return masks

    def col_masks(self) -> list[int]:
        masks = [0] * self.cols
        for r, c in self.entries:
            masks[c] |= 1 << r
        return masks

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [f"{r} {c}" for r, c in sorted(self.entries)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        rows, cols = map(int, lines[0].split())
        entries = frozenset(tuple(map(int, ln.split())) for ln in lines[1:])
        return cls(rows, cols, entries)


def rank(m: BitMatrix) -> int:
    """GF(2) rank by elimination on integer bitmask rows."""
    masks = [mask for mask in m.row_masks() if mask]
    r = 0
    while masks:
        pivot = masks.pop()
        if pivot == 0:
            continue
        r += 1
        low = pivot & -pivot
        masks = [mk ^ pivot if mk & low else mk for mk in masks]
        masks = [mk for mk in masks if mk]
    return r


def d_squared(m: BitMatrix) -> Optional[tuple[int, int]]:
    """None iff m*m = 0 over GF(2); otherwise a witness (gamma, alpha)."""
    if m.rows != m.cols:
        raise ValueError("d-squared needs a square matrix")
    rows = m.row_masks()
    cols = m.col_masks()
    for gamma in range(m.rows):
        rm = rows[gamma]
        if not rm:
            continue
        for alpha in range(m.cols):
            if (rm & cols[alpha]).bit_count() & 1:
                return (gamma, alpha)
    return None
