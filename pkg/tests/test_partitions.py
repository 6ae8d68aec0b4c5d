"""Partition paths against an exhaustive concave-path oracle."""

from fractions import Fraction
from math import gcd

from echcomb.partitions import (
    PartitionPath, floor_frac, lambda_plus, p_hyperbolic, p_minus, p_plus,
)


def concave_paths_below(phi: Fraction, m: int):
    """All concave lattice paths (as vertex tuples) from (0,0) to (m, floor(m*phi))
    through lattice points weakly below y = phi*x, consecutive-point steps."""
    end = (m, floor_frac(m * phi))

    def extend(path, last_slope):
        x0, y0 = path[-1]
        if (x0, y0) == end:
            yield tuple(path)
            return
        for x1 in range(x0 + 1, m + 1):
            for y1 in range(y0 - 3 * m - 8, y0 + 3 * m + 8):
                if Fraction(y1) > phi * x1:
                    continue
                dx, dy = x1 - x0, y1 - y0
                if gcd(dx, abs(dy)) != 1:
                    continue
                slope = Fraction(dy, dx)
                if last_slope is not None and slope > last_slope:
                    continue
                yield from extend(path + [(x1, y1)], slope)

    yield from extend([(0, 0)], None)


def maximal_concave_oracle(phi: Fraction, m: int):
    """Pointwise-maximal concave path via exhaustive search."""
    best = None
    for path in concave_paths_below(phi, m):
        if best is None:
            best = path
            continue
        # compare pointwise: evaluate piecewise-linear height at each x
        def height(p, x):
            for (x0, y0), (x1, y1) in zip(p, p[1:]):
                if x0 <= x <= x1:
                    return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
            raise AssertionError
        if all(height(path, Fraction(x, 2)) >= height(best, Fraction(x, 2))
               for x in range(2 * m + 1)):
            best = path
    return best


def test_lambda_plus_matches_oracle_small():
    for num in range(-9, 10):
        for den in (1, 2, 3, 5, 7):
            phi = Fraction(num, den)
            for m in range(1, 5):
                if any((k * phi).denominator == 1 for k in range(1, m + 1)):
                    continue
                got = lambda_plus(phi, m)
                want = maximal_concave_oracle(phi, m)
                assert got.vertices == want, (phi, m)


def test_spec_values():
    assert lambda_plus(Fraction(8, 5), 3).vertices == ((0, 0), (2, 3), (3, 4))
    assert p_plus(Fraction(8, 5), 3) == (2, 1)
    assert p_plus(Fraction(13, 10), 3) == (1, 1, 1)
    assert lambda_plus(Fraction(1, 2), 1).entries == (1,)
    assert p_minus(Fraction(8, 5), 2) == (1, 1)
    assert p_plus(Fraction(5, 16), 2) == (1, 1)
    assert p_hyperbolic(4) == (1, 1, 1, 1)


def test_entry_primitivity_and_rise():
    for num in range(-20, 21):
        for den in (3, 7, 16, 64):
            phi = Fraction(num * 2 + 1, den)
            for m in range(1, 9):
                if any((k * phi).denominator == 1 for k in range(1, m + 1)):
                    continue
                pp = lambda_plus(phi, m)
                for (x0, y0), (x1, y1) in zip(pp.vertices, pp.vertices[1:]):
                    n, rise = x1 - x0, y1 - y0
                    assert gcd(n, abs(rise)) == 1
                    assert rise == floor_frac(n * phi)
                assert sum(pp.entries) == m


def test_stability_prefix():
    # equal paths at m imply equal paths at every smaller multiplicity
    import itertools
    phis = [Fraction(a, b) for a, b in itertools.product(range(1, 12), (5, 7, 9))
            if gcd(a, b) == 1]
    for phi1 in phis[:12]:
        for phi2 in phis[12:24]:
            m = 6
            if any((k * phi1).denominator == 1 or (k * phi2).denominator == 1
                   for k in range(1, m + 1)):
                continue
            if lambda_plus(phi1, m).vertices == lambda_plus(phi2, m).vertices:
                for mp in range(1, m):
                    assert lambda_plus(phi1, mp).vertices == lambda_plus(phi2, mp).vertices


def test_area_under():
    pp = lambda_plus(Fraction(8, 5), 3)
    # vertices (0,0),(2,3),(3,4): trapezoid areas 2*(0+3)/2 + 1*(3+4)/2
    assert pp.twice_area_under() == 2 * 3 + 7
    assert lambda_plus(Fraction(5, 16), 2).twice_area_under() == 0
