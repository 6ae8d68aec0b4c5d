"""Shared test helpers: compact region builders and small random samplers."""

import random
from fractions import Fraction

import pytest

from echcomb.paths import DPath, Edge, Region


def path(*edges):
    """path((x, v, c, m_e, m_h), ...) with x any rational-able."""
    return DPath({Fraction(x): Edge(v, c, me, mh) for x, v, c, me, mh in edges})


def region(p0_edges, p1_edges):
    return Region(path(*p0_edges), path(*p1_edges))


SMALL_VECS = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (1, -1), (-1, -1),
              (2, 1), (1, 2), (-1, 2), (-2, 1)]


def random_region(rng: random.Random, max_positions=4, max_mult=2, tries=2000):
    """A random small region: shared (v, c) per position, balanced classes."""
    for _ in range(tries):
        k = rng.randint(1, max_positions)
        xs = sorted(rng.sample(range(1, 9), k))
        shared = [(rng.choice(SMALL_VECS), rng.choice((1, -1))) for _ in range(k)]
        m0 = [rng.randint(0, max_mult) for _ in range(k)]
        m1 = [rng.randint(0, max_mult) for _ in range(k)]
        cls0 = [0, 0]
        cls1 = [0, 0]
        for (v, c), a, b in zip(shared, m0, m1):
            cls0[0] += a * v[0]
            cls0[1] += a * v[1]
            cls1[0] += b * v[0]
            cls1[1] += b * v[1]
        if cls0 != cls1 or all(a == 0 for a in m0 + m1):
            continue
        p0 = {}
        p1 = {}
        for x, (v, c), a, b in zip(xs, shared, m0, m1):
            if a:
                me = rng.randint(0, a)
                p0[Fraction(x)] = Edge(v, c, me, a - me)
            if b:
                me = rng.randint(0, b)
                p1[Fraction(x)] = Edge(v, c, me, b - me)
        return Region(DPath(p0), DPath(p1))
    raise RuntimeError("no balanced region found")


def random_table(rng: random.Random, size=6, distinct_vecs=3):
    """A fixed position -> (v, c) assignment; paths on one table are compatible.

    Few distinct vectors keeps class collisions frequent."""
    pool = rng.sample(SMALL_VECS, distinct_vecs)
    return {Fraction(x): (rng.choice(pool), rng.choice((1, -1)))
            for x in range(1, size + 1)}


def random_path_on_table(rng: random.Random, table, max_mult=2, p_skip=0.55):
    edges = {}
    for x, (v, c) in table.items():
        if rng.random() < p_skip:
            continue
        m = rng.randint(1, max_mult)
        me = rng.randint(0, m)
        edges[x] = Edge(v, c, me, m - me)
    return DPath(edges)


@pytest.fixture
def rng():
    return random.Random(20240817)
