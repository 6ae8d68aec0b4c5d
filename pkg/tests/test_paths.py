"""Lattice-core tests: slice classes, factorization, positivity, index, splits."""

import itertools
import random
from fractions import Fraction

import pytest

from conftest import path, random_region, region

from echcomb.lattice import add, cross, scale, sub
from echcomb.paths import (
    MINIMALLY_POSITIVE, NOT_POSITIVE, POSITIVE, DPath, Edge, OffsetRegion,
    Region, classify_positivity, decoration_distance, ech_index, factor_blocks,
    factorize, is_indecomposable, local_index, loose_mult, minimal_decoration,
    morse_bott_index, q_total, sharing_mult, slice_class, sigma_profile,
    theorem_split, trivial_bigon_count,
)

X = Fraction


# --- Figure 1(b) fixtures -------------------------------------------------

def fig1b_region1():
    # red: convex hyperbolic (1,0) at x1;  blue: concave elliptic (1,0) at x4
    return region([(1, (1, 0), 1, 0, 1)], [(4, (1, 0), -1, 1, 0)])


def fig1b_region2():
    # red: convex h at x5 and convex e at x6;  blue: empty
    return region([(5, (1, 0), 1, 0, 1), (6, (-1, 0), 1, 1, 0)], [])


def fig1b_region3():
    # red: h(1,0)@x1, e(0,1)@x3;  blue: h(0,1)@x2, h(1,0)@x4
    return region([(1, (1, 0), 1, 0, 1), (3, (0, 1), -1, 1, 0)],
                  [(2, (0, 1), 1, 0, 1), (4, (1, 0), -1, 0, 1)])


def fig2_square():
    # red: convex h's (1,0),(0,1),(-1,0);  blue: convex e (0,1) at the shared family
    return region([(1, (1, 0), 1, 0, 1), (2, (0, 1), 1, 0, 1), (3, (-1, 0), 1, 0, 1)],
                  [(2, (0, 1), 1, 1, 0)])


# --- slice classes --------------------------------------------------------

def test_slice_class_fig1b_region3():
    r = fig1b_region3()
    assert slice_class(r, X(5, 2)) == (-1, 1)          # x in (x2, x3)
    assert slice_class(r, X(1)) == (0, 0)
    assert slice_class(r, X(2)) == (-1, 0)
    assert slice_class(r, X(4)) == (-1, 0)
    assert slice_class(r, X(9)) == (0, 0)


def test_slice_class_empty_and_brute(rng):
    assert slice_class(region([], []), X(1, 2)) == (0, 0)
    for _ in range(80):
        r = random_region(rng)
        for x in list(r.support) + [X(100)]:
            s = (0, 0)
            for y, e in r.p0.edges.items():
                if y < x:
                    s = sub(s, scale(e.m, e.v))
            for y, e in r.p1.edges.items():
                if y < x:
                    s = add(s, scale(e.m, e.v))
            assert slice_class(r, x) == s
        assert slice_class(r, r.support[-1] + 1) == (0, 0)


def test_slice_class_offset():
    r = OffsetRegion(path((X(1, 4), (1, 0), 1, 1, 0)), path((X(1, 4), (1, 0), 1, 1, 0)),
                     sigma0=(2, -1))
    assert slice_class(r, X(0)) == (2, -1)
    assert slice_class(r, X(1, 2)) == (2, -1)


# --- index ----------------------------------------------------------------

def test_ech_index_fig1b():
    r1 = fig1b_region1()
    assert q_total(r1) == 0
    assert ech_index(r1) == 1
    r3 = fig1b_region3()
    assert q_total(r3) == 2
    assert ech_index(r3) == 1
    # q_total is twice the Euclidean area of the depicted polygon (unit square)
    assert q_total(r3) == 2 * 1


def test_ech_index_trivial_region(rng):
    for _ in range(40):
        r = random_region(rng)
        t = Region(r.p0, r.p0)
        assert ech_index(t) == 0


def test_ech_index_telescopes(rng):
    hits = 0
    for _ in range(3000):
        r = random_region(rng, max_positions=3)
        # build a third path with the same class by reusing p0's edge multiset
        r2 = random_region(rng, max_positions=3)
        if r2.p0.path_class() != r.p0.path_class():
            continue
        try:
            a = Region(r.p0, r.p1)
            b = Region(r.p1, r2.p1)
            c = Region(r.p0, r2.p1)
        except ValueError:
            continue
        assert ech_index(c) == ech_index(a) + ech_index(b)
        hits += 1
    assert hits > 50


# --- decorations ----------------------------------------------------------

def test_minimal_decoration_fig1b_region1():
    r = fig1b_region1()
    m = minimal_decoration(r)
    # p0 convex edge stays hyperbolic, p1 concave edge becomes hyperbolic
    assert m.p0.edges[X(1)] == Edge((1, 0), 1, 0, 1)
    assert m.p1.edges[X(4)] == Edge((1, 0), -1, 0, 1)
    assert minimal_decoration(m) == m
    assert decoration_distance(r) == 1
    assert decoration_distance(m) == 0


def test_decoration_distance_values(rng):
    assert decoration_distance(fig1b_region3()) == 1
    r = region([(1, (1, 0), 1, 2, 0)], [(2, (1, 0), 1, 2, 0)])
    # p0 convex minimal is all-h (distance 2), p1 convex minimal is all-e
    assert decoration_distance(r) == 2
    for _ in range(40):
        q = random_region(rng)
        assert (decoration_distance(q) == 0) == (q == minimal_decoration(q))


# --- factorization --------------------------------------------------------

def _take_copies(e, count):
    """An Edge with `count` copies of e (elliptic copies first), or None."""
    if count == 0:
        return None
    me = min(count, e.m_e)
    return Edge(e.v, e.c, me, count - me)


def enumerate_cuts(r: Region):
    """All ways to write r = left * right with both non-empty (undecorated)."""
    out = []
    for x in r.support:
        s = slice_class(r, x)
        e0, e1 = r.p0.edge_at(x), r.p1.edge_at(x)
        v = (e0 or e1).v
        m0 = e0.m if e0 else 0
        m1 = e1.m if e1 else 0
        for d in range(m0 + 1):
            for u in range(m1 + 1):
                if add(s, scale(u - d, v)) != (0, 0):
                    continue
                left0 = {y: e for y, e in r.p0.edges.items() if y < x}
                left1 = {y: e for y, e in r.p1.edges.items() if y < x}
                right0 = {y: e for y, e in r.p0.edges.items() if y > x}
                right1 = {y: e for y, e in r.p1.edges.items() if y > x}
                for acc, e, cnt in ((left0, e0, d), (left1, e1, u),
                                    (right0, e0, m0 - d), (right1, e1, m1 - u)):
                    if e is not None:
                        piece = _take_copies(e, cnt)
                        if piece is not None:
                            acc[x] = piece
                left = Region(DPath(left0), DPath(left1))
                right = Region(DPath(right0), DPath(right1))
                if left.is_empty() or right.is_empty():
                    continue
                out.append((left, right))
    return out


def undecorated_key(r: Region):
    return (r.p0.undecorated(), r.p1.undecorated())


def brute_factorize_all_first_cuts(r: Region):
    """Factor multisets for every possible decomposition order (uniqueness check)."""
    cuts = enumerate_cuts(r)
    if not cuts:
        return [tuple(sorted([undecorated_key(r)]))]
    results = set()
    for left, right in cuts:
        for lf in brute_factorize_all_first_cuts(left):
            for rf in brute_factorize_all_first_cuts(right):
                results.add(tuple(sorted(lf + rf)))
    return sorted(results)


def test_factorize_matches_brute_force(rng):
    for _ in range(250):
        r = random_region(rng, max_positions=3, max_mult=2)
        got = tuple(sorted(undecorated_key(f) for f in factorize(r)))
        variants = brute_factorize_all_first_cuts(r)
        assert len(variants) == 1, f"factorization not unique for {r}"
        assert got == variants[0], (r, got, variants[0])


def test_factorize_examples():
    # a bigon stack factors into single bigons
    stack = region([(1, (1, 0), 1, 1, 1)], [(1, (1, 0), 1, 2, 0)])
    fs = factorize(stack)
    assert len(fs) == 2 and all(f.is_local() for f in fs)
    # an interior parallel pair splits the region in two (A*C shape)
    ac = region([(1, (1, 0), 1, 1, 0), (2, (1, 0), 1, 1, 0)],
                [(2, (1, 0), 1, 1, 0), (3, (1, 0), 1, 1, 0)])
    fs = factorize(ac)
    assert len(fs) == 2 and not any(f.is_local() for f in fs)
    assert is_indecomposable(fig1b_region1())
    assert is_indecomposable(fig1b_region3())
    assert is_indecomposable(fig2_square())


def test_factor_blocks():
    r3 = fig1b_region3()
    assert len(factor_blocks(r3)) == 1
    two_bigons = region([(1, (1, 0), 1, 1, 0), (2, (0, 1), -1, 1, 0)],
                        [(1, (1, 0), 1, 0, 1), (2, (0, 1), -1, 0, 1)])
    blocks = factor_blocks(two_bigons)
    assert len(blocks) == 2 and all(b.is_local() for b in blocks)
    # concatenation of region 1 (translated) and region 2: sigma vanishes between
    r1 = fig1b_region1()
    r2 = fig1b_region2().translate(X(10))
    cat = Region(DPath({**r1.p0.edges, **r2.p0.edges}),
                 DPath({**r1.p1.edges, **r2.p1.edges}))
    assert len(factor_blocks(cat)) == 2


def test_trivial_bigon_count(rng):
    stack = region([(1, (1, 0), 1, 1, 1)], [(1, (1, 0), 1, 2, 0)])
    assert trivial_bigon_count(stack) == {X(1): 2}
    # bigon absorbed into surrounding non-local factors is not counted
    ac = region([(1, (1, 0), 1, 1, 0), (2, (1, 0), 1, 1, 0)],
                [(2, (1, 0), 1, 1, 0), (3, (1, 0), 1, 1, 0)])
    assert trivial_bigon_count(ac) == {}
    # non-parallel interior bigon is not a factor either
    r = region([(1, (1, 0), 1, 1, 0), (2, (0, 1), 1, 1, 0)],
               [(2, (0, 1), 1, 1, 0), (4, (1, 0), -1, 1, 0)])
    assert trivial_bigon_count(r) == {}
    for _ in range(150):
        q = random_region(rng, max_positions=3)
        per = trivial_bigon_count(q)
        bigons = {}
        for f in factorize(q):
            if f.is_local() and f.p0.m_total() == 1:
                x = f.support[0]
                bigons[x] = bigons.get(x, 0) + 1
        assert per == bigons


# --- positivity -----------------------------------------------------------

def test_positivity_examples():
    assert classify_positivity(fig1b_region3()) == MINIMALLY_POSITIVE
    assert classify_positivity(fig1b_region1()) == MINIMALLY_POSITIVE
    assert classify_positivity(fig2_square()) == POSITIVE
    bigon = region([(1, (1, 0), 1, 1, 0)], [(1, (1, 0), 1, 0, 1)])
    assert classify_positivity(bigon) == MINIMALLY_POSITIVE  # vacuous
    bad = region([(1, (0, 1), 1, 1, 0)], [(2, (0, 1), 1, 1, 0)])
    # sigma = (0,-1) on the gap; cross((0,1),(0,-1)) = 0 at x2 on p1 with c=+1
    assert classify_positivity(bad) == NOT_POSITIVE


def test_local_index_positive_for_positive_regions(rng):
    # Lemma: positive indecomposable non-local regions have I_R(x) >= 0
    checked = 0
    for _ in range(4000):
        r = random_region(rng)
        if r.is_local() or not is_indecomposable(r):
            continue
        if classify_positivity(r) == NOT_POSITIVE:
            continue
        for x in r.support:
            assert local_index(r, x) >= 0, (r, x)
        checked += 1
    assert checked > 10


# --- Morse-Bott quantities --------------------------------------------------

def test_loose_mult():
    assert loose_mult(fig1b_region1()) == ({X(1): 1, X(4): 1}, 2)
    assert loose_mult(fig2_square())[1] == 3


def test_morse_bott_index():
    assert morse_bott_index(fig1b_region1()) == 0
    assert morse_bott_index(fig1b_region3()) == 0
    assert morse_bott_index(fig2_square()) == 1


def test_sharing_mult_errors():
    r1 = fig1b_region1()
    with pytest.raises(ValueError):
        sharing_mult(r1, fig1b_region2())


def test_sharing_mult_stacked_bigon():
    b = region([(1, (1, 0), 1, 1, 0)], [(1, (1, 0), 1, 0, 1)])
    b2 = region([(1, (1, 0), 1, 0, 1)], [(1, (1, 0), 1, 1, 0)])
    per, total = sharing_mult(b, b2)
    # m_P1(x)=1, m_triv(R)=1, m_triv(R1)=m_triv(R2)=1 -> 1+1-1-1 = 0
    assert total == 0 and per == {}


def middle_triples(rng, n):
    """Random (R1, R2) with a shared middle path and indecomposable composite."""
    from conftest import random_path_on_table, random_table

    out = []
    tries = 0
    while len(out) < n and tries < 60000:
        tries += 1
        if tries % 500 == 1:
            table = random_table(rng)
        p0 = random_path_on_table(rng, table)
        p1 = random_path_on_table(rng, table)
        p2 = random_path_on_table(rng, table)
        if not (p0.path_class() == p1.path_class() == p2.path_class()):
            continue
        comp = Region(p0, p2)
        if comp.is_local() or not is_indecomposable(comp):
            continue
        out.append((Region(p0, p1), Region(p1, p2), comp))
    return out


def test_lemma_sharing_identity(rng):
    triples = middle_triples(rng, 60)
    assert len(triples) >= 30
    for r1, r2, comp in triples:
        per, ms = sharing_mult(r1, r2)
        assert all(v >= 0 for v in per.values())
        nonlocal_factors = [f for f in factorize(r1) + factorize(r2) if not f.is_local()]
        lhs = morse_bott_index(comp) - sum(morse_bott_index(f) for f in nonlocal_factors)
        assert lhs == ms, (r1, r2)
        rhs = sum(loose_mult(f)[1] for f in nonlocal_factors) - loose_mult(comp)[1]
        assert ms == rhs, (r1, r2)


# --- theorem split ----------------------------------------------------------

def test_theorem_split_examples():
    # trivial pair at x0 concatenated with region 1 splits off the shared part
    r1 = fig1b_region1()
    shared = Edge((0, 1), 1, 1, 0)
    r = Region(DPath({X(0): shared, **r1.p0.edges}),
               DPath({X(0): shared, **r1.p1.edges}))
    split = theorem_split(r)
    assert split is not None
    assert split.t1.p0.edges == {X(0): shared}
    assert undecorated_key(split.middle) == undecorated_key(r1)
    # a local bigon admits no split (middle would be local)
    bigon = region([(1, (1, 0), 1, 1, 0)], [(1, (1, 0), 1, 0, 1)])
    assert theorem_split(bigon) is None
    # two difference blocks cannot both be the middle
    two = region([(1, (1, 0), 1, 0, 1), (5, (1, 0), 1, 0, 1)],
                 [(2, (1, 0), -1, 1, 0), (6, (1, 0), -1, 1, 0)])
    assert theorem_split(two) is None
    # alpha = beta: absent
    assert theorem_split(Region(r1.p0, r1.p0)) is None


def test_theorem_split_sheds_boundary_pairs():
    # region 1 with an extra shared elliptic copy at x1 on both sides
    r = region([(1, (1, 0), 1, 1, 1)], [(1, (1, 0), 1, 1, 0), (4, (1, 0), -1, 1, 0)])
    split = theorem_split(r)
    assert split is not None
    assert split.middle.p0.edges[X(1)] == Edge((1, 0), 1, 0, 1)
    assert split.t1.p0.edges[X(1)] == Edge((1, 0), 1, 1, 0)
    assert is_indecomposable(split.middle)


def test_theorem_split_reassembles(rng):
    for _ in range(300):
        r = random_region(rng)
        split = theorem_split(r)
        if split is None:
            continue
        t1, mid, t2 = split.t1, split.middle, split.t2
        assert t1.is_trivial() and t2.is_trivial()
        assert not mid.is_local() and is_indecomposable(mid)
        # reassemble multiplicities
        for side in (0, 1):
            total = {}
            for part in (t1, mid, t2):
                pp = part.p0 if side == 0 else part.p1
                for x, e in pp.edges.items():
                    me, mh = total.get(x, (0, 0))
                    total[x] = (me + e.m_e, mh + e.m_h)
            orig = r.p0 if side == 0 else r.p1
            assert total == {x: (e.m_e, e.m_h) for x, e in orig.edges.items()}
