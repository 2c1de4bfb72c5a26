import random

import pytest

from hexovoid.constructions import (
    ConstructionError,
    EnumerationBudgetError,
    build_dual_split_cayley,
    build_flag_hexagon,
    build_pg2,
    construction_manifest,
    embed_isomorphism,
    enumerate_subhexagons,
    grassmann,
    isotropic_proj_points,
    normalize_projective,
    proj_points,
    subhexagon_closure,
)
from hexovoid.gf import make_field
from hexovoid.geometry import validate_gp

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)


def first_opposite_pair(h):
    row = h.dist_row(h.num_points + 0)
    l2 = next(k for k in range(h.num_lines) if row[h.num_points + k] == 6)
    return 0, l2


def test_normalize_projective():
    assert normalize_projective(F3, (0, 2, 1)) == (0, 1, 2)
    assert normalize_projective(F3, (0, 0, 0)) is None
    assert len(proj_points(F4, 3)) == 21


@pytest.mark.parametrize("field,npts", [(F2, 7), (F3, 13), (F4, 21)])
def test_build_pg2(field, npts):
    pg = build_pg2(field)
    assert pg.num_points == pg.num_lines == npts
    rep = validate_gp(pg, 3)
    assert rep.is_valid and (rep.s, rep.t) == (field.q, field.q)


@pytest.mark.parametrize("field,pts,lns", [(F2, 21, 14), (F4, 105, 42)])
def test_build_flag_hexagon(field, pts, lns):
    h = build_flag_hexagon(field)
    assert (h.num_points, h.num_lines) == (pts, lns)
    assert all(len(ls) == 2 for ls in h.points_to_lines)  # a flag has 2 parts
    rep = validate_gp(h, 6)
    assert rep.is_valid and (rep.s, rep.t) == (field.q, 1)


def test_grassmann_unit_vectors():
    e0 = (1, 0, 0, 0, 0, 0, 0)
    e1 = (0, 1, 0, 0, 0, 0, 0)
    g = grassmann(F3, e0, e1)
    assert g[0] == 1 and not any(g[1:])


def test_grassmann_antisymmetry_and_shear():
    rng = random.Random(3)
    for field in (F3, F4):
        for _ in range(25):
            x = tuple(rng.randrange(field.q) for _ in range(7))
            y = tuple(rng.randrange(field.q) for _ in range(7))
            try:
                g = grassmann(field, x, y)
            except ValueError:
                continue
            swapped = grassmann(field, y, x)
            assert swapped == tuple(field.neg(c) for c in g)
            lam = rng.randrange(field.q)
            y2 = tuple(field.add(b, field.mul(lam, a)) for a, b in zip(x, y))
            assert grassmann(field, x, y2) == g


def test_grassmann_rejects_dependent():
    with pytest.raises(ValueError):
        grassmann(F2, (1, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("field,count", [(F2, 63), (F3, 364), (F4, 1365)])
def test_dual_split_cayley_counts(field, count):
    h = build_dual_split_cayley(field)
    assert h.num_points == h.num_lines == count
    # the line count independently equals the isotropic point count of Q(6,q)
    assert len(isotropic_proj_points(field)) == count
    # every point (2-space) lies on exactly q+1 lines (its isotropic 1-spaces)
    assert all(len(ls) == field.q + 1 for ls in h.points_to_lines)


@pytest.mark.parametrize("field", [F2, F3])
def test_dual_split_cayley_validates(field):
    rep = validate_gp(build_dual_split_cayley(field), 6)
    assert rep.is_valid and (rep.s, rep.t) == (field.q, field.q)


def test_dual_split_cayley_unsupported_q():
    with pytest.raises(ConstructionError):
        build_dual_split_cayley(make_field(5, 1))


def test_subhexagon_closure_counts_q2():
    h = build_dual_split_cayley(F2)
    l1, l2 = first_opposite_pair(h)
    sub = subhexagon_closure(h, l1, l2)
    assert len(sub.point_ids) == 21 and len(sub.line_ids) == 14


def test_subhexagon_closure_rejects_near_lines():
    h = build_dual_split_cayley(F2)
    P = h.num_points
    row = h.dist_row(P)
    near = next(k for k in range(1, h.num_lines) if row[P + k] < 6)
    with pytest.raises(ValueError):
        subhexagon_closure(h, 0, near)


def test_subhexagon_unique_through_internal_pairs():
    h = build_dual_split_cayley(F2)
    l1, l2 = first_opposite_pair(h)
    sub = subhexagon_closure(h, l1, l2)
    P = h.num_points
    pairs = []
    for i, a in enumerate(sub.line_ids):
        row = h.dist_row(P + a)
        for b in sub.line_ids[i + 1:]:
            if row[P + b] == 6:
                pairs.append((a, b))
    rng = random.Random(5)
    for a, b in rng.sample(pairs, 8):
        again = subhexagon_closure(h, a, b)
        assert again.point_ids == sub.point_ids
        assert again.line_ids == sub.line_ids


def test_subhexagon_closure_scan_order_irrelevant():
    h = build_dual_split_cayley(F2)
    l1, l2 = first_opposite_pair(h)
    ref = subhexagon_closure(h, l1, l2)
    for seed in range(4):
        shuffled = subhexagon_closure(h, l1, l2, scan_rng=random.Random(seed))
        assert shuffled == ref


def test_enumerate_subhexagons_q2():
    h = build_dual_split_cayley(F2)
    subs = enumerate_subhexagons(h)  # census checks run inside
    assert len(subs) == 36
    # double count: sum of point counts = num_points * (1+q)q^3/2
    assert sum(len(s.point_ids) for s in subs) == 63 * 12


def test_enumerate_subhexagons_budget():
    h = build_dual_split_cayley(F2)
    with pytest.raises(EnumerationBudgetError) as info:
        enumerate_subhexagons(h, max_closures=5)
    assert len(info.value.partial) == 5


def test_embed_isomorphism_q2():
    h = build_dual_split_cayley(F2)
    A = build_flag_hexagon(F2)
    l1, l2 = first_opposite_pair(h)
    sub = subhexagon_closure(h, l1, l2)
    pmap, lmap = embed_isomorphism(A, sub, h)
    assert sorted(pmap) == list(sub.point_ids)
    assert sorted(lmap) == list(sub.line_ids)
    # incidence preserved, checked directly against the ambient geometry
    for k in range(A.num_lines):
        image = sorted(pmap[p] for p in A.lines[k])
        ambient_line = [p for p in h.lines[lmap[k]]]
        assert image == ambient_line
    # distance-6 line pairs map to distance-6 pairs
    P_A, P_h = A.num_points, h.num_points
    rng = random.Random(11)
    for _ in range(10):
        a, b = rng.sample(range(A.num_lines), 2)
        d_abs = A.delta(P_A + a, P_A + b)
        d_img = h.delta(P_h + lmap[a], P_h + lmap[b])
        assert d_abs == d_img


def test_embed_isomorphism_rejects_wrong_shape():
    A = build_flag_hexagon(F2)
    h = build_dual_split_cayley(F2)
    l1, l2 = first_opposite_pair(h)
    sub = subhexagon_closure(h, l1, l2)
    B = build_flag_hexagon(F4)
    with pytest.raises(ConstructionError):
        embed_isomorphism(B, sub, h)


def test_manifest_fields():
    h = build_dual_split_cayley(F4)
    m = construction_manifest(F4, h)
    assert m["q"] == 4 and m["num_points"] == 1365
    assert "x^2" in m["irreducible_polynomial"]
