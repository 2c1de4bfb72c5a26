"""Coordinate constructions: the projective plane PG(2,q), the flag hexagon
of order (q,1), and the dual split Cayley hexagon of order (q,q) built from
isotropic subspaces of the quadric x0*x4 + x1*x5 + x2*x6 - x3^2 on F_q^7,
plus subhexagon extraction and the abstract-to-embedded isomorphism.

Projective points are normalized so the first nonzero coordinate is 1 and
ordered lexicographically; 2-spaces are canonicalized by their reduced
row-echelon basis.  These orderings pin all vertex numbering, which the
canonical forms downstream rely on.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import eval_quadric, quadric_bilinear
from .geometry import Geometry, GeometryError, validate_gp


class ConstructionError(RuntimeError):
    """A coordinate construction produced inconsistent data."""


class EnumerationBudgetError(RuntimeError):
    """Enumeration stopped early; carries the partial result."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


# -- projective coordinates ------------------------------------------------


def normalize_projective(field, vec):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    for c in vec:
        if c:
            if c == 1:
                return tuple(vec)
            s = field.inv(c)
            return tuple(field.mul(s, x) for x in vec)
    return None


def proj_points(field, dim):
    """All normalized representatives of 1-spaces of F_q^dim, lex sorted."""
    q = field.q
    pts = set()
    for vec in itertools.product(range(q), repeat=dim):
        rep = normalize_projective(field, vec)
        if rep is not None:
            pts.add(rep)
    return sorted(pts)


def grassmann(field, x, y):
    """The 21 coordinates (x_i*y_j - x_j*y_i) for 0 <= i < j <= 6."""
    coords = tuple(
        field.sub(field.mul(x[i], y[j]), field.mul(x[j], y[i]))
        for i in range(7) for j in range(i + 1, 7)
    )
    if not any(coords):
        raise ValueError("grassmann coordinates need linearly independent vectors")
    return coords


# -- PG(2, q) and the flag hexagon -----------------------------------------


def build_pg2(field):
    """The Desarguesian projective plane: q^2+q+1 points and lines."""
    q = field.q
    pts = proj_points(field, 3)
    mt = field.mul_table
    at = field.add_table
    lines = []
    for cov in pts:
        on_line = [
            i for i, p in enumerate(pts)
            if int(at[at[mt[cov[0], p[0]], mt[cov[1], p[1]]], mt[cov[2], p[2]]]) == 0
        ]
        lines.append(on_line)
    g = Geometry(f"PG(2,{q})", len(pts), lines)
    if g.num_points != q * q + q + 1:
        raise ConstructionError(f"PG(2,{q}): wrong point count {g.num_points}")
    return g


def pg2_flags(pg):
    """Incident (point, line) pairs of a plane, in lexicographic order."""
    return [(x, k) for x in range(pg.num_points) for k in pg.points_to_lines[x]]


def build_flag_hexagon(field):
    """The generalized hexagon of order (q,1): points are the flags of
    PG(2,q), lines are its points and lines, incidence is containment."""
    q = field.q
    pg = build_pg2(field)
    flags = pg2_flags(pg)
    by_point = [[] for _ in range(pg.num_points)]
    by_line = [[] for _ in range(pg.num_lines)]
    for i, (x, k) in enumerate(flags):
        by_point[x].append(i)
        by_line[k].append(i)
    return Geometry(f"H({q},1)", len(flags), by_point + by_line)


# -- dual split Cayley hexagon ----------------------------------------------

# the six conditions on Grassmann coordinates, rewritten with ordered index
# pairs via p_ji = -p_ij: each entry is (i, j, k, l, negate) for
# p_ij == p_kl, or p_ij == -p_kl when negate is set
_GRASSMANN_CONDITIONS = (
    (1, 2, 3, 4, False),
    (4, 5, 2, 3, False),
    (3, 5, 0, 2, True),
    (5, 6, 0, 3, False),
    (0, 1, 3, 6, False),
    (4, 6, 1, 3, True),
)


def isotropic_proj_points(field):
    """Normalized 1-spaces of F_q^7 vanishing on the quadric, lex sorted."""
    return [x for x in proj_points(field, 7) if eval_quadric(field, x) == 0]


def _rref_pair(field, x, y):
    """Reduced row-echelon basis of span{x, y}; rows come back pivot-ordered."""
    x = normalize_projective(field, x)
    piv_x = next(i for i, c in enumerate(x) if c)
    if y[piv_x]:
        c = y[piv_x]
        y = tuple(field.sub(b, field.mul(c, a)) for a, b in zip(x, y))
    y = normalize_projective(field, y)
    if y is None:
        raise ValueError("vectors are linearly dependent")
    piv_y = next(i for i, c in enumerate(y) if c)
    if x[piv_y]:
        c = x[piv_y]
        x = tuple(field.sub(a, field.mul(c, b)) for a, b in zip(x, y))
    if piv_y < piv_x:
        x, y = y, x
    return x, y


def build_dual_split_cayley(field):
    """The dual split Cayley hexagon of order (q,q): lines are the isotropic
    1-spaces, points the totally isotropic 2-spaces whose Grassmann
    coordinates satisfy the six defining conditions, incidence is reverse
    containment."""
    q = field.q
    if q not in (2, 3, 4):
        raise ConstructionError(f"dual split Cayley hexagon supported for q in 2,3,4 (got {q})")
    iso = isotropic_proj_points(field)
    n_lines = (1 + q) * (1 + q * q + q ** 4)
    if len(iso) != n_lines:
        raise ConstructionError(
            f"expected {n_lines} isotropic 1-spaces, found {len(iso)}")
    line_index = {x: i for i, x in enumerate(iso)}

    arr = np.array(iso, dtype=np.uint8)
    at, mt, neg = field.add_table, field.mul_table, field.neg_table

    def col_mul(c, col):
        return mt[c, col]

    spaces = {}
    for i, x in enumerate(arr[:-1]):
        Y = arr[i + 1:]
        acc = at[col_mul(x[0], Y[:, 4]), col_mul(x[4], Y[:, 0])]
        acc = at[acc, at[col_mul(x[1], Y[:, 5]), col_mul(x[5], Y[:, 1])]]
        acc = at[acc, at[col_mul(x[2], Y[:, 6]), col_mul(x[6], Y[:, 2])]]
        t = col_mul(x[3], Y[:, 3])
        acc = at[acc, neg[at[t, t]]]
        cand = Y[acc == 0]
        if not cand.size:
            continue

        def p(a, b):
            return at[col_mul(x[a], cand[:, b]), neg[col_mul(x[b], cand[:, a])]]

        keep = np.ones(len(cand), dtype=bool)
        for a, b, c, d, negate in _GRASSMANN_CONDITIONS:
            rhs = p(c, d)
            if negate:
                rhs = neg[rhs]
            keep &= p(a, b) == rhs
        for y in cand[keep]:
            u, v = _rref_pair(field, tuple(int(c) for c in x), tuple(int(c) for c in y))
            spaces.setdefault(u + v, 0)
            spaces[u + v] += 1

    pair_count = (q + 1) * q // 2
    for rep, hits in spaces.items():
        if hits != pair_count:
            raise ConstructionError(
                f"2-space {rep} spanned by {hits} isotropic pairs, expected {pair_count}")

    reps = sorted(spaces)
    by_line = [[] for _ in range(n_lines)]
    for pt_idx, rep in enumerate(reps):
        u, v = rep[:7], rep[7:]
        contained = {normalize_projective(field, v)}
        for lam in range(q):
            w = tuple(field.add(a, field.mul(lam, b)) for a, b in zip(u, v))
            contained.add(normalize_projective(field, w))
        if len(contained) != q + 1:
            raise ConstructionError("2-space does not contain q+1 one-spaces")
        for one in contained:
            k = line_index.get(one)
            if k is None:
                raise ConstructionError(
                    f"2-space {rep} contains the non-isotropic 1-space {one}")
            by_line[k].append(pt_idx)
    return Geometry(f"H({q})^D", len(reps), [sorted(b) for b in by_line])


def construction_manifest(field, geometry):
    """Provenance record accompanying geometry exports."""
    if field.modulus is None:
        poly = "x - 1" if field.r == 1 else None
        poly = f"prime field GF({field.p})"
    else:
        terms = [f"x^{field.r}"]
        for i in range(field.r - 1, -1, -1):
            c = field.modulus[i]
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        poly = " + ".join(terms)
    return {
        "name": geometry.name,
        "q": field.q,
        "p": field.p,
        "r": field.r,
        "irreducible_polynomial": poly,
        "num_points": geometry.num_points,
        "num_lines": geometry.num_lines,
        "vertex_numbering": "lexicographic order of normalized coordinate "
                            "representatives (points first, then lines)",
    }


# -- subhexagons -------------------------------------------------------------


@dataclass(frozen=True)
class SubHex:
    """A subhexagon of an ambient geometry, by ambient point/line ids."""

    point_ids: tuple
    line_ids: tuple

    def induced(self, ambient):
        """Induced geometry, plus local->ambient index maps."""
        pmap = {p: i for i, p in enumerate(self.point_ids)}
        lines = []
        for k in self.line_ids:
            pts = [pmap[p] for p in ambient.lines[k] if p in pmap]
            lines.append(sorted(pts))
        geom = Geometry("subhex", len(self.point_ids), lines)
        return geom, list(self.point_ids), list(self.line_ids)


def _unique_geodesic_interior(G, a, b, dist_a):
    """Interior vertices of the unique shortest a-b path (delta(a,b) < 6)."""
    path = []
    cur = b
    d = int(dist_a[b])
    while d > 1:
        steps = [w for w in G.neighbors(cur) if dist_a[w] == d - 1]
        if len(steps) != 1:
            raise ConstructionError(
                f"shortest path {a}..{b} not unique at distance {d}")
        cur = steps[0]
        d -= 1
        path.append(cur)
    return path


def subhexagon_closure(H, line1, line2, scan_rng=None):
    """Geodesic closure of two opposite lines: the unique subhexagon of
    order (q,1) through them.

    The closure alternates two rules until stable: every included line
    carries all of its ambient points (the subhexagon is a full
    subgeometry), and for any two included vertices at incidence-graph
    distance below 6 the unique shortest path is included.  The result is a
    fixed set, so the scan order is irrelevant; `scan_rng` shuffles it and
    exists so tests can exercise that invariant.
    """
    P = H.num_points
    v1, v2 = P + line1, P + line2
    if H.delta(v1, v2) != 6:
        raise ValueError(
            f"lines {line1} and {line2} are at distance {H.delta(v1, v2)}, need 6")

    members = {v1, v2}
    done_pairs = set()
    grew = True
    while grew:
        grew = False
        for v in [v for v in members if v >= P]:
            for p in H.lines[v - P]:
                if p not in members:
                    members.add(p)
                    grew = True
        current = sorted(members)
        if scan_rng is not None:
            scan_rng.shuffle(current)
        for i, a in enumerate(current):
            dist_a = None
            for b in current[i + 1:]:
                key = (a, b) if a < b else (b, a)
                if key in done_pairs:
                    continue
                done_pairs.add(key)
                if dist_a is None:
                    dist_a = H.dist_row(a)
                d = int(dist_a[b])
                if 2 <= d < 6:
                    for w in _unique_geodesic_interior(H, a, b, dist_a):
                        if w not in members:
                            members.add(w)
                            grew = True

    points = tuple(sorted(v for v in members if v < P))
    lines = tuple(sorted(v - P for v in members if v >= P))
    sub = SubHex(points, lines)

    geom, _, _ = sub.induced(H)
    s = len(H.lines[line1]) - 1
    report = validate_gp(geom, 6)
    if not report.is_valid or (report.s, report.t) != (s, 1):
        raise ConstructionError(
            f"geodesic closure of lines {line1},{line2} is not a (q,1) subhexagon: "
            f"{report.summary()}")
    return sub


def enumerate_subhexagons(H, max_closures=None):
    """All subhexagons of order (q,1), one geodesic closure per distance-6
    line pair not already covered by a known subhexagon.

    Verifies the census: each point must lie in (1+q)q^3/2 subhexagons.
    `max_closures` bounds the work; exceeding it raises
    EnumerationBudgetError carrying the partial list.
    """
    P = H.num_points
    q = len(H.lines[0]) - 1
    found = {}
    covered = set()
    for l1 in range(H.num_lines):
        row = H.dist_row(P + l1)
        for l2 in range(l1 + 1, H.num_lines):
            if row[P + l2] != 6 or (l1, l2) in covered:
                continue
            if max_closures is not None and len(found) >= max_closures:
                raise EnumerationBudgetError(
                    f"stopped after {len(found)} closures",
                    sorted(found.values(), key=lambda s: s.point_ids))
            sub = subhexagon_closure(H, l1, l2)
            if sub.point_ids in found:
                raise ConstructionError(
                    "distance-6 line pair covered by two subhexagons")
            found[sub.point_ids] = sub
            lv = [P + k for k in sub.line_ids]
            for i, a in enumerate(lv):
                row_a = H.dist_row(a)
                for b in lv[i + 1:]:
                    if row_a[b] == 6:
                        covered.add((a - P, b - P))

    subs = sorted(found.values(), key=lambda s: s.point_ids)
    expected_total = q ** 3 * (1 + q) * (q * q - q + 1) // 2
    if len(subs) != expected_total:
        raise ConstructionError(
            f"found {len(subs)} subhexagons, expected {expected_total}")
    per_point = np.zeros(P, dtype=np.int64)
    for sub in subs:
        per_point[list(sub.point_ids)] += 1
    expected_per_point = (1 + q) * q ** 3 // 2
    if not (per_point == expected_per_point).all():
        raise ConstructionError(
            f"point subhexagon counts are not uniformly {expected_per_point}")
    return subs


# -- abstract-to-embedded isomorphism ---------------------------------------


def _vertex_distance_matrix(G):
    nv = G.num_vertices
    out = np.empty((nv, nv), dtype=np.int16)
    for v in range(nv):
        out[v] = G.dist_row(v)
    return out


def embed_isomorphism(A, sub, ambient):
    """An incidence-preserving bijection from the abstract geometry A onto
    the subhexagon `sub` of `ambient`.

    Returns (point_map, line_map): point_map[i] is the ambient point id of
    A-point i, line_map[k] the ambient line id of A-line k.  Deterministic:
    candidates are tried in ascending index order.  Raises ConstructionError
    when no isomorphism exists.
    """
    S, s_points, s_lines = sub.induced(ambient)
    if (A.num_points, A.num_lines) != (S.num_points, S.num_lines):
        raise ConstructionError("vertex counts differ; geometries not isomorphic")

    da = _vertex_distance_matrix(A)
    ds = _vertex_distance_matrix(S)
    nv = A.num_vertices
    P = A.num_points

    # BFS order over A so each vertex after the first touches a mapped one
    order = []
    seen = [False] * nv
    start = P  # first line vertex
    queue = [start]
    seen[start] = True
    while queue:
        v = queue.pop(0)
        order.append(v)
        for w in A.neighbors(v):
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    if len(order) != nv:
        raise ConstructionError("abstract geometry is disconnected")

    mapping = np.full(nv, -1, dtype=np.int32)
    used = np.zeros(nv, dtype=bool)

    def candidates(v):
        if v < P:
            pool = range(S.num_points)
        else:
            pool = range(S.num_points, nv)
        mapped = np.nonzero(mapping >= 0)[0]
        imgs = mapping[mapped]
        out = []
        for c in pool:
            if used[c]:
                continue
            if (ds[c, imgs] == da[v, mapped]).all():
                out.append(c)
        return out

    def extend(idx):
        if idx == nv:
            return True
        v = order[idx]
        for c in candidates(v):
            mapping[v] = c
            used[c] = True
            if extend(idx + 1):
                return True
            mapping[v] = -1
            used[c] = False
        return False

    if not extend(0):
        raise ConstructionError(f"no isomorphism from {A.name} onto the subhexagon")

    # full verification: incidence both ways through the local mapping
    for k in range(A.num_lines):
        img_line = int(mapping[P + k]) - S.num_points
        img_pts = sorted(int(mapping[p]) for p in A.lines[k])
        if img_pts != list(S.lines[img_line]):
            raise ConstructionError("isomorphism verification failed")

    point_map = [s_points[int(mapping[p])] for p in range(P)]
    line_map = [s_lines[int(mapping[P + k]) - S.num_points] for k in range(A.num_lines)]
    return point_map, line_map
