"""Point-line incidence geometries with incidence-graph and point-graph
metrics, duality, the generalized polygon validator, and JSON file I/O.

Vertices of the incidence graph are numbered points first (0..P-1), then
lines (P..P+L-1).  Incidence-graph distance is written delta; point-graph
distance (collinearity graph on points) is d, with d = delta/2 for point
pairs.  Unreachable is reported as None, never as a large integer.
"""

import json
import threading
from collections import deque
from dataclasses import dataclass

import numpy as np

FORMAT_VERSION = 1

# full distance caching is unbounded; rows are computed per source on demand
# so large geometries only pay for the sources actually queried


class GeometryError(ValueError):
    """Invalid geometry data or operation."""


class GeometryParseError(GeometryError):
    """Malformed geometry file."""


class Geometry:
    """Immutable bipartite point-line incidence structure.

    `lines` holds, per line, the strictly increasing list of incident point
    indices.  Distance queries BFS the incidence graph and cache rows per
    source; the cache is lock-guarded so concurrent readers are safe.
    """

    def __init__(self, name, num_points, lines):
        self.name = name
        self.num_points = int(num_points)
        if self.num_points < 0:
            raise GeometryError("num_points must be nonnegative")
        clean = []
        for k, line in enumerate(lines):
            pts = list(line)
            if not pts:
                raise GeometryError(f"lines[{k}]: empty line")
            if any(not 0 <= p < self.num_points for p in pts):
                raise GeometryError(
                    f"lines[{k}]: point index out of range 0..{self.num_points - 1}")
            if any(b <= a for a, b in zip(pts, pts[1:])):
                raise GeometryError(f"lines[{k}]: points must be strictly increasing")
            clean.append(tuple(pts))
        self.lines = tuple(clean)
        self.num_lines = len(self.lines)

        p2l = [[] for _ in range(self.num_points)]
        for k, line in enumerate(self.lines):
            for p in line:
                p2l[p].append(k)
        self.points_to_lines = tuple(tuple(ls) for ls in p2l)

        # incidence-graph adjacency over the combined vertex numbering
        P = self.num_points
        adj = [[P + k for k in row] for row in p2l]
        adj += [list(line) for line in self.lines]
        self._adj = adj

        self._dist_cache = {}
        self._cache_lock = threading.Lock()

    # -- basic structure -------------------------------------------------

    @property
    def num_vertices(self):
        return self.num_points + self.num_lines

    def is_point_vertex(self, v):
        return 0 <= v < self.num_points

    def is_line_vertex(self, v):
        return self.num_points <= v < self.num_vertices

    def neighbors(self, v):
        return self._adj[v]

    def is_connected(self):
        if self.num_vertices == 0:
            return True
        return int((self.dist_row(0) >= 0).sum()) == self.num_vertices

    # -- incidence-graph metric -------------------------------------------

    def dist_row(self, source):
        """BFS distances from one vertex: int16 array, -1 for unreachable."""
        with self._cache_lock:
            row = self._dist_cache.get(source)
        if row is not None:
            return row
        row = bfs_distances(self._adj, source)
        with self._cache_lock:
            row = self._dist_cache.setdefault(source, row)
        return row

    def delta(self, a, b):
        """Incidence-graph distance, or None if a and b are disconnected."""
        n = self.num_vertices
        if not (0 <= a < n and 0 <= b < n):
            raise GeometryError(f"vertex out of range: {a}, {b}")
        d = int(self.dist_row(a)[b])
        return None if d < 0 else d

    # -- derived operations -------------------------------------------------

    def ball(self, a, radius):
        """Points at point-graph distance <= radius from a point or line."""
        if radius < 0:
            raise GeometryError("radius must be nonnegative")
        if self.is_point_vertex(a):
            cap = 2 * radius
        elif self.is_line_vertex(a):
            cap = 2 * radius + 1
        else:
            raise GeometryError(f"vertex out of range: {a}")
        dist = bfs_distances(self._adj, a, depth_cap=cap)
        pts = np.nonzero(dist[: self.num_points] >= 0)[0]
        return tuple(int(p) for p in pts)

    def dualize(self):
        """Swap points and lines; an index-exact involution."""
        return Geometry(
            name=f"{self.name}^D" if self.name else "dual",
            num_points=self.num_lines,
            lines=self.points_to_lines,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Geometry)
            and self.num_points == other.num_points
            and self.lines == other.lines
        )

    def __hash__(self):
        return hash((self.num_points, self.lines))

    def __repr__(self):
        return (f"Geometry({self.name!r}, points={self.num_points}, "
                f"lines={self.num_lines})")


def bfs_distances(adj, source, depth_cap=None):
    """Plain BFS over an adjacency list; int16 distances, -1 unreachable."""
    dist = np.full(len(adj), -1, dtype=np.int16)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v]
        if depth_cap is not None and dv >= depth_cap:
            continue
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv + 1
                queue.append(w)
    return dist


def delta(G, a, b):
    return G.delta(a, b)


def ball(G, a, radius):
    return G.ball(a, radius)


def dualize(G):
    return G.dualize()


def point_dist(G, a, b):
    """Point-graph distance between two points, a point and a line, or two
    distinct lines, derived from the incidence-graph distance."""
    pa, pb = G.is_point_vertex(a), G.is_point_vertex(b)
    dlt = G.delta(a, b)
    if dlt is None:
        return None
    if pa and pb:
        d = dlt // 2
    elif not pa and not pb:
        if a == b:
            raise GeometryError("point-graph distance between equal lines is undefined")
        d = (dlt - 2) // 2
    else:
        d = (dlt - 1) // 2
    if __debug__:
        assert d == _point_dist_direct(G, a, b), (a, b, d)
    return d


def _point_dist_direct(G, a, b):
    """Minimum-over-incident-points definition, used as a debug cross-check."""
    P = G.num_points

    def point_set(v):
        return [v] if v < P else list(G.lines[v - P])

    best = None
    for x in point_set(a):
        row = G.dist_row(x)
        for y in point_set(b):
            d = int(row[y])
            if d >= 0 and (best is None or d // 2 < best):
                best = d // 2
    return best


@dataclass
class GPReport:
    """Outcome of the generalized polygon validator."""

    is_valid: bool
    n: int
    s: int | None = None
    t: int | None = None
    diameter: int | None = None
    girth: int | None = None
    axiom1_ok: bool | None = None
    axiom2_ok: bool | None = None
    failure_witness: tuple | None = None

    def summary(self):
        status = "valid" if self.is_valid else "INVALID"
        return (f"{status} generalized {self.n}-gon: order=({self.s},{self.t}) "
                f"diameter={self.diameter} girth={self.girth} "
                f"axioms=({self.axiom1_ok},{self.axiom2_ok})")


def validate_gp(G, n):
    """Check the generalized n-gon axioms: regularity of lines and points,
    incidence-graph diameter n and girth 2n, and for even n the two
    point-graph axioms.  Failure is reported, never raised."""
    if G.num_points == 0 or G.num_lines == 0:
        return GPReport(is_valid=False, n=n, failure_witness=("empty",))

    sizes = {len(line) for line in G.lines}
    if len(sizes) != 1:
        k = next(i for i, line in enumerate(G.lines)
                 if len(line) != len(G.lines[0]))
        return GPReport(is_valid=False, n=n,
                        failure_witness=("line-size", G.num_points + k))
    degs = {len(ls) for ls in G.points_to_lines}
    if len(degs) != 1:
        p = next(i for i, ls in enumerate(G.points_to_lines)
                 if len(ls) != len(G.points_to_lines[0]))
        return GPReport(is_valid=False, n=n, failure_witness=("point-degree", p))
    s = len(G.lines[0]) - 1
    t = len(G.points_to_lines[0]) - 1

    dist = _distance_matrix(G)
    if int(dist.min()) < 0:
        a, b = map(int, np.argwhere(dist < 0)[0])
        return GPReport(is_valid=False, n=n, s=s, t=t,
                        failure_witness=("disconnected", a, b))
    diameter = int(dist.max())
    girth = _girth(G._adj)
    ok = diameter == n and girth == 2 * n

    axiom1 = axiom2 = None
    if ok and n % 2 == 0:
        axiom1, w1 = _check_axiom_unique_nearest(G, dist)
        axiom2, w2 = _check_axiom_unique_predecessor(G, dist, n // 2)
        if not (axiom1 and axiom2):
            return GPReport(is_valid=False, n=n, s=s, t=t, diameter=diameter,
                            girth=girth, axiom1_ok=axiom1, axiom2_ok=axiom2,
                            failure_witness=w1 if not axiom1 else w2)

    witness = None
    if not ok:
        witness = ("metric", diameter, girth)
    return GPReport(is_valid=ok, n=n, s=s, t=t, diameter=diameter, girth=girth,
                    axiom1_ok=axiom1, axiom2_ok=axiom2, failure_witness=witness)


def _distance_matrix(G):
    """All-pairs incidence-graph distances (transient; not the query cache)."""
    nv = G.num_vertices
    out = np.empty((nv, nv), dtype=np.int16)
    for v in range(nv):
        out[v] = bfs_distances(G._adj, v)
    return out


def _girth(adj):
    """Length of a shortest cycle via BFS from every vertex (None if acyclic)."""
    best = None
    nv = len(adj)
    for root in range(nv):
        dist = [-1] * nv
        parent = [-1] * nv
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            dv = dist[v]
            if best is not None and 2 * dv >= best:
                break
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v]:
                    cyc = dv + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def _point_graph(G):
    """Collinearity adjacency lists on points."""
    nbrs = [set() for _ in range(G.num_points)]
    for line in G.lines:
        for i, x in enumerate(line):
            for y in line[i + 1:]:
                nbrs[x].add(y)
                nbrs[y].add(x)
    return [sorted(s) for s in nbrs]


def _check_axiom_unique_nearest(G, dist):
    """For every line and point there is a unique nearest point on the line,
    with every other point of the line exactly one step further."""
    P = G.num_points
    dpp = dist[:P, :P] // 2
    for k, line in enumerate(G.lines):
        cols = dpp[:, list(line)]
        lo = cols.min(axis=1)
        n_min = (cols == lo[:, None]).sum(axis=1)
        n_far = (cols > (lo + 1)[:, None]).sum(axis=1)
        bad = np.nonzero((n_min != 1) | (n_far != 0))[0]
        if bad.size:
            return False, ("axiom1", int(bad[0]), P + k)
    return True, None


def _check_axiom_unique_predecessor(G, dist, d):
    """For points at point-graph distance 0 < i < d, y has a unique neighbour
    at distance i-1 from x."""
    P = G.num_points
    dpp = dist[:P, :P] // 2
    nbrs = _point_graph(G)
    for y in range(P):
        cols = dpp[:, nbrs[y]]
        target = dpp[:, y] - 1
        counts = (cols == target[:, None]).sum(axis=1)
        relevant = (dpp[:, y] > 0) & (dpp[:, y] < d)
        bad = np.nonzero(relevant & (counts != 1))[0]
        if bad.size:
            return False, ("axiom2", int(bad[0]), y)
    return True, None


# -- file I/O -----------------------------------------------------------


def save_geometry(G, path):
    """Write the geometry as format-version-1 JSON; order is significant."""
    doc = {
        "format_version": FORMAT_VERSION,
        "name": G.name,
        "num_points": G.num_points,
        "lines": [list(line) for line in G.lines],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_geometry(path):
    """Read and fully validate a geometry file; save->load is the identity."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GeometryParseError(
                f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise GeometryParseError(f"{path}: top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise GeometryParseError(
            f"{path}: unsupported format_version {doc.get('format_version')!r}")
    for key, kind in (("name", str), ("num_points", int), ("lines", list)):
        if not isinstance(doc.get(key), kind):
            raise GeometryParseError(f"{path}: missing or invalid field {key!r}")
    for k, line in enumerate(doc["lines"]):
        if not isinstance(line, list) or not all(isinstance(p, int) for p in line):
            raise GeometryParseError(f"{path}: lines[{k}] must be an array of integers")
    try:
        return Geometry(doc["name"], doc["num_points"], doc["lines"])
    except GeometryError as exc:
        raise GeometryParseError(f"{path}: {exc}") from exc
