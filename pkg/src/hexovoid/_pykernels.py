"""Pure Python search kernels: dancing-links exact hitting set, Ryser's
permanent, and branch-and-bound maximum packing.

This module is the fallback twin of the compiled `_ckernels` extension; the
two must stay behaviourally identical (same node counts, same solution
order), which the test suite enforces.  The DLX matrix has one column per
block and one row per universe point, so solutions are point sets hitting
every block exactly once.
"""

from math import prod

BACKEND_NAME = "python"


class ExactCoverSearch:
    """Resumable iterative DLX over (universe points) x (blocks).

    Column choice is pinned to minimum remaining size with lowest block
    index as tie break, and rows are tried in increasing point order, so
    the solution stream is reproducible.  Points appearing in no block
    never enter solutions.
    """

    def __init__(self, universe_size, blocks, forced=()):
        ncols = len(blocks)
        # node 0..ncols-1: column headers; node ncols: root; then entries
        n_entries = sum(len(b) for b in blocks)
        size = ncols + 1 + n_entries
        self.L = L = list(range(size))
        self.R = R = list(range(size))
        self.U = U = list(range(size))
        self.D = D = list(range(size))
        self.COL = COL = list(range(size))
        self.CLEN = CLEN = [0] * ncols
        self.ROW = ROW = [-1] * size
        self.root = root = ncols

        for c in range(ncols + 1):
            R[c] = (c + 1) % (ncols + 1)
            L[c] = (c - 1) % (ncols + 1)

        node = ncols + 1
        row_nodes = [[] for _ in range(universe_size)]
        by_point = [[] for _ in range(universe_size)]
        for c, block in enumerate(blocks):
            for p in block:
                by_point[p].append(c)
        for p in range(universe_size):
            first = None
            for c in by_point[p]:
                COL[node] = c
                ROW[node] = p
                # insert at column bottom
                U[node] = U[c]
                D[node] = c
                D[U[c]] = node
                U[c] = node
                CLEN[c] += 1
                if first is None:
                    first = node
                else:
                    L[node] = L[first]
                    R[node] = first
                    R[L[first]] = node
                    L[first] = node
                node += 1
            row_nodes[p].append(first)
        self._row_first = [nodes[0] if nodes else None for nodes in row_nodes]

        self.forced = tuple(sorted(forced))
        for p in self.forced:
            start = self._row_first[p]
            if start is None:
                continue  # point in no block constrains nothing
            j = start
            while True:
                self._cover(self.COL[j])
                j = self.R[j]
                if j == start:
                    break

        self.stack = []
        self.descend = True
        self.done = False
        self.nodes = 0

    def _cover(self, c):
        L, R, U, D, COL, CLEN = self.L, self.R, self.U, self.D, self.COL, self.CLEN
        L[R[c]] = L[c]
        R[L[c]] = R[c]
        i = D[c]
        while i != c:
            j = R[i]
            while j != i:
                U[D[j]] = U[j]
                D[U[j]] = D[j]
                CLEN[COL[j]] -= 1
                j = R[j]
            i = D[i]

    def _uncover(self, c):
        L, R, U, D, COL, CLEN = self.L, self.R, self.U, self.D, self.COL, self.CLEN
        i = U[c]
        while i != c:
            j = L[i]
            while j != i:
                CLEN[COL[j]] += 1
                U[D[j]] = j
                D[U[j]] = j
                j = L[j]
            i = U[i]
        L[R[c]] = c
        R[L[c]] = c

    def _choose(self):
        R, CLEN = self.R, self.CLEN
        best = -1
        best_len = -1
        c = R[self.root]
        while c != self.root:
            k = CLEN[c]
            if best < 0 or k < best_len:
                best, best_len = c, k
                if k == 0:
                    break
            c = R[c]
        return best

    def run(self, max_solutions=None, max_nodes=None):
        """Continue the search.  Returns (solutions, exhausted, nodes_used);
        exhausted means the whole tree is now explored."""
        out = []
        used = 0
        R, D, L, COL, ROW = self.R, self.D, self.L, self.COL, self.ROW
        root = self.root
        while not self.done:
            if self.descend:
                if R[root] == root:
                    out.append(tuple(sorted(
                        self.forced + tuple(ROW[r] for r in self.stack))))
                    self.descend = False
                    if max_solutions is not None and len(out) >= max_solutions:
                        return out, False, used
                    continue
                c = self._choose()
                self._cover(c)
                r = D[c]
            else:
                if not self.stack:
                    self.done = True
                    break
                r = self.stack.pop()
                c = COL[r]
                j = L[r]
                while j != r:
                    self._uncover(COL[j])
                    j = L[j]
                r = D[r]
            if r == c:
                self._uncover(c)
                self.descend = False
            else:
                used += 1
                self.nodes += 1
                self.stack.append(r)
                j = R[r]
                while j != r:
                    self._cover(COL[j])
                    j = R[j]
                self.descend = True
                if max_nodes is not None and used >= max_nodes:
                    # state is mid-descent and fully resumable
                    return out, False, used
        return out, True, used


def ryser_permanent(matrix):
    """Exact permanent by Ryser's formula with Gray-code subset updates.

    Arbitrary-precision: sums and the accumulator are Python ints.
    """
    n = len(matrix)
    if n == 0:
        return 1
    cols = [[int(matrix[i][j]) for i in range(n)] for j in range(n)]
    sums = [0] * n
    total = 0
    subset = 0
    bits = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        subset ^= 1 << j
        col = cols[j]
        if subset & (1 << j):
            bits += 1
            for i in range(n):
                sums[i] += col[i]
        else:
            bits -= 1
            for i in range(n):
                sums[i] -= col[i]
        term = prod(sums)
        if term:
            total += term if (n - bits) % 2 == 0 else -term
    return total


class PackingSearch:
    """Branch and bound for maximum packings: at most one chosen point per
    block, maximizing the number of chosen points.

    Branching is binary on the first remaining candidate in a fixed static
    order (descending conflict degree, then index).  The admissible bound
    counts distinct lowest-index blocks over the candidates: any packing
    maps injectively into those blocks.
    """

    def __init__(self, universe_size, blocks, forced=()):
        self.universe_size = universe_size
        self.blocks = [tuple(b) for b in blocks]
        by_point = [[] for _ in range(universe_size)]
        for c, block in enumerate(self.blocks):
            for p in block:
                by_point[p].append(c)
        self.first_block = [bs[0] if bs else -1 for bs in by_point]
        conflict = [set() for _ in range(universe_size)]
        for block in self.blocks:
            for a in block:
                for b in block:
                    if a != b:
                        conflict[a].add(b)
        self.conflict = [frozenset(s) for s in conflict]
        order = sorted(range(universe_size),
                       key=lambda p: (-len(conflict[p]), p))
        self.rank = [0] * universe_size
        for i, p in enumerate(order):
            self.rank[p] = i

        self.forced = tuple(sorted(forced))
        banned = set()
        for p in self.forced:
            banned |= self.conflict[p]
        cand = [p for p in range(universe_size)
                if p not in banned and p not in self.forced]
        self.initial_candidates = sorted(cand, key=lambda p: self.rank[p])

    def _bound(self, candidates):
        firsts = set()
        loose = 0  # points lying in no block never conflict
        for p in candidates:
            fb = self.first_block[p]
            if fb < 0:
                loose += 1
            else:
                firsts.add(fb)
        return len(firsts) + loose

    def run(self, target=None, max_nodes=None):
        """Search for the maximum packing, or (with `target`) for any packing
        strictly larger than target.  Returns a dict with best_size,
        best_points, exhausted, nodes."""
        self.nodes = 0
        self.best_size = -1
        self.best = None
        self.prune_at = len(self.forced) - 1 if target is None else target
        self.budget = max_nodes
        self.budget_hit = False
        chosen = list(self.forced)
        self._search(self.initial_candidates, chosen)
        return {
            "best_size": self.best_size if self.best is not None else None,
            "best_points": tuple(self.best) if self.best is not None else None,
            "exhausted": not self.budget_hit,
            "nodes": self.nodes,
        }

    def _search(self, candidates, chosen):
        if self.budget_hit:
            return
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            self.budget_hit = True
            return
        size = len(chosen)
        if size > self.prune_at:
            self.prune_at = size
            self.best_size = size
            self.best = sorted(chosen)
        if not candidates:
            return
        if size + self._bound(candidates) <= self.prune_at:
            return
        v = candidates[0]
        rest = candidates[1:]
        # include v first: deep dives raise the incumbent quickly
        conflict_v = self.conflict[v]
        chosen.append(v)
        self._search([u for u in rest if u not in conflict_v], chosen)
        chosen.pop()
        self._search(rest, chosen)
