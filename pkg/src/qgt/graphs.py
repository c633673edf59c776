"""Left-regular bipartite graphs from a repaired configuration model.

Every left node has degree ell; right degrees differ by at most one (the
first n_edges % M right nodes take the larger value).  Sampling matches left
stubs to right stubs through a seeded uniform permutation, then swaps away
duplicate entries until the graph is simple.  The result is approximately
uniform over simple left-regular graphs; no exact-uniformity claim is made.
"""

from __future__ import annotations

from collections import Counter

import numpy as np


class BiRegularGraph:
    """Bipartite graph with N left nodes of degree ell and M right nodes.

    right_adj[i] is the neighbor list of right node i, ascending left
    indices for sampled graphs (file order for loaded ones).  The index of v
    inside right_adj[i] is the "position" of edge (i, v); signature columns
    are assigned by position.
    """

    def __init__(self, n_left: int, ell: int, right_adj: list[np.ndarray],
                 seed: int = -1, retries: int = 0):
        self.n_left = n_left
        self.n_right = len(right_adj)
        self.ell = ell
        self.seed = seed
        self.retries = retries
        self.right_adj = [np.asarray(a, dtype=np.int64) for a in right_adj]
        if ell < 2:
            raise ValueError(f"ell must be >= 2, got {ell}")
        if self.n_right < 1 or n_left < 1:
            raise ValueError("graph must have at least one node on each side")
        degrees = self.degrees()
        if degrees.min() < 1 or degrees.max() - degrees.min() > 1:
            raise ValueError("right degrees must take at most two adjacent values")
        for adj in self.right_adj:
            if len(adj) != len(np.unique(adj)):
                raise ValueError("parallel edge: left node repeated in a right list")

        # invert the right lists once: for each left node, the ell incident
        # (right node, position) pairs, in one vectorized grouping pass
        vals = np.concatenate(self.right_adj)
        if len(vals) and (vals.min() < 0 or vals.max() >= n_left):
            raise ValueError("left index out of range")
        if len(vals) != n_left * ell:
            raise ValueError(f"edge count {len(vals)} != N*ell = {n_left * ell}")
        owners = np.repeat(np.arange(self.n_right, dtype=np.int64), degrees)
        positions = np.concatenate([np.arange(d, dtype=np.int64) for d in degrees])
        order = np.argsort(vals, kind="stable")
        if not np.array_equal(vals[order], np.repeat(np.arange(n_left), ell)):
            raise ValueError("left degrees are not all equal to ell")
        self._left_rights = owners[order].reshape(n_left, ell)
        self._left_positions = positions[order].reshape(n_left, ell)

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.right_adj], dtype=np.int64)

    @property
    def max_right_degree(self) -> int:
        return int(self.degrees().max())

    def left_edges(self, left: int) -> list[tuple[int, int]]:
        """The ell (right node, position) pairs incident to a left node."""
        return list(zip(self._left_rights[left].tolist(),
                        self._left_positions[left].tolist()))

    def position_of(self, right: int, left: int) -> int:
        """Index of `left` inside right_adj[right]; raises on a non-edge."""
        for i, pos in self.left_edges(left):
            if i == right:
                return pos
        raise ValueError(f"no edge between right node {right} and left node {left}")

    # -- text serialization --------------------------------------------------
    # line 1: "N M ell seed"; then one line per right node with its ascending
    # 0-based left indices

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{self.n_left} {self.n_right} {self.ell} {self.seed}\n")
            for adj in self.right_adj:
                fh.write(" ".join(str(int(v)) for v in adj) + "\n")

    @classmethod
    def load(cls, path: str) -> "BiRegularGraph":
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise ValueError(f"{path}: empty graph file")
        try:
            n_left, n_right, ell, seed = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise ValueError(f"{path}: bad header {lines[0]!r}") from exc
        if len(lines) != 1 + n_right:
            raise ValueError(
                f"{path}: expected {n_right} adjacency lines, got {len(lines) - 1}"
            )
        right_adj = [np.array([int(x) for x in ln.split()], dtype=np.int64)
                     for ln in lines[1:]]
        return cls(n_left, ell, right_adj, seed=seed)


def sample_graph(n_left: int, n_right: int, ell: int, seed: int,
                 max_passes: int = 200, max_retries: int = 8) -> BiRegularGraph:
    """Draw a simple left-regular graph; deterministic for a given seed.

    Raises ValueError for infeasible shapes (a right degree above N forces a
    parallel edge) and RuntimeError if repair fails across max_retries
    resamples, which is astronomically unlikely for feasible shapes.
    """
    if ell < 2:
        raise ValueError(f"ell must be >= 2, got {ell}")
    if ell > n_right:
        raise ValueError(f"ell={ell} > M={n_right}: a left node cannot reach "
                         "ell distinct right nodes")
    if n_left < 1 or n_right > n_left * ell:
        raise ValueError("need 1 <= M <= N*ell")
    n_edges = n_left * ell
    base = n_edges // n_right
    extra = n_edges % n_right
    degrees = np.full(n_right, base, dtype=np.int64)
    degrees[:extra] += 1
    if degrees.max() > n_left:
        raise ValueError(
            f"right degree {degrees.max()} > N={n_left}: no simple graph exists"
        )
    if int(degrees.min()) == n_left:
        # every group must hold every item exactly once, so the simple graph
        # is forced; build it directly rather than repairing collisions
        right_adj = [np.arange(n_left, dtype=np.int64) for _ in range(n_right)]
        return BiRegularGraph(n_left, ell, right_adj, seed=seed)
    bounds = np.concatenate([[0], np.cumsum(degrees)])

    rng = np.random.default_rng(seed)
    for attempt in range(max_retries):
        stubs = rng.permutation(np.repeat(np.arange(n_left, dtype=np.int64), ell))
        if _repair(stubs, bounds, rng, max_passes):
            right_adj = [np.sort(stubs[bounds[i]:bounds[i + 1]])
                         for i in range(n_right)]
            return BiRegularGraph(n_left, ell, right_adj, seed=seed, retries=attempt)
    raise RuntimeError(
        f"simple-graph repair failed after {max_retries} resamples "
        f"(N={n_left}, M={n_right}, ell={ell}, seed={seed})"
    )


def _duplicate_positions(stubs: np.ndarray, bounds: np.ndarray) -> list[int]:
    """Absolute positions of every in-block repeat beyond the first."""
    out = []
    for i in range(len(bounds) - 1):
        lo, hi = int(bounds[i]), int(bounds[i + 1])
        seg = stubs[lo:hi]
        order = np.argsort(seg, kind="stable")
        dup_mask = seg[order][1:] == seg[order][:-1]
        out.extend(lo + int(order[k + 1]) for k in np.nonzero(dup_mask)[0])
    return out


def _repair(stubs: np.ndarray, bounds: np.ndarray, rng, max_passes: int) -> bool:
    """Swap duplicate in-block stubs with other stubs until simple.

    A swap is accepted when it fixes the duplicate without creating a new one
    (incoming value absent from this block, outgoing value absent from the
    target block), judged against exact per-block multiset counts that are
    updated with every swap.  Random probes find such a target quickly in
    sparse blocks; a linear scan backs them up in dense ones, and a blind
    swap breaks ties when no clean target exists at all.
    """
    n_right = len(bounds) - 1
    n = len(stubs)
    block_ids = np.repeat(np.arange(n_right, dtype=np.int64), np.diff(bounds))
    for _ in range(max_passes):
        dups = _duplicate_positions(stubs, bounds)
        if not dups:
            return True
        counts = [Counter(stubs[bounds[i]:bounds[i + 1]].tolist())
                  for i in range(n_right)]
        for p in dups:
            i = int(block_ids[p])
            x = int(stubs[p])
            if counts[i][x] <= 1:
                continue  # already fixed by an earlier swap this pass
            q_found = -1
            for _try in range(32):
                q = int(rng.integers(n))
                j = int(block_ids[q])
                if j != i and counts[i][int(stubs[q])] == 0 and counts[j][x] == 0:
                    q_found = q
                    break
            if q_found < 0:
                start = int(rng.integers(n))
                for off in range(n):
                    q = (start + off) % n
                    j = int(block_ids[q])
                    if j != i and counts[i][int(stubs[q])] == 0 and counts[j][x] == 0:
                        q_found = q
                        break
            if q_found < 0:
                q_found = int(rng.integers(n))  # blind swap, better than stalling
            j = int(block_ids[q_found])
            y = int(stubs[q_found])
            stubs[p], stubs[q_found] = y, x
            counts[i][x] -= 1
            counts[i][y] += 1
            counts[j][y] -= 1
            counts[j][x] += 1
    return False
