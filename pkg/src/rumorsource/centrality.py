"""Rumor centrality: how many infection orderings start at a given node.

For a tree snapshot with n nodes, the count for root s is
n! / prod_u (size of the subtree at u when rooted at s), taken over all n
nodes.  Counts are exact big integers; moving the root across an edge (u, v)
rescales by size_v / (n - size_v), which gives every node's count in two
passes.  On non-tree hosts the exact count is undefined and callers must BFS
a spanning tree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError
from .topology import Graph, Snapshot, bfs_tree


def _require_tree(snap: Snapshot) -> None:
    if not snap.is_host_tree():
        raise ValidationError(
            "snapshot is not a tree in its host graph; build a BFS tree first"
        )


def _sizes_from(snap: Snapshot, root: int) -> dict[int, int]:
    """Subtree sizes with the snapshot re-rooted at `root` (iterative DFS)."""
    if root not in snap:
        raise ValidationError(f"root {root} not in snapshot")
    adj: dict[int, list[int]] = {u: [] for u in snap.order}
    for u in snap.order:
        p = snap.parent_of[u]
        if p is not None:
            adj[u].append(p)
            adj[p].append(u)
    size = dict.fromkeys(snap.order, 1)
    stack = [(root, None, False)]
    while stack:
        u, par, done = stack.pop()
        if done:
            if par is not None:
                size[par] += size[u]
            continue
        stack.append((u, par, True))
        for v in adj[u]:
            if v != par:
                stack.append((v, u, False))
    return size


def rumor_centrality(snap: Snapshot, root: int) -> int:
    """Exact number of spreading orders of the snapshot that start at root."""
    _require_tree(snap)
    size = _sizes_from(snap, root)
    denom = 1
    for s in size.values():
        denom *= s
    return math.factorial(snap.n) // denom


def log_rumor_centrality(snap: Snapshot, root: int) -> float:
    """Natural log of rumor_centrality (math.log handles the big integers)."""
    r = rumor_centrality(snap, root)
    return math.log(r)


@dataclass
class CentralityReport:
    """Per-node exact counts, their logs, and subtree sizes w.r.t. `root`."""

    root: int
    n: int
    exact: dict[int, int]
    log: dict[int, float]
    subtree_size: dict[int, int]

    def argmax_set(self) -> list[int]:
        best = max(self.exact.values())
        return sorted(u for u, r in self.exact.items() if r == best)

    def to_rows(self) -> list[tuple]:
        """(node, subtree_size, log_centrality) rows, node-sorted."""
        return [
            (u, self.subtree_size[u], self.log[u]) for u in sorted(self.exact)
        ]


def centrality_all(snap: Snapshot) -> CentralityReport:
    """Exact centrality for every node in O(n) big-int steps.

    Root value comes from the size product; each child's value follows from
    its parent across the shared edge.  The integer division is exact.
    """
    _require_tree(snap)
    n = snap.n
    root = snap.root
    size = _sizes_from_tree_only(snap)
    denom = 1
    for s in size.values():
        denom *= s
    exact = {root: math.factorial(n) // denom}
    for u in snap.order:
        if u == root:
            continue
        p = snap.parent_of[u]
        exact[u] = exact[p] * size[u] // (n - size[u])
    logs = {u: math.log(r) if r > 0 else -math.inf for u, r in exact.items()}
    return CentralityReport(root=root, n=n, exact=exact, log=logs,
                            subtree_size=size)


def compare_centrality(snap: Snapshot, u: int, v: int) -> int:
    """Exact ordering of centralities: -1 if R(u) < R(v), 0 if equal, 1 if greater.

    Uses the telescoped ratio along the u-v path, so only path-node subtree
    sizes enter; no factorials are formed.
    """
    _require_tree(snap)
    if u not in snap or v not in snap:
        raise ValidationError(f"nodes {u}, {v} must lie in the snapshot")
    if u == v:
        return 0
    size = _sizes_from(snap, u)
    # climb from v toward u using parent pointers of the u-rooted DFS
    parent: dict[int, int | None] = {u: None}
    adj = {w: [] for w in snap.order}
    for w in snap.order:
        p = snap.parent_of[w]
        if p is not None:
            adj[w].append(p)
            adj[p].append(w)
    stack = [u]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in parent:
                parent[b] = a
                stack.append(b)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    # R(v)/R(u) = prod over path nodes w != u of size_w / (n - size_w)
    num = den = 1
    for w in path[:-1]:
        num *= size[w]
        den *= snap.n - size[w]
    if num == den:
        return 0
    return 1 if den > num else -1


@dataclass
class LocalCenterVerdict:
    """Outcome of the local-center test at a node."""

    is_center: bool
    tied_neighbor: int | None
    subtree_sizes: dict[int, int]


def local_rumor_center(snap: Snapshot, omega: int,
                       sub_neighborhood=None) -> LocalCenterVerdict:
    """Test whether omega beats (or ties) everything reachable through the
    given neighbors (all of omega's neighbors when not restricted).

    omega wins through neighbor u iff u's subtree holds at most half of all
    nodes; an exact half is a tie, and at most one neighbor can tie.
    """
    _require_tree(snap)
    if omega not in snap:
        raise ValidationError(f"node {omega} not in snapshot")
    size = _sizes_from(snap, omega)
    ch = snap.children_map()
    neigh = set(ch[omega])
    if snap.parent_of[omega] is not None:
        neigh.add(snap.parent_of[omega])
    if sub_neighborhood is None:
        hood = sorted(neigh)
    else:
        hood = sorted(set(sub_neighborhood))
    sizes = {}
    tied = None
    ok = True
    for u in hood:
        if u not in neigh:
            raise ValidationError(f"{u} is not a snapshot neighbor of {omega}")
        sizes[u] = size[u]
        if 2 * size[u] > snap.n:
            ok = False
        elif 2 * size[u] == snap.n:
            tied = u
    return LocalCenterVerdict(is_center=ok, tied_neighbor=tied if ok else None,
                              subtree_sizes=sizes)


def bfs_heuristic_centrality(g: Graph, nodes, s: int) -> int:
    """General-graph proxy: rumor centrality of s on its BFS tree over `nodes`."""
    snap = bfs_tree(g, s, restrict=nodes)
    size = _sizes_from_tree_only(snap)
    denom = 1
    for v in size.values():
        denom *= v
    return math.factorial(snap.n) // denom


def _sizes_from_tree_only(snap: Snapshot) -> dict[int, int]:
    """Subtree sizes of the snapshot's own parent tree at its root."""
    size = dict.fromkeys(snap.order, 1)
    for u in reversed(snap.order):
        p = snap.parent_of[u]
        if p is not None:
            size[p] += size[u]
    return size
