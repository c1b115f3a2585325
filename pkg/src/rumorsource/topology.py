"""Graphs the rumor spreads on: explicit edge-list graphs and lazily grown
regular trees, plus BFS utilities and the Snapshot record produced by a
simulation run.

Node ids are non-negative ints.  Regular trees are grown on demand so an
"infinite" tree costs only what a simulation actually touches; node 0 is
always the origin.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import CapacityError, NoPathError, ParseError, ValidationError

# Hard cap on materialized nodes for any single graph.
MAX_NODES = 4_000_000


class Graph:
    """Common interface: membership, neighbor lists, kind tag."""

    kind = "abstract"

    def __contains__(self, u: int) -> bool:
        raise NotImplementedError

    def neighbors(self, u: int) -> list[int]:
        raise NotImplementedError

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))


class ExplicitGraph(Graph):
    """Finite undirected graph held as an adjacency map."""

    kind = "explicit"

    def __init__(self, adjacency: dict[int, list[int]]):
        self._adj = {u: sorted(vs) for u, vs in adjacency.items()}

    @classmethod
    def from_edges(cls, edges) -> "ExplicitGraph":
        adj: dict[int, set[int]] = {}
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at node {u}")
            if u < 0 or v < 0:
                raise ValidationError(f"negative node id in edge ({u}, {v})")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls({u: sorted(vs) for u, vs in adj.items()})

    def __contains__(self, u: int) -> bool:
        return u in self._adj

    def neighbors(self, u: int) -> list[int]:
        try:
            return self._adj[u]
        except KeyError:
            raise ValidationError(f"node {u} not in graph") from None

    def nodes(self) -> list[int]:
        return sorted(self._adj)

    @property
    def num_nodes(self) -> int:
        return len(self._adj)

    @property
    def num_edges(self) -> int:
        return sum(len(v) for v in self._adj.values()) // 2


class LazyRegularTree(Graph):
    """Infinite degree-regular tree, materialized on first neighbor access.

    Every node has degree `delta` once expanded.  Children get fresh dense
    ids in creation order, so a fresh tree walked the same way yields the
    same ids.  Expansion is locked so a built tree can be shared read-only.
    """

    kind = "lazy-regular"

    def __init__(self, delta: int):
        if delta < 2:
            raise ValidationError(f"degree must be >= 2, got {delta}")
        self.delta = delta
        self._adj: list[list[int]] = [[]]
        self._expanded: list[bool] = [False]
        self._parent: list[int | None] = [None]
        self._depth: list[int] = [0]
        self._lock = threading.Lock()

    def __contains__(self, u: int) -> bool:
        return 0 <= u < len(self._adj)

    @property
    def num_nodes(self) -> int:
        """Nodes materialized so far (the tree itself is unbounded)."""
        return len(self._adj)

    def parent(self, u: int) -> int | None:
        return self._parent[u]

    def depth(self, u: int) -> int:
        return self._depth[u]

    def neighbors(self, u: int) -> list[int]:
        if not 0 <= u < len(self._adj):
            raise ValidationError(f"node {u} not materialized")
        if not self._expanded[u]:
            self._expand(u)
        return self._adj[u]

    def known_neighbors(self, u: int) -> list[int]:
        """Neighbors materialized so far, without triggering expansion."""
        return self._adj[u]

    def _expand(self, u: int) -> None:
        with self._lock:
            if self._expanded[u]:
                return
            missing = self.delta - len(self._adj[u])
            if len(self._adj) + missing > MAX_NODES:
                raise CapacityError(f"materialized node limit {MAX_NODES} exceeded")
            for _ in range(missing):
                child = len(self._adj)
                self._adj.append([u])
                self._expanded.append(False)
                self._parent.append(u)
                self._depth.append(self._depth[u] + 1)
                self._adj[u].append(child)
            self._expanded[u] = True

    def path_from_origin(self, length: int) -> list[int]:
        """Materialize one descending path; returns length+1 node ids."""
        if length < 0:
            raise ValidationError("path length must be >= 0")
        path = [0]
        for _ in range(length):
            u = path[-1]
            ns = self.neighbors(u)
            p = self._parent[u]
            path.append(min(v for v in ns if v != p))
        return path


def regular_tree(delta: int, radius: int) -> LazyRegularTree:
    """Degree-`delta` tree with the ball of `radius` around node 0 materialized.

    Interior nodes (depth < radius) have all delta neighbors present; the
    depth-`radius` shell exists but is unexpanded.  radius=0 gives a bare
    origin that grows on demand.
    """
    if radius < 0:
        raise ValidationError(f"radius must be >= 0, got {radius}")
    if delta < 2:
        raise ValidationError(f"degree must be >= 2, got {delta}")
    count = ball_size(delta, radius)
    if count > MAX_NODES:
        raise CapacityError(
            f"ball of radius {radius} at degree {delta} has {count} nodes, "
            f"limit {MAX_NODES}"
        )
    g = LazyRegularTree(delta)
    frontier = [0]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if g.depth(v) > g.depth(u):
                    nxt.append(v)
        frontier = nxt
    return g


def ball_size(delta: int, radius: int) -> int:
    """Node count of the radius-r ball in the degree-delta tree."""
    if radius == 0:
        return 1
    if delta == 2:
        return 2 * radius + 1
    return 1 + delta * ((delta - 1) ** radius - 1) // (delta - 2)


def load_edge_list(path) -> ExplicitGraph:
    """Read whitespace-separated "u v" pairs; '#' starts a comment.

    Duplicate edges collapse; self-loops and malformed lines raise with the
    line number.
    """
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected two node ids, got {raw!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(
                    f"line {lineno}: non-integer node id in {raw!r}"
                ) from None
            if u == v:
                raise ParseError(f"line {lineno}: self-loop at node {u}")
            if u < 0 or v < 0:
                raise ParseError(f"line {lineno}: negative node id in {raw!r}")
            edges.append((u, v))
    if not edges:
        raise ParseError("no edges found")
    return ExplicitGraph.from_edges(edges)


@dataclass
class Snapshot:
    """Set of infected (or BFS-visited) nodes with a rooted spanning tree.

    `order` lists nodes root-first in infection/visit order; `parent_of`
    maps every node to its tree parent (root maps to None).  `host` keeps
    the graph the snapshot was cut from, when available.
    """

    root: int
    order: list[int]
    parent_of: dict[int, int | None]
    host: Graph | None = None
    _node_set: frozenset = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def nodes(self) -> frozenset:
        if self._node_set is None:
            self._node_set = frozenset(self.order)
        return self._node_set

    def __contains__(self, u: int) -> bool:
        return u in self.nodes

    def children_map(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {u: [] for u in self.order}
        for u in self.order:
            p = self.parent_of[u]
            if p is not None:
                ch[p].append(u)
        return ch

    def is_host_tree(self) -> bool:
        """True when the host-induced subgraph on these nodes is a tree.

        Without a host the snapshot's own parent tree is all there is, so
        the answer is True.
        """
        if self.host is None or self.host.kind == "lazy-regular":
            return True
        inside = self.nodes
        twice_edges = sum(
            1 for u in self.order for v in self.host.neighbors(u) if v in inside
        )
        return twice_edges == 2 * (self.n - 1)


def bfs_tree(g: Graph, root: int, restrict=None) -> Snapshot:
    """Breadth-first spanning tree of `restrict` (or all of g) from root.

    Deterministic: layers are processed in ascending id order, so a node
    discoverable from several previous-layer nodes gets the lowest-id parent.
    """
    if restrict is not None:
        restrict = frozenset(restrict)
        if root not in restrict:
            raise ValidationError(f"root {root} not in restriction set")
    if root not in g:
        raise ValidationError(f"root {root} not in graph")
    parent: dict[int, int | None] = {root: None}
    order = [root]
    layer = [root]
    while layer:
        nxt = []
        for u in sorted(layer):
            for v in sorted(g.neighbors(u)):
                if v in parent or (restrict is not None and v not in restrict):
                    continue
                parent[v] = u
                nxt.append(v)
        order.extend(sorted(nxt))
        layer = nxt
    if restrict is not None and len(parent) != len(restrict):
        missing = sorted(set(restrict) - set(parent))[:5]
        raise NoPathError(f"restriction set not connected from {root}: missing {missing}")
    return Snapshot(root=root, order=order, parent_of=parent, host=g)


def shortest_path(g: Graph, u: int, v: int) -> list[int]:
    """Node sequence of one shortest u-v path (deterministic tie-breaks)."""
    if u not in g:
        raise ValidationError(f"node {u} not in graph")
    if v not in g:
        raise ValidationError(f"node {v} not in graph")
    if u == v:
        return [u]
    if isinstance(g, LazyRegularTree):
        return _tree_path(g, u, v)
    prev: dict[int, int] = {u: u}
    layer = [u]
    while layer:
        nxt = []
        for w in sorted(layer):
            for x in sorted(g.neighbors(w)):
                if x not in prev:
                    prev[x] = w
                    nxt.append(x)
        if v in prev:
            break
        layer = nxt
    if v not in prev:
        raise NoPathError(f"no path between {u} and {v}")
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return path[::-1]


def _tree_path(g: LazyRegularTree, u: int, v: int) -> list[int]:
    # Walk parent chains to the common ancestor; touches no new nodes.
    up, vp = [u], [v]
    a, b = u, v
    while g.depth(a) > g.depth(b):
        a = g.parent(a)
        up.append(a)
    while g.depth(b) > g.depth(a):
        b = g.parent(b)
        vp.append(b)
    while a != b:
        a = g.parent(a)
        b = g.parent(b)
        up.append(a)
        vp.append(b)
    return up + vp[-2::-1]
