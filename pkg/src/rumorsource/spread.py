"""Susceptible-infected spreading with unit-rate exponential edge delays.

Two backends produce the same law on trees:

* exponential-clocks: every infected-susceptible edge carries an Exp(1)
  timer; the earliest timer fires next.  Works on any graph.
* uniform-boundary: by memorylessness, on a tree the next infected node is
  uniform over the susceptible boundary, so no clocks are needed.  Faster,
  trees only.

A run yields a Snapshot whose parent map records who infected whom.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

import numpy as np

from .errors import BackendError, CapacityError, ValidationError
from .topology import ExplicitGraph, Graph, LazyRegularTree, Snapshot

BACKENDS = ("uniform-boundary", "exponential-clocks")


@dataclass(frozen=True)
class SpreadConfig:
    source: int
    n: int
    seed: int
    backend: str = "uniform-boundary"

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"need n >= 1 infections, got {self.n}")
        if self.source < 0:
            raise ValidationError(f"source must be a node id, got {self.source}")
        if self.backend not in BACKENDS:
            raise ValidationError(
                f"unknown backend {self.backend!r}; choose from {BACKENDS}"
            )


def simulate_si(g: Graph, cfg: SpreadConfig) -> Snapshot:
    """Spread from cfg.source until cfg.n nodes are infected."""
    if cfg.source not in g:
        raise ValidationError(f"source {cfg.source} not in graph")
    rng = np.random.default_rng(cfg.seed)
    if cfg.backend == "uniform-boundary":
        if isinstance(g, ExplicitGraph) and not _component_is_tree(g, cfg.source):
            raise BackendError(
                "uniform-boundary backend needs a tree; use exponential-clocks"
            )
        return _run_uniform_boundary(g, cfg, rng)
    return _run_exponential_clocks(g, cfg, rng)


def _component_is_tree(g: ExplicitGraph, start: int) -> bool:
    seen = {start}
    stack = [start]
    edges = 0
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            edges += 1
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return edges == 2 * (len(seen) - 1)


def _run_uniform_boundary(g: Graph, cfg: SpreadConfig, rng) -> Snapshot:
    source, n = cfg.source, cfg.n
    parent: dict[int, int | None] = {source: None}
    order = [source]
    # Boundary entries are (susceptible node, infecting neighbor); on a tree
    # each susceptible node appears exactly once.
    boundary = [(v, source) for v in g.neighbors(source)]
    if n > 1:
        picks = rng.random(n - 1)
        for i in range(n - 1):
            if not boundary:
                raise CapacityError(
                    f"component exhausted after {len(order)} of {n} infections"
                )
            j = int(picks[i] * len(boundary))
            u, infector = boundary[j]
            boundary[j] = boundary[-1]
            boundary.pop()
            parent[u] = infector
            order.append(u)
            for w in g.neighbors(u):
                if w not in parent:
                    boundary.append((w, u))
    return Snapshot(root=source, order=order, parent_of=parent, host=g)


class _ExpStream:
    """Chunked Exp(1) draws so the clock backend avoids per-edge rng calls."""

    def __init__(self, rng, chunk=2048):
        self._rng = rng
        self._chunk = chunk
        self._buf = rng.exponential(size=chunk)
        self._i = 0

    def take(self) -> float:
        if self._i == len(self._buf):
            self._buf = self._rng.exponential(size=self._chunk)
            self._i = 0
        v = self._buf[self._i]
        self._i += 1
        return v


def _run_exponential_clocks(g: Graph, cfg: SpreadConfig, rng) -> Snapshot:
    source, n = cfg.source, cfg.n
    draws = _ExpStream(rng)
    parent: dict[int, int | None] = {source: None}
    order = [source]
    heap: list[tuple[float, int, int]] = []
    t0 = 0.0
    for v in g.neighbors(source):
        heapq.heappush(heap, (t0 + draws.take(), v, source))
    while len(order) < n:
        while heap and heap[0][1] in parent:
            heapq.heappop(heap)
        if not heap:
            raise CapacityError(
                f"component exhausted after {len(order)} of {n} infections"
            )
        t, u, infector = heapq.heappop(heap)
        parent[u] = infector
        order.append(u)
        for w in g.neighbors(u):
            if w not in parent:
                heapq.heappush(heap, (t + draws.take(), w, u))
    return Snapshot(root=source, order=order, parent_of=parent, host=g)


def subtree_counts(snap: Snapshot, root: int) -> list[int]:
    """Infection counts in each subtree hanging off `root`, neighbor-id order.

    Sums to snap.n - 1.  The snapshot must be a tree in its host.  When the
    host graph is known, uninfected branches show up as zeros; a detached
    snapshot (host None) can only report the branches it actually contains.
    """
    from .centrality import _require_tree, _sizes_from

    _require_tree(snap)
    if root not in snap:
        raise ValidationError(f"root {root} not in snapshot")
    size = _sizes_from(snap, root)
    ch = snap.children_map()
    neigh = set(ch[root])
    if snap.parent_of[root] is not None:
        neigh.add(snap.parent_of[root])
    if snap.host is not None:
        if isinstance(snap.host, LazyRegularTree):
            host_neigh = snap.host.known_neighbors(root)
        else:
            host_neigh = snap.host.neighbors(root)
        neigh.update(host_neigh)
    return [size.get(v, 0) for v in sorted(neigh)]


def snapshot_to_dict(snap: Snapshot) -> dict:
    """Plain-data form: infection-ordered node list plus child->parent pairs."""
    return {
        "n": snap.n,
        "source": snap.root,
        "nodes": list(snap.order),
        "parents": [
            [u, snap.parent_of[u]] for u in snap.order if snap.parent_of[u] is not None
        ],
    }


def snapshot_from_dict(doc: dict, host: Graph | None = None) -> Snapshot:
    try:
        nodes = list(doc["nodes"])
        pairs = list(doc["parents"])
    except (KeyError, TypeError) as e:
        raise ValidationError(f"snapshot document missing field: {e}") from None
    root = doc.get("source", nodes[0] if nodes else None)
    if root is None or root not in nodes:
        raise ValidationError("snapshot document lacks a usable source node")
    parent: dict[int, int | None] = {int(root): None}
    for u, p in pairs:
        parent[int(u)] = int(p)
    if set(parent) != set(int(v) for v in nodes):
        raise ValidationError("snapshot parents do not cover the node list")
    if int(doc.get("n", len(nodes))) != len(nodes):
        raise ValidationError("snapshot n disagrees with node list length")
    return Snapshot(root=int(root), order=[int(v) for v in nodes],
                    parent_of=parent, host=host)


def snapshot_to_json(snap: Snapshot) -> str:
    return json.dumps(snapshot_to_dict(snap), indent=2)


def snapshot_from_json(text: str, host: Graph | None = None) -> Snapshot:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"bad snapshot JSON: {e}") from None
    return snapshot_from_dict(doc, host=host)
