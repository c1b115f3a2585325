"""Maximum-a-posteriori source location under a uniform suspect prior.

With equal prior weight on every suspect, the MAP source is the suspect
whose rumor centrality over the infected set is largest.  On tree hosts the
exact counts decide; on cyclic hosts each candidate is scored on its own
BFS spanning tree.  Centrality ties are split by a fair coin driven by an
explicit tie seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, ValidationError
from .topology import Graph, Snapshot, bfs_tree, shortest_path
from .centrality import centrality_all, _sizes_from_tree_only
import math


@dataclass(frozen=True)
class SuspectSet:
    """Candidate sources with an implied uniform prior.

    pattern is one of "all", "connected", "two", "general"; param carries k
    (connected) or the distance d (two).  An explicit prior is accepted only
    if it is uniform over the members.
    """

    members: frozenset
    pattern: str = "general"
    param: int | None = None

    def __init__(self, members, pattern="general", param=None, prior=None):
        members = frozenset(members)
        if not members:
            raise ValidationError("suspect set cannot be empty")
        if pattern not in ("all", "connected", "two", "general"):
            raise ValidationError(f"unknown suspect pattern {pattern!r}")
        if prior is not None:
            want = Fraction(1, len(members))
            weights = dict(prior)
            if set(weights) != set(members) or any(
                Fraction(w) != want for w in weights.values()
            ):
                raise ValidationError(
                    "only the uniform prior is supported; weights must all "
                    f"equal 1/{len(members)}"
                )
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "pattern", pattern)
        object.__setattr__(self, "param", param)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def make_suspects_all(snap: Snapshot) -> SuspectSet:
    """Everyone infected is suspect (the no-prior-information case)."""
    return SuspectSet(snap.nodes, pattern="all")


def make_suspects_connected(g: Graph, anchor: int, k: int) -> SuspectSet:
    """First k nodes in BFS order from anchor (lowest id first per layer)."""
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if anchor not in g:
        raise ValidationError(f"anchor {anchor} not in graph")
    chosen = [anchor]
    seen = {anchor}
    layer = [anchor]
    while len(chosen) < k:
        nxt = []
        for u in sorted(layer):
            for v in sorted(g.neighbors(u)):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        if not nxt:
            raise CapacityError(
                f"component of {anchor} has only {len(chosen)} nodes, need {k}"
            )
        for v in sorted(nxt):
            if len(chosen) < k:
                chosen.append(v)
        layer = nxt
    return SuspectSet(chosen, pattern="connected", param=k)


def make_suspects_two(g: Graph, a: int, b: int) -> SuspectSet:
    """Two suspects; param records their graph distance."""
    if a == b:
        raise ValidationError("the two suspects must be distinct nodes")
    d = len(shortest_path(g, a, b)) - 1
    return SuspectSet([a, b], pattern="two", param=d)


@dataclass(frozen=True)
class Estimate:
    chosen: int
    argmax_set: tuple
    method: str
    tie_broken: bool

    def to_dict(self) -> dict:
        return {
            "chosen": self.chosen,
            "argmax_set": list(self.argmax_set),
            "method": self.method,
            "tie_broken": self.tie_broken,
        }


def map_estimate(snap: Snapshot, suspects: SuspectSet, tie_seed: int = 0) -> Estimate:
    """Most likely source among the suspects that are actually infected.

    Tree hosts get exact centrality; otherwise each candidate is scored on
    its BFS tree over the infected set.  A tie is resolved uniformly at
    random from the tied set using tie_seed.
    """
    candidates = sorted(set(suspects.members) & set(snap.nodes))
    if not candidates:
        raise ValidationError("no suspect is infected; nothing to estimate")
    if len(candidates) == 1:
        method = "tree-exact" if snap.is_host_tree() else "bfs-heuristic"
        return Estimate(chosen=candidates[0], argmax_set=(candidates[0],),
                        method=method, tie_broken=False)
    if snap.is_host_tree():
        method = "tree-exact"
        report = centrality_all(snap)
        scores = {s: report.exact[s] for s in candidates}
    else:
        method = "bfs-heuristic"
        scores = {}
        for s in candidates:
            scores[s] = _bfs_tree_centrality(snap, s)
    best = max(scores.values())
    argmax = tuple(s for s in candidates if scores[s] == best)
    if len(argmax) == 1:
        return Estimate(chosen=argmax[0], argmax_set=argmax, method=method,
                        tie_broken=False)
    pick = random.Random(tie_seed).randrange(len(argmax))
    return Estimate(chosen=argmax[pick], argmax_set=argmax, method=method,
                    tie_broken=True)


def _bfs_tree_centrality(snap: Snapshot, s: int) -> int:
    tree = bfs_tree(snap.host, s, restrict=snap.nodes)
    size = _sizes_from_tree_only(tree)
    denom = 1
    for v in size.values():
        denom *= v
    return math.factorial(tree.n) // denom
