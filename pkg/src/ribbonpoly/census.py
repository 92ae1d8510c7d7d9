"""Families of ribbon graphs for exhaustive and randomized checking.

Connected ribbon graphs with ``e`` edges are grown from those with
``e - 1`` edges: deleting a non-bridge edge, or the pendant edge of a
leaf, keeps a connected graph, so inserting a new edge at every pair of
corners (or a pendant edge at every corner) reaches every isomorphism
class.  Duplicates are removed with :func:`~ribbonpoly.ribbon.canonical_key`.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .ribbon import RibbonGraph, canonical_key, is_connected


def _children(F: RibbonGraph):
    rots = [list(r) for r in F.rotations]
    pairs = [tuple(p) for p in F.edges]
    a, b = 2 * F.num_edges, 2 * F.num_edges + 1
    if not rots:
        # single bare vertex: a loop or a pendant edge
        yield [[a, b]], pairs + [(a, b)]
        yield [[a], [b]], pairs + [(a, b)]
        return
    corners = [(vi, j) for vi, r in enumerate(rots) for j in range(len(r))]
    for vi, j in corners:
        new = [list(r) for r in rots]
        new[vi].insert(j + 1, a)
        yield new + [[b]], pairs + [(a, b)]
    for vi, j in corners:
        for wi, l in corners:
            new = [list(r) for r in rots]
            if vi == wi and j == l:
                new[vi].insert(j + 1, b)
                new[vi].insert(j + 1, a)
                yield new, pairs + [(a, b)]
                continue
            # insert into the later position first so indices stay valid
            if (wi, l) > (vi, j):
                new[wi].insert(l + 1, b)
                new[vi].insert(j + 1, a)
            else:
                new[vi].insert(j + 1, a)
                new[wi].insert(l + 1, b)
            yield new, pairs + [(a, b)]


@lru_cache(maxsize=None)
def _connected_keys(e: int, reflect: bool) -> tuple:
    if e == 0:
        bare = RibbonGraph(rotations=(), edges=(), isolated=1)
        return ((canonical_key(bare, reflect), bare),)
    found = {}
    for _, parent in _connected_keys(e - 1, reflect):
        for rots, pairs in _children(parent):
            G = RibbonGraph(rotations=tuple(tuple(r) for r in rots), edges=tuple(pairs))
            key = canonical_key(G, reflect)
            if key not in found:
                found[key] = G
    return tuple(sorted(found.items(), key=lambda kv: kv[0]))


def connected_graphs(e: int, reflect: bool = True) -> list[RibbonGraph]:
    """One representative of every connected ribbon graph with ``e`` edges.

    With ``reflect`` two graphs related by reversing all rotations count as
    one.  Representatives are named ``c<e>_<index>`` in a fixed order.
    """
    return [G.replace(name=f"c{e}_{i}") for i, (_, G) in enumerate(_connected_keys(e, reflect))]


def connected_corpus(max_edges: int, reflect: bool = True) -> list[RibbonGraph]:
    out = []
    for e in range(max_edges + 1):
        out.extend(connected_graphs(e, reflect))
    return out


def random_graph(e: int, rng: random.Random, connected: bool = False, name: str | None = None) -> RibbonGraph:
    """Uniformly random vertex rotation on ``2e`` darts with the standard pairing."""
    while True:
        image = list(range(2 * e))
        rng.shuffle(image)
        seen = [False] * (2 * e)
        rotations = []
        for d in range(2 * e):
            if not seen[d]:
                cyc = []
                while not seen[d]:
                    seen[d] = True
                    cyc.append(d)
                    d = image[d]
                rotations.append(tuple(cyc))
        G = RibbonGraph(rotations=tuple(rotations),
                        edges=tuple((2 * i, 2 * i + 1) for i in range(e)),
                        isolated=0 if e else 1,
                        name=name or f"r{e}")
        if not connected or is_connected(G):
            return G


def random_corpus(count: int, max_edges: int, seed: int, connected: bool = False, min_edges: int = 1) -> list[RibbonGraph]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        e = rng.randint(min_edges, max_edges)
        out.append(random_graph(e, rng, connected=connected, name=f"rand{seed}_{i}"))
    return out
