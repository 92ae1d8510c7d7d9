"""Ribbon graphs as combinatorial maps.

A ribbon graph is stored as two permutations on darts (half-edges):

* ``sigma`` -- the vertex rotation; its cycles are the vertices, each read
  in the fixed cyclic order of the incident half-edges;
* ``eps`` -- a fixed-point-free involution whose cycles are the edges.

Vertices without darts are kept as a separate count.  Boundary components
are traced with ``d -> sigma(eps(d))`` restricted to the darts of a state:
from ``d`` cross its edge, then turn with ``sigma`` until a dart of the
state is reached.  Every other convention-sensitive routine (dual, boundary
labels) is built on this one map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

TANGLE_TYPES = ("w1", "w2", "w3", "w4")


class RibbonGraphError(ValueError):
    def __init__(self, message: str, token=None, line: int | None = None):
        super().__init__(message)
        self.message = message
        self.token = token
        self.line = line

    def __str__(self):
        # the line may be filled in after construction by a file parser
        return self.message if self.line is None else f"line {self.line}: {self.message}"


class DuplicateDart(RibbonGraphError):
    pass


class UnpairedDart(RibbonGraphError):
    pass


class SelfPairedDart(RibbonGraphError):
    pass


class DisconnectedGraph(RibbonGraphError):
    pass


class BadCycleLength(RibbonGraphError):
    pass


@dataclass(frozen=True)
class RibbonGraph:
    """Immutable combinatorial map.

    Darts are the integers ``0 .. 2e-1``; edge ``i`` is the pair
    ``edges[i] = (a, b)`` and is read as directed from ``a`` to ``b``.
    ``rotations`` lists the vertices with darts, ``isolated`` counts the
    others.  Names only matter for input and output.
    """

    rotations: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    isolated: int = 0
    dart_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()
    vertex_names: tuple[str, ...] = ()
    weights: tuple[tuple[str, str], ...] = ()
    tangles: tuple[tuple[str, str], ...] = ()
    name: str = "G"
    c3_subdivision: bool = False
    sigma: tuple[int, ...] = field(init=False, repr=False, compare=False)
    eps: tuple[int, ...] = field(init=False, repr=False, compare=False)
    vertex_of: tuple[int, ...] = field(init=False, repr=False, compare=False)
    edge_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = 2 * len(self.edges)
        sigma = [-1] * n
        vertex_of = [-1] * n
        for vi, rot in enumerate(self.rotations):
            for j, d in enumerate(rot):
                sigma[d] = rot[(j + 1) % len(rot)]
                vertex_of[d] = vi
        eps = [-1] * n
        edge_of = [-1] * n
        for ei, (a, b) in enumerate(self.edges):
            eps[a], eps[b] = b, a
            edge_of[a] = edge_of[b] = ei
        object.__setattr__(self, "sigma", tuple(sigma))
        object.__setattr__(self, "eps", tuple(eps))
        object.__setattr__(self, "vertex_of", tuple(vertex_of))
        object.__setattr__(self, "edge_of", tuple(edge_of))
        if not self.dart_names:
            object.__setattr__(self, "dart_names", tuple(f"d{i}" for i in range(n)))
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(f"e{i + 1}" for i in range(len(self.edges))))
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(f"v{i + 1}" for i in range(self.num_vertices)))

    # -- sizes -------------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return 2 * len(self.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.rotations) + self.isolated

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def weight_map(self) -> dict[str, str]:
        return dict(self.weights)

    def tangle_map(self) -> dict[str, str]:
        return dict(self.tangles)

    def edge_index(self, name: str) -> int:
        return self.edge_names.index(name)

    def replace(self, **changes) -> "RibbonGraph":
        fields = dict(
            rotations=self.rotations, edges=self.edges, isolated=self.isolated,
            dart_names=self.dart_names, edge_names=self.edge_names,
            vertex_names=self.vertex_names, weights=self.weights, tangles=self.tangles,
            name=self.name, c3_subdivision=self.c3_subdivision)
        fields.update(changes)
        return RibbonGraph(**fields)

    def with_default_weights(self) -> "RibbonGraph":
        """Give every unweighted edge the weight symbol ``b_<edge name>``."""
        w = self.weight_map()
        return self.replace(weights=tuple((e, w.get(e, f"b_{e}")) for e in self.edge_names))

    def with_tangles(self, tangle: str) -> "RibbonGraph":
        if tangle not in TANGLE_TYPES:
            raise ValueError(f"unknown tangle type {tangle!r}")
        return self.replace(tangles=tuple((e, tangle) for e in self.edge_names))

    # -- states --------------------------------------------------------------

    def state(self, edges: Iterable = ()) -> "State":
        """State from edge indices or edge names."""
        idx = set()
        for e in edges:
            idx.add(self.edge_index(e) if isinstance(e, str) else int(e))
        return State(self, frozenset(idx))

    def full_state(self) -> "State":
        return State(self, frozenset(range(self.num_edges)))

    def empty_state(self) -> "State":
        return State(self, frozenset())

    def __str__(self):
        return serialize_one(self)


@dataclass(frozen=True)
class State:
    """Spanning subgraph: all vertices of ``parent`` and the edges listed."""

    parent: RibbonGraph
    edges: frozenset

    def __post_init__(self):
        bad = [e for e in self.edges if not 0 <= e < self.parent.num_edges]
        if bad:
            raise ValueError(f"edge indices {bad} are not edges of {self.parent.name}")

    @property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e
        return m


def from_rotation(vertex_rotations: Sequence[Sequence], pairs: Sequence[Sequence], isolated: int = 0,
                  edge_names: Sequence[str] | None = None, vertex_names: Sequence[str] | None = None,
                  weights: Mapping[str, str] | None = None, tangles: Mapping[str, str] | None = None,
                  name: str = "G", c3_subdivision: bool = False) -> RibbonGraph:
    """Build and validate a ribbon graph from named darts.

    ``vertex_rotations`` lists the darts around each vertex in cyclic order
    and ``pairs`` lists the two darts of each edge.

    >>> F = from_rotation([["a", "b", "a'", "b'"]], [("a", "a'"), ("b", "b'")])
    >>> metrics(F, F.full_state())
    (1, 2, 0, 2, 1, 1)
    """
    seen = {}
    for rot in vertex_rotations:
        for tok in rot:
            if tok in seen:
                raise DuplicateDart(f"dart {tok!r} appears twice in the vertex rotations", tok)
            seen[tok] = True
    tokens = list(seen)
    index = {tok: i for i, tok in enumerate(tokens)}
    paired = set()
    for pair in pairs:
        if len(pair) != 2:
            raise RibbonGraphError(f"edge {tuple(pair)!r} must have exactly two darts")
        a, b = pair
        if a == b:
            raise SelfPairedDart(f"dart {a!r} is paired with itself", a)
        for tok in (a, b):
            if tok in paired:
                raise DuplicateDart(f"dart {tok!r} belongs to two edges", tok)
            if tok not in index:
                raise UnpairedDart(f"dart {tok!r} is in an edge but in no vertex rotation", tok)
            paired.add(tok)
    for tok in tokens:
        if tok not in paired:
            raise UnpairedDart(f"dart {tok!r} is not paired with another dart", tok)
    if isolated < 0:
        raise RibbonGraphError("isolated vertex count must be non-negative")

    # renumber so that edge i owns darts 2i and 2i+1
    order = []
    for a, b in pairs:
        order.extend((a, b))
    renum = {tok: i for i, tok in enumerate(order)}
    rotations = tuple(tuple(renum[t] for t in rot) for rot in vertex_rotations if len(rot) > 0)
    empty_rotations = sum(1 for rot in vertex_rotations if len(rot) == 0)
    edges = tuple((2 * i, 2 * i + 1) for i in range(len(pairs)))
    if edge_names is None:
        edge_names = [f"e{i + 1}" for i in range(len(pairs))]
    if len(edge_names) != len(pairs) or len(set(edge_names)) != len(edge_names):
        raise RibbonGraphError("edge names must be distinct, one per edge")
    nv = len(rotations) + empty_rotations + isolated
    if vertex_names is not None:
        vertex_names = list(vertex_names)
        # rotations first, then vertices without darts
        with_darts = [vn for vn, rot in zip(vertex_names, vertex_rotations) if len(rot) > 0]
        without = [vn for vn, rot in zip(vertex_names, vertex_rotations) if len(rot) == 0]
        vertex_names = with_darts + without + vertex_names[len(vertex_rotations):]
        if len(vertex_names) != nv:
            raise RibbonGraphError("one vertex name per vertex is required")
    weights = dict(weights or {})
    tangles = dict(tangles or {})
    for label, table in (("weight", weights), ("tangle", tangles)):
        for e in table:
            if e not in edge_names:
                raise RibbonGraphError(f"{label} given for unknown edge {e!r}", e)
    for e, t in tangles.items():
        if t not in TANGLE_TYPES:
            raise RibbonGraphError(f"unknown tangle type {t!r} on edge {e!r}", e)
    return RibbonGraph(
        rotations=rotations,
        edges=edges,
        isolated=isolated + empty_rotations,
        dart_names=tuple(str(t) for t in order),
        edge_names=tuple(edge_names),
        vertex_names=tuple(vertex_names) if vertex_names else (),
        weights=tuple((e, weights[e]) for e in edge_names if e in weights),
        tangles=tuple((e, tangles[e]) for e in edge_names if e in tangles),
        name=name,
        c3_subdivision=c3_subdivision,
    )


# -- states and boundary tracing ---------------------------------------------

def states(F: RibbonGraph) -> Iterator[State]:
    """All ``2**e`` states, ordered by edge-index bitmask."""
    for mask in range(1 << F.num_edges):
        yield State(F, frozenset(i for i in range(F.num_edges) if mask >> i & 1))


def _as_mask(F: RibbonGraph, H) -> int:
    if H is None:
        return (1 << F.num_edges) - 1
    if isinstance(H, State):
        if H.parent is not F and H.parent != F:
            raise ValueError("state belongs to a different ribbon graph")
        return H.mask
    if isinstance(H, int):
        return H
    return F.state(H).mask


def trace_walks(F: RibbonGraph, mask: int) -> list[list[int]]:
    """Dart cycles of the boundary of the state given by ``mask``.

    Walks of isolated vertices are returned as empty lists at the end.
    """
    sigma, eps, edge_of = F.sigma, F.eps, F.edge_of
    in_h = [mask >> edge_of[d] & 1 for d in range(F.num_darts)]
    seen = [False] * F.num_darts
    walks = []
    for start in range(F.num_darts):
        if not in_h[start] or seen[start]:
            continue
        walk = []
        d = start
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = sigma[eps[d]]
            while not in_h[d]:
                d = sigma[d]
        walks.append(walk)
    bare = F.isolated + sum(1 for rot in F.rotations if not any(in_h[d] for d in rot))
    walks.extend([] for _ in range(bare))
    return walks


def boundary_walks(F: RibbonGraph, H=None) -> list[list[int]]:
    """Boundary components of the state ``H`` (default: all edges)."""
    return trace_walks(F, _as_mask(F, H))


def count_boundaries(F: RibbonGraph, mask: int) -> int:
    sigma, eps, edge_of = F.sigma, F.eps, F.edge_of
    n = F.num_darts
    in_h = [mask >> edge_of[d] & 1 for d in range(n)]
    seen = [False] * n
    p = F.isolated
    for rot in F.rotations:
        for d in rot:
            if in_h[d]:
                break
        else:
            p += 1
    for start in range(n):
        if in_h[start] and not seen[start]:
            p += 1
            d = start
            while not seen[d]:
                seen[d] = True
                d = sigma[eps[d]]
                while not in_h[d]:
                    d = sigma[d]
    return p


def count_components(F: RibbonGraph, mask: int) -> int:
    parent = list(range(len(F.rotations)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    k = F.num_vertices
    vertex_of = F.vertex_of
    for ei, (a, b) in enumerate(F.edges):
        if mask >> ei & 1:
            ra, rb = find(vertex_of[a]), find(vertex_of[b])
            if ra != rb:
                parent[ra] = rb
                k -= 1
    return k


def metrics(F: RibbonGraph, H=None) -> tuple[int, int, int, int, int, int]:
    """``(k, e, r, n, p, g)`` of the state ``H`` (default: all edges)."""
    mask = _as_mask(F, H)
    k = count_components(F, mask)
    e = bin(mask).count("1")
    r = F.num_vertices - k
    n = e - r
    p = count_boundaries(F, mask)
    twice_g = k - p + n
    if twice_g < 0 or twice_g % 2:
        raise AssertionError(f"boundary trace is inconsistent: k - p + n = {twice_g} for {F.name}")
    return k, e, r, n, p, twice_g // 2


def genus(F: RibbonGraph) -> int:
    return metrics(F)[5]


def num_components(F: RibbonGraph) -> int:
    return count_components(F, (1 << F.num_edges) - 1)


def is_connected(F: RibbonGraph) -> bool:
    return num_components(F) <= 1


# -- constructions ----------------------------------------------------------

def dual(F: RibbonGraph) -> RibbonGraph:
    """Dual ribbon graph of a connected ``F``.

    The dual keeps the darts and edges; its rotation is ``sigma * eps``, so
    each dual vertex reads the darts of one boundary walk in traversal
    order, and ``dual(dual(F))`` gives back ``F``'s rotation exactly.
    """
    if not is_connected(F):
        raise DisconnectedGraph(f"{F.name} is disconnected; the dual needs a connected graph")
    if F.num_edges == 0:
        return F.replace(name=f"{F.name}*", vertex_names=tuple(f"f{i + 1}" for i in range(F.num_vertices)))
    walks = trace_walks(F, (1 << F.num_edges) - 1)
    rotations = tuple(tuple(w) for w in walks if w)
    return RibbonGraph(
        rotations=rotations,
        edges=F.edges,
        isolated=0,
        dart_names=F.dart_names,
        edge_names=F.edge_names,
        vertex_names=tuple(f"f{i + 1}" for i in range(len(rotations))),
        weights=F.weights,
        tangles=F.tangles,
        name=f"{F.name}*",
    )


def tensor_cycle(F: RibbonGraph, q: int) -> RibbonGraph:
    """``F`` tensor the q-cycle: every edge becomes a path of ``q - 1`` edges.

    Edge ``e`` with darts ``(a, b)`` becomes ``e.1, ..., e.(q-1)``; the
    original darts stay at the original vertices, so the embedding is kept.
    Weights and tangles are dropped.
    """
    if not isinstance(q, int) or q < 2:
        raise BadCycleLength(f"cycle length must be an integer >= 2, got {q!r}")
    if q == 2:
        return F.replace(name=f"{F.name}(x)C2")
    names = list(F.dart_names)
    pairs = []
    new_rotations = []
    edge_names = []
    new_vertex_names = []
    for ei, (a, b) in enumerate(F.edges):
        en = F.edge_names[ei]
        prev = names[a]
        for j in range(1, q - 1):
            u, w = f"{en}.{j}-", f"{en}.{j}+"
            pairs.append((prev, u))
            edge_names.append(f"{en}.{j}")
            new_rotations.append([u, w])
            new_vertex_names.append(f"{en}.v{j}")
            prev = w
        pairs.append((prev, names[b]))
        edge_names.append(f"{en}.{q - 1}")
    rotations = [[names[d] for d in rot] for rot in F.rotations] + new_rotations
    vnames = list(F.vertex_names[:len(F.rotations)]) + new_vertex_names + list(F.vertex_names[len(F.rotations):])
    return from_rotation(rotations, pairs, isolated=F.isolated, edge_names=edge_names,
                         vertex_names=vnames, name=f"{F.name}(x)C{q}", c3_subdivision=(q == 3))


def disjoint_union(*graphs: RibbonGraph, name: str = "G") -> RibbonGraph:
    rotations, pairs, isolated, enames = [], [], 0, []
    for gi, G in enumerate(graphs):
        tag = f"g{gi}."
        rotations += [[tag + G.dart_names[d] for d in rot] for rot in G.rotations]
        pairs += [(tag + G.dart_names[a], tag + G.dart_names[b]) for a, b in G.edges]
        enames += [tag + e for e in G.edge_names]
        isolated += G.isolated
    return from_rotation(rotations, pairs, isolated=isolated, edge_names=enames, name=name)


def connected_components(F: RibbonGraph) -> list[RibbonGraph]:
    """Components with at least one edge, then one graph per isolated vertex."""
    seen = [False] * F.num_darts
    comps = []
    for start in range(F.num_darts):
        if seen[start]:
            continue
        stack, darts = [start], []
        seen[start] = True
        while stack:
            d = stack.pop()
            darts.append(d)
            for nd in (F.sigma[d], F.eps[d]):
                if not seen[nd]:
                    seen[nd] = True
                    stack.append(nd)
        comps.append(darts)
    out = []
    for ci, darts in enumerate(comps):
        dset = set(darts)
        rots = [[F.dart_names[d] for d in rot] for rot in F.rotations if rot[0] in dset]
        pairs = [(F.dart_names[a], F.dart_names[b]) for a, b in F.edges if a in dset]
        enames = [F.edge_names[i] for i, (a, _) in enumerate(F.edges) if a in dset]
        out.append(from_rotation(rots, pairs, edge_names=enames, name=f"{F.name}[{ci}]"))
    bare = F.isolated
    for _ in range(bare):
        out.append(RibbonGraph(rotations=(), edges=(), isolated=1, name=f"{F.name}[v]"))
    return out


# -- isomorphism ---------------------------------------------------------------

def _rooted_code(sigma, eps, start: int) -> tuple[int, ...]:
    label = {start: 0}
    order = [start]
    code = []
    i = 0
    while i < len(order):
        d = order[i]
        for nd in (sigma[d], eps[d]):
            if nd not in label:
                label[nd] = len(order)
                order.append(nd)
            code.append(label[nd])
        i += 1
    return tuple(code)


def component_codes(F: RibbonGraph, reflect: bool = True) -> list[tuple[int, ...]]:
    """Canonical code of each component that has edges."""
    sigma = F.sigma
    sigma_inv = [0] * F.num_darts
    for d, s in enumerate(sigma):
        sigma_inv[s] = d
    codes = []
    seen = [False] * F.num_darts
    for start in range(F.num_darts):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            d = stack.pop()
            comp.append(d)
            for nd in (sigma[d], F.eps[d]):
                if not seen[nd]:
                    seen[nd] = True
                    stack.append(nd)
        best = min(_rooted_code(sigma, F.eps, s) for s in comp)
        if reflect:
            best = min(best, min(_rooted_code(sigma_inv, F.eps, s) for s in comp))
        codes.append(best)
    return codes


def canonical_key(F: RibbonGraph, reflect: bool = True) -> tuple:
    """Key equal for two ribbon graphs exactly when they are isomorphic.

    With ``reflect`` the isomorphism may reverse every rotation at once.
    Names, weights and tangles are ignored.
    """
    return (F.isolated, tuple(sorted(component_codes(F, reflect))))


def isomorphic(F1: RibbonGraph, F2: RibbonGraph, reflect: bool = True) -> bool:
    if (F1.num_edges, F1.num_vertices) != (F2.num_edges, F2.num_vertices):
        return False
    return canonical_key(F1, reflect) == canonical_key(F2, reflect)


def automorphism_count(F: RibbonGraph) -> int:
    """Orientation-preserving automorphisms of a connected graph with edges."""
    codes = [_rooted_code(F.sigma, F.eps, s) for s in range(F.num_darts)]
    best = min(codes)
    return sum(1 for c in codes if c == best)


# -- text form -----------------------------------------------------------------

def serialize_one(F: RibbonGraph) -> str:
    lines = [f"graph {F.name}"]
    if F.c3_subdivision:
        lines.append("mark c3-subdivision")
    for vi, rot in enumerate(F.rotations):
        lines.append(f"vertex {F.vertex_names[vi]}: " + " ".join(F.dart_names[d] for d in rot))
    for vn in F.vertex_names[len(F.rotations):]:
        lines.append(f"vertex {vn}:")
    for ei, (a, b) in enumerate(F.edges):
        lines.append(f"edge {F.edge_names[ei]}: {F.dart_names[a]} {F.dart_names[b]}")
    for e, w in F.weights:
        lines.append(f"weight {e} {w}")
    for e, t in F.tangles:
        lines.append(f"tangle {e} {t}")
    return "\n".join(lines) + "\n"


def serialize(graphs: Iterable[RibbonGraph]) -> str:
    return "\n".join(serialize_one(F) for F in graphs)
