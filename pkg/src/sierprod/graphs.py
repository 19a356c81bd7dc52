"""Immutable simple-graph core.

Vertices are dense integer indices 0..n-1; labels are presentation-only.
Neighbour sets are stored sorted and every iteration order is deterministic,
so certificates and test goldens are reproducible.  Loops and parallel edges
are rejected at construction, never silently cleaned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised when a graph or map violates a structural invariant."""


class Graph:
    """A finite simple undirected graph on vertices 0..n-1.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``; ``mask[v]`` is the
    same set as an integer bitmask (bit ``u`` set iff ``uv`` is an edge),
    which the search-heavy modules use for fast removal/BFS work.
    """

    __slots__ = ("n", "adj", "labels", "mask")

    def __init__(self, n: int, adj: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        if len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows for {n} vertices")
        rows = []
        masks = []
        for v, nbrs in enumerate(adj):
            row = tuple(sorted(nbrs))
            m = 0
            prev = -1
            for u in row:
                if u == v:
                    raise GraphError(f"loop at vertex {v}")
                if not 0 <= u < n:
                    raise GraphError(f"neighbour {u} of {v} out of range 0..{n - 1}")
                if u == prev:
                    raise GraphError(f"duplicate edge {v}-{u}")
                prev = u
                m |= 1 << u
            rows.append(row)
            masks.append(m)
        for v in range(n):
            for u in rows[v]:
                if not masks[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency: {u} in adj[{v}] but not conversely")
        self.n = n
        self.adj = tuple(rows)
        self.mask = tuple(masks)
        if labels is not None:
            if len(labels) != n:
                raise GraphError("labels length mismatch")
            self.labels = tuple(str(x) for x in labels)
        else:
            self.labels = None

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(len(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.mask[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted (u, v) pairs with u < v, lexicographic."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]], labels: Optional[Sequence[str]] = None) -> Graph:
    """Build a Graph from an edge list, rejecting loops and bad indices.

    Repeated mentions of the same edge are merged (the edge *set* is what is
    given); a loop or out-of-range endpoint raises GraphError naming the pair.
    """
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop edge ({u},{v}) rejected")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, [sorted(s) for s in adj], labels)


@dataclass(frozen=True)
class DegreeSequence:
    """Non-increasing degree multiset with the derived scalars the paper uses."""

    sequence: tuple[int, ...]
    min_degree: int
    regular: Optional[int]  # the unique degree r when the graph is r-regular


def degree_sequence(g: Graph) -> DegreeSequence:
    degs = sorted((len(r) for r in g.adj), reverse=True)
    if not degs:
        return DegreeSequence((), 0, None)
    mind = degs[-1]
    reg = degs[0] if degs[0] == mind else None
    return DegreeSequence(tuple(degs), mind, reg)


def connected_components(g: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, relabelled by ascending original index.

    Returns (H, keep) where ``keep[i]`` is the original index of H's vertex i.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph")
    pos = {v: i for i, v in enumerate(keep)}
    adj = [[pos[u] for u in g.adj[v] if u in pos] for v in keep]
    labels = [g.labels[v] for v in keep] if g.labels else None
    return Graph(len(keep), adj, labels), keep


INFINITE = -1  # marker returned by distance() for disconnected pairs


def distance(g: Graph, u: int, v: int) -> int:
    """Length of a shortest u-v path; INFINITE if none exists."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError("distance endpoint out of range")
    if u == v:
        return 0
    dist = {u: 0}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == v:
                        return dist[y]
                    nxt.append(y)
        frontier = nxt
    return INFINITE


# -- vertex maps -------------------------------------------------------


class VertexMap:
    """A total function f: {0..domain_size-1} -> {0..codomain_size-1}."""

    __slots__ = ("domain_size", "codomain_size", "image")

    def __init__(self, domain_size: int, codomain_size: int, image: Sequence[int]):
        if len(image) != domain_size:
            raise GraphError(f"map image has {len(image)} entries for domain of {domain_size}")
        for a, b in enumerate(image):
            if not 0 <= b < codomain_size:
                raise GraphError(f"f({a})={b} outside codomain 0..{codomain_size - 1}")
        self.domain_size = domain_size
        self.codomain_size = codomain_size
        self.image = tuple(image)

    def __call__(self, a: int) -> int:
        return self.image[a]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexMap)
            and self.domain_size == other.domain_size
            and self.codomain_size == other.codomain_size
            and self.image == other.image
        )

    def __hash__(self) -> int:
        return hash((self.domain_size, self.codomain_size, self.image))

    def __repr__(self) -> str:
        return f"VertexMap({list(self.image)})"


def identity_map(n_domain: int, n_codomain: Optional[int] = None) -> VertexMap:
    """The identity on 0..n_domain-1, usable whenever V(A) is a subset of V(B)."""
    if n_codomain is None:
        n_codomain = n_domain
    if n_codomain < n_domain:
        raise GraphError("identity map needs codomain at least as large as domain")
    return VertexMap(n_domain, n_codomain, list(range(n_domain)))


@dataclass(frozen=True)
class MapProperties:
    image_set: tuple[int, ...]
    locally_injective: bool


def map_properties(f: VertexMap, a: Graph) -> MapProperties:
    """Image of f and whether distinct neighbours of any vertex map apart."""
    if f.domain_size != a.n:
        raise GraphError("map domain does not match graph")
    loc = True
    for v in range(a.n):
        seen = set()
        for u in a.adj[v]:
            fu = f.image[u]
            if fu in seen:
                loc = False
                break
            seen.add(fu)
        if not loc:
            break
    return MapProperties(tuple(sorted(set(f.image))), loc)


def is_locally_injective(f: VertexMap, a: Graph) -> bool:
    return map_properties(f, a).locally_injective


# -- graph6 interchange ------------------------------------------------
#
# Encoding follows the formal description of the graph6 format: N(n) is one
# byte n+63 for n <= 62, else 126 followed by three bytes encoding n in
# bigendian 6-bit groups (n <= 258047 is all we ever need); R(x) packs the
# upper triangle of the adjacency matrix column by column, x(0,1), x(0,2),
# x(1,2), x(0,3), ... into 6-bit groups, each +63.


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise GraphError("graph6 encoder supports n <= 258047")


def to_graph6(g: Graph) -> str:
    bits = []
    for v in range(g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_encode_n(g.n))
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i : i + 6]:
            x = x << 1 | b
        out.append(x + 63)
    return out.decode("ascii")


def from_graph6(line: str) -> Graph:
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if s.startswith(":") or s.startswith(";"):
        raise GraphError("sparse6/incremental input given to graph6 decoder; use from_sparse6")
    data = s.encode("ascii")
    if not data:
        raise GraphError("empty graph6 line")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise GraphError("graph6 n > 258047 not supported")
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n < 0:
        raise GraphError("bad graph6 size byte")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) < need:
        raise GraphError("graph6 body too short")
    bits = []
    for ch in body[:need]:
        x = ch - 63
        if not 0 <= x < 64:
            raise GraphError(f"bad graph6 byte {ch}")
        bits.extend((x >> k & 1) for k in range(5, -1, -1))
    edges = []
    i = 0
    for v in range(n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return graph_from_edges(n, edges)


def from_sparse6(line: str) -> Graph:
    """Decode one sparse6 line (':'-prefixed); loops and repeats are rejected."""
    s = line.strip()
    if s.startswith(">>sparse6<<"):
        s = s[len(">>sparse6<<"):]
    if not s.startswith(":"):
        raise GraphError("sparse6 input must start with ':'")
    data = s[1:].encode("ascii")
    if not data:
        raise GraphError("empty sparse6 line")
    if data[0] == 126:
        if len(data) < 4:
            raise GraphError("truncated sparse6 size field")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    k = max(1, (n - 1).bit_length())
    bits = []
    for ch in body:
        x = ch - 63
        if not 0 <= x < 64:
            raise GraphError(f"bad sparse6 byte {ch}")
        bits.extend((x >> j & 1) for j in range(5, -1, -1))
    edges = []
    v = 0
    i = 0
    while i + 1 + k <= len(bits):
        b = bits[i]
        x = 0
        for j in range(k):
            x = x << 1 | bits[i + 1 + j]
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            edges.append((x, v))
    return graph_from_edges(n, edges)


def read_graph6_file(path) -> list[Graph]:
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(":") or line.startswith(">>sparse6<<"):
                out.append(from_sparse6(line))
            else:
                out.append(from_graph6(line))
    return out


def write_graph6_file(path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")


# -- JSON interchange --------------------------------------------------


def graph_to_json(g: Graph) -> str:
    obj = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.labels:
        obj["labels"] = list(g.labels)
    return json.dumps(obj)


def graph_from_json(text: str) -> Graph:
    obj = json.loads(text)
    return graph_from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]], obj.get("labels"))


def map_to_json(f: VertexMap) -> str:
    return json.dumps({"f": list(f.image)})


def map_from_json(text: str, domain_size: Optional[int] = None, codomain_size: Optional[int] = None) -> VertexMap:
    obj = json.loads(text)
    image = [int(x) for x in obj["f"]]
    dom = domain_size if domain_size is not None else len(image)
    cod = codomain_size if codomain_size is not None else (max(image) + 1 if image else 0)
    return VertexMap(dom, cod, image)
