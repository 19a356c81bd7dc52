"""Planarity, rotation systems, face tracing, outerplanarity, polyhedrality.

A rotation system lists each vertex's incident neighbours in cyclic order
(clockwise or counterclockwise; the two orientations describe the same
embedding, and rotation systems related by reversing every cycle are treated
as equal).  Faces are traced by the usual rule: the directed edge (u,v) is
followed by (v,w) where w succeeds u in the rotation at v; an embedding is
planar (genus 0) iff every component satisfies |V|-|E|+|F| = 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional, Sequence

import networkx as nx

from .bounds import SearchBoundExceeded, embedding_bound
from .graphs import Graph, GraphError, connected_components, graph_from_edges


class RotationSystem:
    """Per-vertex cyclic neighbour order; at each vertex a permutation of its
    neighbour set.  Stored normalized so each cycle starts at its smallest
    neighbour."""

    __slots__ = ("rotation",)

    def __init__(self, rotation: Sequence[Sequence[int]]):
        self.rotation = tuple(_normalize_cycle(tuple(r)) for r in rotation)

    def validate(self, g: Graph) -> None:
        if len(self.rotation) != g.n:
            raise GraphError("rotation has wrong number of vertices")
        for v, rot in enumerate(self.rotation):
            if tuple(sorted(rot)) != g.adj[v]:
                raise GraphError(f"rotation at {v} is not a permutation of its neighbours")

    def successor(self, v: int, u: int) -> int:
        """Neighbour following u in the cyclic order at v."""
        rot = self.rotation[v]
        return rot[(rot.index(u) + 1) % len(rot)]

    def reflected(self) -> "RotationSystem":
        return RotationSystem([tuple(reversed(r)) for r in self.rotation])

    def canonical_key(self) -> tuple:
        return self.rotation

    def __eq__(self, other) -> bool:
        if not isinstance(other, RotationSystem):
            return False
        return self.rotation == other.rotation or self.rotation == other.reflected().rotation

    def __hash__(self) -> int:
        return hash(min(self.rotation, self.reflected().rotation))

    def __repr__(self) -> str:
        return f"RotationSystem({[list(r) for r in self.rotation]})"


def _normalize_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    if not cycle:
        return cycle
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def reflection_canonical(rs: RotationSystem) -> RotationSystem:
    """The lexicographically smaller of a rotation system and its mirror."""
    return rs if rs.rotation <= rs.reflected().rotation else rs.reflected()


def trace_face_walks(g: Graph, rs: RotationSystem) -> list[list[int]]:
    """All face boundary walks; each directed edge is used exactly once.

    A walk is the closed vertex sequence v0, v1, ..., v_{k-1} (edge i goes
    v_i -> v_{i+1 mod k}).  Isolated vertices contribute the degenerate walk
    [v].  Walks start at their lexicographically smallest directed edge and
    are listed in order of that edge.
    """
    rs.validate(g)
    faces = []
    used: set[tuple[int, int]] = set()
    for v in range(g.n):
        if not g.adj[v]:
            faces.append([v])
            continue
        for w in rs.rotation[v]:
            if (v, w) in used:
                continue
            walk = []
            a, b = v, w
            while (a, b) not in used:
                used.add((a, b))
                walk.append(a)
                a, b = b, rs.successor(b, a)
            faces.append(walk)
    return faces


def rotation_is_planar(g: Graph, rs: RotationSystem) -> bool:
    """Genus-0 test: Euler's formula on every connected component."""
    faces = trace_face_walks(g, rs)
    comps = connected_components(g)
    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    v_count = [len(c) for c in comps]
    e_count = [0] * len(comps)
    for u, w in g.edges():
        e_count[comp_of[u]] += 1
    f_count = [0] * len(comps)
    for walk in faces:
        f_count[comp_of[walk[0]]] += 1
    return all(v_count[i] - e_count[i] + f_count[i] == 2 for i in range(len(comps)))


class PlaneGraph:
    """A graph together with a genus-0 rotation system and a designated outer
    face (default: a face of maximum length, smallest index on ties)."""

    __slots__ = ("graph", "rotation", "faces", "outer_face")

    def __init__(self, graph: Graph, rotation: RotationSystem, outer_face: Optional[int] = None):
        rotation.validate(graph)
        self.graph = graph
        self.rotation = rotation
        self.faces = trace_face_walks(graph, rotation)
        if not rotation_is_planar(graph, rotation):
            raise GraphError("rotation system is not a planar (genus-0) embedding")
        if outer_face is None:
            outer_face = max(range(len(self.faces)), key=lambda i: (len(self.faces[i]), -i))
        if not 0 <= outer_face < len(self.faces):
            raise GraphError("outer face index out of range")
        self.outer_face = outer_face

    def face_vertex_sets(self) -> list[frozenset[int]]:
        return [frozenset(w) for w in self.faces]

    def with_outer_face(self, idx: int) -> "PlaneGraph":
        return PlaneGraph(self.graph, self.rotation, idx)


@dataclass(frozen=True)
class Obstruction:
    """A K5 or K3,3 subdivision witness inside a non-planar graph."""

    kind: str  # "K5" or "K33"
    branch_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PlanarityVerdict:
    planar: bool
    embedding: Optional[RotationSystem]
    obstruction: Optional[Obstruction]


def _to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def _embedding_from_networkx(g: Graph, emb) -> RotationSystem:
    rot = []
    for v in range(g.n):
        rot.append(tuple(emb.neighbors_cw_order(v)) if g.adj[v] else ())
    return reflection_canonical(RotationSystem(rot))


def verify_obstruction(g: Graph, ob: Obstruction) -> bool:
    """Check the witness really is a K5/K3,3 subdivision inside g."""
    for u, v in ob.edges:
        if not g.has_edge(u, v):
            return False
    verts = sorted({x for e in ob.edges for x in e})
    pos = {v: i for i, v in enumerate(verts)}
    sub = graph_from_edges(len(verts), [(pos[u], pos[v]) for u, v in ob.edges])
    branch = sorted(pos[b] for b in ob.branch_vertices)
    want = 4 if ob.kind == "K5" else 3
    for i in range(sub.n):
        d = sub.degree(i)
        if i in branch:
            if d != want:
                return False
        elif d != 2:
            return False
    # walk the subdivided paths between branch vertices
    links: dict[int, set[int]] = {b: set() for b in branch}
    bset = set(branch)
    for b in branch:
        for start in sub.adj[b]:
            prev, cur = b, start
            while cur not in bset:
                nxts = [x for x in sub.adj[cur] if x != prev]
                if len(nxts) != 1:
                    return False
                prev, cur = cur, nxts[0]
            if cur == b:
                return False
            links[b].add(cur)
    if ob.kind == "K5":
        if len(branch) != 5:
            return False
        return all(links[b] == bset - {b} for b in branch)
    if len(branch) != 6:
        return False
    sides = {branch[0]} | (bset - links[branch[0]] - {branch[0]})
    other = bset - sides
    if len(sides) != 3 or len(other) != 3:
        return False
    return all(links[b] == other for b in sides) and all(links[b] == sides for b in other)


def _minimize_obstruction(g: Graph) -> Obstruction:
    """Shrink a non-planar graph to an edge-minimal non-planar subgraph.

    By Kuratowski's theorem an edge-minimal non-planar graph (after dropping
    isolated vertices) is exactly a K5 or K3,3 subdivision.
    """
    h = _to_networkx(g)
    ok, counter = nx.check_planarity(h, counterexample=True)
    assert not ok
    work = counter.copy()
    changed = True
    while changed:
        changed = False
        for e in sorted(work.edges()):
            work.remove_edge(*e)
            if nx.check_planarity(work)[0]:
                work.add_edge(*e)
            else:
                changed = True
    work.remove_nodes_from([v for v in list(work.nodes()) if work.degree(v) == 0])
    branch = tuple(sorted(v for v in work.nodes() if work.degree(v) >= 3))
    kind = "K5" if len(branch) == 5 else "K33"
    edges = tuple(sorted(tuple(sorted(e)) for e in work.edges()))
    ob = Obstruction(kind, branch, edges)
    if not verify_obstruction(g, ob):  # pragma: no cover - safety net
        raise AssertionError("obstruction minimization produced a bad witness")
    return ob


def test_planarity(g: Graph) -> PlanarityVerdict:
    """Planarity with a certificate either way: a genus-0 rotation system, or
    a verified Kuratowski subdivision."""
    ok, emb = nx.check_planarity(_to_networkx(g))
    if ok:
        rs = _embedding_from_networkx(g, emb)
        if not rotation_is_planar(g, rs):  # pragma: no cover - safety net
            raise AssertionError("planar embedding failed the Euler check")
        return PlanarityVerdict(True, rs, None)
    return PlanarityVerdict(False, None, _minimize_obstruction(g))


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(_to_networkx(g))[0]


def _k_connected_quick(g: Graph, k: int) -> bool:
    # local import to avoid a cycle; connectivity builds on nothing here
    from .connectivity import is_k_connected

    return is_k_connected(g, k)


def enumerate_rotation_systems(g: Graph) -> Iterator[RotationSystem]:
    """Every rotation system once, with one of each mirror pair skipped."""
    anchor = next((v for v in range(g.n) if g.degree(v) >= 3), None)

    def options(v: int) -> list[tuple[int, ...]]:
        nbrs = g.adj[v]
        if len(nbrs) <= 2:
            return [nbrs]
        first, rest = nbrs[0], nbrs[1:]
        opts = [(first,) + p for p in permutations(rest)]
        if v == anchor:
            opts = [o for o in opts if o[1] < o[-1]]
        return opts

    per_vertex = [options(v) for v in range(g.n)]

    def rec(v: int, chosen: list[tuple[int, ...]]) -> Iterator[RotationSystem]:
        if v == g.n:
            yield RotationSystem(chosen)
            return
        for opt in per_vertex[v]:
            chosen.append(opt)
            yield from rec(v + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def _planar_rotations_backtrack(g: Graph, limit: Optional[int]) -> Iterator[RotationSystem]:
    """Genus-0 rotation systems up to reflection by backtracking with early
    pruning: the restriction of a planar embedding to an induced prefix is a
    planar embedding of the prefix, so any prefix of positive genus dies."""
    order = []
    seen = [False] * g.n
    for s in range(g.n):  # BFS order keeps prefixes as connected as possible
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    anchor = next((v for v in order if g.degree(v) >= 3), None)

    def options(v: int) -> list[tuple[int, ...]]:
        nbrs = g.adj[v]
        if len(nbrs) <= 2:
            return [nbrs]
        first, rest = nbrs[0], nbrs[1:]
        opts = [(first,) + p for p in permutations(rest)]
        if v == anchor:
            opts = [o for o in opts if o[1] < o[-1]]
        return opts

    assigned: dict[int, tuple[int, ...]] = {}
    count = [0]

    def prefix_planar(upto: int) -> bool:
        verts = order[: upto + 1]
        inset = set(verts)
        pos = {v: i for i, v in enumerate(verts)}
        adj = [[pos[u] for u in assigned[v] if u in inset] for v in verts]
        sub = Graph(len(verts), [sorted(a) for a in adj])
        rot = [tuple(pos[u] for u in assigned[v] if u in inset) for v in verts]
        return rotation_is_planar(sub, RotationSystem(rot))

    def rec(i: int) -> Iterator[RotationSystem]:
        if limit is not None and count[0] >= limit:
            return
        if i == g.n:
            rs = RotationSystem([assigned[v] for v in range(g.n)])
            count[0] += 1
            yield reflection_canonical(rs)
            return
        v = order[i]
        for opt in options(v):
            assigned[v] = opt
            if prefix_planar(i):
                yield from rec(i + 1)
            del assigned[v]

    yield from rec(0)


def planar_embeddings(g: Graph, limit: Optional[int] = None, bound: Optional[int] = None) -> list[RotationSystem]:
    """Distinct genus-0 rotation systems up to reflection, at most ``limit``.

    For 3-connected planar graphs the embedding is unique, so the single
    rotation system from the planarity test is returned without a search.
    """
    verdict = test_planarity(g)
    if not verdict.planar:
        raise GraphError("planar_embeddings called on a non-planar graph")
    if g.n >= 4 and _k_connected_quick(g, 3):
        return [verdict.embedding]
    max_n = bound if bound is not None else embedding_bound(False)
    if g.n > max_n:
        raise SearchBoundExceeded(f"embedding enumeration refused for n={g.n} > bound {max_n}")
    out = []
    seen = set()
    for rs in _planar_rotations_backtrack(g, None):
        key = rs.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(rs)
        if limit is not None and len(out) >= limit:
            break
    return out


def is_outerplanar(g: Graph) -> tuple[bool, Optional[PlaneGraph]]:
    """Outerplanarity via the apex trick: g is outerplanar iff g plus a vertex
    adjacent to everything is planar.  On success the witness embedding has
    its outer face incident to every vertex."""
    apex = g.n
    aug = graph_from_edges(g.n + 1, g.edges() + [(v, apex) for v in range(g.n)])
    ok, emb = nx.check_planarity(_to_networkx(aug))
    if not ok:
        return False, None
    rot = []
    for v in range(g.n):
        cyc = [u for u in emb.neighbors_cw_order(v) if u != apex]
        rot.append(tuple(cyc))
    rs = reflection_canonical(RotationSystem(rot))
    plane = PlaneGraph(g, rs)
    full = [i for i, w in enumerate(plane.faces) if set(w) == set(range(g.n))]
    if not full:  # pragma: no cover - safety net
        raise AssertionError("apex embedding left no face containing all vertices")
    return True, plane.with_outer_face(full[0])


def is_polyhedron(g: Graph) -> bool:
    """Planar and 3-connected (hence at least 4 vertices)."""
    return g.n > 3 and _k_connected_quick(g, 3) and is_planar(g)


# -- interchange -------------------------------------------------------


def plane_to_json(p: PlaneGraph) -> str:
    return json.dumps({"rotation": [list(r) for r in p.rotation.rotation], "outer_face": p.outer_face})


def plane_from_json(g: Graph, text: str) -> PlaneGraph:
    obj = json.loads(text)
    return PlaneGraph(g, RotationSystem([tuple(r) for r in obj["rotation"]]), obj.get("outer_face"))


def plane_to_dot(p: PlaneGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v, rot in enumerate(p.rotation.rotation):
        lines.append(f"  // rotation {v}: {' '.join(str(u) for u in rot)}")
    for v in range(p.graph.n):
        label = p.graph.labels[v] if p.graph.labels else None
        lines.append(f'  {v} [label="{label}"];' if label else f"  {v};")
    for u, v in p.graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
