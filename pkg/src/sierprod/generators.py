"""Parameterized constructions of the graph families and transformations the
theory traffics in: standard solids and families, truncation, vertex
expansion, the vertex/edge-surgery constructions for the deficient-degree
classes, the big antiprism-based family, and the gluing operations that grow
coloured class members.

Every generator's output is re-verified by the corresponding class checker;
nothing is trusted by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import networkx as nx

from .classes import (
    AClassCertificate,
    BClassCertificate,
    ClassSignature,
    certify_A_with_colouring,
    check_B_star,
    find_B_membership,
    signature,
    verify_A_certificate,
)
from .connectivity import is_k_connected
from .embedding import PlaneGraph, RotationSystem, is_polyhedron, test_planarity
from .graphs import Graph, GraphError, graph_from_edges

FAMILIES = ("complete", "cycle", "path", "prism", "antiprism", "wheel_pyramid", "bipyramid", "platonic")
PLATONIC_SOLIDS = ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: Optional[int] = None
    solid: Optional[str] = None


def _plane(g: Graph) -> PlaneGraph:
    verdict = test_planarity(g)
    if not verdict.planar:  # pragma: no cover - generators only build planar instances here
        raise GraphError("generated graph unexpectedly non-planar")
    return PlaneGraph(g, verdict.embedding)


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def prism_graph(n: int) -> Graph:
    """The n-gonal prism: two n-cycles joined by a perfect matching."""
    if n < 3:
        raise GraphError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return graph_from_edges(2 * n, edges)


def antiprism_graph(n: int) -> Graph:
    """The n-gonal antiprism: inner cycle 0..n-1, outer cycle n..2n-1, with
    inner vertex i joined to outer vertices i and i+1."""
    if n < 3:
        raise GraphError("antiprism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(i, n + (i + 1) % n) for i in range(n)]
    return graph_from_edges(2 * n, edges)


def wheel_pyramid_graph(n: int) -> Graph:
    """The n-gonal pyramid (wheel): base cycle 0..n-1 plus apex n."""
    if n < 3:
        raise GraphError("pyramid needs base n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return graph_from_edges(n + 1, edges)


def bipyramid_graph(n: int) -> Graph:
    """The n-gonal bipyramid: cycle 0..n-1 plus two apexes n, n+1."""
    if n < 3:
        raise GraphError("bipyramid needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n) for i in range(n)] + [(i, n + 1) for i in range(n)]
    return graph_from_edges(n + 2, edges)


def platonic_graph(name: str) -> Graph:
    makers = {
        "tetrahedron": lambda: complete_graph(4),
        "cube": lambda: graph_from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]),
        "octahedron": lambda: graph_from_edges(6, sorted(tuple(sorted(e)) for e in nx.octahedral_graph().edges())),
        "dodecahedron": lambda: graph_from_edges(20, sorted(tuple(sorted(e)) for e in nx.dodecahedral_graph().edges())),
        "icosahedron": lambda: graph_from_edges(12, sorted(tuple(sorted(e)) for e in nx.icosahedral_graph().edges())),
    }
    if name not in makers:
        raise GraphError(f"unknown platonic solid {name!r}; pick one of {PLATONIC_SOLIDS}")
    return makers[name]()


def generate(spec: FamilySpec) -> Union[Graph, PlaneGraph]:
    """Instantiate a family; planar instances come embedded, the rest bare."""
    fam = spec.family
    if fam == "complete":
        g = complete_graph(_require_n(spec, 1))
        return _plane(g) if g.n <= 4 else g
    if fam == "cycle":
        return _plane(cycle_graph(_require_n(spec, 3)))
    if fam == "path":
        return _plane(path_graph(_require_n(spec, 1)))
    if fam == "prism":
        return _plane(prism_graph(_require_n(spec, 3)))
    if fam == "antiprism":
        return _plane(antiprism_graph(_require_n(spec, 3)))
    if fam == "wheel_pyramid":
        return _plane(wheel_pyramid_graph(_require_n(spec, 3)))
    if fam == "bipyramid":
        return _plane(bipyramid_graph(_require_n(spec, 3)))
    if fam == "platonic":
        if not spec.solid:
            raise GraphError("platonic family needs a solid name")
        return _plane(platonic_graph(spec.solid))
    raise GraphError(f"unknown family {fam!r}; pick one of {FAMILIES}")


def _require_n(spec: FamilySpec, minimum: int) -> int:
    if spec.n is None or spec.n < minimum:
        raise GraphError(f"family {spec.family!r} needs parameter n >= {minimum}")
    return spec.n


# -- truncation and expansion -------------------------------------------


def truncate(p: PlaneGraph) -> PlaneGraph:
    """Replace every vertex by a cycle on its edge-ends, in rotation order.

    The corner of u on edge uv becomes a vertex; corners of u are joined in
    u's cyclic order and the two corners of each original edge are joined.
    |V'| = 2|E| and |E'| = 3|E|; the result is again a polyhedron.
    """
    g = p.graph
    if not is_polyhedron(g):
        raise GraphError("truncation is defined for polyhedra")
    corners = sorted((u, v) for u in range(g.n) for v in g.adj[u])
    idx = {c: i for i, c in enumerate(corners)}
    edges = []
    for u, v in g.edges():
        edges.append((idx[(u, v)], idx[(v, u)]))
    for u in range(g.n):
        rot = p.rotation.rotation[u]
        d = len(rot)
        for i in range(d):
            edges.append((idx[(u, rot[i])], idx[(u, rot[(i + 1) % d])]))
    out = graph_from_edges(len(corners), edges)
    if out.n != 2 * g.m or out.m != 3 * g.m:  # pragma: no cover - arithmetic identity
        raise AssertionError("truncation size identity failed")
    plane = _plane(out)
    if not is_polyhedron(out):  # pragma: no cover - safety net
        raise AssertionError("truncation lost polyhedrality")
    return plane


def expand_all(p: PlaneGraph, cert: AClassCertificate) -> PlaneGraph:
    """Expand every vertex of a (2,2)-certified graph into an edge.

    The rotation at each vertex splits into its two same-coloured blocks; one
    new endpoint inherits each block.  The output is cubic, and isomorphic to
    the product of the input with the 2-vertex factor under the colour map
    (checked in the tests, not assumed here).
    """
    g = p.graph
    if cert.signature.parts != (2, 2):
        raise GraphError("expansion needs a (2,2) certificate")
    if not verify_A_certificate(g, cert):
        raise GraphError("invalid (2,2) certificate")
    col = cert.colouring
    # endpoint 2a carries a's colour-1 block, 2a+1 the colour-2 block
    blocks: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for a in range(g.n):
        rot = cert.rotation.rotation[a]
        start = next(i for i in range(4) if col[rot[i]] == 1 and col[rot[i - 1]] != 1)
        ordered = tuple(rot[(start + j) % 4] for j in range(4))
        blocks.append((ordered[:2], ordered[2:]))
    edges = [(2 * a, 2 * a + 1) for a in range(g.n)]
    for a in range(g.n):
        red_block, blue_block = blocks[a]
        side = 0 if col[a] == 1 else 1
        for b in red_block:
            edges.append((2 * a, 2 * b + side))
        for b in blue_block:
            edges.append((2 * a + 1, 2 * b + side))
    out = graph_from_edges(g.n * 2, sorted(set(tuple(sorted(e)) for e in edges)))
    if any(out.degree(v) != 3 for v in range(out.n)):  # pragma: no cover - safety net
        raise AssertionError("expansion did not come out cubic")
    return _plane(out)


# -- deficient-class constructions --------------------------------------


def delete_vertex_from_cubic(p: PlaneGraph, v: int) -> tuple[Graph, BClassCertificate]:
    """Delete a vertex of a cubic polyhedron; the result is certified into the
    r=3 class of signature (1,1,1) and satisfies the starred cut condition."""
    g = p.graph
    if any(g.degree(u) != 3 for u in range(g.n)) or not is_polyhedron(g):
        raise GraphError("input must be a cubic polyhedron")
    from .graphs import induced

    out, _ = induced(g, [u for u in range(g.n) if u != v])
    cert = find_B_membership(out, 3, signature(1, 1, 1), bound=out.n)
    if cert is None or not check_B_star(out, 3):
        raise AssertionError("vertex deletion left the starred (1,1,1) class")
    return out, cert


def delete_two_adjacent_edges(p: PlaneGraph, e1: tuple[int, int], e2: tuple[int, int]) -> tuple[Graph, BClassCertificate]:
    """Delete two co-facial edges sharing a vertex from an r-regular
    polyhedron; the shared vertex drops to degree r-2 (colour 1) and the
    result is certified into the starred (2,1,1) class for that r."""
    g = p.graph
    degs = {g.degree(u) for u in range(g.n)}
    if len(degs) != 1 or not is_polyhedron(g):
        raise GraphError("input must be a regular polyhedron")
    r = degs.pop()
    s1, s2 = set(e1), set(e2)
    shared = s1 & s2
    if len(shared) != 1 or not g.has_edge(*e1) or not g.has_edge(*e2):
        raise GraphError("edges must be distinct, present, and share one vertex")
    plane_faces = p.faces
    cofacial = False
    for walk in plane_faces:
        L = len(walk)
        walk_edges = {frozenset((walk[i], walk[(i + 1) % L])) for i in range(L)}
        if frozenset(e1) in walk_edges and frozenset(e2) in walk_edges:
            cofacial = True
            break
    if not cofacial:
        raise GraphError("edges must lie on a common face")
    keep = [e for e in g.edges() if set(e) != s1 and set(e) != s2]
    out = graph_from_edges(g.n, keep)
    cert = find_B_membership(out, r, signature(2, 1, 1), bound=out.n)
    if cert is None or not check_B_star(out, r):
        raise AssertionError("edge surgery left the starred (2,1,1) class")
    return out, cert


def b5_111_family(h: int, size_bound: int = 200) -> tuple[Graph, BClassCertificate]:
    """The antiprism-based members of the starred degree-5 class of signature
    (1,1,1): start from the (8+40h)-gonal antiprism, add 2+10h inner vertices
    covering four consecutive inner-rim vertices each (paired off by extra
    edges) and 1+8h outer vertices covering five consecutive outer-rim
    vertices each, leaving three outer-rim vertices of degree 4 on one face.
    """
    if h < 0:
        raise GraphError("h must be non-negative")
    n_rim = 8 + 40 * h
    total = 2 * n_rim + (2 + 10 * h) + (1 + 8 * h)
    if total > size_bound:
        raise GraphError(f"instance on {total} vertices exceeds size bound {size_bound}")
    base = antiprism_graph(n_rim)  # inner 0..n_rim-1, outer n_rim..2n_rim-1
    edges = base.edges()
    inner_new = []
    for j in range(2 + 10 * h):
        u = 2 * n_rim + j
        inner_new.append(u)
        for t in range(4):
            edges.append((u, (4 * j + t) % n_rim))
    for j in range(0, 2 + 10 * h, 2):
        edges.append((inner_new[j], inner_new[j + 1]))
    outer_new = []
    for j in range(1 + 8 * h):
        w = 2 * n_rim + (2 + 10 * h) + j
        outer_new.append(w)
        for t in range(5):
            edges.append((w, n_rim + (5 * j + t) % n_rim))
    out = graph_from_edges(total, edges)
    cert = find_B_membership(out, 5, signature(1, 1, 1), bound=out.n)
    if cert is None or not check_B_star(out, 5):
        raise AssertionError("antiprism construction left the starred (1,1,1) class")
    return out, cert


# -- gluing constructions ------------------------------------------------


def _face_with_edges(cert_rotation: RotationSystem, g: Graph, edge_sets: list[frozenset[int]]) -> bool:
    from .embedding import trace_face_walks

    for walk in trace_face_walks(g, cert_rotation):
        L = len(walk)
        walk_edges = {frozenset((walk[i], walk[(i + 1) % L])) for i in range(L)}
        if all(e in walk_edges for e in edge_sets):
            return True
    return False


def glue_two_copies(
    g: Graph,
    cert: AClassCertificate,
    edge1: tuple[int, int],
    edge2: tuple[int, int],
    bound: Optional[int] = None,
) -> tuple[Graph, AClassCertificate]:
    """Join two copies of a member along colour-1 edges: delete edge1 in copy
    one and edge2 in copy two, then add the two cross edges.  The output is
    re-certified in the same class."""
    if not verify_A_certificate(g, cert):
        raise GraphError("invalid input certificate")
    col = cert.colouring
    for e in (edge1, edge2):
        if not g.has_edge(*e):
            raise GraphError(f"edge {e} not present")
        if col[e[0]] != 1 or col[e[1]] != 1:
            raise GraphError(f"edge {e} is not monochromatic in colour 1")
        if not _face_with_edges(cert.rotation, g, [frozenset(e)]):  # pragma: no cover - every edge is on a face
            raise GraphError(f"edge {e} lies on no face")
    n = g.n
    a1, a2 = edge1
    a3, a4 = edge2
    edges = [e for e in g.edges() if set(e) != set(edge1)]
    edges += [(u + n, v + n) for u, v in g.edges() if set((u, v)) != set(edge2)]
    edges += [(a1, a3 + n), (a2, a4 + n)]
    out = graph_from_edges(2 * n, edges)
    colouring = list(col) + list(col)
    new_cert = certify_A_with_colouring(out, cert.signature, colouring, bound=bound if bound is not None else out.n)
    if new_cert is None:
        raise AssertionError("glued graph failed re-certification")
    return out, new_cert


def glue_a211(
    g1: Graph,
    cert1: AClassCertificate,
    g2: Graph,
    cert2: AClassCertificate,
    edges1: tuple[tuple[int, int], tuple[int, int]],
    edges2: tuple[tuple[int, int], tuple[int, int]],
    bound: Optional[int] = None,
) -> tuple[Graph, AClassCertificate]:
    """Grow a (2,1,1) member from two members: in copy one delete a colour-2
    edge u2v2 and a colour-3 edge u3v3 lying on a common face, likewise w2x2
    and w3x3 in copy two, and add the four straight cross edges.  The result
    is re-certified; when both inputs are 3-connected the output is checked
    to be 3-connected as well."""
    for cert, g in ((cert1, g1), (cert2, g2)):
        if cert.signature.parts != (2, 1, 1):
            raise GraphError("gluing needs (2,1,1) certificates")
        if not verify_A_certificate(g, cert):
            raise GraphError("invalid input certificate")
    (u2, v2), (u3, v3) = edges1
    (w2, x2), (w3, x3) = edges2
    for (e_blue, e_green), cert, g in ((edges1, cert1, g1), (edges2, cert2, g2)):
        col = cert.colouring
        if not (g.has_edge(*e_blue) and g.has_edge(*e_green)):
            raise GraphError("named edges must be present")
        if {col[e_blue[0]], col[e_blue[1]]} != {2} or {col[e_green[0]], col[e_green[1]]} != {3}:
            raise GraphError("gluing edges must be colour-2 and colour-3 monochromatic")
        if not _face_with_edges(cert.rotation, g, [frozenset(e_blue), frozenset(e_green)]):
            raise GraphError("gluing edges must lie on a common face")
    n = g1.n
    edges = [e for e in g1.edges() if set(e) not in (set(edges1[0]), set(edges1[1]))]
    edges += [(u + n, v + n) for u, v in g2.edges() if set((u, v)) not in (set(edges2[0]), set(edges2[1]))]
    edges += [(u2, w2 + n), (v2, x2 + n), (u3, w3 + n), (v3, x3 + n)]
    out = graph_from_edges(n + g2.n, edges)
    colouring = list(cert1.colouring) + list(cert2.colouring)
    new_cert = certify_A_with_colouring(out, cert1.signature, colouring, bound=bound if bound is not None else out.n)
    if new_cert is None:
        raise AssertionError("glued (2,1,1) graph failed re-certification")
    if is_k_connected(g1, 3) and is_k_connected(g2, 3) and not is_k_connected(out, 3):
        raise AssertionError("gluing 3-connected members lost 3-connectivity")
    return out, new_cert


# -- (2,2) members from cycle data ---------------------------------------


@dataclass(frozen=True)
class A22Spec:
    """Construction data for a (2,2) member: disjoint black cycles of even
    length at least 6 with alternating colour-1/colour-2 vertices (even
    positions colour 1), plus same-colour cycles covering each colour class,
    with a per-vertex side flag saying both its same-colour edges attach on
    that side of its black cycle."""

    black_lengths: tuple[int, ...]
    red_cycles: tuple[tuple[int, ...], ...]
    blue_cycles: tuple[tuple[int, ...], ...]
    sides: dict  # vertex -> "in" | "out"


def a22_from_cycles(spec: A22Spec, bound: Optional[int] = None) -> tuple[Graph, AClassCertificate]:
    """Build and certify the member described by the cycle data."""
    offsets = []
    n = 0
    for length in spec.black_lengths:
        if length < 6:
            raise GraphError("each black cycle must have length at least 6")
        if length % 2:
            raise GraphError("black cycles alternate colours, so lengths must be even")
        offsets.append(n)
        n += length
    colour = [0] * n
    edges = []
    for off, length in zip(offsets, spec.black_lengths):
        for i in range(length):
            colour[off + i] = 1 if i % 2 == 0 else 2
            edges.append((off + i, off + (i + 1) % length))
    for want, cycles in ((1, spec.red_cycles), (2, spec.blue_cycles)):
        seen: set[int] = set()
        for cyc in cycles:
            if len(cyc) < 3:
                raise GraphError("colour cycles need length at least 3")
            for v in cyc:
                if not 0 <= v < n or colour[v] != want:
                    raise GraphError(f"vertex {v} is not of colour {want}")
                if v in seen:
                    raise GraphError(f"vertex {v} covered twice by colour-{want} cycles")
                seen.add(v)
            for i in range(len(cyc)):
                edges.append((cyc[i], cyc[(i + 1) % len(cyc)]))
        expected = {v for v in range(n) if colour[v] == want}
        if seen != expected:
            raise GraphError(f"colour-{want} cycles must cover every colour-{want} vertex")
    for v in range(n):
        if spec.sides.get(v) not in ("in", "out"):
            raise GraphError(f"vertex {v} needs a side flag 'in' or 'out'")
    out = graph_from_edges(n, edges)
    if any(out.degree(v) != 4 for v in range(n)):
        raise GraphError("side-flag/cycle data does not give two same-colour edges per vertex")
    cert = certify_A_with_colouring(out, signature(2, 2), colour, bound=bound if bound is not None else out.n)
    if cert is None:
        raise GraphError("cycle data does not admit a planar embedding with consecutive colour blocks")
    return out, cert


def antiprism_a22_spec(n: int) -> A22Spec:
    """One black 2n-cycle, the colour-1 cycle inside, the colour-2 cycle
    outside; the result is the n-gonal antiprism."""
    if 2 * n < 6:
        raise GraphError("need 2n >= 6")
    reds = tuple(range(0, 2 * n, 2))
    blues = tuple(range(1, 2 * n, 2))
    sides = {v: ("in" if v % 2 == 0 else "out") for v in range(2 * n)}
    return A22Spec((2 * n,), (reds,), (blues,), sides)


# -- small (2,1,1) members -----------------------------------------------


def a211_double_octagon() -> tuple[Graph, AClassCertificate]:
    """A 16-vertex member of the (2,1,1) class: two 8-cycles with colour
    pattern 1,2,1,3 around each, a colour-1 quadrilateral inside each, and
    two colour-2/colour-3 bands joining the cycles outside.

    Sixteen is the least conceivable order: each vertex has one colour-2 and
    one colour-3 neighbour, so colours 2 and 3 span cycles of length divisible
    by four, forcing n = 0 mod 8, and n = 8 dies on face-count arithmetic.
    """
    edges = []
    for off in (0, 8):
        edges += [(off + i, off + (i + 1) % 8) for i in range(8)]
        edges += [(off, off + 2), (off + 2, off + 4), (off + 4, off + 6), (off + 6, off)]
    edges += [(1, 9), (9, 11), (11, 3), (3, 1)]
    edges += [(5, 13), (13, 15), (15, 7), (7, 5)]
    g = graph_from_edges(16, edges)
    colour = [0] * 16
    for off in (0, 8):
        for i in range(8):
            colour[off + i] = {0: 1, 2: 1, 4: 1, 6: 1, 1: 2, 5: 2, 3: 3, 7: 3}[i]
    cert = certify_A_with_colouring(g, signature(2, 1, 1), colour, bound=g.n)
    if cert is None:  # pragma: no cover - construction is fixed
        raise AssertionError("double-octagon construction failed certification")
    return g, cert
