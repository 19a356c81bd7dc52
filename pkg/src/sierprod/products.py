"""Lexicographic and Sierpinski products, path lifting, planar lex verdicts.

Product vertices (a, b) are encoded as the index a*|V(B)| + b, so copy aB
occupies a contiguous index block.  E(A o B) joins (a1,b1)(a2,b2) when a1=a2
and b1b2 in E(B), or a1a2 in E(A); the Sierpinski product keeps the copies
but replaces the join by the single connecting edge (a1,f(a2))(a2,f(a1)) per
edge a1a2 of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .embedding import is_planar
from .graphs import (
    Graph,
    GraphError,
    VertexMap,
    connected_components,
    distance,
    graph_from_edges,
    identity_map,
)


def pair_index(a: int, b: int, nb: int) -> int:
    return a * nb + b


def index_pair(idx: int, nb: int) -> tuple[int, int]:
    return divmod(idx, nb)


def lex_product(a: Graph, b: Graph) -> Graph:
    """A o B on |V(A)|*|V(B)| vertices."""
    if a.n == 0 or b.n == 0:
        raise GraphError("lexicographic product needs non-empty vertex sets")
    nb = b.n
    edges = []
    for v in range(a.n):
        for x, y in b.edges():
            edges.append((pair_index(v, x, nb), pair_index(v, y, nb)))
    for u, v in a.edges():
        for x in range(nb):
            for y in range(nb):
                edges.append((pair_index(u, x, nb), pair_index(v, y, nb)))
    return graph_from_edges(a.n * nb, edges)


@dataclass(frozen=True)
class SierpinskiResult:
    graph: Graph
    duplicate_edges: tuple[tuple[int, int], ...]  # connecting edges that merged


def sierpinski_product_report(a: Graph, b: Graph, f: VertexMap) -> SierpinskiResult:
    """A (x)_f B together with a report of merged connecting edges.

    By the definition the connecting edge for a1a2 joins distinct copies, so
    the report is expected to stay empty; the merge path exists defensively.
    """
    if f.domain_size != a.n or f.codomain_size != b.n:
        raise GraphError("map shape does not match the factors")
    nb = b.n
    seen = set()
    edges = []
    for v in range(a.n):
        for x, y in b.edges():
            e = (pair_index(v, x, nb), pair_index(v, y, nb))
            seen.add(e)
            edges.append(e)
    dups = []
    for u, v in a.edges():
        p, q = pair_index(u, f.image[v], nb), pair_index(v, f.image[u], nb)
        e = (min(p, q), max(p, q))
        if e in seen:
            dups.append(e)
        else:
            seen.add(e)
            edges.append(e)
    return SierpinskiResult(graph_from_edges(a.n * nb, edges), tuple(sorted(dups)))


def sierpinski_product(a: Graph, b: Graph, f: VertexMap) -> Graph:
    return sierpinski_product_report(a, b, f).graph


def sierpinski_identity_product(a: Graph, b: Graph) -> Graph:
    """The A (x) B shorthand: V(A) is a subset of V(B), f the identity."""
    if a.n > b.n:
        raise GraphError("A (x) B shorthand needs |V(A)| <= |V(B)|")
    return sierpinski_product(a, b, identity_map(a.n, b.n))


def _shortest_path(g: Graph, u: int, v: int) -> list[int]:
    if u == v:
        return [u]
    prev = {u: None}
    frontier = [u]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.adj[x]:
                if y not in prev:
                    prev[y] = x
                    if y == v:
                        path = [v]
                        while prev[path[-1]] is not None:
                            path.append(prev[path[-1]])
                        return path[::-1]
                    nxt.append(y)
        frontier = nxt
    raise GraphError(f"no {u}-{v} path: factor not connected")


def lift_path(a: Graph, b: Graph, f: VertexMap, path_a: list[int], b_start: int, b_end: int) -> list[int]:
    """Lift a path of A to a path of the product whose first entries stay on it.

    Follows the splicing construction: inside each copy u_l B walk a shortest
    path from (u_l, f(u_{l-1})) to (u_l, f(u_{l+1})), and cross between copies
    along the connecting edges.  The result visits each copy once, so it is a
    simple path from (path_a[0], b_start) to (path_a[-1], b_end); repeated
    vertices, if any ever arose, would be cut out defensively.
    """
    if not path_a:
        raise GraphError("empty path in A")
    for i in range(len(path_a) - 1):
        if not a.has_edge(path_a[i], path_a[i + 1]):
            raise GraphError(f"path_a step {path_a[i]}-{path_a[i + 1]} is not an edge of A")
    if len(set(path_a)) != len(path_a):
        raise GraphError("path_a repeats a vertex")
    if len(connected_components(b)) != 1:
        raise GraphError("B must be connected to lift paths")
    nb = b.n
    m = len(path_a) - 1
    walk: list[int] = []
    if m == 0:
        u = path_a[0]
        return [pair_index(u, x, nb) for x in _shortest_path(b, b_start, b_end)]
    for i, u in enumerate(path_a):
        start = b_start if i == 0 else f.image[path_a[i - 1]]
        end = b_end if i == m else f.image[path_a[i + 1]]
        walk.extend(pair_index(u, x, nb) for x in _shortest_path(b, start, end))
    seen: dict[int, int] = {}
    out: list[int] = []
    for v in walk:
        if v in seen:  # cut the loop back to the first occurrence
            del out[seen[v] + 1 :]
            seen = {x: i for i, x in enumerate(out)}
        else:
            seen[v] = len(out)
            out.append(v)
    return out


# -- planar lexicographic classification --------------------------------

LEX_OUT_OF_SCOPE = "out_of_scope"
LEX_PLANAR_TREE = "planar_tree_case"
LEX_PLANAR_TRIANGLE = "planar_triangle_case"
LEX_NONPLANAR = "nonplanar"


@dataclass(frozen=True)
class LexVerdict:
    outcome: str
    polyhedral: bool


def _is_triangle(g: Graph, comp: list[int]) -> bool:
    return len(comp) == 3 and all(g.has_edge(u, v) for u in comp for v in comp if u < v)


def _component_is_tree(g: Graph, comp: list[int]) -> bool:
    m = sum(1 for u in comp for v in g.adj[u] if v > u and v in set(comp))
    return m == len(comp) - 1


def classify_lex_planarity(a: Graph, b: Graph) -> LexVerdict:
    """Planarity of A o B by the structural criterion.

    In scope when B is non-trivial and A has at least one edge; then the
    product is planar iff B is the edgeless pair with every component of A a
    triangle or a tree, or B = K2 with every component of A a tree.  The only
    polyhedral products are K2 o K2 (the tetrahedron) and K3 o K2-bar (the
    octahedron).
    """
    if b.n < 2 or a.m == 0 or a.n == 0:
        return LexVerdict(LEX_OUT_OF_SCOPE, False)
    comps = connected_components(a)
    trees = all(_component_is_tree(a, c) for c in comps)
    tri_or_tree = all(_component_is_tree(a, c) or _is_triangle(a, c) for c in comps)
    some_triangle = any(_is_triangle(a, c) for c in comps)
    if b.n == 2 and b.m == 0 and tri_or_tree:
        outcome = LEX_PLANAR_TRIANGLE if some_triangle else LEX_PLANAR_TREE
    elif b.n == 2 and b.m == 1 and trees:
        outcome = LEX_PLANAR_TREE
    else:
        outcome = LEX_NONPLANAR
    a_is_k2 = a.n == 2 and a.m == 1
    a_is_k3 = a.n == 3 and a.m == 3
    poly = (a_is_k2 and b.n == 2 and b.m == 1) or (a_is_k3 and b.n == 2 and b.m == 0)
    return LexVerdict(outcome, poly)


def lex_planarity_direct(a: Graph, b: Graph) -> bool:
    return is_planar(lex_product(a, b))
