"""Vertex connectivity, cut-set enumeration, and the separating-vertex and
minimal-cut structure of Sierpinski products.

The separating-vertex characterization decides, for a product vertex (a,b),
which of three conditions holds: (i) a separates A and the components of A-a
can be partitioned so that b blocks every path in B between the images of
cross-part neighbours of a; (ii) b separates B with a component of B-b that
no neighbour of a maps into; (iii) every neighbour of a maps onto b.
Condition (i) is decided by merging components of A-a that are forced into
the same part and checking whether at least two classes survive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graphs import Graph, GraphError, VertexMap, connected_components, is_connected
from .products import index_pair, sierpinski_product


# -- vertex connectivity by vertex-disjoint path maximization -----------


def _max_vertex_disjoint_paths(g: Graph, s: int, t: int, cap: Optional[int] = None) -> int:
    """Maximum number of internally disjoint s-t paths (s,t non-adjacent),
    by unit-capacity augmentation on the vertex-split digraph."""
    n = g.n
    # node 2v = v_in, 2v+1 = v_out; residual successor sets
    succ: list[set[int]] = [set() for _ in range(2 * n)]
    for v in range(n):
        succ[2 * v].add(2 * v + 1)
    for u in range(n):
        for v in g.adj[u]:
            succ[2 * u + 1].add(2 * v)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while cap is None or flow < cap:
        prev = {source: None}
        queue = [source]
        found = False
        while queue and not found:
            nxt = []
            for x in queue:
                for y in succ[x]:
                    if y not in prev:
                        prev[y] = x
                        if y == sink:
                            found = True
                            break
                        nxt.append(y)
                if found:
                    break
            queue = nxt
        if not found:
            break
        y = sink
        while prev[y] is not None:
            x = prev[y]
            succ[x].discard(y)
            succ[y].add(x)
            y = x
        flow += 1
    return flow


def vertex_connectivity(g: Graph, cap: Optional[int] = None) -> int:
    """Connectivity via max vertex-disjoint paths (Even's reduction).

    With s0 a minimum-degree vertex, every minimum cut either avoids s0 (then
    it separates s0 from some non-neighbour) or contains it (then it separates
    two non-adjacent neighbours of s0), so those pairs suffice.
    """
    n = g.n
    if n < 2:
        raise GraphError("connectivity needs at least 2 vertices")
    if not is_connected(g):
        return 0
    if g.m == n * (n - 1) // 2:
        return n - 1
    s0 = min(range(n), key=g.degree)
    best = n - 1
    closed = set(g.adj[s0]) | {s0}
    for t in range(n):
        if t not in closed:
            best = min(best, _max_vertex_disjoint_paths(g, s0, t, cap=min(best, cap) if cap else best))
            if cap is not None and best < cap:
                return best
    for u, v in combinations(g.adj[s0], 2):
        if not g.has_edge(u, v):
            best = min(best, _max_vertex_disjoint_paths(g, u, v, cap=min(best, cap) if cap else best))
            if cap is not None and best < cap:
                return best
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    """More than k vertices and no cut-set of size below k."""
    if k == 0:
        return g.n > 0
    if g.n <= k:
        return False
    return vertex_connectivity(g, cap=k) >= k


def enumerate_min_cuts(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All minimal cut-sets of size at most k, by (size, lex) order.

    Minimality means no proper subset is itself a cut-set; since subsets are
    visited in increasing size, it suffices to skip supersets of found cuts.
    """
    from .oracles import removal_disconnects

    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset[int]] = []
    for size in range(1, k + 1):
        for sub in combinations(range(g.n), size):
            sset = frozenset(sub)
            if any(fs <= sset for fs in found_sets):
                continue
            if removal_disconnects(g, sub):
                found.append(sub)
                found_sets.append(sset)
    return found


def is_cut_set(g: Graph, vertices) -> bool:
    from .oracles import removal_disconnects

    return removal_disconnects(g, vertices)


# -- Theorem-level operations -------------------------------------------

COND_I = "cond_i"
COND_II = "cond_ii"
COND_III = "cond_iii"
NOT_SEPARATING = "not_separating"


@dataclass(frozen=True)
class SeparationCertificate:
    kind: str
    partition: Optional[tuple[tuple[int, ...], ...]] = None  # parts of V(A-a)
    component_j: Optional[tuple[int, ...]] = None  # component of B-b
    details: dict = field(default_factory=dict, compare=False)

    @property
    def separating(self) -> bool:
        return self.kind != NOT_SEPARATING


def _blocked_by_b(fb_h: int, fb_h2: int, b: int, comp_of_b: dict[int, int]) -> bool:
    """Does b lie on every path between the two image vertices in B?

    Paths whose endpoint already equals b are treated as containing b (the
    vacuous reading), so the pair only escapes when both images avoid b and
    share a component of B-b.
    """
    if fb_h == b or fb_h2 == b:
        return True
    return comp_of_b[fb_h] != comp_of_b[fb_h2]


def separating_vertex_characterization(a_graph: Graph, b_graph: Graph, f: VertexMap, a: int, b: int) -> SeparationCertificate:
    """Decide whether (a,b) separates the product and return the witness."""
    if a_graph.n < 2 or b_graph.n < 2:
        raise GraphError("factors must be non-trivial")
    if not is_connected(a_graph) or not is_connected(b_graph):
        raise GraphError("factors must be connected")
    if f.domain_size != a_graph.n or f.codomain_size != b_graph.n:
        raise GraphError("map shape does not match the factors")
    if not (0 <= a < a_graph.n and 0 <= b < b_graph.n):
        raise GraphError("query vertex out of range")

    nbrs = a_graph.adj[a]
    images = [f.image[x] for x in nbrs]

    # condition (i): merge components of A-a forced into one part
    comps_a = connected_components_excluding(a_graph, a)
    if len(comps_a) >= 2:
        comps_b = connected_components_excluding(b_graph, b)
        comp_of_b = {}
        for i, comp in enumerate(comps_b):
            for v in comp:
                comp_of_b[v] = i
        comp_idx = {}
        for i, comp in enumerate(comps_a):
            for v in comp:
                comp_idx[v] = i
        parent = list(range(len(comps_a)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        nbr_by_comp: dict[int, list[int]] = {}
        for h in nbrs:
            nbr_by_comp.setdefault(comp_idx[h], []).append(h)
        for ci, cj in combinations(sorted(nbr_by_comp), 2):
            merged = False
            for h in nbr_by_comp[ci]:
                for h2 in nbr_by_comp[cj]:
                    if not _blocked_by_b(f.image[h], f.image[h2], b, comp_of_b):
                        parent[find(cj)] = find(ci)
                        merged = True
                        break
                if merged:
                    break
        classes: dict[int, list[int]] = {}
        for i, comp in enumerate(comps_a):
            classes.setdefault(find(i), []).extend(comp)
        if len(classes) >= 2:
            parts = tuple(tuple(sorted(vs)) for vs in sorted(classes.values(), key=min))
            return SeparationCertificate(COND_I, partition=parts, details={"a": a, "b": b})

    # condition (ii): a component of B-b missed by every neighbour image
    comps_b = connected_components_excluding(b_graph, b)
    if len(comps_b) >= 2:
        img = set(images)
        for comp in comps_b:  # smallest-first, deterministic
            if not img & set(comp):
                return SeparationCertificate(COND_II, component_j=tuple(comp), details={"a": a, "b": b, "images": sorted(img)})

    # condition (iii): every neighbour of a maps onto b
    if nbrs and all(x == b for x in images):
        return SeparationCertificate(COND_III, details={"a": a, "b": b, "neighbours": list(nbrs)})

    return SeparationCertificate(NOT_SEPARATING)


def connected_components_excluding(g: Graph, v: int) -> list[list[int]]:
    """Components of g - v, each sorted, ordered by smallest member."""
    seen = [False] * g.n
    seen[v] = True
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def kc_hypotheses(a_graph: Graph, b_graph: Graph, f: VertexMap, k: int) -> bool:
    """Sufficient condition for k-connectivity of the product: both factors
    k-connected and every vertex of A sees at least k distinct images among
    its neighbours."""
    if k < 1:
        raise GraphError("k must be at least 1")
    if f.domain_size != a_graph.n or f.codomain_size != b_graph.n:
        raise GraphError("map shape does not match the factors")
    if not (is_k_connected(a_graph, k) and is_k_connected(b_graph, k)):
        return False
    for a in range(a_graph.n):
        if len({f.image[x] for x in a_graph.adj[a]}) < k:
            return False
    return True


FIRST_COORD_CUT = "first_coord_cut"
SECOND_COORD_CUT = "second_coord_cut"
IMAGE_CONFINED = "image_confined"


@dataclass(frozen=True)
class MinCutClass:
    kind: str
    witness: dict = field(compare=False, default_factory=dict)


def classify_minimal_cut(a_graph: Graph, b_graph: Graph, f: VertexMap, cut: list[int]) -> MinCutClass:
    """Place a verified minimal cut of the product into one of the three
    structural alternatives (checked in this order): the first coordinates
    form a cut-set of A; all first coordinates agree and the second
    coordinates form a cut-set of B; or all first coordinates agree on a
    vertex whose every neighbour image lies among the second coordinates."""
    from .oracles import removal_disconnects

    product = sierpinski_product(a_graph, b_graph, f)
    cut = sorted(set(cut))
    if not removal_disconnects(product, cut):
        raise GraphError("given set is not a cut of the product")
    for v in cut:
        rest = [x for x in cut if x != v]
        if rest and removal_disconnects(product, rest):
            raise GraphError("given cut is not minimal")
    pairs = [index_pair(idx, b_graph.n) for idx in cut]
    firsts = sorted({p[0] for p in pairs})
    seconds = sorted({p[1] for p in pairs})
    if removal_disconnects(a_graph, firsts):
        return MinCutClass(FIRST_COORD_CUT, {"a_cut": firsts})
    if len(firsts) == 1:
        a = firsts[0]
        if removal_disconnects(b_graph, seconds):
            return MinCutClass(SECOND_COORD_CUT, {"a": a, "b_cut": seconds})
        if all(f.image[x] in set(seconds) for x in a_graph.adj[a]):
            return MinCutClass(IMAGE_CONFINED, {"a": a, "images": sorted({f.image[x] for x in a_graph.adj[a]})})
    raise GraphError("minimal cut fits none of the three alternatives")


@dataclass(frozen=True)
class ImageSizeReport:
    image_size: int
    b_is_k2: bool
    required: int
    passes: bool


def image_size_bound(a_graph: Graph, b_graph: Graph, f: VertexMap) -> ImageSizeReport:
    """Necessary condition for a 3-connected product: |im f| >= 2 always, and
    |im f| >= 3 unless B = K2.  A cheap filter to run before full checks."""
    size = len(set(f.image))
    b_is_k2 = b_graph.n == 2 and b_graph.m == 1
    required = 2 if b_is_k2 else 3
    return ImageSizeReport(size, b_is_k2, required, size >= required)
