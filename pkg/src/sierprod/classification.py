"""Deciders for the regular/polyhedral product classifications.

Given factors and a map, the decomposition recovers the only possible class
data: the product degree r and signature are read off B's degree sequence,
B's deficient vertices are coloured (ties tried in all orders), the colours
are pulled back through the map, and both class memberships are certified.
The six-scenario and 24-case tables then reduce to membership plus the row's
connectivity and cut-condition qualifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from .bounds import SearchBoundExceeded
from .classes import (
    AClassCertificate,
    BClassCertificate,
    ClassSignature,
    b_expected_colours,
    certify_A_with_colouring,
    check_A_hash,
    check_B_star,
    find_B_membership,
)
from .connectivity import is_k_connected
from .embedding import PlaneGraph, is_polyhedron, test_planarity, trace_face_walks
from .graphs import Graph, GraphError, VertexMap, is_locally_injective

# (r, signature parts) -> case number for r-regular connected planar products
TABLE2_CASES = {
    (2, (1, 1)): 1,
    (3, (1,)): 2,
    (3, (1, 1)): 3,
    (3, (2,)): 4,
    (3, (1, 1, 1)): 5,
    (3, (2, 1)): 6,
    (3, (2, 1, 1)): 7,
    (3, (2, 2)): 8,
    (4, (1, 1)): 9,
    (4, (2,)): 10,
    (4, (2, 1, 1)): 11,
    (4, (2, 2)): 12,
    (4, (3, 1)): 13,
    (5, (1,)): 14,
    (5, (1, 1)): 15,
    (5, (2,)): 16,
    (5, (1, 1, 1)): 17,
    (5, (2, 1)): 18,
    (5, (3,)): 19,
    (5, (2, 1, 1)): 20,
    (5, (2, 2)): 21,
    (5, (3, 1)): 22,
    (5, (4,)): 23,
    (5, (4, 1)): 24,
}

# scenario table for r-regular polyhedral products:
# (r, signature parts) -> (scenario, A-connectivity needed, hash subclass?, star condition?)
SCENARIO_ROWS = {
    (3, (2, 2)): (1, 3, False, False),
    (3, (1, 1, 1)): (2, 3, False, True),
    (3, (2, 1, 1)): (3, 2, True, True),
    (4, (2, 1, 1)): (4, 2, True, True),
    (5, (1, 1, 1)): (5, 3, False, True),
    (5, (2, 1, 1)): (6, 2, True, True),
}


@dataclass(frozen=True)
class Decomposition:
    found: bool
    indeterminate: bool = False
    r: Optional[int] = None
    sig: Optional[ClassSignature] = None
    cert_a: Optional[AClassCertificate] = None
    cert_b: Optional[BClassCertificate] = None


def decompose_regular_planar(a: Graph, b: Graph, f: VertexMap, bound: Optional[int] = None) -> Decomposition:
    """Class decomposition of (A, B, f), present exactly when the product is
    regular, connected, and planar."""
    if a.n < 2 or b.n < 2:
        raise GraphError("factors must be non-trivial")
    if f.domain_size != a.n or f.codomain_size != b.n:
        raise GraphError("map shape does not match the factors")
    degs_b = [b.degree(v) for v in range(b.n)]
    indeterminate = False
    for r in (2, 3, 4, 5):
        if any(d > r for d in degs_b):
            continue
        deficient = [v for v in range(b.n) if degs_b[v] < r]
        if not deficient:
            continue
        parts = tuple(sorted((r - degs_b[v] for v in deficient), reverse=True))
        try:
            sig = ClassSignature(parts)
        except GraphError:
            continue
        if any(a.degree(v) != sig.total for v in range(a.n)):
            continue
        base = b_expected_colours(b, r, sig)
        if base is None:
            continue
        try:
            cert_b = find_B_membership(b, r, sig, bound=bound, colours=base)
        except SearchBoundExceeded:
            indeterminate = True
            continue
        if cert_b is None:
            continue
        for assign in _tie_assignments(base, sig):
            image_colour = {v: c for c, v in assign.items()}
            if any(x not in image_colour for x in f.image):
                continue
            colouring = [image_colour[f.image[v]] for v in range(a.n)]
            try:
                cert_a = certify_A_with_colouring(a, sig, colouring, bound=bound)
            except SearchBoundExceeded:
                indeterminate = True
                continue
            if cert_a is not None:
                cert_b_perm = BClassCertificate(r, sig, dict(assign), cert_b.rotation, cert_b.face_index)
                return Decomposition(True, False, r, sig, cert_a, cert_b_perm)
    return Decomposition(False, indeterminate)


def _tie_assignments(base: dict[int, int], sig: ClassSignature):
    """All colour->vertex assignments obtained by permuting tied colours."""
    groups: dict[int, list[int]] = {}
    for i, ni in enumerate(sig.parts, start=1):
        groups.setdefault(ni, []).append(i)
    group_lists = list(groups.values())

    def rec(gi: int, current: dict[int, int]):
        if gi == len(group_lists):
            yield dict(current)
            return
        cols = group_lists[gi]
        verts = [base[c] for c in cols]
        for perm in permutations(verts):
            for c, v in zip(cols, perm):
                current[c] = v
            yield from rec(gi + 1, current)

    yield from rec(0, {})


@dataclass(frozen=True)
class ScenarioVerdict:
    scenario: Optional[int]
    r: Optional[int] = None
    indeterminate: bool = False
    decomposition: Optional[Decomposition] = None
    checks: dict = field(compare=False, default_factory=dict)


def scenario_of(a: Graph, b: Graph, f: VertexMap, bound: Optional[int] = None) -> ScenarioVerdict:
    """Which of the six regular-polyhedron scenarios (if any) the triple is in.

    A scenario is assigned exactly when the decomposition exists, its (r, sig)
    row appears in the scenario table, and the row's qualifiers hold: required
    A-connectivity, the 2-cut hash refinement where demanded, and the starred
    cut condition on B where demanded.
    """
    dec = decompose_regular_planar(a, b, f, bound=bound)
    if not dec.found:
        return ScenarioVerdict(None, indeterminate=dec.indeterminate, decomposition=dec)
    row = SCENARIO_ROWS.get((dec.r, dec.sig.parts))
    if row is None:
        return ScenarioVerdict(None, r=dec.r, decomposition=dec, checks={"row": False})
    scenario, conn_needed, need_hash, need_star = row
    checks = {"row": True}
    checks["a_connectivity"] = is_k_connected(a, conn_needed)
    checks["hash"] = check_A_hash(a, dec.cert_a) if need_hash else True
    checks["star"] = check_B_star(b, dec.r) if need_star else True
    if all(checks.values()):
        return ScenarioVerdict(scenario, r=dec.r, decomposition=dec, checks=checks)
    return ScenarioVerdict(None, r=dec.r, decomposition=dec, checks=checks)


@dataclass(frozen=True)
class Table2Verdict:
    case: Optional[int]
    r: Optional[int] = None
    sig: Optional[ClassSignature] = None
    indeterminate: bool = False
    decomposition: Optional[Decomposition] = None


def table2_case(a: Graph, b: Graph, f: VertexMap, bound: Optional[int] = None) -> Table2Verdict:
    """The regular-connected-planar case number of the triple, if any."""
    dec = decompose_regular_planar(a, b, f, bound=bound)
    if not dec.found:
        return Table2Verdict(None, indeterminate=dec.indeterminate, decomposition=dec)
    case = TABLE2_CASES.get((dec.r, dec.sig.parts))
    if case is None:  # pragma: no cover - a decomposition realizes its own row
        raise GraphError(f"decomposition (r={dec.r}, sig={dec.sig}) missing from the case table")
    return Table2Verdict(case, r=dec.r, sig=dec.sig, decomposition=dec)


# -- polyhedral products of polyhedra ------------------------------------


@dataclass(frozen=True)
class FaceOrderWitness:
    vertex: int
    face_index: int
    face: tuple[int, ...]
    image_order: tuple[int, ...]
    positions: tuple[int, ...]
    distinct: int

    @property
    def distinct_at_least_3(self) -> bool:
        return self.distinct >= 3


def _cyclic_matches(target: tuple[int, ...], along_face: tuple[int, ...]) -> bool:
    """Is the face-induced order a rotation of the target or of its mirror?"""
    k = len(target)
    if len(along_face) != k:
        return False
    for cand in (along_face, along_face[::-1]):
        for s in range(k):
            if tuple(cand[(s + i) % k] for i in range(k)) == target:
                return True
    return False


def check_siepol(a: Graph, b: Graph, f: VertexMap, bound: Optional[int] = None) -> Optional[list[FaceOrderWitness]]:
    """Per-vertex face witnesses for polyhedrality of the product of two
    polyhedra under a locally injective map, or None when some vertex of A
    has no matching face.

    A witness for a is a face of B containing the images of a's neighbours in
    the cyclic order of the neighbours around a (either direction), at least
    three of them distinct; with f locally injective the images of a vertex's
    neighbours are automatically pairwise distinct.
    """
    if not is_polyhedron(a):
        raise GraphError("hypothesis violated: A is not a polyhedron")
    if not is_polyhedron(b):
        raise GraphError("hypothesis violated: B is not a polyhedron")
    if not is_locally_injective(f, a):
        raise GraphError("hypothesis violated: f is not locally injective")
    rot_a = test_planarity(a).embedding
    rot_b = test_planarity(b).embedding
    faces_b = trace_face_walks(b, rot_b)
    witnesses = []
    for v in range(a.n):
        images = tuple(f.image[u] for u in rot_a.rotation[v])
        image_set = set(images)
        if len(image_set) != len(images):  # pragma: no cover - excluded by local injectivity
            raise AssertionError("locally injective map repeated an image around a vertex")
        found = None
        for idx, walk in enumerate(faces_b):
            if not image_set <= set(walk):
                continue
            sel = tuple(w for w in walk if w in image_set)
            if len(sel) != len(images):
                continue  # face walk revisits an image: not a witness
            if _cyclic_matches(images, sel):
                positions = tuple(i for i, w in enumerate(walk) if w in image_set)
                found = FaceOrderWitness(v, idx, tuple(walk), images, positions, len(image_set))
                break
        if found is None or found.distinct < 3:
            return None
        witnesses.append(found)
    return witnesses


# -- pyramid-compatible cyclic orders (high-degree proximity forest) -----


@dataclass(frozen=True)
class CompatibleOrderResult:
    order: Optional[tuple[int, ...]]
    reason: Optional[str] = None
    exhaustive: bool = False


def high_degree_proximity_graph(a: Graph) -> Graph:
    """Vertices of degree >= 4, joined when their distance in A is at most 2."""
    from .graphs import distance, graph_from_edges

    hi = [v for v in range(a.n) if a.degree(v) >= 4]
    pos = {v: i for i, v in enumerate(hi)}
    edges = []
    for i, u in enumerate(hi):
        for v in hi[i + 1 :]:
            d = distance(a, u, v)
            if d != -1 and d <= 2:
                edges.append((pos[u], pos[v]))
    return graph_from_edges(len(hi), edges)


def _order_respects_rotations(a: Graph, rot, order: tuple[int, ...]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in range(a.n):
        if a.degree(v) <= 3:
            continue  # any three or fewer points match any cyclic order
        nbrs = rot.rotation[v]
        along = tuple(sorted(nbrs, key=lambda u: pos[u]))
        if not _cyclic_matches(nbrs, along):
            return False
    return True


def _merge_cycle_into(current: list[int], cyc: tuple[int, ...]) -> Optional[list[int]]:
    """Merge a cyclic list into a linear one, keeping the linear order and
    realizing the cyclic order; common elements anchor the interleaving."""
    pos = {v: i for i, v in enumerate(current)}
    commons_set = [v for v in cyc if v in pos]
    if not commons_set:
        return current + list(cyc)
    k = len(cyc)
    for direction in (1, -1):
        seq = cyc if direction == 1 else tuple(reversed(cyc))
        for s in range(k):
            rotated = tuple(seq[(s + i) % k] for i in range(k))
            commons = [v for v in rotated if v in pos]
            if [pos[v] for v in commons] != sorted(pos[v] for v in commons):
                continue
            # split rotated into runs ending at each common element
            out = []
            ci = 0
            run: list[int] = []
            runs: list[tuple[list[int], int]] = []
            for v in rotated:
                if v in pos:
                    runs.append((run, v))
                    run = []
                else:
                    run.append(v)
            tail = run
            ptr = 0
            for new_run, common in runs:
                target = pos[common]
                out.extend(current[ptr:target])
                out.extend(new_run)
                out.append(common)
                ptr = target + 1
            out.extend(current[ptr:])
            out.extend(tail)
            return out
    return None


def compatible_boundary_order(a: Graph, fallback_bound: int = 8) -> CompatibleOrderResult:
    """A cyclic order of V(A) in which every vertex's neighbours appear in
    their rotation order, enabling an injection onto a pyramid base.

    Computed by merging the rotation lists of the high-degree vertices tree
    by tree over the proximity forest; for small graphs an exhaustive search
    over cyclic orders is the fallback (and settles non-forest cases)."""
    if not is_polyhedron(a):
        raise GraphError("compatible boundary orders are built for polyhedra")
    rot = test_planarity(a).embedding
    prox = high_degree_proximity_graph(a)
    hi = [v for v in range(a.n) if a.degree(v) >= 4]
    forest = _is_forest(prox)
    if forest:
        merged = _merge_forest_lists(a, rot, prox, hi)
        if merged is not None and _order_respects_rotations(a, rot, tuple(merged)):
            return CompatibleOrderResult(tuple(merged))
    if a.n <= fallback_bound:
        order = _exhaustive_order_search(a, rot)
        if order is not None:
            return CompatibleOrderResult(order, exhaustive=True)
        return CompatibleOrderResult(None, reason="exhausted all cyclic orders", exhaustive=True)
    if not forest:
        return CompatibleOrderResult(None, reason="high-degree proximity graph is not a forest")
    return CompatibleOrderResult(None, reason="list merging failed and the graph exceeds the exhaustive bound")


def _is_forest(g: Graph) -> bool:
    from .graphs import connected_components

    comps = connected_components(g)
    comp_of = {}
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    edge_count = [0] * len(comps)
    for u, v in g.edges():
        edge_count[comp_of[u]] += 1
    return all(edge_count[i] == len(comps[i]) - 1 for i in range(len(comps)))


def _merge_forest_lists(a: Graph, rot, prox: Graph, hi: list[int]) -> Optional[list[int]]:
    from .graphs import connected_components

    comps = connected_components(prox)
    final: list[int] = []
    used: set[int] = set()
    for comp in comps:
        tree = [hi[i] for i in comp]
        order = _tree_bfs_order(prox, comp)
        current: list[int] = list(rot.rotation[hi[order[0]]])
        for idx in order[1:]:
            v = hi[idx]
            merged = _merge_cycle_into(current, rot.rotation[v])
            if merged is None:
                return None
            current = merged
        if used & set(current):
            return None  # pragma: no cover - tree neighbourhoods are disjoint
        used |= set(current)
        final.extend(current)
    for v in range(a.n):
        if v not in used:
            final.append(v)
    return final


def _tree_bfs_order(prox: Graph, comp: list[int]) -> list[int]:
    start = comp[0]
    seen = {start}
    order = [start]
    queue = [start]
    while queue:
        x = queue.pop(0)
        for y in prox.adj[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _exhaustive_order_search(a: Graph, rot) -> Optional[tuple[int, ...]]:
    from itertools import permutations as perms

    rest = list(range(1, a.n))
    for p in perms(rest):
        if len(p) > 1 and p[0] > p[-1]:
            continue  # skip mirror images
        order = (0,) + p
        if _order_respects_rotations(a, rot, order):
            return order
    return None


# -- the two special families -------------------------------------------


@dataclass(frozen=True)
class K4BReport:
    result: bool
    injective: bool
    planar_2connected: bool
    two_cut_condition: bool
    face_condition: bool


def check_K4B(b: Graph, f: VertexMap, bound: Optional[int] = None) -> K4BReport:
    """Structural test for the product of the 4-clique with B being a
    polyhedron: f injective, B planar and 2-connected, every 2-cut leaving
    exactly two components with exactly two images each, and some embedding
    putting all four images on one face."""
    from itertools import combinations

    from .classes import _components_after_removal, _embeddings_for_search
    from .embedding import is_planar
    from .oracles import removal_disconnects

    if f.domain_size != 4 or f.codomain_size != b.n:
        raise GraphError("map must send 4 points into B")
    if b.n == 4 and b.m == 6:
        raise GraphError("B = K4 is outside the hypothesis of this test")
    images = list(f.image)
    injective = len(set(images)) == 4
    planar_2conn = is_planar(b) and is_k_connected(b, 2)
    two_cut_ok = True
    if injective and planar_2conn:
        img_set = set(images)
        for pair in combinations(range(b.n), 2):
            if not removal_disconnects(b, pair):
                continue
            comps = _components_after_removal(b, pair)
            if len(comps) != 2 or any(len(img_set & c) != 2 for c in comps):
                two_cut_ok = False
                break
    else:
        two_cut_ok = False
    face_ok = False
    if injective and planar_2conn:
        img_set = set(images)
        for rs in _embeddings_for_search(b, bound if bound is not None else b.n):
            if any(img_set <= set(w) for w in trace_face_walks(b, rs)):
                face_ok = True
                break
    return K4BReport(injective and planar_2conn and two_cut_ok and face_ok, injective, planar_2conn, two_cut_ok, face_ok)


def check_rb(a: Graph) -> Optional[tuple[int, ...]]:
    """A two-colouring of a polyhedron with min degree 4 in which every
    vertex has at least two neighbours of each colour, consecutively around
    it; None when no such assignment (or no polyhedron) exists.  Existence is
    equivalent to a map into the 2-vertex factor with polyhedral product."""
    if not is_polyhedron(a) or min(a.degree(v) for v in range(a.n)) < 4:
        return None
    rot = test_planarity(a).embedding
    n = a.n
    colour = [0] * n
    cnt = [[0, 0, 0] for _ in range(n)]  # counts of colours 1,2 among assigned nbrs
    unassigned = [a.degree(v) for v in range(n)]

    def vertex_ok(u: int) -> bool:
        if cnt[u][1] < 2 or cnt[u][2] < 2:
            return False
        cols = [colour[x] for x in rot.rotation[u]]
        changes = sum(1 for i in range(len(cols)) if cols[i] != cols[(i + 1) % len(cols)])
        return changes == 2

    order = list(range(n))

    def rec(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        for c in (1, 2) if v else (1,):  # fix the first vertex's colour
            colour[v] = c
            ok = True
            for u in a.adj[v]:
                cnt[u][c] += 1
                unassigned[u] -= 1
                if cnt[u][c] > a.degree(u) - 2:
                    ok = False
                if unassigned[u] == 0 and not vertex_ok(u):
                    ok = False
            if ok and rec(idx + 1):
                return True
            for u in a.adj[v]:
                cnt[u][c] -= 1
                unassigned[u] += 1
            colour[v] = 0
        return False

    if rec(0):
        return tuple(colour)
    return None


def rb_map_from_colouring(colouring: tuple[int, ...]) -> VertexMap:
    """The map into the 2-vertex factor induced by a red/blue assignment."""
    return VertexMap(len(colouring), 2, [c - 1 for c in colouring])
