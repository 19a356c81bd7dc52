"""Independent brute-force reference implementations.

Everything here is deliberately naive and shares no code with the fast
paths it validates: connectivity by subset removal, planarity by direct
Kuratowski-subdivision search, isomorphism by refinement-plus-backtracking
canonical labelling, and small-graph enumeration by vertex extension with
canonical deduplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .bounds import SearchBoundExceeded
from .graphs import Graph, graph_from_edges


@dataclass(frozen=True)
class OracleReport:
    """Agreement record between a fast operation and its brute-force twin."""

    claim_id: str
    instance: str
    fast_verdict: object
    brute_verdict: object

    @property
    def agree(self) -> bool:
        return self.fast_verdict == self.brute_verdict


# -- connectivity by exhaustive removal --------------------------------


def _connected_mask(g: Graph, alive: int) -> bool:
    """Is the subgraph induced by the bitmask ``alive`` connected (or empty)?"""
    if alive == 0:
        return True
    start = (alive & -alive).bit_length() - 1
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            nxt |= g.mask[v] & alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen == alive


def brute_connectivity(g: Graph, size_bound: int = 16) -> int:
    """Vertex connectivity as the minimum size of a disconnecting set.

    Tries every vertex subset in increasing size; for complete graphs the
    answer is n-1 by convention.
    """
    n = g.n
    if n > size_bound:
        raise SearchBoundExceeded(f"brute_connectivity bound {size_bound} < n={n}")
    if n < 2:
        raise ValueError("connectivity undefined below 2 vertices")
    full = (1 << n) - 1
    if not _connected_mask(g, full):
        return 0
    if g.m == n * (n - 1) // 2:
        return n - 1
    for k in range(1, n - 1):
        for sub in combinations(range(n), k):
            removed = 0
            for v in sub:
                removed |= 1 << v
            if not _connected_mask(g, full & ~removed):
                return k
    return n - 1


def brute_is_k_connected(g: Graph, k: int, size_bound: int = 16) -> bool:
    """k-connectivity by removing every subset of fewer than k vertices."""
    n = g.n
    if n > size_bound:
        raise SearchBoundExceeded(f"brute_is_k_connected bound {size_bound} < n={n}")
    if n <= k:
        return False
    full = (1 << n) - 1
    if not _connected_mask(g, full):
        return k == 0
    for size in range(1, k):
        for sub in combinations(range(n), size):
            removed = 0
            for v in sub:
                removed |= 1 << v
            if not _connected_mask(g, full & ~removed):
                return False
    return True


def is_separating_vertex(g: Graph, v: int) -> bool:
    """Does deleting v increase the number of connected components?"""
    full = (1 << g.n) - 1
    before = _count_components_mask(g, full)
    after = _count_components_mask(g, full & ~(1 << v))
    return after > before


def removal_disconnects(g: Graph, vertices) -> bool:
    """Does deleting the given set increase the number of components?"""
    full = (1 << g.n) - 1
    removed = 0
    for v in vertices:
        removed |= 1 << v
    return _count_components_mask(g, full & ~removed) > _count_components_mask(g, full)


def _count_components_mask(g: Graph, alive: int) -> int:
    count = 0
    while alive:
        start = (alive & -alive).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            while frontier:
                v = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                nxt |= g.mask[v] & alive & ~seen
            seen |= nxt
            frontier = nxt
        alive &= ~seen
        count += 1
    return count


# -- planarity by Kuratowski subdivision search ------------------------


def _disjoint_paths_exist(g: Graph, pairs: list[tuple[int, int]], branch: set[int]) -> bool:
    """Can all pairs be joined by paths that are internally disjoint?

    Branch vertices may appear only as endpoints; interior vertices are used
    by at most one path.  Straight depth-first search over the pairs.
    """

    used = [False] * g.n
    for b in branch:
        used[b] = True

    def extend(idx: int) -> bool:
        if idx == len(pairs):
            return True
        s, t = pairs[idx]

        def walk(v: int, interior: list[int]) -> bool:
            for u in g.adj[v]:
                if u == t:
                    if extend(idx + 1):
                        return True
                    continue
                if u in branch or used[u]:
                    continue
                used[u] = True
                interior.append(u)
                if walk(u, interior):
                    return True
                interior.pop()
                used[u] = False
            return False

        return walk(s, [])

    return extend(0)


def _has_k5_subdivision(g: Graph) -> bool:
    cands = [v for v in range(g.n) if g.degree(v) >= 4]
    for branch in combinations(cands, 5):
        pairs = [(a, b) for a, b in combinations(branch, 2)]
        if _disjoint_paths_exist(g, pairs, set(branch)):
            return True
    return False


def _has_k33_subdivision(g: Graph) -> bool:
    cands = [v for v in range(g.n) if g.degree(v) >= 3]
    for six in combinations(cands, 6):
        for left in combinations(six, 3):
            if six[0] not in left:  # fix six[0] on the left to halve the work
                continue
            right = tuple(v for v in six if v not in left)
            pairs = [(a, b) for a in left for b in right]
            if _disjoint_paths_exist(g, pairs, set(six)):
                return True
    return False


def brute_planarity(g: Graph, size_bound: int = 10) -> bool:
    """True iff the graph contains no K5 and no K3,3 subdivision."""
    if g.n > size_bound:
        raise SearchBoundExceeded(f"brute_planarity bound {size_bound} < n={g.n}")
    return not (_has_k5_subdivision(g) or _has_k33_subdivision(g))


# -- canonical labelling and isomorphism -------------------------------


def _refine(g: Graph, colours: list[int]) -> list[int]:
    """1-WL colour refinement until stable; colours are dense small ints."""
    n = g.n
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colours[u] for u in g.adj[v])
            sigs.append((colours[v], tuple(nb)))
        order = sorted(set(sigs))
        lookup = {s: i for i, s in enumerate(order)}
        new = [lookup[s] for s in sigs]
        if new == colours:
            return new
        colours = new


def _canonical_search(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Return (code, perm) where perm maps vertex -> canonical position and
    code is the minimum upper-triangle bit encoding over the search tree."""
    n = g.n
    best: list[Optional[tuple[int, tuple[int, ...]]]] = [None]

    def encode(perm_inv: list[int]) -> int:
        # perm_inv[i] = original vertex at canonical position i
        code = 0
        bit = 0
        for i in range(n):
            mi = g.mask[perm_inv[i]]
            for j in range(i + 1, n):
                if mi >> perm_inv[j] & 1:
                    code |= 1 << bit
                bit += 1
        return code

    def descend(colours: list[int]) -> None:
        colours = _refine(g, colours)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            perm_inv = sorted(range(n), key=lambda v: colours[v])
            code = encode(perm_inv)
            if best[0] is None or code < best[0][0]:
                perm = [0] * n
                for i, v in enumerate(perm_inv):
                    perm[v] = i
                best[0] = (code, tuple(perm))
            return
        for v in target:
            child = [2 * c for c in colours]
            child[v] = 2 * colours[v] - 1
            descend(child)

    descend([0] * n)
    assert best[0] is not None
    return best[0]


def canonical_form(g: Graph) -> tuple[int, int, int]:
    """Isomorphism-invariant key (n, m, canonical adjacency code)."""
    code, _ = _canonical_search(g)
    return (g.n, g.m, code)


def is_isomorphic(g: Graph, h: Graph, size_bound: int = 24) -> Optional[list[int]]:
    """A verifying bijection V(G)->V(H), or None after exhaustive search."""
    if g.n > size_bound or h.n > size_bound:
        raise SearchBoundExceeded(f"is_isomorphic bound {size_bound} exceeded")
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(len(r) for r in g.adj) != sorted(len(r) for r in h.adj):
        return None
    code_g, perm_g = _canonical_search(g)
    code_h, perm_h = _canonical_search(h)
    if code_g != code_h:
        return None
    inv_h = [0] * h.n
    for v, i in enumerate(perm_h):
        inv_h[i] = v
    bij = [inv_h[perm_g[v]] for v in range(g.n)]
    for u in range(g.n):
        for w in g.adj[u]:
            if not h.has_edge(bij[u], bij[w]):  # pragma: no cover - safety net
                raise AssertionError("canonical forms matched but bijection failed")
    return bij


# -- small-graph enumeration -------------------------------------------

_ENUM_CACHE: dict[tuple[int, bool], list[Graph]] = {}


def enumerate_graphs(n: int, connected_only: bool = False, size_bound: int = 8) -> list[Graph]:
    """All graphs on n vertices up to isomorphism, by vertex extension.

    Every n-vertex graph arises from an (n-1)-vertex graph by adding one
    vertex joined to some subset, so extending every smaller graph by every
    subset and deduplicating canonically is exhaustive.
    """
    if n > size_bound:
        raise SearchBoundExceeded(f"graph enumeration bound {size_bound} < n={n}")
    key = (n, connected_only)
    if key in _ENUM_CACHE:
        return _ENUM_CACHE[key]
    if n == 0:
        result = [Graph(0, [])]
    else:
        seen: dict[tuple[int, int, int], Graph] = {}
        for g in enumerate_graphs(n - 1, False, size_bound):
            base = g.edges()
            for sub in range(1 << (n - 1)):
                edges = base + [(v, n - 1) for v in range(n - 1) if sub >> v & 1]
                h = graph_from_edges(n, edges)
                k = canonical_form(h)
                if k not in seen:
                    seen[k] = h
        result = [seen[k] for k in sorted(seen)]
    if connected_only:
        result = [g for g in result if _connected_mask(g, (1 << g.n) - 1)]
    _ENUM_CACHE[key] = result
    return result


def enumerate_connected_graphs(n: int, size_bound: int = 8) -> list[Graph]:
    """All connected graphs on n vertices up to isomorphism."""
    return enumerate_graphs(n, connected_only=True, size_bound=size_bound)


def stream_corpus(path) -> Iterator[Graph]:
    """Yield graphs from a graph6 file, one per line, in file order."""
    from .graphs import from_graph6, from_sparse6

    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            yield from_sparse6(line) if line.startswith(":") else from_graph6(line)


def enumerate_regular_planar_connected(n: int, r: int) -> list[Graph]:
    """All connected r-regular planar graphs on n vertices up to isomorphism.

    Exhaustive backtracking: vertices are completed in index order, the first
    vertex's neighbourhood is fixed to 1..r, untouched vertices are consumed
    in index order, and any partial graph that is already non-planar is
    discarded (subgraphs of planar graphs are planar).  An edge-count check
    kills impossible (n, r) pairs outright: r*n/2 <= 3n-6 must hold.
    """
    import networkx as nx

    if r < 0 or n < 1:
        return []
    if (n * r) % 2 or r >= n:
        return []
    if n >= 3 and n * r // 2 > 3 * n - 6:
        return []
    if r == 0:
        return [Graph(1, [[]])] if n == 1 else []

    adj: list[set[int]] = [set() for _ in range(n)]
    deg = [0] * n
    found: dict[tuple[int, int, int], Graph] = {}

    def planar_now() -> bool:
        h = nx.Graph()
        h.add_edges_from((u, v) for u in range(n) for v in adj[u] if u < v)
        return nx.check_planarity(h)[0]

    def add(u: int, v: int) -> None:
        adj[u].add(v)
        adj[v].add(u)
        deg[u] += 1
        deg[v] += 1

    def remove(u: int, v: int) -> None:
        adj[u].discard(v)
        adj[v].discard(u)
        deg[u] -= 1
        deg[v] -= 1

    def complete(v: int, touched: int) -> None:
        if v == n:
            g = Graph(n, [sorted(s) for s in adj])
            found.setdefault(canonical_form(g), g)
            return
        need = r - deg[v]
        if need < 0:
            return
        if need == 0:
            if touched > v:
                complete(v + 1, touched)
            return
        candidates = [u for u in range(v + 1, touched) if deg[u] < r]
        from itertools import combinations as combos

        for fresh in range(min(need, n - touched) + 1):
            old = need - fresh
            if old > len(candidates):
                continue
            new_vertices = list(range(touched, touched + fresh))
            for chosen in combos(candidates, old):
                for u in list(chosen) + new_vertices:
                    add(v, u)
                if planar_now():
                    complete(v + 1, touched + fresh)
                for u in list(chosen) + new_vertices:
                    remove(v, u)

    for u in range(1, r + 1):
        add(0, u)
    complete(1, r + 1)
    return [found[k] for k in sorted(found)]
