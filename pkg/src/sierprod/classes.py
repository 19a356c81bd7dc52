"""Membership machinery for the coloured planar graph classes.

An A-class member for signature (n_1 >= ... >= n_k) is a connected planar
(n_1+...+n_k)-regular graph with an embedding and a vertex colouring in
colours 1..k such that every vertex has exactly n_i neighbours of colour i;
certificates additionally carry the derived cyclic-order property that
same-coloured neighbours are consecutive around every vertex.

A B-class member for degree r carries one deficient vertex of degree r-n_i
per colour i (all other degrees equal to r) and an embedding with a face
through all deficient vertices; the starred variant adds the per-component
deficiency bound for every cut of size one or two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .bounds import SearchBoundExceeded, embedding_bound
from .connectivity import is_k_connected
from .embedding import (
    PlaneGraph,
    RotationSystem,
    _planar_rotations_backtrack,
    is_planar,
    test_planarity,
    trace_face_walks,
)
from .graphs import Graph, GraphError, VertexMap, is_connected
from .oracles import removal_disconnects

COLOUR_NAMES = ("red", "blue", "green", "black", "yellow")  # colours 1..5


@dataclass(frozen=True)
class ClassSignature:
    """Non-increasing positive parts n_1 >= ... >= n_k >= 1, k <= 5, sum <= 5."""

    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if not 1 <= len(p) <= 5:
            raise GraphError(f"signature needs 1..5 parts, got {len(p)}")
        if any(x < 1 for x in p):
            raise GraphError("signature parts must be positive")
        if list(p) != sorted(p, reverse=True):
            raise GraphError("signature parts must be non-increasing")
        if sum(p) > 5:
            raise GraphError("signature parts must sum to at most 5")

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.parts) + ")"


def signature(*parts: int) -> ClassSignature:
    return ClassSignature(tuple(parts))


@dataclass(frozen=True)
class AClassCertificate:
    signature: ClassSignature
    colouring: tuple[int, ...]  # colour 1..k per vertex
    rotation: RotationSystem


@dataclass(frozen=True)
class BClassCertificate:
    r: int
    signature: ClassSignature
    coloured_vertices: dict  # colour index -> vertex
    rotation: RotationSystem
    face_index: int = field(compare=False, default=0)


def _blocks_consecutive(rot: tuple[int, ...], colour_of) -> bool:
    """Do same-coloured entries form consecutive cyclic blocks?"""
    d = len(rot)
    if d <= 1:
        return True
    cols = [colour_of(u) for u in rot]
    changes = sum(1 for i in range(d) if cols[i] != cols[(i + 1) % d])
    return changes == len(set(cols)) or changes == 0


def verify_A_certificate(g: Graph, cert: AClassCertificate) -> bool:
    """All certificate invariants, including the consecutive-colour property."""
    sig = cert.signature
    if len(cert.colouring) != g.n:
        raise GraphError("colouring length does not match graph")
    cert.rotation.validate(g)
    if any(not 1 <= c <= sig.k for c in cert.colouring):
        return False
    if not is_connected(g) or g.n == 0:
        return False
    r = sig.total
    if any(g.degree(v) != r for v in range(g.n)):
        return False
    from .embedding import rotation_is_planar

    if not rotation_is_planar(g, cert.rotation):
        return False
    col = cert.colouring
    for v in range(g.n):
        for i, need in enumerate(sig.parts, start=1):
            if sum(1 for u in g.adj[v] if col[u] == i) != need:
                return False
        if not _blocks_consecutive(cert.rotation.rotation[v], lambda u: col[u]):
            return False
    return True


# -- counting-colouring search ------------------------------------------


def _colouring_search(
    g: Graph,
    sig: ClassSignature,
    rotation: Optional[RotationSystem],
    fixed: Optional[dict[int, int]] = None,
) -> Optional[tuple[int, ...]]:
    """First colouring giving every vertex exactly n_i colour-i neighbours.

    With a rotation given, colourings that break the consecutive-block
    property at any finished vertex are pruned (sound for membership search:
    certificates require the property).  Colours whose parts tie are
    interchangeable, so each tied colour may first appear only after its
    predecessor in the tie group.
    """
    n = g.n
    k = sig.k
    need = sig.parts
    r = sig.total
    class_size = [0] * (k + 1)
    for i in range(1, k + 1):
        total = n * need[i - 1]
        if total % r:
            return None
        class_size[i] = total // r
    order: list[int] = []
    seen = [False] * n
    for s in range(n):
        if not seen[s]:
            seen[s] = True
            queue = [s]
            while queue:
                v = queue.pop(0)
                order.append(v)
                for u in g.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
    colour = [0] * n
    cnt = [[0] * (k + 1) for _ in range(n)]
    unassigned = [g.degree(v) for v in range(n)]
    used = [0] * (k + 1)
    tie_prev = [0] * (k + 1)  # colour that must be used before this one
    for i in range(2, k + 1):
        if need[i - 1] == need[i - 2]:
            tie_prev[i] = i - 1

    if fixed:
        for v, c in fixed.items():
            if not 1 <= c <= k:
                return None

    def finished_ok(u: int) -> bool:
        for i in range(1, k + 1):
            if cnt[u][i] != need[i - 1]:
                return False
        if rotation is not None and not _blocks_consecutive(rotation.rotation[u], lambda x: colour[x]):
            return False
        return True

    def assign(v: int, c: int) -> bool:
        colour[v] = c
        used[c] += 1
        ok = used[c] <= class_size[c]
        for u in g.adj[v]:
            cnt[u][c] += 1
            unassigned[u] -= 1
            if cnt[u][c] > need[c - 1]:
                ok = False
            if ok and unassigned[u] == 0 and not finished_ok(u):
                ok = False
        return ok

    def unassign(v: int, c: int) -> None:
        colour[v] = 0
        used[c] -= 1
        for u in g.adj[v]:
            cnt[u][c] -= 1
            unassigned[u] += 1

    def candidates(v: int) -> Iterable[int]:
        if fixed and v in fixed:
            return (fixed[v],)
        return (c for c in range(1, k + 1) if not (tie_prev[c] and used[tie_prev[c]] == 0))

    def rec(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        for c in candidates(v):
            if assign(v, c):
                if rec(idx + 1):
                    return True
            unassign(v, c)
        return False

    if rec(0):
        return tuple(colour)
    return None


def _embeddings_for_search(g: Graph, bound: Optional[int]) -> Iterator[RotationSystem]:
    three = g.n > 3 and is_k_connected(g, 3)
    max_n = bound if bound is not None else embedding_bound(three)
    if g.n > max_n:
        raise SearchBoundExceeded(f"membership search refused for n={g.n} > bound {max_n}")
    if three:
        yield test_planarity(g).embedding
        return
    seen = set()
    for rs in _planar_rotations_backtrack(g, None):
        key = rs.canonical_key()
        if key not in seen:
            seen.add(key)
            yield rs


def find_A_membership(g: Graph, sig: ClassSignature, bound: Optional[int] = None) -> Optional[AClassCertificate]:
    """A certificate for membership in the signature's A-class, or an
    exhaustive None within the search bound."""
    r = sig.total
    if g.n == 0 or not is_connected(g):
        return None
    if any(g.degree(v) != r for v in range(g.n)):
        return None
    if not is_planar(g):
        return None
    for ni in sig.parts:
        if (g.n * ni) % r:
            return None
    if _colouring_search(g, sig, None) is None:
        return None
    for rs in _embeddings_for_search(g, bound):
        col = _colouring_search(g, sig, rs)
        if col is not None:
            cert = AClassCertificate(sig, col, rs)
            if not verify_A_certificate(g, cert):  # pragma: no cover - safety net
                raise AssertionError("membership search produced an invalid certificate")
            return cert
    return None


def certify_A_with_colouring(
    g: Graph, sig: ClassSignature, colouring: Iterable[int], bound: Optional[int] = None
) -> Optional[AClassCertificate]:
    """Certificate with the given colouring fixed, searching embeddings only."""
    col = tuple(colouring)
    if len(col) != g.n:
        raise GraphError("colouring length does not match graph")
    r = sig.total
    if g.n == 0 or not is_connected(g) or any(g.degree(v) != r for v in range(g.n)):
        return None
    if not is_planar(g):
        return None
    for v in range(g.n):
        for i, need in enumerate(sig.parts, start=1):
            if sum(1 for u in g.adj[v] if col[u] == i) != need:
                return None
    for rs in _embeddings_for_search(g, bound):
        if all(_blocks_consecutive(rs.rotation[v], lambda u: col[u]) for v in range(g.n)):
            return AClassCertificate(sig, col, rs)
    return None


def check_A_hash(g: Graph, cert: AClassCertificate) -> bool:
    """The 2-cut refinement of the (2,1,1) class: every 2-cut leaves exactly
    two components, each holding two neighbours of one of the cut vertices
    with exactly one of the two red."""
    if cert.signature.parts != (2, 1, 1):
        raise GraphError("hash refinement is defined for signature (2,1,1)")
    if not verify_A_certificate(g, cert):
        raise GraphError("invalid certificate")
    red = {v for v, c in enumerate(cert.colouring) if c == 1}
    for pair in combinations(range(g.n), 2):
        if not removal_disconnects(g, pair):
            continue
        comps = _components_after_removal(g, pair)
        if len(comps) != 2:
            return False
        ok_some_i = False
        for a_i in pair:
            ok = True
            for comp in comps:
                cnbrs = [u for u in g.adj[a_i] if u in comp]
                if len(cnbrs) != 2 or sum(1 for u in cnbrs if u in red) != 1:
                    ok = False
                    break
            if ok:
                ok_some_i = True
                break
        if not ok_some_i:
            return False
    return True


def _components_after_removal(g: Graph, removed) -> list[set[int]]:
    rem = set(removed)
    seen = set(rem)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        comp = {s}
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in seen:
                    seen.add(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
    return comps


# -- B classes -----------------------------------------------------------


def b_expected_colours(g: Graph, r: int, sig: ClassSignature) -> Optional[dict[int, int]]:
    """Canonical colour -> vertex assignment from the degree sequence, or None
    when the degrees do not fit (r, sig).  Ties between equal parts are broken
    by ascending vertex index against ascending colour index."""
    if any(ni > r for ni in sig.parts) or any(ni == r and g.n > 1 for ni in sig.parts):
        return None
    deficient = sorted(v for v in range(g.n) if g.degree(v) != r)
    if any(g.degree(v) > r for v in range(g.n)):
        return None
    if len(deficient) != sig.k:
        return None
    expect = sorted(r - ni for ni in sig.parts)
    if sorted(g.degree(v) for v in deficient) != expect:
        return None
    out: dict[int, int] = {}
    remaining = sorted(deficient, key=lambda v: (g.degree(v), v))
    # colour i wants degree r - n_i; iterate colours by decreasing part
    for i, ni in enumerate(sig.parts, start=1):
        want = r - ni
        for v in remaining:
            if g.degree(v) == want:
                out[i] = v
                remaining.remove(v)
                break
    return out


def find_B_membership(
    g: Graph,
    r: int,
    sig: ClassSignature,
    bound: Optional[int] = None,
    colours: Optional[dict[int, int]] = None,
) -> Optional[BClassCertificate]:
    """Certificate that g lies in the degree-r class of the signature: degree
    sequence r,...,r, r-n_k, ..., r-n_1 plus an embedding with one face
    through every deficient vertex."""
    if not 2 <= r <= 5:
        raise GraphError("r must be between 2 and 5")
    if g.n == 0 or not is_connected(g):
        return None
    assign = colours if colours is not None else b_expected_colours(g, r, sig)
    if assign is None:
        return None
    if set(assign) != set(range(1, sig.k + 1)):
        raise GraphError("colour assignment must cover colours 1..k")
    for i, ni in enumerate(sig.parts, start=1):
        if g.degree(assign[i]) != r - ni:
            return None
    if not is_planar(g):
        return None
    want = set(assign.values())
    for rs in _embeddings_for_search(g, bound):
        for idx, walk in enumerate(trace_face_walks(g, rs)):
            if want <= set(walk):
                return BClassCertificate(r, sig, dict(assign), rs, idx)
    return None


def check_B_star(g: Graph, r: int) -> bool:
    """The starred cut condition: for every cut-set W of size h in {1,2},
    every component J of g-W keeps total deficiency sum(r - deg) >= 3-h."""
    deficiency = [r - g.degree(v) for v in range(g.n)]
    for h in (1, 2):
        for sub in combinations(range(g.n), h):
            if not removal_disconnects(g, sub):
                continue
            for comp in _components_after_removal(g, sub):
                if sum(deficiency[v] for v in comp) < 3 - h:
                    return False
    return True


def colour_preserving_map(cert_a: AClassCertificate, cert_b: BClassCertificate) -> VertexMap:
    """The unique map sending each A-vertex to the B-vertex of its colour."""
    if cert_a.signature != cert_b.signature:
        raise GraphError(
            f"signature mismatch: {cert_a.signature} vs {cert_b.signature}"
        )
    n_b = max(cert_b.coloured_vertices.values()) + 1 if cert_b.coloured_vertices else 0
    n_b = max(n_b, len(cert_b.rotation.rotation))
    image = [cert_b.coloured_vertices[c] for c in cert_a.colouring]
    return VertexMap(len(cert_a.colouring), n_b, image)


@dataclass(frozen=True)
class ScanResult:
    members: tuple[tuple[int, AClassCertificate], ...]  # (corpus index, certificate)
    refusals: tuple[int, ...]  # corpus indices where the search was refused
    scanned: int


def emptiness_scan(sig: ClassSignature, corpus: Iterable[Graph], bound: Optional[int] = None) -> ScanResult:
    """Run the A-membership search over a corpus; refusals are recorded and
    the scan continues."""
    members = []
    refusals = []
    count = 0
    for idx, g in enumerate(corpus):
        count += 1
        try:
            cert = find_A_membership(g, sig, bound)
        except SearchBoundExceeded:
            refusals.append(idx)
            continue
        if cert is not None:
            members.append((idx, cert))
    return ScanResult(tuple(members), tuple(refusals), count)


# -- certificate JSON ----------------------------------------------------


def a_certificate_to_json(cert: AClassCertificate) -> dict:
    return {
        "signature": list(cert.signature.parts),
        "colouring": list(cert.colouring),
        "rotation": [list(r) for r in cert.rotation.rotation],
    }


def a_certificate_from_json(obj: dict) -> AClassCertificate:
    return AClassCertificate(
        ClassSignature(tuple(obj["signature"])),
        tuple(obj["colouring"]),
        RotationSystem([tuple(r) for r in obj["rotation"]]),
    )


def b_certificate_to_json(cert: BClassCertificate) -> dict:
    return {
        "r": cert.r,
        "signature": list(cert.signature.parts),
        "coloured_vertices": {str(c): v for c, v in cert.coloured_vertices.items()},
        "rotation": [list(r) for r in cert.rotation.rotation],
        "face_index": cert.face_index,
    }


def b_certificate_from_json(obj: dict) -> BClassCertificate:
    return BClassCertificate(
        int(obj["r"]),
        ClassSignature(tuple(obj["signature"])),
        {int(c): v for c, v in obj["coloured_vertices"].items()},
        RotationSystem([tuple(r) for r in obj["rotation"]]),
        int(obj.get("face_index", 0)),
    )
