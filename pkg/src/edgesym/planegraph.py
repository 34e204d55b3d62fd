"""Convex plane graphs.

Straight-line embeddings whose bounded faces are convex polygons and whose
outer boundary is a simple polygon. Faces are derived from the rotation
system, never supplied. Also implements the boundary decomposition of such
a graph along a face touching the outer boundary, and the recursive
assembly deciding whether two combinatorially equivalent graphs with
congruent faces are congruent as a whole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DecompositionError,
    DimensionMismatch,
    Disconnected,
    DuplicateLabel,
    EdgeCrossing,
    FaceNotOnBoundary,
    NonConvexBoundedFace,
    NonSimpleOuterBoundary,
    NotCombinatoriallyEquivalent,
)
from .geom import (
    DEFAULT_TOLERANCE,
    Isometry,
    Tolerance,
    best_fit_isometry,
    diameter_of,
)
from .maps import CombinatorialMap, combinatorially_equivalent, cycle_key, edge_key

__all__ = [
    "ConvexPlaneGraph",
    "assemble_congruence",
    "boundary_decomposition",
    "build_plane_graph",
]

_MIN_TURN = 1e-9  # rad; flatter corners are rejected as degenerate


@dataclass(frozen=True, eq=False)
class ConvexPlaneGraph:
    """2D embedded graph with convex bounded faces and a distinguished
    outer face."""

    vertices: dict[str, np.ndarray]
    edges: tuple[tuple[str, str], ...]
    map: CombinatorialMap

    def __post_init__(self) -> None:
        frozen = {}
        for label, p in self.vertices.items():
            arr = np.array(p, dtype=float)
            arr.setflags(write=False)
            frozen[str(label)] = arr
        object.__setattr__(self, "vertices", frozen)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.vertices)

    def point_array(self, order=None) -> np.ndarray:
        return np.array([self.vertices[l] for l in (order or self.labels)])

    def diameter(self) -> float:
        return diameter_of(self.point_array())

    def bounded_faces(self) -> list[int]:
        return [i for i in range(len(self.map.faces)) if i != self.map.outer_face]

    def face_polygon(self, fi: int) -> np.ndarray:
        return np.array([self.vertices[l] for l in self.map.faces[fi]])


def _signed_area(poly: np.ndarray) -> float:
    nxt = np.roll(poly, -1, axis=0)
    return 0.5 * float((poly[:, 0] * nxt[:, 1] - poly[:, 1] * nxt[:, 0]).sum())


def _check_crossings(coords: np.ndarray, edges: list[tuple[int, int]],
                     names: list[str], eps: float) -> None:
    m = len(edges)
    if m < 2:
        return
    ea = np.array([e[0] for e in edges])
    eb = np.array([e[1] for e in edges])
    ii, jj = np.triu_indices(m, k=1)
    shared = (
        (ea[ii] == ea[jj]) | (ea[ii] == eb[jj]) | (eb[ii] == ea[jj]) | (eb[ii] == eb[jj])
    )
    ii, jj = ii[~shared], jj[~shared]
    if len(ii) == 0:
        return
    p1, p2 = coords[ea[ii]], coords[eb[ii]]
    q1, q2 = coords[ea[jj]], coords[eb[jj]]

    def cross(o, a, b):
        return (a[:, 0] - o[:, 0]) * (b[:, 1] - o[:, 1]) - (a[:, 1] - o[:, 1]) * (b[:, 0] - o[:, 0])

    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    lq = np.linalg.norm(q2 - q1, axis=1)
    lp = np.linalg.norm(p2 - p1, axis=1)
    tq = eps * lq
    tp = eps * lp
    proper = (
        (((d1 > tq) & (d2 < -tq)) | ((d1 < -tq) & (d2 > tq)))
        & (((d3 > tp) & (d4 < -tp)) | ((d3 < -tp) & (d4 > tp)))
    )

    def point_hits_segment(pt, a, b, seg_len):
        ab = b - a
        ap = pt - a
        t = np.clip((ap * ab).sum(axis=1) / np.maximum(seg_len**2, 1e-300), 0.0, 1.0)
        closest = a + t[:, None] * ab
        return np.linalg.norm(pt - closest, axis=1) <= eps * np.maximum(seg_len, 1.0)

    touching = (
        point_hits_segment(p1, q1, q2, lq)
        | point_hits_segment(p2, q1, q2, lq)
        | point_hits_segment(q1, p1, p2, lp)
        | point_hits_segment(q2, p1, p2, lp)
    )
    bad = proper | touching
    if bad.any():
        k = int(np.argmax(bad))
        e1, e2 = edges[int(ii[k])], edges[int(jj[k])]
        n1 = (names[e1[0]], names[e1[1]])
        n2 = (names[e2[0]], names[e2[1]])
        raise EdgeCrossing(f"edges {n1} and {n2} intersect away from shared endpoints")


def _trace_faces(adj: dict[str, list[str]]) -> list[list[str]]:
    # adj: neighbors in counterclockwise angular order. Walking to the
    # predecessor of the incoming direction keeps the face on the left,
    # so bounded faces come out counterclockwise and the outer face clockwise.
    index_of = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in adj.items()}
    visited: set[tuple[str, str]] = set()
    cycles = []
    for u in sorted(adj):
        for v in adj[u]:
            if (u, v) in visited:
                continue
            cycle = []
            a, b = u, v
            while True:
                visited.add((a, b))
                cycle.append(a)
                nbrs = adj[b]
                c = nbrs[(index_of[b][a] - 1) % len(nbrs)]
                a, b = b, c
                if (a, b) == (u, v):
                    break
            cycles.append(cycle)
    return cycles


def build_plane_graph(points, edges, tol: Tolerance = DEFAULT_TOLERANCE) -> ConvexPlaneGraph:
    """Build and validate a convex plane graph from labelled points and edges.

    The rotation system is derived by sorting incident edges by angle at
    each vertex; faces are traced from it, the outer face is the unique
    cycle of negative signed area, and all convexity/simplicity invariants
    are checked.
    """
    items = [(str(label), np.asarray(p, dtype=float)) for label, p in points]
    labels = [label for label, _ in items]
    seen: set[str] = set()
    for label in labels:
        if label in seen:
            raise DuplicateLabel(f"label {label!r} appears more than once")
        seen.add(label)
    coords = np.array([p for _, p in items])
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise DimensionMismatch(f"expected (n, 2) coordinates, got shape {coords.shape}")
    if len(coords) < 3:
        raise ValueError(f"a plane graph needs at least 3 vertices, got {len(coords)}")
    pos = {label: coords[i] for i, label in enumerate(labels)}
    idx = {label: i for i, label in enumerate(labels)}

    edge_set: set[tuple[str, str]] = set()
    for u, v in edges:
        u, v = str(u), str(v)
        if u not in pos or v not in pos:
            raise ValueError(f"edge ({u}, {v}) references an unknown vertex label")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        edge_set.add(edge_key(u, v))
    if not edge_set:
        raise Disconnected("graph has no edges")

    # connectivity
    neighbor_lists: dict[str, list[str]] = {l: [] for l in labels}
    for u, v in edge_set:
        neighbor_lists[u].append(v)
        neighbor_lists[v].append(u)
    stack = [labels[0]]
    reached = {labels[0]}
    while stack:
        cur = stack.pop()
        for nb in neighbor_lists[cur]:
            if nb not in reached:
                reached.add(nb)
                stack.append(nb)
    if len(reached) != len(labels):
        missing = sorted(set(labels) - reached)
        raise Disconnected(f"vertices {missing} are not connected to {labels[0]!r}")

    diam = diameter_of(coords)
    eps = tol.abs_eps + tol.rel_eps * diam
    int_edges = [(idx[u], idx[v]) for u, v in sorted(edge_set)]
    _check_crossings(coords, int_edges, labels, eps)

    # rotation system: counterclockwise by angle, with a tie meaning two
    # overlapping collinear edges at a vertex
    adj: dict[str, list[str]] = {}
    for v, nbrs in neighbor_lists.items():
        angles = sorted(
            (math.atan2(pos[u][1] - pos[v][1], pos[u][0] - pos[v][0]), u) for u in nbrs
        )
        for (a1, u1), (a2, u2) in zip(angles, angles[1:]):
            if a2 - a1 < 1e-12:
                raise EdgeCrossing(f"edges ({v},{u1}) and ({v},{u2}) overlap at vertex {v}")
        adj[v] = [u for _, u in angles]

    cycles = _trace_faces(adj)
    areas = [_signed_area(np.array([pos[l] for l in cyc])) for cyc in cycles]
    negative = [i for i, a in enumerate(areas) if a < 0]
    if len(negative) != 1:
        raise NonSimpleOuterBoundary(
            f"expected exactly one outer walk, found {len(negative)}"
        )
    outer = negative[0]

    if len(set(cycles[outer])) != len(cycles[outer]):
        raise NonSimpleOuterBoundary(
            f"outer boundary revisits a vertex: {cycles[outer]}"
        )
    for i, cyc in enumerate(cycles):
        if i == outer:
            continue
        if len(set(cyc)) != len(cyc):
            raise NonConvexBoundedFace(f"bounded face walk {cyc} revisits a vertex")
        poly = np.array([pos[l] for l in cyc])
        vecs = np.roll(poly, -1, axis=0) - poly
        for t in range(len(cyc)):
            a = vecs[t - 1]
            b = vecs[t]
            turn = math.atan2(a[0] * b[1] - a[1] * b[0], float(a @ b))
            if not (_MIN_TURN <= turn <= math.pi - _MIN_TURN):
                raise NonConvexBoundedFace(
                    f"face {tuple(cyc)} is not strictly convex at vertex {cyc[t]}"
                )

    cmap = CombinatorialMap(cycles, outer_face=outer)
    return ConvexPlaneGraph(vertices=dict(items), edges=tuple(sorted(edge_set)), map=cmap)


def boundary_decomposition(G: ConvexPlaneGraph, face: int,
                           tol: Tolerance = DEFAULT_TOLERANCE) -> list[ConvexPlaneGraph]:
    """Split G along a bounded face touching the outer boundary.

    Deletes the edges the face shares with the outer face and returns the
    pieces given by the connected components of the dual graph without the
    chosen face and the outer face. Pieces may share vertices but never
    edges, and each must share an edge with the removed face.
    """
    M = G.map
    if M.outer_face is None or not 0 <= face < len(M.faces) or face == M.outer_face:
        raise ValueError(f"face {face} is not a bounded face of the graph")
    outer_edges = M.face_edges(M.outer_face)
    face_edges = M.face_edges(face)
    removed = face_edges & outer_edges
    if not removed:
        raise FaceNotOnBoundary(
            f"face {M.faces[face]} shares no edge with the outer boundary"
        )

    edge_faces: dict[tuple[str, str], list[int]] = {}
    for fi in range(len(M.faces)):
        for e in M.face_edges(fi):
            edge_faces.setdefault(e, []).append(fi)

    kept = [fi for fi in range(len(M.faces)) if fi not in (face, M.outer_face)]
    component_of: dict[int, int] = {}
    comp_id = 0
    for start in kept:
        if start in component_of:
            continue
        stack = [start]
        component_of[start] = comp_id
        while stack:
            cur = stack.pop()
            for e in M.face_edges(cur):
                for nb in edge_faces[e]:
                    if nb in (face, M.outer_face) or nb in component_of:
                        continue
                    component_of[nb] = comp_id
                    stack.append(nb)
        comp_id += 1

    components: dict[int, list[int]] = {}
    for fi, c in component_of.items():
        components.setdefault(c, []).append(fi)

    pieces = []
    piece_edge_sets = []
    for fis in sorted(components.values(), key=lambda fs: min(M.faces[f] for f in fs)):
        edge_union: set[tuple[str, str]] = set()
        for fi in fis:
            edge_union |= M.face_edges(fi)
        if not (edge_union & face_edges):
            raise DecompositionError(
                f"decomposition piece {sorted(fis)} shares no edge with face "
                f"{M.faces[face]}; such graphs are outside the supported class"
            )
        vset = sorted({v for fi in fis for v in M.faces[fi]})
        piece = build_plane_graph(
            [(l, G.vertices[l]) for l in vset], sorted(edge_union), tol
        )
        pieces.append(piece)
        piece_edge_sets.append(edge_union)
    for i in range(len(piece_edge_sets)):
        for j in range(i + 1, len(piece_edge_sets)):
            if piece_edge_sets[i] & piece_edge_sets[j]:
                raise DecompositionError("decomposition pieces share an edge")
    return pieces


def _fit_labels(g: ConvexPlaneGraph, h: ConvexPlaneGraph, labels,
                tol: Tolerance) -> tuple[Isometry, float]:
    src = np.array([g.vertices[l] for l in labels])
    dst = np.array([h.vertices[l] for l in labels])
    return best_fit_isometry(src, dst, allow_reflection=True, tol=tol)


def _assemble(g: ConvexPlaneGraph, h: ConvexPlaneGraph, tol: Tolerance,
              threshold: float) -> Isometry | None:
    bounded = g.bounded_faces()
    if len(bounded) == 1:
        iso, rmsd = _fit_labels(g, h, sorted(g.vertices), tol)
        return iso if rmsd <= threshold else None

    outer_edges = g.map.face_edges(g.map.outer_face)
    candidates = [fi for fi in bounded if g.map.face_edges(fi) & outer_edges]
    fg = min(candidates, key=lambda fi: g.map.faces[fi])
    fg_key = cycle_key(g.map.faces[fg])
    fh = next(
        (fi for fi in h.bounded_faces() if cycle_key(h.map.faces[fi]) == fg_key), None
    )
    if fh is None:
        return None

    rho, rmsd = _fit_labels(g, h, g.map.faces[fg], tol)
    if rmsd > threshold:
        return None

    pieces_g = boundary_decomposition(g, fg, tol)
    pieces_h = boundary_decomposition(h, fh, tol)
    by_edges = {frozenset(p.edges): p for p in pieces_h}
    if len(pieces_g) != len(pieces_h):
        return None
    for gp in pieces_g:
        hp = by_edges.get(frozenset(gp.edges))
        if hp is None:
            return None
        sub = _assemble(gp, hp, tol, threshold)
        if sub is None:
            return None
        pts = gp.point_array(sorted(gp.vertices))
        gap = np.linalg.norm(rho.apply(pts) - sub.apply(pts), axis=1).max()
        if gap > threshold:
            return None
    return rho


def assemble_congruence(G: ConvexPlaneGraph, H: ConvexPlaneGraph,
                        tol: Tolerance = DEFAULT_TOLERANCE) -> Isometry | None:
    """Decide congruence of two combinatorially equivalent convex plane
    graphs by recursive assembly.

    With a single bounded face the faces are aligned directly. Otherwise a
    boundary face is aligned to its partner, the graphs are decomposed
    along it, each piece is assembled recursively, and every piece's
    isometry must agree with the face alignment on the piece's vertices.
    The returned isometry is cross-checked against the direct whole-graph
    fit.
    """
    if not combinatorially_equivalent(G.map, H.map):
        raise NotCombinatoriallyEquivalent(
            "identity on labels does not extend to a map isomorphism"
        )
    diam = max(G.diameter(), H.diameter())
    threshold = tol.fit_threshold(diam)
    rho = _assemble(G, H, tol, threshold)
    if rho is None:
        return None
    order = sorted(G.vertices)
    src = G.point_array(order)
    dst = H.point_array(order)
    if np.linalg.norm(rho.apply(src) - dst, axis=1).max() > threshold:
        return None
    direct, _ = best_fit_isometry(src, dst, allow_reflection=True, tol=tol)
    gap = np.linalg.norm(rho.apply(src) - direct.apply(src), axis=1).max()
    if gap > threshold:
        raise AssertionError(
            f"assembled isometry deviates from the direct fit by {gap:g}"
        )
    return rho
