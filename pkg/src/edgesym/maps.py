"""Combinatorial surface maps.

A map is stored as its family of face cycles plus, for plane graphs, the
distinguished outer face. Everything else is derived: the edge set, vertex
degrees, and the flag graph. A flag is a mutually incident
(vertex, edge, face) triple; the involutions s0/s1/s2 switch the vertex,
the edge, and the face coordinate respectively. A map isomorphism is
forced by the image of a single flag, which is what `propagate_flag_map`
exploits.
"""

from __future__ import annotations

from typing import Optional

__all__ = [
    "CombinatorialMap",
    "Edge",
    "Flag",
    "canonical_cycle",
    "combinatorially_equivalent",
    "cycle_key",
    "edge_key",
    "induced_vertex_and_face_maps",
    "propagate_flag_map",
]

Edge = tuple[str, str]
Flag = tuple[str, Edge, int]


def edge_key(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


def canonical_cycle(cycle) -> tuple[str, ...]:
    """Rotate a simple cycle so its smallest label comes first (orientation kept)."""
    seq = tuple(cycle)
    i = seq.index(min(seq))
    return seq[i:] + seq[:i]


def cycle_key(cycle) -> tuple[str, ...]:
    """Orientation-free canonical form: the smaller of the two rotated readings."""
    fwd = canonical_cycle(cycle)
    rev = canonical_cycle(tuple(reversed(cycle)))
    return min(fwd, rev)


class CombinatorialMap:
    """Vertex/edge/face incidence structure of a 3-polytope surface or of a
    plane graph with a distinguished outer face.

    Faces are stored canonically rotated (smallest label first, orientation
    preserved) and sorted, so two constructions of the same map compare
    equal regardless of input order. Construction validates that every
    edge lies in exactly two faces, that cycles are simple, and that the
    Euler relation V - E + F = 2 holds.
    """

    def __init__(self, faces, outer_face: Optional[int] = None):
        raw = [tuple(str(v) for v in f) for f in faces]
        if not raw:
            raise ValueError("a map needs at least one face")
        for f in raw:
            if len(f) < 3:
                raise ValueError(f"face cycle {f} has fewer than 3 vertices")
            if len(set(f)) != len(f):
                raise ValueError(f"face cycle {f} is not simple")
        canon = [canonical_cycle(f) for f in raw]
        order = sorted(range(len(canon)), key=lambda i: canon[i])
        self.faces: tuple[tuple[str, ...], ...] = tuple(canon[i] for i in order)
        if outer_face is None:
            self.outer_face: Optional[int] = None
        else:
            if not 0 <= outer_face < len(raw):
                raise ValueError(f"outer face index {outer_face} out of range")
            self.outer_face = order.index(outer_face)

        edge_faces: dict[Edge, list[int]] = {}
        for fi, cyc in enumerate(self.faces):
            for t in range(len(cyc)):
                e = edge_key(cyc[t], cyc[(t + 1) % len(cyc)])
                edge_faces.setdefault(e, []).append(fi)
        for e, fs in edge_faces.items():
            if len(fs) != 2 or fs[0] == fs[1]:
                raise ValueError(f"edge {e} lies in faces {fs}, expected two distinct faces")
        self.edges: tuple[Edge, ...] = tuple(sorted(edge_faces))
        self.vertices: tuple[str, ...] = tuple(sorted({v for f in self.faces for v in f}))

        if len(self.vertices) - len(self.edges) + len(self.faces) != 2:
            raise ValueError(
                f"Euler relation fails: V={len(self.vertices)} E={len(self.edges)} "
                f"F={len(self.faces)}"
            )

        degree: dict[str, int] = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            degree[u] += 1
            degree[v] += 1
        self.degree: dict[str, int] = degree

        s0: dict[Flag, Flag] = {}
        s1: dict[Flag, Flag] = {}
        s2: dict[Flag, Flag] = {}
        for fi, cyc in enumerate(self.faces):
            k = len(cyc)
            for t in range(k):
                u, v = cyc[t], cyc[(t + 1) % k]
                e = edge_key(u, v)
                s0[(u, e, fi)] = (v, e, fi)
                s0[(v, e, fi)] = (u, e, fi)
                e_prev = edge_key(cyc[t - 1], cyc[t])
                s1[(u, e_prev, fi)] = (u, e, fi)
                s1[(u, e, fi)] = (u, e_prev, fi)
        for e, (fa, fb) in edge_faces.items():
            for u in e:
                s2[(u, e, fa)] = (u, e, fb)
                s2[(u, e, fb)] = (u, e, fa)
        self.flags: tuple[Flag, ...] = tuple(sorted(s0))
        if not (set(s1) == set(s0) == set(s2)):
            raise ValueError("flag involutions do not cover the same flag set")
        for s in (s0, s1, s2):
            for fl, im in s.items():
                if fl == im or s[im] != fl:
                    raise ValueError(f"invalid involution near flag {fl}")
        self.s0, self.s1, self.s2 = s0, s1, s2
        self._face_keys = tuple(cycle_key(f) for f in self.faces)

    @property
    def is_graph(self) -> bool:
        return self.outer_face is not None

    def face_keys(self) -> tuple[tuple[str, ...], ...]:
        return self._face_keys

    def face_edges(self, fi: int) -> set[Edge]:
        cyc = self.faces[fi]
        return {edge_key(cyc[t], cyc[(t + 1) % len(cyc)]) for t in range(len(cyc))}

    def __eq__(self, other) -> bool:
        if not isinstance(other, CombinatorialMap):
            return NotImplemented
        return (
            self.faces == other.faces
            and self.outer_face == other.outer_face
        )

    def __hash__(self) -> int:
        return hash((self.faces, self.outer_face))

    def __repr__(self) -> str:
        kind = "graph" if self.is_graph else "polytope"
        return (
            f"CombinatorialMap({kind}, V={len(self.vertices)}, "
            f"E={len(self.edges)}, F={len(self.faces)})"
        )


def propagate_flag_map(src: CombinatorialMap, dst: CombinatorialMap,
                       seed: Flag, image: Flag) -> Optional[dict[Flag, Flag]]:
    """Forced extension of seed -> image across the flag graph.

    Every neighbor relation must be preserved, so the assignment spreads
    deterministically; a conflict means no isomorphism maps the seed flag
    to the image flag. Returns the full flag bijection, or None.
    """
    if len(src.flags) != len(dst.flags):
        return None
    phi: dict[Flag, Flag] = {seed: image}
    stack = [seed]
    src_inv = (src.s0, src.s1, src.s2)
    dst_inv = (dst.s0, dst.s1, dst.s2)
    while stack:
        fl = stack.pop()
        im = phi[fl]
        for sa, sb in zip(src_inv, dst_inv):
            fn, gn = sa[fl], sb[im]
            cur = phi.get(fn)
            if cur is None:
                phi[fn] = gn
                stack.append(fn)
            elif cur != gn:
                return None
    if len(phi) != len(src.flags) or len(set(phi.values())) != len(phi):
        return None
    return phi


def induced_vertex_and_face_maps(phi: dict[Flag, Flag]):
    """Vertex and face maps induced by a flag bijection, or None if either
    fails to be well defined."""
    vmap: dict[str, str] = {}
    fmap: dict[int, int] = {}
    for (v, _e, f), (v2, _e2, f2) in phi.items():
        if vmap.setdefault(v, v2) != v2:
            return None
        if fmap.setdefault(f, f2) != f2:
            return None
    return vmap, fmap


def combinatorially_equivalent(a: CombinatorialMap, b: CombinatorialMap) -> bool:
    """Whether the identity on vertex labels extends to a map isomorphism.

    For plane graphs the isomorphism must additionally match the two outer
    faces. Decided by flag propagation from a single seed flag; only the
    (at most two) image flags sharing the seed's vertex and edge can work.
    """
    if a.is_graph != b.is_graph:
        raise ValueError("cannot compare a polytope map with a plane-graph map")
    if set(a.vertices) != set(b.vertices) or a.edges != b.edges:
        return False
    if sorted(a.face_keys()) != sorted(b.face_keys()):
        return False
    if a.is_graph:
        seed = next(fl for fl in a.flags if fl[2] != a.outer_face)
    else:
        seed = a.flags[0]
    v, e, _f = seed
    candidates = [fl for fl in b.flags if fl[0] == v and fl[1] == e]
    for cand in candidates:
        phi = propagate_flag_map(a, b, seed, cand)
        if phi is None:
            continue
        ind = induced_vertex_and_face_maps(phi)
        if ind is None:
            continue
        vmap, fmap = ind
        if any(img != vv for vv, img in vmap.items()):
            continue
        if a.is_graph and fmap[a.outer_face] != b.outer_face:
            continue
        return True
    return False
