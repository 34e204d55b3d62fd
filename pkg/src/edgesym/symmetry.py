"""Combinatorial symmetries of a map.

Enumeration by flag propagation, edge-length preservation filtering, and
realization by ambient isometries (global Procrustes residual against a
diameter-relative threshold).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import PermutationNotASymmetry
from .geom import (
    DEFAULT_TOLERANCE,
    Isometry,
    Tolerance,
    best_fit_isometry,
    diameter_of,
)
from .maps import (
    CombinatorialMap,
    cycle_key,
    edge_key,
    induced_vertex_and_face_maps,
    propagate_flag_map,
)

__all__ = [
    "SymmetryRecord",
    "SymmetryReport",
    "VertexPermutation",
    "analyze",
    "enumerate_symmetries",
    "is_edge_preserving",
    "realize",
]


class VertexPermutation:
    """A bijection of vertex index labels."""

    __slots__ = ("_map", "_labels", "_word")

    def __init__(self, mapping):
        m = {str(k): str(v) for k, v in dict(mapping).items()}
        if set(m) != set(m.values()):
            raise ValueError("mapping is not a bijection on its label set")
        self._map = m
        self._labels = tuple(sorted(m))
        self._word = tuple(m[l] for l in self._labels)

    @classmethod
    def identity(cls, labels) -> "VertexPermutation":
        return cls({l: l for l in labels})

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self._map)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def word(self) -> tuple[str, ...]:
        """Images of the sorted labels; the canonical sort key."""
        return self._word

    def __call__(self, label) -> str:
        return self._map[str(label)]

    def is_identity(self) -> bool:
        return self._word == self._labels

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """self after other: x -> self(other(x))."""
        if self._labels != other._labels:
            raise ValueError("permutations act on different label sets")
        return VertexPermutation({l: self._map[other._map[l]] for l in self._labels})

    def inverse(self) -> "VertexPermutation":
        return VertexPermutation({v: k for k, v in self._map.items()})

    def cycles(self) -> list[tuple[str, ...]]:
        """Nontrivial cycles, each starting at its smallest label, sorted."""
        seen: set[str] = set()
        out = []
        for start in self._labels:
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            cur = self._map[start]
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                cur = self._map[cur]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexPermutation):
            return NotImplemented
        return self._labels == other._labels and self._word == other._word

    def __hash__(self) -> int:
        return hash((self._labels, self._word))

    def __repr__(self) -> str:
        return f"VertexPermutation({self.cycle_notation()})"


def enumerate_symmetries(M: CombinatorialMap) -> list[VertexPermutation]:
    """All vertex permutations extending to automorphisms of the map.

    One seed flag is fixed; every signature-compatible flag is tried as its
    image and the candidate is propagated across the flag graph, which
    forces the whole automorphism (orientation-reversing ones included,
    since the flag involutions carry no orientation). Plane-graph
    automorphisms must fix the outer face. Output is sorted by
    permutation word.
    """
    deg = M.degree

    def signature(fl):
        v, _e, f = fl
        return (deg[v], len(M.faces[f]))

    if M.is_graph:
        pool = [fl for fl in M.flags if fl[2] != M.outer_face]
    else:
        pool = list(M.flags)
    seed = pool[0]
    sig = signature(seed)
    found: dict[tuple[str, ...], VertexPermutation] = {}
    for cand in pool:
        if signature(cand) != sig:
            continue
        phi = propagate_flag_map(M, M, seed, cand)
        if phi is None:
            continue
        ind = induced_vertex_and_face_maps(phi)
        if ind is None:
            continue
        vmap, fmap = ind
        if M.is_graph and fmap[M.outer_face] != M.outer_face:
            continue
        perm = VertexPermutation(vmap)
        found.setdefault(perm.word, perm)
    return [found[w] for w in sorted(found)]


def _coords_array(M: CombinatorialMap, coords, order) -> np.ndarray:
    return np.array([np.asarray(coords[l], dtype=float) for l in order])


def is_edge_preserving(M: CombinatorialMap, coords, sigma: VertexPermutation,
                       tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff sigma maps every edge to an edge of equal length
    (absolute-plus-relative threshold)."""
    pts = {l: np.asarray(coords[l], dtype=float) for l in M.vertices}
    eps = tol.length_eps(diameter_of(list(pts.values())))
    edge_set = set(M.edges)
    for u, v in M.edges:
        iu, iv = sigma(u), sigma(v)
        if edge_key(iu, iv) not in edge_set:
            raise PermutationNotASymmetry(
                f"edge {{{u},{v}}} maps to non-edge {{{iu},{iv}}}"
            )
        d_src = float(np.linalg.norm(pts[u] - pts[v]))
        d_dst = float(np.linalg.norm(pts[iu] - pts[iv]))
        if abs(d_src - d_dst) > eps:
            return False
    return True


def _fit_permutation(M: CombinatorialMap, coords, sigma: VertexPermutation,
                     tol: Tolerance) -> tuple[Isometry, float]:
    order = list(M.vertices)
    src = _coords_array(M, coords, order)
    dst = _coords_array(M, coords, [sigma(l) for l in order])
    return best_fit_isometry(src, dst, allow_reflection=True, tol=tol)


def realize(M: CombinatorialMap, coords, sigma: VertexPermutation,
            tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[tuple[Isometry, float]]:
    """The isometry taking each vertex to the position of its sigma-image,
    if one fits within ``fit_eps`` times the diameter; None otherwise."""
    iso, rmsd = _fit_permutation(M, coords, sigma, tol)
    diam = diameter_of(_coords_array(M, coords, M.vertices))
    if rmsd <= tol.fit_threshold(diam):
        return iso, rmsd
    return None


@dataclass(frozen=True)
class SymmetryRecord:
    """Classification of one combinatorial symmetry."""

    sigma: VertexPermutation
    face_image: tuple[int, ...]
    edge_preserving: bool
    realized: bool
    isometry: Optional[Isometry]
    rmsd: float
    orientation: Optional[int]

    def to_dict(self) -> dict:
        doc = {
            "sigma": self.sigma.cycle_notation(),
            "face_image": list(self.face_image),
            "edge_preserving": self.edge_preserving,
            "realized": self.realized,
            "rmsd": float(self.rmsd),
        }
        doc["orientation"] = self.orientation if self.realized else None
        doc["isometry"] = self.isometry.to_dict() if self.isometry is not None else None
        return doc


@dataclass(frozen=True)
class SymmetryReport:
    """All combinatorial symmetries of one instance with their flags."""

    instance_id: str
    total: int
    edge_preserving_count: int
    realized_count: int
    records: tuple[SymmetryRecord, ...]
    group_closed: bool

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.total, self.edge_preserving_count, self.realized_count)

    def to_dict(self) -> dict:
        return {
            "kind": "symmetry_report",
            "instance_id": self.instance_id,
            "counts": {
                "total": self.total,
                "edge_preserving": self.edge_preserving_count,
                "realized": self.realized_count,
            },
            "group_closed": self.group_closed,
            "records": [r.to_dict() for r in self.records],
        }


def _group_closed(perms: list[VertexPermutation]) -> bool:
    words = {p.word for p in perms}
    for a in perms:
        if a.inverse().word not in words:
            return False
        for b in perms:
            if a.compose(b).word not in words:
                return False
    return True


def analyze(M: CombinatorialMap, coords, tol: Tolerance = DEFAULT_TOLERANCE,
            instance_id: str = "") -> SymmetryReport:
    """Enumerate, filter, and attempt to realize every combinatorial
    symmetry; records come back sorted by permutation word."""
    pts = _coords_array(M, coords, M.vertices)
    diam = diameter_of(pts)
    tol.warn_if_coarse(diam)
    threshold = tol.fit_threshold(diam)
    perms = enumerate_symmetries(M)
    face_index = {key: i for i, key in enumerate(M.face_keys())}
    records = []
    for sigma in perms:
        face_image = tuple(
            face_index[cycle_key([sigma(v) for v in face])] for face in M.faces
        )
        edge_ok = is_edge_preserving(M, coords, sigma, tol)
        iso, rmsd = _fit_permutation(M, coords, sigma, tol)
        realized = rmsd <= threshold
        if realized and not edge_ok:
            raise AssertionError(
                f"symmetry {sigma.cycle_notation()} realized but not edge-preserving"
            )
        records.append(
            SymmetryRecord(
                sigma=sigma,
                face_image=face_image,
                edge_preserving=edge_ok,
                realized=realized,
                isometry=iso if realized else None,
                rmsd=rmsd,
                orientation=iso.orientation if realized else None,
            )
        )
    identity = next((r for r in records if r.sigma.is_identity()), None)
    if identity is None or not identity.realized:
        raise AssertionError("identity permutation missing or unrealized")
    return SymmetryReport(
        instance_id=instance_id,
        total=len(records),
        edge_preserving_count=sum(r.edge_preserving for r in records),
        realized_count=sum(r.realized for r in records),
        records=tuple(records),
        group_closed=_group_closed(perms),
    )
