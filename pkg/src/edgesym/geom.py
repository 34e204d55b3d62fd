"""Numeric geometry kernel.

Tolerances, rigid isometries, least-squares alignment (orthogonal
Procrustes), circle fitting with geometric refinement, and reconstruction
of a convex polygon inscribed in a circle from its side lengths alone.

All functions are pure; returned objects are immutable and safe to share
between threads.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    CollinearPoints,
    DegeneratePolygon,
    DimensionMismatch,
    LengthMismatch,
    NonCoplanarPoints,
    PolygonInequality,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "Isometry",
    "CircleFit",
    "UnderdeterminedFitWarning",
    "CoarseToleranceWarning",
    "apply_isometry",
    "best_fit_isometry",
    "circumradius_from_sides",
    "diameter_of",
    "fit_circle",
    "is_inscribed",
    "polygon_area",
    "reconstruct_inscribed_polygon",
]


class UnderdeterminedFitWarning(UserWarning):
    """Alignment was requested with fewer points than the ambient dimension."""


class CoarseToleranceWarning(UserWarning):
    """abs_eps looks too large relative to the instance diameter."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds: absolute, relative, and fit-acceptance.

    ``abs_eps`` and ``rel_eps`` combine into a length-comparison threshold
    via :meth:`length_eps`; ``fit_eps`` scales the instance diameter into
    the maximal RMS residual accepted for isometry and circle fits.
    """

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9
    fit_eps: float = 1e-6

    def __post_init__(self) -> None:
        if min(self.abs_eps, self.rel_eps, self.fit_eps) <= 0:
            raise ValueError("all tolerance components must be strictly positive")

    def scaled(self, factor: float) -> "Tolerance":
        """Uniformly scale all three thresholds (used by the CLI --tol flag)."""
        if factor <= 0:
            raise ValueError("tolerance scale factor must be strictly positive")
        return Tolerance(self.abs_eps * factor, self.rel_eps * factor, self.fit_eps * factor)

    def length_eps(self, diameter: float) -> float:
        """Threshold for declaring two lengths equal on an instance of this size."""
        return self.abs_eps + self.rel_eps * diameter

    def fit_threshold(self, diameter: float) -> float:
        """Max RMS residual accepted for a congruence fit on this instance."""
        return self.fit_eps * diameter

    def warn_if_coarse(self, diameter: float) -> None:
        # abs_eps <= 1e-3 * diameter is the recommended regime
        if diameter > 0 and self.abs_eps > 1e-3 * diameter:
            warnings.warn(
                f"abs_eps={self.abs_eps:g} exceeds 1e-3 x instance diameter {diameter:g}",
                CoarseToleranceWarning,
                stacklevel=3,
            )


DEFAULT_TOLERANCE = Tolerance()


def _as_points(points, dims=(2, 3)) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] not in dims:
        raise DimensionMismatch(
            f"expected an (n, d) point array with d in {dims}, got shape {arr.shape}"
        )
    return arr


def diameter_of(points) -> float:
    """Largest pairwise distance within a point collection."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or len(arr) < 2:
        return 0.0
    diff = arr[:, None, :] - arr[None, :, :]
    return float(np.sqrt((diff * diff).sum(axis=-1)).max())


@dataclass(frozen=True, eq=False)
class Isometry:
    """Orthogonal linear part plus translation, in dimension 2 or 3."""

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self) -> None:
        lin = np.array(self.linear, dtype=float)
        tr = np.array(self.translation, dtype=float)
        if lin.ndim != 2 or lin.shape[0] != lin.shape[1] or lin.shape[0] not in (2, 3):
            raise DimensionMismatch(f"linear part must be 2x2 or 3x3, got {lin.shape}")
        if tr.shape != (lin.shape[0],):
            raise DimensionMismatch(
                f"translation shape {tr.shape} does not match linear part {lin.shape}"
            )
        defect = np.abs(lin.T @ lin - np.eye(lin.shape[0])).max()
        if defect > 1e-6:
            raise ValueError(f"linear part is not orthogonal (defect {defect:g})")
        lin.setflags(write=False)
        tr.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def identity(cls, dim: int) -> "Isometry":
        return cls(np.eye(dim), np.zeros(dim))

    @property
    def dim(self) -> int:
        return self.linear.shape[0]

    @property
    def orientation(self) -> int:
        """+1 for rotations, -1 for reflections."""
        return 1 if float(np.linalg.det(self.linear)) > 0 else -1

    def apply(self, p) -> np.ndarray:
        """Apply to one point or to an (n, d) array of points."""
        arr = np.asarray(p, dtype=float)
        if arr.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"point dimension {arr.shape[-1]} does not match isometry dimension {self.dim}"
            )
        return arr @ self.linear.T + self.translation

    def to_dict(self) -> dict:
        return {
            "linear": [[float(x) for x in row] for row in self.linear],
            "translation": [float(x) for x in self.translation],
        }


def apply_isometry(iso: Isometry, p) -> np.ndarray:
    """linear @ p + translation for a single d-vector (or an (n, d) batch)."""
    return iso.apply(p)


def best_fit_isometry(src, dst, allow_reflection: bool = True,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[Isometry, float]:
    """Least-squares rigid alignment of matched point sets (Kabsch/Procrustes).

    Minimizes sum |rho(src_i) - dst_i|^2 over rotations, or over all
    orthogonal maps when ``allow_reflection`` is set. Returns the optimal
    isometry and the RMS residual.
    """
    A = _as_points(src)
    B = np.asarray(dst, dtype=float)
    if A.shape != B.shape:
        raise LengthMismatch(f"src shape {A.shape} does not match dst shape {B.shape}")
    n, d = A.shape
    if n == 0:
        raise LengthMismatch("cannot fit an isometry to empty point sets")
    if n < d:
        warnings.warn(
            f"only {n} point(s) in dimension {d}: alignment is underdetermined",
            UnderdeterminedFitWarning,
            stacklevel=2,
        )
    ca = A.mean(axis=0)
    cb = B.mean(axis=0)
    H = (A - ca).T @ (B - cb)
    U, _sing, Vt = np.linalg.svd(H)
    R = Vt.T @ U.T
    if not allow_reflection and np.linalg.det(R) < 0:
        flip = np.eye(d)
        flip[-1, -1] = -1.0
        R = Vt.T @ flip @ U.T
    t = cb - R @ ca
    resid = A @ R.T + t - B
    rmsd = float(np.sqrt((resid * resid).sum() / n))
    return Isometry(R, t), rmsd


@dataclass(frozen=True, eq=False)
class CircleFit:
    """Best-fit circle: center, radius, worst distance residual, and (in 3D)
    the unit normal of the fitted carrier plane."""

    center: np.ndarray
    radius: float
    max_residual: float
    plane_normal: np.ndarray | None = None

    def to_dict(self) -> dict:
        doc = {
            "center": [float(x) for x in self.center],
            "radius": float(self.radius),
            "max_residual": float(self.max_residual),
        }
        if self.plane_normal is not None:
            doc["plane_normal"] = [float(x) for x in self.plane_normal]
        return doc


def _fit_circle_2d(xy: np.ndarray) -> tuple[float, float, float, float]:
    # Work in centered coordinates for conditioning.
    c0 = xy.mean(axis=0)
    Q = xy - c0
    sing = np.linalg.svd(Q, compute_uv=False)
    if sing[0] <= 0 or sing[1] <= 1e-12 * sing[0]:
        raise CollinearPoints("points are collinear: no finite circle fits them")
    # Algebraic seed: 2*cx*x + 2*cy*y + c = x^2 + y^2 in least squares.
    A = np.column_stack([2.0 * Q[:, 0], 2.0 * Q[:, 1], np.ones(len(Q))])
    b = (Q * Q).sum(axis=1)
    sol, *_ = np.linalg.lstsq(A, b, rcond=None)
    cx, cy, c = (float(v) for v in sol)
    r = math.sqrt(max(c + cx * cx + cy * cy, 0.0))
    # Geometric refinement: Gauss-Newton on sum (|p - center| - r)^2.
    for _ in range(20):
        dx = Q[:, 0] - cx
        dy = Q[:, 1] - cy
        dist = np.hypot(dx, dy)
        if dist.min() <= 1e-300:
            break
        res = dist - r
        J = np.column_stack([-dx / dist, -dy / dist, -np.ones(len(Q))])
        step, *_ = np.linalg.lstsq(J, -res, rcond=None)
        cx += float(step[0])
        cy += float(step[1])
        r += float(step[2])
        if np.abs(step).max() <= 1e-15 * max(abs(r), 1e-30):
            break
    dist = np.hypot(Q[:, 0] - cx, Q[:, 1] - cy)
    max_res = float(np.abs(dist - r).max())
    return cx + c0[0], cy + c0[1], float(r), max_res


def fit_circle(points, tol: Tolerance = DEFAULT_TOLERANCE) -> CircleFit:
    """Least-squares circle through 2D points or coplanar 3D points.

    Algebraic fit seeded into at most 20 Gauss-Newton steps on the
    geometric distance; deterministic for a fixed input order. 3D input is
    checked for coplanarity, projected, fitted, and lifted back.
    """
    P = _as_points(points)
    if len(P) < 3:
        raise CollinearPoints("need at least 3 points to fit a circle")
    diam = diameter_of(P)
    if diam == 0:
        raise CollinearPoints("all points coincide")
    if P.shape[1] == 2:
        cx, cy, r, max_res = _fit_circle_2d(P)
        return CircleFit(center=np.array([cx, cy]), radius=r, max_residual=max_res)
    centroid = P.mean(axis=0)
    Q = P - centroid
    _u, _s, Vt = np.linalg.svd(Q, full_matrices=False)
    normal = Vt[2]
    k = int(np.argmax(np.abs(normal)))
    if normal[k] < 0:
        normal = -normal
    offsets = Q @ normal
    if np.abs(offsets).max() > tol.fit_eps * diam:
        raise NonCoplanarPoints(
            f"points deviate from their best plane by {np.abs(offsets).max():g} "
            f"(limit {tol.fit_eps * diam:g})"
        )
    u, w = Vt[0], Vt[1]
    xy = np.column_stack([Q @ u, Q @ w])
    cx, cy, r, max_res = _fit_circle_2d(xy)
    center3 = centroid + cx * u + cy * w
    return CircleFit(center=center3, radius=r, max_residual=max_res, plane_normal=normal)


def polygon_area(polygon) -> float:
    """Unsigned area of a (possibly 3D, planar) polygon given in boundary order."""
    P = _as_points(polygon)
    ref = P.mean(axis=0)
    Q = P - ref
    nxt = np.roll(Q, -1, axis=0)
    if P.shape[1] == 2:
        return 0.5 * abs(float((Q[:, 0] * nxt[:, 1] - Q[:, 1] * nxt[:, 0]).sum()))
    cross = np.cross(Q, nxt).sum(axis=0)
    return 0.5 * float(np.linalg.norm(cross))


def is_inscribed(polygon, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[bool, CircleFit]:
    """Concyclicity verdict for a convex polygon given in boundary order.

    True iff the best-fit circle's worst residual is at most
    ``fit_eps`` times the polygon diameter, making the verdict
    scale-invariant.
    """
    P = _as_points(polygon)
    if len(P) < 3:
        raise DegeneratePolygon("a polygon needs at least 3 vertices")
    diam = diameter_of(P)
    if diam == 0 or polygon_area(P) <= 1e-12 * diam * diam:
        raise DegeneratePolygon("polygon has (numerically) zero area")
    fit = fit_circle(P, tol)
    return fit.max_residual <= tol.fit_eps * diam, fit


def _check_side_lengths(lengths) -> list[float]:
    L = [float(x) for x in lengths]
    if len(L) < 3:
        raise PolygonInequality("need at least 3 side lengths")
    if min(L) <= 0:
        raise PolygonInequality("side lengths must be strictly positive")
    lmax = max(L)
    rest = sum(L) - lmax
    if lmax >= rest:
        raise PolygonInequality(
            f"longest side {lmax:g} must be shorter than the sum of the others {rest:g}"
        )
    return L


def _solve_circumradius(lengths) -> tuple[float, bool]:
    """Circumradius of the cyclic polygon with the given sides, plus a flag
    telling whether the circumcenter lies inside (or on the boundary of)
    the polygon.

    Each side of length l subtends a central angle 2*arcsin(l/2r). With the
    center inside, the angles sum to 2*pi; with the center outside, the
    longest side subtends the reflex complement instead, which turns the
    angle-sum equation into the long-chord form below. Both residual
    functions change sign exactly once past r = l_max/2, so bisection to
    1e-14 relative width pins the unique admissible radius.
    """
    L = _check_side_lengths(lengths)
    lmax = max(L)
    imax = L.index(lmax)

    def term(l: float, r: float) -> float:
        return math.asin(min(1.0, l / (2.0 * r)))

    def f_inside(r: float) -> float:
        return sum(term(l, r) for l in L) - math.pi

    def f_outside(r: float) -> float:
        partial = sum(term(l, r) for i, l in enumerate(L) if i != imax)
        return partial - term(lmax, r)

    r0 = lmax / 2.0
    inside = f_inside(r0) >= 0.0
    fn = f_inside if inside else f_outside

    lo, hi = r0, 2.0 * r0
    for _ in range(200):
        val = fn(hi)
        if (val < 0.0) if inside else (val > 0.0):
            break
        lo, hi = hi, 2.0 * hi
    else:  # pragma: no cover - the doubling always terminates for valid sides
        raise ArithmeticError("circumradius bracketing failed")

    for _ in range(200):
        if hi - lo <= 1e-14 * hi:
            break
        mid = 0.5 * (lo + hi)
        val = fn(mid)
        if (val >= 0.0) if inside else (val <= 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), inside


def circumradius_from_sides(lengths) -> float:
    """Radius of the circle carrying the convex inscribed polygon whose sides
    have the given lengths in the given cyclic order."""
    return _solve_circumradius(lengths)[0]


def reconstruct_inscribed_polygon(lengths) -> np.ndarray:
    """Canonical inscribed polygon with the given side lengths.

    Vertices lie counterclockwise on the circle of radius
    ``circumradius_from_sides(lengths)`` centered at the origin, first
    vertex at (r, 0).
    """
    r, inside = _solve_circumradius(lengths)
    L = [float(x) for x in lengths]
    imax = L.index(max(L))
    thetas = [2.0 * math.asin(min(1.0, l / (2.0 * r))) for l in L]
    if not inside:
        thetas[imax] = 2.0 * math.pi - thetas[imax]
    angles = np.concatenate([[0.0], np.cumsum(thetas[:-1])])
    return np.column_stack([r * np.cos(angles), r * np.sin(angles)])
