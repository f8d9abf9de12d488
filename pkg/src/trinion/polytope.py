"""The moment tetrahedron in [0, pi]^3, its normalized model, and the kernel lattice.

The tetrahedron has vertices S = (0,0,0), R = (pi,pi,0), Q = (0,pi,pi),
P = (pi,0,pi) and is cut out by four inequalities normal . t <= offset.
A point of the tetrahedron lies on its boundary exactly when the
representations over it are reducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from trinion._blocks import block_rng, run_blocks
from trinion.su2 import ANGLE_SLOP, DomainError, check_angles

ANGLE_TOL = 1e-9
LATTICE_TOL = 1e-9

__all__ = [
    "ANGLE_TOL",
    "FACET_LABELS",
    "HalfSpace",
    "LATTICE",
    "Lattice",
    "Region",
    "TETRAHEDRON",
    "Tetrahedron",
    "character_coordinate",
    "classify",
    "classify_exact",
    "contains",
    "in_normalized_image",
    "inside_fraction",
    "lattice_contains",
    "lattice_reduce",
    "mc_volume_fraction",
    "normalized",
]


@dataclass(frozen=True)
class HalfSpace:
    """normal . t <= offset, with the offset an integer multiple of pi."""

    normal: tuple[int, int, int]
    offset_pi: int = 0

    def __post_init__(self):
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    @property
    def offset(self) -> float:
        return self.offset_pi * math.pi

    def margin(self, t: Sequence[float]) -> float:
        """offset - normal . t; nonnegative on the feasible side."""
        n = self.normal
        return self.offset - (n[0] * t[0] + n[1] * t[1] + n[2] * t[2])

    def to_json(self) -> dict:
        return {"normal": [float(x) for x in self.normal], "offset": self.offset}


# Inequalities in the order t1 - t2 <= t3, -t1 + t2 <= t3, t3 <= t1 + t2,
# t3 <= 2pi - (t1 + t2).
FACETS = (
    HalfSpace((1, -1, -1), 0),
    HalfSpace((-1, 1, -1), 0),
    HalfSpace((-1, -1, 1), 0),
    HalfSpace((1, 1, 1), 2),
)
FACET_LABELS = (
    "t1 - t2 <= t3",
    "-t1 + t2 <= t3",
    "t3 <= t1 + t2",
    "t3 <= 2pi - (t1 + t2)",
)
# Bounding planes written as equations: t3 - t1 + t2 = 0, t3 + t1 - t2 = 0,
# t3 - t1 - t2 = 0, t3 + t1 + t2 = 2pi.  Kept separately and matched
# against FACETS when the tetrahedron is built.
BOUNDARY_PLANES = (
    ((-1, 1, 1), 0),
    ((1, -1, 1), 0),
    ((-1, -1, 1), 0),
    ((1, 1, 1), 2),
)
# vertex coordinates in units of pi
VERTICES_PI = {
    "S": (0, 0, 0),
    "R": (1, 1, 0),
    "Q": (0, 1, 1),
    "P": (1, 0, 1),
}


@dataclass(frozen=True)
class Region:
    """Where a point sits relative to the tetrahedron.

    kind is one of "interior", "facet", "edge", "vertex", "exterior";
    `active` lists the facet indices holding with equality and `violated`
    those broken beyond tolerance.
    """

    kind: str
    active: tuple[int, ...] = ()
    violated: tuple[int, ...] = ()
    vertex: str | None = None

    @property
    def label(self) -> str:
        if self.kind == "vertex":
            return f"vertex:{self.vertex}"
        if self.kind in ("facet", "edge"):
            return f"{self.kind}:" + ",".join(str(k) for k in self.active)
        if self.kind == "exterior":
            return "exterior:" + ",".join(str(k) for k in self.violated)
        return self.kind

    @property
    def on_boundary(self) -> bool:
        return self.kind in ("facet", "edge", "vertex")

    @classmethod
    def from_label(cls, label: str) -> Region:
        kind, _, rest = label.partition(":")
        idx = tuple(int(k) for k in rest.split(",")) if rest and kind != "vertex" else ()
        if kind == "interior":
            return cls("interior")
        if kind in ("facet", "edge"):
            return cls(kind, active=idx)
        if kind == "vertex":
            active = tuple(k for k in range(4) if k != _OPPOSITE_FACET[rest])
            return cls("vertex", active=active, vertex=rest)
        if kind == "exterior":
            return cls("exterior", violated=idx)
        raise ValueError(f"unknown region label {label!r}")

    def __str__(self) -> str:
        return self.label


def _opposite_facets() -> dict[str, int]:
    out = {}
    for name, v in VERTICES_PI.items():
        slack = [f.offset_pi - sum(n * x for n, x in zip(f.normal, v)) for f in FACETS]
        out[name] = next(k for k, m in enumerate(slack) if m != 0)
    return out


_OPPOSITE_FACET = _opposite_facets()
_VERTEX_BY_OPPOSITE = {k: name for name, k in _OPPOSITE_FACET.items()}


def _region_from_margins(margins: Sequence, tol) -> Region:
    violated = tuple(k for k, m in enumerate(margins) if m < -tol)
    if violated:
        return Region("exterior", violated=violated)
    active = tuple(k for k, m in enumerate(margins) if m <= tol)
    if not active:
        return Region("interior")
    if len(active) == 1:
        return Region("facet", active)
    if len(active) == 2:
        return Region("edge", active)
    if len(active) == 3:
        missing = ({0, 1, 2, 3} - set(active)).pop()
        return Region("vertex", active, vertex=_VERTEX_BY_OPPOSITE[missing])
    raise ValueError("all four facets active; tolerance is too large")


def _check_facet_forms() -> None:
    """The inequality list and the plane list must describe the same facets."""

    def projective(normal, offset):
        v = np.array([*normal, offset], dtype=float)
        return v / np.linalg.norm(v)

    ineq = [projective(f.normal, f.offset_pi) for f in FACETS]
    planes = [projective(n, o) for n, o in BOUNDARY_PLANES]
    for v in ineq:
        if not any(abs(abs(np.dot(v, p)) - 1.0) < 1e-12 for p in planes):
            raise RuntimeError("facet inequality has no matching boundary plane")
    for p in planes:
        if not any(abs(abs(np.dot(v, p)) - 1.0) < 1e-12 for v in ineq):
            raise RuntimeError("boundary plane has no matching facet inequality")
    for name, v in VERTICES_PI.items():
        slack = [f.offset_pi - sum(n * x for n, x in zip(f.normal, v)) for f in FACETS]
        if min(slack) < 0 or sum(1 for m in slack if m == 0) != 3:
            raise RuntimeError(f"vertex {name} is not on exactly three facets")


class Tetrahedron:
    """The moment tetrahedron; immutable, use the TETRAHEDRON instance."""

    def __init__(self):
        _check_facet_forms()
        self.facets: tuple[HalfSpace, ...] = FACETS
        self.labels: tuple[str, ...] = FACET_LABELS
        self.vertex_names: tuple[str, ...] = tuple(VERTICES_PI)
        self.vertices: dict[str, tuple[float, float, float]] = {
            name: tuple(x * math.pi for x in v) for name, v in VERTICES_PI.items()
        }
        self._normals = np.array([f.normal for f in FACETS], dtype=float)
        self._offsets = np.array([f.offset for f in FACETS])

    def margins(self, t: Sequence[float]) -> tuple[float, float, float, float]:
        return tuple(f.margin(t) for f in self.facets)

    def margins_array(self, points) -> np.ndarray:
        """Facet margins for an (N, 3) array of points, shape (N, 4)."""
        pts = np.asarray(points, dtype=float)
        return self._offsets - pts @ self._normals.T

    def contains(self, t: Sequence[float], tol: float = ANGLE_TOL) -> bool:
        t = check_angles(t)
        return min(self.margins(t)) >= -tol

    def classify(self, t: Sequence[float], tol: float = ANGLE_TOL) -> Region:
        t = check_angles(t)
        return _region_from_margins(self.margins(t), tol)

    def facet_vertices(self, k: int) -> tuple[str, ...]:
        """Names of the three vertices on facet k, in S, R, Q, P order."""
        return tuple(n for n in self.vertex_names if _OPPOSITE_FACET[n] != k)

    def faces(self) -> list[tuple[int, int, int]]:
        """Vertex index triples for each facet, ordered counterclockwise from outside."""
        coords = np.array([VERTICES_PI[n] for n in self.vertex_names], dtype=float)
        out = []
        for k, f in enumerate(self.facets):
            i, j, l = (self.vertex_names.index(n) for n in self.facet_vertices(k))
            turn = np.cross(coords[j] - coords[i], coords[l] - coords[i])
            out.append((i, j, l) if np.dot(turn, f.normal) > 0 else (i, l, j))
        return out

    def to_json(self) -> dict:
        return {
            "vertices": [list(self.vertices[n]) for n in self.vertex_names],
            "facets": [f.to_json() for f in self.facets],
        }

    def to_off(self) -> str:
        lines = ["OFF", "4 4 6"]
        for n in self.vertex_names:
            lines.append(" ".join(repr(x) for x in self.vertices[n]))
        for face in self.faces():
            lines.append("3 " + " ".join(str(i) for i in face))
        return "\n".join(lines) + "\n"


TETRAHEDRON = Tetrahedron()


def contains(t: Sequence[float], tol: float = ANGLE_TOL) -> bool:
    """True iff all four facet inequalities hold within tol."""
    return TETRAHEDRON.contains(t, tol)


def classify(t: Sequence[float], tol: float = ANGLE_TOL) -> Region:
    return TETRAHEDRON.classify(t, tol)


def exact_margins(multiples: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Facet margins in units of pi, for angles given as exact multiples of pi."""
    f = [Fraction(x) for x in multiples]
    if len(f) != 3 or any(x < 0 or x > 1 for x in f):
        raise DomainError("multiples of pi must lie in [0, 1]")
    return tuple(
        Fraction(h.offset_pi) - sum(n * x for n, x in zip(h.normal, f)) for h in FACETS
    )


def classify_exact(multiples: Sequence[Fraction]) -> Region:
    """classify() with exact rational arithmetic and zero tolerance."""
    return _region_from_margins(exact_margins(multiples), 0)


def normalized(t: Sequence[float]) -> tuple[float, float, float]:
    """Angles divided by pi: the coordinates h_j in [0, 1]^3."""
    t = check_angles(t)
    return (t[0] / math.pi, t[1] / math.pi, t[2] / math.pi)


def in_normalized_image(h: Sequence[float], tol: float = ANGLE_TOL) -> bool:
    """|h1 - h2| <= h3 <= h1 + h2 and h1 + h2 + h3 <= 2, within tol."""
    h1, h2, h3 = h
    return abs(h1 - h2) <= h3 + tol and h3 <= h1 + h2 + tol and h1 + h2 + h3 <= 2 + tol


def character_coordinate(h: float) -> float:
    """The trace function 2 cos(pi h) of a normalized angle."""
    h = float(h)
    if not (-ANGLE_SLOP <= h <= 1 + ANGLE_SLOP):
        raise DomainError(f"normalized angle {h!r} outside [0, 1]")
    return 2.0 * math.cos(math.pi * min(max(h, 0.0), 1.0))


def inside_fraction(points, tol: float = 0.0) -> float:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(pts) == 0:
        raise ValueError("need at least one point")
    inside = TETRAHEDRON.margins_array(pts).min(axis=1) >= -tol
    return float(np.count_nonzero(inside)) / len(pts)


def _count_inside_block(seed: int, index: int, size: int) -> int:
    pts = block_rng(seed, index).uniform(0.0, math.pi, size=(size, 3))
    return int(np.count_nonzero(TETRAHEDRON.margins_array(pts).min(axis=1) >= 0.0))


def mc_volume_fraction(samples: int, seed: int = 0, workers: int = 1) -> float:
    """Fraction of uniform cube points landing in the tetrahedron (tends to 1/3)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    return sum(run_blocks(_count_inside_block, samples, seed, workers)) / samples


E0 = (0.5, 0.5, 0.5)
# residues this close to 1 (or to the e0 cut) are treated as sitting on the cut
_SNAP = 1e-12


def _mod1(v: np.ndarray) -> np.ndarray:
    w = v - np.floor(v)
    w[w >= 1.0 - _SNAP] = 0.0
    return w


@dataclass(frozen=True)
class Lattice:
    """The kernel lattice Z^3 + Z e0 with e0 = (1/2, 1/2, 1/2)."""

    generators: tuple[tuple[float, float, float], ...] = (
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (0.0, 0.0, 1.0),
        E0,
    )
    basis: tuple[tuple[float, float, float], ...] = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), E0)

    def covolume(self) -> float:
        return abs(float(np.linalg.det(np.array(self.basis))))

    def contains(self, v: Iterable[float], tol: float = LATTICE_TOL) -> bool:
        v = np.asarray(tuple(v), dtype=float)
        if v.shape != (3,) or not np.all(np.isfinite(v)):
            raise ValueError("expected a finite 3-vector")
        for shift in (v, v - np.array(E0)):
            if np.all(np.abs(shift - np.round(shift)) <= tol):
                return True
        return False

    def reduce(self, v: Iterable[float]) -> tuple[float, float, float]:
        """Representative of v mod the lattice in [0, 1/2) x [0, 1)^2."""
        v = np.asarray(tuple(v), dtype=float)
        if v.shape != (3,) or not np.all(np.isfinite(v)):
            raise ValueError("expected a finite 3-vector")
        w = _mod1(v)
        if w[0] >= 0.5 - _SNAP:
            w = _mod1(w - np.array(E0))
        return tuple(float(x) for x in w)


LATTICE = Lattice()


def lattice_contains(v: Iterable[float], tol: float = LATTICE_TOL) -> bool:
    return LATTICE.contains(v, tol)


def lattice_reduce(v: Iterable[float]) -> tuple[float, float, float]:
    return LATTICE.reduce(v)
