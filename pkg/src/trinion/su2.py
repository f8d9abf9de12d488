"""Unit-quaternion arithmetic on SU(2), conjugacy classes and the moment map.

An element a + b i + c j + d k is identified with the matrix

    [[ a + b i,  c + d i],
     [-c + d i,  a - b i]]

so the quaternion product is the matrix product, the scalar part is half
the trace, and conjugation rotates the vector part (b, c, d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

PRODUCT_TOL = 1e-9
CONJUGACY_TOL = 1e-8
# slack allowed when an input angle lands a rounding error outside [0, pi]
ANGLE_SLOP = 1e-12

__all__ = [
    "ANGLE_SLOP",
    "AngleTriple",
    "CONJUGACY_TOL",
    "DomainError",
    "IDENTITY",
    "PRODUCT_TOL",
    "ProductError",
    "Representation",
    "Su2Element",
    "canonical_rep",
    "check_angle",
    "check_angles",
    "class_angle",
    "commutator",
    "commutator_distance",
    "conjugate_by",
    "conjugator_between",
    "frobenius_distance",
    "haar_sample",
    "haar_samples",
    "inverse",
    "moment_map",
    "multiply",
]


class DomainError(ValueError):
    """An angle or parameter lies outside its admissible range."""


class ProductError(ValueError):
    """A matrix triple does not multiply to the identity."""


@dataclass(frozen=True, slots=True)
class Su2Element:
    """A unit quaternion; renormalized on construction."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        a, b, c, d = float(self.a), float(self.b), float(self.c), float(self.d)
        n = math.sqrt(a * a + b * b + c * c + d * d)
        if not math.isfinite(n) or n == 0.0:
            raise ValueError(f"cannot normalize quaternion {(a, b, c, d)!r}")
        if abs(n - 1.0) <= 4e-16:
            # already unit up to rounding; rescaling would only perturb the last bit
            n = 1.0
        object.__setattr__(self, "a", a / n)
        object.__setattr__(self, "b", b / n)
        object.__setattr__(self, "c", c / n)
        object.__setattr__(self, "d", d / n)

    @classmethod
    def identity(cls) -> Su2Element:
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_matrix(cls, m) -> Su2Element:
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        return cls(m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag)

    @classmethod
    def from_json(cls, data: Sequence[float]) -> Su2Element:
        if len(data) != 4:
            raise ValueError("an SU(2) element is serialized as [a, b, c, d]")
        return cls(*(float(x) for x in data))

    def to_json(self) -> list[float]:
        return [self.a, self.b, self.c, self.d]

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.b, self.c, self.d)

    @property
    def trace(self) -> float:
        return 2.0 * self.a

    def norm(self) -> float:
        return math.sqrt(self.a**2 + self.b**2 + self.c**2 + self.d**2)

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [complex(self.a, self.b), complex(self.c, self.d)],
                [complex(-self.c, self.d), complex(self.a, -self.b)],
            ]
        )

    def is_central(self, tol: float = CONJUGACY_TOL) -> bool:
        return math.hypot(self.b, self.c, self.d) <= tol

    def __mul__(self, other: Su2Element) -> Su2Element:
        return multiply(self, other)

    def __neg__(self) -> Su2Element:
        return Su2Element(-self.a, -self.b, -self.c, -self.d)

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))


IDENTITY = Su2Element.identity()


class AngleTriple(NamedTuple):
    """Candidate holonomy angles (t1, t2, t3), radians in [0, pi]."""

    t1: float
    t2: float
    t3: float

    def to_json(self) -> list[float]:
        return [self.t1, self.t2, self.t3]

    @classmethod
    def from_json(cls, data: Sequence[float]) -> AngleTriple:
        return check_angles(data)


def check_angle(theta: float) -> float:
    theta = float(theta)
    if not (-ANGLE_SLOP <= theta <= math.pi + ANGLE_SLOP):
        raise DomainError(f"angle {theta!r} outside [0, pi]")
    return min(max(theta, 0.0), math.pi)


def check_angles(t: Iterable[float]) -> AngleTriple:
    """Validate three angles in [0, pi], clipping rounding-level overshoot."""
    vals = tuple(t)
    if len(vals) != 3:
        raise DomainError(f"expected three angles, got {len(vals)}")
    return AngleTriple(*(check_angle(x) for x in vals))


def multiply(x: Su2Element, y: Su2Element) -> Su2Element:
    return Su2Element(
        x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
        x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
        x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
        x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a,
    )


def inverse(x: Su2Element) -> Su2Element:
    # the adjugate of a determinant-one matrix; for unit quaternions, the conjugate
    return Su2Element(x.a, -x.b, -x.c, -x.d)


def class_angle(x: Su2Element) -> float:
    """Angle t in [0, pi] with trace(x) = 2 cos t.

    Evaluated as atan2(|vector part|, scalar part), which equals
    arccos(trace / 2) on unit quaternions but keeps full precision near
    the central elements where arccos loses half the digits.
    """
    return math.atan2(math.hypot(x.b, x.c, x.d), x.a)


def canonical_rep(theta: float) -> Su2Element:
    """The diagonal representative diag(e^{i theta}, e^{-i theta}) of C(theta)."""
    theta = check_angle(theta)
    return Su2Element(math.cos(theta), math.sin(theta), 0.0, 0.0)


def conjugate_by(u: Su2Element, x: Su2Element) -> Su2Element:
    """u x u^-1."""
    return multiply(multiply(u, x), inverse(u))


def frobenius_distance(x: Su2Element, y: Su2Element) -> float:
    """Frobenius norm of the difference of the matrix views."""
    # ||M(q)||_F^2 = 2 |q|^2 for the matrix view of any quaternion q
    return math.sqrt(2.0) * math.sqrt(
        (x.a - y.a) ** 2 + (x.b - y.b) ** 2 + (x.c - y.c) ** 2 + (x.d - y.d) ** 2
    )


def commutator(x: Su2Element, y: Su2Element) -> Su2Element:
    return multiply(multiply(x, y), multiply(inverse(x), inverse(y)))


def commutator_distance(x: Su2Element, y: Su2Element) -> float:
    return frobenius_distance(commutator(x, y), IDENTITY)


def haar_sample(rng: np.random.Generator) -> Su2Element:
    """Haar-random element: a uniform point of the unit 3-sphere."""
    while True:
        q = rng.standard_normal(4)
        if np.dot(q, q) > 1e-24:
            return Su2Element(*q)


def haar_samples(rng: np.random.Generator, n: int) -> list[Su2Element]:
    q = rng.standard_normal((n, 4))
    return [Su2Element(*row) for row in q]


@dataclass(frozen=True, slots=True)
class Representation:
    """A point of Hom(pi_1, SU(2)): images of c1, c2, c3 with c1 c2 c3 = 1."""

    a1: Su2Element
    a2: Su2Element
    a3: Su2Element

    def __post_init__(self):
        err = self.product_error()
        if err > PRODUCT_TOL:
            raise ProductError(f"a1 a2 a3 is {err:.3g} away from the identity")

    @classmethod
    def from_pair(cls, a1: Su2Element, a2: Su2Element) -> Representation:
        return cls(a1, a2, inverse(multiply(a1, a2)))

    def product(self) -> Su2Element:
        return multiply(multiply(self.a1, self.a2), self.a3)

    def product_error(self) -> float:
        return frobenius_distance(self.product(), IDENTITY)

    def conjugate(self, u: Su2Element) -> Representation:
        return Representation(
            conjugate_by(u, self.a1), conjugate_by(u, self.a2), conjugate_by(u, self.a3)
        )

    def __iter__(self):
        return iter((self.a1, self.a2, self.a3))

    def to_json(self) -> dict:
        return {"a1": self.a1.to_json(), "a2": self.a2.to_json(), "a3": self.a3.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> Representation:
        return cls(*(Su2Element.from_json(data[k]) for k in ("a1", "a2", "a3")))


def moment_map(r: Iterable[Su2Element], tol: float = PRODUCT_TOL) -> AngleTriple:
    """Class angles of the three boundary holonomies.

    Accepts a Representation or any three elements; raises ProductError if
    their product is farther than `tol` from the identity.
    """
    a1, a2, a3 = r
    err = frobenius_distance(multiply(multiply(a1, a2), a3), IDENTITY)
    if err > tol:
        raise ProductError(f"a1 a2 a3 is {err:.3g} away from the identity")
    return AngleTriple(class_angle(a1), class_angle(a2), class_angle(a3))


def _rotate(u: Su2Element, v: tuple[float, float, float]) -> tuple[float, float, float]:
    """Vector part of u (0, v) u^-1, i.e. v rotated by the SO(3) image of u."""
    qx, qy, qz = u.b, u.c, u.d
    vx, vy, vz = v
    # t = 2 q x v;  v' = v + a t + q x t
    tx = 2.0 * (qy * vz - qz * vy)
    ty = 2.0 * (qz * vx - qx * vz)
    tz = 2.0 * (qx * vy - qy * vx)
    return (
        vx + u.a * tx + (qy * tz - qz * ty),
        vy + u.a * ty + (qz * tx - qx * tz),
        vz + u.a * tz + (qx * ty - qy * tx),
    )


def _align_to_i(v: tuple[float, float, float]) -> Su2Element:
    """A unit quaternion whose conjugation turns direction v onto +i."""
    n = math.hypot(*v)
    x, y, z = (c / n for c in v)
    if x >= 0.0:
        # rotation about v x i through the angle between them
        return Su2Element(1.0 + x, 0.0, z, -y)
    # flip through k first so the half-angle formula stays well conditioned
    return multiply(Su2Element(1.0 - x, 0.0, z, y), Su2Element(0.0, 0.0, 0.0, 1.0))


def conjugator_between(
    r: Iterable[Su2Element], s: Iterable[Su2Element], tol: float = CONJUGACY_TOL
) -> Su2Element | None:
    """Find u with u r_i u^-1 = s_i for all three components, or None.

    The first non-central component of r is rotated onto the i-axis, as is
    the matching component of s; the leftover rotation about i is fixed by
    the off-diagonal phase of the next non-collinear component.  A central
    triple is matched by the identity.  Whatever u comes out is checked
    against every component before it is returned.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    r, s = tuple(r), tuple(s)
    if len(r) != 3 or len(s) != 3:
        raise ValueError("expected triples")
    if any(abs(x.a - y.a) > tol for x, y in zip(r, s)):
        return None

    primary = next((i for i, x in enumerate(r) if not x.is_central(tol)), None)
    if primary is None:
        u = IDENTITY
    else:
        if s[primary].is_central(0.0):
            return None
        wr = _align_to_i(r[primary].vector)
        ws = _align_to_i(s[primary].vector)
        phi = 0.0
        best = tol
        for i in range(3):
            if i == primary:
                continue
            p = _rotate(wr, r[i].vector)
            q = _rotate(ws, s[i].vector)
            size = math.hypot(p[1], p[2])
            if size > best:
                best = size
                phi = math.atan2(q[2], q[1]) - math.atan2(p[2], p[1])
        torus = Su2Element(math.cos(phi / 2), math.sin(phi / 2), 0.0, 0.0)
        u = multiply(inverse(ws), multiply(torus, wr))

    err = max(frobenius_distance(conjugate_by(u, x), y) for x, y in zip(r, s))
    return u if err <= tol else None
