"""Explicit witnesses A1 A2 A3 = 1 for three prescribed conjugacy classes.

With A1 = diag(e^{i t1}, e^{-i t1}) and

    A2 = [[ cos t2 + i sin t2 cos b,  sin t2 sin b          ],
          [-sin t2 sin b,             cos t2 - i sin t2 cos b ]],

the product A1 A2 has half-trace cos t1 cos t2 - sin t1 sin t2 cos b, so
C(t3) is reached iff that equals cos t3 for some b.  Taking b in [0, pi]
picks the representative with sin t2 sin b >= 0; A3 closes the loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from trinion.polytope import ANGLE_TOL, FACET_LABELS, TETRAHEDRON, Region
from trinion.su2 import (
    ANGLE_SLOP,
    AngleTriple,
    Representation,
    Su2Element,
    canonical_rep,
    check_angles,
    inverse,
    multiply,
)

CLAMP_TOL = 1e-9

__all__ = [
    "BetaSolution",
    "CLAMP_TOL",
    "Infeasible",
    "SolveOutcome",
    "Witness",
    "beta_from_angles",
    "g2_element",
    "holonomy_condition",
    "outcome_from_json",
    "solve_witness",
]


@dataclass(frozen=True)
class BetaSolution:
    """Rotation angle of the second generator.

    cos_beta_raw is the unclamped solution of the trace equation; beta is
    in [0, pi].  `degenerate` marks triples where sin t1 sin t2 vanishes
    and the trace equation does not pin beta down.
    """

    beta: float
    cos_beta_raw: float
    clamped: bool = False
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "cos_beta_raw": self.cos_beta_raw,
            "clamped": self.clamped,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class Infeasible:
    """No witness exists; `margins` are signed slacks (negative = violated)."""

    margins: tuple[float, ...]
    labels: tuple[str, ...]

    @property
    def violated(self) -> tuple[str, ...]:
        return tuple(l for l, m in zip(self.labels, self.margins) if m < 0)

    def to_json(self) -> dict:
        return {"status": "infeasible", "margins": list(self.margins), "facets": list(self.labels)}


@dataclass(frozen=True)
class Witness:
    rep: Representation
    beta: BetaSolution
    region: Region

    def to_json(self) -> dict:
        return {
            "status": "witness",
            "beta": self.beta.beta,
            "cos_beta_raw": self.beta.cos_beta_raw,
            "clamped": self.beta.clamped,
            "degenerate": self.beta.degenerate,
            "region": self.region.label,
            "rep": self.rep.to_json(),
        }


SolveOutcome = Union[Witness, Infeasible]


def outcome_from_json(data: dict) -> SolveOutcome:
    if data["status"] == "infeasible":
        return Infeasible(tuple(float(m) for m in data["margins"]), tuple(data["facets"]))
    if data["status"] == "witness":
        beta = BetaSolution(
            float(data["beta"]),
            float(data["cos_beta_raw"]),
            bool(data.get("clamped", False)),
            bool(data.get("degenerate", False)),
        )
        return Witness(
            Representation.from_json(data["rep"]), beta, Region.from_label(data["region"])
        )
    raise ValueError(f"unknown status {data['status']!r}")


def _half_angle_products(t: Sequence[float]) -> tuple[float, float]:
    """(sin t1 sin t2 (1 - cos b) / 2, sin t1 sin t2 (1 + cos b) / 2).

    Both are products of sines of half facet slacks, so they are accurate
    to full relative precision right up to the boundary, where the direct
    difference cos t1 cos t2 - cos t3 cancels.
    """
    t1, t2, t3 = t
    upper = math.sin((2 * math.pi - t1 - t2 - t3) / 2) * math.sin((t1 + t2 - t3) / 2)
    lower = math.sin((t3 + t1 - t2) / 2) * math.sin((t3 - t1 + t2) / 2)
    return upper, lower


def _cos_sin_beta(t: Sequence[float], active: Sequence[int] = ()) -> tuple[float, float, float]:
    """beta in [0, pi] with its cosine and sine, for a triple inside the tetrahedron.

    Facets listed in `active` are treated as exactly tight, which pins beta
    to 0 (facets 2, 3) or pi (facets 0, 1) and makes the witness reducible.
    """
    y2, x2 = _half_angle_products(t)
    # tan^2(b / 2) = y2 / x2; rounding-level negatives come from boundary points
    y2, x2 = max(y2, 0.0), max(x2, 0.0)
    if 2 in active or 3 in active:
        y2 = 0.0
    if 0 in active or 1 in active:
        x2 = 0.0
    s = x2 + y2
    if s == 0.0:
        return 0.0, 1.0, 0.0
    return 2.0 * math.atan2(math.sqrt(y2), math.sqrt(x2)), (x2 - y2) / s, 2.0 * math.sqrt(x2 * y2) / s


def g2_element(theta2: float, cos_beta: float, sin_beta: float) -> Su2Element:
    """The second generator: class C(theta2), rotated by beta off the diagonal."""
    s2 = math.sin(theta2)
    return Su2Element(math.cos(theta2), s2 * cos_beta, s2 * sin_beta, 0.0)


def _facet_infeasible(t: AngleTriple) -> Infeasible:
    return Infeasible(TETRAHEDRON.margins(t), FACET_LABELS)


def beta_from_angles(t: Sequence[float], tol: float = CLAMP_TOL) -> BetaSolution | Infeasible:
    """Solve cos t1 cos t2 - sin t1 sin t2 cos b = cos t3 for b in [0, pi].

    Infeasible carries the two cosine slacks cos t3 - cos(t1 + t2) and
    cos(t1 - t2) - cos t3.  Triples with sin t1 sin t2 <= tol must go
    through solve_witness instead.
    """
    t = check_angles(t)
    s12 = math.sin(t.t1) * math.sin(t.t2)
    if s12 <= tol:
        raise ValueError("degenerate triple: sin t1 sin t2 <= tol")
    upper, lower = _half_angle_products(t)
    # 1 - cos b = 2 upper / s12 and 1 + cos b = 2 lower / s12; use the one
    # that is small so the subtraction stays exact near that end
    cos_raw = 1.0 - 2.0 * upper / s12 if upper <= lower else 2.0 * lower / s12 - 1.0
    if abs(cos_raw) > 1.0 + tol:
        return Infeasible(
            (2.0 * upper, 2.0 * lower),
            ("cos(t1 + t2) <= cos t3", "cos t3 <= cos(t1 - t2)"),
        )
    beta, _, _ = _cos_sin_beta(t)
    return BetaSolution(beta, cos_raw, clamped=abs(cos_raw) > 1.0)


def holonomy_condition(t: Sequence[float], tol: float = ANGLE_TOL) -> bool:
    """|t1 - t2| <= t3 <= min(t1 + t2, 2pi - (t1 + t2)); False outside [0, pi]^3."""
    t1, t2, t3 = (float(x) for x in t)
    if not all(-ANGLE_SLOP <= x <= math.pi + ANGLE_SLOP for x in (t1, t2, t3)):
        return False
    return abs(t1 - t2) <= t3 + tol and t3 <= min(t1 + t2, 2 * math.pi - (t1 + t2)) + tol


def solve_witness(t: Sequence[float], tol: float = ANGLE_TOL) -> SolveOutcome:
    """Build A1, A2, A3 in C(t1), C(t2), C(t3) with A1 A2 A3 = 1, or report why not.

    Feasibility comes from the trace equation when sin t1 sin t2 > tol and
    from the holonomy inequalities otherwise; the matrices themselves are
    always assembled from the half-angle form of beta, which is valid on
    the whole tetrahedron including its degenerate edges.
    """
    t = check_angles(t)
    s12 = math.sin(t.t1) * math.sin(t.t2)
    if s12 > tol:
        sol = beta_from_angles(t, tol)
        if isinstance(sol, Infeasible):
            return _facet_infeasible(t)
    elif not holonomy_condition(t, tol):
        return _facet_infeasible(t)

    # the trace equation can accept a point a facet rejects by slightly more
    # than tol; widening to the violation puts that facet among the active ones
    region = TETRAHEDRON.classify(t, max(tol, -min(TETRAHEDRON.margins(t))))
    beta, cos_b, sin_b = _cos_sin_beta(t, region.active)
    if s12 > tol:
        sol = BetaSolution(beta, sol.cos_beta_raw, sol.clamped)
    else:
        sol = BetaSolution(beta, cos_b, degenerate=True)

    a1 = canonical_rep(t.t1)
    a2 = g2_element(t.t2, cos_b, sin_b)
    rep = Representation(a1, a2, inverse(multiply(a1, a2)))
    return Witness(rep, sol, region)
