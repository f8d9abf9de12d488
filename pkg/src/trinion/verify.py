"""Brute-force oracles and seeded scans that check the solver and the polytope.

The oracle never touches the quaternion code: it rebuilds the two
generators as complex 2x2 matrices from the angles, multiplies them with
numpy, and searches over the rotation angle beta for the best match of
the third class angle.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from trinion._blocks import block_rng, run_blocks
from trinion.polytope import TETRAHEDRON
from trinion.solver import Witness, solve_witness
from trinion.su2 import (
    Representation,
    Su2Element,
    commutator_distance,
    conjugate_by,
    conjugator_between,
    frobenius_distance,
    haar_sample,
    moment_map,
)

COMMUTE_TOL = 1e-9
NONCOMMUTE_MIN = 1e-6
CONJUGATOR_TOL = 1e-8
# barycentric weights below this are rejected, keeping samples off lower strata
MIN_WEIGHT = 0.05

__all__ = [
    "OracleConfig",
    "SamplingReport",
    "boundary_reducibility_scan",
    "forward_check",
    "forward_scan",
    "generator_matrices",
    "grid_agreement_scan",
    "injectivity_scan",
    "oracle_gaps",
    "oracle_solvable",
]


@dataclass(frozen=True)
class OracleConfig:
    beta_grid: int = 720
    refine_iters: int = 40
    feasibility_margin: float = 1e-4

    def __post_init__(self):
        if self.beta_grid < 3:
            raise ValueError("beta_grid must be >= 3")
        if not self.feasibility_margin > 0:
            raise ValueError("feasibility_margin must be positive")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be >= 0")


@dataclass
class SamplingReport:
    kind: str
    samples: int
    violations: int
    worst_slack: float
    seed: int | None
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out

    @classmethod
    def from_json(cls, data: dict) -> SamplingReport:
        data = {k: v for k, v in data.items() if k != "passed"}
        return cls(**data)


def _generator_entries(t1, t2, beta):
    """Entries ((g00, g01, g10, g11), (h00, h01, h10, h11)) of the two generators.

    g is diag(e^{i t1}, e^{-i t1}); h is C(t2) turned by beta off the
    diagonal.  Arrays broadcast against each other.
    """
    c1, s1 = np.cos(t1), np.sin(t1)
    c2, s2 = np.cos(t2), np.sin(t2)
    cb, sb = np.cos(beta), np.sin(beta)
    g = (c1 + 1j * s1, 0j, 0j, c1 - 1j * s1)
    h = (c2 + 1j * (s2 * cb), s2 * sb + 0j, -(s2 * sb) + 0j, c2 - 1j * (s2 * cb))
    return g, h


def generator_matrices(t1: float, t2: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    g, h = _generator_entries(t1, t2, beta)
    return np.array(g, dtype=complex).reshape(2, 2), np.array(h, dtype=complex).reshape(2, 2)


def _product_angle(t1, t2, beta) -> np.ndarray:
    """Class angle of the 2x2 product g h, from its trace."""
    (g00, g01, g10, g11), (h00, h01, h10, h11) = _generator_entries(t1, t2, beta)
    tr = (g00 * h00 + g01 * h10) + (g10 * h01 + g11 * h11)
    return np.arccos(np.clip(tr.real / 2.0, -1.0, 1.0))


def oracle_gaps(points, cfg: OracleConfig = OracleConfig(), chunk: int = 512) -> np.ndarray:
    """Smallest |class angle of g1 g2(beta) - t3| over beta, per point.

    A grid scan over [0, 2pi) is followed by bisection on any sign change
    next to the best grid node.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    grid = np.linspace(0.0, 2 * math.pi, cfg.beta_grid, endpoint=False)
    h = grid[1] - grid[0]
    out = np.empty(len(pts))
    for start in range(0, len(pts), chunk):
        p = pts[start : start + chunk]
        t1, t2, t3 = p[:, 0:1], p[:, 1:2], p[:, 2:3]
        f = _product_angle(t1, t2, grid[None, :]) - t3
        k = np.argmin(np.abs(f), axis=1)
        rows = np.arange(len(p))
        best = np.abs(f[rows, k])
        b0 = grid[k]
        f0 = f[rows, k]
        fl = f[rows, (k - 1) % cfg.beta_grid]
        fr = f[rows, (k + 1) % cfg.beta_grid]
        # bracket with a sign change on the left or right of the best node
        use_left = np.sign(fl) != np.sign(f0)
        use_right = ~use_left & (np.sign(fr) != np.sign(f0))
        lo = np.where(use_left, b0 - h, b0)
        hi = np.where(use_left, b0, b0 + h)
        bracket = use_left | use_right
        flo = np.where(use_left, fl, f0)
        t1f, t2f, t3f = p[:, 0], p[:, 1], p[:, 2]
        for _ in range(cfg.refine_iters):
            mid = 0.5 * (lo + hi)
            fm = _product_angle(t1f, t2f, mid) - t3f
            left = np.sign(fm) == np.sign(flo)
            lo = np.where(left, mid, lo)
            flo = np.where(left, fm, flo)
            hi = np.where(left, hi, mid)
        refined = np.abs(_product_angle(t1f, t2f, 0.5 * (lo + hi)) - t3f)
        out[start : start + chunk] = np.where(bracket, np.minimum(best, refined), best)
    return out


def oracle_solvable(t: Sequence[float], cfg: OracleConfig = OracleConfig()) -> tuple[bool, float]:
    """(solvable, achieved gap) by direct search over beta."""
    gap = float(oracle_gaps([tuple(t)], cfg)[0])
    return gap < cfg.feasibility_margin, gap


def _boundary_distance(points) -> np.ndarray:
    """Distance to the nearest facet plane."""
    m = TETRAHEDRON.margins_array(points)
    norms = np.array([math.sqrt(sum(x * x for x in f.normal)) for f in TETRAHEDRON.facets])
    return np.min(np.abs(m) / norms, axis=1)


def grid_agreement_scan(
    n: int = 51,
    cfg: OracleConfig = OracleConfig(),
    tol: float = 1e-9,
    band: float | None = None,
) -> SamplingReport:
    """Solver vs. membership vs. oracle on the uniform n^3 grid of [0, pi]^3.

    Solver and membership must agree everywhere.  The oracle must agree
    with the solver wherever the point is farther than `band` (default
    2 x feasibility margin) from every facet plane; closer disagreements
    are only counted in the details.
    """
    band = 2 * cfg.feasibility_margin if band is None else band
    axis = np.linspace(0.0, math.pi, n)
    pts = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)

    solver_ok = np.array([isinstance(solve_witness(p, tol), Witness) for p in pts])
    inside = TETRAHEDRON.margins_array(pts).min(axis=1) >= -tol
    oracle_ok = oracle_gaps(pts, cfg) < cfg.feasibility_margin
    far = _boundary_distance(pts) > band

    solver_vs_polytope = int(np.count_nonzero(solver_ok != inside))
    oracle_mismatch = solver_ok != oracle_ok
    hard = int(np.count_nonzero(oracle_mismatch & far))
    soft = int(np.count_nonzero(oracle_mismatch & ~far))
    return SamplingReport(
        kind="grid_agreement",
        samples=len(pts),
        violations=solver_vs_polytope + hard,
        worst_slack=0.0,
        seed=None,
        params={"n": n, "tol": tol, "band": band, **asdict(cfg)},
        details={
            "inside": int(np.count_nonzero(inside)),
            "solver_vs_polytope_mismatches": solver_vs_polytope,
            "oracle_mismatches_outside_band": hard,
            "oracle_mismatches_in_band": soft,
        },
    )


def _forward_block(seed: int, index: int, size: int) -> tuple[int, int, float]:
    rng = block_rng(seed, index)
    violations, worst = 0, math.inf
    for _ in range(size):
        rep = Representation.from_pair(haar_sample(rng), haar_sample(rng))
        slack = min(TETRAHEDRON.margins(moment_map(rep)))
        worst = min(worst, slack)
        violations += slack < -1e-9
    return size, violations, worst


def forward_check(pairs: Iterable[tuple[Su2Element, Su2Element]]) -> SamplingReport:
    """Moment-map image of explicit (A1, A2) pairs, with A3 = (A1 A2)^-1."""
    n, violations, worst, triples = 0, 0, math.inf, []
    for a1, a2 in pairs:
        t = moment_map(Representation.from_pair(a1, a2))
        slack = min(TETRAHEDRON.margins(t))
        triples.append(list(t))
        worst = min(worst, slack)
        violations += slack < -1e-9
        n += 1
    return SamplingReport("forward", n, violations, worst, None, details={"triples": triples})


def forward_scan(n: int, seed: int = 0, workers: int = 1) -> SamplingReport:
    """n Haar-random triples; every moment-map image must lie in the tetrahedron."""
    if n < 1:
        raise ValueError("n must be >= 1")
    parts = run_blocks(_forward_block, n, seed, workers)
    return SamplingReport(
        kind="forward",
        samples=sum(p[0] for p in parts),
        violations=sum(p[1] for p in parts),
        worst_slack=min(p[2] for p in parts),
        seed=seed,
        params={"n": n, "slack_tol": 1e-9},
    )


def _barycentric(rng: np.random.Generator, k: int) -> np.ndarray:
    while True:
        w = rng.dirichlet(np.ones(k))
        if w.min() >= MIN_WEIGHT:
            return w


def _interior_point(rng: np.random.Generator) -> tuple[float, float, float]:
    verts = np.array([TETRAHEDRON.vertices[v] for v in TETRAHEDRON.vertex_names])
    return tuple(float(x) for x in _barycentric(rng, 4) @ verts)


def _facet_point(rng: np.random.Generator, k: int) -> tuple[float, float, float]:
    verts = np.array([TETRAHEDRON.vertices[v] for v in TETRAHEDRON.facet_vertices(k)])
    p = np.clip(_barycentric(rng, 3) @ verts, 0.0, math.pi)
    return tuple(float(x) for x in p)


def _max_pair_commutator(rep: Representation) -> float:
    return max(
        commutator_distance(rep.a1, rep.a2),
        commutator_distance(rep.a1, rep.a3),
        commutator_distance(rep.a2, rep.a3),
    )


def boundary_reducibility_scan(m: int, seed: int = 0) -> SamplingReport:
    """Facet points must give commuting witnesses, interior points must not."""
    if m < 1:
        raise ValueError("m must be >= 1")
    violations = 0
    facet_worst = 0.0
    per_facet = []
    for k in range(4):
        rng = block_rng(seed, k)
        worst_k = 0.0
        for _ in range(m):
            out = solve_witness(_facet_point(rng, k))
            if not isinstance(out, Witness) or out.region.kind != "facet":
                violations += 1
                continue
            d = _max_pair_commutator(out.rep)
            worst_k = max(worst_k, d)
            violations += d >= COMMUTE_TOL
        per_facet.append(worst_k)
        facet_worst = max(facet_worst, worst_k)

    rng = block_rng(seed, 4)
    interior_min = math.inf
    for _ in range(m):
        out = solve_witness(_interior_point(rng))
        if not isinstance(out, Witness) or out.region.kind != "interior":
            violations += 1
            continue
        d = commutator_distance(out.rep.a1, out.rep.a2)
        interior_min = min(interior_min, d)
        violations += d <= NONCOMMUTE_MIN

    return SamplingReport(
        kind="boundary_reducibility",
        samples=5 * m,
        violations=violations,
        worst_slack=min(COMMUTE_TOL - facet_worst, interior_min - NONCOMMUTE_MIN),
        seed=seed,
        params={"m": m, "commute_tol": COMMUTE_TOL, "noncommute_min": NONCOMMUTE_MIN},
        details={
            "max_facet_commutator": facet_worst,
            "max_commutator_per_facet": per_facet,
            "min_interior_commutator": interior_min,
        },
    )


def _conjugation_error(u: Su2Element, r: Representation, s: Representation) -> float:
    return max(frobenius_distance(conjugate_by(u, x), y) for x, y in zip(r, s))


def injectivity_scan(k: int, seed: int = 0) -> SamplingReport:
    """Conjugate triples are recognized as conjugate; distinct angles never are.

    Three parts: a witness against a Haar-conjugated copy of itself; a
    Haar-random triple against the witness built from its own angles; and
    witnesses for angle triples at least 1e-3 apart.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    violations = 0
    worst_err = 0.0

    rng = block_rng(seed, 0)
    for _ in range(k):
        w = solve_witness(_interior_point(rng))
        u = haar_sample(rng)
        moved = w.rep.conjugate(u)
        v = conjugator_between(w.rep, moved, CONJUGATOR_TOL)
        if v is None:
            violations += 1
            continue
        worst_err = max(worst_err, _conjugation_error(v, w.rep, moved))

    rng = block_rng(seed, 1)
    for _ in range(k):
        r = Representation.from_pair(haar_sample(rng), haar_sample(rng))
        w = solve_witness(moment_map(r))
        if not isinstance(w, Witness):
            violations += 1
            continue
        v = conjugator_between(r, w.rep, CONJUGATOR_TOL)
        if v is None:
            violations += 1
            continue
        worst_err = max(worst_err, _conjugation_error(v, r, w.rep))

    rng = block_rng(seed, 2)
    distinct = 0
    while distinct < k:
        t, s = _interior_point(rng), _interior_point(rng)
        if max(abs(x - y) for x, y in zip(t, s)) <= 1e-3:
            continue
        distinct += 1
        if conjugator_between(solve_witness(t).rep, solve_witness(s).rep) is not None:
            violations += 1

    return SamplingReport(
        kind="injectivity",
        samples=3 * k,
        violations=violations,
        worst_slack=CONJUGATOR_TOL - worst_err,
        seed=seed,
        params={"k": k, "conjugator_tol": CONJUGATOR_TOL},
        details={"max_conjugation_error": worst_err},
    )
