import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trinion.su2 import (
    IDENTITY,
    AngleTriple,
    DomainError,
    ProductError,
    Representation,
    Su2Element,
    canonical_rep,
    check_angles,
    class_angle,
    conjugate_by,
    conjugator_between,
    frobenius_distance,
    haar_sample,
    inverse,
    moment_map,
    multiply,
)

PI = math.pi
MINUS_I = Su2Element(-1.0, 0.0, 0.0, 0.0)


def g2(theta2, beta):
    """Second generator: class theta2 turned by beta."""
    return Su2Element(math.cos(theta2), math.sin(theta2) * math.cos(beta), math.sin(theta2) * math.sin(beta), 0.0)


quaternions = st.tuples(*[st.floats(-1, 1) for _ in range(4)]).filter(
    lambda q: sum(x * x for x in q) > 1e-3
).map(lambda q: Su2Element(*q))


def test_matrix_view_is_special_unitary():
    rng = np.random.default_rng(0)
    for _ in range(50):
        m = haar_sample(rng).matrix()
        assert np.allclose(m @ m.conj().T, np.eye(2), atol=1e-14)
        assert abs(np.linalg.det(m) - 1) < 1e-14


def test_constructor_normalizes():
    x = Su2Element(2.0, 0.0, 0.0, 0.0)
    assert x == IDENTITY
    with pytest.raises(ValueError):
        Su2Element(0.0, 0.0, 0.0, 0.0)


@given(quaternions, quaternions)
def test_multiply_matches_matrix_product(x, y):
    assert np.allclose(multiply(x, y).matrix(), x.matrix() @ y.matrix(), atol=1e-12)
    assert abs(multiply(x, y).norm() - 1) < 1e-14


def test_multiply_identity():
    x = Su2Element(0.1, 0.2, -0.3, 0.4)
    assert multiply(IDENTITY, x) == x


def test_multiply_quarter_turns_gives_traceless():
    # diag(i, -i) @ [[0, 1], [-1, 0]] = [[0, i], [i, 0]]
    expected = np.array([[1j, 0], [0, -1j]]) @ np.array([[0, 1], [-1, 0]])
    prod = multiply(canonical_rep(PI / 2), g2(PI / 2, PI / 2))
    assert np.allclose(prod.matrix(), expected, atol=1e-15)
    assert abs(prod.trace) < 1e-15


@given(quaternions)
def test_inverse_law(x):
    assert frobenius_distance(multiply(x, inverse(x)), IDENTITY) < 1e-12
    assert frobenius_distance(multiply(inverse(x), x), IDENTITY) < 1e-12


def test_inverse_examples():
    assert inverse(IDENTITY) == IDENTITY
    c = canonical_rep(0.7)
    assert np.allclose(inverse(c).matrix(), c.matrix().conj(), atol=1e-15)
    assert class_angle(inverse(c)) == pytest.approx(0.7, abs=1e-15)
    # adjugate of g1 g2 at t1 = t2 = beta = pi/2
    prod = multiply(canonical_rep(PI / 2), g2(PI / 2, PI / 2))
    adj = np.linalg.inv(prod.matrix())
    assert np.allclose(adj, [[0, -1j], [-1j, 0]], atol=1e-15)
    assert np.allclose(inverse(prod).matrix(), adj, atol=1e-15)


@given(quaternions, quaternions, quaternions)
def test_associativity(x, y, z):
    lhs = multiply(multiply(x, y), z)
    rhs = multiply(x, multiply(y, z))
    assert frobenius_distance(lhs, rhs) < 1e-12


@pytest.mark.parametrize(
    "x, expected",
    [
        (IDENTITY, 0.0),
        (MINUS_I, PI),
        (Su2Element(math.cos(PI / 3), math.sin(PI / 3), 0, 0), PI / 3),
    ],
)
def test_class_angle(x, expected):
    assert class_angle(x) == pytest.approx(expected, abs=1e-15)


def test_class_angle_agrees_with_arccos_of_half_trace():
    rng = np.random.default_rng(1)
    for _ in range(200):
        x = haar_sample(rng)
        tr = np.trace(x.matrix()).real
        assert class_angle(x) == pytest.approx(math.acos(max(-1, min(1, tr / 2))), abs=1e-7)


def test_class_angle_resolves_small_angles():
    # arccos(cos(1e-9)) returns 0; the atan2 form keeps the angle
    assert class_angle(canonical_rep(1e-9)) == pytest.approx(1e-9, rel=1e-12)


def test_canonical_rep():
    assert canonical_rep(0.0) == IDENTITY
    assert frobenius_distance(canonical_rep(PI), MINUS_I) < 1e-15
    assert np.allclose(canonical_rep(PI / 2).matrix(), [[1j, 0], [0, -1j]], atol=1e-15)
    for t in np.linspace(0, PI, 17):
        assert class_angle(canonical_rep(t)) == pytest.approx(t, abs=1e-15)
    with pytest.raises(DomainError):
        canonical_rep(-0.1)


def test_conjugate_by_examples():
    u = Su2Element(0.3, -0.2, 0.9, 0.1)
    x = Su2Element(0.5, 0.1, 0.7, -0.2)
    assert frobenius_distance(conjugate_by(u, IDENTITY), IDENTITY) < 1e-15
    assert frobenius_distance(conjugate_by(IDENTITY, x), x) < 1e-15
    um = u.matrix()
    assert np.allclose(conjugate_by(u, x).matrix(), um @ x.matrix() @ np.linalg.inv(um), atol=1e-14)


def test_conjugation_preserves_class_angle_100_pairs():
    rng = np.random.default_rng(2)
    for _ in range(100):
        u, x = haar_sample(rng), haar_sample(rng)
        assert class_angle(conjugate_by(u, x)) == pytest.approx(class_angle(x), abs=1e-14)


def test_haar_sample_norm_and_moments():
    rng = np.random.default_rng(3)
    traces = np.array([haar_sample(rng).trace for _ in range(100_000)])
    assert abs(np.mean(traces)) < 0.02
    # E[(2a)^2] = 4 E[a^2] = 1, each of the four coordinates carrying 1/4
    assert abs(np.mean(traces**2) - 1.0) < 0.02
    x = haar_sample(rng)
    assert abs(x.norm() - 1) < 1e-12


def test_haar_sample_left_invariance():
    # mean of the scalar part of g * x stays at zero for a fixed g
    rng = np.random.default_rng(4)
    g = Su2Element(0.9, 0.1, 0.3, 0.2)
    vals = np.array([multiply(g, haar_sample(rng)).a for _ in range(20_000)])
    assert abs(vals.mean()) < 0.02
    assert abs((vals**2).mean() - 0.25) < 0.01


def test_moment_map_examples():
    assert moment_map((IDENTITY, IDENTITY, IDENTITY)) == (0.0, 0.0, 0.0)
    assert moment_map((MINUS_I, MINUS_I, IDENTITY)) == pytest.approx((PI, PI, 0.0), abs=1e-15)
    a1 = Su2Element.from_matrix([[1j, 0], [0, -1j]])
    a2 = Su2Element.from_matrix([[0, 1], [-1, 0]])
    a3 = Su2Element.from_matrix([[0, -1j], [-1j, 0]])
    # traces of all three are zero by direct multiplication
    assert np.allclose(a1.matrix() @ a2.matrix() @ a3.matrix(), np.eye(2))
    assert moment_map(Representation(a1, a2, a3)) == pytest.approx((PI / 2,) * 3, abs=1e-15)


def test_moment_map_rejects_bad_product():
    with pytest.raises(ProductError):
        moment_map((IDENTITY, IDENTITY, canonical_rep(0.3)))
    with pytest.raises(ProductError):
        Representation(IDENTITY, IDENTITY, canonical_rep(0.3))


def test_moment_map_constant_on_orbits():
    rng = np.random.default_rng(5)
    for _ in range(100):
        r = Representation.from_pair(haar_sample(rng), haar_sample(rng))
        u = haar_sample(rng)
        assert moment_map(r.conjugate(u)) == pytest.approx(moment_map(r), abs=1e-14)


def test_conjugator_recovers_conjugation():
    rng = np.random.default_rng(6)
    for _ in range(100):
        r = Representation.from_pair(haar_sample(rng), haar_sample(rng))
        s = r.conjugate(haar_sample(rng))
        v = conjugator_between(r, s)
        assert v is not None
        for x, y in zip(r, s):
            assert frobenius_distance(conjugate_by(v, x), y) < 1e-12


def test_conjugator_central_triple_is_identity():
    trip = (IDENTITY, IDENTITY, IDENTITY)
    assert conjugator_between(trip, trip) == IDENTITY


def test_conjugator_handles_central_first_component():
    rng = np.random.default_rng(7)
    a2 = haar_sample(rng)
    r = Representation.from_pair(IDENTITY, a2)
    s = r.conjugate(haar_sample(rng))
    assert conjugator_between(r, s) is not None


def test_conjugator_reducible_triple():
    r = Representation.from_pair(canonical_rep(0.4), canonical_rep(1.1))
    u = Su2Element(0.2, 0.5, -0.7, 0.3)
    assert conjugator_between(r, r.conjugate(u)) is not None


def test_conjugator_antipodal_axis():
    # axis of r.a1 is -i; forces the flipped branch of the alignment
    r = Representation.from_pair(Su2Element(0.3, -0.95, 0.0, 0.0), Su2Element(0.1, 0.2, 0.9, 0.1))
    s = r.conjugate(Su2Element(0.0, 0.0, 1.0, 0.0))
    v = conjugator_between(r, s)
    assert v is not None


def test_conjugator_rejects_different_classes():
    r = Representation.from_pair(canonical_rep(PI / 2), g2(PI / 2, PI / 2))
    s = Representation.from_pair(canonical_rep(PI / 3), g2(PI / 3, 1.9))
    assert conjugator_between(r, s) is None


def test_conjugator_rejects_same_traces_different_orientation():
    # same class angles, but a2 rotated by beta vs. a reflected copy: still conjugate
    r = Representation.from_pair(canonical_rep(1.0), g2(0.8, 0.6))
    s = Representation.from_pair(canonical_rep(1.0), g2(0.8, 2 * PI - 0.6))
    assert conjugator_between(r, s) is not None
    # different beta gives a different third angle, so not conjugate
    s2 = Representation.from_pair(canonical_rep(1.0), g2(0.8, 1.2))
    assert conjugator_between(r, s2) is None


def test_conjugator_bad_tolerance():
    trip = (IDENTITY, IDENTITY, IDENTITY)
    with pytest.raises(ValueError):
        conjugator_between(trip, trip, tol=0.0)


def test_entry_formulas_on_grid():
    grid = np.linspace(0, 2 * PI, 20)
    for t1 in np.linspace(0, PI, 20):
        for t2 in np.linspace(0, PI, 20):
            for b in grid:
                m = multiply(canonical_rep(t1), g2(t2, b)).matrix()
                c1, s1, c2, s2 = math.cos(t1), math.sin(t1), math.cos(t2), math.sin(t2)
                cb, sb = math.cos(b), math.sin(b)
                a = complex(c1 * c2 - s1 * s2 * cb, s1 * c2 + c1 * s2 * cb)
                bb = complex(c1 * s2 * sb, s1 * s2 * sb)
                c = complex(-c1 * s2 * sb, s1 * s2 * sb)
                d = complex(c1 * c2 - s1 * s2 * cb, -(s1 * c2 + c1 * s2 * cb))
                assert np.allclose(m, [[a, bb], [c, d]], rtol=0, atol=1e-12)
                assert abs(np.trace(m) - 2 * (c1 * c2 - s1 * s2 * cb)) < 1e-12


def test_check_angles():
    assert check_angles((0, PI, 3 * (PI / 3))) == AngleTriple(0.0, PI, PI)
    with pytest.raises(DomainError):
        check_angles((0, 0, 3.5))
    with pytest.raises(DomainError):
        check_angles((0, 0))


def test_json_round_trip_is_lossless():
    rng = np.random.default_rng(8)
    r = Representation.from_pair(haar_sample(rng), haar_sample(rng))
    back = Representation.from_json(json.loads(json.dumps(r.to_json())))
    assert back == r
    x = haar_sample(rng)
    assert Su2Element.from_json(json.loads(json.dumps(x.to_json()))).to_json() == x.to_json()
    t = AngleTriple(0.1, 0.2, 0.3)
    assert AngleTriple.from_json(json.loads(json.dumps(t.to_json()))) == t


@settings(max_examples=50)
@given(quaternions, quaternions)
def test_class_angle_conjugation_invariance(u, y):
    assert class_angle(conjugate_by(u, y)) == pytest.approx(class_angle(y), abs=1e-14)
