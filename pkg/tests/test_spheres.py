import math
import random

import numpy as np
import pytest

from spheremat.intmat import IntMatrix, elementary_matrix
from spheremat.spheres import (
    AlgebraElement,
    CollisionWitness,
    PhaseAmbiguityError,
    antipodal_map,
    check_unit_point,
    complex_unit,
    compose_maps,
    degree_estimate,
    degree_estimate_details,
    induced_matrix_on_torus,
    octonion_unit,
    p_a_eval,
    p_a_torus_map,
    p_ij_eval,
    p_word_torus_map,
    psi_eval,
    psi_map,
    quaternion,
    quaternion_collision_witness,
    reflection_shear_torus_map,
    slot_conjugation_torus_map,
    tangent_frame,
    uniform_sphere_samples,
)
from spheremat.subgroups import random_sln
from spheremat.words import decompose_sln, symbol_matrix


# ---------------------------------------------------------------------------
# oracles: independent multiplication tables
# ---------------------------------------------------------------------------

def hamilton(a, b):
    """Textbook Hamilton product on (w, x, y, z) tuples."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def quat_conj(a):
    return (a[0], -a[1], -a[2], -a[3])


def octo_mul(a, b):
    """Doubled Hamilton product: (p,q)(r,s) = (pr - conj(s)q, sp + q conj(r))."""
    p, q = tuple(a[:4]), tuple(a[4:])
    r, s = tuple(b[:4]), tuple(b[4:])
    first = tuple(
        u - v for u, v in zip(hamilton(p, r), hamilton(quat_conj(s), q))
    )
    second = tuple(
        u + v for u, v in zip(hamilton(s, p), hamilton(q, quat_conj(r)))
    )
    return first + second


def rand_element(rng, dim, unit=False):
    v = np.array([rng.gauss(0.0, 1.0) for _ in range(dim)])
    if unit:
        v = v / np.linalg.norm(v)
    return AlgebraElement(v)


# ---------------------------------------------------------------------------
# the three algebras
# ---------------------------------------------------------------------------

def test_complex_multiplication_matches_builtin():
    rng = random.Random(1)
    for _ in range(50):
        a, b = rand_element(rng, 2), rand_element(rng, 2)
        got = a * b
        want = complex(*a.components) * complex(*b.components)
        assert abs(got.components[0] - want.real) < 1e-12
        assert abs(got.components[1] - want.imag) < 1e-12


def test_quaternion_multiplication_matches_hamilton():
    rng = random.Random(2)
    for _ in range(50):
        a, b = rand_element(rng, 4), rand_element(rng, 4)
        want = hamilton(tuple(a.components), tuple(b.components))
        assert np.allclose((a * b).components, want, atol=1e-12)
    i, j, k = quaternion(0, 1, 0, 0), quaternion(0, 0, 1, 0), quaternion(0, 0, 0, 1)
    assert (i * j).allclose(k)
    assert (j * i).allclose(-k)
    assert (i * i).allclose(-quaternion(1, 0, 0, 0))


def test_octonion_multiplication_matches_doubling_oracle():
    rng = random.Random(3)
    for _ in range(50):
        a, b = rand_element(rng, 8), rand_element(rng, 8)
        want = octo_mul(tuple(a.components), tuple(b.components))
        assert np.allclose((a * b).components, want, atol=1e-10)


def test_octonion_basis_products():
    e = [octonion_unit(i) for i in range(8)]
    assert (e[1] * e[2]).allclose(e[3])
    assert (e[1] * e[4]).allclose(e[5])
    assert (e[2] * e[4]).allclose(e[6])
    assert (e[3] * e[4]).allclose(e[7])


def test_octonions_are_not_associative():
    e = [octonion_unit(i) for i in range(8)]
    left = (e[1] * e[2]) * e[4]
    right = e[1] * (e[2] * e[4])
    assert left.allclose(e[7])
    assert right.allclose(-e[7])
    assert not left.allclose(right)


def test_octonions_are_alternative():
    rng = random.Random(4)
    for _ in range(30):
        x, y = rand_element(rng, 8, unit=True), rand_element(rng, 8, unit=True)
        assert ((x * x) * y).allclose(x * (x * y), tol=1e-10)
        assert ((x * y) * y).allclose(x * (y * y), tol=1e-10)


def test_norm_is_multiplicative():
    rng = random.Random(5)
    for dim in (2, 4, 8):
        for _ in range(30):
            a, b = rand_element(rng, dim), rand_element(rng, dim)
            assert math.isclose(
                (a * b).norm(), a.norm() * b.norm(), rel_tol=1e-10
            )


def test_conjugate_inverse_and_powers():
    rng = random.Random(6)
    for dim in (2, 4, 8):
        x = rand_element(rng, dim, unit=True)
        one = AlgebraElement.one(dim)
        assert (x * x.conjugate()).allclose(one, tol=1e-10)
        assert (x * x.inverse()).allclose(one, tol=1e-10)
        assert (x ** 0).allclose(one)
        assert (x ** 3).allclose(x * x * x, tol=1e-10)
        assert (x ** -2).allclose(x.inverse() * x.inverse(), tol=1e-10)


def test_algebra_element_validation():
    with pytest.raises(ValueError):
        AlgebraElement([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        complex_unit(1, 0) * quaternion(1, 0, 0, 0)
    with pytest.raises(ZeroDivisionError):
        AlgebraElement([0.0, 0.0]).inverse()


# ---------------------------------------------------------------------------
# power products
# ---------------------------------------------------------------------------

def test_p_a_identity_matrix():
    xs = (complex_unit(0, 1), complex_unit(1, 0))
    assert all(
        got.allclose(x) for got, x in zip(p_a_eval(IntMatrix.identity(2), xs), xs)
    )


def test_p_a_against_oracle_products():
    # row (1, -1) on quaternions (-i, -1): (-i) * (-1)^-1 = i
    a = IntMatrix([[1, -1], [-1, 2]])
    xs = (quaternion(0, -1, 0, 0), quaternion(-1, 0, 0, 0))
    out = p_a_eval(a, xs)
    want0 = hamilton(
        tuple(xs[0].components), quat_conj(tuple(xs[1].components))
    )  # (-1)^-1 = conj since |x|=1
    assert np.allclose(out[0].components, want0, atol=1e-12)
    i = quaternion(0, 1, 0, 0)
    assert out[0].allclose(i) and out[1].allclose(i)


def test_p_a_rejections():
    xs2 = (complex_unit(1, 0), complex_unit(0, 1))
    with pytest.raises(ValueError):
        p_a_eval(IntMatrix.identity(3), xs2)
    with pytest.raises(ValueError):
        p_a_eval(IntMatrix.identity(2), (octonion_unit(1), octonion_unit(2)))
    with pytest.raises(ValueError):
        p_a_eval(IntMatrix.identity(2), (complex_unit(1, 0), quaternion(1, 0, 0, 0)))
    with pytest.raises(ValueError):
        p_a_eval(IntMatrix.identity(2), (complex_unit(2, 0), complex_unit(1, 0)))


def test_p_ij_complex_and_inverse_roundtrip():
    u, v = complex_unit(0, 1), complex_unit(math.sqrt(0.5), math.sqrt(0.5))
    out = p_ij_eval(1, 2, (u, v))
    assert out[0].allclose(u * v) and out[1].allclose(v)
    back = p_ij_eval(1, 2, out, inverse=True)
    assert back[0].allclose(u) and back[1].allclose(v)


def test_p_ij_octonion_roundtrip():
    rng = random.Random(7)
    for _ in range(20):
        xs = (rand_element(rng, 8, unit=True), rand_element(rng, 8, unit=True))
        fwd = p_ij_eval(1, 2, xs)
        back = p_ij_eval(1, 2, fwd, inverse=True)
        assert back[0].allclose(xs[0], tol=1e-12)
        assert back[1].allclose(xs[1], tol=1e-12)


def test_p_ij_rejects_bad_slots():
    xs = (complex_unit(1, 0), complex_unit(0, 1))
    with pytest.raises(ValueError):
        p_ij_eval(1, 1, xs)
    with pytest.raises(ValueError):
        p_ij_eval(0, 2, xs)
    with pytest.raises(ValueError):
        p_ij_eval(1, 3, xs)


def test_quaternion_collision_witness_confirmed():
    w = quaternion_collision_witness()
    assert isinstance(w, CollisionWitness)
    assert w.confirmed
    assert w.max_error < 1e-12
    assert w.input_separation > 2.0  # actually sqrt(6)
    assert math.isclose(w.input_separation, math.sqrt(6.0), rel_tol=1e-12)
    assert w.matrix.det() == 1
    for got, want in zip(w.first_image + w.second_image, w.expected + w.expected):
        assert got.allclose(want)


# ---------------------------------------------------------------------------
# the reflection family
# ---------------------------------------------------------------------------

def test_psi_special_positions():
    x = np.array([1.0, 0.0, 0.0])
    y_perp = np.array([0.0, 1.0, 0.0])
    assert np.allclose(psi_eval(x, y_perp), x)
    assert np.allclose(psi_eval(x, x), -x)


def test_psi_circle_closed_form():
    # psi_x(y) = -exp(i(2 beta - alpha)) when x, y sit at angles alpha, beta
    for alpha in (0.0, 0.7, 2.4):
        x = np.array([math.cos(alpha), math.sin(alpha)])
        for beta in np.linspace(0.0, 2.0 * math.pi, 41):
            y = np.array([math.cos(beta), math.sin(beta)])
            got = psi_eval(x, y)
            phase = 2.0 * beta - alpha
            want = -np.array([math.cos(phase), math.sin(phase)])
            assert np.allclose(got, want, atol=1e-12)


def test_psi_preserves_the_sphere():
    rng = np.random.default_rng(8)
    for k in (1, 2, 3, 7):
        pts = uniform_sphere_samples(k, 50, rng)
        x = pts[0]
        for y in pts[1:]:
            assert abs(np.linalg.norm(psi_eval(x, y)) - 1.0) < 1e-12


def test_psi_map_matches_pointwise():
    rng = np.random.default_rng(9)
    pts = uniform_sphere_samples(3, 100, rng)
    x = pts[0]
    vectorized = psi_map(x)(pts)
    for row, y in zip(vectorized, pts):
        assert np.allclose(row, psi_eval(x, y), atol=1e-12)


def test_psi_rejects_non_unit():
    with pytest.raises(ValueError):
        psi_eval(np.array([2.0, 0.0]), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        psi_eval(np.array([1.0, 0.0]), np.array([1.0, 1.0]))


# ---------------------------------------------------------------------------
# sphere sampling and frames
# ---------------------------------------------------------------------------

def test_uniform_samples_sit_on_sphere():
    rng = np.random.default_rng(10)
    pts = uniform_sphere_samples(4, 500, rng)
    assert pts.shape == (500, 5)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)


def test_tangent_frames_are_oriented_orthonormal():
    rng = np.random.default_rng(11)
    for k in (1, 2, 3):
        pts = uniform_sphere_samples(k, 200, rng)
        frames = tangent_frame(pts)
        assert frames.shape == (200, k + 1, k)
        for p, f in zip(pts, frames):
            assert np.allclose(f.T @ f, np.eye(k), atol=1e-12)
            assert np.allclose(f.T @ p, 0.0, atol=1e-12)
            full = np.column_stack([p, f])
            assert np.linalg.det(full) > 0.99


# ---------------------------------------------------------------------------
# degree estimation
# ---------------------------------------------------------------------------

def test_degree_identity_map():
    for k in (1, 2, 3):
        est = degree_estimate(lambda pts: pts, k, sample_count=2000, seed=1)
        assert abs(est - 1.0) < 1e-6


def test_degree_antipodal_map():
    for k, want in ((1, 1.0), (2, -1.0), (3, 1.0)):
        est = degree_estimate(antipodal_map, k, sample_count=2000, seed=2)
        assert abs(est - want) < 1e-6


def test_degree_circle_reflection_is_two():
    base = np.array([1.0, 0.0])
    est, stderr = degree_estimate_details(psi_map(base), 1, sample_count=2000, seed=3)
    # the circle integrand is constant, so even the spread collapses
    assert abs(est - 2.0) < 1e-5
    assert stderr < 1e-5


def test_degree_is_deterministic_per_seed():
    a = degree_estimate(antipodal_map, 2, sample_count=1500, seed=7)
    b = degree_estimate(antipodal_map, 2, sample_count=1500, seed=7)
    assert a == b


def test_degree_input_validation():
    with pytest.raises(ValueError):
        degree_estimate(antipodal_map, 0)
    with pytest.raises(ValueError):
        degree_estimate(antipodal_map, 2, sample_count=10)
    with pytest.raises(ValueError):
        degree_estimate(lambda pts: 0.0 * pts, 2, sample_count=1000)


# ---------------------------------------------------------------------------
# induced matrices on torus factors
# ---------------------------------------------------------------------------

def test_induced_identity():
    assert induced_matrix_on_torus(lambda z: z, 3) == IntMatrix.identity(3)


def test_induced_monomial_maps_measure_their_matrix():
    rng = random.Random(12)
    for _ in range(8):
        n = rng.choice([1, 2, 3])
        a = IntMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        assert induced_matrix_on_torus(p_a_torus_map(a), n) == a


def test_induced_composition_multiplies():
    a = IntMatrix([[2, 1], [1, 1]])
    b = IntMatrix([[0, -1], [1, 3]])
    composed = compose_maps(p_a_torus_map(a), p_a_torus_map(b))
    assert induced_matrix_on_torus(composed, 2) == a * b


def test_induced_word_map():
    rng = random.Random(13)
    target = random_sln(2, rng, min_letters=4, max_letters=10)
    word = decompose_sln(target)
    assert induced_matrix_on_torus(p_word_torus_map(word), 2) == target


def test_letterwise_composition_agrees_pointwise():
    # splitting a matrix into elementary letters and composing their maps
    # reproduces the single monomial map on arbitrary torus points
    target = IntMatrix([[0, -1], [1, 0]])
    word = decompose_sln(target)
    mats = [symbol_matrix(sym, 2) ** exp for sym, exp in word.letters]
    composed = compose_maps(*(p_a_torus_map(m) for m in mats))
    rng = np.random.default_rng(14)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(1000, 2))
    pts = np.exp(1j * angles)
    assert np.allclose(composed(pts), p_a_torus_map(target)(pts), atol=1e-9)


def test_reflection_shear_measures_mixed_row():
    got = induced_matrix_on_torus(reflection_shear_torus_map(), 2)
    assert got == IntMatrix([[-1, 2], [0, 1]])


def test_conjugated_reflection_shear_is_elementary_square():
    fixed = compose_maps(reflection_shear_torus_map(), slot_conjugation_torus_map(1, 2))
    assert induced_matrix_on_torus(fixed, 2) == elementary_matrix(2, 1, 2, 2)


def test_slot_conjugation_measures_sign_flip():
    got = induced_matrix_on_torus(slot_conjugation_torus_map(1, 2), 2)
    assert got == IntMatrix.diagonal([-1, 1])


def test_induced_resolution_interplay():
    a = IntMatrix([[100]])
    with pytest.raises(PhaseAmbiguityError):
        induced_matrix_on_torus(p_a_torus_map(a), 1, resolution=256)
    assert induced_matrix_on_torus(p_a_torus_map(a), 1, resolution=1024) == a


def test_induced_rejects_bad_maps():
    with pytest.raises(ValueError):
        induced_matrix_on_torus(lambda z: z, 2, resolution=100)
    with pytest.raises(ValueError):
        induced_matrix_on_torus(lambda z: z[:, :1], 2)
    with pytest.raises(ValueError):
        induced_matrix_on_torus(lambda z: 0.0 * z, 1)

    def half_winding(z):
        out = np.array(z, dtype=complex)
        out[:, 0] = np.exp(1j * np.linspace(0.0, np.pi, out.shape[0]))
        return out

    with pytest.raises(PhaseAmbiguityError):
        induced_matrix_on_torus(half_winding, 1)


def test_check_unit_point_tolerance():
    check_unit_point(np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        check_unit_point(np.array([1.0, 1e-5]))
    check_unit_point(np.array([1.0, 1e-5]), tol=1e-3)
