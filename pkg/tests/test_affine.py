from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bentpack.affine import (
    AffineTransform,
    BinaryMatrix,
    apply_affine,
    default_radius,
    gf2_rank,
    invert_transform,
    normalize_ea,
    odd_fraction_limit,
    random_invertible_matrix,
)
from bentpack.boolfn import BooleanFunction, algebraic_degree, classify_plateau, walsh_transform
from bentpack.errors import DimensionMismatch, NotPlateaued, SingularMatrix
from bentpack.stats import face_histogram

from oracles import eval_affine


def random_transform(n, rng):
    A = random_invertible_matrix(n, int(rng.integers(1 << 30)))
    return AffineTransform(A, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(2)))


@st.composite
def function_and_transform(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
    seed = draw(st.integers(0, 2**31))
    rng = np.random.default_rng(seed)
    return BooleanFunction(n, bits), random_transform(n, rng)


# -- matrices

def test_rank_examples():
    assert gf2_rank(np.eye(3, dtype=np.uint8)) == 3
    assert gf2_rank(np.array([[1, 1], [1, 1]])) == 1
    assert gf2_rank(np.zeros((2, 2))) == 0


def test_random_matrix_examples():
    assert random_invertible_matrix(1, 7) == BinaryMatrix([[1]])
    A = random_invertible_matrix(4, 42)
    assert A.rank() == 4
    assert random_invertible_matrix(4, 42) == A
    assert random_invertible_matrix(6, 3) != random_invertible_matrix(6, 4)


def test_matrix_inverse_and_apply():
    rng = np.random.default_rng(0)
    for n in range(1, 8):
        A = random_invertible_matrix(n, int(rng.integers(1 << 30)))
        assert A @ A.inverse() == BinaryMatrix.identity(n)
        xs = np.arange(1 << n)
        assert np.array_equal(A.inverse().apply(A.apply(xs)), xs)


def test_singular_matrix_rejected():
    A = BinaryMatrix([[1, 1], [1, 1]])
    with pytest.raises(SingularMatrix):
        A.inverse()
    with pytest.raises(SingularMatrix):
        apply_affine(BooleanFunction.constant(2), AffineTransform(A))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        apply_affine(BooleanFunction.constant(3), AffineTransform.identity(2))


# -- apply / invert

def test_identity_transform(ip4):
    assert apply_affine(ip4, AffineTransform.identity(4)) == ip4
    assert invert_transform(AffineTransform.identity(4)) == AffineTransform.identity(4)


def test_coordinate_swap(ip4):
    swap = BinaryMatrix([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]])
    g = apply_affine(ip4, AffineTransform(swap))
    assert g == BooleanFunction.from_anf(4, [(3, 2), (1, 4)])
    assert classify_plateau(g).s == 0


def test_translation_only_inverse():
    A = random_invertible_matrix(5, 11)
    T = AffineTransform(A, b=0b10110)
    inv = invert_transform(T)
    assert inv.A == A.inverse()
    assert inv.b == A.inverse().apply(0b10110)
    assert inv.c == 0 and inv.d == 0


@settings(max_examples=60, deadline=None)
@given(function_and_transform(max_n=6))
def test_apply_matches_coordinatewise_oracle(ft):
    f, T = ft
    expected = eval_affine(f.table, f.n, T.A.rows, T.b, T.c, T.d)
    assert apply_affine(f, T).table.tolist() == expected


@settings(max_examples=100, deadline=None)
@given(function_and_transform(max_n=8))
def test_invert_is_two_sided(ft):
    f, T = ft
    inv = invert_transform(T)
    assert apply_affine(apply_affine(f, T), inv) == f
    assert apply_affine(apply_affine(f, inv), T) == f


def test_inverse_roundtrip_n5():
    rng = np.random.default_rng(5)
    for _ in range(100):
        f = BooleanFunction(5, rng.integers(0, 2, 32))
        T = random_transform(5, rng)
        assert apply_affine(apply_affine(f, T), invert_transform(T)) == f


@settings(max_examples=60, deadline=None)
@given(function_and_transform(max_n=8))
def test_spectrum_magnitudes_preserved(ft):
    f, T = ft
    g = apply_affine(f, T)
    mag = lambda h: Counter(abs(int(v)) for v in walsh_transform(h).values)
    assert mag(g) == mag(f)
    if algebraic_degree(f) > 1:
        assert algebraic_degree(g) == algebraic_degree(f)


def test_classification_invariant(plateaued_small):
    rng = np.random.default_rng(4)
    funcs = plateaued_small[(4, 0)][:20] + plateaued_small[(4, 2)][:20]
    for f in funcs:
        cls = classify_plateau(f)
        for _ in range(5):
            assert classify_plateau(apply_affine(f, random_transform(4, rng))) == cls


# -- normalisation

def test_odd_fraction_limits():
    from fractions import Fraction as F

    assert odd_fraction_limit(6, 2) == (F(1, 2), True)
    assert odd_fraction_limit(5, 1) == (F(1, 2) + F(1, 32), True)
    assert odd_fraction_limit(4, 0) == (F(4, 7), False)
    assert default_radius(4, 0) == 3
    assert default_radius(2, 0) == 2


def test_normalize_ip4(ip4):
    g, cert = normalize_ea(ip4)
    assert cert.odd_fraction == 0
    # every face along (x1, x2) is odd for ip4 itself, so a coordinate change is needed
    assert cert.transform.A != BinaryMatrix.identity(4)
    assert cert.condition_a(0) and cert.condition_b()
    assert apply_affine(g, invert_transform(cert.transform)) == ip4


def test_normalize_rejects_non_plateaued(cubic3, ip4):
    with pytest.raises(NotPlateaued):
        normalize_ea(cubic3)
    with pytest.raises(NotPlateaued):
        normalize_ea(ip4, s=2)


def test_normalize_n3_s1(plateaued_small):
    from fractions import Fraction as F

    for f in plateaued_small[(3, 1)]:
        g, cert = normalize_ea(f, 1)
        assert cert.odd_fraction < F(1, 2) + F(1, 8)


def test_normalize_all_small(plateaued_small):
    for (n, s), funcs in plateaued_small.items():
        for f in funcs:
            g, cert = normalize_ea(f, s)
            assert cert.condition_a(s) and cert.condition_b()
            assert cert.stats == face_histogram(g, cert.face_coords, cert.ball_radius)
            assert classify_plateau(g).s == s
            assert apply_affine(g, invert_transform(cert.transform)) == f


def test_normalize_deterministic(mm6):
    a = normalize_ea(mm6[0], seed=9)
    b = normalize_ea(mm6[0], seed=9)
    assert a[1].transform == b[1].transform


def test_normalize_other_face(mm6):
    for f in mm6[:10]:
        g, cert = normalize_ea(f, face_coords=(2, 5))
        assert cert.face_coords == (2, 5)
        assert cert.condition_a(0) and cert.condition_b()
