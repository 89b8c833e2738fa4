import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qchan.bases import (
    GOLDEN_C,
    QubitBasis,
    basis_from_json,
    computational,
    example2_golden,
    example3_yprime,
    from_bloch,
    overlap,
    plus_minus,
)
from qchan.errors import DomainError, InvalidBasis
from qchan.verify import random_basis


def same_up_to_phase(u, v):
    return abs(abs(np.vdot(u, v)) - 1.0) < 1e-12


def test_from_bloch_north_pole_is_computational():
    b = from_bloch(0.0, 0.0)
    np.testing.assert_allclose(b.first, [1, 0])
    np.testing.assert_allclose(b.second, [0, 1])


def test_from_bloch_equator():
    b = from_bloch(math.pi / 2, 0.0)
    assert same_up_to_phase(b.first, np.array([1, 1]) / math.sqrt(2))
    assert same_up_to_phase(b.second, np.array([1, -1]) / math.sqrt(2))
    y = from_bloch(math.pi / 2, math.pi / 2)
    assert same_up_to_phase(y.first, np.array([1, 1j]) / math.sqrt(2))
    assert same_up_to_phase(y.second, np.array([1, -1j]) / math.sqrt(2))
    assert y.bloch == (math.pi / 2, math.pi / 2)


@pytest.mark.parametrize("theta, phi", [(-0.1, 0), (4.0, 0), (1.0, 2 * math.pi), (1.0, -0.5)])
def test_from_bloch_domain(theta, phi):
    with pytest.raises(DomainError):
        from_bloch(theta, phi)


def test_rejects_non_orthonormal():
    with pytest.raises(InvalidBasis):
        QubitBasis(np.array([1, 0]), np.array([1, 0]))
    with pytest.raises(InvalidBasis):
        QubitBasis(np.array([1, 1]), np.array([1, -1]))


def test_overlap_computational_plus_minus():
    ov = overlap(computational(), plus_minus())
    assert ov.c_max == pytest.approx(0.5, abs=1e-15)
    assert ov.argmax == (0, 0)


def test_overlap_golden_reports_true_maximum():
    # brute force: the four squared overlaps are c, 1-c, 1-c, c with c = (3 - sqrt 5)/2
    z, y = computational(), example2_golden()
    values = sorted(abs(np.vdot(a, b)) ** 2 for a in z.vectors for b in y.vectors)
    np.testing.assert_allclose(values, [GOLDEN_C, GOLDEN_C, 1 - GOLDEN_C, 1 - GOLDEN_C], atol=1e-15)
    ov = overlap(z, y)
    assert ov.c_max == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-12)
    assert ov.c_min == pytest.approx(GOLDEN_C, abs=1e-12)


def test_overlap_yprime():
    ov = overlap(computational(), example3_yprime())
    assert ov.c_max == pytest.approx(9 / 16, abs=1e-14)
    assert ov.c_min == pytest.approx(7 / 16, abs=1e-14)


def test_overlap_identical():
    b = from_bloch(1.1, 2.3)
    assert overlap(b, b).c_max == pytest.approx(1.0, abs=1e-14)


def test_overlap_tie_breaking_first_pair():
    assert overlap(computational(), computational()).argmax == (0, 0)


angles = st.tuples(st.floats(0, math.pi), st.floats(0, 2 * math.pi, exclude_max=True))


@given(angles, angles)
def test_overlap_invariants(a1, a2):
    b1, b2 = from_bloch(*a1), from_bloch(*a2)
    ov, rev = overlap(b1, b2), overlap(b2, b1)
    assert abs(ov.c_max + ov.c_min - 1.0) <= 1e-10
    assert ov.c_max >= 0.5 - 1e-12
    assert (ov.c_max, ov.c_min) == (rev.c_max, rev.c_min)


@given(angles, angles, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_overlap_global_phase_invariance(a1, a2, d1, d2):
    b1, b2 = from_bloch(*a1), from_bloch(*a2)
    shifted = QubitBasis(cmath.exp(1j * d1) * b1.first, cmath.exp(1j * d2) * b1.second)
    ov, ov2 = overlap(b1, b2), overlap(shifted, b2)
    assert abs(ov.c_max - ov2.c_max) <= 1e-12
    assert abs(ov.c_min - ov2.c_min) <= 1e-12


def test_random_bases_are_valid(rng):
    for _ in range(1000):
        b = random_basis(rng)
        assert abs(np.vdot(b.first, b.second)) <= 1e-10


def test_json_round_trip():
    b = example3_yprime()
    again = basis_from_json(b.to_dict())
    np.testing.assert_array_equal(again.first, b.first)
    np.testing.assert_array_equal(again.second, b.second)
    bl = basis_from_json({"bloch": [math.pi / 2, 0.0]})
    assert same_up_to_phase(bl.first, plus_minus().first)
    assert basis_from_json("plus-minus").name == "plus-minus"


@pytest.mark.parametrize("bad", [{"bloch": [1]}, {"vectors": [[[1, 0]]]}, {"foo": 1}, "nope", 3])
def test_json_errors(bad):
    with pytest.raises((InvalidBasis, DomainError)):
        basis_from_json(bad)
