"""Splitter routing (strict and physical), holograms, phase plates."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oamcycle.elements import (
    NonMultipleMode,
    hologram_apply,
    splitter_route_strict,
    splitter_unitary,
    z_phase,
)


def _route_oracle(m, port, ell):
    # independent statement of the sorting rule: write ell = q*m and sort by
    # the parity of q, counting q explicitly instead of dividing
    q = 0
    while q * m < abs(ell):
        q += 1
    assert q * m == abs(ell)
    even = q % 2 == 0
    if even:
        return port
    return "y" if port == "x" else "x"


@pytest.mark.parametrize("m", [1, 2, 4, 8])
@pytest.mark.parametrize("port", ["x", "y"])
def test_strict_routing_matches_parity_table(m, port):
    for ell in range(-32, 33):
        if ell % m:
            with pytest.raises(NonMultipleMode):
                splitter_route_strict(m, port, ell)
        else:
            assert splitter_route_strict(m, port, ell) == _route_oracle(m, port, ell)


def test_strict_routing_examples():
    assert splitter_route_strict(1, "x", 0) == "x"
    assert splitter_route_strict(1, "x", 1) == "y"
    assert splitter_route_strict(1, "y", 1) == "x"
    assert splitter_route_strict(8, "y", 8) == "x"
    assert splitter_route_strict(8, "y", 16) == "y"
    assert splitter_route_strict(2, "y", -2) == "x"
    assert splitter_route_strict(2, "x", -4) == "x"


def test_strict_routing_rejects_bad_port():
    with pytest.raises(ValueError):
        splitter_route_strict(1, "z", 0)


def test_non_multiple_error_carries_context():
    with pytest.raises(NonMultipleMode) as err:
        splitter_route_strict(4, "x", 6)
    assert err.value.ell == 6 and err.value.m == 4


@given(st.integers(1, 1024), st.integers(-16, 16), st.sampled_from(["x", "y"]))
def test_strict_routing_is_an_involution(m, k, port):
    ell = k * m
    once = splitter_route_strict(m, port, ell)
    assert splitter_route_strict(m, once, ell) == port


# --- physical model -----------------------------------------------------------


@given(st.integers(1, 1024), st.integers(-2048, 2048))
def test_physical_model_is_unitary(m, ell):
    u = splitter_unitary(m, ell).matrix
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_physical_phase_value():
    assert splitter_unitary(4, 6).phase == pytest.approx(math.pi * 6 / 4)


def test_physical_even_multiple_stays():
    for m, k in [(1, 0), (2, 2), (8, -4), (16, 6)]:
        u = splitter_unitary(m, 2 * k * m).matrix
        assert abs(abs(u[0, 0]) - 1.0) < 1e-12
        assert abs(u[1, 0]) < 1e-12


def test_physical_odd_multiple_crosses():
    for m, k in [(1, 0), (2, 1), (8, -2), (16, 3)]:
        u = splitter_unitary(m, (2 * k + 1) * m).matrix
        assert abs(abs(u[1, 0]) - 1.0) < 1e-12
        assert abs(u[0, 0]) < 1e-12


def test_physical_half_multiple_splits_evenly():
    u = splitter_unitary(8, 4).matrix  # phase pi/2: a 50/50 split
    assert abs(u[0, 0]) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert abs(u[1, 0]) == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_physical_rejects_bad_order():
    with pytest.raises(ValueError):
        splitter_unitary(0, 1)


@pytest.mark.parametrize("m", [2**t for t in range(11)])
def test_models_agree_on_multiples(m):
    # the strict router's port carries all probability in the physical model
    for k in range(-8, 9):
        ell = k * m
        u = splitter_unitary(m, ell).matrix
        port = splitter_route_strict(m, "x", ell)
        stay, cross = abs(u[0, 0]), abs(u[1, 0])
        if port == "x":
            assert abs(stay - 1.0) < 1e-12 and cross < 1e-12
        else:
            assert abs(cross - 1.0) < 1e-12 and stay < 1e-12


# --- holograms and phase plates ------------------------------------------------


def test_hologram_shift():
    assert hologram_apply(3, 4) == 7
    assert hologram_apply(-8, 0) == -8
    assert hologram_apply(0, 5) == 5


def test_z_phase_values():
    assert z_phase(4, 0) == 1.0
    assert abs(z_phase(4, 1) - 1j) < 1e-15
    assert abs(z_phase(2, 1) + 1.0) < 1e-15
    assert abs(z_phase(3, 1) - cmath.exp(2j * math.pi / 3)) < 1e-15


def test_z_phase_is_exactly_periodic():
    for d in (2, 3, 7, 16):
        for ell in range(-2 * d, 2 * d):
            assert z_phase(d, ell + d) == z_phase(d, ell)


def test_z_phase_roots_sum_to_zero():
    for d in (2, 3, 5, 8):
        assert abs(sum(z_phase(d, ell) for ell in range(d))) < 1e-12


def test_z_phase_rejects_small_dimension():
    with pytest.raises(ValueError):
        z_phase(1, 0)
