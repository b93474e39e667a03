"""Element semantics: beam-splitter routing, hologram shifts, phase plates.

The OAM beam-splitter of order m sorts by the parity of ell/m: even
multiples of m exit on the port they entered, odd multiples cross over.
Two models of that behavior are provided.

* The strict router (`splitter_route_strict`) moves the whole amplitude
  to a single port and is defined only when ell is a multiple of m.  It
  is phase-free and exact, and is the reference semantics for netlist
  verification.
* The physical model (`splitter_unitary`) is the two-port interferometer
  unitary with internal phase phi = pi*ell/m, defined for every ell.  At
  multiples of m it concentrates all probability on the strict router's
  port, with an ell-dependent phase on top.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

PORT_X = "x"
PORT_Y = "y"


class NonMultipleMode(Exception):
    """Strict routing was asked for an OAM value not divisible by the order."""

    def __init__(self, ell: int, m: int):
        super().__init__(f"OAM value {ell} is not a multiple of splitter order {m}")
        self.ell = ell
        self.m = m


def splitter_route_strict(m: int, input_port: str, ell: int) -> str:
    """Output port ('x' or 'y') for a basis mode entering an order-m splitter.

    Raises NonMultipleMode unless ell is a multiple of m.  The routing is
    an involution: applying it twice from the returned port restores the
    input port.
    """
    if input_port not in (PORT_X, PORT_Y):
        raise ValueError(f"input port must be 'x' or 'y', got {input_port!r}")
    if ell % m != 0:
        raise NonMultipleMode(ell, m)
    if (ell // m) % 2 == 0:
        return input_port
    return PORT_Y if input_port == PORT_X else PORT_X


@dataclass(frozen=True)
class TwoPortUnitary:
    """2x2 transfer matrix of a splitter at a fixed OAM value.

    Basis order is (same port, other port): ``matrix[0, 0]`` is the
    amplitude to stay, ``matrix[1, 0]`` the amplitude to cross.  ``phase``
    is the internal phase phi = pi*ell/m.
    """

    matrix: np.ndarray
    phase: float


def splitter_unitary(m: int, ell: int) -> TwoPortUnitary:
    """Physical transfer matrix of an order-m splitter for OAM value ell."""
    if m < 1:
        raise ValueError(f"splitter order must be >= 1, got {m}")
    phi = math.pi * ell / m
    c = math.cos(phi / 2.0)
    s = math.sin(phi / 2.0)
    matrix = np.array([[c, 1j * s], [1j * s, c]], dtype=complex)
    return TwoPortUnitary(matrix=matrix, phase=phi)


def hologram_apply(v: int, ell: int) -> int:
    """OAM shift of a hologram of charge v."""
    return ell + v


def z_phase(d: int, ell: int) -> complex:
    """Phase factor exp(2*pi*i*ell/d) of the dimension-d plate.

    The OAM value is reduced mod d before exponentiation, so the result
    is exactly period-d in ell (bit-identical, not merely close).
    """
    if d < 2:
        raise ValueError(f"phase plate dimension must be >= 2, got {d}")
    return cmath.exp(2j * math.pi * (ell % d) / d)
