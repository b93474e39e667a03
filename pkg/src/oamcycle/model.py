"""Domain model: paths, sparse mode states, optical elements, netlists.

A photonic state lives on named paths and carries an integer orbital
angular momentum (OAM) value per component.  States are sparse maps
``(path, oam) -> complex amplitude``; netlists are ordered element
sequences with a designated input and output path.  Everything here is
immutable: transformations return new objects.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Union

#: amplitudes at or below this magnitude are dropped from sparse states
PRUNE_THRESHOLD = 1e-15

#: default tolerance on |amplitude| when reading a permutation off a state
PERMUTATION_AMPLITUDE_TOL = 1e-9

_PATH_RE = re.compile(r"^([rs])([0-9]+)$")


class ZeroState(Exception):
    """Normalization was asked of a state with no support."""


@dataclass(frozen=True, order=True)
class PathLabel:
    """A beam path: family ``r`` (main rail) or ``s`` (side rail) plus index."""

    family: str
    index: int

    def __post_init__(self):
        if self.family not in ("r", "s"):
            raise ValueError(f"path family must be 'r' or 's', got {self.family!r}")
        if not isinstance(self.index, int) or self.index < 0:
            raise ValueError(f"path index must be a non-negative int, got {self.index!r}")

    @classmethod
    def parse(cls, text: str) -> "PathLabel":
        m = _PATH_RE.match(text)
        if m is None:
            raise ValueError(f"invalid path label {text!r} (expected e.g. 'r0', 's2')")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


def r_path(index: int) -> PathLabel:
    return PathLabel("r", index)


def s_path(index: int) -> PathLabel:
    return PathLabel("s", index)


StateKey = tuple[PathLabel, int]


class ModeVector:
    """Sparse complex state over ``(path, oam)`` pairs.

    Entries with magnitude <= ``prune`` are dropped on construction, so a
    state never stores numerical dust.  Instances are treated as immutable;
    all arithmetic returns new vectors.
    """

    __slots__ = ("_entries",)

    def __init__(
        self,
        entries: Mapping[StateKey, complex] | Iterable[tuple[StateKey, complex]] = (),
        prune: float = PRUNE_THRESHOLD,
    ):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[StateKey, complex] = {}
        for key, amp in items:
            path, ell = key
            if not isinstance(path, PathLabel):
                raise TypeError(f"state key path must be PathLabel, got {path!r}")
            if not isinstance(ell, int):
                raise TypeError(f"OAM value must be int, got {ell!r}")
            a = complex(amp)
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError(f"non-finite amplitude for {path}|{ell}>")
            acc[key] = acc.get(key, 0j) + a
        self._entries = {k: v for k, v in acc.items() if abs(v) > prune}

    @classmethod
    def basis(cls, path: PathLabel, ell: int) -> "ModeVector":
        return cls({(path, ell): 1.0 + 0j})

    def items(self) -> Iterator[tuple[StateKey, complex]]:
        return iter(self._entries.items())

    def keys(self):
        return self._entries.keys()

    def get(self, key: StateKey) -> complex:
        return self._entries.get(key, 0j)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __iter__(self) -> Iterator[StateKey]:
        return iter(self._entries)

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self._entries.values()))

    def scaled(self, factor: complex) -> "ModeVector":
        return ModeVector({k: v * factor for k, v in self._entries.items()})

    def __add__(self, other: "ModeVector") -> "ModeVector":
        merged = dict(self._entries)
        for k, v in other._entries.items():
            merged[k] = merged.get(k, 0j) + v
        return ModeVector(merged)

    def __sub__(self, other: "ModeVector") -> "ModeVector":
        return self + other.scaled(-1.0)

    def normalized(self) -> "ModeVector":
        n = self.norm()
        if n == 0.0:
            raise ZeroState("cannot normalize a state with no support")
        return self.scaled(1.0 / n)

    def __repr__(self) -> str:
        terms = ", ".join(
            f"({amp:.6g})|{ell}>@{path}" for (path, ell), amp in sorted(self._entries.items())
        )
        return f"ModeVector[{terms}]" if terms else "ModeVector[0]"


def normalize(state: ModeVector) -> ModeVector:
    """Scale *state* to unit 2-norm.  Raises ZeroState on empty support."""
    return state.normalized()


def equal_up_to_global_phase(a: ModeVector, b: ModeVector, tol: float = 1e-10) -> bool:
    """True when ``a = exp(i*gamma) * b`` for some global phase gamma.

    The phase is read off the largest-magnitude entry the two states share,
    then the residual ``||a - exp(i*gamma)*b||`` is compared against *tol*.
    """
    if not a and not b:
        return True
    shared = a.keys() & b.keys()
    if not shared:
        return a.norm() <= tol and b.norm() <= tol
    key = max(shared, key=lambda k: abs(a.get(k)) + abs(b.get(k)))
    ratio = a.get(key) / b.get(key)
    mag = abs(ratio)
    if mag == 0.0:
        return False
    phase = ratio / mag
    diff = a - b.scaled(phase)
    return diff.norm() <= tol


def extract_permutation(
    transform: Callable[[ModeVector], ModeVector],
    domain: Iterable[int],
    input_path: PathLabel,
    output_path: PathLabel,
    tol: float = PERMUTATION_AMPLITUDE_TOL,
) -> dict[int, int]:
    """Probe *transform* with basis states and read back an OAM permutation.

    Returns a partial map ``ell -> ell'`` containing only the inputs whose
    image is a single basis state on *output_path* with unit magnitude
    (within *tol*).  Inputs that error, split, leak to another path, or
    lose amplitude are omitted rather than raised.
    """
    from .elements import NonMultipleMode  # local import avoids a cycle

    mapping: dict[int, int] = {}
    for ell in domain:
        try:
            out = transform(ModeVector.basis(input_path, ell))
        except NonMultipleMode:
            continue
        if len(out) != 1:
            continue
        (path, image), amp = next(out.items())
        if path != output_path:
            continue
        if abs(abs(amp) - 1.0) > tol:
            continue
        mapping[ell] = image
    return mapping


# --- optical elements -------------------------------------------------------


@dataclass(frozen=True)
class OamBeamSplitter:
    """Order-``m`` OAM sorter coupling two ports.

    OAM values that are even multiples of ``m`` leave on the port they
    entered; odd multiples cross to the other port.  Serialized kind: LI.
    """

    m: int
    port_x: PathLabel
    port_y: PathLabel

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"splitter order must be >= 1, got {self.m}")
        if self.port_x == self.port_y:
            raise ValueError(f"splitter ports must differ, got {self.port_x} twice")


@dataclass(frozen=True)
class Hologram:
    """Shifts the OAM value on one path by ``v`` (positive or negative)."""

    path: PathLabel
    v: int


@dataclass(frozen=True)
class ZPlate:
    """Phase element: multiplies an OAM-``ell`` component by exp(2*pi*i*ell/d)."""

    path: PathLabel
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"phase plate dimension must be >= 2, got {self.d}")


Element = Union[OamBeamSplitter, Hologram, ZPlate]


def element_paths(element: Element) -> tuple[PathLabel, ...]:
    if isinstance(element, OamBeamSplitter):
        return (element.port_x, element.port_y)
    return (element.path,)


@dataclass(frozen=True)
class Netlist:
    """Ordered element sequence realizing a gate on ``dimension`` OAM levels.

    Light enters on ``input_path`` and the designed output appears on
    ``output_path``.  The only legal empty netlist is the d=1 identity.
    """

    elements: tuple[Element, ...]
    input_path: PathLabel
    output_path: PathLabel
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.elements:
            used = self.paths()
            for role, path in (("input", self.input_path), ("output", self.output_path)):
                if path not in used:
                    raise ValueError(f"{role} path {path} not referenced by any element")

    @classmethod
    def identity(cls) -> "Netlist":
        """The degenerate d=1 netlist: no elements, input = output = r0."""
        return cls((), r_path(0), r_path(0), 1)

    def paths(self) -> set[PathLabel]:
        return {p for el in self.elements for p in element_paths(el)}
