"""State propagation through netlists and port graphs.

Two simulators share the same element semantics:

* `apply_netlist` walks the element sequence, transforming the whole
  state at each element.  Splitters act jointly on both ports, so norm
  is checked after every element.
* `apply_portgraph` is packet-based: each (port, OAM, amplitude) packet
  hops along the wiring until it reaches a terminal, where amplitudes
  sum coherently.  Packets are independent (the optics is linear), which
  is what lets folded graphs route light backwards through an element.
  Norm is checked once against the terminal sum, since packets taking
  paths of different lengths make the in-flight norm momentarily
  non-conserved under interference.

In strict mode every element moves basis states to basis states with no
phase, so simulation is exact.  In physical mode splitters apply the
full two-port unitary: basis states still land on the strict port when
the OAM value is a multiple of the order, but with an extra
value-dependent phase, so superpositions generally agree with strict
mode only componentwise, not in their relative phases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elements import (
    NonMultipleMode,
    hologram_apply,
    splitter_route_strict,
    splitter_unitary,
    z_phase,
)
from .model import (
    PRUNE_THRESHOLD,
    Hologram,
    ModeVector,
    Netlist,
    OamBeamSplitter,
    PathLabel,
    StateKey,
    ZPlate,
)
from .portgraph import PortGraph

STRICT = "strict"
PHYSICAL = "physical"


class NormDrift(Exception):
    """Simulation lost or gained probability beyond the configured tolerance."""


class HopBudgetExceeded(Exception):
    """A packet exceeded the maximum number of node traversals."""


@dataclass(frozen=True)
class SimulationConfig:
    """Knobs shared by both simulators.

    ``hop_budget`` bounds the node traversals of any single packet in
    `apply_portgraph` (None means 10x the node count); ``amplitude_tolerance``
    is the allowed norm drift.
    """

    mode: str = STRICT
    hop_budget: int | None = None
    amplitude_tolerance: float = 1e-12
    prune: float = PRUNE_THRESHOLD

    def __post_init__(self):
        if self.mode not in (STRICT, PHYSICAL):
            raise ValueError(f"mode must be 'strict' or 'physical', got {self.mode!r}")


DEFAULT_CONFIG = SimulationConfig()


def _splitter_netlist_step(
    el: OamBeamSplitter, entries: dict[StateKey, complex], mode: str
) -> dict[StateKey, complex]:
    out: dict[StateKey, complex] = {}
    if mode == STRICT:
        for (path, ell), amp in entries.items():
            if path == el.port_x or path == el.port_y:
                side = "x" if path == el.port_x else "y"
                dest_side = splitter_route_strict(el.m, side, ell)
                dest = el.port_x if dest_side == "x" else el.port_y
                out[(dest, ell)] = out.get((dest, ell), 0j) + amp
            else:
                out[(path, ell)] = out.get((path, ell), 0j) + amp
        return out
    touched = set()
    for (path, ell), amp in entries.items():
        if path == el.port_x or path == el.port_y:
            touched.add(ell)
        else:
            out[(path, ell)] = out.get((path, ell), 0j) + amp
    for ell in touched:
        u = splitter_unitary(el.m, ell).matrix
        ax = entries.get((el.port_x, ell), 0j)
        ay = entries.get((el.port_y, ell), 0j)
        out[(el.port_x, ell)] = u[0, 0] * ax + u[1, 0] * ay
        out[(el.port_y, ell)] = u[1, 0] * ax + u[0, 0] * ay
    return out


def apply_netlist(
    netlist: Netlist, state: ModeVector, config: SimulationConfig = DEFAULT_CONFIG
) -> ModeVector:
    """Propagate *state* through the element sequence.

    Returns the output state rescaled to the input norm (cleaning float
    dust); raises NormDrift if any element step moves the norm by more
    than the configured tolerance.
    """
    norm_in = state.norm()
    entries: dict[StateKey, complex] = dict(state.items())
    for el in netlist.elements:
        if isinstance(el, OamBeamSplitter):
            entries = _splitter_netlist_step(el, entries, config.mode)
        elif isinstance(el, Hologram):
            stepped: dict[StateKey, complex] = {}
            for (path, ell), amp in entries.items():
                key = (path, hologram_apply(el.v, ell)) if path == el.path else (path, ell)
                stepped[key] = stepped.get(key, 0j) + amp
            entries = stepped
        elif isinstance(el, ZPlate):
            entries = {
                (path, ell): amp * z_phase(el.d, ell) if path == el.path else amp
                for (path, ell), amp in entries.items()
            }
        else:
            raise TypeError(f"unknown element {el!r}")
        entries = {k: v for k, v in entries.items() if abs(v) > config.prune}
        norm_now = sum(abs(a) ** 2 for a in entries.values()) ** 0.5
        if abs(norm_now - norm_in) > config.amplitude_tolerance:
            raise NormDrift(
                f"norm moved from {norm_in!r} to {norm_now!r} at element {el!r}"
            )
    result = ModeVector(entries, prune=config.prune)
    if result and norm_in > 0.0:
        result = result.scaled(norm_in / result.norm())
    return result


def _traverse(el, port: str, ell: int, amp: complex, mode: str):
    """Yield (out_port, oam, amplitude) for one packet crossing one element."""
    backward = port.startswith("b")
    prefix = "b" if backward else ""
    if isinstance(el, OamBeamSplitter):
        side = port[-1]
        other = "y" if side == "x" else "x"
        if mode == STRICT:
            yield (prefix + "out_" + splitter_route_strict(el.m, side, ell), ell, amp)
        else:
            u = splitter_unitary(el.m, ell).matrix
            yield (prefix + "out_" + side, ell, u[0, 0] * amp)
            yield (prefix + "out_" + other, ell, u[1, 0] * amp)
    elif isinstance(el, Hologram):
        shift = -el.v if backward else el.v
        yield (prefix + "out", hologram_apply(shift, ell), amp)
    elif isinstance(el, ZPlate):
        yield (prefix + "out", ell, amp * z_phase(el.d, ell))
    else:
        raise TypeError(f"unknown element {el!r}")


def apply_portgraph(
    graph: PortGraph, state: ModeVector, config: SimulationConfig = DEFAULT_CONFIG
) -> ModeVector:
    """Propagate *state* through a wired port graph.

    Components entering on paths with no entry port pass through
    unchanged.  Raises HopBudgetExceeded if a packet survives more node
    traversals than the budget allows, and NormDrift if the coherent
    terminal sum does not carry the input norm.
    """
    budget = config.hop_budget
    if budget is None:
        budget = 10 * max(1, len(graph.nodes))
    norm_in = state.norm()
    packets: dict[tuple[int, str, int], complex] = {}
    terminals: dict[StateKey, complex] = {}

    def deposit(endpoint, ell: int, amp: complex, into: dict) -> None:
        if endpoint[0] == "term":
            key = (endpoint[1], ell)
            terminals[key] = terminals.get(key, 0j) + amp
        else:
            _, index, port = endpoint
            key = (index, port, ell)
            into[key] = into.get(key, 0j) + amp

    for (path, ell), amp in state.items():
        deposit(graph.entry_for(path), ell, amp, packets)

    hops = 0
    while packets:
        hops += 1
        if hops > budget:
            raise HopBudgetExceeded(
                f"packets still in flight after {budget} node traversals"
            )
        staged: dict[tuple[int, str, int], complex] = {}
        for (index, port, ell), amp in packets.items():
            for out_port, out_ell, out_amp in _traverse(
                graph.nodes[index], port, ell, amp, config.mode
            ):
                deposit(graph.wiring[(index, out_port)], out_ell, out_amp, staged)
        packets = {k: v for k, v in staged.items() if abs(v) > config.prune}

    result = ModeVector(terminals, prune=config.prune)
    norm_out = result.norm()
    if abs(norm_out - norm_in) > config.amplitude_tolerance:
        raise NormDrift(f"terminal norm {norm_out!r} differs from input norm {norm_in!r}")
    if result and norm_in > 0.0:
        result = result.scaled(norm_in / norm_out)
    return result


def simulate_word(
    d: int,
    x_power: int,
    z_power: int,
    state: ModeVector,
    config: SimulationConfig = DEFAULT_CONFIG,
) -> ModeVector:
    """Apply the gate word X^x_power followed by Z^z_power in dimension d.

    X is the synthesized cyclic shift netlist; Z is the phase plate.  For
    d = 1 both gates are the identity.
    """
    from .synthesis import synth_arbitrary  # local import avoids a cycle

    if x_power < 0 or z_power < 0:
        raise ValueError("gate powers must be non-negative")
    if d == 1:
        return state
    shift = synth_arbitrary(d)
    out = state
    for _ in range(x_power):
        out = apply_netlist(shift, out, config)
    if z_power:
        plate = Netlist(
            (ZPlate(shift.output_path, d),) * z_power,
            shift.output_path,
            shift.output_path,
            d,
        )
        out = apply_netlist(plate, out, config)
    return out
