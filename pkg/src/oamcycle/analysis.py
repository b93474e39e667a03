"""Gate verification, cycle discovery, and scaling tables.

Everything here cross-checks two independent routes: simulated behavior
against the modular-arithmetic oracle, and tallied element counts
against the closed-form predictions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .model import ModeVector, Netlist, extract_permutation
from .portgraph import PortGraph
from .simulation import (
    DEFAULT_CONFIG,
    HopBudgetExceeded,
    NormDrift,
    SimulationConfig,
    apply_netlist,
    apply_portgraph,
)
from .synthesis import (
    count_beamsplitters,
    invert,
    naive_count,
    predict_count,
    predict_simplified_count,
    shifted_gate,
    simplify,
    synth_arbitrary,
)

VARIANTS = ("standard", "simplified", "inverse", "shifted")


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one synthesized gate against its oracle."""

    d: int
    variant: str
    shift: int
    permutation_ok: bool
    mapping: dict[int, int]
    count_actual: int
    count_predicted: int
    bound: float | None
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class CycleSet:
    """A closed orbit of OAM values under a gate, canonical (minimum) first."""

    modes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.modes)


def _transform_for(device, config: SimulationConfig):
    if isinstance(device, PortGraph):
        return lambda state: apply_portgraph(device, state, config)
    return lambda state: apply_netlist(device, state, config)


def verify_gate(
    d: int,
    variant: str = "standard",
    shift: int = 0,
    config: SimulationConfig = DEFAULT_CONFIG,
) -> VerificationReport:
    """Synthesize the requested gate flavor and verify it end to end.

    Checks the full permutation on the d-value window against modular
    arithmetic, the splitter tally against the count formula, and (for
    d >= 3) the logarithmic bound.  Every discrepancy lands in
    ``violations``; simulation errors are recorded rather than raised.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if variant == "simplified" and shift != 0:
        raise ValueError("the simplified variant does not support a shifted window")

    base = synth_arbitrary(d)
    step = -1 if variant == "inverse" else 1
    if variant == "simplified":
        device = simplify(base)
        count_predicted = predict_simplified_count(d)
    else:
        netlist = invert(base) if variant == "inverse" else base
        device = shifted_gate(netlist, shift)
        count_predicted = predict_count(d)[0]
    bound = predict_count(d)[1]
    count_actual = count_beamsplitters(device)

    violations: list[str] = []
    domain = range(shift, shift + d)
    expected = {k: ((k - shift + step) % d) + shift for k in domain}
    mapping: dict[int, int] = {}
    try:
        mapping = extract_permutation(
            _transform_for(device, config), domain, device.input_path, device.output_path
        )
    except (NormDrift, HopBudgetExceeded) as exc:
        violations.append(f"simulation failed: {exc}")
    for k in domain:
        got = mapping.get(k)
        if got != expected[k]:
            violations.append(f"|{k}> mapped to {got}, expected |{expected[k]}>")
    permutation_ok = mapping == expected

    if count_actual != count_predicted:
        violations.append(
            f"splitter count {count_actual} != predicted {count_predicted}"
        )
    if bound is not None and count_actual > bound and variant != "simplified":
        violations.append(f"splitter count {count_actual} exceeds bound {bound}")

    return VerificationReport(
        d=d,
        variant=variant,
        shift=shift,
        permutation_ok=permutation_ok,
        mapping=mapping,
        count_actual=count_actual,
        count_predicted=count_predicted,
        bound=bound,
        violations=tuple(violations),
    )


def discover_cycles(
    device: Netlist | PortGraph,
    lo: int,
    hi: int,
    config: SimulationConfig = DEFAULT_CONFIG,
) -> list[CycleSet]:
    """Find every closed length-d orbit inside the OAM window [lo, hi].

    Each window value is simulated as a basis state; values that split,
    leak to another path, or leave the window break the orbit they were
    part of.  Every returned cycle is re-verified edge by edge with a
    fresh simulation before being reported.
    """
    d = device.dimension
    transform = _transform_for(device, config)
    window = range(lo, hi + 1)
    mapping = extract_permutation(
        transform, window, device.input_path, device.output_path
    )
    cycles: list[CycleSet] = []
    members: set[int] = set()
    for start in sorted(mapping):
        if start in members:
            continue
        orbit = [start]
        current = start
        closed = False
        for _ in range(d):
            current = mapping.get(current, None)
            if current is None or (current != start and current in orbit):
                break
            if current == start:
                closed = len(orbit) == d
                break
            orbit.append(current)
        if not closed or start != min(orbit):
            continue
        for u, v in zip(orbit, orbit[1:] + [start]):
            recheck = extract_permutation(
                transform, [u], device.input_path, device.output_path
            )
            if recheck.get(u) != v:
                raise AssertionError(f"cycle edge {u} -> {v} failed re-simulation")
        members.update(orbit)
        cycles.append(CycleSet(tuple(orbit)))
    return cycles


@dataclass(frozen=True)
class ScalingRow:
    d: int
    n_arb_actual: int
    n_arb_predicted: int
    n_s: int
    naive: int
    bound: float | None


def scaling_table(d_min: int, d_max: int) -> list[ScalingRow]:
    """Tally-vs-formula splitter counts for every dimension in [d_min, d_max].

    Each row also carries the simplified and brute-force counts and the
    log bound; the tally/formula identity and the bound are asserted
    row by row.
    """
    if d_min < 2 or d_max < d_min:
        raise ValueError(f"need 2 <= d_min <= d_max, got [{d_min}, {d_max}]")
    rows = []
    for d in range(d_min, d_max + 1):
        actual = count_beamsplitters(synth_arbitrary(d))
        predicted, bound = predict_count(d)
        if actual != predicted:
            raise AssertionError(f"d={d}: tallied {actual} splitters, formula {predicted}")
        if bound is not None and actual > bound:
            raise AssertionError(f"d={d}: count {actual} exceeds bound {bound}")
        rows.append(
            ScalingRow(d, actual, predicted, predict_simplified_count(d), naive_count(d), bound)
        )
    return rows


def scaling_csv(rows: list[ScalingRow]) -> str:
    """Render scaling rows as CSV, bounds written with full float precision."""
    lines = ["d,n_arb_actual,n_arb_predicted,n_s,naive,bound"]
    for row in rows:
        bound = repr(row.bound) if row.bound is not None else ""
        lines.append(
            f"{row.d},{row.n_arb_actual},{row.n_arb_predicted},{row.n_s},{row.naive},{bound}"
        )
    return "\n".join(lines) + "\n"
