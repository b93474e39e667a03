"""Netlist synthesis for the cyclic OAM shift gate |k> -> |k+1 mod d>.

The construction factors d = 2^M * Q with Q odd and walks the binary
digits of Q.  Light climbs a ladder of splitters whose orders double at
each rung, gets shifted down by the value already accumulated, and is
recombined so that exactly the modes 0..d-1 cycle.  Rungs come in
mirror-symmetric forward/backward pairs around a central apex; holograms
carry the digit-dependent shifts.

Three entry points cover the published layouts: `synth_power_of_two`
(Q = 1, the plain doubling ladder), `synth_odd` (M = 0), and the general
`synth_arbitrary`.  All three emit the same element sequence for a given
dimension; the restricted forms only validate their precondition.

`simplify` folds each mirror pair onto its forward partner, re-routing
the light backwards through the kept element, which roughly halves the
number of physical splitters.  The result is a port graph rather than a
netlist, since the element sequence no longer describes the traversal
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Element, Hologram, Netlist, OamBeamSplitter, ZPlate, r_path, s_path
from .portgraph import PortGraph, contract_mirrors, netlist_to_portgraph


class InvalidDimension(Exception):
    """Synthesis was asked for a dimension outside its domain."""


class NotSimplifiable(Exception):
    """Mirror contraction was asked of a netlist without the mirror layout."""


@dataclass(frozen=True)
class SynthesisParams:
    """Factorization d = 2^two_exp * odd and the digit walk over odd.

    ``bits`` holds the binary digits of ``odd``, least significant first
    (``nbits`` of them, first and last always 1).  ``prev_one[t]`` is the
    rung the ladder reconnects to at step t: the position of the most
    recent 1-digit strictly below t, or 0.  Index 0 is padding.
    """

    d: int
    two_exp: int
    odd: int
    nbits: int
    bits: tuple[int, ...]
    prev_one: tuple[int, ...]


def decompose(d: int) -> SynthesisParams:
    """Factor d and precompute the digit walk.  Requires d >= 2."""
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise InvalidDimension(f"dimension must be an integer >= 2, got {d!r}")
    two_exp = (d & -d).bit_length() - 1
    odd = d >> two_exp
    nbits = odd.bit_length()
    bits = tuple((odd >> t) & 1 for t in range(nbits))
    prev = [0, 0]  # prev_one[1] = 0 by definition
    for t in range(1, nbits - 1):
        prev.append(t if bits[t] else prev[t])
    prev_one = tuple(prev[: max(nbits, 1)])
    return SynthesisParams(d, two_exp, odd, nbits, bits, prev_one)


Role = tuple[str, int]

_MIRROR_OF = {
    "purple_bwd_li": "purple_fwd_li",
    "purple_bwd_h": "purple_fwd_h",
    "blue_bwd_li": "blue_fwd_li",
    "blue_bwd_h": "blue_fwd_h",
    "green_bwd_li": "green_fwd_li",
    "closing_h": "stage0_h",
}


def _emit_tagged(d: int) -> list[tuple[Element, Role]]:
    """Element sequence for dimension d, each tagged with its layout role."""
    p = decompose(d)
    M, N, bits, prev = p.two_exp, p.nbits, p.bits, p.prev_one
    out: list[tuple[Element, Role]] = []

    def li(m, a, b, role, t=0):
        out.append((OamBeamSplitter(m, a, b), (role, t)))

    def holo(path, v, role, t=0):
        if v != 0:
            out.append((Hologram(path, v), (role, t)))

    for t in range(M):
        li(2**t, r_path(t), r_path(t + 1), "purple_fwd_li", t)
        holo(r_path(t + 1), -(2**t), "purple_fwd_h", t)
    if N == 1:
        holo(r_path(M), -(2**M), "center_h")
    else:
        li(2**M, r_path(M), s_path(0), "stage0_li")
        holo(s_path(0), 2**M, "stage0_h")
        for t in range(1, N - 1):
            li(2 ** (t + M), r_path(prev[t] + M), r_path(t + M), "blue_fwd_li", t)
            holo(r_path(t + M), -bits[t] * 2 ** (t + M), "blue_fwd_h", t)
        li(2 ** (N - 1 + M), r_path(prev[N - 1] + M), r_path(N - 1 + M), "blue_apex_li")
        holo(r_path(N - 1 + M), -(2 ** (N - 1 + M)), "blue_apex_h")
        for t in range(N - 2, 0, -1):
            holo(r_path(t + M), bits[t] * 2 ** (t + M), "blue_bwd_h", t)
            li(2 ** (t + M), r_path(prev[t] + M), r_path(t + M), "blue_bwd_li", t)
        for t in range(1, N - 1):
            li(2 ** (t + M), s_path(0), s_path(t), "green_fwd_li", t)
        li(2 ** (N - 1 + M), r_path(N - 1 + M), s_path(0), "green_apex_li")
        for t in range(N - 2, 0, -1):
            li(2 ** (t + M), r_path(N - 1 + M), s_path(t), "green_bwd_li", t)
        holo(r_path(N - 1 + M), -(2**M), "closing_h")
        li(2**M, r_path(M), r_path(N - 1 + M), "merger_li")
    for t in range(M - 1, -1, -1):
        holo(r_path(t + 1), 2**t, "purple_bwd_h", t)
        li(2**t, r_path(t), r_path(t + 1), "purple_bwd_li", t)
    out.append((Hologram(r_path(0), 1), ("final_h", 0)))
    return out


def synth_arbitrary(d: int) -> Netlist:
    """Netlist cycling OAM values 0..d-1 by +1 (mod d) on path r0."""
    elements = tuple(element for element, _ in _emit_tagged(d))
    return Netlist(elements, r_path(0), r_path(0), d)


def synth_odd(d: int) -> Netlist:
    """Cyclic shift netlist for odd d >= 3."""
    if not isinstance(d, int) or d < 3 or d % 2 == 0:
        raise InvalidDimension(f"expected an odd dimension >= 3, got {d!r}")
    return synth_arbitrary(d)


def synth_power_of_two(m: int) -> Netlist:
    """Cyclic shift netlist for d = 2^m, m >= 1: the plain doubling ladder."""
    if not isinstance(m, int) or m < 1:
        raise InvalidDimension(f"expected an exponent >= 1, got {m!r}")
    return synth_arbitrary(2**m)


def count_beamsplitters(device: Netlist | PortGraph) -> int:
    """Number of physical splitters in a netlist or port graph."""
    elements = device.nodes if isinstance(device, PortGraph) else device.elements
    return sum(1 for el in elements if isinstance(el, OamBeamSplitter))


def predict_count(d: int) -> tuple[int, float | None]:
    """Splitter count of the standard layout and its log bound.

    Returns ``(2*(M + 2*floor(log2 Q)), 4*log2(d-1))``; the bound is None
    for d = 2 where it degenerates.
    """
    p = decompose(d)
    count = 2 * (p.two_exp + 2 * (p.nbits - 1))
    bound = 4 * math.log2(d - 1) if d >= 3 else None
    return count, bound


def predict_simplified_count(d: int) -> int:
    """Physical splitter count after mirror contraction."""
    p = decompose(d)
    if p.odd == 1:
        return p.two_exp
    return p.two_exp + 2 * (p.nbits - 1) + 2


def naive_count(d: int) -> int:
    """Splitter count of the brute-force one-interferometer-per-swap layout."""
    return 2 * (d - 1)


def shifted_gate(netlist: Netlist, m: int) -> Netlist:
    """Conjugate a gate onto the shifted OAM window {m, ..., m+d-1}.

    A hologram of charge -m maps the window onto the gate's native range
    and a +m hologram maps it back, so |k> -> |((k-m+1) mod d) + m| for a
    cyclic shift netlist.
    """
    if m == 0:
        return netlist
    elements = (
        (Hologram(netlist.input_path, -m),)
        + netlist.elements
        + (Hologram(netlist.output_path, m),)
    )
    return Netlist(elements, netlist.input_path, netlist.output_path, netlist.dimension)


def invert(netlist: Netlist) -> Netlist:
    """Netlist of the inverse gate: elements reversed, hologram charges negated.

    Splitters route identically in both directions, so reversal alone
    inverts them; the splitter count is unchanged.  Phase plates have no
    charge to negate and are not accepted.
    """
    inverted: list[Element] = []
    for element in reversed(netlist.elements):
        if isinstance(element, Hologram):
            inverted.append(Hologram(element.path, -element.v))
        elif isinstance(element, ZPlate):
            raise ValueError("cannot invert a netlist containing phase plates")
        else:
            inverted.append(element)
    return Netlist(
        tuple(inverted), netlist.output_path, netlist.input_path, netlist.dimension
    )


def simplify(netlist: Netlist) -> PortGraph:
    """Fold the mirror-symmetric layout onto itself.

    Each backward-ladder element is deleted and its wires re-routed so the
    light traverses the forward partner in reverse; the stage-0 and closing
    holograms cancel the same way.  Only netlists that are element-for-
    element the standard layout for their dimension can be folded; anything
    else (shifted, inverted, hand-edited) raises NotSimplifiable.
    """
    if netlist.dimension < 2:
        raise NotSimplifiable("the d=1 identity netlist has nothing to fold")
    try:
        tagged = _emit_tagged(netlist.dimension)
    except InvalidDimension as exc:
        raise NotSimplifiable(str(exc)) from exc
    if tuple(element for element, _ in tagged) != netlist.elements:
        raise NotSimplifiable(
            f"netlist is not the standard d={netlist.dimension} layout"
        )
    index_of = {role: i for i, (_, role) in enumerate(tagged)}
    pairs = {}
    for i, (_, (name, t)) in enumerate(tagged):
        partner = _MIRROR_OF.get(name)
        if partner is not None:
            pairs[i] = index_of[(partner, t)]
    return contract_mirrors(netlist_to_portgraph(netlist), pairs)
