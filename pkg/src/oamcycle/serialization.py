"""Netlist JSON documents, DOT rendering, and the state expression grammar.

The JSON layout is canonical: fixed key order, one element per line, so
serialize(parse(text)) reproduces its input byte for byte.  Simplified
devices are stored as the standard element list tagged
``"variant": "simplified"``; the folded port graph is rebuilt on use.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .model import (
    Element,
    Hologram,
    ModeVector,
    Netlist,
    OamBeamSplitter,
    PathLabel,
    ZPlate,
)
from .portgraph import PortGraph, netlist_to_portgraph

SCHEMA_VERSION = "1"

KIND_SPLITTER = "LI"
KIND_HOLOGRAM = "HOLOG"
KIND_ZPLATE = "ZPLATE"

VARIANTS = ("standard", "simplified", "inverse", "shifted")


class ParseError(Exception):
    """A netlist document or state expression could not be read."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class SchemaVersionMismatch(Exception):
    """The document declares a schema version this reader does not speak."""


@dataclass(frozen=True)
class NetlistDocument:
    netlist: Netlist
    variant: str = "standard"


def _element_to_obj(element: Element) -> dict:
    if isinstance(element, OamBeamSplitter):
        return {
            "kind": KIND_SPLITTER,
            "m": element.m,
            "paths": [str(element.port_x), str(element.port_y)],
        }
    if isinstance(element, Hologram):
        return {"kind": KIND_HOLOGRAM, "v": element.v, "paths": [str(element.path)]}
    if isinstance(element, ZPlate):
        return {"kind": KIND_ZPLATE, "d": element.d, "paths": [str(element.path)]}
    raise TypeError(f"unknown element {element!r}")


def serialize(netlist: Netlist, variant: str = "standard") -> str:
    """Canonical JSON text for a netlist document."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    lines = [
        "{",
        f'  "schema_version": {json.dumps(SCHEMA_VERSION)},',
        f'  "dimension": {netlist.dimension},',
        f'  "variant": {json.dumps(variant)},',
        f'  "input_path": {json.dumps(str(netlist.input_path))},',
        f'  "output_path": {json.dumps(str(netlist.output_path))},',
        '  "elements": [',
    ]
    if netlist.elements:
        lines.append(
            ",\n".join(f"    {json.dumps(_element_to_obj(el))}" for el in netlist.elements)
        )
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _require(obj: dict, key: str, kind, what: str):
    if key not in obj:
        raise ParseError(f"{what} is missing key {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ParseError(f"{what} key {key!r} must be {kind.__name__}, got {value!r}")
    return value


def _parse_path(text, what: str) -> PathLabel:
    if not isinstance(text, str):
        raise ParseError(f"{what} must be a path string, got {text!r}")
    try:
        return PathLabel.parse(text)
    except ValueError as exc:
        raise ParseError(f"{what}: {exc}") from exc


def _parse_element(obj, index: int) -> Element:
    what = f"element {index}"
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be an object, got {obj!r}")
    kind = _require(obj, "kind", str, what)
    paths = _require(obj, "paths", list, what)
    labels = [_parse_path(p, f"{what} path {i}") for i, p in enumerate(paths)]
    try:
        if kind == KIND_SPLITTER:
            _check_keys(obj, {"kind", "m", "paths"}, what)
            if len(labels) != 2:
                raise ParseError(f"{what}: splitter needs 2 paths, got {len(labels)}")
            return OamBeamSplitter(_require(obj, "m", int, what), labels[0], labels[1])
        if kind == KIND_HOLOGRAM:
            _check_keys(obj, {"kind", "v", "paths"}, what)
            if len(labels) != 1:
                raise ParseError(f"{what}: hologram needs 1 path, got {len(labels)}")
            return Hologram(labels[0], _require(obj, "v", int, what))
        if kind == KIND_ZPLATE:
            _check_keys(obj, {"kind", "d", "paths"}, what)
            if len(labels) != 1:
                raise ParseError(f"{what}: phase plate needs 1 path, got {len(labels)}")
            return ZPlate(labels[0], _require(obj, "d", int, what))
    except ValueError as exc:  # element invariant violations
        raise ParseError(f"{what}: {exc}") from exc
    raise ParseError(f"{what}: unknown kind {kind!r}")


def _check_keys(obj: dict, allowed: set, what: str):
    extra = set(obj) - allowed
    if extra:
        raise ParseError(f"{what} has unexpected keys {sorted(extra)}")


def parse(text: str) -> NetlistDocument:
    """Read a netlist document; raises ParseError / SchemaVersionMismatch."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(obj, dict):
        raise ParseError(f"document must be an object, got {type(obj).__name__}")
    _check_keys(
        obj,
        {"schema_version", "dimension", "variant", "input_path", "output_path", "elements"},
        "document",
    )
    version = _require(obj, "schema_version", str, "document")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"document has schema version {version!r}, expected {SCHEMA_VERSION!r}"
        )
    dimension = _require(obj, "dimension", int, "document")
    variant = _require(obj, "variant", str, "document")
    if variant not in VARIANTS:
        raise ParseError(f"document variant must be one of {VARIANTS}, got {variant!r}")
    input_path = _parse_path(_require(obj, "input_path", str, "document"), "input_path")
    output_path = _parse_path(_require(obj, "output_path", str, "document"), "output_path")
    raw_elements = _require(obj, "elements", list, "document")
    elements = tuple(_parse_element(el, i) for i, el in enumerate(raw_elements))
    try:
        netlist = Netlist(elements, input_path, output_path, dimension)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return NetlistDocument(netlist=netlist, variant=variant)


# --- DOT rendering ----------------------------------------------------------


def _node_label(element: Element) -> str:
    if isinstance(element, OamBeamSplitter):
        return f"LI_{element.m}"
    if isinstance(element, Hologram):
        return f"Holog{element.v:+d}"
    return f"Z_{element.d}"


def _port_path(element: Element, port: str) -> PathLabel:
    if isinstance(element, OamBeamSplitter):
        return element.port_x if port.endswith("x") else element.port_y
    return element.path


def export_dot(device: Netlist | PortGraph) -> str:
    """Graphviz text for a netlist or port graph.

    Element nodes appear in netlist order as n0, n1, ...; entries are
    points and terminals double circles.  Edges carry the path label;
    edges re-entering an element backwards are dashed.
    """
    graph = device if isinstance(device, PortGraph) else netlist_to_portgraph(device)
    lines = ["digraph device {", "  rankdir=LR;"]
    for path in sorted(graph.entries):
        lines.append(f'  in_{path} [shape=point, xlabel="{path}"];')
    for index, element in enumerate(graph.nodes):
        lines.append(f'  n{index} [shape=box, label="{_node_label(element)}"];')
    terminal_labels = sorted(
        {str(target[1]) for target in graph.wiring.values() if target[0] == "term"}
    )
    for label in terminal_labels:
        lines.append(f'  t_{label} [shape=doublecircle, label="{label}"];')

    def endpoint_text(endpoint) -> str:
        if endpoint[0] == "term":
            return f"t_{endpoint[1]}"
        return f"n{endpoint[1]}"

    for path in sorted(graph.entries):
        target = graph.entries[path]
        lines.append(f'  in_{path} -> {endpoint_text(target)} [label="{path}"];')
    for (index, port) in sorted(graph.wiring, key=lambda key: (key[0], key[1])):
        target = graph.wiring[(index, port)]
        label = _port_path(graph.nodes[index], port)
        backward = port.startswith("b") or (target[0] == "node" and target[2].startswith("b"))
        style = ", style=dashed" if backward else ""
        lines.append(f'  n{index} -> {endpoint_text(target)} [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- state expressions ------------------------------------------------------

_KET_RE = re.compile(r"\|\s*(-?\d+)\s*>")


def _parse_coefficient(chunk: str, first: bool) -> complex:
    text = chunk.strip()
    if not first and (not text or text[0] not in "+-"):
        raise ParseError(f"expected '+' between terms, got {chunk!r}")
    if text.startswith("+"):  # the joiner; any sign belongs to the coefficient
        text = text[1:].strip()
    if text == "":
        return 1.0 + 0j
    if text == "-":
        return -1.0 + 0j
    if text.endswith("*"):
        text = text[:-1].strip()
    text = text.replace(" ", "")
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    text = text.replace("i", "j")
    text = re.sub(r"(?<![0-9.])j", "1j", text)
    try:
        return complex(text)
    except ValueError as exc:
        raise ParseError(f"invalid coefficient {chunk.strip()!r}") from exc


def parse_state(expression: str, path: PathLabel) -> ModeVector:
    """Parse ``c*|k> + c*|k> + ...`` into a state on *path*.

    Coefficients are optional (default 1) and may be float or complex
    with either ``j`` or ``i`` as the imaginary unit; a leading ``-``
    negates its term.  Duplicate kets sum.
    """
    terms: list[tuple[tuple[PathLabel, int], complex]] = []
    cursor = 0
    first = True
    for match in _KET_RE.finditer(expression):
        coeff = _parse_coefficient(expression[cursor : match.start()], first)
        terms.append(((path, int(match.group(1))), coeff))
        cursor = match.end()
        first = False
    if first:
        raise ParseError(f"no kets found in {expression!r}")
    if expression[cursor:].strip():
        raise ParseError(f"trailing text {expression[cursor:].strip()!r} after last ket")
    return ModeVector(terms)


def format_amplitude(amp: complex) -> str:
    """Short text for an amplitude; empty for 1, '-' for -1."""
    if abs(amp - 1) < 1e-9:
        return ""
    if abs(amp + 1) < 1e-9:
        return "-"
    real, imag = amp.real, amp.imag
    if abs(imag) < 1e-9:
        return f"{real:.10g}"
    if abs(real) < 1e-9:
        return f"{imag:.10g}j"
    return f"({real:.10g}{imag:+.10g}j)"


def format_state(state: ModeVector) -> str:
    """One line per component, sorted by path then OAM value."""
    lines = []
    for (path, ell), amp in sorted(state.items()):
        lines.append(f"{format_amplitude(amp)}|{ell}> @ {path}")
    return "\n".join(lines)
