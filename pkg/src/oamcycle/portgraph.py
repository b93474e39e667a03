"""Port-level wiring graphs for netlists.

A netlist is a linear element sequence; threading each path through the
elements that touch it yields a directed graph of typed ports.  The graph
form exists for two reasons: simplified layouts re-route light through an
element *backwards* (which a flat sequence cannot express), and rendering.

Endpoints are tagged tuples: ``("node", index, port)`` or
``("term", path)``.  Splitter ports are ``in_x/in_y/out_x/out_y`` for the
forward direction; the backward direction prefixes ``b`` (``bin_x`` enters
the splitter against its forward orientation and leaves via ``bout_*``).
Single-path elements use ``in/out`` and ``bin/bout``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .model import Element, Netlist, OamBeamSplitter, PathLabel, element_paths

Endpoint = Union[tuple[str, int, str], tuple[str, PathLabel]]


def node_endpoint(index: int, port: str) -> Endpoint:
    return ("node", index, port)


def terminal(path: PathLabel) -> Endpoint:
    return ("term", path)


@dataclass(frozen=True)
class PortGraph:
    """Feed-through wiring of elements, with per-path entry points.

    ``wiring`` maps every occupied output port to the endpoint it feeds.
    ``entries`` maps each path that enters the device to its first port;
    paths absent from ``entries`` pass straight through to the terminal of
    the same label.
    """

    nodes: tuple[Element, ...]
    wiring: Mapping[tuple[int, str], Endpoint]
    entries: Mapping[PathLabel, Endpoint]
    input_path: PathLabel
    output_path: PathLabel
    dimension: int

    def entry_for(self, path: PathLabel) -> Endpoint:
        return self.entries.get(path, terminal(path))


def _port_refs(element: Element) -> list[tuple[PathLabel, str, str]]:
    if isinstance(element, OamBeamSplitter):
        return [(element.port_x, "in_x", "out_x"), (element.port_y, "in_y", "out_y")]
    (path,) = element_paths(element)
    return [(path, "in", "out")]


def netlist_to_portgraph(netlist: Netlist) -> PortGraph:
    """Thread every path through the element sequence."""
    wiring: dict[tuple[int, str], Endpoint] = {}
    entries: dict[PathLabel, Endpoint] = {}
    open_out: dict[PathLabel, tuple[int, str]] = {}
    for index, element in enumerate(netlist.elements):
        for path, in_port, out_port in _port_refs(element):
            if path in open_out:
                wiring[open_out[path]] = node_endpoint(index, in_port)
            else:
                entries[path] = node_endpoint(index, in_port)
            open_out[path] = (index, out_port)
    for path, source in open_out.items():
        wiring[source] = terminal(path)
    return PortGraph(
        nodes=tuple(netlist.elements),
        wiring=wiring,
        entries=entries,
        input_path=netlist.input_path,
        output_path=netlist.output_path,
        dimension=netlist.dimension,
    )


def contract_mirrors(graph: PortGraph, pairs: Mapping[int, int]) -> PortGraph:
    """Delete each node in ``pairs`` and re-route its wires through the
    paired survivor's backward ports.

    ``pairs`` maps removed node index -> kept node index.  A wire that fed
    the removed node's ``in_*`` port now feeds the survivor's ``bin_*``
    port, and wires leaving the removed node now leave the survivor's
    ``bout_*`` port, so light retraces the kept element in reverse.
    """
    removed = set(pairs)
    kept = [i for i in range(len(graph.nodes)) if i not in removed]
    relabel = {old: new for new, old in enumerate(kept)}

    def substitute(endpoint: Endpoint) -> Endpoint:
        if endpoint[0] != "node":
            return endpoint
        _, index, port = endpoint
        if index in pairs:
            return node_endpoint(relabel[pairs[index]], "b" + port)
        return node_endpoint(relabel[index], port)

    wiring: dict[tuple[int, str], Endpoint] = {}
    for (index, port), target in graph.wiring.items():
        if index in pairs:
            source = (relabel[pairs[index]], "b" + port)
        else:
            source = (relabel[index], port)
        wiring[source] = substitute(target)
    entries = {path: substitute(ep) for path, ep in graph.entries.items()}
    return PortGraph(
        nodes=tuple(graph.nodes[i] for i in kept),
        wiring=wiring,
        entries=entries,
        input_path=graph.input_path,
        output_path=graph.output_path,
        dimension=graph.dimension,
    )
