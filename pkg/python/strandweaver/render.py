"""Text renderings of slice forms.

``ascii`` draws one row per slice between a row of input strands and a row
of output strands; ``dot`` emits Graphviz source for the strand graph built
by :func:`to_networkx`.
"""

from __future__ import annotations

import logging
from typing import List, Tuple, Union

import graphviz
import networkx as nx

from .diagram import Diagram, GeneratorKind, SliceForm, to_slices
from .matrix import format_scalar

_logger = logging.getLogger(__name__)

FORMATS = ("ascii", "dot")

_GLYPHS = {
    GeneratorKind.DEL: "×",
    GeneratorKind.E: "\\/",
    GeneratorKind.S: "><",
}


def _as_slices(d: Union[Diagram, SliceForm]) -> SliceForm:
    return d if isinstance(d, SliceForm) else to_slices(d)


def _glyph(gen) -> str:
    if gen.kind is GeneratorKind.C:
        return f"[{format_scalar(gen.param)}]"
    return _GLYPHS[gen.kind]


def _strands(n: int) -> str:
    return " ".join(["|"] * n) if n else "∅"


def render_ascii(d: Union[Diagram, SliceForm]) -> str:
    """One text row per slice, inputs on top.

    >>> print(render_ascii(c("1/3")))  # doctest: +SKIP
    |
    [1/3]
    | |
    """
    s = _as_slices(d)
    rows = [_strands(s.dom)]
    for sl in s.slices:
        rows.append(" ".join(["|"] * sl.left + [_glyph(sl.gen)] + ["|"] * sl.right))
    rows.append(_strands(s.cod))
    return "\n".join(rows) + "\n"


def to_networkx(d: Union[Diagram, SliceForm]) -> nx.MultiDiGraph:
    """Strand graph of a slice form.

    Nodes are ``in1 .. in<dom>``, one ``g<i>`` per slice and ``out1 ..
    out<cod>``; every strand segment is an edge carrying the output port
    it leaves from and the input port it enters.
    """
    s = _as_slices(d)
    graph = nx.MultiDiGraph(dom=s.dom, cod=s.cod)
    frontier: List[Tuple[str, int]] = []
    for i in range(1, s.dom + 1):
        graph.add_node(f"in{i}", role="input", label=str(i))
        frontier.append((f"in{i}", 0))
    for index, sl in enumerate(s.slices):
        node = f"g{index}"
        graph.add_node(node, role="generator", kind=sl.gen.kind.value,
                       label=str(sl.gen), slice=index)
        stop = sl.left + sl.gen.dom
        for port, (source, source_port) in enumerate(frontier[sl.left:stop]):
            graph.add_edge(source, node, src_port=source_port, dst_port=port)
        frontier[sl.left:stop] = [(node, port) for port in range(sl.gen.cod)]
    for j, (source, source_port) in enumerate(frontier, start=1):
        graph.add_node(f"out{j}", role="output", label=str(j))
        graph.add_edge(source, f"out{j}", src_port=source_port, dst_port=0)
    _logger.debug("strand graph with %d nodes, %d edges", graph.number_of_nodes(), graph.number_of_edges())
    return graph


_SHAPES = {"input": "circle", "output": "doublecircle", "generator": "box"}


def render_dot(d: Union[Diagram, SliceForm]) -> str:
    """Graphviz source for the strand graph; ports become edge end labels."""
    graph = to_networkx(d)
    dot = graphviz.Digraph("diagram")
    dot.attr(rankdir="TB")
    for node, attrs in graph.nodes(data=True):
        dot.node(node, label=attrs["label"], shape=_SHAPES[attrs["role"]])
    for u, v, attrs in graph.edges(data=True):
        dot.edge(u, v, taillabel=str(attrs["src_port"]), headlabel=str(attrs["dst_port"]))
    return dot.source


def render(d: Union[Diagram, SliceForm], fmt: str = "ascii") -> str:
    """Render in one of :data:`FORMATS`; anything else is a ``ValueError``."""
    if fmt == "ascii":
        return render_ascii(d)
    if fmt == "dot":
        return render_dot(d)
    raise ValueError(f"unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")


__all__ = ["FORMATS", "render", "render_ascii", "render_dot", "to_networkx"]
