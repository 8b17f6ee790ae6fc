"""Deterministic graph serialisations: edge list, DOT and GraphML."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .errors import InvalidParameterError

from .zdgraph import ZDGraph

FORMATS = ("edgelist", "dot", "graphml")


def to_edgelist(g: ZDGraph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def to_dot(g: ZDGraph) -> str:
    lines = [f'graph "{g.ring}" {{']
    for v, (elem, c) in enumerate(zip(g.vertices.tolist(), g.classes)):
        lines.append(f'  {v} [label="{elem}", element={elem}, class="{c}"];')
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphml(g: ZDGraph) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="element" for="node" attr.name="element" attr.type="long"/>',
        '  <key id="class" for="node" attr.name="class" attr.type="string"/>',
        f"  <graph id={quoteattr(str(g.ring))} edgedefault=\"undirected\">",
    ]
    for v, (elem, c) in enumerate(zip(g.vertices.tolist(), g.classes)):
        out.append(
            f'    <node id="n{v}"><data key="element">{elem}</data>'
            f'<data key="class">{c}</data></node>'
        )
    out.extend(f'    <edge source="n{u}" target="n{v}"/>' for u, v in g.edges())
    out += ["  </graph>", "</graphml>"]
    return "\n".join(out) + "\n"


def render(g: ZDGraph, fmt: str) -> str:
    try:
        writer = {"edgelist": to_edgelist, "dot": to_dot, "graphml": to_graphml}[fmt]
    except KeyError:
        raise InvalidParameterError(f"unknown export format {fmt!r}; choose from {', '.join(FORMATS)}") from None
    return writer(g)
