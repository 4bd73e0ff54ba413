"""DOT output following the debtree drawing conventions.

Edge styling is fixed by convention: Depends is blue and solid, Recommends
black and solid, Pre-Depends purple with bold weight, Suggests black and
dotted, Conflicts red, and Provides green with an inverted arrowhead (drawn
from the provider to the virtual name).  Real packages are boxes, virtual
names octagons, and packages outside the universe dashed boxes.

Output is deterministic: nodes sort by (kind, name, version) and edges by
(endpoints, kind), so identical graphs always render byte-identically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import DepGraph, Edge, Node, NodeKind
from .relations import RelationKind
from .version import compare_versions


@dataclass(frozen=True)
class EdgeStyle:
    color: str
    line_style: str
    arrowhead: str = "normal"


@dataclass(frozen=True)
class NodeStyle:
    shape: str
    outline: str = "solid"


MANDATORY_EDGE_STYLES: Mapping[RelationKind, EdgeStyle] = {
    RelationKind.DEPENDS: EdgeStyle("blue", "solid"),
    RelationKind.PRE_DEPENDS: EdgeStyle("purple", "bold"),
    RelationKind.RECOMMENDS: EdgeStyle("black", "solid"),
    RelationKind.SUGGESTS: EdgeStyle("black", "dotted"),
    RelationKind.PROVIDES: EdgeStyle("green", "solid", arrowhead="inv"),
    RelationKind.CONFLICTS: EdgeStyle("red", "solid"),
}

# Kinds outside the conventional six get styles of this build's choosing.
EXTENDED_EDGE_STYLES: Mapping[RelationKind, EdgeStyle] = {
    RelationKind.ENHANCES: EdgeStyle("black", "dashed"),
    RelationKind.BREAKS: EdgeStyle("red", "dashed"),
    RelationKind.REPLACES: EdgeStyle("orange", "dashed"),
}

DEFAULT_NODE_STYLES: Mapping[NodeKind, NodeStyle] = {
    NodeKind.REAL: NodeStyle("box"),
    NodeKind.VIRTUAL: NodeStyle("octagon"),
    NodeKind.EXTERNAL: NodeStyle("box", outline="dashed"),
}


@dataclass(frozen=True)
class DotStyle:
    """Edge and node styling for DOT output.

    Construction fails if a conventional kind is mapped to anything but its
    conventional style, or if any node kind lacks a style; a style may cover
    only a subset of relation kinds, but emit_dot requires every kind
    present in the graph to be mapped.
    """

    edge_styles: Mapping[RelationKind, EdgeStyle]
    node_styles: Mapping[NodeKind, NodeStyle]

    def __post_init__(self):
        object.__setattr__(self, "edge_styles", dict(self.edge_styles))
        object.__setattr__(self, "node_styles", dict(self.node_styles))
        for kind, style in self.edge_styles.items():
            mandated = MANDATORY_EDGE_STYLES.get(kind)
            if mandated is not None and style != mandated:
                raise ValueError(
                    f"{kind.field_name} must be styled {mandated}, got {style}"
                )
        for kind in NodeKind:
            if kind not in self.node_styles:
                raise ValueError(f"no node style for {kind.value!r} nodes")

    @classmethod
    def default(cls) -> "DotStyle":
        return cls(dict(MANDATORY_EDGE_STYLES), dict(DEFAULT_NODE_STYLES))

    @classmethod
    def covering(cls, kinds: Iterable[RelationKind]) -> "DotStyle":
        """The default style, widened to cover any of the other three kinds."""
        edge_styles = dict(MANDATORY_EDGE_STYLES)
        for kind in kinds:
            if kind not in edge_styles:
                edge_styles[kind] = EXTENDED_EDGE_STYLES[kind]
        return cls(edge_styles, dict(DEFAULT_NODE_STYLES))

    def restricted_to(self, kinds: Iterable[RelationKind]) -> "DotStyle":
        kinds = frozenset(kinds)
        return DotStyle(
            {k: v for k, v in self.edge_styles.items() if k in kinds},
            dict(self.node_styles),
        )


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


_KIND_RANK = {kind: rank for rank, kind in enumerate(NodeKind)}
_EDGE_KIND_RANK = {kind: rank for rank, kind in enumerate(RelationKind)}


def _node_order(a: Node, b: Node) -> int:
    if a.kind != b.kind:
        return -1 if _KIND_RANK[a.kind] < _KIND_RANK[b.kind] else 1
    if a.name != b.name:
        return -1 if a.name < b.name else 1
    if a.version is None or b.version is None:
        return 0 if a.version is b.version else (-1 if a.version is None else 1)
    return compare_versions(a.version, b.version)


def _edge_sort_key(edge: Edge):
    return (
        edge.source,
        edge.target,
        _EDGE_KIND_RANK[edge.kind],
        edge.alt_group or 0,
        edge.constraint or "",
    )


def _node_line(node: Node, style: NodeStyle) -> str:
    label = node.name if node.kind is not NodeKind.VIRTUAL else f"{node.name} (virtual)"
    attrs = [f"label={_quote(label)}", f"shape={style.shape}"]
    if style.outline != "solid":
        attrs.append(f"style={style.outline}")
    return f"  {_quote(node.id)} [{', '.join(attrs)}];"


def _edge_line(edge: Edge, style: EdgeStyle) -> str:
    attrs = [f"color={style.color}", f"style={style.line_style}"]
    if style.arrowhead != "normal":
        attrs.append(f"arrowhead={style.arrowhead}")
    if edge.alt_group is not None:
        attrs.append(f"label={_quote(f'alt {edge.alt_group}')}")
    elif edge.constraint is not None:
        attrs.append(f"label={_quote(edge.constraint)}")
    return f"  {_quote(edge.source)} -> {_quote(edge.target)} [{', '.join(attrs)}];"


def emit_dot(graph: DepGraph, style: DotStyle | None = None, title: str | None = None) -> str:
    """Render a graph as DOT text; identical graphs yield identical bytes."""
    if style is None:
        style = DotStyle.default()
    unmapped = {edge.kind for edge in graph.edges} - set(style.edge_styles)
    if unmapped:
        names = ", ".join(sorted(kind.field_name for kind in unmapped))
        raise ValueError(f"style lacks mappings for: {names}")

    lines = ["digraph deps {"]
    if title is not None:
        lines.append(f"  label={_quote(title)};")
    for node in sorted(graph.nodes, key=functools.cmp_to_key(_node_order)):
        lines.append(_node_line(node, style.node_styles[node.kind]))
    for edge in sorted(graph.edges, key=_edge_sort_key):
        lines.append(_edge_line(edge, style.edge_styles[edge.kind]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_legend(style: DotStyle | None = None) -> str:
    """A DOT subgraph fragment with one labelled sample edge per mapped kind."""
    if style is None:
        style = DotStyle.default()
    lines = ["subgraph cluster_legend {", '  label="legend";']
    for kind in RelationKind:
        edge_style = style.edge_styles.get(kind)
        if edge_style is None:
            continue
        tail = _quote(f"legend:{kind.field_name}:a")
        head = _quote(f"legend:{kind.field_name}:b")
        lines.append(f"  {tail} [label=\"\", shape=point];")
        lines.append(f"  {head} [label=\"\", shape=point];")
        attrs = [f"color={edge_style.color}", f"style={edge_style.line_style}"]
        if edge_style.arrowhead != "normal":
            attrs.append(f"arrowhead={edge_style.arrowhead}")
        attrs.append(f"label={_quote(kind.field_name)}")
        lines.append(f"  {tail} -> {head} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
