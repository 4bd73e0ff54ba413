"""debmap: Debian package metadata parsing, repository indexing, and
dependency graphs rendered in the debtree DOT conventions."""

from .control import (
    ControlField,
    ControlStanza,
    PackageMeta,
    parse_stanzas,
    render_stanzas,
    to_package_meta,
)
from .debfile import DebArchive, build_fixture_deb, read_deb
from .dot import (
    DotStyle,
    EdgeStyle,
    NodeStyle,
    emit_dot,
    emit_legend,
)
from .graph import (
    DEFAULT_GRAPH_KINDS,
    AnalysisReport,
    DepGraph,
    Edge,
    Node,
    NodeKind,
    build_graph,
    check_installability,
    detect_cycles,
)
from .relations import (
    PackageAtom,
    RelationExpr,
    RelationKind,
    VersionConstraint,
    parse_relation,
    render_relation,
)
from .repo import (
    IndexEntry,
    PackageUniverse,
    load_universe,
    render_index,
    scan_repository,
)
from .version import DebVersion, compare_versions, parse_version, satisfies

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "ControlField",
    "ControlStanza",
    "DEFAULT_GRAPH_KINDS",
    "DebArchive",
    "DebVersion",
    "DepGraph",
    "DotStyle",
    "Edge",
    "EdgeStyle",
    "IndexEntry",
    "Node",
    "NodeKind",
    "NodeStyle",
    "PackageAtom",
    "PackageMeta",
    "PackageUniverse",
    "RelationExpr",
    "RelationKind",
    "VersionConstraint",
    "build_fixture_deb",
    "build_graph",
    "check_installability",
    "compare_versions",
    "detect_cycles",
    "emit_dot",
    "emit_legend",
    "load_universe",
    "parse_relation",
    "parse_stanzas",
    "parse_version",
    "read_deb",
    "render_index",
    "render_relation",
    "render_stanzas",
    "satisfies",
    "scan_repository",
    "to_package_meta",
]
