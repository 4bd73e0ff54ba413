"""Typed dependency graphs and installability analyses.

build_graph turns a package universe into nodes (real, virtual, external)
and edges typed by relation kind.  check_installability walks the
Depends/Pre-Depends closure of one root using leftmost-alternative
semantics, reporting missing OR-groups, conflicts inside the closure, and
Pre-Depends cycles.  Conflicts are reported, never solved.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .control import PackageMeta
from .errors import UnknownRoot
from .relations import PackageAtom, RelationKind, render_atom, render_or_group
from .repo import PackageUniverse
from .version import DebVersion, satisfies

DEFAULT_GRAPH_KINDS = frozenset(
    {
        RelationKind.DEPENDS,
        RelationKind.PRE_DEPENDS,
        RelationKind.RECOMMENDS,
        RelationKind.PROVIDES,
        RelationKind.CONFLICTS,
    }
)


class NodeKind(enum.Enum):
    REAL = "real"
    VIRTUAL = "virtual"
    EXTERNAL = "external"


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    name: str
    version: DebVersion | None = None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    kind: RelationKind
    constraint: str | None = None
    alt_group: int | None = None


@dataclass(frozen=True)
class DepGraph:
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]


def _real_id(meta: PackageMeta) -> str:
    return f"real:{meta.name}:{meta.version}"


def _record_key(meta: PackageMeta) -> tuple[str, str, str]:
    return (meta.name, str(meta.version), meta.architecture)


class _Builder:
    def __init__(self, universe: PackageUniverse, include_external: bool):
        self.universe = universe
        self.include_external = include_external
        self.nodes: dict[str, Node] = {}
        self.edges: list[Edge] = []

    def real_node(self, meta: PackageMeta) -> str:
        node_id = _real_id(meta)
        if node_id not in self.nodes:
            self.nodes[node_id] = Node(node_id, NodeKind.REAL, meta.name, meta.version)
        return node_id

    def virtual_node(self, name: str) -> str:
        node_id = f"virtual:{name}"
        if node_id not in self.nodes:
            self.nodes[node_id] = Node(node_id, NodeKind.VIRTUAL, name)
        return node_id

    def external_node(self, name: str) -> str:
        node_id = f"external:{name}"
        if node_id not in self.nodes:
            self.nodes[node_id] = Node(node_id, NodeKind.EXTERNAL, name)
        return node_id

    def resolve_target(self, atom: PackageAtom) -> tuple[str | None, PackageMeta | None]:
        """Map an atom to a node id and, for real targets, the chosen record.

        Real names win over virtual ones; among versions, the highest one
        satisfying the constraint is chosen, falling back to the highest
        version when none satisfies (the analysis, not the drawing, flags
        that case).
        """
        records = self.universe.by_name.get(atom.name)
        if records:
            chosen = self.universe.best_real_match(atom) or records[0]
            return self.real_node(chosen), chosen
        if atom.name in self.universe.provides_index:
            return self.virtual_node(atom.name), None
        if self.include_external:
            return self.external_node(atom.name), None
        return None, None

    def add_package_edges(self, meta: PackageMeta, kinds: frozenset[RelationKind]):
        """Append this package's edges; returns real targets for traversal."""
        source = self.real_node(meta)
        reached: list[PackageMeta] = []
        alt_ordinal = 0
        for kind in RelationKind:
            if kind not in kinds:
                continue
            expr = meta.relations.get(kind)
            if expr is None:
                continue
            if kind is RelationKind.PROVIDES:
                for group in expr.groups:
                    for atom in group:
                        constraint = (
                            f"= {atom.provided_version}"
                            if atom.provided_version is not None
                            else None
                        )
                        self.edges.append(
                            Edge(source, self.virtual_node(atom.name), kind, constraint)
                        )
                continue
            for group in expr.groups:
                alt = None
                if len(group) > 1:
                    alt_ordinal += 1
                    alt = alt_ordinal
                for atom in group:
                    target, record = self.resolve_target(atom)
                    if target is None:
                        continue
                    constraint = (
                        f"{atom.constraint.op} {atom.constraint.version}"
                        if atom.constraint is not None
                        else None
                    )
                    self.edges.append(Edge(source, target, kind, constraint, alt))
                    if record is not None:
                        reached.append(record)
        return reached


def build_graph(
    universe: PackageUniverse,
    roots: Sequence[str] | None = None,
    kinds: Iterable[RelationKind] = DEFAULT_GRAPH_KINDS,
    max_depth: int | None = None,
    include_external: bool = False,
) -> DepGraph:
    """Build the typed dependency graph.

    Without roots, every package in the universe becomes a node and
    contributes its edges (max_depth has no effect).  With roots, the graph
    is the breadth-first reach of those names, with edge expansion stopping
    at max_depth hops from a root.  Dependencies on names absent from the
    universe appear as external nodes when include_external is set and are
    omitted otherwise.
    """
    kinds = frozenset(kinds)
    builder = _Builder(universe, include_external)

    if roots is None:
        for meta in universe.packages:
            builder.real_node(meta)
        for meta in universe.packages:
            builder.add_package_edges(meta, kinds)
    else:
        queue: deque[tuple[PackageMeta, int]] = deque()
        visited = set()
        for root in roots:
            records = universe.by_name.get(root)
            if not records:
                raise UnknownRoot(root)
            for record in records:
                key = _record_key(record)
                if key not in visited:
                    visited.add(key)
                    builder.real_node(record)
                    queue.append((record, 0))
        while queue:
            record, depth = queue.popleft()
            if max_depth is not None and depth >= max_depth:
                continue
            for target in builder.add_package_edges(record, kinds):
                key = _record_key(target)
                if key not in visited:
                    visited.add(key)
                    queue.append((target, depth + 1))

    return DepGraph(nodes=tuple(builder.nodes.values()), edges=tuple(builder.edges))


@dataclass
class AnalysisReport:
    """What check_installability found for one root."""

    missing: list[tuple[str, str]]
    conflicts: list[tuple[str, str, str]]
    predepends_cycles: list[list[str]]
    closure: list[str]

    @property
    def is_clean(self) -> bool:
        return not (self.missing or self.conflicts or self.predepends_cycles)


def check_installability(
    universe: PackageUniverse, root: str, with_recommends: bool = False
) -> AnalysisReport:
    """Walk the dependency closure of root and report what blocks it.

    Each OR-group is resolved to its leftmost alternative satisfiable in
    the universe; among versions the highest satisfying one is chosen, and
    a virtual alternative pulls in its first matching provider (universe
    order).  Groups with no satisfiable alternative are reported as
    missing.  Conflicts atoms of closure members matching other closure
    members are reported as pairs; a package never conflicts with itself.
    Cycles over the chosen Pre-Depends edges are always reported.
    """
    records = universe.by_name.get(root)
    if not records:
        raise UnknownRoot(root)
    root_record = records[0]

    kinds = [RelationKind.DEPENDS, RelationKind.PRE_DEPENDS]
    if with_recommends:
        kinds.append(RelationKind.RECOMMENDS)

    missing: list[tuple[str, str]] = []
    pre_edges: dict[str, set[str]] = {}
    visited = {_record_key(root_record)}
    order: list[PackageMeta] = [root_record]
    queue = deque([root_record])

    while queue:
        meta = queue.popleft()
        for kind in kinds:
            expr = meta.relations.get(kind)
            if expr is None:
                continue
            for group in expr.groups:
                chosen: PackageMeta | None = None
                for atom in group:
                    chosen = universe.best_real_match(atom)
                    if chosen is None:
                        providers = universe.matching_providers(atom)
                        if providers:
                            chosen = providers[0]
                    if chosen is not None:
                        break
                if chosen is None:
                    missing.append((meta.name, render_or_group(group)))
                    continue
                if kind is RelationKind.PRE_DEPENDS:
                    pre_edges.setdefault(meta.name, set()).add(chosen.name)
                key = _record_key(chosen)
                if key not in visited:
                    visited.add(key)
                    order.append(chosen)
                    queue.append(chosen)

    closure: list[str] = []
    for meta in order:
        if meta.name not in closure:
            closure.append(meta.name)

    conflicts: list[tuple[str, str, str]] = []
    reported = set()
    for meta in order:
        expr = meta.relations.get(RelationKind.CONFLICTS)
        if expr is None:
            continue
        for group in expr.groups:
            for atom in group:
                if atom.name == meta.name:
                    continue  # a package never conflicts with itself
                for other in order:
                    if other is meta:
                        continue
                    if _conflict_matches(atom, other):
                        entry = (meta.name, other.name, render_atom(atom))
                        if entry not in reported:
                            reported.add(entry)
                            conflicts.append(entry)

    cycles = _elementary_cycles(
        {name: sorted(targets) for name, targets in pre_edges.items()}
    )

    return AnalysisReport(
        missing=missing,
        conflicts=conflicts,
        predepends_cycles=cycles,
        closure=closure,
    )


def _conflict_matches(atom: PackageAtom, candidate: PackageMeta) -> bool:
    if candidate.name == atom.name:
        return atom.constraint is None or satisfies(
            candidate.version, atom.constraint.op, atom.constraint.version
        )
    # An unversioned Conflicts also applies to providers of the name; a
    # versioned one never matches a virtual package.
    if atom.constraint is not None:
        return False
    provides = candidate.relations.get(RelationKind.PROVIDES)
    if provides is None:
        return False
    return any(a.name == atom.name for group in provides.groups for a in group)


def detect_cycles(
    graph: DepGraph, kinds: Iterable[RelationKind] = (RelationKind.PRE_DEPENDS,)
) -> list[list[str]]:
    """Elementary cycles over edges of the given kinds, as node-name lists.

    Each cycle is rotated to start at its smallest node and the list is
    sorted, so the result is deterministic.
    """
    kinds = frozenset(kinds)
    names = {node.id: node.name for node in graph.nodes}
    adjacency: dict[str, set[str]] = {}
    for edge in graph.edges:
        if edge.kind in kinds:
            adjacency.setdefault(edge.source, set()).add(edge.target)
    id_cycles = _elementary_cycles(
        {source: sorted(targets) for source, targets in adjacency.items()}
    )
    return [[names[node_id] for node_id in cycle] for cycle in id_cycles]


def _elementary_cycles(adjacency: Mapping[str, Sequence[str]]) -> list[list[str]]:
    """Enumerate elementary cycles of a small digraph.

    Every cycle is discovered exactly once, anchored at its smallest node:
    the search from an anchor only visits nodes sorting after it.
    """
    vertices = sorted(set(adjacency) | {v for targets in adjacency.values() for v in targets})
    cycles: list[list[str]] = []

    def search(anchor: str, node: str, path: list[str], on_path: set[str]):
        for target in adjacency.get(node, ()):
            if target == anchor:
                cycles.append(list(path))
            elif target > anchor and target not in on_path:
                path.append(target)
                on_path.add(target)
                search(anchor, target, path, on_path)
                on_path.discard(target)
                path.pop()

    for anchor in vertices:
        search(anchor, anchor, [anchor], {anchor})

    cycles.sort()
    return cycles
