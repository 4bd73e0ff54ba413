"""Scanning .deb trees into Packages indexes and loading them back.

scan_repository walks a directory for *.deb files (skipping hidden
directories), render_index writes the Packages text, and load_universe
turns one or more index texts into a queryable PackageUniverse.
"""

from __future__ import annotations

import functools
import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from .control import (
    ControlField,
    ControlStanza,
    PackageMeta,
    parse_stanzas,
    render_stanzas,
    to_package_meta,
)
from .debfile import read_deb
from .errors import DebmapError, IndexLoadError, ScanError
from .relations import PackageAtom, RelationKind
from .version import DebVersion, compare_versions, satisfies

logger = logging.getLogger(__name__)

_SCAN_FIELDS = frozenset(("filename", "size", "sha256"))


@dataclass(frozen=True)
class IndexEntry:
    """One package file found by a scan."""

    meta: PackageMeta
    filename: str
    size: int
    sha256: str


def _entry_order(a: IndexEntry, b: IndexEntry) -> int:
    if a.meta.name != b.meta.name:
        return -1 if a.meta.name < b.meta.name else 1
    by_version = compare_versions(a.meta.version, b.meta.version)
    if by_version:
        return -by_version  # newest first
    if a.filename != b.filename:
        return -1 if a.filename < b.filename else 1
    return 0


def scan_repository(
    root: str | Path,
    *,
    on_error: Callable[[Path, Exception], None] | None = None,
) -> list[IndexEntry]:
    """Index every *.deb under root, sorted by name then version descending.

    Hidden directories are skipped.  A file that cannot be read or parsed
    does not abort the scan: it is passed to on_error (or logged when no
    callback is given) and the remaining files are still indexed.
    """
    root = Path(root)
    if not root.is_dir():
        raise ScanError(root)

    def report(path: Path, exc: Exception):
        if on_error is not None:
            on_error(path, exc)
        else:
            logger.warning("skipping %s: %s", path, exc)

    entries: list[IndexEntry] = []
    for path in sorted(root.rglob("*.deb")):
        relative = path.relative_to(root)
        if any(part.startswith(".") for part in relative.parts[:-1]):
            continue
        if not path.is_file():
            continue
        try:
            payload = path.read_bytes()
            meta = to_package_meta(read_deb(payload).control)
        except (DebmapError, OSError) as exc:
            report(path, exc)
            continue
        entries.append(
            IndexEntry(
                meta=meta,
                filename=relative.as_posix(),
                size=len(payload),
                sha256=hashlib.sha256(payload).hexdigest(),
            )
        )
    entries.sort(key=functools.cmp_to_key(_entry_order))
    return entries


def render_index(entries: list[IndexEntry]) -> str:
    """Render scan results as Packages text.

    Each entry is its control stanza with Filename, Size, and SHA256
    appended; any stale copies of those fields are replaced.
    """
    stanzas = []
    for entry in entries:
        base = [
            field
            for field in entry.meta.to_stanza().entries
            if field.name.lower() not in _SCAN_FIELDS
        ]
        base.extend(
            (
                ControlField("Filename", entry.filename),
                ControlField("Size", str(entry.size)),
                ControlField("SHA256", entry.sha256),
            )
        )
        stanzas.append(ControlStanza(tuple(base)))
    return render_stanzas(stanzas)


class PackageUniverse:
    """All known packages plus name and virtual-name lookup tables.

    by_name lists each name's records sorted by version descending;
    provides_index maps a virtual name to (provider, provided_version)
    pairs in insertion order.  Records must be unique by
    (name, version, architecture).
    """

    def __init__(self, packages: Iterable[PackageMeta]):
        self.packages: list[PackageMeta] = list(packages)
        seen = set()
        for meta in self.packages:
            key = (meta.name, str(meta.version), meta.architecture)
            if key in seen:
                raise ValueError(f"duplicate package record {key}")
            seen.add(key)

        self.by_name: dict[str, list[PackageMeta]] = {}
        for meta in self.packages:
            self.by_name.setdefault(meta.name, []).append(meta)
        for records in self.by_name.values():
            records.sort(
                key=functools.cmp_to_key(
                    lambda a, b: -compare_versions(a.version, b.version)
                )
            )

        self.provides_index: dict[str, list[tuple[PackageMeta, DebVersion | None]]] = {}
        for meta in self.packages:
            expr = meta.relations.get(RelationKind.PROVIDES)
            if expr is None:
                continue
            for group in expr.groups:
                for atom in group:
                    self.provides_index.setdefault(atom.name, []).append(
                        (meta, atom.provided_version)
                    )

    def best_real_match(self, atom: PackageAtom) -> PackageMeta | None:
        """Highest version of atom.name satisfying its constraint, if any."""
        for meta in self.by_name.get(atom.name, ()):
            if atom.constraint is None or satisfies(
                meta.version, atom.constraint.op, atom.constraint.version
            ):
                return meta
        return None

    def matching_providers(self, atom: PackageAtom) -> list[PackageMeta]:
        """Providers of atom.name, honouring versioned-Provides semantics.

        A versioned constraint is only satisfied by a versioned Provides
        whose declared version meets the bound; an unversioned Provides
        never satisfies a versioned dependency.
        """
        matches = []
        for provider, provided_version in self.provides_index.get(atom.name, ()):
            if atom.constraint is None:
                matches.append(provider)
            elif provided_version is not None and satisfies(
                provided_version, atom.constraint.op, atom.constraint.version
            ):
                matches.append(provider)
        return matches


def load_universe(index_texts: Iterable[str]) -> PackageUniverse:
    """Parse Packages texts into a universe.

    Duplicate (name, version, architecture) records keep the first
    occurrence.  Parse failures are annotated with the 1-based input
    ordinal and stanza number.
    """
    packages: list[PackageMeta] = []
    seen = set()
    for input_ordinal, text in enumerate(index_texts, start=1):
        try:
            stanzas = parse_stanzas(text)
        except DebmapError as exc:
            raise IndexLoadError(input_ordinal, None, exc) from exc
        for stanza_number, stanza in enumerate(stanzas, start=1):
            try:
                meta = to_package_meta(stanza)
            except DebmapError as exc:
                raise IndexLoadError(input_ordinal, stanza_number, exc) from exc
            key = (meta.name, str(meta.version), meta.architecture)
            if key in seen:
                continue
            seen.add(key)
            packages.append(meta)
    return PackageUniverse(packages)
