"""deb822 control stanzas: parsing, rendering, and package records.

The deb822 shape: stanzas separated by blank lines, ``Field: value`` lines,
continuation lines starting with a space or tab, and a lone '.' as the
placeholder for a blank line inside a multiline value.  Lines may end in LF
or CRLF; output always uses LF.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    BadPackageName,
    ContinuationWithoutField,
    DuplicateField,
    MalformedField,
    MissingMandatoryField,
)
from .relations import (
    PACKAGE_NAME_RE,
    RelationExpr,
    RelationKind,
    parse_relation,
    render_relation,
)
from .version import DebVersion, parse_version

# Field names: printable ASCII minus space and colon.
_FIELD_NAME_RE = re.compile(r"[!-9;-~]+")

_MANDATORY_FIELDS = ("Package", "Version", "Architecture")
_CAPTURED_FIELDS = frozenset(("package", "version", "architecture", "description"))


@dataclass(frozen=True)
class ControlField:
    """One field of a stanza.

    value holds the first line (trimmed) and any continuation lines joined by
    newlines; continuation content is kept verbatim after the single leading
    whitespace character is stripped.  multiline is derived from the value.
    """

    name: str
    value: str
    multiline: bool = False

    def __post_init__(self):
        if "\r" in self.value:
            raise ValueError(f"field {self.name!r}: value contains carriage return")
        first, *rest = self.value.split("\n")
        if first != first.strip():
            raise ValueError(f"field {self.name!r}: first line is not trimmed")
        for cont in rest:
            if not cont.strip():
                raise ValueError(f"field {self.name!r}: blank continuation line")
        object.__setattr__(self, "multiline", bool(rest))


@dataclass(frozen=True)
class ControlStanza:
    """An ordered collection of fields with case-insensitively unique names."""

    entries: tuple[ControlField, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for entry in self.entries:
            # Leading '#' would render as a comment line, leading '-' is
            # reserved; both are barred so every stanza stays renderable.
            if not _FIELD_NAME_RE.fullmatch(entry.name) or entry.name[0] in "#-":
                raise MalformedField(f"invalid field name {entry.name!r}")
            low = entry.name.lower()
            if low in seen:
                raise DuplicateField(f"duplicate field {entry.name!r}")
            seen.add(low)

    def get(self, name: str, default: str | None = None) -> str | None:
        """Case-insensitive field lookup."""
        low = name.lower()
        for entry in self.entries:
            if entry.name.lower() == low:
                return entry.value
        return default

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def names(self) -> list[str]:
        return [entry.name for entry in self.entries]

    def render(self) -> str:
        lines = []
        for entry in self.entries:
            first, *rest = entry.value.split("\n")
            lines.append(f"{entry.name}: {first}" if first else f"{entry.name}:")
            lines.extend(f" {cont}" for cont in rest)
        return "".join(line + "\n" for line in lines)


def parse_stanzas(text: str) -> list[ControlStanza]:
    """Parse deb822 text into stanzas.

    Comment lines starting with '#' are ignored; whitespace-only lines
    separate stanzas.  Errors carry 1-based line numbers of the original
    input.
    """
    stanzas: list[ControlStanza] = []
    # Pending state: list of [name, first_line_value, [continuations]].
    pending: list[list] | None = None
    seen: set[str] = set()

    def flush():
        nonlocal pending, seen
        if pending is not None:
            entries = [
                ControlField(name, "\n".join([first] + conts))
                for name, first, conts in pending
            ]
            stanzas.append(ControlStanza(tuple(entries)))
        pending = None
        seen = set()

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.removesuffix("\r")
        if line.startswith("#"):
            continue
        if not line.strip():
            flush()
            continue
        if line[0] in " \t":
            if pending is None:
                raise ContinuationWithoutField("continuation line before any field", lineno)
            content = line[1:]
            if not content.strip():
                raise MalformedField("blank continuation line", lineno)
            pending[-1][2].append(content)
            continue
        name, sep, value = line.partition(":")
        if not sep:
            raise MalformedField(f"no colon in {line!r}", lineno)
        if not _FIELD_NAME_RE.fullmatch(name) or name[0] in "#-":
            raise MalformedField(f"invalid field name {name!r}", lineno)
        if name.lower() in seen:
            raise DuplicateField(f"duplicate field {name!r}", lineno)
        if pending is None:
            pending = []
        seen.add(name.lower())
        pending.append([name, value.strip(), []])
    flush()
    return stanzas


def render_stanzas(stanzas: list[ControlStanza]) -> str:
    """Render stanzas separated by exactly one blank line, LF line endings."""
    return "\n".join(stanza.render() for stanza in stanzas)


@dataclass(frozen=True)
class PackageMeta:
    """A typed view of one binary package stanza.

    relations maps each relation kind present in the stanza to its parsed
    expression; extra preserves every unrecognized field in original order
    and casing.
    """

    name: str
    version: DebVersion
    architecture: str
    relations: dict[RelationKind, RelationExpr]
    description: str | None = None
    extra: ControlStanza = ControlStanza()

    def to_stanza(self) -> ControlStanza:
        """Render back to a stanza in canonical field order."""
        entries = [
            ControlField("Package", self.name),
            ControlField("Version", str(self.version)),
            ControlField("Architecture", self.architecture),
        ]
        for kind in RelationKind:
            if kind in self.relations:
                entries.append(
                    ControlField(kind.field_name, render_relation(self.relations[kind]))
                )
        if self.description is not None:
            entries.append(ControlField("Description", self.description))
        entries.extend(self.extra.entries)
        return ControlStanza(tuple(entries))


def to_package_meta(stanza: ControlStanza) -> PackageMeta:
    """Build a PackageMeta from a stanza.

    Package, Version, and Architecture are mandatory (looked up
    case-insensitively); version and relation values are parsed, and their
    errors propagate.
    """
    for field in _MANDATORY_FIELDS:
        if field not in stanza:
            raise MissingMandatoryField(field)

    name = stanza.get("Package")
    if not PACKAGE_NAME_RE.fullmatch(name):
        raise BadPackageName(name)
    version = parse_version(stanza.get("Version"))
    architecture = stanza.get("Architecture")

    relations: dict[RelationKind, RelationExpr] = {}
    extra_entries = []
    for entry in stanza.entries:
        low = entry.name.lower()
        if low in _CAPTURED_FIELDS:
            continue
        kind = RelationKind.from_field_name(entry.name)
        if kind is not None:
            relations[kind] = parse_relation(kind, entry.value)
        else:
            extra_entries.append(entry)

    return PackageMeta(
        name=name,
        version=version,
        architecture=architecture,
        relations=relations,
        description=stanza.get("Description"),
        extra=ControlStanza(tuple(extra_entries)),
    )
