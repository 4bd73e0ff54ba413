"""Inter-package relation expressions.

A relation field value is a comma-separated AND of OR-groups; each OR-group
is a '|'-separated list of atoms.  An atom names a package, optionally
followed by a version constraint in parentheses and an architecture
qualifier in brackets: ``a (>= 2.0) | b, c [amd64]``.

Provides is special: alternatives are meaningless there, and a
parenthesised version declares the version of the provided virtual package
(always with '='), not a constraint.
"""

from __future__ import annotations

import enum
import re
import string
from dataclasses import dataclass

from .errors import (
    AlternativesInProvides,
    BadAtomName,
    BadConstraintOp,
    BuildProfilesUnsupported,
    RelationSyntaxError,
    UnbalancedParenthesis,
)
from .version import CONSTRAINT_OPS, DebVersion, parse_version


class RelationKind(enum.Enum):
    """The nine relation fields a binary package record can carry."""

    DEPENDS = "Depends"
    PRE_DEPENDS = "Pre-Depends"
    RECOMMENDS = "Recommends"
    SUGGESTS = "Suggests"
    ENHANCES = "Enhances"
    PROVIDES = "Provides"
    CONFLICTS = "Conflicts"
    BREAKS = "Breaks"
    REPLACES = "Replaces"

    @property
    def field_name(self) -> str:
        return self.value

    @classmethod
    def from_field_name(cls, name: str) -> "RelationKind | None":
        return _KINDS_BY_FIELD.get(name.lower())


_KINDS_BY_FIELD = {kind.value.lower(): kind for kind in RelationKind}

# Package names: at least two characters, leading alphanumeric, the rest
# lower-case alphanumerics plus '+', '.', '-'.
PACKAGE_NAME_RE = re.compile(r"[a-z0-9][a-z0-9+.-]+")

_NAME_CHARS = frozenset(string.ascii_lowercase + string.digits + "+.-")
_VERSION_CHARS = frozenset(string.ascii_letters + string.digits + ".+~:-")
_OP_CHARS = frozenset("<>=")
_WS = frozenset(" \t\r\n")


@dataclass(frozen=True)
class VersionConstraint:
    op: str
    version: DebVersion


@dataclass(frozen=True)
class PackageAtom:
    """One package reference inside a relation.

    constraint and provided_version are mutually exclusive: the former is a
    bound on a dependency target, the latter the declared version of a
    virtual package (Provides only).
    """

    name: str
    constraint: VersionConstraint | None = None
    arch_qualifier: tuple[str, ...] | None = None
    provided_version: DebVersion | None = None

    def __post_init__(self):
        if self.constraint is not None and self.provided_version is not None:
            raise ValueError("constraint and provided_version are mutually exclusive")


@dataclass(frozen=True)
class RelationExpr:
    """An AND of OR-groups; an empty field parses to zero groups."""

    groups: tuple[tuple[PackageAtom, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))
        for group in self.groups:
            if not group:
                raise ValueError("empty OR-group")


class _Scanner:
    __slots__ = ("text", "pos")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def take_run(self, charset: frozenset) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in charset:
            self.pos += 1
        return self.text[start : self.pos]


def _parse_atom(s: _Scanner, kind: RelationKind) -> PackageAtom:
    s.skip_ws()
    start = s.pos
    name = s.take_run(_NAME_CHARS)
    if not name:
        found = s.peek() or "end of input"
        raise BadAtomName(f"expected a package name, found {found!r}", start)
    if not PACKAGE_NAME_RE.fullmatch(name):
        raise BadAtomName(f"invalid package name {name!r}", start)

    constraint = None
    provided_version = None
    arch_qualifier = None

    s.skip_ws()
    if s.peek() == "(":
        paren_pos = s.pos
        s.pos += 1
        s.skip_ws()
        op_pos = s.pos
        op = s.take_run(_OP_CHARS)
        if op not in CONSTRAINT_OPS:
            raise BadConstraintOp(f"bad constraint operator {op!r}", op_pos)
        s.skip_ws()
        version = parse_version(s.take_run(_VERSION_CHARS))
        s.skip_ws()
        if s.peek() != ")":
            raise UnbalancedParenthesis("unclosed '('", paren_pos)
        s.pos += 1
        if kind is RelationKind.PROVIDES:
            if op != "=":
                raise BadConstraintOp("a versioned Provides must use '='", op_pos)
            provided_version = version
        else:
            constraint = VersionConstraint(op, version)

    s.skip_ws()
    if s.peek() == "[":
        bracket_pos = s.pos
        s.pos += 1
        tokens = []
        while True:
            s.skip_ws()
            if s.at_end():
                raise UnbalancedParenthesis("unclosed '['", bracket_pos)
            if s.peek() == "]":
                s.pos += 1
                break
            token = s.take_run(frozenset("!" + string.ascii_lowercase + string.digits + "-"))
            if not token:
                raise RelationSyntaxError(
                    f"bad architecture token starting at {s.peek()!r}", s.pos
                )
            tokens.append(token)
        if not tokens:
            raise RelationSyntaxError("empty architecture qualifier", bracket_pos)
        arch_qualifier = tuple(tokens)

    s.skip_ws()
    if s.peek() == "<":
        raise BuildProfilesUnsupported(
            "build-profile restrictions are not valid in binary package fields", s.pos
        )

    return PackageAtom(
        name=name,
        constraint=constraint,
        arch_qualifier=arch_qualifier,
        provided_version=provided_version,
    )


def parse_relation(kind: RelationKind, text: str) -> RelationExpr:
    """Parse one relation field value for the given kind.

    Whitespace (including newlines from folded fields) is insignificant
    around separators.  Empty text yields an expression with zero groups.
    """
    s = _Scanner(text)
    s.skip_ws()
    if s.at_end():
        return RelationExpr(())

    groups = []
    while True:
        group = [_parse_atom(s, kind)]
        s.skip_ws()
        while s.peek() == "|":
            if kind is RelationKind.PROVIDES:
                raise AlternativesInProvides("'|' is not allowed in Provides", s.pos)
            s.pos += 1
            group.append(_parse_atom(s, kind))
            s.skip_ws()
        groups.append(tuple(group))
        if s.at_end():
            break
        if s.peek() == ")":
            raise UnbalancedParenthesis("')' closes nothing", s.pos)
        if s.peek() != ",":
            raise RelationSyntaxError(f"expected ',' or '|', found {s.peek()!r}", s.pos)
        s.pos += 1
    return RelationExpr(tuple(groups))


def render_atom(atom: PackageAtom) -> str:
    text = atom.name
    if atom.constraint is not None:
        text += f" ({atom.constraint.op} {atom.constraint.version})"
    if atom.provided_version is not None:
        text += f" (= {atom.provided_version})"
    if atom.arch_qualifier is not None:
        text += " [" + " ".join(atom.arch_qualifier) + "]"
    return text


def render_or_group(group: tuple[PackageAtom, ...]) -> str:
    return " | ".join(render_atom(atom) for atom in group)


def render_relation(expr: RelationExpr) -> str:
    """Render in canonical form: ``a (>= 2.0) | b, c [amd64]``."""
    return ", ".join(render_or_group(group) for group in expr.groups)
