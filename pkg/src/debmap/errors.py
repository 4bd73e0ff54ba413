"""Exception types raised across the library.

Every error raised on purpose by debmap derives from DebmapError, so callers
(including the CLI) can catch one base class.  Parse errors carry enough
position information to point at the offending input.
"""


class DebmapError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# deb822 control data


class ControlError(DebmapError):
    """A control stanza could not be parsed or constructed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedField(ControlError):
    """A non-continuation line has no colon or an invalid field name."""


class DuplicateField(ControlError):
    """The same field name (case-insensitively) appears twice in one stanza."""


class ContinuationWithoutField(ControlError):
    """A stanza starts with an indented line."""


class MissingMandatoryField(DebmapError):
    """A stanza lacks a field required to form a package record."""

    def __init__(self, field: str):
        self.field = field
        super().__init__(f"missing mandatory field {field!r}")


class BadPackageName(DebmapError):
    """A package name violates the lexical rules for Debian package names."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"invalid package name {name!r}")


# ---------------------------------------------------------------------------
# version strings


class VersionError(DebmapError):
    """A Debian version string could not be parsed."""


class EmptyVersion(VersionError):
    """The version string, or one of its mandatory parts, is empty."""


class NonNumericEpoch(VersionError):
    """The epoch part (before the first colon) is not a plain integer."""


class IllegalCharacter(VersionError):
    """A character outside the permitted set appears in a version string."""

    def __init__(self, char: str, position: int):
        self.char = char
        self.position = position
        super().__init__(f"illegal character {char!r} at position {position}")


# ---------------------------------------------------------------------------
# relation expressions


class RelationError(DebmapError):
    """A relation expression could not be parsed.

    The offset attribute is the 0-based character position in the input text.
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"offset {offset}: {message}"
        super().__init__(message)


class BadAtomName(RelationError):
    """A package name inside a relation is missing or lexically invalid."""


class BadConstraintOp(RelationError):
    """A version constraint uses an operator outside <<, <=, =, >=, >>."""


class UnbalancedParenthesis(RelationError):
    """A parenthesis or bracket is never closed, or closes nothing."""


class AlternativesInProvides(RelationError):
    """A Provides field uses '|', which has no meaning there."""


class BuildProfilesUnsupported(RelationError):
    """A build-profile restriction list (<...>) appears; binary indexes never carry them."""


class RelationSyntaxError(RelationError):
    """Text between atoms is not a valid separator."""


# ---------------------------------------------------------------------------
# .deb containers


class DebError(DebmapError):
    """A .deb container could not be read."""


class BadArMagic(DebError):
    """The file does not start with the ar archive magic."""


class BadMemberHeader(DebError):
    """An ar member header is truncated or malformed."""


class MissingDebianBinary(DebError):
    """The first archive member is not debian-binary."""


class UnsupportedFormatVersion(DebError):
    """debian-binary declares a format other than 2.0."""

    def __init__(self, version: str):
        self.version = version
        super().__init__(f"unsupported deb format version {version!r}")


class MissingControlArchive(DebError):
    """No control.tar member is present."""


class MissingDataArchive(DebError):
    """No data.tar member is present."""


class UnsupportedCompression(DebError):
    """A member uses a compression this build cannot decode."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unsupported compression {name!r}")


class MalformedTar(DebError):
    """An embedded tar archive is unreadable or lacks a required entry."""


# ---------------------------------------------------------------------------
# repository scanning and index loading


class RepositoryError(DebmapError):
    """A repository operation failed."""


class ScanError(RepositoryError):
    """The scan root is missing or not a directory."""

    def __init__(self, root):
        self.root = root
        super().__init__(f"not a readable directory: {root}")


class IndexLoadError(RepositoryError):
    """A Packages index could not be loaded into a universe."""

    def __init__(self, input_ordinal: int, stanza_number: int | None, cause: Exception):
        self.input_ordinal = input_ordinal
        self.stanza_number = stanza_number
        self.cause = cause
        where = f"input {input_ordinal}"
        if stanza_number is not None:
            where += f", stanza {stanza_number}"
        super().__init__(f"{where}: {cause}")


# ---------------------------------------------------------------------------
# graph analyses


class UnknownRoot(DebmapError):
    """A requested root package does not exist in the universe."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown root package {name!r}")
