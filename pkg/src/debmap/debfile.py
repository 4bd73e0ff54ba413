"""Reading binary .deb containers and building deterministic fixtures.

A .deb is an ar archive whose first member is debian-binary (content
"2.0\\n"), followed by a control archive (control.tar, optionally
compressed) and a data archive (data.tar.*).  Member headers are 60 bytes
and members are aligned to even offsets with a single newline pad byte.

The reader works strictly within declared member sizes and never extracts
data payloads; it only lists their paths and sizes.
"""

from __future__ import annotations

import bz2
import gzip
import io
import lzma
import tarfile
from dataclasses import dataclass
from typing import BinaryIO, Iterable

from .control import ControlStanza, PackageMeta, parse_stanzas, render_stanzas
from .errors import (
    BadArMagic,
    BadMemberHeader,
    MalformedTar,
    MissingControlArchive,
    MissingDataArchive,
    MissingDebianBinary,
    UnsupportedCompression,
    UnsupportedFormatVersion,
)

AR_MAGIC = b"!<arch>\n"
_AR_HEADER_SIZE = 60
_AR_END = b"`\n"


@dataclass(frozen=True)
class DebArchive:
    """The parsed contents of one .deb container."""

    format_version: str
    control: ControlStanza
    data_members: tuple[tuple[str, int], ...]
    control_member_name: str
    raw_size: int


def _decompress(name: str, payload: bytes) -> bytes:
    # "control.tar" -> "", "control.tar.gz" -> "gz".
    suffix = name.rpartition(".tar")[2].lstrip(".")
    if suffix == "":
        return payload
    if suffix == "gz":
        try:
            return gzip.decompress(payload)
        except (OSError, EOFError) as exc:
            raise MalformedTar(f"{name}: {exc}") from exc
    if suffix in ("xz", "lzma"):
        try:
            return lzma.decompress(payload)
        except lzma.LZMAError as exc:
            raise MalformedTar(f"{name}: {exc}") from exc
    if suffix == "bz2":
        try:
            return bz2.decompress(payload)
        except (OSError, ValueError) as exc:
            raise MalformedTar(f"{name}: {exc}") from exc
    if suffix == "zst":
        try:
            import zstandard
        except ImportError:
            raise UnsupportedCompression("zst") from None
        try:
            return zstandard.ZstdDecompressor().decompress(payload)
        except zstandard.ZstdError as exc:
            raise MalformedTar(f"{name}: {exc}") from exc
    raise UnsupportedCompression(suffix)


def _read_exact(stream: BinaryIO, count: int, what: str) -> bytes:
    data = stream.read(count)
    if len(data) != count:
        raise BadMemberHeader(f"truncated {what}: wanted {count} bytes, got {len(data)}")
    return data


def _iter_ar_members(stream: BinaryIO):
    """Yield (name, content, offset) triples, tracking consumed bytes."""
    consumed = len(AR_MAGIC)
    while True:
        header = stream.read(_AR_HEADER_SIZE)
        if not header:
            return
        if len(header) != _AR_HEADER_SIZE:
            raise BadMemberHeader(f"truncated member header ({len(header)} bytes)")
        if header[58:60] != _AR_END:
            raise BadMemberHeader(f"bad member header terminator {header[58:60]!r}")
        name = header[0:16].decode("ascii", "replace").rstrip(" ")
        if name.endswith("/") and len(name) > 1:
            name = name[:-1]  # GNU ar style
        size_text = header[48:58].decode("ascii", "replace").strip()
        if not size_text.isdigit():
            raise BadMemberHeader(f"bad member size {size_text!r} for {name!r}")
        size = int(size_text)
        content = _read_exact(stream, size, f"member {name!r}")
        consumed += _AR_HEADER_SIZE + size
        if size % 2:
            # Members are even-aligned; the pad byte may be absent at EOF.
            pad = stream.read(1)
            consumed += len(pad)
        yield name, content, consumed


def _control_stanza(member_name: str, payload: bytes) -> ControlStanza:
    try:
        tar = tarfile.open(fileobj=io.BytesIO(payload))
    except tarfile.TarError as exc:
        raise MalformedTar(f"{member_name}: {exc}") from exc
    with tar:
        for member in tar:
            if member.name in ("control", "./control"):
                handle = tar.extractfile(member)
                if handle is None:
                    raise MalformedTar(f"{member_name}: control entry has no content")
                text = handle.read().decode("utf-8")
                stanzas = parse_stanzas(text)
                if not stanzas:
                    raise MalformedTar(f"{member_name}: control file holds no stanza")
                return stanzas[0]
    raise MalformedTar(f"{member_name}: no control entry found")


def _data_listing(member_name: str, payload: bytes) -> tuple[tuple[str, int], ...]:
    try:
        tar = tarfile.open(fileobj=io.BytesIO(payload))
    except tarfile.TarError as exc:
        raise MalformedTar(f"{member_name}: {exc}") from exc
    with tar:
        try:
            return tuple((member.name, member.size) for member in tar)
        except tarfile.TarError as exc:
            raise MalformedTar(f"{member_name}: {exc}") from exc


def read_deb(source: bytes | BinaryIO) -> DebArchive:
    """Parse a .deb container from bytes or a binary stream.

    The control stanza is fully parsed; data payloads are listed as
    (path, size) pairs without being extracted.
    """
    stream: BinaryIO
    if isinstance(source, (bytes, bytearray)):
        stream = io.BytesIO(source)
    else:
        stream = source

    magic = stream.read(len(AR_MAGIC))
    if magic != AR_MAGIC:
        raise BadArMagic(f"not an ar archive (magic {magic!r})")

    format_version: str | None = None
    control: ControlStanza | None = None
    control_member_name: str | None = None
    data_members: tuple[tuple[str, int], ...] | None = None
    raw_size = len(AR_MAGIC)

    for index, (name, content, consumed) in enumerate(_iter_ar_members(stream)):
        raw_size = consumed
        if index == 0:
            if name != "debian-binary":
                raise MissingDebianBinary(f"first member is {name!r}, not debian-binary")
            format_version = content.decode("ascii", "replace").strip()
            if format_version != "2.0":
                raise UnsupportedFormatVersion(format_version)
            continue
        if name == "control.tar" or name.startswith("control.tar."):
            if control is None:
                control = _control_stanza(name, _decompress(name, content))
                control_member_name = name
            continue
        if name == "data.tar" or name.startswith("data.tar."):
            if control is None:
                raise BadMemberHeader("data archive precedes control archive")
            if data_members is None:
                data_members = _data_listing(name, _decompress(name, content))
            continue
        # Unknown members (e.g. _gpgorigin) are ignored.

    if format_version is None:
        raise MissingDebianBinary("archive has no members")
    if control is None or control_member_name is None:
        raise MissingControlArchive("no control.tar member present")
    if data_members is None:
        raise MissingDataArchive("no data.tar member present")

    return DebArchive(
        format_version=format_version,
        control=control,
        data_members=data_members,
        control_member_name=control_member_name,
        raw_size=raw_size,
    )


# ---------------------------------------------------------------------------
# fixture construction

_FIXED_MTIME = 0


def _tar_bytes(entries: Iterable[tuple[str, bytes]]) -> bytes:
    buffer = io.BytesIO()
    with tarfile.open(fileobj=buffer, mode="w", format=tarfile.USTAR_FORMAT) as tar:
        root = tarfile.TarInfo("./")
        root.type = tarfile.DIRTYPE
        root.mode = 0o755
        root.mtime = _FIXED_MTIME
        root.uname = root.gname = "root"
        tar.addfile(root)
        for path, content in entries:
            info = tarfile.TarInfo("./" + path.lstrip("/"))
            info.size = len(content)
            info.mode = 0o644
            info.mtime = _FIXED_MTIME
            info.uname = info.gname = "root"
            tar.addfile(info, io.BytesIO(content))
    return buffer.getvalue()


def _gzip_bytes(payload: bytes) -> bytes:
    buffer = io.BytesIO()
    with gzip.GzipFile(fileobj=buffer, mode="wb", compresslevel=9, mtime=_FIXED_MTIME) as gz:
        gz.write(payload)
    return buffer.getvalue()


def _ar_member(name: str, content: bytes) -> bytes:
    if len(name) > 16:
        raise ValueError(f"ar member name too long: {name!r}")
    header = (
        name.ljust(16).encode("ascii")
        + str(_FIXED_MTIME).ljust(12).encode("ascii")
        + b"0".ljust(6)
        + b"0".ljust(6)
        + b"100644".ljust(8)
        + str(len(content)).ljust(10).encode("ascii")
        + _AR_END
    )
    padding = b"\n" if len(content) % 2 else b""
    return header + content + padding


def build_fixture_deb(
    meta: PackageMeta, files: Iterable[tuple[str, bytes | str]] = ()
) -> bytes:
    """Build a byte-deterministic gzip-compressed .deb for tests and demos.

    All timestamps are the epoch, ownership is root/root, and the tar format
    is plain ustar, so identical inputs always produce identical bytes.
    """
    control_text = render_stanzas([meta.to_stanza()])
    control_tar = _tar_bytes([("control", control_text.encode("utf-8"))])
    data_entries = [
        (path, content.encode("utf-8") if isinstance(content, str) else content)
        for path, content in files
    ]
    data_tar = _tar_bytes(data_entries)
    return (
        AR_MAGIC
        + _ar_member("debian-binary", b"2.0\n")
        + _ar_member("control.tar.gz", _gzip_bytes(control_tar))
        + _ar_member("data.tar.gz", _gzip_bytes(data_tar))
    )
