"""Debian version strings and their total ordering.

A version is ``[epoch:]upstream[-revision]``.  The epoch is a plain integer
(absent means 0) and dominates the comparison.  The last hyphen separates the
Debian revision from the upstream version; an absent revision sorts as the
minimal revision (empty string), not as "-0".  Upstream and revision are
compared segment-wise, alternating non-digit and digit runs, with '~' sorting
before everything including the end of the string (Debian Policy 5.6.12).
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass

from .errors import EmptyVersion, IllegalCharacter, NonNumericEpoch

CONSTRAINT_OPS = ("<<", "<=", "=", ">=", ">>")

_DIGITS = frozenset(string.digits)
_ALPHA = frozenset(string.ascii_letters)
_EPOCH_RE = re.compile(r"[0-9]+")
_BASE_CHARS = _DIGITS | _ALPHA | frozenset(".+~")


@dataclass(frozen=True)
class DebVersion:
    """A parsed Debian version.

    Equality is structural: epoch 0 stored explicitly or implicitly compares
    equal, but e.g. "1.0" and "1.0-0" are distinct values even though the
    ordering ranks them equal.  The rich comparison operators implement the
    Debian ordering; use == only for structural identity.
    """

    upstream: str
    revision: str | None = None
    epoch: int = 0

    def __str__(self) -> str:
        text = self.upstream
        if self.epoch:
            text = f"{self.epoch}:{text}"
        if self.revision is not None:
            text = f"{text}-{self.revision}"
        return text

    def __lt__(self, other: "DebVersion") -> bool:
        return compare_versions(self, other) < 0

    def __le__(self, other: "DebVersion") -> bool:
        return compare_versions(self, other) <= 0

    def __gt__(self, other: "DebVersion") -> bool:
        return compare_versions(self, other) > 0

    def __ge__(self, other: "DebVersion") -> bool:
        return compare_versions(self, other) >= 0


def parse_version(text: str) -> DebVersion:
    """Parse ``[epoch:]upstream[-revision]``, rejecting illegal characters.

    Raises EmptyVersion, NonNumericEpoch, or IllegalCharacter (which carries
    the 0-based position in the original string).
    """
    if not text:
        raise EmptyVersion("version string is empty")

    epoch = 0
    had_epoch = False
    body_start = 0
    if ":" in text:
        epoch_str = text.split(":", 1)[0]
        if not _EPOCH_RE.fullmatch(epoch_str):
            raise NonNumericEpoch(f"epoch {epoch_str!r} is not a number in {text!r}")
        epoch = int(epoch_str)
        had_epoch = True
        body_start = len(epoch_str) + 1

    body = text[body_start:]
    if not body:
        raise EmptyVersion(f"upstream part is empty in {text!r}")

    if "-" in body:
        cut = body.rindex("-")
        upstream, revision = body[:cut], body[cut + 1 :]
        if not upstream:
            raise EmptyVersion(f"upstream part is empty in {text!r}")
        if not revision:
            raise EmptyVersion(f"revision part is empty in {text!r}")
        revision_start = body_start + cut + 1
    else:
        upstream, revision = body, None
        revision_start = len(text)

    # ':' is only legal in the upstream part when an epoch is present; '-' can
    # only occur there when a revision exists, which the split guarantees.
    upstream_allowed = _BASE_CHARS | frozenset("-")
    if had_epoch:
        upstream_allowed |= frozenset(":")
    for pos, char in enumerate(upstream, start=body_start):
        if char not in upstream_allowed:
            raise IllegalCharacter(char, pos)
    if revision is not None:
        for pos, char in enumerate(revision, start=revision_start):
            if char not in _BASE_CHARS:
                raise IllegalCharacter(char, pos)

    return DebVersion(upstream=upstream, revision=revision, epoch=epoch)


def _order(char: str) -> int:
    # '~' sorts before everything, including the end of a string (weight 0).
    # Letters sort before non-letters; other characters keep byte order after
    # being pushed past the alphabet.
    if char == "~":
        return -1
    if char in _DIGITS:
        return 0
    if char in _ALPHA:
        return ord(char)
    return ord(char) + 256


def _compare_part(a: str, b: str) -> int:
    i = j = 0
    len_a, len_b = len(a), len(b)
    while i < len_a or j < len_b:
        # Non-digit run: compare character by character, an exhausted string
        # contributing weight 0 (so "1.0~" < "1.0").
        while (i < len_a and a[i] not in _DIGITS) or (j < len_b and b[j] not in _DIGITS):
            ac = _order(a[i]) if i < len_a else 0
            bc = _order(b[j]) if j < len_b else 0
            if ac != bc:
                return -1 if ac < bc else 1
            i += 1
            j += 1
        # Digit run: numeric comparison, done without building integers.
        while i < len_a and a[i] == "0":
            i += 1
        while j < len_b and b[j] == "0":
            j += 1
        first_diff = 0
        while i < len_a and j < len_b and a[i] in _DIGITS and b[j] in _DIGITS:
            if not first_diff:
                first_diff = ord(a[i]) - ord(b[j])
            i += 1
            j += 1
        if i < len_a and a[i] in _DIGITS:
            return 1
        if j < len_b and b[j] in _DIGITS:
            return -1
        if first_diff:
            return -1 if first_diff < 0 else 1
    return 0


def compare_versions(a: DebVersion, b: DebVersion) -> int:
    """Total order over versions: negative, zero, or positive like a cmp()."""
    if a.epoch != b.epoch:
        return -1 if a.epoch < b.epoch else 1
    result = _compare_part(a.upstream, b.upstream)
    if result:
        return result
    return _compare_part(a.revision or "", b.revision or "")


def satisfies(candidate: DebVersion, op: str, bound: DebVersion) -> bool:
    """Check candidate against a constraint operator and bound."""
    result = compare_versions(candidate, bound)
    if op == "<<":
        return result < 0
    if op == "<=":
        return result <= 0
    if op == "=":
        return result == 0
    if op == ">=":
        return result >= 0
    if op == ">>":
        return result > 0
    raise ValueError(f"unknown constraint operator {op!r}")
