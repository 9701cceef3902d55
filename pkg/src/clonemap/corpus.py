"""Corpus loading and region addressing for binary artifacts.

A corpus is an ordered set of non-empty byte strings. Substring occurrences
are addressed by regions (file, offset, end) with a half-open byte range, so
a region may end exactly at the artifact's last byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import ValidationError


class Region(NamedTuple):
    """One substring occurrence: artifact index and half-open [offset, end)."""

    file: int
    offset: int
    end: int


@dataclass(frozen=True)
class Corpus:
    """Ordered, immutable collection of named byte artifacts."""

    artifacts: tuple[tuple[str, bytes], ...]
    alphabet_size: int = 256

    def __post_init__(self):
        if not self.artifacts:
            raise ValidationError("corpus must contain at least one artifact")
        for name, data in self.artifacts:
            if len(data) == 0:
                raise ValidationError(f"artifact {name!r} is empty")

    @property
    def file_count(self) -> int:
        return len(self.artifacts)

    @property
    def total_length(self) -> int:
        return sum(len(data) for _, data in self.artifacts)

    def name(self, file: int) -> str:
        return self.artifacts[file][0]

    def data(self, file: int) -> bytes:
        return self.artifacts[file][1]

    def size(self, file: int) -> int:
        return len(self.artifacts[file][1])


def from_pairs(pairs: Iterable[tuple[str, bytes]]) -> Corpus:
    """Build a corpus from in-memory (name, bytes) pairs, preserving order."""
    return Corpus(tuple((name, bytes(data)) for name, data in pairs))


def ingest(paths: Sequence[str]) -> Corpus:
    """Load artifacts from files, in the given order.

    Raises OSError for unreadable paths and ValidationError for empty files
    or an empty path list. Artifact ids are zero-based positions.
    """
    if not paths:
        raise ValidationError("no input files given")
    loaded = []
    for path in paths:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise OSError(f"cannot read artifact {path!r}: {exc}") from exc
        if not data:
            raise ValidationError(f"artifact {path!r} is empty")
        loaded.append((str(path), data))
    return Corpus(tuple(loaded))


def read_manifest(path: str) -> list[str]:
    """Read one artifact path per line; blank lines and '#' comments ignored."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise OSError(f"cannot read manifest {path!r}: {exc}") from exc
    paths = []
    base = os.path.dirname(path)
    for line in lines:
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        # Relative manifest entries resolve against the manifest's directory.
        if not os.path.isabs(entry):
            entry = os.path.join(base, entry)
        paths.append(entry)
    if not paths:
        raise ValidationError(f"manifest {path!r} lists no artifacts")
    return paths


def check_region(corpus: Corpus, region: Region) -> None:
    """Raise ValidationError unless region addresses a valid substring."""
    file, offset, end = region
    if not 0 <= file < corpus.file_count:
        raise ValidationError(f"region file index {file} out of range")
    if not 0 <= offset <= end <= corpus.size(file):
        raise ValidationError(
            f"region ({file}, {offset}, {end}) out of bounds for "
            f"artifact of length {corpus.size(file)}"
        )


def content(corpus: Corpus, region: Region) -> bytes:
    """Return the bytes addressed by a region (the content map)."""
    check_region(corpus, region)
    return corpus.data(region.file)[region.offset:region.end]


def naive_pullback(corpus: Corpus, pattern: bytes) -> set[Region]:
    """All occurrence regions of pattern, found by scanning every offset.

    This is the brute-force region recaller used as the reference for the
    indexed pullback. The empty pattern is rejected: its region set is
    quadratic and no downstream operation needs it.
    """
    if not pattern:
        raise ValidationError("pullback of the empty pattern is not supported")
    pattern = bytes(pattern)
    hits: set[Region] = set()
    m = len(pattern)
    for file, (_, data) in enumerate(corpus.artifacts):
        at = data.find(pattern)
        while at != -1:
            hits.add(Region(file, at, at + m))
            at = data.find(pattern, at + 1)
    return hits
