"""Clone-class membership and enumeration over the enhanced array.

A clone class is the set of observed strings whose quantities strictly
exceed four lower thresholds (length, entropy, file coverage, multiplicity),
optionally bounded strictly above as well. Classes nest: raising any
threshold never adds members.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ValidationError
from .traversal import CloneRecord

_NAMED_CLASSES = ("M-Clone", "F-Clone", "M-Clone_h", "F-Clone_h")


@dataclass(frozen=True)
class CloneQuery:
    """Threshold tuple for one clone class, lower bounds strict.

    A zero lower bound is the lattice bottom for its quantity and never
    excludes a record: entropy may legitimately be 0.0, and file coverage and
    multiplicity are always at least 1. The root's empty string (D=0) is the
    one record no query admits. Upper bounds, when present, are strict.
    """

    d_min: float = 0
    h_min: float = 0.0
    f_min: float = 0
    c_min: float = 0
    d_max: float | None = None
    h_max: float | None = None
    f_max: float | None = None
    c_max: float | None = None

    def __post_init__(self):
        for name in ("d_min", "h_min", "f_min", "c_min"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} must be >= 0, got {getattr(self, name)}")
        for lo, hi in (("d_min", "d_max"), ("h_min", "h_max"),
                       ("f_min", "f_max"), ("c_min", "c_max")):
            upper = getattr(self, hi)
            if upper is not None and upper <= getattr(self, lo):
                raise ValidationError(f"{hi}={upper} must exceed {lo}={getattr(self, lo)}")

    def label(self) -> str:
        """Compact form for report columns, e.g. <10,0.25,2,2>."""

        def num(x):
            return f"{x:g}"

        text = f"<{num(self.d_min)},{num(self.h_min)},{num(self.f_min)},{num(self.c_min)}>"
        uppers = (self.d_max, self.h_max, self.f_max, self.c_max)
        if any(u is not None for u in uppers):
            text += "/<" + ",".join("inf" if u is None else num(u) for u in uppers) + ">"
        return text


def member(record: CloneRecord, query: CloneQuery) -> bool:
    """True when the record's quantities lie inside the query's cylinder."""
    if record.D <= query.d_min:
        return False
    if query.h_min > 0.0 and record.H <= query.h_min:
        return False
    if record.F_count <= query.f_min:
        return False
    if record.C <= query.c_min:
        return False
    if query.d_max is not None and record.D >= query.d_max:
        return False
    if query.h_max is not None and record.H >= query.h_max:
        return False
    if query.f_max is not None and record.F_count >= query.f_max:
        return False
    if query.c_max is not None and record.C >= query.c_max:
        return False
    return True


def call_clones(records: Iterable[CloneRecord], query: CloneQuery) -> list[CloneRecord]:
    """Filter the record stream by query membership, preserving post-order."""
    return [record for record in records if member(record, query)]


def iter_clones(records: Iterable[CloneRecord], query: CloneQuery) -> Iterator[CloneRecord]:
    """Streaming variant of call_clones."""
    return (record for record in records if member(record, query))


def named_class(name: str, h: float = 0.0) -> CloneQuery:
    """Queries for the simple named classes.

    M-Clone selects strings occurring more than once; F-Clone strings found
    in more than one file (hence F-Clone is contained in M-Clone). The _h
    variants add an entropy floor.
    """
    if name == "M-Clone":
        return CloneQuery(c_min=1)
    if name == "F-Clone":
        return CloneQuery(f_min=1)
    if name == "M-Clone_h":
        return CloneQuery(c_min=1, h_min=h)
    if name == "F-Clone_h":
        return CloneQuery(f_min=1, h_min=h)
    raise ValidationError(f"unknown clone class {name!r}; expected one of {_NAMED_CLASSES}")
