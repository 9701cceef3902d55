"""Max-clone reduction: keep only the longest members of each level set.

Within a clone class, a string is redundant when some one-symbol left
extension of it is also in the class with the same file coverage and
multiplicity; every such string is a suffix of a longer member carrying
identical information. Suffix links encode exactly the one-symbol extension
relation between tree nodes, so representatives are the class members whose
link source (if any) either left the class or changed level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .algebra import CloneQuery, call_clones
from .corpus import Region
from .errors import ValidationError
from .suffix_index import SuffixIndex, SuffixNode, path_string
from .traversal import CloneRecord


@dataclass(frozen=True)
class MaxClone:
    """A representative clone string with its full occurrence list."""

    node_id: int
    clone_string: bytes
    D: int
    H: float
    C: int
    files: tuple[int, ...]
    occurrences: tuple[Region, ...]


@dataclass(frozen=True)
class ReductionStats:
    class_size: int
    representatives: int
    distinct_offsets: int
    fraction: float


def _occurrence_regions(node: SuffixNode, length: int) -> tuple[Region, ...]:
    regions = []
    stack = [node]
    while stack:
        cursor = stack.pop()
        if cursor.children is None:
            regions.append(Region(cursor.file, cursor.offset, cursor.offset + length))
        else:
            stack.extend(cursor.children.values())
    regions.sort()
    return tuple(regions)


def _leaf_positions(index: SuffixIndex) -> dict[tuple[int, int], SuffixNode]:
    return {(node.file, node.offset): node for node in index.leaves()}


def max_clones(index: SuffixIndex, records: Iterable[CloneRecord],
               query: CloneQuery) -> list[MaxClone]:
    """Reduce the clone class of query to its max-clone representation.

    Output is sorted by descending length, ties by ascending clone string.
    Runs in one pass over the class beyond the membership filter.
    """
    selected = {record.node_id: record for record in call_clones(records, query)}
    if not selected:
        return []
    nodes = index.nodes

    # Leaves carry no suffix links; their extension relation is positional:
    # the suffix at (file, j-1) extends the suffix at (file, j). The map is
    # only needed when the query admits single-occurrence strings.
    leaf_map = None
    if any(record.is_leaf for record in selected.values()):
        leaf_map = _leaf_positions(index)

    dominated: set[int] = set()
    for node_id, record in selected.items():
        node = nodes[node_id]
        if node.children is None:
            if leaf_map is None:
                continue
            target = leaf_map.get((node.file, node.offset + 1))
        else:
            target = node.link
        if target is None:
            continue
        target_record = selected.get(target.id)
        if (target_record is not None
                and target_record.F_mask == record.F_mask
                and target_record.C == record.C):
            dominated.add(target.id)

    representation = []
    for node_id, record in selected.items():
        if node_id in dominated:
            continue
        node = nodes[node_id]
        string = path_string(index, node)
        representation.append(MaxClone(
            node_id=node_id,
            clone_string=string,
            D=record.D,
            H=record.H,
            C=record.C,
            files=tuple(record.files),
            occurrences=_occurrence_regions(node, record.D),
        ))
    representation.sort(key=lambda mc: (-mc.D, mc.clone_string))
    return representation


def reduction_stats(class_size: int, representation: list[MaxClone]) -> ReductionStats:
    """Summarize how far the representation compresses the class."""
    if class_size < 0:
        raise ValidationError("class size cannot be negative")
    distinct: set[Region] = set()
    for clone in representation:
        distinct.update(clone.occurrences)
    fraction = len(representation) / class_size if class_size else 0.0
    return ReductionStats(class_size, len(representation), len(distinct), fraction)


def to_json(representation: list[MaxClone]) -> str:
    """Canonical JSON for a representation; strings are hex encoded."""
    payload = [
        {
            "string_hex": clone.clone_string.hex(),
            "D": clone.D,
            "H": clone.H,
            "C": clone.C,
            "files": list(clone.files),
            "occurrences": [
                {"file": occ.file, "offset": occ.offset, "end": occ.end}
                for occ in clone.occurrences
            ],
        }
        for clone in representation
    ]
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> list[MaxClone]:
    """Parse a representation previously emitted by to_json."""
    try:
        payload = json.loads(text)
        clones = []
        for item in payload:
            string = bytes.fromhex(item["string_hex"])
            occurrences = tuple(sorted(
                Region(int(o["file"]), int(o["offset"]), int(o["end"]))
                for o in item["occurrences"]
            ))
            clones.append(MaxClone(
                node_id=-1,
                clone_string=string,
                D=int(item["D"]),
                H=float(item["H"]),
                C=int(item["C"]),
                files=tuple(int(i) for i in item["files"]),
                occurrences=occurrences,
            ))
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ValidationError(f"malformed max-clone JSON: {exc}") from exc
    return clones
