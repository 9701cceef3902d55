"""One-pass post-order traversal of the suffix index into clone records.

Each tree node yields one record carrying the clone quantities of its path
string: content length D, Shannon entropy H in bits, covering file set F and
occurrence multiplicity C. Records stream out in post-order, which visits the
observed strings of the corpus in lexicographic order. The walk keeps an
explicit frame stack and one running symbol-count vector for the current path
string; a node is re-pushed with its child cursor advanced until its subtree
is exhausted, at which point its counts aggregate into the parent frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .corpus import Corpus
from .suffix_index import ALPHABET, SuffixIndex

ARRAY_COLUMNS = (
    "node_id",
    "parent_id",
    "suffix_link_id",
    "branch_offset",
    "branch_len",
    "depth",
    "D",
    "H",
    "C",
    "F_count",
    "F_set",
)
ARRAY_HEADER = "#" + "\t".join(ARRAY_COLUMNS)


@dataclass(slots=True)
class CloneRecord:
    """One enhanced-array row: a tree node plus its clone quantities.

    F_mask is the covering file set as a bit mask; D counts content symbols
    only (a leaf's terminator contributes to branch_len but never to D).
    """

    node_id: int
    parent_id: int
    suffix_link_id: int
    branch_offset: int
    branch_len: int
    depth: int
    D: int
    H: float
    C: int
    F_count: int
    F_mask: int
    is_leaf: bool

    @property
    def files(self) -> list[int]:
        out = []
        mask = self.F_mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out


@dataclass
class TraversalStats:
    """Instrumentation for the traversal loop."""

    pops: int = 0
    records: int = 0


def entropy(counts: Iterable[int]) -> float:
    """Shannon entropy in bits of a symbol-count vector.

    Zero counts are skipped; an all-zero vector yields 0.0 (the empty-string
    convention). Callers exclude terminator symbols before counting.
    """
    counts = list(counts)
    total = sum(counts)
    if total <= 0:
        return 0.0
    h = 0.0
    for c in counts:
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return h


def _suffix_entropy_tables(corpus: Corpus) -> list[list[float]]:
    # Entropy of every content suffix, O(1) per position: extend the suffix
    # leftward one symbol at a time and update sum(X_v * log2 X_v) in place.
    log2 = math.log2
    tables = []
    for _, data in corpus.artifacts:
        m = len(data)
        out = [0.0] * m
        counts = [0] * ALPHABET
        s = 0.0
        n = 0
        for j in range(m - 1, -1, -1):
            c = counts[data[j]] + 1
            counts[data[j]] = c
            n += 1
            s += c * log2(c) - ((c - 1) * log2(c - 1) if c > 1 else 0.0)
            h = log2(n) - s / n
            out[j] = h if h > 0.0 else 0.0
        tables.append(out)
    return tables


def traverse(index: SuffixIndex, stats: TraversalStats | None = None) -> Iterator[CloneRecord]:
    """Stream one CloneRecord per node in post-order.

    The root record carries D=0, H=0, the full file set and C equal to the
    corpus length; leaf records carry C=1 and the quantities of their full
    content suffix. Pass a TraversalStats to collect the stack pop count
    (filled in once the stream is exhausted).
    """
    seq = index.seq
    root = index.root
    corpus = index.corpus
    file_len = [corpus.size(i) for i in range(corpus.file_count)]
    suffix_h = _suffix_entropy_tables(corpus)
    log2 = math.log2

    counts = [0] * ALPHABET  # symbol counts of the current path string
    s_phi = 0.0              # sum of X_v * log2(X_v) over that vector
    pops = 0
    emitted = 0

    def kids_of(node):
        children = node.children
        return [children[sym] for sym in sorted(children)]

    # Frame: [node, next_child, path_len, file_mask, leaf_count, depth, kids]
    stack = [[root, 0, 0, 0, 0, 0, kids_of(root)]]
    while stack:
        frame = stack.pop()
        pops += 1
        node, k, l, t_mask, z, delta, kids = frame
        if k < len(kids):
            frame[1] = k + 1
            stack.append(frame)
            child = kids[k]
            if child.children is None:
                # Leaf: no path-string extension; -1 marks "read to end".
                stack.append([child, 0, -1, 1 << child.file, 1, delta + 1, ()])
            else:
                c_start = child.start
                c_end = child.end
                for sym in seq[c_start:c_end]:
                    c1 = counts[sym] + 1
                    counts[sym] = c1
                    s_phi += c1 * log2(c1) - ((c1 - 1) * log2(c1 - 1) if c1 > 1 else 0.0)
                stack.append([child, 0, l + c_end - c_start, 0, 0, delta + 1, kids_of(child)])
        else:
            parent_id = stack[-1][0].id if stack else -1
            if node.children is None:
                file = node.file
                d = file_len[file] - node.offset
                record = CloneRecord(
                    node.id, parent_id, -1, node.start, node.end - node.start,
                    delta, d, suffix_h[file][node.offset], 1, 1, t_mask, True,
                )
            else:
                if l > 0:
                    h = log2(l) - s_phi / l
                    if h < 0.0:
                        h = 0.0
                else:
                    h = 0.0
                link_id = node.link.id if node is not root else -1
                record = CloneRecord(
                    node.id, parent_id, link_id, node.start, node.end - node.start,
                    delta, l, h, z, t_mask.bit_count(), t_mask, False,
                )
                if node is not root:
                    for sym in seq[node.start:node.end]:
                        c = counts[sym]
                        counts[sym] = c - 1
                        s_phi -= c * log2(c) - ((c - 1) * log2(c - 1) if c > 1 else 0.0)
            if stack:
                parent = stack[-1]
                parent[3] |= t_mask
                parent[4] += z
            emitted += 1
            yield record

    if stats is not None:
        stats.pops = pops
        stats.records = emitted


def format_record(record: CloneRecord) -> str:
    """One TSV row; entropy at 6 decimals, file set as ascending ids."""
    return "\t".join((
        str(record.node_id),
        str(record.parent_id),
        str(record.suffix_link_id),
        str(record.branch_offset),
        str(record.branch_len),
        str(record.depth),
        str(record.D),
        f"{record.H:.6f}",
        str(record.C),
        str(record.F_count),
        ",".join(map(str, record.files)),
    ))


def write_array(records: Iterable[CloneRecord], sink: IO[str]) -> int:
    """Write the enhanced suffix array as TSV; returns the row count."""
    sink.write(ARRAY_HEADER + "\n")
    rows = 0
    for record in records:
        sink.write(format_record(record))
        sink.write("\n")
        rows += 1
    return rows
