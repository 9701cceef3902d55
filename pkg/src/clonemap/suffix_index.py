"""Generalized suffix tree over a corpus, built online with Ukkonen's algorithm.

Artifacts are concatenated with one distinct out-of-alphabet terminator
symbol (256, 257, ...) appended to each, so no tree path crosses an artifact
boundary and every content suffix ends at its own leaf. Terminators never
appear in reported strings, lengths or entropy counts; a leaf's branch label
is the only place a terminator symbol is stored.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterator

from .corpus import Corpus, Region
from .errors import ValidationError

ALPHABET = 256  # byte corpora; terminator symbols start here

_OPEN = -1  # leaf edge end while its artifact is still being inserted


class SuffixNode:
    """Tree node; leaves have children None and carry their suffix position.

    Edge labels are stored as [start, end) offsets into the concatenated
    symbol sequence. Suffix links exist on internal nodes (root links to
    itself); the link target spells the node's path string minus its first
    symbol.
    """

    __slots__ = ("id", "start", "end", "children", "link", "parent", "file", "offset")

    def __init__(self, node_id: int, start: int, end: int, parent: "SuffixNode | None"):
        self.id = node_id
        self.start = start
        self.end = end
        self.children: dict[int, SuffixNode] | None = None
        self.link: SuffixNode | None = None
        self.parent = parent
        self.file = -1
        self.offset = -1

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    def __repr__(self):
        kind = "leaf" if self.is_leaf else "node"
        return f"<{kind} {self.id} [{self.start}:{self.end}]>"


class SuffixIndex:
    """Suffix tree plus the concatenation map back to (file, local offset)."""

    def __init__(self, corpus: Corpus):
        self.corpus = corpus
        self.seq: list[int] = []
        self.nodes: list[SuffixNode] = []
        self.file_base: list[int] = []
        self.root = self._new_node(0, 0, None)
        self.root.children = {}
        self.root.link = self.root
        for file_idx, (_, data) in enumerate(corpus.artifacts):
            self._insert_artifact(file_idx, data)
        self._drop_terminator_leaves()

    # -- construction -----------------------------------------------------

    def _new_node(self, start: int, end: int, parent: SuffixNode | None) -> SuffixNode:
        node = SuffixNode(len(self.nodes), start, end, parent)
        self.nodes.append(node)
        return node

    def _insert_artifact(self, file_idx: int, data: bytes) -> None:
        seq = self.seq
        root = self.root
        base = len(seq)
        self.file_base.append(base)
        seq.extend(data)
        seq.append(ALPHABET + file_idx)

        # Fresh active point per artifact; the unique terminator of the
        # previous artifact guarantees no suffix is left pending.
        active_node = root
        active_edge = 0
        active_length = 0
        remainder = 0
        new_leaves: list[SuffixNode] = []

        for pos in range(base, len(seq)):
            cur = seq[pos]
            remainder += 1
            need_link: SuffixNode | None = None
            while remainder > 0:
                if active_length == 0:
                    active_edge = pos
                edge_sym = seq[active_edge]
                nxt = active_node.children.get(edge_sym)
                if nxt is None:
                    leaf = self._new_node(pos, _OPEN, active_node)
                    leaf.file = file_idx
                    leaf.offset = pos - remainder + 1 - base
                    active_node.children[edge_sym] = leaf
                    new_leaves.append(leaf)
                    if need_link is not None:
                        need_link.link = active_node
                        need_link = None
                else:
                    edge_end = nxt.end
                    edge_len = (pos + 1 if edge_end == _OPEN else edge_end) - nxt.start
                    if active_length >= edge_len:
                        # Walk down: the active point lies past this edge.
                        active_node = nxt
                        active_edge += edge_len
                        active_length -= edge_len
                        continue
                    if seq[nxt.start + active_length] == cur:
                        # Current symbol already present: stop this phase.
                        if need_link is not None and active_node is not root:
                            need_link.link = active_node
                        active_length += 1
                        break
                    split = self._new_node(nxt.start, nxt.start + active_length, active_node)
                    split.children = {}
                    split.link = root
                    active_node.children[edge_sym] = split
                    leaf = self._new_node(pos, _OPEN, split)
                    leaf.file = file_idx
                    leaf.offset = pos - remainder + 1 - base
                    split.children[cur] = leaf
                    new_leaves.append(leaf)
                    nxt.start += active_length
                    nxt.parent = split
                    split.children[seq[nxt.start]] = nxt
                    if need_link is not None:
                        need_link.link = split
                    need_link = split
                remainder -= 1
                if active_node is root and active_length > 0:
                    active_length -= 1
                    active_edge = pos - remainder + 1
                elif active_node is not root:
                    active_node = active_node.link

        # The terminator is unique, so every suffix of this artifact has
        # been inserted and all of its leaves can be closed.
        assert remainder == 0 and active_length == 0
        end = len(seq)
        for leaf in new_leaves:
            leaf.end = end

    def _drop_terminator_leaves(self) -> None:
        # The suffix consisting of a terminator alone carries no content;
        # removing it leaves exactly one leaf per content suffix.
        for file_idx in range(self.corpus.file_count):
            child = self.root.children.get(ALPHABET + file_idx)
            if child is not None and child.is_leaf:
                del self.root.children[ALPHABET + file_idx]

    # -- queries -----------------------------------------------------------

    def locate(self, global_offset: int) -> tuple[int, int]:
        """Map a concatenated-sequence offset to (file, local offset)."""
        file = bisect_right(self.file_base, global_offset) - 1
        return file, global_offset - self.file_base[file]

    def global_offset(self, file: int, local_offset: int) -> int:
        return self.file_base[file] + local_offset

    def iter_nodes(self) -> Iterator[SuffixNode]:
        """All reachable nodes, depth first, children in symbol order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.children:
                for sym in sorted(node.children, reverse=True):
                    stack.append(node.children[sym])

    def leaves(self) -> Iterator[SuffixNode]:
        return (node for node in self.iter_nodes() if node.is_leaf)


def build(corpus: Corpus) -> SuffixIndex:
    """Construct the generalized suffix index for a corpus."""
    return SuffixIndex(corpus)


def path_string(index: SuffixIndex, node: SuffixNode) -> bytes:
    """Content bytes spelled from the root to node, terminators stripped."""
    parts = []
    cursor = node
    while cursor.parent is not None:
        parts.append(index.seq[cursor.start:cursor.end])
        cursor = cursor.parent
    out = bytearray()
    for part in reversed(parts):
        out.extend(sym for sym in part if sym < ALPHABET)
    return bytes(out)


def _collect_regions(node: SuffixNode, length: int) -> set[Region]:
    regions: set[Region] = set()
    stack = [node]
    while stack:
        cursor = stack.pop()
        if cursor.children is None:
            regions.add(Region(cursor.file, cursor.offset, cursor.offset + length))
        else:
            stack.extend(cursor.children.values())
    return regions


def pullback(index: SuffixIndex, pattern: bytes) -> set[Region]:
    """All occurrence regions of pattern, via a root walk plus leaf collection.

    Patterns absent from the corpus yield the empty set. Runs in
    O(|pattern| + occurrences).
    """
    if not pattern:
        raise ValidationError("pullback of the empty pattern is not supported")
    pattern = bytes(pattern)
    seq = index.seq
    node = index.root
    i = 0
    m = len(pattern)
    while i < m:
        children = node.children
        nxt = children.get(pattern[i]) if children else None
        if nxt is None:
            return set()
        j = nxt.start
        end = nxt.end
        while j < end and i < m:
            if seq[j] != pattern[i]:
                return set()
            i += 1
            j += 1
        node = nxt
    return _collect_regions(node, m)


def lcs(index: SuffixIndex) -> bytes:
    """Longest repeated content string: the deepest internal node's path.

    Ties break to the lexicographically smallest string; a corpus with no
    repeated substring yields b"".
    """
    best_node = None
    best_depth = 0
    stack: list[tuple[SuffixNode, int]] = [(index.root, 0)]
    while stack:
        node, depth = stack.pop()
        if node is not index.root and depth > best_depth:
            best_depth = depth
            best_node = node
        # Internal edges never contain terminators, so edge length is
        # content length. Push in reverse symbol order for lexicographic
        # visiting; first strictly-deeper hit is the lexicographic winner.
        for sym in sorted(node.children, reverse=True):
            child = node.children[sym]
            if child.children is not None:
                stack.append((child, depth + child.end - child.start))
    if best_node is None:
        return b""
    return path_string(index, best_node)


def _label_text(index: SuffixIndex, node: SuffixNode) -> str:
    parts = []
    for sym in index.seq[node.start:node.end]:
        if sym >= ALPHABET:
            parts.append(f"$[{sym - ALPHABET}]")
        elif 32 <= sym < 127 and chr(sym) not in '"\\':
            parts.append(chr(sym))
        else:
            parts.append(f"\\x{sym:02x}")
    return "".join(parts)


def to_dot(index: SuffixIndex) -> str:
    """DOT description of the tree: branch labels plus dashed suffix links."""
    lines = ["digraph suffixtree {", "  node [shape=circle];"]
    for node in index.iter_nodes():
        if node.is_leaf:
            lines.append(
                f'  n{node.id} [shape=box label="{node.id}\\n({node.file},{node.offset})"];'
            )
        else:
            lines.append(f'  n{node.id} [label="{node.id}"];')
        if node.parent is not None:
            lines.append(f'  n{node.parent.id} -> n{node.id} [label="{_label_text(index, node)}"];')
        if not node.is_leaf and node is not index.root and node.link is not None:
            lines.append(f"  n{node.id} -> n{node.link.id} [style=dashed constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
