"""Truncated ground sets: windows of exponent tuples, possibly in blocks.

A window consists of n blocks; block k holds the exponent tuples
``product(range(b_1), ..., range(b_m))`` for that block's per-variable bounds
``(b_1, ..., b_m)``.  Linear indices enumerate block 0 lexicographically,
then block 1, and so on — this linearization is the disjoint-variable merge
of per-component supports, so a tuple of supports embeds as a plain subset.
"""

from itertools import product

from .errors import WindowMismatch


class GroundWindow:
    __slots__ = ("blocks", "_sizes", "_offsets", "size", "_labels", "_index")

    def __init__(self, blocks):
        blocks = tuple(tuple(int(b) for b in blk) for blk in blocks)
        if not blocks:
            raise WindowMismatch("a window needs at least one block")
        m = len(blocks[0])
        for blk in blocks:
            if len(blk) != m or any(b < 1 for b in blk):
                raise WindowMismatch(f"bad block bounds {blk}")
        self.blocks = blocks
        self._sizes = []
        self._offsets = []
        off = 0
        for blk in blocks:
            size = 1
            for b in blk:
                size *= b
            self._sizes.append(size)
            self._offsets.append(off)
            off += size
        self.size = off
        self._labels = []
        for k, blk in enumerate(blocks):
            for exps in product(*(range(b) for b in blk)):
                self._labels.append((k, exps))
        self._index = {lab: i for i, lab in enumerate(self._labels)}

    @property
    def n_blocks(self):
        return len(self.blocks)

    @property
    def n_vars(self):
        return len(self.blocks[0])

    def index(self, block, exps):
        key = (block, tuple(exps))
        try:
            return self._index[key]
        except KeyError:
            raise WindowMismatch(f"label {key} outside the window") from None

    def label(self, i):
        if not 0 <= i < self.size:
            raise WindowMismatch(f"linear index {i} outside the window")
        return self._labels[i]

    def __eq__(self, other):
        return isinstance(other, GroundWindow) and other.blocks == self.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"GroundWindow({list(map(list, self.blocks))})"


def single_block(*bounds):
    """Convenience: a one-block window with the given per-variable bounds."""
    return GroundWindow([bounds])


class SupportSet:
    """A finite subset of a window, canonically ordered."""

    __slots__ = ("window", "members")

    def __init__(self, window, members):
        members = frozenset(int(i) for i in members)
        for i in members:
            if not 0 <= i < window.size:
                raise WindowMismatch(f"index {i} outside window of size {window.size}")
        self.window = window
        self.members = members

    @classmethod
    def from_labels(cls, window, labels):
        return cls(window, (window.index(b, e) for b, e in labels))

    def sorted_members(self):
        return tuple(sorted(self.members))

    def labels(self):
        return [self.window.label(i) for i in self.sorted_members()]

    def union(self, other):
        self._same_window(other)
        return SupportSet(self.window, self.members | other.members)

    def _same_window(self, other):
        if self.window != other.window:
            raise WindowMismatch("supports live on different windows")

    def __contains__(self, i):
        return i in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted_members())

    def __le__(self, other):
        self._same_window(other)
        return self.members <= other.members

    def __eq__(self, other):
        return (
            isinstance(other, SupportSet)
            and other.window == self.window
            and other.members == self.members
        )

    def __hash__(self):
        return hash((self.window, self.members))

    def __repr__(self):
        return f"SupportSet({sorted(self.members)})"
