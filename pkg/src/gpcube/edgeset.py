"""Edge subsets as bitsets over edge indices."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError


class EdgeSet:
    """Immutable subset of ``range(size)`` stored as a Python int bitmask.

    Python ints are unbounded, so graphs with more than 64 edges need no
    separate multi-word type.
    """

    __slots__ = ("size", "mask")

    def __init__(self, size: int, mask: int = 0):
        if mask < 0 or mask >> size:
            raise PreconditionError(f"mask has bits outside 0..{size - 1}")
        self.size = size
        self.mask = mask

    @classmethod
    def empty(cls, size: int) -> "EdgeSet":
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> "EdgeSet":
        return cls(size, (1 << size) - 1)

    @classmethod
    def from_indices(cls, size: int, indices: Iterable[int]) -> "EdgeSet":
        mask = 0
        for i in indices:
            if not 0 <= i < size:
                raise PreconditionError(f"edge index {i} outside 0..{size - 1}")
            mask |= 1 << i
        return cls(size, mask)

    @classmethod
    def from_pairs(cls, graph, pairs: Iterable[Sequence[int]]) -> "EdgeSet":
        return cls.from_indices(graph.size, (graph.edge_index(u, v) for u, v in pairs))

    def indices(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def pairs(self, graph) -> list[tuple[int, int]]:
        return [graph.edges[i] for i in self.indices()]

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.size and bool(self.mask >> i & 1)

    def _coerce(self, other: "EdgeSet") -> int:
        if not isinstance(other, EdgeSet):
            raise TypeError("expected EdgeSet")
        if other.size != self.size:
            raise PreconditionError("edge sets over different universes")
        return other.mask

    def __or__(self, other):
        return EdgeSet(self.size, self.mask | self._coerce(other))

    def __and__(self, other):
        return EdgeSet(self.size, self.mask & self._coerce(other))

    def __sub__(self, other):
        return EdgeSet(self.size, self.mask & ~self._coerce(other))

    def add(self, i: int) -> "EdgeSet":
        return EdgeSet(self.size, self.mask | 1 << i)

    def issubset(self, other: "EdgeSet") -> bool:
        return self.mask & ~self._coerce(other) == 0

    def complement(self) -> "EdgeSet":
        return EdgeSet(self.size, ((1 << self.size) - 1) & ~self.mask)

    def sort_key(self) -> tuple[int, ...]:
        return tuple(self.indices())

    def __eq__(self, other):
        if not isinstance(other, EdgeSet):
            return NotImplemented
        return self.size == other.size and self.mask == other.mask

    def __hash__(self):
        return hash((self.size, self.mask))

    def __repr__(self):
        return f"EdgeSet({self.size}, {self.indices()})"
