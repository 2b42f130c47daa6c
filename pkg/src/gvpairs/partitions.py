"""Plane partitions (3D Young diagrams) by exhaustive enumeration.

Diagrams are generated by reverse search: a diagram of size m is produced
from its unique parent, obtained by deleting its lexicographically largest
removable box.  Every diagram is therefore visited exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Tuple

from .gvseries import ClassLattice, QSeries

Box = Tuple[int, int, int]

COUNT_BOUND = 14
LIST_BOUND = 10

__all__ = [
    "PlanePartition",
    "BoundError",
    "count_plane_partitions",
    "list_plane_partitions",
    "iter_plane_partitions",
    "p0_local_elliptic_series",
    "COUNT_BOUND",
    "LIST_BOUND",
]

_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class BoundError(ValueError):
    pass


def _shift(box: Box, e: Box, sign: int = 1) -> Box:
    return (box[0] + sign * e[0], box[1] + sign * e[1], box[2] + sign * e[2])


@dataclass(frozen=True)
class PlanePartition:
    boxes: FrozenSet[Box]

    def __post_init__(self):
        object.__setattr__(self, "boxes", frozenset(tuple(b) for b in self.boxes))
        if not self.is_downward_closed():
            raise ValueError("box set is not downward closed")

    def __len__(self):
        return len(self.boxes)

    def is_downward_closed(self) -> bool:
        for b in self.boxes:
            if min(b) < 0:
                return False
            for e in _UNIT:
                below = _shift(b, e, -1)
                if min(below) >= 0 and below not in self.boxes:
                    return False
        return True

    def sorted_boxes(self) -> List[Box]:
        return sorted(self.boxes)

    def permuted(self, perm: Tuple[int, int, int]) -> "PlanePartition":
        return PlanePartition(frozenset(tuple(b[p] for p in perm) for b in self.boxes))

    def to_list(self) -> List[List[int]]:
        return [list(b) for b in self.sorted_boxes()]


def _addable(boxes: FrozenSet[Box]) -> List[Box]:
    cands = {(0, 0, 0)} if not boxes else set()
    for b in boxes:
        for e in _UNIT:
            c = _shift(b, e)
            if c not in boxes:
                cands.add(c)
    out = []
    for c in cands:
        if all(min(_shift(c, e, -1)) < 0 or _shift(c, e, -1) in boxes for e in _UNIT):
            out.append(c)
    return sorted(out)


def _max_removable(boxes: FrozenSet[Box]) -> Box:
    return max(b for b in boxes if all(_shift(b, e) not in boxes for e in _UNIT))


def _search(boxes: FrozenSet[Box], remaining: int) -> Iterator[FrozenSet[Box]]:
    if remaining == 0:
        yield boxes
        return
    for c in _addable(boxes):
        child = boxes | {c}
        if _max_removable(child) == c:
            yield from _search(child, remaining - 1)


def iter_plane_partitions(m: int) -> Iterator[FrozenSet[Box]]:
    if m < 0:
        raise BoundError("size must be non-negative")
    return _search(frozenset(), m)


def count_plane_partitions(m: int, bound: int = COUNT_BOUND) -> int:
    """Number of 3D Young diagrams with m boxes."""
    if m < 0 or m > bound:
        raise BoundError(f"count_plane_partitions supports 0 <= m <= {bound}, got {m}")
    return sum(1 for _ in iter_plane_partitions(m))


def list_plane_partitions(m: int, bound: int = LIST_BOUND) -> List[PlanePartition]:
    """All diagrams of size m, in descending lexicographic order of their sorted boxes."""
    if m < 0 or m > bound:
        raise BoundError(f"list_plane_partitions supports 0 <= m <= {bound}, got {m}")
    found = sorted((tuple(sorted(b)) for b in iter_plane_partitions(m)), reverse=True)
    return [PlanePartition(frozenset(b)) for b in found]


def p0_local_elliptic_series(cutoff: int) -> QSeries:
    """P_{0, m[C]} of the local elliptic curve: one count per torus-fixed pair."""
    counts = {(m,): count_plane_partitions(m) for m in range(cutoff + 1)}
    return QSeries(ClassLattice.rank1(cutoff), counts)
