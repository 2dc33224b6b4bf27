from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph


@dataclass(frozen=True)
class OctDecomposition:
    """Partition of the vertices into an odd cycle transversal and two sides.

    ``left`` and ``right`` are independent sets, so removing ``oct_set``
    leaves a bipartite graph with that 2-coloring.
    """

    oct_set: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]

    @classmethod
    def from_sides(cls, side: dict[int, int] | list[int]) -> "OctDecomposition":
        items = side.items() if isinstance(side, dict) else enumerate(side)
        parts: tuple[set, set, set] = (set(), set(), set())
        for u, s in items:
            parts[int(s)].add(int(u))
        return cls(frozenset(parts[2]), frozenset(parts[0]), frozenset(parts[1]))

    @property
    def size(self) -> int:
        return len(self.oct_set)

    def swapped(self) -> "OctDecomposition":
        return OctDecomposition(self.oct_set, self.right, self.left)

    def side_of(self, u: int) -> int:
        if u in self.left:
            return 0
        if u in self.right:
            return 1
        return 2

    def is_valid_for(self, g: Graph) -> bool:
        s, l, r = self.oct_set, self.left, self.right
        if s & l or s & r or l & r or (s | l | r) != set(g.vertices()):
            return False
        return all(not ({a, b} <= l or {a, b} <= r) for a, b in g.edges)

    def __str__(self) -> str:
        return f"{len(self.oct_set)} {len(self.left)} {len(self.right)}"
