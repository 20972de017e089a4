"""
Union-Find used to split unit spaces into orbits.
"""

from typing import Dict, Hashable, List


class UnionFind:
    """Disjoint sets with path halving and union by size - O(α(n))"""

    def __init__(self):
        self._root: Dict[Hashable, Hashable] = {}
        self._size: Dict[Hashable, int] = {}
        self._order: List[Hashable] = []

    def make_set(self, x: Hashable) -> None:
        if x in self._root:
            return
        self._root[x] = x
        self._size[x] = 1
        self._order.append(x)

    def find(self, x: Hashable) -> Hashable:
        """Representative of x's block, halving the path on the way up"""
        while self._root[x] != x:
            self._root[x] = self._root[self._root[x]]
            x = self._root[x]
        return x

    def union(self, x: Hashable, y: Hashable) -> bool:
        """Merge the blocks of x and y; False if they were already one"""
        a, b = self.find(x), self.find(y)
        if a == b:
            return False
        # smaller block hangs under the larger
        if self._size[a] < self._size[b]:
            a, b = b, a
        self._root[b] = a
        self._size[a] += self._size[b]
        return True

    def size(self, x: Hashable) -> int:
        return self._size[self.find(x)]

    def groups(self) -> List[List[Hashable]]:
        """Blocks in first-insertion order, members in insertion order"""
        blocks: Dict[Hashable, List[Hashable]] = {}
        for x in self._order:
            blocks.setdefault(self.find(x), []).append(x)
        return list(blocks.values())
