"""Statement classification and the per-method dependency graph."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..frontend.ast import Bind, Call, Find, ForGen, SelectGen, Stmt, Tester


class StmtClass(str, Enum):
    GENERATOR = "generator"
    CALCULATOR = "calculator"
    TESTER = "tester"


def classify(stmt: Stmt) -> StmtClass:
    """Generate-and-test role of a statement."""
    if isinstance(stmt, Tester):
        return StmtClass.TESTER
    if isinstance(stmt, Bind):
        if isinstance(stmt.rhs, (ForGen, SelectGen)):
            return StmtClass.GENERATOR
        return StmtClass.CALCULATOR
    if isinstance(stmt, Call) and stmt.op == "call":
        return StmtClass.GENERATOR
    if isinstance(stmt, (Call, Find)):
        return StmtClass.CALCULATOR
    raise TypeError(f"not a statement: {stmt!r}")


@dataclass(frozen=True)
class DepGraph:
    """Edges run from the statement defining a variable to each statement reading it."""

    classes: Tuple[StmtClass, ...]
    edges: FrozenSet[Tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.classes)

    def predecessors(self, node: int) -> List[int]:
        return sorted(i for i, j in self.edges if j == node)

    def successors(self, node: int) -> List[int]:
        return sorted(j for i, j in self.edges if i == node)

    def ancestors(self, node: int) -> List[int]:
        seen: set = set()
        stack = [node]
        while stack:
            for p in self.predecessors(stack.pop()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return sorted(seen)

    def is_generator(self, node: int) -> bool:
        return self.classes[node] is StmtClass.GENERATOR

    def find_cycle(self) -> Optional[List[int]]:
        """Statement indices of one cycle in traversal order, or None."""
        succ: Dict[int, List[int]] = {n: self.successors(n) for n in range(self.size)}
        state = [0] * self.size  # 0 new, 1 on path, 2 done
        for root in range(self.size):
            if state[root]:
                continue
            path: List[int] = [root]
            iters = [iter(succ[root])]
            state[root] = 1
            while iters:
                nxt = next(iters[-1], None)
                if nxt is None:
                    state[path.pop()] = 2
                    iters.pop()
                elif state[nxt] == 1:
                    return path[path.index(nxt):]
                elif state[nxt] == 0:
                    state[nxt] = 1
                    path.append(nxt)
                    iters.append(iter(succ[nxt]))
        return None


def build_graph(
    statements: Sequence[Stmt], definers: Dict[str, int], reads: Sequence[Sequence[str]]
) -> DepGraph:
    edges = set()
    for j, names in enumerate(reads):
        for name in names:
            i = definers.get(name)
            if i is not None:
                edges.add((i, j))
    return DepGraph(tuple(classify(s) for s in statements), frozenset(edges))
