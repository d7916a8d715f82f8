"""Known answers computed without dspc."""

import math
from functools import lru_cache
from itertools import permutations
from typing import List, Tuple


def nqueens_count(n: int) -> int:
    """Count placements by checking every column permutation."""
    count = 0
    for cols in permutations(range(n)):
        if len({c + r for r, c in enumerate(cols)}) == n and len({c - r for r, c in enumerate(cols)}) == n:
            count += 1
    return count


def ackermann(m: int, n: int) -> int:
    while m > 0:
        if n == 0:
            m, n = m - 1, 1
        else:
            n = ackermann(m, n - 1)
            m -= 1
    return n + 1


@lru_cache(maxsize=None)
def tarai(x: int, y: int, z: int) -> int:
    if x <= y:
        return y
    return tarai(tarai(x - 1, y, z), tarai(y - 1, z, x), tarai(z - 1, x, y))


def quarter_points(r: float) -> List[Tuple[float, float]]:
    """Grid points of the quarter disc of radius r, x-major."""
    steps = [float(i) for i in range(int(math.floor(r)) + 1)] if r >= 0 else []
    return [(x, y) for x in steps for y in steps if math.sqrt(x * x + y * y) <= r]


def plan_layouts(width: float, depth: float, stories: int) -> List[Tuple[int, int, float]]:
    """(NX, NY, Section) triples accepted by the column layout rules."""
    def bays(length, lo, hi):
        return [(n, length / n) for n in range(1, 21) if lo <= length / n <= hi]

    layouts = []
    for nx, span_x in bays(width, 7.5, 16.0):
        for ny, span_y in bays(depth, 5.0, 10.0):
            for section in (0.5, 0.6, 0.7, 0.8):
                if span_x * span_y * stories * 12.0 <= 10000.0 * section ** 2:
                    layouts.append((nx, ny, section))
    return layouts
