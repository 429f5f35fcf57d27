"""Integer-vector geometry: primitive directions, finite boards, and windows.

All coordinates are exact Python integers (no overflow anywhere), and board
points are 1-based: the board with side N in dimension d is {1,...,N}^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import NotPrimitiveError, ZeroVectorError

# A lattice point or displacement: one signed integer per dimension.
Vector = tuple[int, ...]


def gcd_vector(v: Vector) -> int:
    """Return the gcd of the absolute coordinate values (0 only for the zero vector)."""
    return math.gcd(*(abs(c) for c in v))


@dataclass(frozen=True)
class Direction:
    """A primitive winning direction, canonicalized so v and -v coincide.

    Invariants (checked at construction): nonzero, coordinate gcd 1, and the
    first nonzero coordinate positive.
    """

    vector: Vector

    def __post_init__(self) -> None:
        g = gcd_vector(self.vector)
        if g == 0:
            raise ZeroVectorError("direction is the zero vector")
        if g != 1:
            raise NotPrimitiveError(f"direction {self.vector} not primitive (gcd {g})")
        first_nonzero = next(c for c in self.vector if c != 0)
        if first_nonzero < 0:
            raise ValueError(f"direction {self.vector} not canonical (use canonicalize_direction)")

    @property
    def dim(self) -> int:
        return len(self.vector)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.vector)


def canonicalize_direction(v: Vector) -> Direction:
    """Return the Direction for v, flipping sign so the first nonzero coordinate is positive."""
    g = gcd_vector(v)
    if g == 0:
        raise ZeroVectorError("direction is the zero vector")
    if g != 1:
        raise NotPrimitiveError(f"direction {tuple(v)} not primitive (gcd {g})")
    first_nonzero = next(c for c in v if c != 0)
    if first_nonzero < 0:
        v = tuple(-c for c in v)
    return Direction(tuple(v))


def normalize_directions(vectors) -> tuple[Direction, ...]:
    """Canonicalize raw vectors (Direction instances pass through), dropping sign duplicates.

    Order of first appearance is preserved.
    """
    out: list[Direction] = []
    seen: set[Vector] = set()
    for v in vectors:
        direction = v if isinstance(v, Direction) else canonicalize_direction(tuple(v))
        if direction.vector not in seen:
            seen.add(direction.vector)
            out.append(direction)
    return tuple(out)


@dataclass(frozen=True)
class BoardSpec:
    """A finite board {1,...,side}^dim."""

    side: int
    dim: int

    def __post_init__(self) -> None:
        if self.side < 1:
            raise ValueError("board side must be positive")
        if self.dim < 1:
            raise ValueError("board dimension must be positive")

    def contains(self, point: Vector) -> bool:
        return len(point) == self.dim and all(1 <= c <= self.side for c in point)

    def points(self) -> Iterator[Vector]:
        """All board points in lexicographic order."""
        return product(range(1, self.side + 1), repeat=self.dim)

    @property
    def cell_count(self) -> int:
        return self.side**self.dim


@dataclass(frozen=True)
class Window:
    """m consecutive lattice points from start, spaced by direction.

    A Window produced by enumerate_windows lies entirely on the board; the
    type itself carries no board reference (analysis code also builds windows
    on the unbounded lattice).
    """

    start: Vector
    direction: Direction
    length: int

    def points(self) -> tuple[Vector, ...]:
        v = self.direction.vector
        return tuple(
            tuple(s + k * c for s, c in zip(self.start, v)) for k in range(self.length)
        )


def enumerate_windows(board: BoardSpec, direction: Direction, length: int) -> Iterator[Window]:
    """Yield every length-`length` window along `direction` that fits on the board.

    Iteration is lexicographic on the start point; the sequence is empty when
    no window fits. For each coordinate the start must satisfy
    1 <= start + t*step <= side for all t in [0, length), which pins an
    interval of admissible starts per coordinate.
    """
    if length < 1:
        raise ValueError("window length must be >= 1")
    span = length - 1
    ranges = []
    for step in direction.vector:
        lo = max(1, 1 - span * step)
        hi = min(board.side, board.side - span * step)
        if lo > hi:
            return
        ranges.append(range(lo, hi + 1))
    for start in product(*ranges):
        yield Window(start, direction, length)
