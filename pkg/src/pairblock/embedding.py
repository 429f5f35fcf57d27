"""Reduction of the d-dimensional board to the integer line.

The reduction picks a residue vector u' whose dot product with every winning
direction is nonzero mod p, then lifts it to an exact-integer weight vector r
that embeds the board injectively into the integers. Each direction maps to a
positive offset d_i = |r . v_i| with a sign, and p never divides d_i because
r is componentwise congruent to u' mod p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .errors import InfeasibleError, InternalInvariantViolation
from .lattice import Direction, Vector

# Random sampling attempts for u' before falling back to a lexicographic scan.
SAMPLE_LIMIT = 64


def is_prime(k: int) -> bool:
    """Trial-division primality test (desk-scale inputs only)."""
    if k < 2:
        return False
    if k < 4:
        return True
    if k % 2 == 0:
        return False
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


def next_prime_at_least(k: int) -> int:
    """Smallest prime >= k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    while not is_prime(k):
        k += 1
    return k


@dataclass(frozen=True)
class PrimeContext:
    """The arithmetic frame of one construction: n directions, prime p, win length p+1."""

    n_directions: int
    prime: int
    win_length: int

    def __post_init__(self) -> None:
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.prime < 2 * self.n_directions + 1:
            raise ValueError(
                f"prime {self.prime} below 2n+1 = {2 * self.n_directions + 1}"
            )
        if self.win_length != self.prime + 1:
            raise ValueError("win length must equal prime + 1")


@dataclass(frozen=True)
class EmbeddingData:
    """The line reduction: u' in {1..p}^d, weights r, base B, per-direction offsets.

    offsets[i] is (magnitude, sign) with magnitude = |r . v_i| > 0, never
    divisible by p, and sign the sign of r . v_i.
    """

    u_prime: tuple[int, ...]
    weights: tuple[int, ...]
    base: int
    offsets: tuple[tuple[int, int], ...]


def dot(a: Vector, b: Vector) -> int:
    return sum(x * y for x, y in zip(a, b))


def _u_prime_valid(u: tuple[int, ...], prime: int, directions: tuple[Direction, ...]) -> bool:
    return all(dot(u, direction.vector) % prime != 0 for direction in directions)


def sample_u_prime(
    prime: int, directions, seed: int
) -> tuple[tuple[int, ...], int]:
    """Like find_u, but also reports how many random samples were drawn."""
    directions = tuple(directions)
    n = len(directions)
    if prime < 2 * n + 1:
        raise ValueError(f"prime {prime} below 2n+1 = {2 * n + 1}")
    # Union bound: a sample fails with probability at most n/p < 1/2.
    assert n < prime
    d = directions[0].dim
    rng = random.Random(seed)
    for attempt in range(1, SAMPLE_LIMIT + 1):
        u = tuple(rng.randint(1, prime) for _ in range(d))
        if _u_prime_valid(u, prime, directions):
            return u, attempt
    for u in product(range(1, prime + 1), repeat=d):
        if _u_prime_valid(u, prime, directions):
            return u, SAMPLE_LIMIT
    raise InfeasibleError("no u' in {1..p}^d avoids all direction dot products mod p")


def find_u(prime: int, directions, seed: int) -> tuple[int, ...]:
    """Find u' in {1..p}^d with u'.v_i nonzero mod p for every direction.

    Seeded rejection sampling, with a deterministic lexicographic scan after
    SAMPLE_LIMIT failed samples, so the result is reproducible and the search
    always terminates.
    """
    u, _ = sample_u_prime(prime, directions, seed)
    return u


def build_r(u_prime: tuple[int, ...], prime: int, side: int) -> tuple[tuple[int, ...], int]:
    """Lift u' to exact weights r_j = u'_j + p*B^(j-1) with B = max(2*side+2, 2).

    Returns (r, B). The construction keeps r congruent to u' componentwise
    mod p and satisfies the chain inequality r_{j+1} > side*(r_1+...+r_j),
    which makes the dot-product embedding injective on the board. Both
    properties are asserted here.
    """
    base = max(2 * side + 2, 2)
    weights = tuple(u + prime * base**j for j, u in enumerate(u_prime))
    check_weights(weights, u_prime, prime, side)
    return weights, base


def check_weights(
    weights: tuple[int, ...], u_prime: tuple[int, ...], prime: int, side: int
) -> None:
    """Assert positivity, congruence to u', and the chain inequality of r."""
    running = 0
    for j, (w, u) in enumerate(zip(weights, u_prime)):
        if w <= 0:
            raise InternalInvariantViolation(f"weight r_{j + 1} = {w} not positive")
        if w % prime != u % prime:
            raise InternalInvariantViolation(
                f"weight r_{j + 1} = {w} not congruent to u'_{j + 1} = {u} mod {prime}"
            )
        if j > 0 and w <= side * running:
            raise InternalInvariantViolation(
                f"chain inequality fails at j={j + 1}: {w} <= {side}*{running}"
            )
        running += w


def embed(point: Vector, weights: tuple[int, ...]) -> int:
    """Map a board point to its exact integer image point . r (injective on the board)."""
    return dot(point, weights)


def direction_offsets(
    weights: tuple[int, ...], directions, prime: int
) -> tuple[tuple[int, int], ...]:
    """Per-direction (magnitude, sign) of r . v_i; asserts p never divides the magnitude."""
    offsets = []
    for direction in directions:
        value = dot(weights, direction.vector)
        if value % prime == 0:
            raise InternalInvariantViolation(
                f"offset for direction {direction} divisible by {prime} "
                "(u' validation should have prevented this)"
            )
        offsets.append((abs(value), 1 if value > 0 else -1))
    return tuple(offsets)


def build_embedding(
    u_prime: tuple[int, ...], prime: int, side: int, directions
) -> EmbeddingData:
    """Assemble EmbeddingData from u', re-running every construction invariant."""
    directions = tuple(directions)
    if len(u_prime) != directions[0].dim:
        raise ValueError("u' length must match the direction dimension")
    if not all(1 <= u <= prime for u in u_prime):
        raise ValueError("u' entries must lie in {1..p}")
    weights, base = build_r(u_prime, prime, side)
    offsets = direction_offsets(weights, directions, prime)
    return EmbeddingData(tuple(u_prime), weights, base, offsets)
