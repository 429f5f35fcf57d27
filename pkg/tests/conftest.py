import random

import pytest

import pairblock as pb
from pairblock.lattice import canonicalize_direction, gcd_vector

CLASSIC = ((1, 0), (0, 1), (1, 1), (1, -1))


def random_direction_set(n, dim, seed, max_coord=2):
    """Deterministic random set of n distinct canonical primitive directions."""
    rng = random.Random(seed * 1_000_003 + n * 1_009 + dim)
    out, seen = [], set()
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 10_000:
            raise RuntimeError(f"cannot sample {n} directions in dimension {dim}")
        v = tuple(rng.randint(-max_coord, max_coord) for _ in range(dim))
        if all(c == 0 for c in v):
            continue
        g = gcd_vector(v)
        direction = canonicalize_direction(tuple(c // g for c in v))
        if direction.vector not in seen:
            seen.add(direction.vector)
            out.append(direction)
    return tuple(out)


def window_blocked_by_embedding(cert, window):
    """Independent blocking oracle through the exact integer images.

    Two window points are mutual partners iff their images differ by exactly
    the direction offset d_i and the smaller image lies in residue class x_i.
    Avoids the partner() shortcut through u' entirely.
    """
    p = cert.spec.prime
    weights = cert.embedding.weights
    images = [pb.embed(pt, weights) for pt in window.points()]
    for i, (_, x, _) in enumerate(cert.residues.triples):
        magnitude, _ = cert.embedding.offsets[i]
        for a in images:
            if a % p == x and a + magnitude in images:
                return True
    return False


@pytest.fixture(scope="session")
def worked_cert():
    # d=1, N=12, p=3: seed 1 samples u' = (1), giving r=(4) and pairs (3t, 3t+1)
    return pb.build_certificate(12, 1, [(1,)], seed=1, prime_override=3)


@pytest.fixture(scope="session")
def classic_cert():
    return pb.build_certificate(20, 2, CLASSIC, seed=7)
