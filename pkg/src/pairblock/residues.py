"""Distinct-residue systems: given offsets d_1..d_n nonzero mod q, find 2n
pairwise-distinct residues x_i, y_i with x_i + d_i = y_i (mod q).

For prime q >= 2n+1 a solution always exists; the deterministic backtracking
search here treats that guarantee as a correctness certificate and reports an
internal violation if it ever fails on such inputs. Composite or small q may
genuinely be infeasible, which is what the feasibility atlas maps out.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import product
from typing import IO

from .embedding import is_prime
from .errors import InfeasibleError, InternalInvariantViolation


@dataclass(frozen=True)
class ResidueSystem:
    """Modulus q and triples (delta_i, x_i, y_i) with all 2n residues distinct."""

    modulus: int
    triples: tuple[tuple[int, int, int], ...]

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(t[0] for t in self.triples)


def _check_deltas(modulus: int, deltas) -> tuple[int, ...]:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    deltas = tuple(deltas)
    for delta in deltas:
        if delta % modulus == 0:
            raise ValueError(f"offset {delta} is zero mod {modulus}")
    return deltas


def solve_residues(modulus: int, deltas) -> ResidueSystem:
    """Find a residue system by deterministic backtracking.

    Candidates for each x_i are tried in increasing order with directions in
    input order, so the result is the lexicographically smallest solution.
    Raises InfeasibleError when the search space is exhausted; for prime
    modulus >= 2n+1 exhaustion would contradict the existence guarantee and
    raises InternalInvariantViolation instead.
    """
    deltas = _check_deltas(modulus, deltas)
    n = len(deltas)
    used: set[int] = set()
    chosen: list[int] = []

    def place(i: int) -> bool:
        if i == n:
            return True
        delta = deltas[i] % modulus
        for x in range(modulus):
            if x in used:
                continue
            y = (x + delta) % modulus
            if y in used or y == x:
                continue
            used.add(x)
            used.add(y)
            chosen.append(x)
            if place(i + 1):
                return True
            chosen.pop()
            used.discard(x)
            used.discard(y)
        return False

    if not place(0):
        if is_prime(modulus) and modulus >= 2 * n + 1:
            raise InternalInvariantViolation(
                f"no residue system for prime modulus {modulus} with {n} offsets; "
                "this contradicts the existence guarantee"
            )
        raise InfeasibleError(
            f"no residue system mod {modulus} for offsets {deltas}"
        )
    triples = tuple(
        (deltas[i] % modulus, x, (x + deltas[i]) % modulus) for i, x in enumerate(chosen)
    )
    return ResidueSystem(modulus, triples)


def oracle_solve(modulus: int, deltas) -> ResidueSystem | None:
    """Exhaustive independent oracle: try every complete assignment.

    Enumerates, per direction, all q candidate pairs (x, x+delta) and scans
    the full cross product for a choice whose 2n endpoints are pairwise
    distinct. Returns None when no assignment works. Intended for small q
    (the cross product has q^n entries).
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    deltas = tuple(deltas)
    n = len(deltas)
    pair_lists = [
        [(x, (x + delta) % modulus) for x in range(modulus)] for delta in deltas
    ]
    for choice in product(*pair_lists):
        endpoints = [value for pair in choice for value in pair]
        if len(set(endpoints)) == 2 * n:
            triples = tuple(
                (deltas[i] % modulus, x, y) for i, (x, y) in enumerate(choice)
            )
            return ResidueSystem(modulus, triples)
    return None


def verify_residue_system(system: ResidueSystem) -> bool:
    """True iff all invariants hold: ranges, congruences, and pairwise distinctness."""
    q = system.modulus
    if q < 2:
        return False
    values: list[int] = []
    for delta, x, y in system.triples:
        if not (1 <= delta <= q - 1):
            return False
        if not (0 <= x < q and 0 <= y < q):
            return False
        if (x + delta) % q != y:
            return False
        values.append(x)
        values.append(y)
    if len(set(values)) != len(values):
        return False
    return len(values) <= q


def feasibility_atlas(modulus: int, n: int) -> dict[tuple[int, ...], bool]:
    """Map every offset vector in {1..q-1}^n to its oracle feasibility."""
    if modulus > 9 or n > 3:
        raise ValueError("atlas is exhaustive; q <= 9 and n <= 3 only")
    return {
        deltas: oracle_solve(modulus, deltas) is not None
        for deltas in product(range(1, modulus), repeat=n)
    }


def atlas_to_csv(atlas: dict[tuple[int, ...], bool], fh: IO[str]) -> None:
    """Write an atlas as CSV with columns delta_1..delta_n, feasible (0/1)."""
    n = len(next(iter(atlas)))
    writer = csv.writer(fh)
    writer.writerow([f"delta_{i + 1}" for i in range(n)] + ["feasible"])
    for deltas in sorted(atlas):
        writer.writerow(list(deltas) + [1 if atlas[deltas] else 0])
