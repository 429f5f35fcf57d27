"""Limits of pairing strategies: the short-window refuter, the mod-6
obstruction for three 2D directions, and brute-force searchers for the two
partition conjectures at small scale.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from itertools import product
from typing import IO, Mapping

from .errors import InternalInvariantViolation, InvalidVector, MalformedInstance
from .lattice import Direction, Vector, Window
from .pairing import PairingCertificate
from .residues import oracle_solve


# --- periodic pairings ----------------------------------------------------------


@dataclass(frozen=True)
class PeriodicPairing:
    """A pairing of the whole lattice, invariant under the period box.

    `pairs` maps a box cell (0-based, coordinates mod the period) to the
    offset of its partner; absent cells are free. Offsets are one signed step
    along a winning direction, and the map must be an involution under
    periodic extension.
    """

    period: tuple[int, ...]
    pairs: Mapping[Vector, Vector]

    def reduce(self, point: Vector) -> Vector:
        return tuple(c % p for c, p in zip(point, self.period))

    def partner_of(self, point: Vector) -> Vector | None:
        offset = self.pairs.get(self.reduce(point))
        if offset is None:
            return None
        return tuple(c + o for c, o in zip(point, offset))


def validate_periodic_pairing(pairing: PeriodicPairing, directions) -> None:
    """Raise MalformedInstance unless offsets ride the directions and the map is an involution."""
    if any(p < 1 for p in pairing.period):
        raise MalformedInstance("period box sides must be positive")
    allowed = set()
    for direction in directions:
        allowed.add(direction.vector)
        allowed.add(tuple(-c for c in direction.vector))
    for cell, offset in pairing.pairs.items():
        if pairing.reduce(cell) != cell:
            raise MalformedInstance(f"cell {cell} outside the period box")
        if offset not in allowed:
            raise MalformedInstance(f"offset {offset} is not a winning direction step")
        other = pairing.reduce(tuple(c + o for c, o in zip(cell, offset)))
        if other == cell:
            raise MalformedInstance(f"cell {cell} would pair with itself")
        back = pairing.pairs.get(other)
        if back != tuple(-c for c in offset):
            raise MalformedInstance(f"involution fails at {cell} -> {other}")


def sample_periodic_pairing(
    directions, rng: random.Random, max_side: int = 6, pair_prob: float = 0.8
) -> PeriodicPairing:
    """Random valid pairing: random period box, rejection-sampled pair assignments."""
    directions = tuple(directions)
    dim = directions[0].dim
    period = tuple(rng.randint(1, max_side) for _ in range(dim))
    cells = list(product(*(range(p) for p in period)))
    rng.shuffle(cells)
    pairs: dict[Vector, Vector] = {}
    for cell in cells:
        if cell in pairs or rng.random() >= pair_prob:
            continue
        direction = rng.choice(directions)
        sign = rng.choice((1, -1))
        offset = tuple(sign * c for c in direction.vector)
        other = tuple((a + b) % p for a, b, p in zip(cell, offset, period))
        if other == cell or other in pairs:
            continue
        pairs[cell] = offset
        pairs[other] = tuple(-c for c in offset)
    return PeriodicPairing(period, pairs)


def window_has_internal_pair(pairing: PeriodicPairing, window: Window) -> bool:
    """Dumb pairwise check: do any two window points pair with each other?"""
    pts = window.points()
    for i, a in enumerate(pts):
        pa = pairing.partner_of(a)
        if pa is None:
            continue
        for b in pts[i + 1 :]:
            if pa == b and pairing.partner_of(b) == a:
                return True
    return False


def refute_pairing(pairing: PeriodicPairing, directions, m: int) -> Window | None:
    """First window of length m with no internal matched pair, or None.

    Scans starts over one period box plus a margin of m times the largest
    direction coordinate in every coordinate, which by periodicity covers all
    window classes. The returned witness is re-validated with an independent
    pairwise check before being reported.
    """
    directions = tuple(directions)
    if m < 1:
        raise ValueError("window length must be >= 1")
    validate_periodic_pairing(pairing, directions)
    margin = m * max(abs(c) for d in directions for c in d.vector)
    ranges = [range(0, p + margin) for p in pairing.period]
    for direction in directions:
        v = direction.vector
        for start in product(*ranges):
            blocked = False
            for t in range(m - 1):
                pt = tuple(s + t * c for s, c in zip(start, v))
                if pairing.pairs.get(pairing.reduce(pt)) == v:
                    blocked = True
                    break
            if not blocked:
                witness = Window(start, direction, m)
                if window_has_internal_pair(pairing, witness):
                    raise InternalInvariantViolation(
                        f"refuter selected window {start} along {direction} "
                        "that does contain a matched pair"
                    )
                return witness
    return None


def certificate_periodic_pairing(cert: PairingCertificate) -> PeriodicPairing:
    """Convert a certificate's pairing into a PeriodicPairing with period p per side.

    The point residue depends on the point mod p coordinatewise, so the box
    (p, ..., p) captures the whole pairing. No primitive direction is zero mod
    p componentwise (p would divide its gcd), so no cell pairs with itself.
    """
    p = cert.spec.prime
    u = cert.embedding.u_prime
    pairs: dict[Vector, Vector] = {}
    for cell in product(range(p), repeat=cert.spec.dim):
        rho = sum(c * uc for c, uc in zip(cell, u)) % p
        for i, (_, x, y) in enumerate(cert.residues.triples):
            _, sign = cert.embedding.offsets[i]
            v = cert.spec.directions[i].vector
            if rho == x:
                pairs[cell] = tuple(sign * dc for dc in v)
                break
            if rho == y:
                pairs[cell] = tuple(-sign * dc for dc in v)
                break
    pairing = PeriodicPairing((p,) * cert.spec.dim, pairs)
    validate_periodic_pairing(pairing, cert.spec.directions)
    return pairing


@dataclass
class LowerBoundReport:
    """Outcome of the short-window refutation demo."""

    directions: tuple[Direction, ...]
    win_length: int
    trials: int
    refuted: int
    included_refuted: list[bool] = field(default_factory=list)

    @property
    def fraction_refuted(self) -> float:
        return self.refuted / self.trials if self.trials else 0.0

    def to_json_dict(self) -> dict:
        return {
            "version": "1",
            "directions": [list(d.vector) for d in self.directions],
            "win_length": self.win_length,
            "trials": self.trials,
            "refuted": self.refuted,
            "fraction_refuted": self.fraction_refuted,
            "included_refuted": self.included_refuted,
        }


def lower_bound_demo(
    directions, trials: int, seed: int, m: int | None = None, include=()
) -> LowerBoundReport:
    """Sample random periodic pairings and refute them at m (default 2n).

    Every sampled pairing at m <= 2n admits an unblocked window by the
    counting argument; pairings passed via `include` (e.g. a converted
    certificate pairing) are tested at the same m and reported separately.
    """
    directions = tuple(directions)
    if m is None:
        m = 2 * len(directions)
    rng = random.Random(seed)
    refuted = 0
    for _ in range(trials):
        pairing = sample_periodic_pairing(directions, rng)
        if refute_pairing(pairing, directions, m) is not None:
            refuted += 1
    included = [refute_pairing(p, directions, m) is not None for p in include]
    return LowerBoundReport(directions, m, trials, refuted, included)


# --- the mod-6 obstruction ------------------------------------------------------


@dataclass
class Mod6Report:
    """Full table for offsets (d1, d2, d1+d2) mod 6, plus the prime-7 control."""

    rows: list[tuple[int, int, int, str]]
    control_feasible: bool

    @property
    def checked(self) -> int:
        return sum(1 for r in self.rows if r[3] != "excluded_zero_offset")

    @property
    def infeasible(self) -> int:
        return sum(1 for r in self.rows if r[3] == "infeasible")

    @property
    def excluded(self) -> int:
        return sum(1 for r in self.rows if r[3] == "excluded_zero_offset")

    @property
    def all_infeasible(self) -> bool:
        return self.checked == self.infeasible

    def to_json_dict(self) -> dict:
        return {
            "version": "1",
            "rows": [
                {"delta_1": d1, "delta_2": d2, "delta_3": d3, "status": status}
                for d1, d2, d3, status in self.rows
            ],
            "checked": self.checked,
            "infeasible": self.infeasible,
            "excluded_zero_offset": self.excluded,
            "all_infeasible": self.all_infeasible,
            "control_modulus_7_feasible": self.control_feasible,
        }

    def write_csv(self, fh: IO[str]) -> None:
        writer = csv.writer(fh)
        writer.writerow(["delta_1", "delta_2", "delta_3", "status"])
        for row in self.rows:
            writer.writerow(row)


def mod6_obstruction_check() -> Mod6Report:
    """Exhaust all (d1, d2) in {1..5}^2 with d3 = d1+d2 mod 6.

    Cases with d3 = 0 cannot even enter the solver (a zero offset) and are
    excluded and counted; every remaining case is checked infeasible by the
    exhaustive oracle. The control run at modulus 7 shows the same offsets
    become feasible at a prime >= 2n+1.
    """
    rows: list[tuple[int, int, int, str]] = []
    for d1 in range(1, 6):
        for d2 in range(1, 6):
            d3 = (d1 + d2) % 6
            if d3 == 0:
                rows.append((d1, d2, d3, "excluded_zero_offset"))
                continue
            feasible = oracle_solve(6, (d1, d2, d3)) is not None
            rows.append((d1, d2, d3, "feasible" if feasible else "infeasible"))
    control = oracle_solve(7, (1, 2, 3)) is not None
    return Mod6Report(rows, control)


# --- conjecture searchers -------------------------------------------------------


def conjecture2_search(vectors) -> dict[int, list[tuple[Vector, Vector]]] | None:
    """Partition Z_{2n}^d into pairs (x, x+v_i), one quota of (2n)^(d-1) pairs
    per direction, with no two same-direction x's differing by a multiple of v_i.

    Deterministic backtracking over elements in lexicographic order; returns
    the witness as direction index -> list of (x, y) pairs, or None.
    """
    vectors = tuple(tuple(v) for v in vectors)
    n = len(vectors)
    if n == 0:
        raise InvalidVector("at least one vector required")
    mod = 2 * n
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise InvalidVector("vectors must share one dimension")
    if n > 3 or dim > 2:
        raise ValueError("search is exhaustive; n <= 3 and d <= 2 only")
    vectors = tuple(tuple(c % mod for c in v) for v in vectors)
    if any(all(c == 0 for c in v) for v in vectors):
        raise InvalidVector("vectors must be nonzero in Z_2n^d")

    elements = list(product(range(mod), repeat=dim))
    quota = mod ** (dim - 1)
    multiples = [
        {tuple((k * c) % mod for c in v) for k in range(mod)} for v in vectors
    ]

    def add(a: Vector, b: Vector) -> Vector:
        return tuple((x + y) % mod for x, y in zip(a, b))

    def sub(a: Vector, b: Vector) -> Vector:
        return tuple((x - y) % mod for x, y in zip(a, b))

    covered: set[Vector] = set()
    xs: list[list[Vector]] = [[] for _ in range(n)]

    def x_allowed(i: int, x: Vector) -> bool:
        return all(sub(x, prev) not in multiples[i] for prev in xs[i])

    def extend() -> bool:
        element = next((e for e in elements if e not in covered), None)
        if element is None:
            return True
        for i, v in enumerate(vectors):
            if len(xs[i]) == quota:
                continue
            # element as the x of a new pair, then as the y
            for x in (element, sub(element, v)):
                y = add(x, v)
                other = y if x == element else x
                if other in covered or other == element or not x_allowed(i, x):
                    continue
                covered.add(element)
                covered.add(other)
                xs[i].append(x)
                if extend():
                    return True
                xs[i].pop()
                covered.discard(element)
                covered.discard(other)
        return False

    if not extend():
        return None
    witness = {i: [(x, add(x, vectors[i])) for x in xs[i]] for i in range(n)}
    if not validate_conjecture2(vectors, witness):
        raise InternalInvariantViolation("conjecture-2 witness failed re-validation")
    return witness


def validate_conjecture2(vectors, witness: dict[int, list[tuple[Vector, Vector]]]) -> bool:
    """Independent re-check of a partition witness against all constraints."""
    vectors = tuple(tuple(v) for v in vectors)
    n = len(vectors)
    mod = 2 * n
    dim = len(vectors[0])
    quota = mod ** (dim - 1)
    seen: list[Vector] = []
    for i, v in enumerate(vectors):
        pairs = witness.get(i, [])
        if len(pairs) != quota:
            return False
        v = tuple(c % mod for c in v)
        mults = {tuple((k * c) % mod for c in v) for k in range(mod)}
        for j, (x, y) in enumerate(pairs):
            if tuple((a + b) % mod for a, b in zip(x, v)) != y:
                return False
            for x2, _ in pairs[:j]:
                if tuple((a - b) % mod for a, b in zip(x, x2)) in mults:
                    return False
            seen.append(x)
            seen.append(y)
    return len(seen) == mod**dim and len(set(seen)) == len(seen)


@dataclass(frozen=True)
class ColoredGraph:
    """A 2d-regular multigraph whose color classes are cycles of length 2d."""

    vertices: tuple
    edges: tuple[tuple[object, object, str], ...]


def validate_colored_graph(g: ColoredGraph) -> int:
    """Check regularity and the per-color cycle structure; returns the regularity 2d."""
    if not g.vertices:
        raise MalformedInstance("graph has no vertices")
    vertex_set = set(g.vertices)
    if len(vertex_set) != len(g.vertices):
        raise MalformedInstance("duplicate vertices")
    degree: dict = {v: 0 for v in g.vertices}
    by_color: dict[str, list[tuple]] = {}
    for u, v, color in g.edges:
        if u not in vertex_set or v not in vertex_set:
            raise MalformedInstance(f"edge ({u}, {v}) references unknown vertex")
        if u == v:
            raise MalformedInstance("self-loops not allowed")
        degree[u] += 1
        degree[v] += 1
        by_color.setdefault(color, []).append((u, v))
    regularity = next(iter(degree.values()))
    if any(deg != regularity for deg in degree.values()):
        raise MalformedInstance("graph is not regular")
    if regularity < 2 or regularity % 2 != 0:
        raise MalformedInstance("regularity must be a positive even number")
    for color, edges in by_color.items():
        if len(edges) != regularity:
            raise MalformedInstance(
                f"color {color!r} has {len(edges)} edges, expected {regularity}"
            )
        _check_single_cycle(color, edges)
    if len(by_color) != len(g.vertices) // 2:
        raise MalformedInstance("color count must be half the vertex count")
    return regularity


def _check_single_cycle(color: str, edges: list[tuple]) -> None:
    incidence: dict = {}
    for idx, (u, v) in enumerate(edges):
        incidence.setdefault(u, []).append((idx, v))
        incidence.setdefault(v, []).append((idx, u))
    if any(len(inc) != 2 for inc in incidence.values()):
        raise MalformedInstance(f"color {color!r} is not a disjoint union of cycles")
    if len(incidence) != len(edges):
        raise MalformedInstance(f"color {color!r} cycle length mismatch")
    # walk from an arbitrary vertex; a single cycle uses every edge
    start = edges[0][0]
    used: set[int] = set()
    current = start
    while True:
        step = next(
            ((idx, other) for idx, other in incidence[current] if idx not in used), None
        )
        if step is None:
            break
        used.add(step[0])
        current = step[1]
    if len(used) != len(edges):
        raise MalformedInstance(f"color {color!r} splits into several cycles")


def conjecture3_search(g: ColoredGraph) -> dict[str, tuple] | None:
    """Perfect matching using exactly one edge of each color, or None.

    Backtracking over colors in first-appearance order, edges in input order.
    The color count equals half the vertex count, so a disjoint choice of one
    edge per color is automatically perfect.
    """
    validate_colored_graph(g)
    if len(g.vertices) > 16:
        raise ValueError("search is exhaustive; at most 16 vertices")
    colors: list[str] = []
    by_color: dict[str, list[tuple]] = {}
    for u, v, color in g.edges:
        if color not in by_color:
            colors.append(color)
            by_color[color] = []
        by_color[color].append((u, v))

    used: set = set()
    picked: dict[str, tuple] = {}

    def choose(k: int) -> bool:
        if k == len(colors):
            return True
        color = colors[k]
        for u, v in by_color[color]:
            if u in used or v in used:
                continue
            used.add(u)
            used.add(v)
            picked[color] = (u, v)
            if choose(k + 1):
                return True
            del picked[color]
            used.discard(u)
            used.discard(v)
        return False

    if not choose(0):
        return None
    if not validate_conjecture3(g, picked):
        raise InternalInvariantViolation("conjecture-3 witness failed re-validation")
    return dict(picked)


def validate_conjecture3(g: ColoredGraph, matching: dict[str, tuple]) -> bool:
    """Independent re-check: one edge per color, pairwise disjoint, covers all vertices."""
    colors = {color for _, _, color in g.edges}
    if set(matching) != colors:
        return False
    edge_pool = {}
    for u, v, color in g.edges:
        edge_pool.setdefault(color, []).append((u, v))
    touched: list = []
    for color, (u, v) in matching.items():
        if (u, v) not in edge_pool[color] and (v, u) not in edge_pool[color]:
            return False
        touched.append(u)
        touched.append(v)
    return len(touched) == len(set(touched)) and set(touched) == set(g.vertices)


def colored_graph_from_json_dict(obj: dict) -> ColoredGraph:
    """Parse {vertices, edges:[{u, v, color}]} into a ColoredGraph."""
    try:
        vertices = tuple(obj["vertices"])
        edges = tuple((e["u"], e["v"], str(e["color"])) for e in obj["edges"])
    except (KeyError, TypeError) as exc:
        raise MalformedInstance(f"graph JSON malformed: {exc!r}") from None
    return ColoredGraph(vertices, edges)
