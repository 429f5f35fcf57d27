"""The grid pairing: certificates, per-point partners, and blocking verification.

A certificate packages one full construction (board, directions, prime, line
reduction, residue system). The induced pairing matches a board point w with
w + s_i*v_i whenever the residue of w's integer image lands on x_i, and with
w - s_i*v_i when it lands on y_i. Partner queries work entirely mod p through
u', so they never touch the huge embedding weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import IO

from . import embedding as emb
from .embedding import EmbeddingData, is_prime, next_prime_at_least
from .errors import MalformedInstance, PairblockError
from .lattice import BoardSpec, Direction, Vector, Window, enumerate_windows, normalize_directions
from .residues import ResidueSystem, solve_residues, verify_residue_system

CERTIFICATE_VERSION = "1"


@dataclass(frozen=True)
class GameSpec:
    """Board side/dimension, canonical directions, prime p, and win length m = p+1."""

    side: int
    dim: int
    directions: tuple[Direction, ...]
    prime: int
    win_length: int

    def __post_init__(self) -> None:
        if self.side < 1:
            raise ValueError("board side must be positive")
        if not self.directions:
            raise ValueError("at least one direction required")
        if any(d.dim != self.dim for d in self.directions):
            raise ValueError("direction dimensions must match the board")
        if len({d.vector for d in self.directions}) != len(self.directions):
            raise ValueError("directions must be deduplicated")
        n = len(self.directions)
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.prime < 2 * n + 1:
            raise ValueError(f"prime {self.prime} below 2n+1 = {2 * n + 1}")
        if self.win_length != self.prime + 1:
            raise ValueError("win length must equal prime + 1")

    @property
    def n_directions(self) -> int:
        return len(self.directions)

    @property
    def board(self) -> BoardSpec:
        return BoardSpec(self.side, self.dim)


class PartnerStatus(Enum):
    MATCHED = "matched"
    OFF_BOARD = "off_board"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class PartnerResult:
    """Outcome of a partner query.

    MATCHED carries the on-board partner point; OFF_BOARD means the pairing
    on the integers matches the point, but its grid partner leaves the board
    (such points count as unpaired on the finite board); UNMATCHED means the
    residue hits no (x_i, y_i) class.
    """

    status: PartnerStatus
    partner: Vector | None = None
    direction_index: int | None = None


UNMATCHED = PartnerResult(PartnerStatus.UNMATCHED)


@dataclass(frozen=True)
class PairingCertificate:
    """A serializable, self-validating description of one grid pairing."""

    spec: GameSpec
    embedding: EmbeddingData
    residues: ResidueSystem

    def __post_init__(self) -> None:
        p = self.spec.prime
        if self.residues.modulus != p:
            raise ValueError("residue modulus must equal the prime")
        if len(self.residues.triples) != self.spec.n_directions:
            raise ValueError("one residue triple per direction required")
        for (magnitude, _), (delta, _, _) in zip(self.embedding.offsets, self.residues.triples):
            if magnitude % p != delta:
                raise ValueError("residue offsets must match direction offsets mod p")
        if not verify_residue_system(self.residues):
            raise ValueError("residue system invalid")


def build_certificate(
    side: int,
    dim: int,
    directions,
    seed: int,
    prime_override: int | None = None,
) -> PairingCertificate:
    """Run the full pipeline: prime, u', weights, offsets, residue system.

    `directions` may be raw vectors or Direction instances; sign duplicates
    collapse. Deterministic for a fixed seed.
    """
    dirs = normalize_directions(directions)
    if not dirs:
        raise ValueError("at least one direction required")
    if any(d.dim != dim for d in dirs):
        raise ValueError("direction dimensions must match the board")
    n = len(dirs)
    if prime_override is not None:
        if not is_prime(prime_override) or prime_override < 2 * n + 1:
            raise ValueError(f"prime override must be a prime >= {2 * n + 1}")
        prime = prime_override
    else:
        prime = next_prime_at_least(2 * n + 1)
    u_prime = emb.find_u(prime, dirs, seed)
    data = emb.build_embedding(u_prime, prime, side, dirs)
    deltas = [magnitude % prime for magnitude, _ in data.offsets]
    residues = solve_residues(prime, deltas)
    spec = GameSpec(side, dim, dirs, prime, prime + 1)
    return PairingCertificate(spec, data, residues)


def residue_of(point: Vector, cert: PairingCertificate) -> int:
    """Residue mod p of the point's integer image, computed through u' only."""
    return sum(c * u for c, u in zip(point, cert.embedding.u_prime)) % cert.spec.prime


def partner(point: Vector, cert: PairingCertificate) -> PartnerResult:
    """Partner of a board point under the certificate's pairing.

    Residue x_i pairs the point one step along direction i (signed); residue
    y_i pairs it one step back; any other residue is unmatched. Residue
    distinctness makes the role unique, which is asserted.
    """
    rho = residue_of(point, cert)
    board = cert.spec.board
    hit: PartnerResult | None = None
    for i, (_, x, y) in enumerate(cert.residues.triples):
        if rho == x:
            step = 1
        elif rho == y:
            step = -1
        else:
            continue
        if hit is not None:
            raise MalformedInstance(f"point {point} matches two residue classes")
        _, sign = cert.embedding.offsets[i]
        v = cert.spec.directions[i].vector
        grid = tuple(c + step * sign * dc for c, dc in zip(point, v))
        if board.contains(grid):
            hit = PartnerResult(PartnerStatus.MATCHED, grid, i)
        else:
            hit = PartnerResult(PartnerStatus.OFF_BOARD, None, i)
    return hit if hit is not None else UNMATCHED


def partner_table(cert: PairingCertificate) -> dict[Vector, PartnerResult]:
    """Partner results for every board point."""
    return {point: partner(point, cert) for point in cert.spec.board.points()}


@dataclass
class BlockingReport:
    """Result of an exhaustive window scan."""

    blocked: bool
    windows_checked: int
    per_direction_counts: dict[str, int]
    win_length: int
    counterexample: Window | None = None

    def to_json_dict(self) -> dict:
        out = {
            "version": "1",
            "blocked": self.blocked,
            "windows_checked": self.windows_checked,
            "per_direction_counts": self.per_direction_counts,
            "win_length": self.win_length,
        }
        if self.counterexample is not None:
            out["counterexample"] = {
                "start": list(self.counterexample.start),
                "direction": list(self.counterexample.direction.vector),
                "length": self.counterexample.length,
            }
        return out


def verify_blocking(
    cert: PairingCertificate, win_length_override: int | None = None
) -> BlockingReport:
    """Check that every window contains two points that are partners of each other.

    Scans all windows of every direction (at the certificate's win length
    unless overridden), using only on-board mutual partners; the first
    unblocked window in enumeration order is reported as the counterexample.
    Directions whose windows do not fit the board pass vacuously, which the
    per-direction counts make visible.
    """
    m = cert.spec.win_length if win_length_override is None else win_length_override
    table = partner_table(cert)
    board = cert.spec.board
    counts: dict[str, int] = {}
    checked = 0
    counterexample: Window | None = None
    for direction in cert.spec.directions:
        count = 0
        for window in enumerate_windows(board, direction, m):
            count += 1
            checked += 1
            if counterexample is not None:
                continue
            pts = window.points()
            ptset = set(pts)
            found = False
            for w in pts:
                res = table[w]
                if res.status is not PartnerStatus.MATCHED or res.partner not in ptset:
                    continue
                back = table[res.partner]
                if back.status is PartnerStatus.MATCHED and back.partner == w:
                    found = True
                    break
            if not found:
                counterexample = window
        counts[str(direction)] = count
    return BlockingReport(
        blocked=counterexample is None,
        windows_checked=checked,
        per_direction_counts=counts,
        win_length=m,
        counterexample=counterexample,
    )


# --- certificate (de)serialization ------------------------------------------
#
# Canonical JSON: sorted keys, two-space indent, trailing newline, and every
# integer rendered as a decimal string so consumers without big integers can
# round-trip the file.


def certificate_to_json_dict(cert: PairingCertificate) -> dict:
    return {
        "version": CERTIFICATE_VERSION,
        "N": str(cert.spec.side),
        "d": str(cert.spec.dim),
        "directions": [[str(c) for c in d.vector] for d in cert.spec.directions],
        "p": str(cert.spec.prime),
        "m": str(cert.spec.win_length),
        "u_prime": [str(u) for u in cert.embedding.u_prime],
        "base": str(cert.embedding.base),
        "residues": [
            {"delta": str(delta), "x": str(x), "y": str(y), "sign": str(sign)}
            for (delta, x, y), (_, sign) in zip(
                cert.residues.triples, cert.embedding.offsets
            )
        ],
    }


def dumps_certificate(cert: PairingCertificate) -> str:
    return json.dumps(certificate_to_json_dict(cert), indent=2, sort_keys=True) + "\n"


def save_certificate(cert: PairingCertificate, fh: IO[str]) -> None:
    fh.write(dumps_certificate(cert))


def _parse_int(raw, what: str) -> int:
    if isinstance(raw, str):
        try:
            return int(raw, 10)
        except ValueError:
            raise MalformedInstance(f"{what}: not a decimal string: {raw!r}") from None
    if isinstance(raw, int) and not isinstance(raw, bool):
        return raw
    raise MalformedInstance(f"{what}: expected a decimal string, got {raw!r}")


def certificate_from_json_dict(obj: dict) -> PairingCertificate:
    """Rebuild and fully re-validate a certificate from its JSON form.

    The weight vector is recomputed from u', p, and the base, then every
    construction invariant is re-checked; stored signs and deltas must match
    the recomputed offsets. Raises MalformedInstance on any mismatch.
    """
    try:
        if obj.get("version") != CERTIFICATE_VERSION:
            raise MalformedInstance(f"unsupported certificate version {obj.get('version')!r}")
        side = _parse_int(obj["N"], "N")
        dim = _parse_int(obj["d"], "d")
        prime = _parse_int(obj["p"], "p")
        win_length = _parse_int(obj["m"], "m")
        raw_dirs = obj["directions"]
        directions = tuple(
            Direction(tuple(_parse_int(c, "direction coord") for c in vec)) for vec in raw_dirs
        )
        u_prime = tuple(_parse_int(u, "u_prime") for u in obj["u_prime"])
        base = _parse_int(obj["base"], "base")
        entries = obj["residues"]
        if len(entries) != len(directions):
            raise MalformedInstance("one residue entry per direction required")
        triples = tuple(
            (
                _parse_int(e["delta"], "delta"),
                _parse_int(e["x"], "x"),
                _parse_int(e["y"], "y"),
            )
            for e in entries
        )
        signs = tuple(_parse_int(e["sign"], "sign") for e in entries)
    except MalformedInstance:
        raise
    except (KeyError, TypeError, ValueError, PairblockError) as exc:
        raise MalformedInstance(f"certificate JSON malformed: {exc!r}") from None

    if base != max(2 * side + 2, 2):
        raise MalformedInstance(f"base {base} inconsistent with board side {side}")
    try:
        data = emb.build_embedding(u_prime, prime, side, directions)
        residues = ResidueSystem(prime, triples)
        spec = GameSpec(side, dim, directions, prime, win_length)
        cert = PairingCertificate(spec, data, residues)
    except Exception as exc:
        raise MalformedInstance(f"certificate invariants fail: {exc}") from None
    for stored, (_, computed) in zip(signs, data.offsets):
        if stored != computed:
            raise MalformedInstance("stored offset sign disagrees with recomputation")
    return cert


def load_certificate(fh: IO[str]) -> PairingCertificate:
    try:
        obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInstance(f"certificate file is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise MalformedInstance("certificate JSON must be an object")
    return certificate_from_json_dict(obj)
